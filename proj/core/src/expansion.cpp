#include "cnd/expansion.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace cnd {

void AsymptoticExpansion::add(const Rational& coeff, int log_power,
                              int loglog_power) {
  for (auto& t : terms) {
    if (t.log_power == log_power && t.loglog_power == loglog_power) {
      t.coeff += coeff;
      return;
    }
  }
  terms.push_back({coeff, log_power, loglog_power});
}

Rational AsymptoticExpansion::coeff_at(int log_power, int loglog_power) const {
  for (const auto& t : terms)
    if (t.log_power == log_power && t.loglog_power == loglog_power)
      return t.coeff;
  return Rational(0);
}

void AsymptoticExpansion::normalize() {
  terms.erase(std::remove_if(terms.begin(), terms.end(),
                             [](const ExpansionTerm& t) { return t.coeff == 0; }),
              terms.end());
  std::sort(terms.begin(), terms.end(),
            [](const ExpansionTerm& a, const ExpansionTerm& b) {
              if (a.log_power != b.log_power) return a.log_power < b.log_power;
              return a.loglog_power < b.loglog_power;
            });
}

int Polynomial::degree() const {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d)
    if (coeffs[d] != 0) return d;
  return -1;  // zero polynomial
}

bool Polynomial::monic() const {
  int d = degree();
  return d >= 0 && coeffs[d] == 1;
}

Rational Polynomial::at(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs.size())) return Rational(0);
  return coeffs[k];
}

double Polynomial::eval(double x) const {
  double r = 0.0;
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d)
    r = r * x + coeffs[d].get_d();
  return r;
}

std::string Polynomial::str(const std::string& var) const {
  int d = degree();
  if (d < 0) return "0";
  std::ostringstream out;
  bool first = true;
  for (int k = d; k >= 0; --k) {
    Rational c = coeffs[k];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational absc = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    bool unit = absc == 1 && k > 0;
    if (!unit) out << rational_str(absc);
    if (k >= 1) {
      out << var;
      if (k >= 2) out << "^" << k;
    }
  }
  return out.str();
}

AisTable::AisTable(int m, std::map<std::pair<int, int>, Rational> entries)
    : m_(m), a_(std::move(entries)) {
  if (m < 1) throw std::domain_error("AisTable: m must be >= 1");
  for (int s = 1; s <= m; ++s) {
    for (int i = 0; i <= s; ++i) {
      auto it = a_.find({i, s});
      if (it == a_.end())
        throw std::domain_error("AisTable: missing a_{" + std::to_string(i) +
                                "," + std::to_string(s) + "}");
    }
    if (a_.at({s, s}) != 1)
      throw std::domain_error("AisTable: a_{s,s} must be 1 (s=" +
                              std::to_string(s) + ")");
  }
}

const Rational& AisTable::at(int i, int s) const {
  auto it = a_.find({i, s});
  if (it == a_.end())
    throw std::domain_error("AisTable: a_{" + std::to_string(i) + "," +
                            std::to_string(s) + "} out of range");
  return it->second;
}

const AisTable& AisTable::builtin_m2() {
  static const AisTable table(2, {{{0, 1}, Rational(-2)},
                                  {{1, 1}, Rational(1)},
                                  {{0, 2}, Rational(11)},
                                  {{1, 2}, Rational(-6)},
                                  {{2, 2}, Rational(1)}});
  return table;
}

AisTable AisTable::from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  int m = j.at("m").get<int>();
  std::map<std::pair<int, int>, Rational> entries;
  for (const auto& e : j.at("a")) {
    int i = e.at("i").get<int>();
    int s = e.at("s").get<int>();
    entries[{i, s}] = parse_rational(e.at("value").get<std::string>());
  }
  return AisTable(m, std::move(entries));
}

std::string AisTable::to_json() const {
  nlohmann::json j;
  j["m"] = m_;
  j["a"] = nlohmann::json::array();
  for (const auto& [key, value] : a_)
    j["a"].push_back({{"i", key.first}, {"s", key.second},
                      {"value", rational_str(value)}});
  return j.dump();
}

}  // namespace cnd
