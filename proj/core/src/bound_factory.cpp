#include "cnd/bound_factory.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

#include "cnd/errors.hpp"
#include "cnd/exact_coeffs.hpp"

namespace cnd {

namespace {

const char* side_str(Side s) { return s == Side::Lower ? "lower" : "upper"; }

Side side_from(const std::string& s) {
  if (s == "lower") return Side::Lower;
  if (s == "upper") return Side::Upper;
  throw std::invalid_argument("side must be \"lower\" or \"upper\"");
}

Rational one_plus_2t(std::span<const Rational> a, int i) {
  Rational r = Rational(1) + Rational(2) * t_coeff(a, i, 1);
  r.canonicalize();
  return r;
}

}  // namespace

void BoundHypothesis::validate() const {
  if (m < 2) throw std::domain_error("hypothesis: m must be >= 2");
  if (static_cast<int>(a.size()) != m - 1)
    throw std::domain_error("hypothesis: need a_2..a_m (m-1 values)");
  if (cutoff <= 1) throw std::domain_error("hypothesis: cutoff must be > 1");
  if (!(li_cutoff > 1.0))
    throw std::domain_error("hypothesis: liCutoff must be > 1");
  if ((side == Side::Upper) != lambda.has_value())
    throw std::domain_error("hypothesis: lambda present iff side = upper");
}

std::string BoundHypothesis::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["side"] = side_str(side);
  j["m"] = m;
  j["a"] = nlohmann::json::array();
  for (const auto& q : a) j["a"].push_back(rational_str(q));
  j["cutoff"] = cutoff;
  j["liCutoff"] = li_cutoff;
  if (lambda) j["lambda"] = rational_str(*lambda);
  return j.dump();
}

BoundHypothesis BoundHypothesis::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BoundHypothesis h;
  h.side = side_from(j.at("side").get<std::string>());
  h.m = j.at("m").get<int>();
  for (const auto& e : j.at("a"))
    h.a.push_back(parse_rational(e.get<std::string>()));
  h.cutoff = j.at("cutoff").get<uint64_t>();
  h.li_cutoff = j.at("liCutoff").get<double>();
  if (j.contains("lambda"))
    h.lambda = parse_rational(j.at("lambda").get<std::string>());
  h.validate();
  return h;
}

BoundHypothesis BoundHypothesis::prop53() {
  BoundHypothesis h;
  h.side = Side::Lower;
  h.m = 9;
  for (const char* v : {"1", "2", "5.65", "23.65", "118.25", "709.5",
                        "4966.5", "0"})
    h.a.push_back(parse_rational(v));
  h.cutoff = 1332450001ULL;
  h.li_cutoff = 4171.0;
  return h;
}

BoundHypothesis BoundHypothesis::prop56() {
  BoundHypothesis h;
  h.side = Side::Upper;
  h.m = 9;
  for (const char* v : {"1", "2", "6.35", "24.35", "121.75", "730.5",
                        "6801.4", "0"})
    h.a.push_back(parse_rational(v));
  h.cutoff = 11;
  h.li_cutoff = 1e18;
  h.lambda = Rational(6300);
  return h;
}

std::string BoundCertificate::to_json() const {
  nlohmann::json j;
  j["version"] = 1;
  j["id"] = id;
  j["side"] = side_str(side);
  j["constant"] = {{"value", constant.value}, {"absErr", constant.abs_err}};
  j["coeffs"] = nlohmann::json::array();
  for (const auto& c : coeffs) j["coeffs"].push_back(rational_str(c));
  j["nMin"] = n_min;
  j["provenance"] = provenance;
  return j.dump();
}

BoundCertificate BoundCertificate::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1)
    throw std::invalid_argument("certificate: unsupported version");
  BoundCertificate c;
  c.id = j.at("id").get<std::string>();
  c.side = side_from(j.at("side").get<std::string>());
  c.constant.value = j.at("constant").at("value").get<double>();
  c.constant.abs_err = j.at("constant").at("absErr").get<double>();
  for (const auto& e : j.at("coeffs"))
    c.coeffs.push_back(parse_rational(e.get<std::string>()));
  c.n_min = j.at("nMin").get<uint64_t>();
  c.provenance = j.at("provenance").get<std::string>();
  return c;
}

std::vector<Rational> certificate_coefficients(const BoundHypothesis& h) {
  h.validate();
  std::vector<Rational> c;
  int last_simplified = (h.side == Side::Lower) ? h.m - 1 : h.m - 2;
  for (int k = 1; k <= last_simplified; ++k) {
    Rational ck(factorial(static_cast<unsigned long>(k - 1)),
                pow2(static_cast<unsigned long>(k)));
    ck.canonicalize();
    ck *= one_plus_2t(h.a, k - 1);
    ck.canonicalize();
    c.push_back(ck);
  }
  if (h.side == Side::Upper) {
    Rational last = one_plus_2t(h.a, h.m - 1) * (*h.lambda) /
                    Rational(pow2(static_cast<unsigned long>(h.m - 1)));
    last -= h.a.back() / Rational(h.m - 1);
    last.canonicalize();
    c.push_back(last);
  }
  return c;
}

BoundCertificate make_certificate(const BoundHypothesis& h,
                                  const PrimeEngine& engine,
                                  double li_rel_tol) {
  h.validate();
  if (h.cutoff > engine.config().capacity)
    throw ResourceError("make_certificate: cutoff beyond sieve capacity");
  BoundCertificate cert;
  cert.side = h.side;
  cert.coeffs = certificate_coefficients(h);
  cert.id = std::string("certificate-") + side_str(h.side) + "-m" +
            std::to_string(h.m) + "-x" + std::to_string(h.cutoff);
  cert.provenance = h.to_json();

  Int128 pi_integral = engine.pi_integral_to(h.cutoff);
  double x = static_cast<double>(h.cutoff);
  double x2 = x * x;
  EvaluatedBound li_x2 = li(x2, li_rel_tol);
  Rational factor = one_plus_2t(h.a, h.m - 1);
  double L = std::log(x);
  double tail = 0.0;
  for (int k = 1; k <= h.m - 1; ++k)
    tail += t_coeff(h.a, h.m - 1, k).get_d() * x2 / std::pow(L, k);
  double pi_d = to_double(pi_integral);
  double value = pi_d - factor.get_d() * li_x2.value + tail;
  double err = double_conversion_slack(pi_integral) +
               std::fabs(factor.get_d()) * li_x2.abs_err +
               1e-14 * (std::fabs(factor.get_d() * li_x2.value) +
                        std::fabs(tail));
  cert.constant = {value, err};

  uint64_t from_cutoff = engine.prime_count(h.cutoff) + 1;
  uint64_t sqrt_li = isqrt_u64(static_cast<uint64_t>(std::floor(h.li_cutoff)));
  uint64_t from_li = engine.prime_count(sqrt_li) + 1;
  cert.n_min = std::max(from_cutoff, from_li);
  return cert;
}

EvaluatedBound evaluate_certificate(const BoundCertificate& c, double p) {
  if (!(p > 1.0))
    throw std::domain_error("evaluate_certificate: requires p > 1");
  double L = std::log(p);
  double sum = 0.0;
  for (size_t k = 0; k < c.coeffs.size(); ++k)
    sum += c.coeffs[k].get_d() * p * p / std::pow(L, static_cast<int>(k) + 1);
  return {c.constant.value + sum, c.constant.abs_err + 4e-16 * std::fabs(sum)};
}

namespace {

BoundCertificate builtin_certificate(
    Side side, const std::vector<std::pair<int, Rational>>& tail,
    uint64_t n_min, const std::string& id) {
  BoundCertificate c;
  c.side = side;
  c.constant = {0.0, 0.0};
  c.coeffs = {Rational(1, 2), Rational(3, 4), Rational(7, 4)};
  c.coeffs.resize(8, Rational(0));
  for (const auto& [k, coeff] : tail) c.coeffs[static_cast<size_t>(k - 1)] = coeff;
  c.n_min = n_min;
  c.id = id;
  c.provenance = "builtin:" + id;
  return c;
}

}  // namespace

const BoundCertificate& prop53_lower() {
  static const BoundCertificate c = builtin_certificate(
      Side::Lower, theta_coefficients(), 52703656, "prop53");
  return c;
}

const BoundCertificate& prop56_upper() {
  static const BoundCertificate c =
      builtin_certificate(Side::Upper, omega_coefficients(), 1, "prop56");
  return c;
}

double dusart_reference(double p) {
  if (!(p > 1.0)) throw std::domain_error("dusart_reference: requires p > 1");
  double L = std::log(p);
  return -47.1 + p * p / (2.0 * L) + 3.0 * p * p / (4.0 * L * L);
}

std::vector<Rational> lower_ledger_coefficients(
    const BoundHypothesis& h, const std::vector<Rational>& li_upper_coeffs) {
  h.validate();
  if (h.side != Side::Lower)
    throw std::domain_error("lower_ledger_coefficients: lower side only");
  Rational factor = one_plus_2t(h.a, h.m - 1);
  std::vector<Rational> out;
  for (size_t j = 0; j < li_upper_coeffs.size(); ++j) {
    int k = static_cast<int>(j) + 1;
    Rational c = factor * li_upper_coeffs[j] /
                 Rational(pow2(static_cast<unsigned long>(k)));
    c -= t_coeff(h.a, h.m - 1, k);
    c.canonicalize();
    out.push_back(c);
  }
  return out;
}

std::vector<Rational> lower_ledger_terms(
    const BoundHypothesis& h, const Rational& log_lower_bound,
    const std::vector<Rational>& li_upper_coeffs) {
  if (!(log_lower_bound > 0))
    throw std::domain_error("lower_ledger_terms: log bound must be positive");
  auto coeffs = lower_ledger_coefficients(h, li_upper_coeffs);
  Rational x2 = Rational(Integer(static_cast<unsigned long>(h.cutoff))) *
                Rational(Integer(static_cast<unsigned long>(h.cutoff)));
  std::vector<Rational> terms;
  Rational lpow(1);
  for (size_t j = 0; j < coeffs.size(); ++j) {
    lpow *= log_lower_bound;
    Rational t = x2 * coeffs[j] / lpow;
    t.canonicalize();
    terms.push_back(t);
  }
  return terms;
}

}  // namespace cnd
