#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cnd/rational.hpp"

namespace cnd {

// What the expansion multiplies: n, n^2/2, or p_n^2.
enum class Scale { N, HalfNSquared, PSquared };

// One term: coeff * (loglog x)^loglog_power / (log x)^log_power, relative to
// the scale factor. log_power may be negative (the plain "log n" leading term
// is log_power = -1).
struct ExpansionTerm {
  Rational coeff;
  int log_power = 0;
  int loglog_power = 0;
};

struct AsymptoticExpansion {
  Scale scale = Scale::N;
  std::vector<ExpansionTerm> terms;  // unique (log_power, loglog_power) keys
  std::string remainder;             // O-term descriptor, not a value

  void add(const Rational& coeff, int log_power, int loglog_power);
  // 0 if the key is absent.
  Rational coeff_at(int log_power, int loglog_power) const;
  // Drops zero terms, sorts by (log_power, loglog_power).
  void normalize();
};

// Dense rational polynomial, coefficients in ascending degree.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const;
  bool monic() const;
  Rational at(int k) const;
  double eval(double x) const;
  std::string str(const std::string& var = "x") const;  // "x^2 - 5x + 15/2"
};

// The a_{is} input table of the prime asymptotic, 0 <= i <= s <= m.
// Beyond m = 2 the values are user-supplied data, not derived here.
class AisTable {
 public:
  AisTable(int m, std::map<std::pair<int, int>, Rational> entries);

  int m() const { return m_; }
  const Rational& at(int i, int s) const;  // throws std::domain_error if absent

  // a01=-2, a11=1, a02=11, a12=-6, a22=1.
  static const AisTable& builtin_m2();

  // {"m": int, "a": [{"i":..,"s":..,"value":"p/q" or decimal}]}.
  // Rejects incomplete tables and tables with a_ss != 1.
  static AisTable from_json(const std::string& json_text);
  std::string to_json() const;

 private:
  int m_;
  std::map<std::pair<int, int>, Rational> a_;
};

}  // namespace cnd
