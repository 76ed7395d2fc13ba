#pragma once

#include <map>
#include <string>

#include <json.hpp>

namespace entangle {

// Laurent polynomial in one variable with exponents in quarter units:
// key k stands for x^(k/4).
class LaurentPoly {
 public:
  using Terms = std::map<int, double>;

  static constexpr double kDropBelow = 1e-15;

  LaurentPoly() = default;
  explicit LaurentPoly(Terms terms);

  static LaurentPoly mono(double coeff, int quarter_exp);
  static LaurentPoly constant(double c) { return mono(c, 0); }

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  double coeff(int quarter_exp) const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly scaled(double s) const;
  LaurentPoly& operator+=(const LaurentPoly& o);

  bool approx_equal(const LaurentPoly& o, double tol = 1e-12) const;

 private:
  void normalize();
  Terms terms_;
};

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);

// A = t^(-1/4): A-exponent e becomes t-exponent -e/4.
LaurentPoly substitute_t(const LaurentPoly& p);

double eval(const LaurentPoly& p, double x);
double distance(const LaurentPoly& a, const LaurentPoly& b);

// d = -A^2 - A^-2
LaurentPoly loop_value();
// (-A^3)^n
LaurentPoly kink_factor(int n);

// "3", "3/2", "-1/4"
std::string format_exponent(int quarter_exp);
std::string render(const LaurentPoly& p, char var = 'A');

nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const nlohmann::json& j);

}  // namespace entangle
