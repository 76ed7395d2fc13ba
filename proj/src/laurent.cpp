#include "laurent.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numeric>

#include "errors.hpp"

namespace entangle {

LaurentPoly::LaurentPoly(Terms terms) : terms_(std::move(terms)) { normalize(); }

LaurentPoly LaurentPoly::mono(double coeff, int quarter_exp) {
  LaurentPoly p;
  if (std::abs(coeff) >= kDropBelow) p.terms_[quarter_exp] = coeff;
  return p;
}

double LaurentPoly::coeff(int quarter_exp) const {
  auto it = terms_.find(quarter_exp);
  return it == terms_.end() ? 0.0 : it->second;
}

void LaurentPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) < kDropBelow)
      it = terms_.erase(it);
    else
      ++it;
  }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) terms_[k] += c;
  normalize();
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + o.scaled(-1.0); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  Terms out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out[ka + kb] += ca * cb;
  return LaurentPoly(std::move(out));
}

LaurentPoly LaurentPoly::scaled(double s) const {
  Terms out;
  for (const auto& [k, c] : terms_) out[k] = c * s;
  return LaurentPoly(std::move(out));
}

bool LaurentPoly::approx_equal(const LaurentPoly& o, double tol) const {
  Terms all = terms_;
  for (const auto& [k, c] : o.terms_) all[k];
  for (const auto& [k, c] : all)
    if (std::abs(coeff(k) - o.coeff(k)) > tol) return false;
  return true;
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) { return a + b; }
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) { return a * b; }

LaurentPoly substitute_t(const LaurentPoly& p) {
  LaurentPoly::Terms out;
  for (const auto& [k, c] : p.terms()) {
    if (k % 4 != 0) throw DomainError("substitute_t expects integer A-exponents");
    out[-k / 4] += c;
  }
  return LaurentPoly(std::move(out));
}

double eval(const LaurentPoly& p, double x) {
  if (!(x > 0.0)) throw DomainError("eval requires a positive argument");
  double s = 0.0;
  for (const auto& [k, c] : p.terms()) s += c * std::pow(x, k / 4.0);
  return s;
}

double distance(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly::Terms keys = a.terms();
  for (const auto& [k, c] : b.terms()) keys[k];
  double s = 0.0;
  for (const auto& [k, c] : keys) {
    const double d = a.coeff(k) - b.coeff(k);
    s += d * d;
  }
  return std::sqrt(s);
}

LaurentPoly loop_value() { return LaurentPoly::mono(-1.0, 8) + LaurentPoly::mono(-1.0, -8); }

LaurentPoly kink_factor(int n) { return LaurentPoly::mono(n % 2 == 0 ? 1.0 : -1.0, 12 * n); }

std::string format_exponent(int quarter_exp) {
  const int g = std::gcd(std::abs(quarter_exp), 4);
  const int num = quarter_exp / g;
  const int den = 4 / g;
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::string format_coeff(double c) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", c);
  return buf;
}

}  // namespace

std::string render(const LaurentPoly& p, char var) {
  if (p.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto [k, c] = *it;
    if (first)
      out += format_coeff(c);
    else
      out += (c < 0 ? " - " : " + ") + format_coeff(std::abs(c));
    if (k != 0) out += std::string("*") + var + "^(" + format_exponent(k) + ")";
    first = false;
  }
  return out;
}

nlohmann::json to_json(const LaurentPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    arr.push_back(nlohmann::json::array({it->first, it->second}));
  return arr;
}

LaurentPoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidArgument("polynomial JSON must be an array of [quarter_exp, coeff]");
  LaurentPoly::Terms terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number())
      throw InvalidArgument("polynomial term must be [integer, number]");
    terms[t[0].get<int>()] += t[1].get<double>();
  }
  return LaurentPoly(std::move(terms));
}

}  // namespace entangle
