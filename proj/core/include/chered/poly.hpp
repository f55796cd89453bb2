#pragma once

#include "chered/scalar.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace chered {

/// Dense univariate polynomial over a commutative ring T.  Used both for
/// deformation pencils (entries polynomial in t or in a parameter c) and for
/// truncated power series bookkeeping.
template <class T>
class Poly {
 public:
  using value_type = T;

  Poly() = default;
  Poly(T c) : c_{std::move(c)} { trim(); }
  Poly(int c) : c_{T(c)} { trim(); }
  explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Poly variable() { return Poly(std::vector<T>{T(0), T(1)}); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return int(c_.size()) - 1; }  // -1 for the zero poly
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k >= 0 && k < int(c_.size())) ? c_[size_t(k)] : T(0);
  }

  T operator()(const T& x) const {
    T v(0);
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly x, const Poly& y) { return x += y; }
  friend Poly operator-(Poly x, const Poly& y) { return x -= y; }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    std::vector<T> r(x.c_.size() + y.c_.size() - 1, T(0));
    for (size_t i = 0; i < x.c_.size(); ++i)
      for (size_t j = 0; j < y.c_.size(); ++j) r[i + j] += x.c_[i] * y.c_[j];
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& x, const Poly& y) {
    if (x.c_.size() != y.c_.size()) return false;
    for (size_t i = 0; i < x.c_.size(); ++i)
      if (!(x.c_[i] == y.c_[i])) return false;
    return true;
  }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

  /// Exact quotient by the variable; throws if the constant term is nonzero.
  Poly divided_by_variable() const {
    if (is_zero()) return Poly();
    if (!FieldTraits<T>::is_zero(c_[0]))
      throw std::domain_error("polynomial not divisible by t");
    return Poly(std::vector<T>(c_.begin() + 1, c_.end()));
  }

  /// Exact division; throws if the remainder is nonzero.  Requires the
  /// divisor's leading coefficient to be invertible when T is a field.
  Poly exact_div(const Poly& den) const {
    Poly rem = *this, quo;
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> q(std::max<size_t>(1, c_.size()), T(0));
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
      int shift = rem.degree() - den.degree();
      T factor = rem.c_.back() / den.c_.back();
      q[size_t(shift)] += factor;
      Poly sub;
      sub.c_.assign(size_t(shift) + den.c_.size(), T(0));
      for (size_t i = 0; i < den.c_.size(); ++i)
        sub.c_[size_t(shift) + i] = factor * den.c_[i];
      rem -= sub;
    }
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return Poly(std::move(q));
  }

  /// Order of vanishing at 0 (degree+1 convention: zero poly returns -1).
  int valuation() const {
    if (is_zero()) return -1;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!FieldTraits<T>::is_zero(c_[i])) return int(i);
    return -1;
  }

  std::string str(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (FieldTraits<T>::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += coeff_str(c_[i]);
      if (i >= 1) out += "*" + var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  static std::string coeff_str(const Exact& v) { return v.str(); }
  static std::string coeff_str(double v) { return std::to_string(v); }
  template <class U>
  static std::string coeff_str(const Poly<U>& v) {
    return "(" + v.str("u") + ")";
  }

  void trim() {
    while (!c_.empty() && FieldTraits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
struct FieldTraits<Poly<T>> {
  static constexpr bool is_exact = FieldTraits<T>::is_exact;
  static bool is_zero(const Poly<T>& p) { return p.is_zero(); }
  static int sign(const Poly<T>&) {
    throw std::domain_error("polynomials are not ordered");
  }
  static double to_double(const Poly<T>& p) {
    if (p.is_zero()) return 0.0;
    if (p.degree() > 0) throw std::domain_error("nonconstant polynomial");
    return FieldTraits<T>::to_double(p.coeff(0));
  }
  static Poly<T> from_rat(const Rat& r) {
    return Poly<T>(FieldTraits<T>::from_rat(r));
  }
  static double abs(const Poly<T>& p) {
    double m = 0;
    for (const auto& c : p.coeffs()) m = std::max(m, FieldTraits<T>::abs(c));
    return m;
  }
};

/// Truncated power-series inverse of p (constant term must be invertible).
template <class T>
std::vector<T> series_inverse(const Poly<T>& p, int order) {
  if (p.is_zero() || FieldTraits<T>::is_zero(p.coeff(0)))
    throw std::domain_error("series has no inverse");
  std::vector<T> inv(size_t(order) + 1, T(0));
  T c0 = T(1) / p.coeff(0);
  inv[0] = c0;
  for (int n = 1; n <= order; ++n) {
    T acc(0);
    for (int k = 1; k <= std::min(n, p.degree()); ++k)
      acc += p.coeff(k) * inv[size_t(n - k)];
    inv[size_t(n)] = -c0 * acc;
  }
  return inv;
}

}  // namespace chered
