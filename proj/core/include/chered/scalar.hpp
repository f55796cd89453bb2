#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace chered {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Parse "3", "-1/2" or a finite decimal like "0.25" into an exact rational.
inline Rat parse_rational(const std::string& s) {
  auto bad = [&] { throw std::invalid_argument("not a rational: " + s); };
  if (s.empty()) bad();
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(Int(s));
  std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
  bool neg = !head.empty() && head[0] == '-';
  if (head.empty() || head == "-" || head == "+") head += "0";
  Int den = 1;
  for (size_t i = 0; i < tail.size(); ++i) den *= 10;
  std::string digits;
  for (char ch : head)
    if (ch != '+' && ch != '-') digits += ch;
  digits += tail;
  // Strip leading zeros: cpp_int would read "025" as octal.
  while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
  if (digits.empty()) bad();
  Int num(digits);
  if (neg) num = -num;
  return Rat(num, den);
}

/// Element of Q(sqrt(d)) for a fixed nonsquare d > 1, stored as a + b*sqrt(d).
/// d == 0 marks a plain rational (b is then zero).  Mixed-d arithmetic is
/// allowed only when one operand is plain rational.
class Exact {
 public:
  Exact() : a_(0), b_(0), d_(0) {}
  Exact(int v) : a_(v), b_(0), d_(0) {}
  Exact(long v) : a_(long(v)), b_(0), d_(0) {}
  Exact(const Rat& v) : a_(v), b_(0), d_(0) {}
  Exact(Rat a, Rat b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (b_ == 0) d_ = 0;
  }
  static Exact sqrt_of(int d) { return Exact(0, 1, d); }

  const Rat& rat_part() const { return a_; }
  const Rat& irr_part() const { return b_; }
  int radicand() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  /// Sign of the real number a + b*sqrt(d); exact.
  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against d*b^2.
    Rat lhs = a_ * a_, rhs = Rat(d_) * b_ * b_;
    if (lhs == rhs) return 0;
    return (lhs > rhs) ? sa : sb;
  }

  double to_double() const {
    double v = chered::to_double(a_);
    if (b_ != 0) v += chered::to_double(b_) * std::sqrt(double(d_));
    return v;
  }

  Exact operator-() const { return Exact(-a_, -b_, d_); }

  Exact& operator+=(const Exact& o) {
    merge_radicand(o);
    a_ += o.a_;
    b_ += o.b_;
    if (b_ == 0) d_ = 0;
    return *this;
  }
  Exact& operator-=(const Exact& o) {
    merge_radicand(o);
    a_ -= o.a_;
    b_ -= o.b_;
    if (b_ == 0) d_ = 0;
    return *this;
  }
  Exact& operator*=(const Exact& o) {
    if (b_ == 0 && o.b_ == 0) {
      a_ *= o.a_;
      return *this;
    }
    merge_radicand(o);
    Rat na = a_ * o.a_ + Rat(d_) * b_ * o.b_;
    Rat nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    if (b_ == 0) d_ = 0;
    return *this;
  }
  Exact& operator/=(const Exact& o) { return *this *= o.inv(); }

  friend Exact operator+(Exact x, const Exact& y) { return x += y; }
  friend Exact operator-(Exact x, const Exact& y) { return x -= y; }
  friend Exact operator*(Exact x, const Exact& y) { return x *= y; }
  friend Exact operator/(Exact x, const Exact& y) { return x /= y; }
  friend bool operator==(const Exact& x, const Exact& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }
  friend bool operator!=(const Exact& x, const Exact& y) { return !(x == y); }
  friend bool operator<(const Exact& x, const Exact& y) {
    return (x - y).sign() < 0;
  }

  Exact inv() const {
    if (is_zero()) throw std::domain_error("division by zero Exact");
    if (b_ == 0) return Exact(Rat(1) / a_);
    Rat n = a_ * a_ - Rat(d_) * b_ * b_;  // field norm, nonzero for nonsquare d
    if (n == 0) throw std::domain_error("radicand is a perfect square");
    return Exact(a_ / n, -b_ / n, d_);
  }

  std::string str() const {
    std::string out = a_.str();
    if (b_ != 0) {
      out += (b_.sign() > 0 ? "+" : "-");
      Rat ab = boost::multiprecision::abs(b_);
      if (ab != 1) out += ab.str() + "*";
      out += "sqrt(" + std::to_string(d_) + ")";
    }
    return out;
  }

 private:
  void merge_radicand(const Exact& o) {
    if (o.b_ == 0) return;
    if (b_ == 0) {
      d_ = o.d_;
      return;
    }
    if (d_ != o.d_)
      throw std::domain_error("mixing distinct quadratic extensions");
  }
  Rat a_, b_;
  int d_;
};

/// Traits used by the templated linear algebra: exactness flag, zero test,
/// sign for pivot decisions, conversion to double for reporting.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static constexpr bool is_exact = true;
  static bool is_zero(const Rat& x) { return x == 0; }
  static int sign(const Rat& x) { return x.sign(); }
  static double to_double(const Rat& x) { return chered::to_double(x); }
  static Rat from_rat(const Rat& r) { return r; }
  static double abs(const Rat& x) { return std::fabs(chered::to_double(x)); }
};

template <>
struct FieldTraits<Exact> {
  static constexpr bool is_exact = true;
  static bool is_zero(const Exact& x) { return x.is_zero(); }
  static int sign(const Exact& x) { return x.sign(); }
  static double to_double(const Exact& x) { return x.to_double(); }
  static Exact from_rat(const Rat& r) { return Exact(r); }
  static double abs(const Exact& x) { return std::fabs(x.to_double()); }
};

template <>
struct FieldTraits<double> {
  static constexpr bool is_exact = false;
  // Float-mode zero tests are contextual; this default is for structural
  // zeros (monomial bookkeeping), not rank decisions.
  static bool is_zero(double x) { return std::fabs(x) < 1e-12; }
  static int sign(double x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }
  static double to_double(double x) { return x; }
  static double from_rat(const Rat& r) { return chered::to_double(r); }
  static double abs(double x) { return std::fabs(x); }
};

}  // namespace chered
