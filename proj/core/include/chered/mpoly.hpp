#pragma once

#include "chered/matrix.hpp"
#include "chered/scalar.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace chered {

/// Sparse multivariate polynomial in the coordinate functions x_1..x_l over a
/// field F.  Exponent vectors have fixed length l.
template <class F>
class MPoly {
 public:
  using Expo = std::vector<int>;

  MPoly() : nvars_(0) {}
  explicit MPoly(int nvars) : nvars_(nvars) {}

  static MPoly constant(int nvars, F c) {
    MPoly p(nvars);
    p.add_term(Expo(size_t(nvars), 0), std::move(c));
    return p;
  }
  static MPoly monomial(int nvars, const Expo& e, F c = F(1)) {
    MPoly p(nvars);
    p.add_term(e, std::move(c));
    return p;
  }
  /// The linear form sum_i coeffs[i] * x_i.
  static MPoly linear(const std::vector<F>& coeffs) {
    MPoly p(int(coeffs.size()));
    for (size_t i = 0; i < coeffs.size(); ++i) {
      Expo e(coeffs.size(), 0);
      e[i] = 1;
      p.add_term(e, coeffs[i]);
    }
    return p;
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Expo, F>& terms() const { return terms_; }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int v : e) s += v;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Expo& e, F c) {
    if (FieldTraits<F>::is_zero(c)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, std::move(c));
    } else {
      it->second += c;
      if (FieldTraits<F>::is_zero(it->second)) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
  }
  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly x, const MPoly& y) { return x += y; }
  friend MPoly operator-(MPoly x, const MPoly& y) { return x -= y; }
  friend MPoly operator*(const MPoly& x, const MPoly& y) {
    MPoly p(x.nvars_);
    for (const auto& [e1, c1] : x.terms_)
      for (const auto& [e2, c2] : y.terms_) {
        Expo e = e1;
        for (size_t i = 0; i < e.size(); ++i) e[i] += e2[i];
        p.add_term(e, c1 * c2);
      }
    return p;
  }
  friend MPoly operator*(const F& s, MPoly p) {
    MPoly out(p.nvars_);
    for (auto& [e, c] : p.terms_) out.add_term(e, s * c);
    return out;
  }
  friend bool operator==(const MPoly& x, const MPoly& y) {
    return x.terms_ == y.terms_;
  }

  MPoly derivative(int var) const {
    MPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[size_t(var)] == 0) continue;
      Expo d = e;
      d[size_t(var)] -= 1;
      p.add_term(d, F(e[size_t(var)]) * c);
    }
    return p;
  }

  /// Substitute x_i -> sum_j a(i, j) x_j.
  MPoly substitute_linear(const Matrix<F>& a) const {
    std::vector<MPoly> images;
    for (int i = 0; i < nvars_; ++i) {
      std::vector<F> row(static_cast<size_t>(nvars_), F(0));
      for (int j = 0; j < nvars_; ++j) row[size_t(j)] = a(i, j);
      images.push_back(MPoly::linear(row));
    }
    MPoly out(nvars_);
    // Cache powers of the variable images as needed.
    std::vector<std::vector<MPoly>> powers;
    powers.resize(static_cast<size_t>(nvars_));
    auto power = [&](int var, int k) -> const MPoly& {
      auto& cache = powers[size_t(var)];
      if (cache.empty()) cache.push_back(MPoly::constant(nvars_, F(1)));
      while (int(cache.size()) <= k) cache.push_back(cache.back() * images[size_t(var)]);
      return cache[size_t(k)];
    };
    for (const auto& [e, c] : terms_) {
      MPoly term = MPoly::constant(nvars_, c);
      for (int v = 0; v < nvars_; ++v)
        if (e[size_t(v)] > 0) term = term * power(v, e[size_t(v)]);
      out += term;
    }
    return out;
  }

  /// Exact quotient by a linear form; throws if the remainder is nonzero
  /// beyond float tolerance (exact mode: any nonzero remainder).
  MPoly divide_by_linear(const std::vector<F>& lin) const {
    int pivot = -1;
    for (size_t i = 0; i < lin.size(); ++i)
      if (!FieldTraits<F>::is_zero(lin[i])) {
        pivot = int(i);
        break;
      }
    if (pivot < 0) throw std::domain_error("division by zero linear form");
    F inv = F(1) / lin[size_t(pivot)];
    MPoly rem = *this, quo(nvars_);
    MPoly ell = MPoly::linear(lin);
    while (true) {
      int top = 0;
      for (const auto& [e, c] : rem.terms_) top = std::max(top, e[size_t(pivot)]);
      if (top == 0) break;
      MPoly layer(nvars_);
      for (const auto& [e, c] : rem.terms_) {
        if (e[size_t(pivot)] != top) continue;
        Expo d = e;
        d[size_t(pivot)] -= 1;
        layer.add_term(d, inv * c);
      }
      quo += layer;
      rem -= ell * layer;
    }
    if constexpr (FieldTraits<F>::is_exact) {
      if (!rem.is_zero()) throw std::domain_error("inexact division by linear form");
    } else {
      double scale = std::max(1e-300, max_abs());
      for (const auto& [e, c] : rem.terms_)
        if (FieldTraits<F>::abs(c) > 1e-6 * scale)
          throw std::domain_error("inexact division by linear form (float)");
    }
    return quo;
  }

  template <class S>
  S eval(const std::vector<S>& x) const {
    S out(0);
    for (const auto& [e, c] : terms_) {
      S term(FieldTraits<F>::to_double(c));
      for (size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) term *= x[v];
      out += term;
    }
    return out;
  }

  F eval_exact(const std::vector<F>& x) const {
    F out(0);
    for (const auto& [e, c] : terms_) {
      F term = c;
      for (size_t v = 0; v < e.size(); ++v)
        for (int k = 0; k < e[v]; ++k) term *= x[v];
      out += term;
    }
    return out;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& [e, c] : terms_) m = std::max(m, FieldTraits<F>::abs(c));
    return m;
  }

 private:
  int nvars_;
  std::map<Expo, F> terms_;
};

}  // namespace chered
