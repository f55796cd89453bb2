#pragma once

#include "chered/scalar.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace chered {

/// One scalar per conjugacy class of reflections.  Exact rational values are
/// kept alongside doubles whenever available so the algebraic layer can run
/// in exact mode.  Since reflections are involutions, c^dagger is entrywise
/// complex conjugation.
struct ParamPoint {
  std::vector<std::complex<double>> values;
  std::vector<Rat> exact_values;  // empty unless exact
  bool exact = false;

  ParamPoint() = default;
  explicit ParamPoint(std::vector<Rat> vals) : exact_values(std::move(vals)), exact(true) {
    for (const auto& v : exact_values) values.push_back(to_double(v));
  }
  explicit ParamPoint(std::vector<double> vals) {
    for (double v : vals) values.emplace_back(v, 0.0);
  }
  explicit ParamPoint(std::vector<std::complex<double>> vals) : values(std::move(vals)) {}

  int num_classes() const { return int(values.size()); }

  bool real() const {
    for (const auto& v : values)
      if (v.imag() != 0.0) return false;
    return true;
  }

  ParamPoint dagger() const {
    ParamPoint out = *this;
    for (auto& v : out.values) v = std::conj(v);
    return out;
  }

  bool is_zero() const {
    for (const auto& v : values)
      if (v != std::complex<double>(0.0)) return false;
    return true;
  }

  const Rat& exact_value(int cls) const {
    if (!exact) throw std::logic_error("parameter point is not exact");
    return exact_values[size_t(cls)];
  }

  static ParamPoint zero(int num_classes) {
    return ParamPoint(std::vector<Rat>(size_t(num_classes), Rat(0)));
  }
};

}  // namespace chered
