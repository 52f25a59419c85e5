#pragma once

#include <cstddef>
#include <span>

namespace twolayer {

/// Composite Simpson over consecutive interval pairs of a possibly
/// non-uniform grid. Requires an odd number (>= 3) of nodes; a single
/// interval falls back to the trapezoid rule.
double simpson(std::span<const double> x, std::span<const double> y);

/// Composite Simpson of f on [a, b] with `panels` (even) uniform intervals.
template <class F>
double simpson_uniform(F&& f, double a, double b, std::size_t panels) {
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < panels; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return acc * h / 3.0;
}

}  // namespace twolayer
