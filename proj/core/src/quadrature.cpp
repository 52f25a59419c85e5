#include "twolayer/quadrature.hpp"

#include "twolayer/errors.hpp"

namespace twolayer {

double simpson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidParams("simpson: grid and values differ in length");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * (x[1] - x[0]) * (y[0] + y[1]);
  if (n % 2 == 0) throw InvalidParams("simpson: needs an odd number of nodes");
  double acc = 0.0;
  for (std::size_t i = 0; i + 2 < n; i += 2) {
    const double h0 = x[i + 1] - x[i];
    const double h1 = x[i + 2] - x[i + 1];
    const double hs = h0 + h1;
    acc += hs / 6.0 *
           ((2.0 - h1 / h0) * y[i] + hs * hs / (h0 * h1) * y[i + 1] + (2.0 - h0 / h1) * y[i + 2]);
  }
  return acc;
}

}  // namespace twolayer
