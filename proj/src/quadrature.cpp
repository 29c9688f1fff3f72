#include "sqbell/quadrature.hpp"

#include <numbers>

namespace sqbell {

std::vector<double> unit_breakpoints(double edge_width, double omega, int max_panels) {
  std::vector<double> br{0.0, 1.0};
  // One panel per period of the oscillation.
  const double periods = std::abs(omega) / (2.0 * std::numbers::pi);
  const int uniform = std::clamp(static_cast<int>(std::ceil(periods)) + 1, 1, max_panels);
  for (int i = 1; i < uniform; ++i) br.push_back(static_cast<double>(i) / uniform);
  // Geometric grading toward both ends for narrow boundary layers.
  if (edge_width > 0.0 && edge_width < 0.1) {
    for (double w = std::max(edge_width, 1e-9); w < 0.5; w *= 2.0) {
      br.push_back(w);
      br.push_back(1.0 - w);
    }
  }
  std::sort(br.begin(), br.end());
  br.erase(std::unique(br.begin(), br.end()), br.end());
  return br;
}

}  // namespace sqbell
