#ifndef WILLTEST_QUADRATURE_HPP
#define WILLTEST_QUADRATURE_HPP

#include <stdexcept>

namespace willtest {

// Composite-Simpson resolution plus the width (as a fraction of the horizon)
// of the endpoint window that is integrated in closed form instead; the
// density's derivative blows up at s = T when gamma < 1, so raw panels stop
// short of the endpoint.
struct QuadratureSpec {
  int panels = 4096;
  double tail_fraction = 0.01;
};

inline void validate_quadrature(const QuadratureSpec& q) {
  if (q.panels < 64) {
    throw std::invalid_argument("quadrature panel count must be >= 64");
  }
  if (!(q.tail_fraction > 0.0 && q.tail_fraction < 1.0)) {
    throw std::invalid_argument("tail fraction must lie in (0, 1)");
  }
}

template <class F>
double composite_simpson(F&& f, double a, double b, int panels) {
  if (b <= a) return 0.0;
  if (panels % 2 != 0) ++panels;
  const double h = (b - a) / panels;
  double odd = 0.0, even = 0.0;
  for (int i = 1; i < panels; i += 2) odd += f(a + i * h);
  for (int i = 2; i < panels; i += 2) even += f(a + i * h);
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

}  // namespace willtest

#endif  // WILLTEST_QUADRATURE_HPP
