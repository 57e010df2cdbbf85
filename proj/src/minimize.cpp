#include "qpol/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qpol {

namespace {
// Below this s the refined interior value is compared with the closed s = 0
// value directly; the slack absorbs last-ulp noise of the log-domain sums.
constexpr double kNearZeroS = 1e-4;
constexpr double kEndpointSlack = 1e-12;
// Flat curves (a single one-dimensional manifold) tie everywhere; the tie
// goes to the s = 0 endpoint.
constexpr double kTieSlack = 1e-14;
}  // namespace

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double width) {
  if (!(lo <= hi)) throw std::invalid_argument("golden_section_minimize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  ScalarMinimum best = fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};

  while (b - a > width) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
      if (fc < best.value || (fc == best.value && c < best.x)) best = {c, fc};
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
      if (fd < best.value || (fd == best.value && d < best.x)) best = {d, fd};
    }
  }
  return best;
}

ScalarMinimum scan_then_refine(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points, double width) {
  if (scan_points < 2) throw std::invalid_argument("scan_then_refine: need at least two scan points");
  std::vector<double> xs(static_cast<std::size_t>(scan_points));
  std::vector<double> fs(xs.size());
  const double step = (hi - lo) / (scan_points - 1);
  for (int i = 0; i < scan_points; ++i) {
    xs[i] = i + 1 == scan_points ? hi : lo + step * i;
    fs[i] = f(xs[i]);
  }
  const auto best_it = std::min_element(fs.begin(), fs.end());
  const auto k = static_cast<std::size_t>(best_it - fs.begin());
  ScalarMinimum best{xs[k], fs[k]};

  const double a = xs[k == 0 ? 0 : k - 1];
  const double b = xs[k + 1 == xs.size() ? k : k + 1];
  const ScalarMinimum refined = golden_section_minimize(f, a, b, width);
  if (refined.value < best.value) best = refined;
  return best;
}

OverlapMinimum minimize_overlap_curve(const std::function<double(double)>& positive, double at_zero) {
  auto curve = [&](double s) { return s == 0.0 ? at_zero : positive(s); };
  const ScalarMinimum m = scan_then_refine(curve, 0.0, 1.0);
  if (m.x == 0.0 || (m.x < kNearZeroS && at_zero <= m.value + kEndpointSlack) || at_zero <= m.value + kTieSlack)
    return {0.0, at_zero, true};
  return {m.x, m.value, false};
}

}  // namespace qpol
