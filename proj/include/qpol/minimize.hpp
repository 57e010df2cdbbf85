#pragma once

#include <functional>

namespace qpol {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search on [lo, hi]; stops once the bracket is narrower
/// than `width`. Returns the best point evaluated.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      double width = 1e-10);

/// Uniform scan of [lo, hi] with `scan_points` nodes, then golden-section
/// refinement between the neighbours of the best node. Ties in the scan go
/// to the smaller abscissa.
ScalarMinimum scan_then_refine(const std::function<double(double)>& f, double lo, double hi,
                               int scan_points = 201, double width = 1e-10);

/// Minimum over s in [0, 1] of an overlap curve whose s = 0 value is known
/// in closed form (`at_zero`) and whose s > 0 branch is `positive`.
struct OverlapMinimum {
  double s = 0.0;
  double value = 0.0;
  bool at_boundary = false;
};

OverlapMinimum minimize_overlap_curve(const std::function<double(double)>& positive, double at_zero);

}  // namespace qpol
