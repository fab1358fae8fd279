#ifndef PAINLEVE_VORTEX_CHECKS_HPP
#define PAINLEVE_VORTEX_CHECKS_HPP

// Node scans behind the structural properties of a reduced vortex field.
// Each returns the largest signed violation; a property holds strictly iff worst < 0.

#include <limits>

#include "painleve/grid.hpp"

namespace painleve {

struct Violation {
    double worst = -std::numeric_limits<double>::infinity();
    double x1 = 0.0;
    double sigma = 0.0;
    Index count = 0;  // nodes where the property fails (worst >= 0)
};

/// max(-y) over interior nodes with sigma >= min_sigma (default: every interior node).
Violation positivity_violation(const Field2D& y, double min_sigma = 0.0);

/// max(y(x1, sigma) - h(x1)) over all nodes with sigma < sigma_max; h lives on the x1 axis.
Violation amplitude_violation(const Field2D& y, const Field1D& h);

/// max of forward differences y(i+1,j) - y(i,j) and y(i,j) - y(i,j+1) over interior nodes
/// with sigma >= 2 * sigma spacing.
Violation monotonicity_violation(const Field2D& y);

/// Separate x1 and sigma parts of the monotonicity scan.
Violation x1_decrease_violation(const Field2D& y);
Violation sigma_increase_violation(const Field2D& y);

}  // namespace painleve

#endif  // PAINLEVE_VORTEX_CHECKS_HPP
