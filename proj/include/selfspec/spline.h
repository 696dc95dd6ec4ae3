#ifndef SELFSPEC_SPLINE_H
#define SELFSPEC_SPLINE_H

#include "selfspec/banded.h"
#include "selfspec/selfsim.h"

#include <vector>

namespace selfspec {

// Spline trial space for the order-2n problem: degree 2n-1 with simple
// interior knots, so functions are C^(2n-2) piecewise polynomials. The
// n leading and n trailing basis functions of the open knot vector are
// dropped, which pins value and the first n-1 derivatives at both ends.
// The retained dimension equals the number of interior knots.
struct SplineSpace {
    int n = 1;
    int degree = 1;               // 2n-1
    std::vector<double> knots;    // full vector with end multiplicity 2n
    std::vector<double> breaks;   // 0, interior knots, 1
    int dim = 0;                  // retained basis count
};

SplineSpace build_space(int n, const std::vector<double>& interior_knots);

// Nonzero basis window at a point: values[r][j] is the r-th derivative
// of retained function (first + j), j = 0..degree. Indices outside
// [0, dim) refer to dropped end functions and must be skipped. At a
// breakpoint the right limit is taken, at x = 1 the left limit.
struct BasisValues {
    int first = 0;
    std::vector<std::vector<double>> values;
};

BasisValues eval_basis(const SplineSpace& s, double x, int max_deriv);

struct QuadratureOptions {
    int points_per_interval = 0; // 0 picks n+1, exact for these integrands
};

// K(i,j) = integral of the n-th derivatives' product.
BandedSymmetricMatrix assemble_stiffness(const SplineSpace& s, QuadratureOptions opts = {});

// M(i,j) = sum over atoms of weight · basis(i) · basis(j) at the atom.
// Every atom must sit on an interior knot.
BandedSymmetricMatrix assemble_weight(const SplineSpace& s, const std::vector<Atom>& atoms);

} // namespace selfspec

#endif
