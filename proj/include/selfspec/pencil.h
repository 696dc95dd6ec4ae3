#ifndef SELFSPEC_PENCIL_H
#define SELFSPEC_PENCIL_H

#include "selfspec/banded.h"

#include <vector>

namespace selfspec {

// Symmetric pencil K - λ·M with K positive definite. Eigenvalues carry
// signed indices: 1, 2, ... walk the positive ones away from zero,
// -1, -2, ... the negative ones.
struct Pencil {
    BandedSymmetricMatrix k;
    BandedSymmetricMatrix m;
};

// Validates shapes and the positive definiteness of K.
Pencil make_pencil(BandedSymmetricMatrix k, BandedSymmetricMatrix m);

struct InertiaResult {
    double lambda = 0.0;
    int neg_count = 0;    // negative eigenvalues of K - λ·M
    bool zero_flag = false;
};

// Inertia of the shifted matrix. For λ > 0 the negative count equals the
// number of pencil eigenvalues in (0, λ); for λ < 0, in (λ, 0). Throws
// SingularShift when a pivot collapses, unless told to just flag it.
InertiaResult inertia(const Pencil& p, double lambda, bool throw_on_singular = true);

// Eigenvalues strictly between lo and hi (zero crossings handled by
// splitting at the origin).
int count_interval(const Pencil& p, double lo, double hi);

struct WeightInertia {
    int pos = 0;
    int neg = 0;
    int zero = 0;
};

// Sign split of M's spectrum. The pencil has exactly `pos` positive and
// `neg` negative eigenvalues.
WeightInertia weight_inertia(const Pencil& p);

struct EigItem {
    int index = 0;
    double lambda = 0.0;
    bool certified = false; // bisection hit its tolerance
};

// Single eigenvalue by signed index, via inertia bisection.
EigItem eig_by_index(const Pencil& p, int index, double rel_tol = 1e-10);

// The first pos_count positive and neg_count negative eigenvalues.
// Throws IndexBeyondSpectrum (with the available counts attached) when
// the request exceeds what M's rank supports.
std::vector<EigItem> spectrum(const Pencil& p, int pos_count, int neg_count,
                              double rel_tol = 1e-10);

// All finite pencil eigenvalues, ascending, through the dense reduction.
// Guarded by a size limit; this is the cross-check path, not the solver.
std::vector<double> dense_eigs(const Pencil& p, int dim_limit = 200);

} // namespace selfspec

#endif
