#ifndef SELFSPEC_BANDED_H
#define SELFSPEC_BANDED_H

#include "selfspec/linalg.h"

#include <vector>

namespace selfspec {

// Symmetric band matrix, lower triangle packed by column:
// entry (j + d, j) with 0 <= d <= bandwidth lives at a_[j*(bandwidth+1)+d].
class BandedSymmetricMatrix {
public:
    BandedSymmetricMatrix() = default;
    BandedSymmetricMatrix(int dim, int bandwidth);

    int dim() const { return dim_; }
    int bandwidth() const { return bw_; }

    double at(int i, int j) const;
    void add(int i, int j, double v);
    void set(int i, int j, double v);

    double max_abs() const;
    DenseMatrix to_dense() const;

private:
    int dim_ = 0;
    int bw_ = 0;
    std::vector<double> a_;
};

// A - shift·B over the union band.
BandedSymmetricMatrix band_shifted(const BandedSymmetricMatrix& a,
                                   const BandedSymmetricMatrix& b, double shift);

struct BandInertia {
    int neg_count = 0;   // negative pivots of the factored matrix
    bool zero_flag = false; // a pivot fell under the singularity threshold
};

// Inertia of a symmetric band matrix by unpivoted LDLᵀ, after symmetric
// diagonal equilibration (a congruence, so inertia is preserved). Rows
// whose largest entry underflows keep unit scaling. A pivot below
// 1e-14 · max|scaled entry| sets zero_flag and is counted by sign with
// zero treated as positive; callers decide whether that is fatal.
BandInertia band_ldlt_inertia(const BandedSymmetricMatrix& m);

} // namespace selfspec

#endif
