#include "selfspec/banded.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>

namespace selfspec {

BandedSymmetricMatrix::BandedSymmetricMatrix(int dim, int bandwidth)
    : dim_(dim), bw_(bandwidth),
      a_(static_cast<size_t>(dim) * (bandwidth + 1), 0.0) {}

double BandedSymmetricMatrix::at(int i, int j) const {
    if (i < j) std::swap(i, j);
    int d = i - j;
    if (d > bw_) return 0.0;
    return a_[static_cast<size_t>(j) * (bw_ + 1) + d];
}

void BandedSymmetricMatrix::add(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    int d = i - j;
    if (d > bw_)
        throw Error(ErrorKind::ShapeMismatch, "entry outside the stored band");
    a_[static_cast<size_t>(j) * (bw_ + 1) + d] += v;
}

void BandedSymmetricMatrix::set(int i, int j, double v) {
    if (i < j) std::swap(i, j);
    int d = i - j;
    if (d > bw_)
        throw Error(ErrorKind::ShapeMismatch, "entry outside the stored band");
    a_[static_cast<size_t>(j) * (bw_ + 1) + d] = v;
}

double BandedSymmetricMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

DenseMatrix BandedSymmetricMatrix::to_dense() const {
    DenseMatrix m(dim_);
    for (int j = 0; j < dim_; ++j)
        for (int d = 0; d <= bw_ && j + d < dim_; ++d) {
            double v = a_[static_cast<size_t>(j) * (bw_ + 1) + d];
            m(j + d, j) = v;
            m(j, j + d) = v;
        }
    return m;
}

BandedSymmetricMatrix band_shifted(const BandedSymmetricMatrix& a,
                                   const BandedSymmetricMatrix& b, double shift) {
    if (a.dim() != b.dim())
        throw Error(ErrorKind::ShapeMismatch, "shifted pencil matrices must share a dimension");
    int bw = std::max(a.bandwidth(), b.bandwidth());
    BandedSymmetricMatrix out(a.dim(), bw);
    for (int j = 0; j < a.dim(); ++j)
        for (int d = 0; d <= bw && j + d < a.dim(); ++d)
            out.set(j + d, j, a.at(j + d, j) - shift * b.at(j + d, j));
    return out;
}

BandInertia band_ldlt_inertia(const BandedSymmetricMatrix& m) {
    const int n = m.dim();
    const int bw = m.bandwidth();
    BandInertia out;
    if (n == 0) return out;

    // Symmetric equilibration: s_i = 1/sqrt(max |row i|). A congruence
    // D·A·D keeps the inertia but tames the huge dynamic range a deeply
    // refined mesh produces, which unpivoted LDLᵀ cannot absorb alone.
    std::vector<double> s(n, 1.0);
    for (int i = 0; i < n; ++i) {
        double rowmax = 0.0;
        for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j)
            rowmax = std::max(rowmax, std::abs(m.at(i, j)));
        if (rowmax > 0.0 && std::isfinite(rowmax)) s[i] = 1.0 / std::sqrt(rowmax);
    }

    // Working copy of the scaled lower band, column-packed.
    std::vector<double> a(static_cast<size_t>(n) * (bw + 1), 0.0);
    double scaled_max = 0.0;
    for (int j = 0; j < n; ++j)
        for (int d = 0; d <= bw && j + d < n; ++d) {
            double v = m.at(j + d, j) * s[j + d] * s[j];
            a[static_cast<size_t>(j) * (bw + 1) + d] = v;
            scaled_max = std::max(scaled_max, std::abs(v));
        }
    const double pivot_floor = 1e-14 * std::max(scaled_max, 1e-300);

    auto idx = [bw](int j, int d) { return static_cast<size_t>(j) * (bw + 1) + d; };

    for (int j = 0; j < n; ++j) {
        double piv = a[idx(j, 0)];
        if (std::abs(piv) <= pivot_floor) out.zero_flag = true;
        if (piv < 0.0) ++out.neg_count;
        if (piv == 0.0) piv = pivot_floor; // keep the sweep alive; flag already set
        int tail = std::min(bw, n - 1 - j);
        // l_i = a(j+i, j) / piv; update the trailing band.
        for (int i = 1; i <= tail; ++i) {
            double li = a[idx(j, i)] / piv;
            for (int k = i; k <= tail; ++k)
                a[idx(j + i, k - i)] -= li * a[idx(j, k)];
        }
    }
    return out;
}

} // namespace selfspec
