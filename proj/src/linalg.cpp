#include "selfspec/linalg.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>

namespace selfspec {

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
}

void DenseMatrix::symmetrize() {
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < i; ++j) {
            double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
            (*this)(i, j) = v;
            (*this)(j, i) = v;
        }
}

DenseMatrix DenseMatrix::identity(int dim) {
    DenseMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

bool cholesky(const DenseMatrix& a, DenseMatrix& l) {
    const int n = a.dim();
    l = DenseMatrix(n);
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (!(d > 0.0)) return false;
        double ljj = std::sqrt(d);
        l(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return true;
}

void solve_lower(const DenseMatrix& l, std::vector<double>& b) {
    const int n = l.dim();
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= l(i, k) * b[k];
        b[i] = s / l(i, i);
    }
}

void solve_lower_transposed(const DenseMatrix& l, std::vector<double>& b) {
    const int n = l.dim();
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
        b[i] = s / l(i, i);
    }
}

bool spd_inverse(const DenseMatrix& a, DenseMatrix& inv) {
    const int n = a.dim();
    DenseMatrix l;
    if (!cholesky(a, l)) return false;
    inv = DenseMatrix(n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        solve_lower(l, col);
        solve_lower_transposed(l, col);
        for (int i = 0; i < n; ++i) inv(i, j) = col[i];
    }
    inv.symmetrize();
    return true;
}

double spd_determinant(const DenseMatrix& a) {
    DenseMatrix l;
    if (!cholesky(a, l)) return 0.0;
    double det = 1.0;
    for (int i = 0; i < a.dim(); ++i) det *= l(i, i) * l(i, i);
    return det;
}

bool lu_solve(DenseMatrix a, std::vector<double> b, std::vector<double>& x) {
    const int n = a.dim();
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best == 0.0) return false;
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(b[k], b[p]);
        }
        for (int i = k + 1; i < n; ++i) {
            double f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        if (a(i, i) == 0.0) return false;
        x[i] = s / a(i, i);
    }
    return true;
}

namespace {

double off_diagonal_norm(const DenseMatrix& a) {
    const int n = a.dim();
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

} // namespace

std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
    const int n = a.dim();
    if (n == 0) return {};
    if (n == 1) return {a(0, 0)};
    a.symmetrize();
    const double scale = std::max(a.max_abs(), 1.0);
    const double stop = 1e-15 * scale * n;
    for (int sweep = 0; sweep < 64; ++sweep) {
        if (off_diagonal_norm(a) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> generalized_eigs_spd(const DenseMatrix& a, const DenseMatrix& b,
                                         double rank_rel_tol) {
    if (a.dim() != b.dim())
        throw Error(ErrorKind::ShapeMismatch, "pencil matrices must share a dimension");
    const int n = a.dim();
    DenseMatrix l;
    if (!cholesky(a, l))
        throw Error(ErrorKind::NotPositiveDefinite, "pencil base matrix is not positive definite");
    // C = L⁻¹·B·L⁻ᵀ, column by column.
    DenseMatrix c(n);
    std::vector<double> col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = b(i, j);
        solve_lower(l, col);
        for (int i = 0; i < n; ++i) c(i, j) = col[i];
    }
    // Now apply L⁻¹ from the right: C ← C·L⁻ᵀ, i.e. solve on rows.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) col[j] = c(i, j);
        solve_lower(l, col);
        for (int j = 0; j < n; ++j) c(i, j) = col[j];
    }
    c.symmetrize();
    std::vector<double> eta = jacobi_eigenvalues(std::move(c));
    double eta_max = 0.0;
    for (double e : eta) eta_max = std::max(eta_max, std::abs(e));
    std::vector<double> lambda;
    for (double e : eta)
        if (std::abs(e) > rank_rel_tol * eta_max) lambda.push_back(1.0 / e);
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

GaussRule gauss_legendre(int point_count) {
    if (point_count < 1)
        throw Error(ErrorKind::ConfigError, "quadrature rule needs at least one point");
    const int k = point_count;
    GaussRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (k + 1) / 2; ++i) {
        // Chebyshev-style initial guess, then Newton on P_k.
        double x = std::cos(pi * (i + 0.75) / (k + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= k; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = k * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[k - 1 - i] = x;
        rule.weights[k - 1 - i] = w;
    }
    if (k % 2 == 1) rule.nodes[k / 2] = 0.0;
    return rule;
}

} // namespace selfspec
