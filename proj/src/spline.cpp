#include "selfspec/spline.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace selfspec {

SplineSpace build_space(int n, const std::vector<double>& interior_knots) {
    if (n < 1)
        throw std::invalid_argument("derivative order must be at least 1");
    std::vector<double> interior = interior_knots;
    std::sort(interior.begin(), interior.end());
    if (interior.empty())
        throw Error(ErrorKind::EmptySpace, "no interior knots, the trial space is empty");
    const double sep = 1e-13;
    double prev = 0.0;
    for (double t : interior) {
        if (t - prev <= sep || 1.0 - t <= sep)
            throw Error(ErrorKind::KnotCollision,
                        "interior knot at " + std::to_string(t) +
                            " collides with a neighbour or an endpoint");
        prev = t;
    }

    SplineSpace s;
    s.n = n;
    s.degree = 2 * n - 1;
    s.knots.assign(2 * n, 0.0);
    s.knots.insert(s.knots.end(), interior.begin(), interior.end());
    s.knots.insert(s.knots.end(), 2 * n, 1.0);
    s.breaks.push_back(0.0);
    s.breaks.insert(s.breaks.end(), interior.begin(), interior.end());
    s.breaks.push_back(1.0);
    s.dim = static_cast<int>(interior.size());
    return s;
}

namespace {

int find_span(const SplineSpace& s, double x) {
    const int p = s.degree;
    const int nb = static_cast<int>(s.knots.size()) - p - 1; // full basis count
    if (x >= s.knots[nb]) return nb - 1;                     // left limit at 1
    if (x <= s.knots[p]) return p;
    int lo = p, hi = nb;
    while (hi - lo > 1) {
        int mid = (lo + hi) / 2;
        (x < s.knots[mid] ? hi : lo) = mid;
    }
    return lo;
}

// Basis functions and derivatives on a span (the usual two-phase
// recurrence: build the inverted-triangle table, then difference it).
void ders_basis_funs(const SplineSpace& s, int span, double x, int nd,
                     std::vector<std::vector<double>>& ders) {
    const int p = s.degree;
    const std::vector<double>& u = s.knots;
    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = x - u[span + 1 - j];
        right[j] = u[span + j] - x;
        double saved = 0.0;
        for (int r = 0; r < j; ++r) {
            ndu[j][r] = right[r + 1] + left[j - r];
            double temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    ders.assign(nd + 1, std::vector<double>(p + 1, 0.0));
    for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];
    std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a[0].assign(p + 1, 0.0);
        a[1].assign(p + 1, 0.0);
        a[0][0] = 1.0;
        for (int k = 1; k <= nd; ++k) {
            double d = 0.0;
            int rk = r - k, pk = p - k;
            if (r >= k) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            int j1 = (rk >= -1) ? 1 : -rk;
            int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (r <= pk) {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::swap(s1, s2);
        }
    }
    double f = p;
    for (int k = 1; k <= nd; ++k) {
        for (int j = 0; j <= p; ++j) ders[k][j] *= f;
        f *= p - k;
    }
}

} // namespace

BasisValues eval_basis(const SplineSpace& s, double x, int max_deriv) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("evaluation point outside [0, 1]");
    if (max_deriv < 0 || max_deriv > s.degree)
        throw Error(ErrorKind::DerivativeOrderTooHigh,
                    "derivative order " + std::to_string(max_deriv) +
                        " exceeds the space degree " + std::to_string(s.degree));
    int span = find_span(s, x);
    BasisValues out;
    out.first = span - s.degree - s.n; // retained numbering drops n end functions
    ders_basis_funs(s, span, x, max_deriv, out.values);
    return out;
}

BandedSymmetricMatrix assemble_stiffness(const SplineSpace& s, QuadratureOptions opts) {
    int pts = opts.points_per_interval > 0 ? opts.points_per_interval : s.n + 1;
    GaussRule rule = gauss_legendre(pts);
    BandedSymmetricMatrix k(s.dim, s.degree);
    for (size_t e = 0; e + 1 < s.breaks.size(); ++e) {
        const double x0 = s.breaks[e], x1 = s.breaks[e + 1];
        const double half = 0.5 * (x1 - x0), mid = 0.5 * (x0 + x1);
        for (int g = 0; g < pts; ++g) {
            double x = mid + half * rule.nodes[g];
            double wq = half * rule.weights[g];
            BasisValues bv = eval_basis(s, x, s.n);
            const std::vector<double>& dn = bv.values[s.n];
            for (int i = 0; i <= s.degree; ++i) {
                int gi = bv.first + i;
                if (gi < 0 || gi >= s.dim) continue;
                for (int j = 0; j <= i; ++j) {
                    int gj = bv.first + j;
                    if (gj < 0 || gj >= s.dim) continue;
                    k.add(gi, gj, wq * dn[i] * dn[j]);
                }
            }
        }
    }
    return k;
}

BandedSymmetricMatrix assemble_weight(const SplineSpace& s, const std::vector<Atom>& atoms) {
    BandedSymmetricMatrix m(s.dim, s.degree);
    for (const Atom& atom : atoms) {
        auto it = std::lower_bound(s.breaks.begin(), s.breaks.end(), atom.position);
        double nearest = (it == s.breaks.end()) ? s.breaks.back() : *it;
        if (it != s.breaks.begin() && atom.position - *(it - 1) < nearest - atom.position)
            nearest = *(it - 1);
        if (std::abs(atom.position - nearest) > 1e-13 || nearest <= 0.0 || nearest >= 1.0)
            throw Error(ErrorKind::AtomOffKnot,
                        "atom at " + std::to_string(atom.position) +
                            " does not sit on an interior knot");
        BasisValues bv = eval_basis(s, nearest, 0);
        const std::vector<double>& v = bv.values[0];
        for (int i = 0; i <= s.degree; ++i) {
            int gi = bv.first + i;
            if (gi < 0 || gi >= s.dim) continue;
            for (int j = 0; j <= i; ++j) {
                int gj = bv.first + j;
                if (gj < 0 || gj >= s.dim) continue;
                m.add(gi, gj, atom.weight * v[i] * v[j]);
            }
        }
    }
    return m;
}

} // namespace selfspec
