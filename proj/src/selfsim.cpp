#include "selfspec/selfsim.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace selfspec {

SimilarityParams validate_params(const RawParams& raw) {
    if (raw.n < 1)
        throw Error(ErrorKind::ConfigError, "derivative order n must be at least 1");
    const int N = static_cast<int>(raw.a.size());
    if (N < 2)
        throw Error(ErrorKind::ShapeMismatch, "at least two intervals are required");
    if (raw.beta.size() != raw.a.size() || raw.d.size() != raw.a.size())
        throw Error(ErrorKind::ShapeMismatch,
                    "a, beta and d must have one entry per interval");

    double sum = 0.0;
    for (double ak : raw.a) {
        if (!(ak > 0.0))
            throw Error(ErrorKind::NonPositiveLength, "interval lengths must be positive");
        sum += ak;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw Error(ErrorKind::SumNotOne,
                    "interval lengths sum to " + std::to_string(sum) + ", expected 1");

    int m = 0, nonzero_d = 0;
    for (int k = 1; k <= N; ++k)
        if (raw.d[k - 1] != 0.0) {
            ++nonzero_d;
            m = k;
        }
    if (nonzero_d != 1)
        throw Error(ErrorKind::NotZeroOrder,
                    "exactly one interval may carry a nonzero scale factor, got " +
                        std::to_string(nonzero_d));
    bool any_beta = false;
    for (double b : raw.beta) any_beta = any_beta || b != 0.0;
    if (!any_beta)
        throw Error(ErrorKind::NotZeroOrder, "all level offsets are zero");

    const double am = raw.a[m - 1], dm = raw.d[m - 1];
    if (!(am * dm * dm < 1.0))
        throw Error(ErrorKind::NotContractive,
                    "refinement does not contract: a_m*d_m^2 = " +
                        std::to_string(am * dm * dm));

    SimilarityParams p;
    p.n = raw.n;
    p.N = N;
    p.a = raw.a;
    p.beta = raw.beta;
    p.d = raw.d;
    p.m = m;
    p.alpha.resize(N + 1);
    p.alpha[0] = 0.0;
    for (int k = 1; k <= N; ++k) p.alpha[k] = p.alpha[k - 1] + raw.a[k - 1];
    p.alpha[N] = 1.0;
    return p;
}

StructureReport compute_structure(const SimilarityParams& p) {
    StructureReport r;
    const int N = p.N, m = p.m;
    const double dm = p.d[m - 1];
    r.zeta.resize(N - 1);
    for (int k = 1; k <= N - 1; ++k) {
        double z = p.beta[k] - p.beta[k - 1];
        if (k == m - 1) z += dm * p.beta[0];
        if (k == m) z -= dm * p.beta[N - 1];
        r.zeta[k - 1] = z;
    }
    double beta_scale = 0.0;
    for (double b : p.beta) beta_scale = std::max(beta_scale, std::abs(b));
    const double zero_tol = 1e-14 * beta_scale;
    for (double z : r.zeta) {
        if (z > zero_tol) ++r.z_plus;
        else if (z < -zero_tol) ++r.z_minus;
    }
    r.nondegenerate = (r.z_plus + r.z_minus == N - 1);
    r.ratio_q = std::pow(p.a[m - 1], 2 * p.n - 1) * dm;
    r.contraction_l2 = p.a[m - 1] * dm * dm;
    return r;
}

RefinedWeight refine(const SimilarityParams& p, int depth, RefineOptions opts) {
    if (depth < 0 || depth > opts.depth_cap)
        throw Error(ErrorKind::DepthOverflow,
                    "depth " + std::to_string(depth) + " outside [0, " +
                        std::to_string(opts.depth_cap) + "]");
    const int N = p.N, m = p.m;
    const double dm = p.d[m - 1];

    std::vector<double> breaks{0.0, 1.0};
    std::vector<double> vals{0.0};
    for (int pass = 0; pass < depth; ++pass) {
        std::vector<double> nb{0.0};
        std::vector<double> nv;
        for (int k = 1; k <= N; ++k) {
            if (k != m) {
                nv.push_back(p.beta[k - 1]);
                nb.push_back(p.alpha[k]);
            } else {
                // Affine image of the previous stage inside interval m.
                const double x0 = p.alpha[m - 1], am = p.a[m - 1];
                for (size_t i = 0; i < vals.size(); ++i) {
                    nv.push_back(p.beta[m - 1] + dm * vals[i]);
                    nb.push_back(i + 1 == vals.size() ? p.alpha[m]
                                                      : x0 + am * breaks[i + 1]);
                }
            }
        }
        breaks = std::move(nb);
        vals = std::move(nv);
    }

    double scale = 0.0;
    for (double v : vals) scale = std::max(scale, std::abs(v));
    std::vector<double> mb{breaks[0]};
    std::vector<double> mv;
    for (size_t i = 0; i < vals.size(); ++i) {
        if (!mv.empty() && std::abs(vals[i] - mv.back()) <= opts.merge_tol * scale) {
            mb.back() = breaks[i + 1];
            continue;
        }
        mv.push_back(vals[i]);
        mb.push_back(breaks[i + 1]);
    }

    RefinedWeight w;
    w.depth = depth;
    w.breakpoints = std::move(mb);
    w.values = std::move(mv);
    return w;
}

std::vector<Atom> extract_atoms(const RefinedWeight& w) {
    double scale = 0.0;
    for (double v : w.values) scale = std::max(scale, std::abs(v));
    const double drop_tol = 1e-14 * scale;
    std::vector<Atom> atoms;
    for (size_t i = 1; i < w.values.size(); ++i) {
        double jump = w.values[i] - w.values[i - 1];
        if (std::abs(jump) <= drop_tol) continue;
        atoms.push_back({w.breakpoints[i], jump});
    }
    return atoms;
}

} // namespace selfspec
