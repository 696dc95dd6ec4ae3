#include "selfspec/oracle.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace selfspec {

namespace {

// Falling factorial p·(p-1)···(p-r+1); zero once the chain crosses zero.
double falling(int p, int r) {
    double f = 1.0;
    for (int i = 0; i < r; ++i) {
        if (p - i <= 0) return 0.0;
        f *= p - i;
    }
    return f;
}

} // namespace

GreenKernel::GreenKernel(int n) : n_(n) {
    if (n < 1)
        throw std::invalid_argument("kernel order must be at least 1");
}

GreenKernel::Coefficients GreenKernel::coefficients(double s) const {
    if (s < 1e-12 || 1.0 - s < 1e-12)
        throw Error(ErrorKind::IllConditioned,
                    "source point " + std::to_string(s) + " too close to an endpoint");
    const int n = n_;
    const int dim = 2 * n;
    // Unknowns: left[i] on (x/s)^(n+i), right[i] on ((1-x)/(1-s))^(n+i).
    // Rows 0..2n-2 match derivatives at x = s; the last row sets the
    // (2n-1)-th derivative jump to (-1)^n.
    DenseMatrix a(dim);
    std::vector<double> rhs(dim, 0.0);
    for (int r = 0; r <= 2 * n - 2; ++r)
        for (int i = 0; i < n; ++i) {
            double f = falling(n + i, r);
            a(r, i) = f / std::pow(s, r);
            a(r, n + i) = -(r % 2 == 0 ? 1.0 : -1.0) * f / std::pow(1.0 - s, r);
        }
    {
        int r = 2 * n - 1;
        for (int i = 0; i < n; ++i) {
            double f = falling(n + i, r);
            a(r, i) = -f / std::pow(s, r);
            a(r, n + i) = -f / std::pow(1.0 - s, r);
        }
        rhs[r] = (n % 2 == 0 ? 1.0 : -1.0);
    }
    std::vector<double> sol;
    if (!lu_solve(a, rhs, sol))
        throw Error(ErrorKind::IllConditioned, "kernel interface system is singular");
    Coefficients c;
    c.s = s;
    c.left.assign(sol.begin(), sol.begin() + n);
    c.right.assign(sol.begin() + n, sol.end());
    return c;
}

double GreenKernel::value(double x, const Coefficients& c) const {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("evaluation point outside [0, 1]");
    const int n = n_;
    double acc = 0.0;
    if (x <= c.s) {
        double t = x / c.s;
        double tp = std::pow(t, n);
        for (int i = 0; i < n; ++i, tp *= t) acc += c.left[i] * tp;
    } else {
        double t = (1.0 - x) / (1.0 - c.s);
        double tp = std::pow(t, n);
        for (int i = 0; i < n; ++i, tp *= t) acc += c.right[i] * tp;
    }
    return acc;
}

double GreenKernel::value(double x, double s) const {
    return value(x, coefficients(s));
}

std::vector<double> green_spectrum(int n, const std::vector<Atom>& atoms,
                                   int atom_limit) {
    const int na = static_cast<int>(atoms.size());
    if (na == 0) return {};
    if (na > atom_limit)
        throw Error(ErrorKind::DimensionTooLarge,
                    "collocation limited to " + std::to_string(atom_limit) + " atoms");
    GreenKernel kernel(n);
    DenseMatrix gram(na);
    for (int j = 0; j < na; ++j) {
        GreenKernel::Coefficients c = kernel.coefficients(atoms[j].position);
        for (int i = 0; i < na; ++i) gram(i, j) = kernel.value(atoms[i].position, c);
    }
    gram.symmetrize();
    DenseMatrix gram_inv;
    if (!spd_inverse(gram, gram_inv))
        throw Error(ErrorKind::SingularGram, "collocation matrix is not invertible");
    DenseMatrix w(na);
    for (int i = 0; i < na; ++i) w(i, i) = atoms[i].weight;
    return generalized_eigs_spd(gram_inv, w);
}

SignedSpectrum split_signed(const std::vector<double>& ascending, double zero_tol) {
    SignedSpectrum out;
    for (double v : ascending) {
        if (v > zero_tol) out.pos.push_back(v);
        else if (v < -zero_tol) out.neg.push_back(v);
    }
    // ascending input puts the most negative first; flip so neg[0] is the
    // one nearest zero
    std::reverse(out.neg.begin(), out.neg.end());
    return out;
}

namespace {

struct PairedSpectra {
    SignedSpectrum base;      // pencil 1 - λF
    SignedSpectrum perturbed; // pencil (1+D) - λF
    double bound = 1.0;
};

PairedSpectra solve_instance(const PerturbationInstance& inst) {
    const int dim = inst.d.dim();
    if (dim != inst.f.dim())
        throw Error(ErrorKind::ShapeMismatch, "D and F must share a dimension");
    DenseMatrix one_plus_d(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            one_plus_d(i, j) = inst.d(i, j) + (i == j ? 1.0 : 0.0);

    PairedSpectra ps;
    ps.base = split_signed(generalized_eigs_spd(DenseMatrix::identity(dim), inst.f));
    ps.perturbed = split_signed(generalized_eigs_spd(one_plus_d, inst.f));
    ps.bound = spd_determinant(one_plus_d);
    if (ps.bound <= 0.0)
        throw Error(ErrorKind::NotPositiveDefinite, "1 + D is not positive definite");
    if (ps.base.pos.size() != ps.perturbed.pos.size() ||
        ps.base.neg.size() != ps.perturbed.neg.size())
        throw Error(ErrorKind::RankMismatch,
                    "the two pencils disagree on the finite eigenvalue counts");
    return ps;
}

} // namespace

ProductCheck perturbation_product_check(const PerturbationInstance& inst, double slack) {
    if (inst.f.dim() > 50)
        throw Error(ErrorKind::DimensionTooLarge,
                    "full-product comparison limited to dimension 50");
    PairedSpectra ps = solve_instance(inst);
    ProductCheck out;
    out.bound = ps.bound;
    auto feed = [&](const std::vector<double>& lam, const std::vector<double>& mu) {
        for (size_t k = 0; k < lam.size(); ++k) {
            double ratio = lam[k] / mu[k];
            out.ratios.push_back(ratio);
            out.product *= ratio;
            // each ratio is at least 1: the perturbation pushes both
            // sides of the spectrum away from zero
            if (ratio < 1.0 - slack) {
                out.ok = false;
                out.worst_defect = std::max(out.worst_defect, 1.0 - ratio);
            }
        }
    };
    feed(ps.perturbed.pos, ps.base.pos);
    feed(ps.perturbed.neg, ps.base.neg);
    out.compared = static_cast<int>(out.ratios.size());
    if (out.product > out.bound * (1.0 + slack)) {
        out.ok = false;
        out.worst_defect =
            std::max(out.worst_defect, out.product / out.bound - 1.0);
    }
    return out;
}

PartialsCheck perturbation_partials(const PerturbationInstance& inst, int count,
                                    double slack) {
    if (inst.f.dim() > 100)
        throw Error(ErrorKind::DimensionTooLarge,
                    "partial-product comparison limited to dimension 100");
    PairedSpectra ps = solve_instance(inst);
    if (count < 1)
        throw Error(ErrorKind::ConfigError, "partial product count must be positive");
    if (static_cast<int>(ps.base.pos.size()) < count)
        throw Error(ErrorKind::InsufficientPositiveSpectrum,
                    "pencils hold " + std::to_string(ps.base.pos.size()) +
                        " positive eigenvalues, " + std::to_string(count) +
                        " partial products requested");
    PartialsCheck out;
    out.bound = ps.bound;
    double prod = 1.0;
    double prev = 1.0;
    for (int k = 0; k < count; ++k) {
        prod *= ps.perturbed.pos[k] / ps.base.pos[k];
        out.partials.push_back(prod);
        if (prod < prev * (1.0 - slack)) {
            out.ok = false;
            out.worst_defect = std::max(out.worst_defect, prev / prod - 1.0);
        }
        if (prod > out.bound * (1.0 + slack)) {
            out.ok = false;
            out.worst_defect = std::max(out.worst_defect, prod / out.bound - 1.0);
        }
        prev = prod;
    }
    return out;
}

} // namespace selfspec
