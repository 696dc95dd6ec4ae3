#ifndef SELFSPEC_ORACLE_H
#define SELFSPEC_ORACLE_H

#include "selfspec/linalg.h"
#include "selfspec/selfsim.h"

#include <vector>

namespace selfspec {

// Green function of (-1)^n d^{2n}/dx^{2n} on [0,1] with value and first
// n-1 derivatives pinned at both ends. Each side of the diagonal is a
// polynomial in the scaled variables x/s and (1-x)/(1-s); the 2n
// coefficients come from a small interface solve per source point.
class GreenKernel {
public:
    explicit GreenKernel(int n);

    int order() const { return n_; }

    struct Coefficients {
        double s = 0.0;
        std::vector<double> left;  // G(x,s) = sum left[i]·(x/s)^(n+i), x <= s
        std::vector<double> right; // G(x,s) = sum right[i]·((1-x)/(1-s))^(n+i), x >= s
    };

    Coefficients coefficients(double s) const;
    double value(double x, double s) const;
    double value(double x, const Coefficients& c) const;

private:
    int n_;
};

// Exact spectrum of the atomic-weight problem by collocation at the
// atoms: y(ξᵢ) = λ·Σⱼ G(ξᵢ,ξⱼ)·wⱼ·y(ξⱼ), solved as the pencil
// (Γ⁻¹, diag(w)). Ascending; independent of the spline path.
std::vector<double> green_spectrum(int n, const std::vector<Atom>& atoms,
                                   int atom_limit = 200);

// Signed-index view of an ascending eigenvalue list: pos[i] is the
// (i+1)-th positive value counting up from zero, neg[i] the (i+1)-th
// negative value counting down from zero.
struct SignedSpectrum {
    std::vector<double> pos;
    std::vector<double> neg;
};

SignedSpectrum split_signed(const std::vector<double>& ascending,
                            double zero_tol = 0.0);

// One instance of the perturbed-pencil comparison: the pencils
// 1 - λ·F and (1 + D) - λ·F with D symmetric positive semidefinite and
// F symmetric of finite rank.
struct PerturbationInstance {
    DenseMatrix d;
    DenseMatrix f;
};

// Full-product bound: both pencils carry rank(F) finite eigenvalues with
// matching sign counts; pairing them by signed index gives ratios
// λ_k/μ_k ≥ 1, and the product of all ratios is at most det(1 + D).
struct ProductCheck {
    bool ok = true;
    int compared = 0;
    double product = 1.0;
    double bound = 1.0;           // det(1 + D)
    std::vector<double> ratios;   // positive-side then negative-side pairs
    double worst_defect = 0.0;    // largest violation margin, 0 when ok
};

ProductCheck perturbation_product_check(const PerturbationInstance& inst,
                                        double slack = 1e-9);

// Partial products over the ascending positive eigenvalues: the sequence
// prod_{k<=j} λ_k/μ_k is nondecreasing and bounded by det(1 + D).
struct PartialsCheck {
    bool ok = true;
    double bound = 1.0;
    std::vector<double> partials;
    double worst_defect = 0.0;
};

PartialsCheck perturbation_partials(const PerturbationInstance& inst, int count,
                                    double slack = 1e-9);

} // namespace selfspec

#endif
