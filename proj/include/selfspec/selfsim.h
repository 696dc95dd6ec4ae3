#ifndef SELFSPEC_SELFSIM_H
#define SELFSPEC_SELFSIM_H

#include <vector>

namespace selfspec {

// Raw user input for the similarity family: derivative order n plus the
// per-interval length fractions a, level offsets beta and scale factors d.
struct RawParams {
    int n = 1;
    std::vector<double> a;
    std::vector<double> beta;
    std::vector<double> d;
};

// Validated parameters. m is the 1-based index of the single interval
// carrying a nonzero scale factor; alpha holds the N+1 interval
// endpoints with alpha[0] = 0 and alpha[N] snapped to 1.
struct SimilarityParams {
    int n = 1;
    int N = 0;
    std::vector<double> a;
    std::vector<double> beta;
    std::vector<double> d;
    int m = 0;
    std::vector<double> alpha;
};

// Checks shapes, positivity, sum of lengths, the zero-order shape of the
// family (exactly one nonzero d, at least one nonzero beta) and the
// contraction bound a_m·d_m² < 1.
SimilarityParams validate_params(const RawParams& raw);

// Jump profile of the limit function at the first refinement level and
// the derived spectral data.
struct StructureReport {
    std::vector<double> zeta; // zeta[k-1] for k = 1..N-1
    int z_plus = 0;
    int z_minus = 0;
    bool nondegenerate = false; // no zero entry in zeta
    double ratio_q = 0.0;       // a_m^(2n-1)·d_m, the spectral ratio
    double contraction_l2 = 0.0; // a_m·d_m², the squared refinement factor
};

StructureReport compute_structure(const SimilarityParams& p);

struct RefineOptions {
    int depth_cap = 64;
    double merge_tol = 1e-13;
};

// Piecewise-constant approximation after `depth` refinement passes,
// stored as breakpoints[0..P] with values[i] on (breakpoints[i], breakpoints[i+1]).
struct RefinedWeight {
    int depth = 0;
    std::vector<double> breakpoints;
    std::vector<double> values;
};

RefinedWeight refine(const SimilarityParams& p, int depth, RefineOptions opts = {});

// Point mass of the derivative: jump of the refined function at an
// interior breakpoint (right value minus left value).
struct Atom {
    double position = 0.0;
    double weight = 0.0;
};

std::vector<Atom> extract_atoms(const RefinedWeight& w);

} // namespace selfspec

#endif
