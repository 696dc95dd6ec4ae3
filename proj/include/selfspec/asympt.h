#ifndef SELFSPEC_ASYMPT_H
#define SELFSPEC_ASYMPT_H

#include "selfspec/pencil.h"
#include "selfspec/selfsim.h"

#include <optional>
#include <vector>

namespace selfspec {

// One side of the spectrum under a geometric growth law: eigenvalue
// |index| = l + offset + k·period follows |λ| ≈ τ_l·|q|^-(pow_per_step·k
// + pow_offset), l = 1..period. Indices up to `offset` precede the law.
struct SideSpec {
    int period = 0;
    int offset = 0;
    int pow_per_step = 1;
    int pow_offset = 0;
};

enum class RegimeKind {
    Geometric,   // positive scale factor: each sign grows with ratio 1/q per period
    Alternating, // negative scale factor: both signs share period N-1, ratio 1/q²
    Degenerate,  // some first-level jump vanishes; no growth law applies
};

struct RegimeDescriptor {
    bool supported = false;
    RegimeKind kind = RegimeKind::Degenerate;
    double q = 0.0; // signed spectral ratio a_m^(2n-1)·d_m
    std::optional<SideSpec> pos;
    std::optional<SideSpec> neg;
};

RegimeDescriptor classify(const StructureReport& s);

// Eigenvalue growth factor per period on one side: |q|^-pow_per_step.
double expected_ratio(const RegimeDescriptor& rd, const SideSpec& side);

// Position of a signed eigenvalue index under the regime's law, plus the
// normalized value λ·|q|^(pow_per_step·k + pow_offset). Off-law indices
// (unsupported regime or index ≤ offset) keep l = k = 0 and the raw λ.
struct IndexLaw {
    int l = 0;
    int k = 0;
    bool in_law = false;
    double normalized = 0.0;
};

IndexLaw apply_law(const RegimeDescriptor& rd, int index, double lambda);

// Limit coefficients per residue class, taken as the deepest normalized
// magnitude; no extrapolation. Requires at least 3 complete periods.
struct SideAsymptotics {
    int side = +1;
    SideSpec spec;
    double ratio = 0.0; // expected growth per period
    std::vector<double> tau;
    std::vector<std::vector<double>> normalized; // per l: u_0, u_1, ...
    std::vector<std::vector<double>> residuals;  // per l: |u_k - u_(k-1)|/u_k
    int periods = 0;
    bool converged = false;
};

SideAsymptotics estimate_tau(const std::vector<EigItem>& eigs,
                             const RegimeDescriptor& rd, int side,
                             double conv_threshold = 5e-3);

// Consecutive same-residue eigenvalue ratios against the predicted
// factor. Requires at least 2 periods on the side.
struct GeomCheck {
    double expected = 0.0;
    std::vector<std::vector<double>> ratios; // per l
    std::vector<double> last_ratio;          // per l
    double worst_rel_err = 0.0;              // of the last ratios
    int pairs = 0;
};

GeomCheck geometric_check(const std::vector<EigItem>& eigs,
                          const RegimeDescriptor& rd, int side);

} // namespace selfspec

#endif
