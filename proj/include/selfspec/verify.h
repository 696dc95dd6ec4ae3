#ifndef SELFSPEC_VERIFY_H
#define SELFSPEC_VERIFY_H

#include <string>
#include <vector>

namespace selfspec {

struct SuiteReport {
    std::string name;
    int cases = 0;      // independent instances exercised
    int checks = 0;     // individual comparisons made
    int violations = 0;
    double worst = 0.0; // largest deviation seen, in the suite's own metric
    std::vector<std::string> failures;

    bool ok() const { return violations == 0; }
};

// Kernel closed forms and single-atom eigenvalues through both solver
// paths; deviations measured relative, threshold 1e-10 (1e-12 for the
// kernel identities).
SuiteReport verify_oracle(unsigned long long seed);

// Random perturbed-pencil instances: full product bound and
// positive-side partial products, slack 1e-9.
SuiteReport verify_lemmas(unsigned long long seed, int product_cases = 1000,
                          int partial_cases = 200);

// count_interval versus the bisection eigenvalue list on random pencils
// and random intervals; any mismatch is a violation.
SuiteReport verify_inertia(unsigned long long seed, int pencils = 100,
                           int intervals_per_pencil = 20);

// Spline-Galerkin versus Green-collocation spectra on random atomic
// measures, both signs, threshold 1e-8 relative.
SuiteReport verify_equivalence(unsigned long long seed, int cases = 50);

} // namespace selfspec

#endif
