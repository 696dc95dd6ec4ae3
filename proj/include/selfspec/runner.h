#ifndef SELFSPEC_RUNNER_H
#define SELFSPEC_RUNNER_H

#include "selfspec/asympt.h"
#include "selfspec/config.h"
#include "selfspec/errors.h"
#include "selfspec/pencil.h"
#include "selfspec/selfsim.h"

#include <iosfwd>
#include <string>
#include <vector>

namespace selfspec {

// Result of a full solve: parameter echo, structure, regime and the
// signed-indexed eigenvalues that were requested.
struct SolveOutcome {
    SimilarityParams params;
    StructureReport structure;
    RegimeDescriptor regime;
    int depth_used = 0;
    bool depth_auto = false;
    bool depth_converged = true;
    std::vector<EigItem> eigs;
};

// Runs validate -> structure -> classify -> refine -> assemble -> spectrum.
// Honors cfg.depth (explicit) or deepens automatically until the requested
// eigenvalues stabilize to within cfg.auto_depth_tol relative change.
SolveOutcome run_solve(const JobConfig& cfg);

void write_solve_csv(std::ostream& out, const SolveOutcome& oc);
void write_solve_text(std::ostream& out, const SolveOutcome& oc);

// Subcommand drivers. Each returns a process exit code and reports
// problems on `err`; results go to `out` or to cfg.output when set.
int cmd_analyze(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_solve(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_asympt(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_reproduce_table(int id, std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& suite, unsigned long long seed,
               std::ostream& out, std::ostream& err);

// Maps an error to the documented process exit code.
int exit_code_for(const Error& e);

const char* regime_name(RegimeKind kind);

} // namespace selfspec

#endif
