#include "selfspec/runner.h"

#include "selfspec/errors.h"
#include "selfspec/spline.h"
#include "selfspec/verify.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <utility>

namespace selfspec {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_percent(double rel) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f%%", rel * 100.0);
    return buf;
}

std::vector<EigItem> solve_at_depth(const SimilarityParams& p, int depth,
                                    int pos_count, int neg_count, double rel_tol) {
    RefinedWeight w = refine(p, depth);
    std::vector<Atom> atoms = extract_atoms(w);
    if (atoms.empty()) {
        Error e(ErrorKind::IndexBeyondSpectrum, "the refined weight carries no point masses");
        e.available_positive = 0;
        e.available_negative = 0;
        throw e;
    }
    std::vector<double> knots(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) knots[i] = atoms[i].position;
    SplineSpace space = build_space(p.n, knots);
    Pencil pencil = make_pencil(assemble_stiffness(space), assemble_weight(space, atoms));
    return spectrum(pencil, pos_count, neg_count, rel_tol);
}

int periods_needed(int count, const std::optional<SideSpec>& side) {
    if (count <= 0 || !side || side->period <= 0) return 0;
    return (count + side->offset + side->period - 1) / side->period;
}

// Writes to cfg.output when set, stdout otherwise.
template <typename Fn>
void with_output(const JobConfig& cfg, std::ostream& fallback, Fn&& fn) {
    if (cfg.output.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(cfg.output);
    if (!file) throw Error(ErrorKind::ConfigError, "cannot open output file '" + cfg.output + "'");
    fn(file);
}

void write_structure_text(std::ostream& out, const SolveOutcome& oc) {
    out << "n=" << oc.params.n << " N=" << oc.params.N << " m=" << oc.params.m << "\n";
    out << "zeta=";
    for (size_t i = 0; i < oc.structure.zeta.size(); ++i) {
        if (i) out << ",";
        out << fmt(oc.structure.zeta[i]);
    }
    out << "\n";
    out << "Z+=" << oc.structure.z_plus << " Z-=" << oc.structure.z_minus << "\n";
    out << "nondegenerate=" << (oc.structure.nondegenerate ? "true" : "false") << "\n";
    out << "q=" << fmt(oc.structure.ratio_q) << "\n";
    out << "contraction=" << fmt(std::sqrt(oc.structure.contraction_l2)) << "\n";
    out << "regime=" << regime_name(oc.regime.kind) << "\n";
    auto side_line = [&](const char* tag, const std::optional<SideSpec>& s) {
        out << tag << ": ";
        if (!s) {
            out << "none\n";
            return;
        }
        out << "period=" << s->period << " offset=" << s->offset
            << " growth=" << fmt(expected_ratio(oc.regime, *s)) << "\n";
    };
    side_line("positive side", oc.regime.pos);
    side_line("negative side", oc.regime.neg);
}

void write_structure_csv(std::ostream& out, const SolveOutcome& oc) {
    out << "field,value\n";
    out << "n," << oc.params.n << "\n";
    out << "N," << oc.params.N << "\n";
    out << "m," << oc.params.m << "\n";
    out << "zeta,";
    for (size_t i = 0; i < oc.structure.zeta.size(); ++i) {
        if (i) out << ";";
        out << fmt(oc.structure.zeta[i]);
    }
    out << "\n";
    out << "z_plus," << oc.structure.z_plus << "\n";
    out << "z_minus," << oc.structure.z_minus << "\n";
    out << "nondegenerate," << (oc.structure.nondegenerate ? "true" : "false") << "\n";
    out << "q," << fmt(oc.structure.ratio_q) << "\n";
    out << "contraction," << fmt(std::sqrt(oc.structure.contraction_l2)) << "\n";
    out << "regime," << regime_name(oc.regime.kind) << "\n";
    auto side_rows = [&](const char* tag, const std::optional<SideSpec>& s) {
        if (!s) return;
        out << tag << "_period," << s->period << "\n";
        out << tag << "_offset," << s->offset << "\n";
        out << tag << "_growth," << fmt(expected_ratio(oc.regime, *s)) << "\n";
    };
    side_rows("pos", oc.regime.pos);
    side_rows("neg", oc.regime.neg);
}

} // namespace

const char* regime_name(RegimeKind kind) {
    switch (kind) {
    case RegimeKind::Geometric: return "geometric";
    case RegimeKind::Alternating: return "alternating";
    case RegimeKind::Degenerate: return "degenerate";
    }
    return "unknown";
}

int exit_code_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::DegenerateRegime: return 3;
    case ErrorKind::IndexBeyondSpectrum: return 4;
    default: return 2;
    }
}

SolveOutcome run_solve(const JobConfig& cfg) {
    SolveOutcome oc;
    oc.params = validate_params(cfg.params);
    oc.structure = compute_structure(oc.params);
    oc.regime = classify(oc.structure);
    if (!oc.regime.supported && !cfg.force)
        throw Error(ErrorKind::DegenerateRegime,
                    "some first-level jump vanishes, no growth law applies; "
                    "use force to solve anyway");
    if (cfg.pos_count < 0 || cfg.neg_count < 0)
        throw Error(ErrorKind::ConfigError, "requested eigenvalue counts must be nonnegative");
    oc.depth_auto = cfg.depth <= 0;
    if (cfg.pos_count == 0 && cfg.neg_count == 0) {
        oc.depth_used = oc.depth_auto ? 0 : cfg.depth;
        return oc;
    }

    if (!oc.depth_auto) {
        oc.depth_used = cfg.depth;
        oc.eigs = solve_at_depth(oc.params, cfg.depth, cfg.pos_count, cfg.neg_count, cfg.rel_tol);
        return oc;
    }

    // Deepen until every requested eigenvalue is stable between levels.
    int start = std::max({4, periods_needed(cfg.pos_count, oc.regime.pos) + 3,
                          periods_needed(cfg.neg_count, oc.regime.neg) + 3});
    const int cap = 40;
    std::vector<EigItem> prev;
    bool have_prev = false;
    Error last_short(ErrorKind::IndexBeyondSpectrum, "the spectrum never reached the requested counts");
    for (int depth = start; depth <= cap; ++depth) {
        std::vector<EigItem> cur;
        try {
            cur = solve_at_depth(oc.params, depth, cfg.pos_count, cfg.neg_count, cfg.rel_tol);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IndexBeyondSpectrum) {
                last_short = e;
                have_prev = false;
                continue;
            }
            throw;
        }
        if (have_prev && cur.size() == prev.size()) {
            double change = 0.0;
            for (size_t i = 0; i < cur.size(); ++i) {
                double scale = std::max(std::abs(cur[i].lambda), 1e-300);
                change = std::max(change, std::abs(cur[i].lambda - prev[i].lambda) / scale);
            }
            if (change <= cfg.auto_depth_tol) {
                oc.depth_used = depth;
                oc.depth_converged = true;
                oc.eigs = std::move(cur);
                return oc;
            }
        }
        prev = std::move(cur);
        have_prev = true;
        oc.depth_used = depth;
    }
    if (!have_prev) throw last_short;
    oc.depth_converged = false;
    oc.eigs = std::move(prev);
    return oc;
}

void write_solve_csv(std::ostream& out, const SolveOutcome& oc) {
    out << "side,index,l,k,lambda,normalized\n";
    auto row = [&](const EigItem& e) {
        IndexLaw law = apply_law(oc.regime, e.index, e.lambda);
        out << (e.index > 0 ? "+" : "-") << "," << e.index << "," << law.l << ","
            << law.k << "," << fmt(e.lambda) << "," << fmt(law.normalized) << "\n";
    };
    for (const EigItem& e : oc.eigs)
        if (e.index > 0) row(e);
    for (auto it = oc.eigs.rbegin(); it != oc.eigs.rend(); ++it)
        if (it->index < 0) row(*it);
}

void write_solve_text(std::ostream& out, const SolveOutcome& oc) {
    out << "depth=" << oc.depth_used << (oc.depth_auto ? " (auto)" : "")
        << " converged=" << (oc.depth_converged ? "true" : "false") << "\n";
    out << "regime=" << regime_name(oc.regime.kind) << " q=" << fmt(oc.regime.q) << "\n";
    out << std::left << std::setw(6) << "side" << std::setw(8) << "index" << std::setw(5)
        << "l" << std::setw(5) << "k" << std::setw(22) << "lambda" << std::setw(22)
        << "normalized" << "certified" << "\n";
    auto row = [&](const EigItem& e) {
        IndexLaw law = apply_law(oc.regime, e.index, e.lambda);
        out << std::left << std::setw(6) << (e.index > 0 ? "+" : "-") << std::setw(8)
            << e.index << std::setw(5) << law.l << std::setw(5) << law.k << std::setw(22)
            << fmt(e.lambda) << std::setw(22) << fmt(law.normalized)
            << (e.certified ? "yes" : "no") << "\n";
    };
    for (const EigItem& e : oc.eigs)
        if (e.index > 0) row(e);
    for (auto it = oc.eigs.rbegin(); it != oc.eigs.rend(); ++it)
        if (it->index < 0) row(*it);
}

int cmd_analyze(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        SolveOutcome oc;
        oc.params = validate_params(cfg.params);
        oc.structure = compute_structure(oc.params);
        oc.regime = classify(oc.structure);
        with_output(cfg, out, [&](std::ostream& dst) {
            if (cfg.format == "csv")
                write_structure_csv(dst, oc);
            else
                write_structure_text(dst, oc);
        });
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_solve(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        SolveOutcome oc = run_solve(cfg);
        with_output(cfg, out, [&](std::ostream& dst) {
            if (cfg.format == "csv")
                write_solve_csv(dst, oc);
            else
                write_solve_text(dst, oc);
        });
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_asympt(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        SolveOutcome oc = run_solve(cfg);
        std::vector<SideAsymptotics> sides;
        std::vector<GeomCheck> checks;
        if (cfg.pos_count > 0 && oc.regime.pos) {
            sides.push_back(estimate_tau(oc.eigs, oc.regime, +1));
            checks.push_back(geometric_check(oc.eigs, oc.regime, +1));
        }
        if (cfg.neg_count > 0 && oc.regime.neg) {
            sides.push_back(estimate_tau(oc.eigs, oc.regime, -1));
            checks.push_back(geometric_check(oc.eigs, oc.regime, -1));
        }
        if (sides.empty())
            throw Error(ErrorKind::InsufficientData,
                        "no side with both a growth law and requested eigenvalues");
        with_output(cfg, out, [&](std::ostream& dst) {
            if (cfg.format == "csv") {
                dst << "side,l,tau,periods,last_residual,last_ratio,expected_ratio,converged\n";
                for (size_t s = 0; s < sides.size(); ++s) {
                    const SideAsymptotics& sa = sides[s];
                    const GeomCheck& gc = checks[s];
                    for (size_t l = 0; l < sa.tau.size(); ++l) {
                        double resid = sa.residuals[l].empty() ? 0.0 : sa.residuals[l].back();
                        dst << (sa.side > 0 ? "+" : "-") << "," << (l + 1) << ","
                            << fmt(sa.tau[l]) << "," << sa.periods << "," << fmt(resid) << ","
                            << fmt(gc.last_ratio[l]) << "," << fmt(gc.expected) << ","
                            << (sa.converged ? "true" : "false") << "\n";
                    }
                }
            } else {
                dst << "depth=" << oc.depth_used << (oc.depth_auto ? " (auto)" : "") << "\n";
                for (size_t s = 0; s < sides.size(); ++s) {
                    const SideAsymptotics& sa = sides[s];
                    const GeomCheck& gc = checks[s];
                    dst << "side=" << (sa.side > 0 ? "+" : "-") << " period=" << sa.spec.period
                        << " periods=" << sa.periods << " expected_ratio=" << fmt(gc.expected)
                        << " converged=" << (sa.converged ? "true" : "false") << "\n";
                    for (size_t l = 0; l < sa.tau.size(); ++l) {
                        double resid = sa.residuals[l].empty() ? 0.0 : sa.residuals[l].back();
                        dst << "  l=" << (l + 1) << " tau=" << fmt(sa.tau[l])
                            << " last_residual=" << fmt_short(resid)
                            << " last_ratio=" << fmt(gc.last_ratio[l]) << "\n";
                    }
                }
            }
        });
        return 0;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_reproduce_table(int id, std::ostream& out, std::ostream& err) {
    try {
        TablePreset preset = preset_table(id);
        JobConfig cfg;
        cfg.params = preset.params;
        cfg.pos_count = preset.pos_count;
        cfg.neg_count = preset.neg_count;
        cfg.depth = -1;
        cfg.auto_depth_tol = preset.auto_depth_tol;
        SolveOutcome oc = run_solve(cfg);
        out << "reference set " << id << ", depth " << oc.depth_used << "\n";
        out << std::left << std::setw(7) << "index" << std::setw(4) << "l" << std::setw(4)
            << "k" << std::setw(14) << "lambda" << std::setw(12) << "reference" << std::setw(10)
            << "dev" << std::setw(14) << "normalized" << std::setw(12) << "reference"
            << std::setw(10) << "dev" << "verdict" << "\n";
        int passed = 0;
        int first_bad = 0;
        for (const TableRowRef& row : preset.rows) {
            auto it = std::find_if(oc.eigs.begin(), oc.eigs.end(),
                                   [&](const EigItem& e) { return e.index == row.index; });
            if (it == oc.eigs.end())
                throw Error(ErrorKind::IndexBeyondSpectrum, "requested index missing from the solve");
            IndexLaw law = apply_law(oc.regime, it->index, it->lambda);
            double raw_got = std::abs(it->lambda);
            double norm_got = std::abs(law.normalized);
            double raw_dev = std::abs(raw_got - row.raw) / row.raw;
            double norm_dev = std::abs(norm_got - row.norm) / row.norm;
            bool ok = raw_dev <= preset.raw_tol && norm_dev <= preset.norm_tol && law.l == row.l &&
                      law.k == row.k;
            out << std::left << std::setw(7) << it->index << std::setw(4) << law.l << std::setw(4)
                << law.k << std::setw(14) << fmt_short(raw_got) << std::setw(12)
                << fmt_short(row.raw) << std::setw(10) << fmt_percent(raw_dev) << std::setw(14)
                << fmt_short(norm_got) << std::setw(12) << fmt_short(row.norm) << std::setw(10)
                << fmt_percent(norm_dev) << (ok ? "PASS" : "FAIL") << "\n";
            if (ok)
                ++passed;
            else if (first_bad == 0)
                first_bad = row.index;
        }
        out << "summary: " << passed << "/" << preset.rows.size() << " rows PASS";
        if (first_bad != 0) out << ", first failure at index " << first_bad;
        out << "\n";
        return first_bad == 0 ? 0 : 5;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

int cmd_verify(const std::string& suite, unsigned long long seed, std::ostream& out,
               std::ostream& err) {
    try {
        SuiteReport report;
        if (suite == "oracle")
            report = verify_oracle(seed);
        else if (suite == "lemmas")
            report = verify_lemmas(seed);
        else if (suite == "inertia")
            report = verify_inertia(seed);
        else if (suite == "equivalence")
            report = verify_equivalence(seed);
        else
            throw Error(ErrorKind::ConfigError, "unknown suite '" + suite +
                                                    "'; expected oracle, lemmas, inertia or "
                                                    "equivalence");
        out << "suite=" << report.name << " seed=" << seed << " cases=" << report.cases
            << " checks=" << report.checks << " violations=" << report.violations
            << " worst=" << fmt_short(report.worst) << "\n";
        for (const std::string& f : report.failures) out << "  " << f << "\n";
        out << (report.ok() ? "PASS" : "FAIL") << "\n";
        return report.ok() ? 0 : 5;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }
}

} // namespace selfspec
