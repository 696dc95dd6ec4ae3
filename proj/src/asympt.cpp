#include "selfspec/asympt.h"
#include "selfspec/errors.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace selfspec {

RegimeDescriptor classify(const StructureReport& s) {
    RegimeDescriptor rd;
    rd.q = s.ratio_q;
    if (!s.nondegenerate) return rd;
    if (s.ratio_q > 0.0) {
        rd.kind = RegimeKind::Geometric;
        if (s.z_plus > 0) rd.pos = SideSpec{s.z_plus, 0, 1, 0};
        if (s.z_minus > 0) rd.neg = SideSpec{s.z_minus, 0, 1, 0};
        rd.supported = rd.pos.has_value() || rd.neg.has_value();
    } else {
        int period = s.z_plus + s.z_minus; // equals N-1 when nondegenerate
        if (period > 0) {
            rd.kind = RegimeKind::Alternating;
            rd.pos = SideSpec{period, 0, 2, 0};
            rd.neg = SideSpec{period, s.z_minus, 2, 1};
            rd.supported = true;
        }
    }
    if (!rd.supported) rd.kind = RegimeKind::Degenerate;
    return rd;
}

double expected_ratio(const RegimeDescriptor& rd, const SideSpec& side) {
    return std::pow(std::abs(rd.q), -side.pow_per_step);
}

IndexLaw apply_law(const RegimeDescriptor& rd, int index, double lambda) {
    IndexLaw law;
    law.normalized = lambda;
    const std::optional<SideSpec>& side = index > 0 ? rd.pos : rd.neg;
    if (!rd.supported || !side) return law;
    int i = std::abs(index);
    if (i <= side->offset) return law;
    int t = i - 1 - side->offset;
    law.k = t / side->period;
    law.l = t % side->period + 1;
    law.in_law = true;
    law.normalized =
        lambda * std::pow(std::abs(rd.q), side->pow_per_step * law.k + side->pow_offset);
    return law;
}

namespace {

const SideSpec& side_spec_or_throw(const RegimeDescriptor& rd, int side) {
    const std::optional<SideSpec>& s = side > 0 ? rd.pos : rd.neg;
    if (!rd.supported || !s)
        throw Error(ErrorKind::DegenerateRegime,
                    std::string("no growth law on the ") +
                        (side > 0 ? "positive" : "negative") + " side");
    return *s;
}

// Per-residue series of eigenvalue magnitudes, indexed by k, truncated at
// the first gap so every series is contiguous from k = 0.
std::vector<std::vector<double>> gather_series(const std::vector<EigItem>& eigs,
                                               const SideSpec& spec, int side) {
    std::map<int, std::map<int, double>> by_l;
    for (const EigItem& e : eigs) {
        if ((e.index > 0) != (side > 0)) continue;
        int i = std::abs(e.index);
        if (i <= spec.offset) continue;
        int t = i - 1 - spec.offset;
        by_l[t % spec.period + 1][t / spec.period] = std::abs(e.lambda);
    }
    std::vector<std::vector<double>> series(spec.period);
    for (int l = 1; l <= spec.period; ++l) {
        auto it = by_l.find(l);
        if (it == by_l.end()) continue;
        for (int k = 0;; ++k) {
            auto kt = it->second.find(k);
            if (kt == it->second.end()) break;
            series[l - 1].push_back(kt->second);
        }
    }
    return series;
}

} // namespace

SideAsymptotics estimate_tau(const std::vector<EigItem>& eigs,
                             const RegimeDescriptor& rd, int side,
                             double conv_threshold) {
    const SideSpec& spec = side_spec_or_throw(rd, side);
    SideAsymptotics out;
    out.side = side > 0 ? +1 : -1;
    out.spec = spec;
    out.ratio = expected_ratio(rd, spec);
    std::vector<std::vector<double>> series = gather_series(eigs, spec, side);
    out.periods = 0;
    for (const auto& s : series)
        out.periods = out.periods == 0
                          ? static_cast<int>(s.size())
                          : std::min(out.periods, static_cast<int>(s.size()));
    if (out.periods < 3)
        throw Error(ErrorKind::InsufficientData,
                    "need 3 complete periods, have " + std::to_string(out.periods));
    out.converged = true;
    const double qabs = std::abs(rd.q);
    for (int l = 1; l <= spec.period; ++l) {
        std::vector<double> u, r;
        const std::vector<double>& raw = series[l - 1];
        for (size_t k = 0; k < raw.size(); ++k) {
            u.push_back(raw[k] * std::pow(qabs, spec.pow_per_step * static_cast<int>(k) +
                                                    spec.pow_offset));
            if (k > 0) r.push_back(std::abs(u[k] - u[k - 1]) / u[k]);
        }
        out.tau.push_back(u.back());
        if (r.back() > conv_threshold) out.converged = false;
        out.normalized.push_back(std::move(u));
        out.residuals.push_back(std::move(r));
    }
    return out;
}

GeomCheck geometric_check(const std::vector<EigItem>& eigs,
                          const RegimeDescriptor& rd, int side) {
    const SideSpec& spec = side_spec_or_throw(rd, side);
    GeomCheck out;
    out.expected = expected_ratio(rd, spec);
    std::vector<std::vector<double>> series = gather_series(eigs, spec, side);
    for (const std::vector<double>& s : series) {
        std::vector<double> ratios;
        for (size_t k = 1; k < s.size(); ++k) ratios.push_back(s[k] / s[k - 1]);
        if (ratios.empty())
            throw Error(ErrorKind::InsufficientData,
                        "need 2 complete periods for a ratio");
        out.pairs += static_cast<int>(ratios.size());
        out.last_ratio.push_back(ratios.back());
        out.worst_rel_err =
            std::max(out.worst_rel_err, std::abs(ratios.back() / out.expected - 1.0));
        out.ratios.push_back(std::move(ratios));
    }
    return out;
}

} // namespace selfspec
