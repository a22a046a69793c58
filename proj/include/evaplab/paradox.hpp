#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "evaplab/errors.hpp"
#include "evaplab/page_curve.hpp"

namespace evaplab {

/// External neighborhood geometry: surface area mu times the horizon's, so
/// A_N = 4 mu S_BH in Planck units.
struct AtmosphereParams {
    double mu;
    double s_bh;
    bool stretched_horizon_allowance = false; // adds O(A^(1/2)) headroom when set

    AtmosphereParams(double mu_, double s_bh_, bool allowance = false)
        : mu(mu_), s_bh(s_bh_), stretched_horizon_allowance(allowance) {
        if (!(mu > 0.0)) throw ArgumentError("AtmosphereParams: mu must be > 0");
        if (!(s_bh > 0.0)) throw ArgumentError("AtmosphereParams: s_bh must be > 0");
    }
};

struct ThooftBound {
    double bound;      // A_N^(3/4), the ceiling on the neighborhood's entropy
    double prefactor;  // 2 sqrt(2) (mu^3 / S_BH)^(1/4); << 1 for large holes
};

/// Entropy ceiling A_N^(3/4) = [2 sqrt(2) (mu^3/S_BH)^(1/4)] S_BH for ordinary
/// (non-collapsing) matter in the neighborhood.
inline ThooftBound thooft_bound(const AtmosphereParams& a) {
    const double prefactor = 2.0 * std::sqrt(2.0) * std::pow(a.mu * a.mu * a.mu / a.s_bh, 0.25);
    return {prefactor * a.s_bh, prefactor};
}

/// Ceiling actually charged against the neighborhood; optionally includes the
/// sqrt(A_N) allowance for entropy between the causal and stretched horizons.
inline double atmosphere_ceiling(const AtmosphereParams& a) {
    double ceiling = thooft_bound(a).bound;
    if (a.stretched_horizon_allowance) ceiling += std::sqrt(4.0 * a.mu * a.s_bh);
    return ceiling;
}

/// Inputs shared by every theorem evaluation. epsilon is the untracked final
/// sliver of evaporation (as an area fraction ~epsilon/2), eta the exotic-
/// matter allowance S(N:R) <= eta S_BH, and theta operationalizes the strict
/// dominance relations: "x >> y" holds iff y/x <= theta, and "x ~ y" iff they
/// agree within a factor (1 +/- theta).
struct TheoremParams {
    double s_bh;
    double s_matter = 0.0;
    double mu = 1.0;
    double epsilon = 0.0;
    double eta = 0.0;
    std::optional<double> log_dim_b = std::nullopt; // interior log-dimension override
    double theta = 0.01;
    bool stretched_horizon_allowance = false;

    void validate() const {
        EvaporationParams check(s_bh, s_matter, 0.0);
        (void)check;
        if (epsilon < 0.0 || epsilon >= 1.0) throw ArgumentError("TheoremParams: epsilon outside [0,1)");
        if (eta < 0.0 || eta >= 1.0) throw ArgumentError("TheoremParams: eta outside [0,1)");
        if (!(theta > 0.0) || theta >= 1.0) throw ArgumentError("TheoremParams: theta outside (0,1)");
        if (log_dim_b && *log_dim_b < 0.0) throw ArgumentError("TheoremParams: log_dim_b < 0");
        if (!(mu > 0.0)) throw ArgumentError("TheoremParams: mu must be > 0");
    }

    EvaporationParams evaporation(double r) const { return {s_bh, s_matter, r}; }
};

enum class Theorem { t1, t2, t1_holographic, t1_matter, t2_matter, pagetime_minimal };

inline std::string theorem_name(Theorem t) {
    switch (t) {
        case Theorem::t1: return "t1";
        case Theorem::t2: return "t2";
        case Theorem::t1_holographic: return "t1-holographic";
        case Theorem::t1_matter: return "t1-matter";
        case Theorem::t2_matter: return "t2-matter";
        case Theorem::pagetime_minimal: return "pagetime-minimal";
    }
    return "unknown";
}

inline Theorem theorem_from_name(const std::string& name) {
    if (name == "t1") return Theorem::t1;
    if (name == "t2") return Theorem::t2;
    if (name == "t1-holographic") return Theorem::t1_holographic;
    if (name == "t1-matter") return Theorem::t1_matter;
    if (name == "t2-matter") return Theorem::t2_matter;
    if (name == "pagetime-minimal") return Theorem::pagetime_minimal;
    throw ArgumentError("unknown theorem '" + name + "'");
}

/// Verdict at one evaluation point. lhs is the capacity/ceiling side and rhs
/// the entanglement-driven requirement, so margin = lhs - rhs is the slack of
/// the inequality the assumptions need; `assumptions` lists the tags whose
/// rejection removes a flagged contradiction (or, for a vacuous evaluation,
/// the tag the inputs already reject).
struct ParadoxReport {
    Theorem theorem;
    double r;
    double lhs;
    double rhs;
    double margin;
    bool contradiction;
    std::vector<std::string> assumptions;
    std::string note;
};

/// Theorem 1 at radiated amount r: the interior log-dimension (assumption 1.c,
/// default = remaining Bekenstein-Hawking entropy s_bh - r) must strictly
/// exceed the radiation-forced interior entanglement (1/2) S(R':R); saturation
/// means an infinite-temperature interior, so margin <= 0 is a contradiction.
inline ParadoxReport theorem1_report(const TheoremParams& p, double r) {
    p.validate();
    const auto ev = p.evaporation(r); // validates r
    const double required = 0.5 * analytic_mutual_information(ev);
    const double capacity = p.log_dim_b.value_or(p.s_bh - r);
    ParadoxReport rep;
    rep.theorem = p.s_matter > 0.0 ? Theorem::t1_matter : Theorem::t1;
    rep.r = r;
    rep.lhs = capacity;
    rep.rhs = required;
    rep.margin = capacity - required;
    rep.contradiction = rep.margin <= 0.0;
    if (rep.contradiction) rep.assumptions = {"1.b(ii)", "1.c", "1.a"};
    return rep;
}

namespace detail {

/// Rising bound consumed by theorem 2: S(R':R) between the radiation emitted
/// so far and the later radiation tracked until the hole reaches the final
/// epsilon/2 area fraction. The split freezes at r1 = ((1-eps) s_bh -
/// s_matter)/2, where the tracked correlation has fully accumulated; past it
/// the bound holds the late-time value (1-eps) s_bh - s_matter.
inline double theorem2_required(const TheoremParams& p, double r) {
    const double r1 = std::max(0.0, ((1.0 - p.epsilon) * p.s_bh - p.s_matter) / 2.0);
    return analytic_mutual_information(p.evaporation(std::min(r, r1)));
}

} // namespace detail

/// Theorem 2 at radiated amount r: locality puts S(R':R) below S(N:R), while a
/// non-exotic atmosphere caps S(N:R) at eta S_BH. margin < 0 flags the clash;
/// at the end of the sweep it reduces to 1 - s_matter/s_bh <= epsilon + eta.
inline ParadoxReport theorem2_report(const TheoremParams& p, double r) {
    p.validate();
    (void)p.evaporation(r);
    const double required = detail::theorem2_required(p, r);
    const double ceiling = p.eta * p.s_bh;
    ParadoxReport rep;
    rep.theorem = p.s_matter > 0.0 ? Theorem::t2_matter : Theorem::t2;
    rep.r = r;
    rep.lhs = ceiling;
    rep.rhs = required;
    rep.margin = ceiling - required;
    rep.contradiction = rep.margin < 0.0;
    if (rep.contradiction) rep.assumptions = {"2.b", "2.c", "2.a"};
    if ((1.0 - p.epsilon) * p.s_bh - p.s_matter <= 0.0) {
        rep.note = "extreme-case infallen matter: tracked correlation bound is vacuous";
    }
    return rep;
}

/// Generalized theorem 1 pinned at the initial Page time: a cool interior
/// needs log|B| >> (s_bh + s_matter)/2, while assumption 1.c puts log|B| at
/// exactly that value. A log_dim_b override far from the 1.c prediction
/// counts as rejecting 1.c, which dissolves the contradiction.
inline ParadoxReport theorem1_matter_report(const TheoremParams& p) {
    p.validate();
    const double initial_pt = (p.s_bh - p.s_matter) / 2.0;
    const double prediction_1c = p.s_bh - initial_pt; // remaining BH entropy at the initial PT
    const double required = 0.5 * (p.s_bh + p.s_matter);
    const double capacity = p.log_dim_b.value_or(prediction_1c);
    const bool holds_1c = std::abs(capacity - prediction_1c) <= p.theta * prediction_1c;
    const bool dominates = capacity > 0.0 && required / capacity <= p.theta;
    ParadoxReport rep;
    rep.theorem = Theorem::t1_matter;
    rep.r = initial_pt;
    rep.lhs = capacity;
    rep.rhs = required;
    rep.margin = capacity - required;
    rep.contradiction = holds_1c && !dominates;
    if (rep.contradiction) {
        rep.assumptions = {"1.b(ii)", "1.c", "1.a"};
    } else if (!holds_1c) {
        rep.assumptions = {"1.c"};
        rep.note = "log_dim_b override rejects assumption 1.c";
    }
    return rep;
}

/// Holographic variant of theorem 1 (no assumption 1.c): the minimal area
/// holding the interior entanglement satisfies (1/4) A_min = (1/2) S(B:R), and
/// free fall demands it sit well within the horizon, log|R'| >> (1/4) A_min.
/// Contradiction whenever the theta-scored dominance fails.
inline ParadoxReport holographic_variant(const TheoremParams& p, double r) {
    p.validate();
    const auto ev = p.evaporation(r);
    const double quarter_a_min = 0.5 * analytic_mutual_information(ev);
    const double remaining = p.s_bh - r;
    ParadoxReport rep;
    rep.theorem = Theorem::t1_holographic;
    rep.r = r;
    rep.lhs = remaining;
    rep.rhs = quarter_a_min;
    rep.margin = remaining - quarter_a_min;
    const bool dominates =
        quarter_a_min <= 0.0 || (remaining > 0.0 && quarter_a_min / remaining <= p.theta);
    rep.contradiction = !dominates;
    if (rep.contradiction) rep.assumptions = {"1.b(ii)", "1.b(i)", "1.a"};
    return rep;
}

/// Minimal onset argument at the Page time: the radiation is then maximally
/// entangled with (B,N), (1/2) S(B,N:R) = (1/2) S_BH; the atmosphere may hold
/// at most the 't Hooft ceiling of it, so nearly the full half must sit inside
/// a half-capacity interior. Saturation within theta flags the contradiction.
inline ParadoxReport pagetime_minimal_report(double s_bh, double mu, double theta = 0.01,
                                             bool stretched_horizon_allowance = false) {
    const AtmosphereParams atm(mu, s_bh, stretched_horizon_allowance);
    if (!(theta > 0.0) || theta >= 1.0) throw ArgumentError("pagetime_minimal: theta outside (0,1)");
    const double capacity = 0.5 * s_bh;
    const double ceiling = atmosphere_ceiling(atm);
    const double required = capacity - ceiling;
    ParadoxReport rep;
    rep.theorem = Theorem::pagetime_minimal;
    rep.r = 0.5 * s_bh;
    rep.lhs = capacity;
    rep.rhs = required;
    rep.margin = capacity - required;
    rep.contradiction = required >= (1.0 - theta) * capacity;
    if (rep.contradiction) {
        rep.assumptions = {"1.b(ii)", "1.c", "1.b(i)", "1.a"};
    } else if (required <= 0.0) {
        rep.note = "outside large-black-hole regime: atmosphere ceiling exceeds the interior half";
    }
    return rep;
}

struct SweepResult {
    Theorem theorem;
    std::vector<ParadoxReport> points;
    double grid_step = 0.0;
    std::optional<double> onset_r;            // first contradictory grid point
    std::optional<double> predicted_onset_r;  // analytic prediction
    bool onset_matches_prediction = true;
};

namespace detail {

inline std::optional<double> predicted_onset(const TheoremParams& p, Theorem theorem) {
    const double plateau_half = (p.s_bh - p.s_matter) / 2.0;
    switch (theorem) {
        case Theorem::t1:
        case Theorem::t1_matter: {
            if (!p.log_dim_b) return (p.s_bh + p.s_matter) / 2.0; // final Page time
            const double L = *p.log_dim_b;
            if (L <= 0.0) return 0.0;
            if (L <= plateau_half) return L;
            return std::nullopt;
        }
        case Theorem::t2:
        case Theorem::t2_matter: {
            const double cap = (1.0 - p.epsilon) * p.s_bh - p.s_matter;
            if (cap <= p.eta * p.s_bh) return std::nullopt;
            return p.eta * p.s_bh / 2.0;
        }
        case Theorem::t1_holographic:
            return p.theta * p.s_bh / (1.0 + p.theta);
        default:
            return std::nullopt;
    }
}

} // namespace detail

/// Evaluates the chosen theorem on a uniform grid of `steps` intervals from
/// r = 0 to (1 - epsilon/2) s_bh, reports the first contradictory grid point,
/// and checks it against the analytic onset prediction.
inline SweepResult evaporation_sweep(const TheoremParams& p, Theorem theorem, int steps) {
    p.validate();
    if (steps < 2) throw ArgumentError("evaporation_sweep: steps must be >= 2");
    const double r_end = (1.0 - p.epsilon / 2.0) * p.s_bh;
    SweepResult sweep;
    sweep.theorem = theorem;
    sweep.grid_step = r_end / static_cast<double>(steps);
    sweep.points.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double r = r_end * static_cast<double>(i) / static_cast<double>(steps);
        ParadoxReport rep;
        switch (theorem) {
            case Theorem::t1:
            case Theorem::t1_matter:
                rep = theorem1_report(p, r);
                break;
            case Theorem::t2:
            case Theorem::t2_matter:
                rep = theorem2_report(p, r);
                break;
            case Theorem::t1_holographic:
                rep = holographic_variant(p, r);
                break;
            default:
                throw ArgumentError("evaporation_sweep: theorem '" + theorem_name(theorem) +
                                    "' is a single-point report, not a sweep");
        }
        if (rep.contradiction && !sweep.onset_r) sweep.onset_r = r;
        sweep.points.push_back(std::move(rep));
    }
    sweep.predicted_onset_r = detail::predicted_onset(p, theorem);
    if (sweep.predicted_onset_r && sweep.onset_r) {
        const double slack = 1e-9 * std::max(1.0, p.s_bh);
        sweep.onset_matches_prediction =
            (*sweep.onset_r >= *sweep.predicted_onset_r - slack) &&
            (*sweep.onset_r <= *sweep.predicted_onset_r + sweep.grid_step + slack);
    } else {
        sweep.onset_matches_prediction =
            sweep.predicted_onset_r.has_value() == sweep.onset_r.has_value() ||
            (sweep.predicted_onset_r && *sweep.predicted_onset_r > r_end);
    }
    return sweep;
}

} // namespace evaplab
