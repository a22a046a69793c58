#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "evaplab/entropy.hpp"
#include "evaplab/haar.hpp"
#include "evaplab/ops.hpp"

namespace evaplab {

/// Scalar ledger of a unitarily and completely evaporating black hole:
/// initial Bekenstein-Hawking entropy, infallen-matter entropy, and the
/// amount radiated so far. All values in qunats.
struct EvaporationParams {
    double s_bh;
    double s_matter = 0.0;
    double r = 0.0;

    EvaporationParams(double s_bh_, double s_matter_ = 0.0, double r_ = 0.0)
        : s_bh(s_bh_), s_matter(s_matter_), r(r_) {
        if (!(s_bh > 0.0)) throw ArgumentError("EvaporationParams: s_bh must be > 0");
        if (s_matter < 0.0) throw ArgumentError("EvaporationParams: s_matter must be >= 0");
        if (s_matter > s_bh) {
            throw ArgumentError("EvaporationParams: s_matter > s_bh is outside the model");
        }
        if (r < 0.0 || r > s_bh) throw ArgumentError("EvaporationParams: r outside [0, s_bh]");
    }

    EvaporationParams at(double r_new) const { return {s_bh, s_matter, r_new}; }
};

struct CurvePoint {
    double r;    // qunats radiated
    double s_r;  // radiation entropy S(R)
    double mi;   // S(R':R)
};

struct McCurvePoint {
    double r;
    double s_r_mean;
    double s_r_stderr;
    double mi_mean;
    double mi_stderr;
};

/// Radiation-vs-remainder cuts where S(R':R) is maximal. Both collapse to
/// s_bh/2 when the infallen matter carries no entropy.
struct PageTimes {
    double initial;
    double final;
};

inline PageTimes page_times(const EvaporationParams& p) {
    return {(p.s_bh - p.s_matter) / 2.0, (p.s_bh + p.s_matter) / 2.0};
}

/// Generic radiation entropy S(R): one qunat per qunat radiated up to the
/// midpoint (s_bh + s_matter)/2, then back down to s_matter at r = s_bh.
inline double analytic_radiation_entropy(const EvaporationParams& p) {
    const double mid = (p.s_bh + p.s_matter) / 2.0;
    if (p.r <= mid) return p.r;
    return p.s_bh + p.s_matter - p.r;
}

/// Generic S(R':R) between radiation so far and all later radiation: rises at
/// two qunats per qunat, holds a plateau of s_bh - s_matter between the Page
/// times, then falls to zero at complete evaporation.
inline double analytic_mutual_information(const EvaporationParams& p) {
    const auto pt = page_times(p);
    if (p.r < pt.initial) return 2.0 * p.r;
    if (p.r <= pt.final) return p.s_bh - p.s_matter;
    return 2.0 * (p.s_bh - p.r);
}

/// Analytic curves sampled on a uniform r grid of `steps` intervals.
inline std::vector<CurvePoint> analytic_curve(const EvaporationParams& p, int steps = 200) {
    if (steps < 1) throw ArgumentError("analytic_curve: steps must be >= 1");
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double r = p.s_bh * static_cast<double>(i) / static_cast<double>(steps);
        const auto q = p.at(r);
        out.push_back({r, analytic_radiation_entropy(q), analytic_mutual_information(q)});
    }
    return out;
}

/// Haar-sampled evaporation of n_evap qubits, the first n_matter_ref of which
/// start maximally entangled with an external reference pair each (the
/// uniform-entanglement matter model). For every cut size the sample mean and
/// standard error of S(R) and S(R':R) are reported, with r in qunats.
inline std::vector<McCurvePoint> monte_carlo_curve(int n_evap_qubits, int n_matter_ref_qubits,
                                                   int trials, std::uint64_t seed) {
    if (n_evap_qubits < 1) throw ArgumentError("monte_carlo_curve: n_evap_qubits must be >= 1");
    if (n_matter_ref_qubits < 0 || n_matter_ref_qubits > n_evap_qubits) {
        throw ArgumentError("monte_carlo_curve: n_matter_ref_qubits outside [0, n_evap]");
    }
    if (trials < 1) throw ArgumentError("monte_carlo_curve: trials must be >= 1");
    const int n = n_evap_qubits;
    const int m = n_matter_ref_qubits;
    const std::size_t dim_evap = std::size_t{1} << n;
    const std::size_t dim_ref = std::size_t{1} << m;
    check_capacity(dim_evap * dim_ref, "monte_carlo_curve");

    std::vector<std::string> evap_labels;
    std::vector<Factor> factors;
    for (int q = 0; q < n; ++q) {
        evap_labels.push_back("e" + std::to_string(q));
        factors.push_back({evap_labels.back(), 2});
    }
    for (int q = 0; q < m; ++q) factors.push_back({"m" + std::to_string(q), 2});
    const TensorRegister reg(factors);

    const double ln2 = std::numbers::ln2;
    const double joint = m * ln2; // S(R,R') = entanglement with the matter reference, exact
    std::vector<double> sum_s(n + 1, 0.0), sum_s2(n + 1, 0.0);
    std::vector<double> sum_mi(n + 1, 0.0), sum_mi2(n + 1, 0.0);

    for (int t = 0; t < trials; ++t) {
        RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        // State = 2^{-m/2} sum_b iso(:,b) (x) |b>_ref with iso a Haar isometry
        // on the evaporating factor; for m = 0 this is a plain Haar vector.
        const CMatrix iso = detail::haar_isometry(dim_evap, dim_ref, rng);
        CVector amps = CVector::Zero(static_cast<Eigen::Index>(dim_evap * dim_ref));
        const double scale = 1.0 / std::sqrt(static_cast<double>(dim_ref));
        for (std::size_t b = 0; b < dim_ref; ++b) {
            for (std::size_t i = 0; i < dim_evap; ++i) {
                amps(static_cast<Eigen::Index>(i * dim_ref + b)) =
                    scale * iso(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b));
            }
        }
        const PureState state(reg, std::move(amps));

        std::vector<double> s_first(n + 1, 0.0);
        for (int k = 0; k <= n; ++k) {
            if (k == 0) {
                s_first[k] = 0.0;
            } else {
                std::vector<std::string> cut(evap_labels.begin(), evap_labels.begin() + k);
                s_first[k] = subsystem_entropy(state, cut);
            }
        }
        std::vector<double> s_last(n + 1, 0.0); // entropy of evap qubits k..n-1
        for (int k = 0; k <= n; ++k) {
            if (k == n) {
                s_last[k] = 0.0;
            } else {
                std::vector<std::string> rest(evap_labels.begin() + k, evap_labels.end());
                s_last[k] = subsystem_entropy(state, rest);
            }
        }
        for (int k = 0; k <= n; ++k) {
            const double s = s_first[k];
            const double mi = s_first[k] + s_last[k] - joint;
            sum_s[k] += s;
            sum_s2[k] += s * s;
            sum_mi[k] += mi;
            sum_mi2[k] += mi * mi;
        }
    }

    std::vector<McCurvePoint> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    const double T = static_cast<double>(trials);
    for (int k = 0; k <= n; ++k) {
        const double mean_s = sum_s[k] / T;
        const double mean_mi = sum_mi[k] / T;
        const double var_s = std::max(0.0, sum_s2[k] / T - mean_s * mean_s);
        const double var_mi = std::max(0.0, sum_mi2[k] / T - mean_mi * mean_mi);
        const double se_s = trials > 1 ? std::sqrt(var_s / (T - 1.0)) : 0.0;
        const double se_mi = trials > 1 ? std::sqrt(var_mi / (T - 1.0)) : 0.0;
        out.push_back({k * ln2, mean_s, se_s, mean_mi, se_mi});
    }
    return out;
}

inline std::vector<CurvePoint> to_curve_points(const std::vector<McCurvePoint>& mc) {
    std::vector<CurvePoint> out;
    out.reserve(mc.size());
    for (const auto& p : mc) out.push_back({p.r, p.s_r_mean, p.mi_mean});
    return out;
}

struct CurveDeviationRow {
    double r;
    double s_r_deviation;
    double mi_deviation;
};

struct CurveComparison {
    double max_s_r_deviation = 0.0;
    double max_mi_deviation = 0.0;
    std::vector<CurveDeviationRow> table;

    /// Headline statistic: the S(R) curve deviation.
    double max_abs_deviation() const { return max_s_r_deviation; }
};

/// Pointwise deviation between two curves on identical r grids.
inline CurveComparison compare_curves(const std::vector<CurvePoint>& a,
                                      const std::vector<CurvePoint>& b) {
    if (a.size() != b.size()) throw ArgumentError("compare_curves: grids differ in length");
    CurveComparison cmp;
    cmp.table.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].r - b[i].r) > 1e-9) {
            throw ArgumentError("compare_curves: r grids differ at index " + std::to_string(i));
        }
        const double ds = std::abs(a[i].s_r - b[i].s_r);
        const double dm = std::abs(a[i].mi - b[i].mi);
        cmp.table.push_back({a[i].r, ds, dm});
        cmp.max_s_r_deviation = std::max(cmp.max_s_r_deviation, ds);
        cmp.max_mi_deviation = std::max(cmp.max_mi_deviation, dm);
    }
    return cmp;
}

} // namespace evaplab
