#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "evaplab/errors.hpp"

namespace evaplab {

enum class Boundary { open, periodic };

/// Chain of coupled oscillators, H = sum p^2/2m + (m w0^2/2) x^2
/// + (k/2) sum (x_i - x_{i+1})^2. Open chains have fixed walls at both ends,
/// so their dynamical matrix is positive definite even at w0 = 0; periodic
/// chains keep a zero mode unless the self-frequency regulates it.
struct HarmonicChain {
    int n_sites;
    double mass = 1.0;
    double self_freq = 1.0; // IR regulator
    double coupling = 1.0;
    Boundary boundary = Boundary::open;

    HarmonicChain(int n, double m = 1.0, double w0 = 1.0, double k = 1.0,
                  Boundary b = Boundary::open)
        : n_sites(n), mass(m), self_freq(w0), coupling(k), boundary(b) {
        if (n_sites < 2) throw ArgumentError("HarmonicChain: need at least 2 sites");
        if (!(mass > 0.0)) throw ArgumentError("HarmonicChain: mass must be > 0");
        if (self_freq < 0.0) throw ArgumentError("HarmonicChain: self_freq must be >= 0");
        if (!(coupling >= 0.0)) throw ArgumentError("HarmonicChain: coupling must be >= 0");
    }

    /// Potential matrix V with H = p^T p / 2m + x^T V x / 2.
    Eigen::MatrixXd potential_matrix() const {
        const int n = n_sites;
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
        const double diag = mass * self_freq * self_freq + 2.0 * coupling;
        for (int i = 0; i < n; ++i) {
            v(i, i) = diag;
            if (i + 1 < n) {
                v(i, i + 1) = -coupling;
                v(i + 1, i) = -coupling;
            }
        }
        if (boundary == Boundary::periodic) {
            v(0, n - 1) += -coupling;
            v(n - 1, 0) += -coupling;
        }
        return v;
    }
};

/// Ground-state covariance of the chain, split into position and momentum
/// blocks (the vacuum has no x-p cross correlations).
struct LatticeCovariance {
    HarmonicChain chain;
    Eigen::MatrixXd position_block;
    Eigen::MatrixXd momentum_block;
};

/// Exact vacuum covariance: X = (mV)^{-1/2}/2, P = (mV)^{1/2}/2 over the
/// normal modes of the dynamical matrix.
inline LatticeCovariance ground_state_covariance(const HarmonicChain& chain) {
    const Eigen::MatrixXd mv = chain.mass * chain.potential_matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mv);
    const auto& lam = es.eigenvalues();
    const double floor = 1e-12 * std::max(1.0, lam.cwiseAbs().maxCoeff());
    if (lam.minCoeff() <= floor) {
        throw NumericalError(
            "ground_state_covariance: dynamical matrix is singular (zero mode); "
            "set self_freq > 0 to regulate the chain");
    }
    Eigen::VectorXd inv_sqrt(lam.size()), sqrt_(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        sqrt_(i) = std::sqrt(lam(i));
        inv_sqrt(i) = 1.0 / sqrt_(i);
    }
    const Eigen::MatrixXd& q = es.eigenvectors();
    LatticeCovariance cov{chain, 0.5 * q * inv_sqrt.asDiagonal() * q.transpose(),
                          0.5 * q * sqrt_.asDiagonal() * q.transpose()};
    return cov;
}

namespace detail {

inline void check_sites(const LatticeCovariance& cov, const std::vector<int>& sites) {
    if (sites.empty()) throw ArgumentError("block: empty site set");
    for (int s : sites) {
        if (s < 0 || s >= cov.chain.n_sites) {
            throw ArgumentError("block: site " + std::to_string(s) + " out of range");
        }
    }
}

inline Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, const std::vector<int>& sites) {
    Eigen::MatrixXd out(sites.size(), sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = 0; j < sites.size(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                m(sites[i], sites[j]);
        }
    }
    return out;
}

/// Symplectic eigenvalues of the reduced covariance: sqrt of the spectrum of
/// X_A^{1/2} P_A X_A^{1/2}.
inline Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& xa,
                                              const Eigen::MatrixXd& pa) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ex(xa);
    const Eigen::VectorXd lx = ex.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd xs = ex.eigenvectors() * lx.asDiagonal() * ex.eigenvectors().transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ec(xs * pa * xs);
    return ec.eigenvalues().cwiseMax(0.0).cwiseSqrt();
}

} // namespace detail

inline constexpr double kUncertaintyTol = 1e-10;

/// Entanglement entropy of the sites with the rest of the chain, in qunats:
/// S = sum (nu + 1/2) ln(nu + 1/2) - (nu - 1/2) ln(nu - 1/2).
inline double block_entropy(const LatticeCovariance& cov, const std::vector<int>& sites) {
    detail::check_sites(cov, sites);
    const auto nu = detail::symplectic_eigenvalues(detail::submatrix(cov.position_block, sites),
                                                   detail::submatrix(cov.momentum_block, sites));
    double s = 0.0;
    for (Eigen::Index i = 0; i < nu.size(); ++i) {
        const double v = nu(i);
        if (v < 0.5 - kUncertaintyTol) {
            throw NumericalError("block_entropy: symplectic eigenvalue " + std::to_string(v) +
                                 " violates the uncertainty bound 1/2");
        }
        const double plus = v + 0.5;
        const double minus = v - 0.5;
        s += plus * std::log(plus);
        if (minus > 0.0) s -= minus * std::log(minus);
    }
    return std::max(s, 0.0);
}

inline double cross_block_mutual_information(const LatticeCovariance& cov,
                                             const std::vector<int>& block_a,
                                             const std::vector<int>& block_b) {
    detail::check_sites(cov, block_a);
    detail::check_sites(cov, block_b);
    for (int a : block_a) {
        for (int b : block_b) {
            if (a == b) throw ArgumentError("cross_block_mutual_information: blocks overlap");
        }
    }
    std::vector<int> joint = block_a;
    joint.insert(joint.end(), block_b.begin(), block_b.end());
    std::sort(joint.begin(), joint.end());
    return block_entropy(cov, block_a) + block_entropy(cov, block_b) - block_entropy(cov, joint);
}

struct SeparationPoint {
    int d;
    double mutual_information;
};

/// Mutual information between two size-`block_size` blocks separated by d
/// traced-out intermediary sites, for d = 0..d_max, blocks centered on the
/// chain.
inline std::vector<SeparationPoint> entanglement_vs_separation(const HarmonicChain& chain,
                                                               int block_size, int d_max) {
    if (block_size < 1) throw ArgumentError("entanglement_vs_separation: block_size must be >= 1");
    if (d_max < 0) throw ArgumentError("entanglement_vs_separation: d_max must be >= 0");
    if (2 * block_size + d_max > chain.n_sites) {
        throw ArgumentError("entanglement_vs_separation: 2*block_size + d_max exceeds the chain");
    }
    const auto cov = ground_state_covariance(chain);
    std::vector<SeparationPoint> out;
    out.reserve(static_cast<std::size_t>(d_max) + 1);
    for (int d = 0; d <= d_max; ++d) {
        const int span = 2 * block_size + d;
        const int start = (chain.n_sites - span) / 2;
        std::vector<int> a, b;
        for (int i = 0; i < block_size; ++i) {
            a.push_back(start + i);
            b.push_back(start + block_size + d + i);
        }
        out.push_back({d, cross_block_mutual_information(cov, a, b)});
    }
    return out;
}

struct DecayFit {
    double rate;       // per-site decay of ln(mi)
    double r_squared;
    double floor;
    int points_used;
};

/// Least-squares fit of ln(mi) against d over the points above the numerical
/// floor; `rate` is the exponential suppression per intermediary site.
inline DecayFit fit_decay(const std::vector<SeparationPoint>& series, double floor = 1e-12) {
    std::vector<double> ds, ls;
    for (const auto& p : series) {
        if (p.mutual_information > floor) {
            ds.push_back(static_cast<double>(p.d));
            ls.push_back(std::log(p.mutual_information));
        }
    }
    const auto n = static_cast<double>(ds.size());
    if (ds.size() < 3) {
        throw InsufficientDataError("fit_decay: need at least 3 points above the floor, have " +
                                    std::to_string(ds.size()));
    }
    double sd = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        sd += ds[i];
        sl += ls[i];
    }
    const double md = sd / n, ml = sl / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        sxx += (ds[i] - md) * (ds[i] - md);
        sxy += (ds[i] - md) * (ls[i] - ml);
        syy += (ls[i] - ml) * (ls[i] - ml);
    }
    if (sxx == 0.0) throw InsufficientDataError("fit_decay: degenerate separation grid");
    const double slope = sxy / sxx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const double pred = ml + slope * (ds[i] - md);
        ss_res += (ls[i] - pred) * (ls[i] - pred);
    }
    const double r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return {-slope, r2, floor, static_cast<int>(ds.size())};
}

} // namespace evaplab
