#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "evaplab/ops.hpp"
#include "evaplab/states.hpp"

namespace evaplab {

inline constexpr double kEigenvalueFloor = 1e-12;   // below this an eigenvalue counts as 0
inline constexpr double kNegativeEigTol = 1e-10;    // more negative than this is an error

namespace detail {

inline double entropy_from_eigenvalues(const Eigen::VectorXd& eigs) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        double lam = eigs(i);
        if (lam < -kNegativeEigTol) {
            throw NumericalError("entropy: eigenvalue " + std::to_string(lam) +
                                 " below PSD tolerance");
        }
        if (lam < kEigenvalueFloor) continue; // 0 ln 0 := 0
        s -= lam * std::log(lam);
    }
    return std::max(s, 0.0);
}

} // namespace detail

/// Von Neumann entropy in qunats (natural log).
inline double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix, Eigen::EigenvaluesOnly);
    return detail::entropy_from_eigenvalues(es.eigenvalues());
}

/// Entropy of the reduced state on `labels`. For a globally pure state the
/// complement has the same entropy, so the smaller side is diagonalized.
inline double subsystem_entropy(const PureState& state, const std::vector<std::string>& labels) {
    const auto pos = detail::sorted_positions(state.reg, labels);
    std::size_t d_keep = 1;
    for (auto p : pos) d_keep *= state.reg.factor(p).dim;
    const std::size_t d_comp = state.reg.total_dim() / d_keep;
    if (d_comp < d_keep) {
        std::vector<std::string> comp;
        for (auto p : detail::complement_positions(state.reg, pos)) {
            comp.push_back(state.reg.factor(p).label);
        }
        if (comp.empty()) return 0.0; // whole register: pure
        return von_neumann_entropy(partial_trace(state, comp));
    }
    return von_neumann_entropy(partial_trace(state, labels));
}

inline double subsystem_entropy(const DensityMatrix& rho, const std::vector<std::string>& labels) {
    if (rho.reg.subset(labels).total_dim() == rho.reg.total_dim()) {
        return von_neumann_entropy(rho);
    }
    return von_neumann_entropy(partial_trace(rho, labels));
}

namespace detail {

inline std::vector<std::string> union_disjoint(const std::vector<std::string>& x,
                                               const std::vector<std::string>& y) {
    std::unordered_set<std::string> seen(x.begin(), x.end());
    for (const auto& l : y) {
        if (seen.count(l)) throw ArgumentError("label sets overlap at '" + l + "'");
    }
    std::vector<std::string> u = x;
    u.insert(u.end(), y.begin(), y.end());
    return u;
}

} // namespace detail

/// Quantum mutual information S(X:Y) = S(X) + S(Y) - S(X,Y), in qunats.
template <typename State>
inline double mutual_information(const State& state, const std::vector<std::string>& x,
                                 const std::vector<std::string>& y) {
    const auto xy = detail::union_disjoint(x, y);
    const double mi =
        subsystem_entropy(state, x) + subsystem_entropy(state, y) - subsystem_entropy(state, xy);
    return mi;
}

/// Strong-subadditivity margin S(W,X:Y) - S(X:Y); non-negative (up to solver
/// noise) for every physical state.
template <typename State>
inline double ssa_margin(const State& state, const std::vector<std::string>& w,
                         const std::vector<std::string>& x, const std::vector<std::string>& y) {
    const auto wx = detail::union_disjoint(w, x);
    detail::union_disjoint(wx, y); // validates pairwise disjointness
    return mutual_information(state, wx, y) - mutual_information(state, x, y);
}

/// Trace distance (1/2)||A - B||_1 between Hermitian matrices.
inline double trace_distance(const CMatrix& a, const CMatrix& b) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

/// Trace norm ||A||_1 (sum of singular values) of a general matrix.
inline double trace_norm(const CMatrix& a) {
    return a.jacobiSvd().singularValues().sum();
}

} // namespace evaplab
