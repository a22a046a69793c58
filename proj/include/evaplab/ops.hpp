#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "evaplab/register.hpp"
#include "evaplab/states.hpp"

namespace evaplab {

namespace detail {

inline std::vector<std::size_t> sorted_positions(const TensorRegister& reg,
                                                 const std::vector<std::string>& labels) {
    if (labels.empty()) throw ArgumentError("empty label set");
    auto pos = reg.positions(labels);
    std::sort(pos.begin(), pos.end());
    return pos;
}

} // namespace detail

/// Reduced density matrix on the kept factors (register order), traced over
/// the rest. Works directly on the amplitude vector; the global density
/// matrix is never materialized.
inline DensityMatrix partial_trace(const PureState& state, const std::vector<std::string>& keep) {
    const auto kept = detail::sorted_positions(state.reg, keep);
    const auto traced = detail::complement_positions(state.reg, kept);
    const auto offs_k = detail::axis_offsets(state.reg, kept);
    const auto offs_t = detail::axis_offsets(state.reg, traced);
    const auto dk = static_cast<Eigen::Index>(offs_k.size());

    CMatrix rho = CMatrix::Zero(dk, dk);
    for (const std::size_t ot : offs_t) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            const Complex ai = state.amplitudes(static_cast<Eigen::Index>(offs_k[i] + ot));
            if (ai == Complex(0.0, 0.0)) continue;
            for (Eigen::Index j = 0; j < dk; ++j) {
                rho(i, j) += ai * std::conj(state.amplitudes(static_cast<Eigen::Index>(offs_k[j] + ot)));
            }
        }
    }
    // Symmetrize away accumulation round-off before the ctor's Hermiticity check.
    rho = ((rho + rho.adjoint()) * 0.5).eval();
    return DensityMatrix(state.reg.subset(keep), std::move(rho));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho_in, const std::vector<std::string>& keep) {
    const auto kept = detail::sorted_positions(rho_in.reg, keep);
    const auto traced = detail::complement_positions(rho_in.reg, kept);
    const auto offs_k = detail::axis_offsets(rho_in.reg, kept);
    const auto offs_t = detail::axis_offsets(rho_in.reg, traced);
    const auto dk = static_cast<Eigen::Index>(offs_k.size());

    CMatrix rho = CMatrix::Zero(dk, dk);
    for (const std::size_t ot : offs_t) {
        for (Eigen::Index i = 0; i < dk; ++i) {
            for (Eigen::Index j = 0; j < dk; ++j) {
                rho(i, j) += rho_in.matrix(static_cast<Eigen::Index>(offs_k[i] + ot),
                                           static_cast<Eigen::Index>(offs_k[j] + ot));
            }
        }
    }
    rho = ((rho + rho.adjoint()) * 0.5).eval();
    return DensityMatrix(rho_in.reg.subset(keep), std::move(rho));
}

/// Applies `u` to the named target factors (in the order given, which fixes
/// how u's indices map onto the factors). Untouched factors are spectators.
inline PureState apply_unitary(const PureState& state, const Unitary& u,
                               const std::vector<std::string>& targets) {
    const auto pos = state.reg.positions(targets);
    std::size_t d_u = 1;
    for (auto p : pos) d_u *= state.reg.factor(p).dim;
    if (d_u != u.dim()) {
        throw ArgumentError("apply_unitary: target dim " + std::to_string(d_u) +
                            " != unitary dim " + std::to_string(u.dim()));
    }
    auto pos_sorted = pos;
    std::sort(pos_sorted.begin(), pos_sorted.end());
    const auto rest = detail::complement_positions(state.reg, pos_sorted);
    const auto offs_u = detail::axis_offsets(state.reg, pos); // order as given
    const auto offs_r = detail::axis_offsets(state.reg, rest);

    CVector out = CVector::Zero(state.amplitudes.size());
    CVector block(static_cast<Eigen::Index>(d_u));
    for (const std::size_t orr : offs_r) {
        for (std::size_t a = 0; a < d_u; ++a) {
            block(static_cast<Eigen::Index>(a)) =
                state.amplitudes(static_cast<Eigen::Index>(orr + offs_u[a]));
        }
        const CVector mixed = u.matrix * block;
        for (std::size_t a = 0; a < d_u; ++a) {
            out(static_cast<Eigen::Index>(orr + offs_u[a])) = mixed(static_cast<Eigen::Index>(a));
        }
    }
    return PureState(state.reg, std::move(out));
}

/// Re-reads a contiguous block of factors under a new factorization (pure
/// metadata; amplitudes untouched).
inline PureState reshape_block(const PureState& state, const std::string& first,
                               const std::string& last, const std::vector<Factor>& replacement) {
    return PureState(state.reg.reshaped(first, last, replacement), state.amplitudes);
}

/// Tensors in a fresh factor at the given register position, prepared in the
/// computational basis state `basis_index`.
inline PureState insert_basis_factor(const PureState& state, std::size_t position,
                                     const Factor& factor, std::size_t basis_index = 0) {
    if (position > state.reg.size()) throw ArgumentError("insert_basis_factor: position out of range");
    if (basis_index >= factor.dim) throw ArgumentError("insert_basis_factor: basis index out of range");
    auto factors = state.reg.factors();
    factors.insert(factors.begin() + static_cast<std::ptrdiff_t>(position), factor);
    TensorRegister new_reg(std::move(factors));
    check_capacity(new_reg.total_dim(), "insert_basis_factor");

    std::size_t inner = 1; // combined dim of the factors after the insertion point
    for (std::size_t i = position; i < state.reg.size(); ++i) inner *= state.reg.factor(i).dim;

    CVector out = CVector::Zero(static_cast<Eigen::Index>(new_reg.total_dim()));
    const auto n_old = static_cast<std::size_t>(state.amplitudes.size());
    for (std::size_t s = 0; s < n_old; ++s) {
        const std::size_t prefix = s / inner;
        const std::size_t suffix = s % inner;
        const std::size_t t = (prefix * factor.dim + basis_index) * inner + suffix;
        out(static_cast<Eigen::Index>(t)) = state.amplitudes(static_cast<Eigen::Index>(s));
    }
    return PureState(std::move(new_reg), std::move(out));
}

} // namespace evaplab
