#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <string>
#include <utility>

#include "evaplab/capacity.hpp"
#include "evaplab/errors.hpp"
#include "evaplab/register.hpp"

namespace evaplab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

/// Pure state over a labeled register; unit norm enforced at construction.
struct PureState {
    TensorRegister reg;
    CVector amplitudes;

    PureState(TensorRegister r, CVector amps) : reg(std::move(r)), amplitudes(std::move(amps)) {
        check_capacity(reg.total_dim(), "PureState");
        if (static_cast<std::size_t>(amplitudes.size()) != reg.total_dim()) {
            throw ArgumentError("PureState: amplitude length " + std::to_string(amplitudes.size()) +
                                " != register dim " + std::to_string(reg.total_dim()));
        }
        const double n2 = amplitudes.squaredNorm();
        if (std::abs(n2 - 1.0) > kNormTol) {
            throw ArgumentError("PureState: squared norm " + std::to_string(n2) + " is not 1");
        }
    }

    /// Computational basis state |index> on the register.
    static PureState basis(TensorRegister r, std::size_t index) {
        CVector v = CVector::Zero(static_cast<Eigen::Index>(r.total_dim()));
        v(static_cast<Eigen::Index>(index)) = 1.0;
        return PureState(std::move(r), std::move(v));
    }
};

/// Reduced state; Hermiticity and unit trace checked at construction, spectrum
/// checked where it is actually diagonalized.
struct DensityMatrix {
    TensorRegister reg;
    CMatrix matrix;

    DensityMatrix(TensorRegister r, CMatrix m) : reg(std::move(r)), matrix(std::move(m)) {
        check_capacity(reg.total_dim(), "DensityMatrix");
        const auto n = static_cast<Eigen::Index>(reg.total_dim());
        if (matrix.rows() != n || matrix.cols() != n) {
            throw ArgumentError("DensityMatrix: shape does not match register");
        }
        const double herm_dev = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
        if (herm_dev > kHermitianTol) {
            throw NumericalError("DensityMatrix: Hermiticity deviation " + std::to_string(herm_dev));
        }
        const double tr_dev = std::abs(matrix.trace() - Complex(1.0, 0.0));
        if (tr_dev > kTraceTol) {
            throw NumericalError("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
        }
    }
};

/// Unitary over an input register; `out` describes the output factorization
/// when a process regroups its wires (defaults to the input register).
struct Unitary {
    TensorRegister reg;
    TensorRegister out;
    CMatrix matrix;

    Unitary(TensorRegister r, CMatrix m) : Unitary(r, r, std::move(m)) {}

    Unitary(TensorRegister r, TensorRegister out_reg, CMatrix m)
        : reg(std::move(r)), out(std::move(out_reg)), matrix(std::move(m)) {
        const auto n = static_cast<Eigen::Index>(reg.total_dim());
        if (out.total_dim() != reg.total_dim()) {
            throw ArgumentError("Unitary: output register dim != input register dim");
        }
        if (matrix.rows() != n || matrix.cols() != n) {
            throw ArgumentError("Unitary: matrix shape does not match register");
        }
        const double dev =
            (matrix.adjoint() * matrix - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
        if (dev > kUnitaryTol) {
            throw NumericalError("Unitary: U^dag U deviates from identity by " + std::to_string(dev));
        }
    }

    std::size_t dim() const { return reg.total_dim(); }

    static Unitary identity(TensorRegister r) {
        const auto n = static_cast<Eigen::Index>(r.total_dim());
        return Unitary(std::move(r), CMatrix::Identity(n, n));
    }

    /// Anonymous single-factor register around a bare matrix.
    static Unitary from_matrix(CMatrix m, const std::string& label = "u") {
        const auto n = static_cast<std::size_t>(m.rows());
        return Unitary(TensorRegister({{label, n}}), std::move(m));
    }
};

} // namespace evaplab
