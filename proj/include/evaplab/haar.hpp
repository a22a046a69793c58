#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "evaplab/capacity.hpp"
#include "evaplab/rng.hpp"
#include "evaplab/states.hpp"

namespace evaplab {

namespace detail {

inline CMatrix ginibre(std::size_t rows, std::size_t cols, RandomStream& rng) {
    CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        for (Eigen::Index i = 0; i < g.rows(); ++i) {
            g(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    return g;
}

/// QR of a Ginibre matrix with the R-diagonal phases absorbed into Q; the
/// column set is then exactly Haar-distributed (an isometry for cols < rows).
inline CMatrix haar_isometry(std::size_t rows, std::size_t cols, RandomStream& rng) {
    const CMatrix g = ginibre(rows, cols, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(static_cast<Eigen::Index>(rows),
                                                      static_cast<Eigen::Index>(cols));
    const CMatrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

} // namespace detail

/// Haar-uniform pure state on the register; deterministic per seed.
inline PureState haar_random_pure(const TensorRegister& reg, std::uint64_t seed) {
    check_capacity(reg.total_dim(), "haar_random_pure");
    if (reg.total_dim() < 2) {
        throw ArgumentError("haar_random_pure: total dim must be at least 2");
    }
    RandomStream rng(derive_seed(seed, 0x9a4d));
    CVector v(static_cast<Eigen::Index>(reg.total_dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
    v /= v.norm();
    return PureState(reg, std::move(v));
}

/// Haar-distributed unitary of the given dimension (Ginibre + QR with phase
/// normalization of the triangular factor's diagonal); deterministic per seed.
inline Unitary haar_random_unitary(std::size_t dim, std::uint64_t seed) {
    check_capacity(dim, "haar_random_unitary");
    RandomStream rng(derive_seed(seed, 0x51c7));
    return Unitary::from_matrix(detail::haar_isometry(dim, dim, rng));
}

/// Haar-random isometry from `cols` to `rows` dimensions (cols <= rows),
/// i.e. `cols` orthonormal columns of a Haar unitary.
inline CMatrix haar_random_isometry(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    check_capacity(rows, "haar_random_isometry");
    if (cols > rows) throw ArgumentError("haar_random_isometry: cols > rows");
    RandomStream rng(derive_seed(seed, 0x15a3));
    return detail::haar_isometry(rows, cols, rng);
}

} // namespace evaplab
