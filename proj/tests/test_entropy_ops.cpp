#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "evaplab/entropy.hpp"
#include "evaplab/haar.hpp"
#include "evaplab/ops.hpp"

using namespace evaplab;
using std::numbers::ln2;

namespace {

PureState bell_pair(const std::string& a, const std::string& b) {
    const TensorRegister reg = TensorRegister::qubits({a, b});
    CVector v = CVector::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = 1.0 / std::sqrt(2.0);
    return PureState(reg, v);
}

} // namespace

TEST_CASE("partial trace of a product state is pure") {
    const TensorRegister reg = TensorRegister::qubits({"a", "b"});
    const auto s = PureState::basis(reg, 1); // |0>|1>
    const auto rho = partial_trace(s, {"a"});
    CHECK(std::abs(rho.matrix(0, 0) - Complex(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(rho.matrix(1, 1)) < 1e-14);
    CHECK_THROWS_AS(partial_trace(s, {"zz"}), ArgumentError);
}

TEST_CASE("bell state reduces to the maximally mixed qubit") {
    const auto bell = bell_pair("a", "b");
    for (const char* keep : {"a", "b"}) {
        const auto rho = partial_trace(bell, {keep});
        CHECK(von_neumann_entropy(rho) == Catch::Approx(ln2).margin(1e-10));
    }
}

TEST_CASE("purity complement: both sides of a cut have equal entropy") {
    const TensorRegister reg = TensorRegister::qubits({"q1", "q2", "q3"});
    const auto s = haar_random_pure(reg, 11);
    const double s1 = von_neumann_entropy(partial_trace(s, {"q1"}));
    const double s23 = von_neumann_entropy(partial_trace(s, {"q2", "q3"}));
    CHECK(s1 == Catch::Approx(s23).margin(1e-9));
}

TEST_CASE("partial trace of a density matrix matches the pure-state path") {
    const TensorRegister reg = TensorRegister::qubits({"a", "b", "c"});
    const auto s = haar_random_pure(reg, 21);
    const auto rho_abc = partial_trace(s, {"a", "b", "c"});
    const auto via_dm = partial_trace(rho_abc, {"b"});
    const auto direct = partial_trace(s, {"b"});
    CHECK((via_dm.matrix - direct.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("von Neumann entropy on pinned spectra") {
    const TensorRegister reg({{"x", 3}});
    CMatrix pure = CMatrix::Zero(3, 3);
    pure(0, 0) = 1.0;
    CHECK(von_neumann_entropy(DensityMatrix(reg, pure)) == Catch::Approx(0.0).margin(1e-10));

    const CMatrix mixed = CMatrix::Identity(3, 3) / 3.0;
    CHECK(von_neumann_entropy(DensityMatrix(reg, mixed)) ==
          Catch::Approx(std::log(3.0)).margin(1e-10));

    CMatrix diag = CMatrix::Zero(3, 3);
    diag(0, 0) = 0.5;
    diag(1, 1) = 0.25;
    diag(2, 2) = 0.25;
    CHECK(von_neumann_entropy(DensityMatrix(reg, diag)) ==
          Catch::Approx(1.0397207708399179).margin(1e-12));
}

TEST_CASE("entropy rejects spectra that are negative beyond tolerance") {
    const TensorRegister reg({{"x", 2}});
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = 1.001;
    m(1, 1) = -0.001;
    CHECK_THROWS_AS(von_neumann_entropy(DensityMatrix(reg, m)), NumericalError);
}

TEST_CASE("mutual information basics") {
    const TensorRegister reg = TensorRegister::qubits({"a", "b"});
    const auto product = PureState::basis(reg, 2);
    CHECK(mutual_information(product, {"a"}, {"b"}) == Catch::Approx(0.0).margin(1e-9));

    const auto bell = bell_pair("a", "b");
    CHECK(mutual_information(bell, {"a"}, {"b"}) == Catch::Approx(2.0 * ln2).margin(1e-9));
    CHECK_THROWS_AS(mutual_information(bell, {"a"}, {"a"}), ArgumentError);
}

TEST_CASE("pure-state additivity S(B,N:R) = S(B:R) + S(N:R)") {
    // 4 qubits: B, N, and a two-qubit radiation factor (r0, r1).
    const TensorRegister reg = TensorRegister::qubits({"B", "N", "r0", "r1"});
    for (std::uint64_t seed : {3ULL, 14ULL, 159ULL}) {
        const auto s = haar_random_pure(reg, seed);
        const double joint = mutual_information(s, {"B", "N"}, {"r0", "r1"});
        const double split = mutual_information(s, {"B"}, {"r0", "r1"}) +
                             mutual_information(s, {"N"}, {"r0", "r1"});
        CHECK(joint == Catch::Approx(split).margin(1e-9));
    }
}

TEST_CASE("ssa margin on pinned states") {
    const TensorRegister reg = TensorRegister::qubits({"w", "x", "y"});
    const auto product = PureState::basis(reg, 0);
    CHECK(ssa_margin(product, {"w"}, {"x"}, {"y"}) == Catch::Approx(0.0).margin(1e-9));

    // W maximally entangled with Y, X uncorrelated: margin = 2 ln dim(W).
    const auto bell = bell_pair("w", "y");
    auto with_x = insert_basis_factor(bell, 1, {"x", 2}, 0);
    CHECK(ssa_margin(with_x, {"w"}, {"x"}, {"y"}) == Catch::Approx(2.0 * ln2).margin(1e-9));
}

TEST_CASE("ssa margin is non-negative over haar samples") {
    const TensorRegister reg = TensorRegister::qubits({"w", "x", "y", "z"});
    double min_margin = 1e9;
    for (int t = 0; t < 1000; ++t) {
        const auto s = haar_random_pure(reg, derive_seed(31337, t));
        min_margin = std::min(min_margin, ssa_margin(s, {"w"}, {"x"}, {"y"}));
    }
    CHECK(min_margin >= -1e-9);
}

TEST_CASE("apply_unitary identity and swap") {
    const TensorRegister reg = TensorRegister::qubits({"a", "b"});
    const auto s01 = PureState::basis(reg, 1);
    const auto id_out = apply_unitary(s01, Unitary::identity(TensorRegister({{"u", 4}})), {"a", "b"});
    CHECK((id_out.amplitudes - s01.amplitudes).cwiseAbs().maxCoeff() < 1e-15);

    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = swap(3, 3) = 1.0;
    swap(1, 2) = swap(2, 1) = 1.0;
    const auto swapped = apply_unitary(s01, Unitary::from_matrix(swap), {"a", "b"});
    CHECK(std::abs(swapped.amplitudes(2) - Complex(1.0, 0.0)) < 1e-15); // |10>

    CHECK_THROWS_AS(apply_unitary(s01, Unitary::from_matrix(swap), {"a"}), ArgumentError);
}

TEST_CASE("unitary on (B,N) leaves S(B,N:R) invariant") {
    const TensorRegister reg = TensorRegister::qubits({"B", "N", "R"});
    for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
        const auto s = haar_random_pure(reg, seed);
        const double before = mutual_information(s, {"B", "N"}, {"R"});
        const auto u = haar_random_unitary(4, seed + 100);
        const auto evolved = apply_unitary(s, u, {"B", "N"});
        CHECK(std::abs(evolved.amplitudes.squaredNorm() - 1.0) < 1e-12);
        CHECK(mutual_information(evolved, {"B", "N"}, {"R"}) ==
              Catch::Approx(before).margin(1e-9));
    }
}

TEST_CASE("mutual information is invariant under local unitaries") {
    const TensorRegister reg = TensorRegister::qubits({"x0", "x1", "y0", "s"});
    const auto st = haar_random_pure(reg, 404);
    const double base = mutual_information(st, {"x0", "x1"}, {"y0"});
    const auto ux = haar_random_unitary(4, 405);
    CHECK(mutual_information(apply_unitary(st, ux, {"x0", "x1"}), {"x0", "x1"}, {"y0"}) ==
          Catch::Approx(base).margin(1e-9));
    const auto uy = haar_random_unitary(2, 406);
    CHECK(mutual_information(apply_unitary(st, uy, {"y0"}), {"x0", "x1"}, {"y0"}) ==
          Catch::Approx(base).margin(1e-9));
    const auto us = haar_random_unitary(2, 407);
    CHECK(mutual_information(apply_unitary(st, us, {"s"}), {"x0", "x1"}, {"y0"}) ==
          Catch::Approx(base).margin(1e-9));
}

TEST_CASE("apply_unitary respects target ordering") {
    // CNOT with control a, target b versus control b, target a.
    const TensorRegister reg = TensorRegister::qubits({"a", "b"});
    CMatrix cnot = CMatrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = 1.0;
    cnot(2, 3) = cnot(3, 2) = 1.0;
    const auto u = Unitary::from_matrix(cnot);
    const auto s10 = PureState::basis(reg, 2); // a=1, b=0
    const auto fwd = apply_unitary(s10, u, {"a", "b"});
    CHECK(std::abs(fwd.amplitudes(3) - Complex(1.0, 0.0)) < 1e-15); // -> |11>
    const auto rev = apply_unitary(s10, u, {"b", "a"});
    CHECK(std::abs(rev.amplitudes(2) - Complex(1.0, 0.0)) < 1e-15); // control b=0: unchanged
}
