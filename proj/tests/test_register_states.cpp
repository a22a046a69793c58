#include <catch_amalgamated.hpp>

#include "evaplab/capacity.hpp"
#include "evaplab/haar.hpp"
#include "evaplab/ops.hpp"
#include "evaplab/states.hpp"

using namespace evaplab;

TEST_CASE("register validates labels and dims") {
    const TensorRegister reg({{"B", 2}, {"N", 4}, {"R", 3}});
    CHECK(reg.total_dim() == 24);
    CHECK(reg.dim_of("N") == 4);
    CHECK(reg.contains("R"));
    CHECK_FALSE(reg.contains("X"));
    CHECK_THROWS_AS(TensorRegister({{"a", 2}, {"a", 2}}), ArgumentError);
    CHECK_THROWS_AS(TensorRegister({{"a", 0}}), ArgumentError);
    CHECK_THROWS_AS(reg.index_of("missing"), ArgumentError);
}

TEST_CASE("dim-1 padding factors are allowed") {
    const TensorRegister reg({{"a", 2}, {"pad", 1}});
    CHECK(reg.total_dim() == 2);
}

TEST_CASE("pure state requires unit norm and matching length") {
    const TensorRegister reg = TensorRegister::qubits({"q0"});
    CVector bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(PureState(reg, bad), ArgumentError);
    CVector wrong_len(3);
    wrong_len << 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(PureState(reg, wrong_len), ArgumentError);
    CHECK_NOTHROW(PureState::basis(reg, 1));
}

TEST_CASE("density matrix validates hermiticity and trace") {
    const TensorRegister reg({{"a", 2}});
    CMatrix m(2, 2);
    m << Complex(0.5, 0.0), Complex(0.0, 0.3), Complex(0.0, 0.3), Complex(0.5, 0.0);
    CHECK_THROWS_AS(DensityMatrix(reg, m), NumericalError); // not Hermitian
    CMatrix t = CMatrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix(reg, t), NumericalError); // trace 2
    CHECK_NOTHROW(DensityMatrix(reg, 0.5 * t));
}

TEST_CASE("unitary validates U^dag U") {
    CMatrix m(2, 2);
    m << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(Unitary::from_matrix(m), NumericalError);
    CHECK_NOTHROW(Unitary::identity(TensorRegister({{"a", 4}})));
}

TEST_CASE("capacity budget rejects oversized registers") {
    const std::size_t saved = capacity_limit();
    set_capacity_limit(16);
    const TensorRegister big({{"a", 32}});
    CHECK_THROWS_AS(haar_random_pure(big, 1), CapacityError);
    CHECK_THROWS_AS(haar_random_unitary(32, 1), CapacityError);
    set_capacity_limit(saved);
}

TEST_CASE("reshape keeps amplitudes and checks dims") {
    const TensorRegister reg({{"a", 2}, {"b", 2}, {"c", 3}});
    const auto s = PureState::basis(reg, 7);
    const auto r = reshape_block(s, "a", "b", {{"ab", 4}});
    CHECK(r.reg.size() == 2);
    CHECK(r.amplitudes == s.amplitudes);
    CHECK_THROWS_AS(reshape_block(s, "a", "b", {{"ab", 5}}), ArgumentError);
}

TEST_CASE("insert_basis_factor places the new wire correctly") {
    // |q0 q1> = |01> with a dim-3 factor in state 2 inserted between them.
    const TensorRegister reg = TensorRegister::qubits({"q0", "q1"});
    const auto s = PureState::basis(reg, 1);
    const auto t = insert_basis_factor(s, 1, {"m", 3}, 2);
    CHECK(t.reg.total_dim() == 12);
    // index = ((q0*3) + m)*2 + q1 = (0*3+2)*2 + 1 = 5
    CHECK(std::abs(t.amplitudes(5) - Complex(1.0, 0.0)) < 1e-15);
}
