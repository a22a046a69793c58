#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "evaplab/entropy.hpp"
#include "evaplab/haar.hpp"
#include "evaplab/ops.hpp"
#include "evaplab/page_curve.hpp"

namespace evaplab {

/// Wire dimensions of the horizon circuit. The exterior subprocess consumes
/// (N, I, anc) and produces (C, N', R'); the interior subprocess consumes
/// (B, C) and produces the interior output block B'.
struct NoCommDims {
    std::size_t dim_b = 2;
    std::size_t dim_n = 2;
    std::size_t dim_i = 1;    // infalling matter wire; 1 when absent
    std::size_t dim_anc = 1;  // exterior-side ancilla, prepared in |0>
    std::size_t dim_c = 2;
    std::size_t dim_n_out = 2;
    std::size_t dim_r_out = 2;

    std::size_t exterior_in() const { return dim_n * dim_i * dim_anc; }
    std::size_t exterior_out() const { return dim_c * dim_n_out * dim_r_out; }
    std::size_t interior_out() const { return dim_b * dim_c; }

    void validate() const {
        if (dim_b < 1 || dim_n < 1 || dim_i < 1 || dim_anc < 1 || dim_c < 1 || dim_n_out < 1 ||
            dim_r_out < 1) {
            throw ArgumentError("NoCommDims: dims must be positive");
        }
        if (exterior_in() != exterior_out()) {
            throw ArgumentError("NoCommDims: exterior wires mismatch, " +
                                std::to_string(exterior_in()) + " in vs " +
                                std::to_string(exterior_out()) + " out");
        }
    }
};

/// Horizon process assembled from the two subprocesses. The exterior unitary
/// runs first and emits the reverse-communication channel C, which the
/// interior unitary then absorbs; by construction the interior input B cannot
/// influence the exterior outputs (N', R').
struct NoCommCircuit {
    Unitary exterior; // (N, I, anc) -> (C, N', R')
    Unitary interior; // (B, C) -> B'
    NoCommDims dims;

    TensorRegister input_register() const {
        std::vector<Factor> fs{{"B", dims.dim_b}, {"N", dims.dim_n}};
        if (dims.dim_i > 1) fs.push_back({"I", dims.dim_i});
        if (dims.dim_anc > 1) fs.push_back({"anc", dims.dim_anc});
        return TensorRegister(std::move(fs));
    }

    TensorRegister output_register() const {
        return TensorRegister({{"B'", dims.interior_out()},
                               {"N'", dims.dim_n_out},
                               {"R'", dims.dim_r_out}});
    }

    /// Composed unitary (V x I)(I x W) on the input register, with the output
    /// register describing the regrouped wires (B', N', R').
    Unitary total() const {
        const auto db = static_cast<Eigen::Index>(dims.dim_b);
        const auto dext = static_cast<Eigen::Index>(dims.exterior_in());
        const auto dlate = static_cast<Eigen::Index>(dims.dim_n_out * dims.dim_r_out);
        CMatrix w_full = CMatrix::Zero(db * dext, db * dext);
        for (Eigen::Index b = 0; b < db; ++b) {
            w_full.block(b * dext, b * dext, dext, dext) = exterior.matrix;
        }
        const auto dint = static_cast<Eigen::Index>(dims.interior_out());
        CMatrix v_full = CMatrix::Zero(dint * dlate, dint * dlate);
        for (Eigen::Index i = 0; i < dint; ++i) {
            for (Eigen::Index j = 0; j < dint; ++j) {
                const Complex vij = interior.matrix(i, j);
                if (vij == Complex(0.0, 0.0)) continue;
                for (Eigen::Index k = 0; k < dlate; ++k) {
                    v_full(i * dlate + k, j * dlate + k) = vij;
                }
            }
        }
        return Unitary(input_register(), output_register(), v_full * w_full);
    }
};

/// Wires the two subprocesses into the non-signaling form: exterior first,
/// its channel C fed to the interior. Dimension mismatches are rejected.
inline NoCommCircuit build_nonsignaling(const Unitary& exterior, const Unitary& interior,
                                        const NoCommDims& dims) {
    dims.validate();
    if (exterior.dim() != dims.exterior_in()) {
        throw ArgumentError("build_nonsignaling: exterior unitary dim " +
                            std::to_string(exterior.dim()) + " != (N,I,anc) dim " +
                            std::to_string(dims.exterior_in()));
    }
    if (interior.dim() != dims.dim_b * dims.dim_c) {
        throw ArgumentError("build_nonsignaling: interior unitary dim " +
                            std::to_string(interior.dim()) + " != (B,C) dim " +
                            std::to_string(dims.dim_b * dims.dim_c));
    }
    return NoCommCircuit{exterior, interior, dims};
}

/// Runs the horizon circuit on an initial state over (B, N[, I], R); R is a
/// spectator and its reduced state is untouched. Returns the final state on
/// (B', N', R', R).
inline PureState simulate_fig3(const NoCommCircuit& circuit, const PureState& initial) {
    const auto& d = circuit.dims;
    for (const char* lbl : {"B", "N", "R"}) {
        if (!initial.reg.contains(lbl)) {
            throw ArgumentError(std::string("simulate_fig3: initial state lacks factor '") + lbl +
                                "'");
        }
    }
    if (initial.reg.dim_of("B") != d.dim_b || initial.reg.dim_of("N") != d.dim_n) {
        throw ArgumentError("simulate_fig3: initial factor dims do not match circuit");
    }
    if (d.dim_i > 1 && !initial.reg.contains("I")) {
        throw ArgumentError("simulate_fig3: circuit expects an infalling factor I");
    }

    PureState state = initial;
    if (d.dim_anc > 1) {
        const std::size_t pos = state.reg.index_of(d.dim_i > 1 ? "I" : "N") + 1;
        state = insert_basis_factor(state, pos, {"anc", d.dim_anc});
    }
    std::vector<std::string> exterior_targets{"N"};
    if (d.dim_i > 1) exterior_targets.push_back("I");
    if (d.dim_anc > 1) exterior_targets.push_back("anc");
    state = apply_unitary(state, circuit.exterior, exterior_targets);
    state = reshape_block(state, exterior_targets.front(), exterior_targets.back(),
                          {{"C", d.dim_c}, {"N'", d.dim_n_out}, {"R'", d.dim_r_out}});
    state = apply_unitary(state, circuit.interior, {"B", "C"});
    state = reshape_block(state, "B", "C", {{"B'", d.interior_out()}});
    return state;
}

enum class DetectMode { exact, sampled };

struct SignalingVerdict {
    bool signaling = false;
    double magnitude = 0.0;
    int probes = 0;
};

inline constexpr double kSignalingThreshold = 1e-8;

namespace detail {

/// Digit-extraction table: for each flat index of `reg`, the sub-index over
/// the factors at `pos` (in sorted register order).
inline std::vector<std::size_t> subindex_table(const TensorRegister& reg,
                                               const std::vector<std::size_t>& pos) {
    std::vector<std::size_t> table(reg.total_dim(), 0);
    std::size_t block = 1;
    for (auto p : pos) block *= reg.factor(p).dim;
    for (std::size_t s = 0; s < reg.total_dim(); ++s) {
        std::size_t sub = 0;
        for (auto p : pos) {
            const std::size_t digit = (s / reg.stride(p)) % reg.factor(p).dim;
            sub = sub * reg.factor(p).dim + digit;
        }
        table[s] = sub;
    }
    (void)block;
    return table;
}

} // namespace detail

/// Decides whether `u` lets the `input_a` factors signal the `output_b`
/// factors. Exact mode is a complete finite-dimensional decision procedure:
/// it prepares every matrix unit on A against a purified maximally mixed
/// complement, keeps the purifying references, and compares the reduced
/// outputs on (B', references); any dependence shows up either as a trace
/// distance between diagonal preparations or as off-diagonal leakage.
/// Sampled mode drives random product probes instead (cheaper, one-sided).
inline SignalingVerdict detect_signaling(const Unitary& u, const std::vector<std::string>& input_a,
                                         const std::vector<std::string>& output_b, int probes = 0,
                                         std::uint64_t seed = 0,
                                         DetectMode mode = DetectMode::exact) {
    const auto pos_a = detail::sorted_positions(u.reg, input_a);
    for (const auto& l : output_b) (void)u.out.index_of(l); // validate output labels
    const std::size_t d_tot = u.reg.total_dim();
    std::size_t d_a = 1;
    for (auto p : pos_a) d_a *= u.reg.factor(p).dim;
    const std::size_t d_rest = d_tot / d_a;

    const auto pos_rest = detail::complement_positions(u.reg, pos_a);
    const auto a_of = detail::subindex_table(u.reg, pos_a);
    const auto m_of = detail::subindex_table(u.reg, pos_rest);

    SignalingVerdict verdict;

    if (mode == DetectMode::exact) {
        check_capacity(d_tot * d_a * d_rest, "detect_signaling(exact)");
        // |Omega> = Phi(A, refA) (x) Phi(rest, ref), evolved through u on the
        // system half; the reduced state on (B', refA, ref) packages the
        // outputs for every matrix-unit preparation on A at once.
        std::vector<Factor> ext_factors = u.reg.factors();
        ext_factors.push_back({"refA@", d_a});
        ext_factors.push_back({"ref@", d_rest});
        TensorRegister ext_reg(std::move(ext_factors));
        CVector amps = CVector::Zero(static_cast<Eigen::Index>(ext_reg.total_dim()));
        const double scale = 1.0 / std::sqrt(static_cast<double>(d_a * d_rest));
        for (std::size_t s = 0; s < d_tot; ++s) {
            const std::size_t idx = (s * d_a + a_of[s]) * d_rest + m_of[s];
            amps(static_cast<Eigen::Index>(idx)) = scale;
        }
        PureState ext(std::move(ext_reg), std::move(amps));
        ext = apply_unitary(ext, u, u.reg.labels());

        // Reinterpret the system block under the output factorization.
        std::vector<Factor> out_factors = u.out.factors();
        out_factors.push_back({"refA@", d_a});
        out_factors.push_back({"ref@", d_rest});
        ext = PureState(TensorRegister(std::move(out_factors)), ext.amplitudes);

        std::vector<std::string> keep = output_b;
        keep.push_back("refA@");
        keep.push_back("ref@");
        const DensityMatrix sigma = partial_trace(ext, keep);
        // sigma is ordered (B' factors, refA, ref): index ((b*d_a + a)*d_rest + m).
        const std::size_t d_bp = sigma.reg.total_dim() / (d_a * d_rest);
        const std::size_t d_y = d_bp * d_rest;
        auto slice = [&](std::size_t i, std::size_t j) -> CMatrix {
            CMatrix y(static_cast<Eigen::Index>(d_y), static_cast<Eigen::Index>(d_y));
            for (std::size_t b = 0; b < d_bp; ++b) {
                for (std::size_t m = 0; m < d_rest; ++m) {
                    for (std::size_t b2 = 0; b2 < d_bp; ++b2) {
                        for (std::size_t m2 = 0; m2 < d_rest; ++m2) {
                            y(static_cast<Eigen::Index>(b * d_rest + m),
                              static_cast<Eigen::Index>(b2 * d_rest + m2)) =
                                sigma.matrix(static_cast<Eigen::Index>((b * d_a + i) * d_rest + m),
                                             static_cast<Eigen::Index>((b2 * d_a + j) * d_rest + m2));
                        }
                    }
                }
            }
            y *= static_cast<double>(d_a);
            return y;
        };

        double magnitude = 0.0;
        std::vector<CMatrix> diag;
        diag.reserve(d_a);
        for (std::size_t i = 0; i < d_a; ++i) diag.push_back(slice(i, i));
        for (std::size_t i = 0; i < d_a; ++i) {
            for (std::size_t j = i + 1; j < d_a; ++j) {
                magnitude = std::max(magnitude, trace_distance(diag[i], diag[j]));
            }
        }
        for (std::size_t i = 0; i < d_a; ++i) {
            for (std::size_t j = 0; j < d_a; ++j) {
                if (i == j) continue;
                magnitude = std::max(magnitude, trace_norm(slice(i, j)));
            }
        }
        verdict.magnitude = magnitude;
        verdict.probes = static_cast<int>(d_a * d_a);
    } else {
        if (probes < 1) throw ArgumentError("detect_signaling: sampled mode needs probes >= 1");
        check_capacity(d_tot, "detect_signaling(sampled)");
        double magnitude = 0.0;
        for (int k = 0; k < probes; ++k) {
            RandomStream rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
            auto haar_vec = [&rng](std::size_t dim) {
                CVector v(static_cast<Eigen::Index>(dim));
                for (Eigen::Index i = 0; i < v.size(); ++i) {
                    v(i) = Complex(rng.normal(), rng.normal());
                }
                v /= v.norm();
                return v;
            };
            const CVector psi1 = haar_vec(d_a);
            const CVector psi2 = haar_vec(d_a);
            const CVector phi = haar_vec(d_rest);
            auto product_out = [&](const CVector& psi) {
                CVector amps(static_cast<Eigen::Index>(d_tot));
                for (std::size_t s = 0; s < d_tot; ++s) {
                    amps(static_cast<Eigen::Index>(s)) =
                        psi(static_cast<Eigen::Index>(a_of[s])) *
                        phi(static_cast<Eigen::Index>(m_of[s]));
                }
                PureState st(u.reg, std::move(amps));
                st = apply_unitary(st, u, u.reg.labels());
                st = PureState(u.out, st.amplitudes);
                return partial_trace(st, output_b);
            };
            magnitude =
                std::max(magnitude, trace_distance(product_out(psi1).matrix, product_out(psi2).matrix));
        }
        verdict.magnitude = magnitude;
        verdict.probes = probes;
    }

    verdict.signaling = verdict.magnitude > kSignalingThreshold;
    return verdict;
}

struct VerificationResult {
    std::string check;
    int samples = 0;
    std::string shape;
    double min_margin = 0.0;
    double threshold = 0.0;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Shapes used by the sampled inequality checks, in qubits per wire.
struct VerifyShape {
    int b_qubits = 2;
    int n_qubits = 2;
    int r_qubits = 2;

    std::string to_string() const {
        return std::to_string(b_qubits) + "+" + std::to_string(n_qubits) + "+" +
               std::to_string(r_qubits);
    }
};

/// Samples arbitrary unitaries on (B,N) over Haar-random initial states and
/// minimizes S(B,N:R) - S(R':R) over every output split (B',N',R') of the
/// block; strong subadditivity demands the minimum stay non-negative.
inline VerificationResult verify_eq2(int samples, const VerifyShape& shape, std::uint64_t seed) {
    if (samples < 1) throw ArgumentError("verify_eq2: samples must be >= 1");
    const std::size_t db = std::size_t{1} << shape.b_qubits;
    const std::size_t dn = std::size_t{1} << shape.n_qubits;
    const std::size_t dr = std::size_t{1} << shape.r_qubits;
    check_capacity(db * dn * dr, "verify_eq2");
    const TensorRegister reg({{"B", db}, {"N", dn}, {"R", dr}});
    const int block_qubits = shape.b_qubits + shape.n_qubits;

    VerificationResult res;
    res.check = "eq2";
    res.samples = samples;
    res.shape = shape.to_string();
    res.threshold = -1e-9;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < samples; ++t) {
        const auto s0 = haar_random_pure(reg, derive_seed(seed, 2 * static_cast<std::uint64_t>(t)));
        const auto u = haar_random_unitary(db * dn,
                                           derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1));
        const double lhs = mutual_information(s0, {"B", "N"}, {"R"});
        const auto evolved = apply_unitary(s0, u, {"B", "N"});
        for (int eb = 0; eb <= block_qubits; ++eb) {
            for (int en = 0; eb + en <= block_qubits; ++en) {
                const int er = block_qubits - eb - en;
                const auto reshaped = reshape_block(
                    evolved, "B", "N",
                    {{"B'", std::size_t{1} << eb}, {"N'", std::size_t{1} << en},
                     {"R'", std::size_t{1} << er}});
                const double margin = lhs - mutual_information(reshaped, {"R'"}, {"R"});
                if (margin < min_margin) min_margin = margin;
                if (margin < res.threshold) {
                    res.failures.push_back("sample " + std::to_string(t) + " split 2^" +
                                           std::to_string(eb) + ",2^" + std::to_string(en) + ",2^" +
                                           std::to_string(er) + ": margin " +
                                           std::to_string(margin));
                }
            }
        }
    }
    res.min_margin = min_margin;
    return res;
}

/// Qubit-shaped circuit dims used by the eq6 and soundness suites.
inline NoCommDims default_nocomm_dims(int b_qubits, int n_qubits) {
    NoCommDims d;
    d.dim_b = std::size_t{1} << b_qubits;
    d.dim_n = std::size_t{1} << n_qubits;
    d.dim_i = 1;
    d.dim_anc = d.dim_n;      // room for the channel
    d.dim_c = d.dim_n;
    d.dim_n_out = std::size_t{1} << (n_qubits / 2);
    d.dim_r_out = (d.dim_n * d.dim_anc) / (d.dim_c * d.dim_n_out);
    return d;
}

inline NoCommCircuit random_nonsignaling_circuit(const NoCommDims& dims, std::uint64_t seed) {
    const auto w = haar_random_unitary(dims.exterior_in(), derive_seed(seed, 11));
    const auto v = haar_random_unitary(dims.dim_b * dims.dim_c, derive_seed(seed, 13));
    return build_nonsignaling(w, v, dims);
}

/// Samples constructed non-signaling circuits over Haar-random initial states
/// and minimizes S(N:R) - S(R':R); locality forces the minimum non-negative.
inline VerificationResult verify_eq6(int samples, const VerifyShape& shape, std::uint64_t seed) {
    if (samples < 1) throw ArgumentError("verify_eq6: samples must be >= 1");
    const NoCommDims dims = default_nocomm_dims(shape.b_qubits, shape.n_qubits);
    const std::size_t dr = std::size_t{1} << shape.r_qubits;
    const TensorRegister reg({{"B", dims.dim_b}, {"N", dims.dim_n}, {"R", dr}});
    check_capacity(reg.total_dim() * dims.dim_anc, "verify_eq6");

    VerificationResult res;
    res.check = "eq6";
    res.samples = samples;
    res.shape = shape.to_string();
    res.threshold = -1e-9;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int t = 0; t < samples; ++t) {
        const auto circuit =
            random_nonsignaling_circuit(dims, derive_seed(seed, 2 * static_cast<std::uint64_t>(t)));
        const auto s0 = haar_random_pure(reg, derive_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1));
        const double lhs = mutual_information(s0, {"N"}, {"R"});
        const auto out = simulate_fig3(circuit, s0);
        const double margin = lhs - mutual_information(out, {"R'"}, {"R"});
        if (margin < min_margin) min_margin = margin;
        if (margin < res.threshold) {
            res.failures.push_back("sample " + std::to_string(t) + ": margin " +
                                   std::to_string(margin));
        }
    }
    res.min_margin = min_margin;
    return res;
}

/// Signaling circuit that routes the interior qubit into R': with B maximally
/// entangled to R and N in a product state, S(N:R) = 0 while S(R':R) = 2 ln 2,
/// so the eq6 inequality genuinely depends on the non-signaling structure.
inline double eq6_swap_counterexample_margin() {
    const TensorRegister reg = TensorRegister({{"B", 2}, {"N", 2}, {"R", 2}});
    CVector amps = CVector::Zero(8);
    const double inv = 1.0 / std::sqrt(2.0);
    amps(0) = inv; // |0_B 0_N 0_R>
    amps(5) = inv; // |1_B 0_N 1_R>
    PureState state(reg, std::move(amps));

    CMatrix swap = CMatrix::Zero(4, 4);
    swap(0, 0) = 1.0;
    swap(1, 2) = 1.0;
    swap(2, 1) = 1.0;
    swap(3, 3) = 1.0;
    const Unitary u = Unitary::from_matrix(swap);

    const double lhs = mutual_information(state, {"N"}, {"R"});
    auto evolved = apply_unitary(state, u, {"B", "N"});
    evolved = reshape_block(evolved, "B", "N", {{"N'", 2}, {"R'", 2}});
    return lhs - mutual_information(evolved, {"R'"}, {"R"});
}

/// Builds `samples` random non-signaling circuits and runs the exact detector
/// on each; every magnitude must sit below the signaling threshold.
inline VerificationResult verify_nonsignaling_soundness(int samples, const VerifyShape& shape,
                                                        std::uint64_t seed) {
    if (samples < 1) throw ArgumentError("verify_nonsignaling_soundness: samples must be >= 1");
    const NoCommDims dims = default_nocomm_dims(shape.b_qubits, shape.n_qubits);
    VerificationResult res;
    res.check = "nonsignaling-soundness";
    res.samples = samples;
    res.shape = std::to_string(shape.b_qubits) + "+" + std::to_string(shape.n_qubits);
    res.threshold = 1e-9;
    double max_magnitude = 0.0;
    for (int t = 0; t < samples; ++t) {
        const auto circuit = random_nonsignaling_circuit(dims, derive_seed(seed, static_cast<std::uint64_t>(t)));
        const auto verdict = detect_signaling(circuit.total(), {"B"}, {"N'", "R'"});
        max_magnitude = std::max(max_magnitude, verdict.magnitude);
        if (verdict.magnitude >= res.threshold) {
            res.failures.push_back("circuit " + std::to_string(t) + ": magnitude " +
                                   std::to_string(verdict.magnitude));
        }
    }
    res.min_margin = res.threshold - max_magnitude;
    return res;
}

} // namespace evaplab
