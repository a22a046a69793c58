#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "evaplab/io.hpp"
#include "evaplab/lattice.hpp"
#include "evaplab/nocomm.hpp"
#include "evaplab/page_curve.hpp"
#include "evaplab/paradox.hpp"

namespace evaplab {

using nlohmann::json;

/// One fully reproducible run: (config, seed) -> identical artifact bytes.
struct RunConfig {
    std::string command; // page-curve | paradox | nocomm-verify | lattice-decay | haar-verify
    json params = json::object();
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = ".";
    double theta = 0.01;
    std::string units = "qunats"; // or "bits"

    static RunConfig from_json(const json& j) {
        RunConfig c;
        if (!j.is_object()) throw ConfigError("config: top level must be an object");
        if (!j.contains("command") || !j.at("command").is_string()) {
            throw ConfigError("config: missing string field 'command'");
        }
        c.command = j.at("command").get<std::string>();
        if (j.contains("params")) {
            if (!j.at("params").is_object()) throw ConfigError("config: 'params' must be an object");
            c.params = j.at("params");
        }
        if (j.contains("seed")) {
            if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) {
                throw ConfigError("config: 'seed' must be an integer");
            }
            c.seed = j.at("seed").get<std::uint64_t>();
        }
        if (j.contains("output_dir")) {
            if (!j.at("output_dir").is_string()) throw ConfigError("config: 'output_dir' must be a string");
            c.output_dir = j.at("output_dir").get<std::string>();
        }
        if (j.contains("theta")) {
            if (!j.at("theta").is_number()) throw ConfigError("config: 'theta' must be a number");
            c.theta = j.at("theta").get<double>();
        }
        if (j.contains("units")) {
            if (!j.at("units").is_string()) throw ConfigError("config: 'units' must be a string");
            c.units = j.at("units").get<std::string>();
            if (c.units != "qunats" && c.units != "bits") {
                throw ConfigError("config: 'units' must be 'qunats' or 'bits'");
            }
        }
        return c;
    }
};

namespace detail {

inline double param_number(const json& p, const std::string& key, std::optional<double> fallback = {}) {
    if (!p.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("params: missing numeric field '" + key + "'");
    }
    if (!p.at(key).is_number()) throw ConfigError("params: field '" + key + "' must be a number");
    return p.at(key).get<double>();
}

inline int param_int(const json& p, const std::string& key, std::optional<int> fallback = {}) {
    if (!p.contains(key)) {
        if (fallback) return *fallback;
        throw ConfigError("params: missing integer field '" + key + "'");
    }
    if (!p.at(key).is_number_integer() && !p.at(key).is_number_unsigned()) {
        throw ConfigError("params: field '" + key + "' must be an integer");
    }
    return p.at(key).get<int>();
}

inline std::string param_string(const json& p, const std::string& key, const std::string& fallback) {
    if (!p.contains(key)) return fallback;
    if (!p.at(key).is_string()) throw ConfigError("params: field '" + key + "' must be a string");
    return p.at(key).get<std::string>();
}

/// Entropy-unit conversion for output only; storage stays in qunats.
inline double out_units(double qunats, const std::string& units) {
    return units == "bits" ? qunats / std::numbers::ln2 : qunats;
}

inline json verification_json(const VerificationResult& r) {
    json j;
    j["check"] = r.check;
    j["samples"] = r.samples;
    j["shape"] = r.shape;
    j["min_margin"] = round12(r.min_margin);
    j["threshold"] = r.threshold;
    j["failures"] = r.failures;
    return j;
}

inline VerifyShape parse_shape(const std::string& text) {
    VerifyShape s;
    int vals[3] = {2, 2, 2};
    std::stringstream ss(text);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, '+') && i < 3) vals[i++] = std::stoi(tok);
    if (i < 2) throw ConfigError("params: 'shape' must look like '2+2+2'");
    s.b_qubits = vals[0];
    s.n_qubits = vals[1];
    s.r_qubits = i > 2 ? vals[2] : 2;
    return s;
}

inline int run_page_curve(const RunConfig& cfg) {
    const int trials = param_int(cfg.params, "trials", 0);
    std::ostringstream csv;
    csv << "r_qunats,s_r_analytic,mi_analytic,s_r_mc_mean,s_r_mc_stderr,mi_mc_mean,mi_mc_stderr\n";
    const auto& u = cfg.units;
    if (trials > 0) {
        const int n_evap = param_int(cfg.params, "n_evap_qubits");
        int n_ref = param_int(cfg.params, "n_matter_ref_qubits", 0);
        if (cfg.params.contains("s_matter") && !cfg.params.contains("n_matter_ref_qubits")) {
            // fractional matter entropy rounds down to whole entangled pairs
            n_ref = static_cast<int>(param_number(cfg.params, "s_matter") / std::numbers::ln2);
        }
        const auto mc = monte_carlo_curve(n_evap, n_ref, trials, cfg.seed);
        const EvaporationParams p(n_evap * std::numbers::ln2, n_ref * std::numbers::ln2);
        for (const auto& pt : mc) {
            const auto q = p.at(pt.r);
            csv << fmt12(out_units(pt.r, u)) << ','
                << fmt12(out_units(analytic_radiation_entropy(q), u)) << ','
                << fmt12(out_units(analytic_mutual_information(q), u)) << ','
                << fmt12(out_units(pt.s_r_mean, u)) << ',' << fmt12(out_units(pt.s_r_stderr, u))
                << ',' << fmt12(out_units(pt.mi_mean, u)) << ','
                << fmt12(out_units(pt.mi_stderr, u)) << '\n';
        }
    } else {
        const double s_bh = param_number(cfg.params, "s_bh");
        const double s_matter = param_number(cfg.params, "s_matter", 0.0);
        const int steps = param_int(cfg.params, "steps", 200);
        const EvaporationParams p(s_bh, s_matter);
        for (const auto& pt : analytic_curve(p, steps)) {
            csv << fmt12(out_units(pt.r, u)) << ',' << fmt12(out_units(pt.s_r, u)) << ','
                << fmt12(out_units(pt.mi, u)) << ",,,,\n";
        }
    }
    write_text_atomic(cfg.output_dir / "curve.csv", csv.str());
    return 0;
}

inline TheoremParams theorem_params_from(const RunConfig& cfg) {
    TheoremParams p;
    p.s_bh = param_number(cfg.params, "s_bh");
    p.s_matter = param_number(cfg.params, "s_matter", 0.0);
    p.mu = param_number(cfg.params, "mu", 1.0);
    p.epsilon = param_number(cfg.params, "epsilon", 0.0);
    p.eta = param_number(cfg.params, "eta", 0.0);
    p.theta = cfg.theta;
    if (cfg.params.contains("log_dim_b")) p.log_dim_b = param_number(cfg.params, "log_dim_b");
    if (cfg.params.contains("stretched_horizon_allowance")) {
        if (!cfg.params.at("stretched_horizon_allowance").is_boolean()) {
            throw ConfigError("params: 'stretched_horizon_allowance' must be a boolean");
        }
        p.stretched_horizon_allowance = cfg.params.at("stretched_horizon_allowance").get<bool>();
    }
    p.validate();
    return p;
}

inline json report_point_json(const ParadoxReport& rep, const std::string& units) {
    json j;
    j["r"] = round12(out_units(rep.r, units));
    j["lhs"] = round12(out_units(rep.lhs, units));
    j["rhs"] = round12(out_units(rep.rhs, units));
    j["margin"] = round12(out_units(rep.margin, units));
    j["contradiction"] = rep.contradiction;
    j["assumptions"] = rep.assumptions;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

inline int run_paradox(const RunConfig& cfg) {
    const std::string name = param_string(cfg.params, "theorem", "t1");
    const Theorem theorem = theorem_from_name(name);
    const TheoremParams p = theorem_params_from(cfg);
    const auto& u = cfg.units;

    std::vector<ParadoxReport> points;
    std::optional<double> onset;
    std::optional<double> predicted;
    if (theorem == Theorem::t1_matter && !cfg.params.contains("steps")) {
        points.push_back(theorem1_matter_report(p));
    } else if (theorem == Theorem::pagetime_minimal) {
        points.push_back(
            pagetime_minimal_report(p.s_bh, p.mu, p.theta, p.stretched_horizon_allowance));
    } else {
        const int steps = param_int(cfg.params, "steps", 200);
        const auto sweep = evaporation_sweep(p, theorem, steps);
        points = sweep.points;
        onset = sweep.onset_r;
        predicted = sweep.predicted_onset_r;
    }
    if (!onset) {
        for (const auto& pt : points) {
            if (pt.contradiction) {
                onset = pt.r;
                break;
            }
        }
    }

    json j;
    j["theorem"] = name;
    j["params"] = {{"s_bh", round12(p.s_bh)},       {"s_matter", round12(p.s_matter)},
                   {"mu", round12(p.mu)},           {"epsilon", round12(p.epsilon)},
                   {"eta", round12(p.eta)},         {"units", u},
                   {"stretched_horizon_allowance", p.stretched_horizon_allowance}};
    if (p.log_dim_b) j["params"]["log_dim_b"] = round12(*p.log_dim_b);
    j["theta"] = round12(p.theta);
    j["points"] = json::array();
    for (const auto& pt : points) j["points"].push_back(report_point_json(pt, u));
    j["onset_r"] = onset ? json(round12(out_units(*onset, u))) : json(nullptr);
    if (predicted) j["predicted_onset_r"] = round12(out_units(*predicted, u));
    write_text_atomic(cfg.output_dir / "report.json", j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "r,lhs,rhs,margin,contradiction,assumptions\n";
    for (const auto& pt : points) {
        std::string tags;
        for (std::size_t i = 0; i < pt.assumptions.size(); ++i) {
            if (i) tags += ';';
            tags += pt.assumptions[i];
        }
        csv << fmt12(out_units(pt.r, u)) << ',' << fmt12(out_units(pt.lhs, u)) << ','
            << fmt12(out_units(pt.rhs, u)) << ',' << fmt12(out_units(pt.margin, u)) << ','
            << (pt.contradiction ? "true" : "false") << ',' << tags << '\n';
    }
    write_text_atomic(cfg.output_dir / "report.csv", csv.str());
    return 0;
}

inline int run_nocomm_verify(const RunConfig& cfg) {
    const int samples = param_int(cfg.params, "samples", 100);
    const VerifyShape shape = parse_shape(param_string(cfg.params, "shape", "2+2+2"));
    const int circuits = param_int(cfg.params, "circuits", 100);

    std::vector<VerificationResult> results;
    results.push_back(verify_eq2(samples, shape, derive_seed(cfg.seed, 1)));
    results.push_back(verify_eq6(samples, shape, derive_seed(cfg.seed, 2)));
    results.push_back(verify_nonsignaling_soundness(circuits, shape, derive_seed(cfg.seed, 3)));

    VerificationResult counterexample;
    counterexample.check = "eq6-swap-counterexample";
    counterexample.samples = 1;
    counterexample.shape = "1+1+1";
    counterexample.threshold = 1e-9;
    const double margin = eq6_swap_counterexample_margin();
    counterexample.min_margin = margin;
    if (std::abs(margin + 2.0 * std::numbers::ln2) > 1e-9) {
        counterexample.failures.push_back("expected violation of exactly 2 ln 2, got " +
                                          std::to_string(-margin));
    }
    results.push_back(counterexample);

    json j = json::array();
    bool violation = false;
    for (const auto& r : results) {
        j.push_back(verification_json(r));
        if (!r.passed()) violation = true;
    }
    write_text_atomic(cfg.output_dir / "verify.json", j.dump(2) + "\n");
    return violation ? 2 : 0;
}

inline int run_haar_verify(const RunConfig& cfg) {
    const int bloch_samples = param_int(cfg.params, "bloch_samples", 10000);
    const int ssa_samples = param_int(cfg.params, "ssa_samples", 1000);

    json j = json::array();
    bool violation = false;

    {
        // Mean Bloch vector of Haar qubit states; should shrink like 1/sqrt(N).
        const TensorRegister qubit({{"q", 2}});
        double bx = 0, by = 0, bz = 0;
        for (int t = 0; t < bloch_samples; ++t) {
            const auto s = haar_random_pure(qubit, derive_seed(cfg.seed, 100 + t));
            const Complex a = s.amplitudes(0), b = s.amplitudes(1);
            bx += 2.0 * std::real(std::conj(a) * b);
            by += 2.0 * std::imag(std::conj(a) * b);
            bz += std::norm(a) - std::norm(b);
        }
        const double len = std::sqrt(bx * bx + by * by + bz * bz) / bloch_samples;
        json check;
        check["check"] = "haar-bloch-mean";
        check["samples"] = bloch_samples;
        check["shape"] = "1";
        check["statistic"] = round12(len);
        check["threshold"] = 0.05;
        check["min_margin"] = round12(0.05 - len);
        check["failures"] = json::array();
        if (len >= 0.05) {
            check["failures"].push_back("mean Bloch length " + std::to_string(len));
            violation = true;
        }
        j.push_back(check);
    }
    {
        // SSA sampling at a 2+2+2(+2 spectator) shape.
        const TensorRegister reg({{"w", 4}, {"x", 4}, {"y", 4}, {"s", 4}});
        double min_margin = std::numeric_limits<double>::infinity();
        for (int t = 0; t < ssa_samples; ++t) {
            const auto st = haar_random_pure(reg, derive_seed(cfg.seed, 5000 + t));
            min_margin = std::min(min_margin, ssa_margin(st, {"w"}, {"x"}, {"y"}));
        }
        json check;
        check["check"] = "ssa-min-margin";
        check["samples"] = ssa_samples;
        check["shape"] = "4x4x4x4";
        check["min_margin"] = round12(min_margin);
        check["threshold"] = -1e-9;
        check["failures"] = json::array();
        if (min_margin < -1e-9) {
            check["failures"].push_back("min margin " + std::to_string(min_margin));
            violation = true;
        }
        j.push_back(check);
    }
    write_text_atomic(cfg.output_dir / "verify.json", j.dump(2) + "\n");
    return violation ? 2 : 0;
}

inline int run_lattice_decay(const RunConfig& cfg) {
    const int n = param_int(cfg.params, "n_sites", 60);
    const double mass = param_number(cfg.params, "mass", 1.0);
    const double self_freq = param_number(cfg.params, "self_freq", 1.0);
    const double coupling = param_number(cfg.params, "coupling", 1.0);
    const std::string bstr = param_string(cfg.params, "boundary", "open");
    if (bstr != "open" && bstr != "periodic") {
        throw ConfigError("params: 'boundary' must be 'open' or 'periodic'");
    }
    const int block_size = param_int(cfg.params, "block_size", 1);
    const int d_max = param_int(cfg.params, "d_max", 10);
    const double floor = param_number(cfg.params, "floor", 1e-12);

    const HarmonicChain chain(n, mass, self_freq, coupling,
                              bstr == "open" ? Boundary::open : Boundary::periodic);
    const auto series = entanglement_vs_separation(chain, block_size, d_max);

    std::ostringstream csv;
    csv << "d,mutual_information_qunats\n";
    for (const auto& p : series) csv << p.d << ',' << fmt12(p.mutual_information) << '\n';
    write_text_atomic(cfg.output_dir / "decay.csv", csv.str());

    json j;
    try {
        const auto fit = fit_decay(series, floor);
        j["rate"] = round12(fit.rate);
        j["r_squared"] = round12(fit.r_squared);
        j["floor"] = fit.floor;
        j["points_used"] = fit.points_used;
    } catch (const InsufficientDataError& e) {
        j["rate"] = nullptr;
        j["r_squared"] = nullptr;
        j["floor"] = floor;
        j["points_used"] = 0;
        j["note"] = e.what();
    }
    write_text_atomic(cfg.output_dir / "fit.json", j.dump(2) + "\n");
    return 0;
}

} // namespace detail

/// Executes a validated config. Exit status 0 on success, 2 when a
/// verification suite found a margin violation; config problems throw.
inline int run(const RunConfig& cfg) {
    if (cfg.command == "page-curve") return detail::run_page_curve(cfg);
    if (cfg.command == "paradox") return detail::run_paradox(cfg);
    if (cfg.command == "nocomm-verify") return detail::run_nocomm_verify(cfg);
    if (cfg.command == "haar-verify") return detail::run_haar_verify(cfg);
    if (cfg.command == "lattice-decay") return detail::run_lattice_decay(cfg);
    throw ConfigError("config: unknown command '" + cfg.command + "'");
}

inline RunConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config: invalid JSON in '" + path.string() + "': " + e.what());
    }
    return RunConfig::from_json(j);
}

} // namespace evaplab
