// evaplab command-line front end: entropy curves, inequality sweeps,
// non-signaling verification, and lattice decay studies from JSON configs
// or flags, with CSV/JSON artifacts and a terminal summary.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "evaplab/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> theta;
    std::string units;
};

void add_common(CLI::App* cmd, CommonFlags& common) {
    cmd->add_option("--config", common.config_path, "JSON config file; flags override its fields");
    cmd->add_option("--output-dir", common.output_dir, "directory for artifact files");
    cmd->add_option("--seed", common.seed, "64-bit seed; same (config, seed) gives identical bytes");
    cmd->add_option("--theta", common.theta, "dominance threshold for '>>' and 'approximately'");
    cmd->add_option("--units", common.units, "qunats (default) or bits")
        ->check(CLI::IsMember({"qunats", "bits"}));
}

/// Binds a flag to a params key; the value lands in the JSON object only when
/// the flag was actually given, so config-file values survive otherwise.
class ParamBinder {
public:
    ParamBinder(CLI::App* cmd, nlohmann::json& params) : cmd_(cmd), params_(&params) {}

    template <typename T>
    void bind(const std::string& flag, const std::string& key, T& storage,
              const std::string& help) {
        cmd_->add_option(flag, storage, help);
        collectors_.push_back([this, flag, key, &storage] {
            if (cmd_->count(flag) > 0) (*params_)[key] = storage;
        });
    }

    void bind_flag(const std::string& flag, const std::string& key, bool& storage,
                   const std::string& help) {
        cmd_->add_flag(flag, storage, help);
        collectors_.push_back([this, flag, key, &storage] {
            if (cmd_->count(flag) > 0) (*params_)[key] = storage;
        });
    }

    void collect() const {
        for (const auto& c : collectors_) c();
    }

private:
    CLI::App* cmd_;
    nlohmann::json* params_;
    std::vector<std::function<void()>> collectors_;
};

evaplab::RunConfig assemble(const std::string& command, const CommonFlags& common,
                            const nlohmann::json& params) {
    evaplab::RunConfig cfg;
    if (!common.config_path.empty()) {
        cfg = evaplab::load_config_file(common.config_path);
        if (cfg.command != command && !cfg.command.empty()) {
            throw evaplab::ConfigError("config: file command '" + cfg.command +
                                       "' does not match subcommand '" + command + "'");
        }
    }
    cfg.command = command;
    for (auto it = params.begin(); it != params.end(); ++it) cfg.params[it.key()] = it.value();
    if (!common.output_dir.empty()) cfg.output_dir = common.output_dir;
    if (common.seed) cfg.seed = *common.seed;
    if (common.theta) cfg.theta = *common.theta;
    if (!common.units.empty()) cfg.units = common.units;
    return cfg;
}

void print_summary(const evaplab::RunConfig& cfg, int status) {
    std::cout << "command:    " << cfg.command << "\n"
              << "seed:       " << cfg.seed << "\n"
              << "output dir: " << cfg.output_dir.string() << "\n"
              << "status:     " << (status == 0 ? "ok" : "margin violation") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"evaplab: entropy accounting for unitarily evaporating black holes"};
    app.require_subcommand(1);

    CommonFlags common;
    nlohmann::json params = nlohmann::json::object();
    std::string command;
    std::vector<ParamBinder> binders;
    binders.reserve(5);

    double s_bh = 0, s_matter = 0, mu = 0, epsilon = 0, eta = 0, log_dim_b = 0;
    double mass = 0, self_freq = 0, coupling = 0;
    int steps = 0, trials = 0, n_evap = 0, n_ref = 0, samples = 0, circuits = 0;
    int bloch_samples = 0, ssa_samples = 0, n_sites = 0, block_size = 0, d_max = 0;
    bool stretched = false;
    std::string theorem, shape, boundary;

    auto* page = app.add_subcommand("page-curve", "analytic and Monte-Carlo entropy curves");
    add_common(page, common);
    {
        auto& b = binders.emplace_back(page, params);
        b.bind("--s-bh", "s_bh", s_bh, "initial Bekenstein-Hawking entropy (qunats)");
        b.bind("--s-matter", "s_matter", s_matter, "infallen matter entropy (qunats)");
        b.bind("--steps", "steps", steps, "grid intervals for the analytic curve");
        b.bind("--trials", "trials", trials, "Monte-Carlo trials (0 = analytic only)");
        b.bind("--n-evap", "n_evap_qubits", n_evap, "evaporating qubits (Monte-Carlo mode)");
        b.bind("--n-matter-ref", "n_matter_ref_qubits", n_ref, "matter reference qubit pairs");
    }
    page->callback([&] { command = "page-curve"; });

    auto* paradox = app.add_subcommand("paradox", "inequality-chain sweep or pinned report");
    add_common(paradox, common);
    {
        auto& b = binders.emplace_back(paradox, params);
        b.bind("--theorem", "theorem", theorem,
               "t1|t2|t1-holographic|t1-matter|t2-matter|pagetime-minimal");
        b.bind("--s-bh", "s_bh", s_bh, "initial Bekenstein-Hawking entropy (qunats)");
        b.bind("--s-matter", "s_matter", s_matter, "infallen matter entropy (qunats)");
        b.bind("--mu", "mu", mu, "neighborhood area ratio");
        b.bind("--epsilon", "epsilon", epsilon, "untracked final area fraction (~epsilon/2)");
        b.bind("--eta", "eta", eta, "exotic-matter allowance S(N:R) <= eta S_BH");
        b.bind("--log-dim-b", "log_dim_b", log_dim_b, "interior log-dimension override (qunats)");
        b.bind("--steps", "steps", steps, "sweep grid intervals");
        b.bind_flag("--stretched-horizon-allowance", "stretched_horizon_allowance", stretched,
                    "add the O(sqrt(A)) stretched-horizon headroom");
    }
    paradox->callback([&] { command = "paradox"; });

    auto* nocomm = app.add_subcommand("nocomm-verify", "non-signaling and inequality checks");
    add_common(nocomm, common);
    {
        auto& b = binders.emplace_back(nocomm, params);
        b.bind("--samples", "samples", samples, "samples per inequality check");
        b.bind("--circuits", "circuits", circuits, "constructed circuits for the soundness check");
        b.bind("--shape", "shape", shape, "qubits per wire, e.g. 2+2+2");
    }
    nocomm->callback([&] { command = "nocomm-verify"; });

    auto* haar = app.add_subcommand("haar-verify", "Haar sampling statistics and SSA margins");
    add_common(haar, common);
    {
        auto& b = binders.emplace_back(haar, params);
        b.bind("--bloch-samples", "bloch_samples", bloch_samples,
               "qubit samples for the Bloch-mean check");
        b.bind("--ssa-samples", "ssa_samples", ssa_samples, "states for the SSA margin check");
    }
    haar->callback([&] { command = "haar-verify"; });

    auto* lattice = app.add_subcommand("lattice-decay", "cross-horizon entanglement vs separation");
    add_common(lattice, common);
    {
        auto& b = binders.emplace_back(lattice, params);
        b.bind("--n-sites", "n_sites", n_sites, "chain length");
        b.bind("--mass", "mass", mass, "oscillator mass");
        b.bind("--self-freq", "self_freq", self_freq, "on-site frequency (IR regulator)");
        b.bind("--coupling", "coupling", coupling, "nearest-neighbor coupling");
        b.bind("--boundary", "boundary", boundary, "open or periodic");
        b.bind("--block-size", "block_size", block_size, "sites per block");
        b.bind("--d-max", "d_max", d_max, "largest separation");
    }
    lattice->callback([&] { command = "lattice-decay"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    for (const auto& b : binders) b.collect();

    try {
        const auto cfg = assemble(command, common, params);
        const int status = evaplab::run(cfg);
        print_summary(cfg, status);
        return status;
    } catch (const evaplab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
