// opss_main.cpp — command-line workbench: spectrum | optimize | scan | stats | flux | validate
//
// Configuration comes from a JSON document (--config); individual flags
// override file values, which override built-in per-model defaults. Every
// run writes its outputs plus a run manifest into one directory named
// <timestamp>-<confighash> under --out, config.output_dir, $OPSS_OUT_ROOT,
// or ./runs, in that order of precedence.
//
// Exit codes: 0 success, 1 configuration error, 2 domain error (no crossing,
// unreachable target), 3 numerical failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "opss/errors.hpp"
#include "opss/io.hpp"
#include "opss/open_system.hpp"
#include "opss/optimizer.hpp"
#include "opss/parallel.hpp"
#include "opss/propagation.hpp"
#include "opss/robustness.hpp"
#include "opss/spectrum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace opss;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// config plumbing

double require_number(const json& j, const std::string& path) {
    if (!j.is_number()) throw ConfigError(path + ": expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return j.get<int>();
}

double number_or(const json& parent, const std::string& key, double fallback,
                 const std::string& path) {
    if (!parent.contains(key)) return fallback;
    return require_number(parent.at(key), path + "." + key);
}

int int_or(const json& parent, const std::string& key, int fallback, const std::string& path) {
    if (!parent.contains(key)) return fallback;
    return require_int(parent.at(key), path + "." + key);
}

std::string string_or(const json& parent, const std::string& key, const std::string& fallback,
                      const std::string& path) {
    if (!parent.contains(key)) return fallback;
    if (!parent.at(key).is_string()) throw ConfigError(path + "." + key + ": expected a string");
    return parent.at(key).get<std::string>();
}

struct RunConfig {
    json raw;  // resolved document (defaults folded in) for the manifest
    Model model = Model::three_photon();
    StarkVariant variant = StarkVariant::main_text;
    bool calibrated_map = true;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = 0;
    std::string output_dir;
};

Model parse_model(const json& root) {
    const json model_block = root.value("model", json::object());
    const std::string kind = string_or(model_block, "kind", "three_photon", "model");
    const json trunc = model_block.value("truncation", json::object());
    if (kind == "three_photon") {
        ThreePhotonParams p;
        p.omega_a = number_or(model_block, "omega_a", 1.0, "model");
        p.omega_c = number_or(model_block, "omega_c", p.omega_a / 3.0, "model");
        p.lambda = number_or(model_block, "lambda", 0.06, "model");
        FockTruncation t{int_or(trunc, "cavity_dim", 15, "model.truncation"),
                         int_or(trunc, "second_dim", 2, "model.truncation")};
        try {
            return Model::three_photon(p, t);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }
    if (kind == "casimir") {
        CasimirParams p;
        p.omega_m = number_or(model_block, "omega_m", 1.0, "model");
        p.omega_c = number_or(model_block, "omega_c", 1.5 * p.omega_m, "model");
        p.g = number_or(model_block, "g", 0.001, "model");
        FockTruncation t{int_or(trunc, "cavity_dim", 8, "model.truncation"),
                         int_or(trunc, "second_dim", 12, "model.truncation")};
        try {
            return Model::casimir(p, t);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("model: ") + e.what());
        }
    }
    throw ConfigError("model.kind: expected 'three_photon' or 'casimir', got '" + kind + "'");
}

RunConfig parse_config(const json& root) {
    RunConfig config;
    config.raw = root;
    config.model = parse_model(root);
    const std::string variant = string_or(root, "stark_variant", "main_text", "");
    if (variant == "main_text") {
        config.variant = StarkVariant::main_text;
    } else if (variant == "appendix") {
        config.variant = StarkVariant::appendix;
    } else {
        throw ConfigError("stark_variant: expected 'main_text' or 'appendix'");
    }
    const std::string map_kind = string_or(root, "map", "calibrated", "");
    if (map_kind == "calibrated") {
        config.calibrated_map = true;
    } else if (map_kind == "perturbative") {
        config.calibrated_map = false;
    } else {
        throw ConfigError("map: expected 'calibrated' or 'perturbative'");
    }
    if (root.contains("seed")) {
        if (!root.at("seed").is_number_integer()) throw ConfigError("seed: expected an integer");
        config.seed = root.at("seed").get<std::uint64_t>();
        config.seed_given = true;
    }
    config.workers = int_or(root, "workers", 0, "");
    if (config.workers < 0) throw ConfigError("workers: must be >= 0");
    config.output_dir = string_or(root, "output_dir", "", "");
    return config;
}

TwoLevelMap make_map(const RunConfig& config) {
    return config.calibrated_map ? TwoLevelMap::calibrated(config.model, std::nullopt, config.variant)
                                 : TwoLevelMap::perturbative(config.model, config.variant);
}

OpssSequence load_sequence(const RunConfig& config, const TwoLevelMap& map) {
    const json block = config.raw.value("sequence", json{{"baseline", true}});
    if (block.contains("baseline") && block.at("baseline").get<bool>()) {
        return baseline_sequence(config.model, map);
    }
    if (block.contains("file")) {
        const fs::path path = block.at("file").get<std::string>();
        if (!fs::exists(path)) {
            throw ConfigError("sequence.file: '" + path.string() + "' does not exist");
        }
        std::ifstream in(path);
        json j;
        in >> j;
        try {
            return sequence_from_json(j);
        } catch (const std::exception& e) {
            throw ConfigError("sequence.file: " + std::string(e.what()));
        }
    }
    if (block.contains("inline")) {
        try {
            return sequence_from_json(block.at("inline"));
        } catch (const std::exception& e) {
            throw ConfigError("sequence.inline: " + std::string(e.what()));
        }
    }
    throw ConfigError("sequence: expected 'baseline', 'file', or 'inline'");
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y%m%d-%H%M%S", &tm);
    return buf;
}

fs::path resolve_output_dir(const RunConfig& config, const std::string& cli_out) {
    if (!cli_out.empty()) return cli_out;
    if (!config.output_dir.empty()) return config.output_dir;
    const char* root = std::getenv("OPSS_OUT_ROOT");
    const fs::path base = root ? fs::path(root) : fs::path("runs");
    return base / (timestamp_utc() + "-" + config_hash(config.raw));
}

struct RunContext {
    RunConfig config;
    fs::path out_dir;
    std::vector<std::string> outputs;
    json flags;  // convergence flags and notes
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write_text(const std::string& name, const std::string& text) {
        atomic_write_text(out_dir / name, text);
        outputs.push_back(name);
    }
    void write_json(const std::string& name, const json& j) {
        atomic_write_json(out_dir / name, j);
        outputs.push_back(name);
    }
    void finish(const std::string& command) {
        json manifest;
        manifest["tool"] = "opss";
        manifest["version"] = kVersion;
        manifest["command"] = command;
        manifest["config"] = config.raw;
        manifest["outputs"] = outputs;
        manifest["flags"] = flags;
        manifest["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        atomic_write_json(out_dir / "manifest.json", manifest);
    }
};

RunContext make_context(const RunConfig& config, const std::string& cli_out) {
    RunContext ctx;
    ctx.config = config;
    ctx.out_dir = resolve_output_dir(config, cli_out);
    fs::create_directories(ctx.out_dir);
    return ctx;
}

void print_warnings(const Model& model) {
    for (const auto& warning : model.parameter_warnings()) {
        std::cerr << "warning: " << warning << "\n";
    }
}

// ---------------------------------------------------------------------------
// commands

int cmd_validate(const RunConfig& config) {
    // Full parse already happened; also resolve the pieces commands would use.
    if (config.raw.contains("sequence") && config.raw.at("sequence").contains("file")) {
        const fs::path path = config.raw.at("sequence").at("file").get<std::string>();
        if (!fs::exists(path)) {
            throw ConfigError("sequence.file: '" + path.string() + "' does not exist");
        }
    }
    std::cout << "config ok (model=" << config.model.tag() << ")\n";
    return 0;
}

int cmd_spectrum(const RunConfig& config, const std::string& cli_out) {
    const json block = config.raw.value("spectrum", json::object());
    const RatioRange defaults = default_ratio_range(config.model.kind());
    RatioRange range;
    range.lo = number_or(block, "ratio_min", defaults.lo, "spectrum");
    range.hi = number_or(block, "ratio_max", defaults.hi, "spectrum");
    range.points = int_or(block, "points", defaults.points, "spectrum");
    if (!(range.lo < range.hi) || range.points < 3) {
        throw ConfigError("spectrum: need ratio_min < ratio_max and points >= 3");
    }
    std::pair<int, int> pair = default_tracked_pair(config.model.kind());
    if (block.contains("pair")) {
        const auto p = block.at("pair").get<std::vector<int>>();
        if (p.size() != 2) throw ConfigError("spectrum.pair: expected [lower, upper]");
        pair = {p[0], p[1]};
    }
    const int keep = int_or(block, "keep_levels", 8, "spectrum");

    RunContext ctx = make_context(config, cli_out);
    print_warnings(config.model);

    const auto slices = spectrum_scan(config.model, range, pair, keep);
    std::ostringstream csv;
    write_spectrum_csv(csv, slices);
    ctx.write_text("spectrum.csv", csv.str());

    const auto crossing = find_avoided_crossing(config.model, range, pair);
    json report;
    report["model"] = config.model.tag();
    report["ratio"] = crossing.ratio;
    report["control_frequency"] = crossing.ratio * config.model.reference_frequency();
    report["gap"] = crossing.gap;
    report["pair"] = {crossing.tracked.first, crossing.tracked.second};
    ctx.write_json("crossing.json", report);
    ctx.flags["crossing_found"] = true;
    ctx.finish("spectrum");

    std::cout << "avoided crossing at ratio " << format_double(crossing.ratio) << " (gap "
              << format_double(crossing.gap) << ")\n"
              << "outputs in " << ctx.out_dir.string() << "\n";
    return 0;
}

int cmd_optimize(const RunConfig& config, const std::string& cli_out) {
    if (!config.seed_given) throw ConfigError("seed: required for optimize runs");
    const json block = config.raw.value("optimizer", json::object());

    const int segments = int_or(block, "segments", 7, "optimizer");
    if (segments < 1) throw ConfigError("optimizer.segments: must be >= 1");

    DeConfig de;
    de.population = int_or(block, "population", 100, "optimizer");
    de.max_iterations = int_or(block, "de_iterations", 1500, "optimizer");
    de.mutation_factor = number_or(block, "mutation_factor", 0.7, "optimizer");
    de.crossover_rate = number_or(block, "crossover_rate", 0.9, "optimizer");
    de.elite_pool_size = int_or(block, "elite_pool_size", 5, "optimizer");
    de.seed = config.seed;

    RefineConfig rc;
    rc.max_iterations = int_or(block, "refine_iterations", 3000, "optimizer");
    rc.gradient_step = number_or(block, "gradient_step", 1e-7, "optimizer");

    const json weights_block = block.value("weights", json::object());
    CostWeights weights;
    weights.w_b = number_or(weights_block, "w_b", 1.0, "optimizer.weights");
    weights.w_f = number_or(weights_block, "w_f", 500.0, "optimizer.weights");
    weights.w_r = number_or(weights_block, "w_r", 5.0, "optimizer.weights");
    weights.f_target = number_or(weights_block, "f_target", 0.9, "optimizer.weights");
    if (weights.w_b < 0 || weights.w_f < 0 || weights.w_r < 0) {
        throw ConfigError("optimizer.weights: weights must be >= 0");
    }

    const bool is_three_photon = config.model.kind() == ModelKind::three_photon;
    const json samples_block = block.value("samples", json::object());
    SampleSpec sample;
    sample.m = int_or(samples_block, "m", 51, "optimizer.samples");
    sample.eps_min = number_or(samples_block, "eps_min", is_three_photon ? -0.005 : -5e-8,
                               "optimizer.samples");
    sample.eps_max = number_or(samples_block, "eps_max", is_three_photon ? 0.005 : 5e-8,
                               "optimizer.samples");
    try {
        sample.validate();
        de.validate();
        rc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("optimizer: ") + e.what());
    }
    const ErrorAxis axis = error_axis_from_string(
        string_or(block, "axis", "control", "optimizer"));

    RunContext ctx = make_context(config, cli_out);
    print_warnings(config.model);

    const TwoLevelMap map = make_map(config);
    OpssObjective objective{config.model, map, sample, axis, weights};

    auto stage_sink = [&ctx](const json& stage) {
        atomic_write_json(ctx.out_dir / ("stage_" + stage.at("stage").get<std::string>() + ".json"),
                          stage);
    };
    const HybridResult result =
        hybrid_optimize(objective, segments, de, rc, nullptr, stage_sink);

    json seq_json = candidate_to_json(result.best, config.model.tag(), de.seed, weights, sample,
                                      axis);
    seq_json["physical"] = sequence_to_json(result.physical, config.model.tag());
    ctx.write_json("sequence.json", seq_json);
    ctx.write_json("optimizer_manifest.json", result.manifest);
    ctx.flags["best_cost"] = result.best.cost;
    ctx.finish("optimize");

    std::cout << "optimized N=" << segments << " sequence, cost "
              << format_double(result.best.cost) << "\n"
              << "outputs in " << ctx.out_dir.string() << "\n";
    return 0;
}

int cmd_scan(const RunConfig& config, const std::string& cli_out) {
    const json block = config.raw.value("scan", json::object());
    const bool is_three_photon = config.model.kind() == ModelKind::three_photon;
    const json grid_block = block.value("grid", json::object());
    const double extent1 =
        number_or(grid_block, "extent1", is_three_photon ? 0.01 : 1e-7, "scan.grid");
    const double extent2 =
        number_or(grid_block, "extent2", is_three_photon ? 0.01 : 1e-7, "scan.grid");
    const int n1 = int_or(grid_block, "n1", 41, "scan.grid");
    const int n2 = int_or(grid_block, "n2", 41, "scan.grid");
    if (n1 < 1 || n2 < 1) throw ConfigError("scan.grid: n1 and n2 must be >= 1");
    const double threshold = number_or(block, "threshold", 0.8, "scan");
    const std::string engine_name = string_or(block, "engine", "full", "scan");
    if (engine_name != "full" && engine_name != "effective") {
        throw ConfigError("scan.engine: expected 'full' or 'effective'");
    }
    const EvalEngine engine =
        engine_name == "full" ? EvalEngine::full_model : EvalEngine::effective;

    RunContext ctx = make_context(config, cli_out);
    print_warnings(config.model);

    const TwoLevelMap map = make_map(config);
    const OpssSequence seq = load_sequence(config, map);
    const GridSpec grid = GridSpec::symmetric(extent1, n1, extent2, n2);
    const FidelityLandscape land = scan_landscape(config.model, map, seq, grid, engine,
                                                  "N=" + std::to_string(seq.n_segments));

    std::ostringstream csv;
    write_landscape_csv(csv, land);
    ctx.write_text("landscape.csv", csv.str());

    json summary;
    summary["model"] = land.model_tag;
    summary["sequence"] = land.sequence_tag;
    summary["n_segments"] = seq.n_segments;
    summary["threshold"] = threshold;
    summary["radius"] = high_fidelity_radius(land, threshold);
    summary["engine"] = engine_name;
    summary["center_fidelity"] = land.fidelity(n1 / 2, n2 / 2);
    // Axis unit note: the Casimir landscapes are conventionally plotted in
    // units of 1e-5 percent (= 1e-7 fractional).
    summary["axis_unit"] = "fractional";
    if (!is_three_photon) summary["display_unit_hint"] = "1e-5 percent = 1e-7 fractional";
    ctx.write_json("radius.json", summary);
    ctx.finish("scan");

    std::cout << "high-fidelity radius (F>" << format_double(threshold)
              << "): " << format_double(summary["radius"].get<double>()) << "\n"
              << "outputs in " << ctx.out_dir.string() << "\n";
    return 0;
}

int cmd_stats(const RunConfig& config, const std::string& cli_out) {
    const json block = config.raw.value("stats", json::object());
    const bool is_three_photon = config.model.kind() == ModelKind::three_photon;
    std::vector<double> centers;
    if (block.contains("centers")) {
        centers = block.at("centers").get<std::vector<double>>();
    } else if (is_three_photon) {
        centers = {0.0, 0.001, 0.005, 0.01};
    } else {
        centers = {0.3e-7, 0.6e-7, 1.0e-7};
    }
    const int window_samples = int_or(block, "window_samples", 101, "stats");
    const std::string engine_name = string_or(block, "engine", "full", "stats");
    const EvalEngine engine =
        engine_name == "full" ? EvalEngine::full_model : EvalEngine::effective;

    std::vector<json> sources;
    if (block.contains("sequences")) {
        for (const auto& s : block.at("sequences")) sources.push_back(s);
    } else {
        sources.push_back(json{{"baseline", true}});
    }

    RunContext ctx = make_context(config, cli_out);
    print_warnings(config.model);
    const TwoLevelMap map = make_map(config);

    std::vector<std::tuple<std::string, int, std::string, WindowStats>> rows;
    for (const auto& source : sources) {
        RunConfig sub = config;
        sub.raw["sequence"] = source;
        const OpssSequence seq = load_sequence(sub, map);
        for (const ErrorAxis axis : {ErrorAxis::primary, ErrorAxis::control}) {
            for (const double center : centers) {
                const WindowStats stats =
                    window_stats(config.model, map, seq, axis, center, window_samples, engine);
                rows.emplace_back(config.model.tag(), seq.n_segments, to_string(axis), stats);
            }
        }
    }

    std::ostringstream csv;
    write_window_stats_csv(csv, rows);
    ctx.write_text("stats.csv", csv.str());
    ctx.finish("stats");
    std::cout << "wrote " << rows.size() << " stat rows\n"
              << "outputs in " << ctx.out_dir.string() << "\n";
    return 0;
}

int cmd_flux(const RunConfig& config, const std::string& cli_out) {
    const json block = config.raw.value("flux", json::object());
    DissipationConfig d;
    d.kappa = number_or(block, "kappa", 6e-5, "flux");
    d.gamma = number_or(block, "gamma", 6e-5, "flux");
    try {
        d.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("flux: ") + e.what());
    }
    MasterEqOptions options;
    options.n_samples = int_or(block, "time_samples", 201, "flux");
    options.steps_per_fast_period = int_or(block, "steps_per_fast_period", 50, "flux");
    options.track_positivity = block.value("track_positivity", true);
    std::vector<double> eps_values = block.contains("eps_values")
                                         ? block.at("eps_values").get<std::vector<double>>()
                                         : std::vector<double>{0.0};
    const ErrorAxis axis =
        error_axis_from_string(string_or(block, "axis", "control", "flux"));

    RunContext ctx = make_context(config, cli_out);
    print_warnings(config.model);
    const TwoLevelMap map = make_map(config);
    OpssSequence seq = load_sequence(config, map);
    if (seq.representation == ControlRep::detuning) seq = to_physical(seq, map);

    json meta;
    meta["model"] = config.model.tag();
    meta["kappa"] = d.kappa;
    meta["gamma"] = d.gamma;
    meta["n_segments"] = seq.n_segments;
    meta["total_time"] = seq.total_time;
    meta["axis"] = to_string(axis);
    meta["flux_definition"] = "Phi_out(t) = kappa Tr[rho X1^dag X1]; the figure label "
                              "'differential' in the source material is not defined there, the "
                              "flux is plotted directly";

    if (eps_values.size() == 1) {
        const FluxTrace trace = integrate_master_equation(
            config.model, seq, d, config.model.default_initial(), on_axis(axis, eps_values[0]),
            options);
        std::ostringstream csv;
        std::vector<std::string> labels;
        for (const int idx : trace.tracked) labels.push_back(config.model.state_label(idx));
        write_flux_trace_csv(csv, trace, labels);
        ctx.write_text("flux.csv", csv.str());
        meta["eps"] = eps_values[0];
        meta["final_trace_defect"] = trace.final_trace_defect;
        meta["min_eigenvalue"] = trace.min_eigenvalue;
    } else {
        const FluxLandscape land = flux_landscape(config.model, seq, d, axis, eps_values, options);
        std::ostringstream csv;
        write_flux_landscape_csv(csv, land);
        ctx.write_text("flux_landscape.csv", csv.str());
        meta["eps_values"] = eps_values;
    }
    ctx.write_json("flux_meta.json", meta);
    ctx.finish("flux");
    std::cout << "flux run complete\noutputs in " << ctx.out_dir.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"opss — multiphoton-resonance control workbench"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string model_override;
    int segments_override = -1;
    std::int64_t seed_override = -1;
    int workers_override = -1;

    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--model", model_override, "model override: three_photon | casimir");
    app.add_option("--segments", segments_override, "segment-count override for optimize");
    app.add_option("--seed", seed_override, "RNG seed override");
    app.add_option("--workers", workers_override, "worker thread count (0 = hardware)");

    auto* sub_spectrum = app.add_subcommand("spectrum", "ratio scan + avoided-crossing report");
    auto* sub_optimize = app.add_subcommand("optimize", "discover an OPSS via DE + refinement");
    auto* sub_scan = app.add_subcommand("scan", "2D fidelity landscape + high-fidelity radius");
    auto* sub_stats = app.add_subcommand("stats", "windowed fidelity statistics");
    auto* sub_flux = app.add_subcommand("flux", "open-system output photon flux");
    auto* sub_validate = app.add_subcommand("validate", "validate a configuration and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        json root = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            try {
                in >> root;
            } catch (const json::exception& e) {
                throw ConfigError("config: " + std::string(e.what()));
            }
        }
        // Flag precedence: flags > file > defaults.
        if (!model_override.empty()) root["model"]["kind"] = model_override;
        if (segments_override >= 0) root["optimizer"]["segments"] = segments_override;
        if (seed_override >= 0) root["seed"] = seed_override;
        if (workers_override >= 0) root["workers"] = workers_override;

        const RunConfig config = parse_config(root);
        set_default_workers(config.workers);

        if (sub_validate->parsed()) return cmd_validate(config);
        if (sub_spectrum->parsed()) return cmd_spectrum(config, out_dir);
        if (sub_optimize->parsed()) return cmd_optimize(config, out_dir);
        if (sub_scan->parsed()) return cmd_scan(config, out_dir);
        if (sub_stats->parsed()) return cmd_stats(config, out_dir);
        if (sub_flux->parsed()) return cmd_flux(config, out_dir);
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const TruncationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const NoCrossingError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const RangeError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
