// trichain_main.cpp — Command-line front end: single-point evaluation,
// phase-diagram sweeps, validation runs, preset listing.
//
// Exit codes: 0 success, 1 computation failure, 2 configuration error.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "trichain/entanglement.hpp"
#include "trichain/errors.hpp"
#include "trichain/sweep.hpp"
#include "trichain/validate.hpp"

using namespace trichain;
using nlohmann::json;

namespace {

json sigma_to_json(const Matrix6d& s) {
    json rows = json::array();
    for (int i = 0; i < 6; ++i) {
        json row = json::array();
        for (int j = 0; j < 6; ++j) row.push_back(s(i, j));
        rows.push_back(row);
    }
    return rows;
}

json report_to_json(const EntanglementReport& rep) {
    json bips;
    for (const BipartitionReport& b : rep.bipartitions) {
        bips[to_string(b.bipartition)] = {{"nu_min", b.nu_min},
                                          {"separable", b.separable},
                                          {"log_negativity", b.log_negativity},
                                          {"boundary", b.boundary}};
    }
    json j = {{"class", to_string(rep.cls)},
              {"bipartitions", bips},
              {"physicality_margin", rep.physicality_margin}};
    if (rep.certificate) {
        json gs = json::array();
        for (const auto& g : rep.certificate->gamma)
            gs.push_back({{g(0, 0), g(0, 1)}, {g(1, 0), g(1, 1)}});
        j["certificate"] = {{"margin", rep.certificate->margin},
                            {"modes", gs}};
    }
    return j;
}

int run_point(const PointParams& p, Engine engine, const ClassifySettings& cs,
              bool pretty) {
    json out;
    out["params"] = {{"omega_L", p.omega_L}, {"omega_C", p.omega_C},
                     {"omega_R", p.omega_R}, {"k", p.k},
                     {"T", p.T},             {"dT", p.dT},
                     {"gamma", p.gamma},     {"omega_c", p.omega_c}};
    out["engine"] = to_string(engine);

    bool agree = true;
    double dev = 0.0;
    const CovarianceMatrix sigma = point_covariance(p, engine, &agree, &dev);
    out["sigma"] = sigma_to_json(sigma.sigma);
    if (engine == Engine::Both) {
        out["cross_engine"] = {{"max_deviation", dev}, {"within_tolerance", agree}};
        try {
            out["sigma_residue"] =
                sigma_to_json(steady_covariance_residue(p.chain(), p.bath()).sigma);
        } catch (const std::exception& e) {
            out["sigma_residue"] = nullptr;
            out["cross_engine"]["residue_error"] = e.what();
        }
    }
    out["report"] = report_to_json(classify(sigma.sigma, cs));
    std::cout << (pretty ? out.dump(2) : out.dump()) << "\n";
    return 0;
}

int run_sweep_cmd(SweepConfig cfg) {
    cfg.validate();
    const PhaseDiagramGrid grid = run_sweep(cfg);
    write_csv(grid, cfg.out_csv);
    write_json_sidecar(grid, cfg.json_path());
    write_plot_script(grid, cfg.plot_path());
    std::fprintf(stderr, "sweep: %zu cells, %d failed, wrote %s %s %s\n",
                 grid.cells.size(), grid.failed_cells, cfg.out_csv.c_str(),
                 cfg.json_path().c_str(), cfg.plot_path().c_str());
    const double failed_fraction =
        static_cast<double>(grid.failed_cells) / grid.cells.size();
    return failed_fraction > 0.01 ? 1 : 0;
}

int run_validate(int samples, std::uint64_t seed) {
    const auto results = run_validation(samples, seed);
    bool all = true;
    std::printf("%-26s %-6s %s\n", "suite", "result", "detail");
    for (const SuiteResult& r : results) {
        std::printf("%-26s %-6s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stationary Gaussian states and tripartite entanglement "
                 "classes of a dissipative three-oscillator chain"};
    app.require_subcommand(1);

    // ---- point ----
    PointParams pp;
    std::string engine_str = "residue";
    ClassifySettings cls;
    bool pretty = false;
    double delta = std::nan("");
    auto* point = app.add_subcommand("point", "evaluate a single parameter point");
    point->add_option("--omega-L", pp.omega_L, "left mode frequency / Omega");
    point->add_option("--omega-C", pp.omega_C, "center mode frequency / Omega");
    point->add_option("--omega-R", pp.omega_R, "right mode frequency / Omega");
    point->add_option("--delta", delta, "center detuning; sets omega_C = 1 + delta");
    point->add_option("-k,--k", pp.k, "coupling k / (m Omega^2)");
    point->add_option("-T,--T", pp.T, "temperature 2 k_B T / (hbar Omega)");
    point->add_option("--dT", pp.dT, "gradient 2 k_B dT / (hbar Omega)");
    point->add_option("-g,--gamma", pp.gamma, "dissipation rate gamma / Omega");
    point->add_option("--omega-c", pp.omega_c, "Drude cutoff / Omega");
    point->add_option("-e,--engine", engine_str, "quadrature | residue | both");
    point->add_option("--sep-tol", cls.sep_tol, "PPT separability tolerance");
    point->add_option("--cert-restarts", cls.certificate.restarts,
                      "certificate search restarts");
    point->add_option("--cert-iterations", cls.certificate.iterations,
                      "iterations per restart");
    point->add_option("--seed", cls.certificate.seed, "certificate search seed");
    point->add_flag("--pretty", pretty, "indent JSON output");

    // ---- sweep ----
    auto* sweep = app.add_subcommand("sweep", "evaluate a phase-diagram grid");
    std::string preset_name, config_path;
    SweepConfig scfg;
    std::string ax1 = "k", ax2 = "T", sweep_engine;
    sweep->add_option("--preset", preset_name, "figure preset (see `preset list`)");
    sweep->add_option("--config", config_path, "key = value config file");
    sweep->add_option("--axis1", ax1, "first axis parameter (k|T|dT|delta|gamma)");
    sweep->add_option("--axis1-min", scfg.axis1.min, "");
    sweep->add_option("--axis1-max", scfg.axis1.max, "");
    sweep->add_option("--axis1-points", scfg.axis1.count, "");
    sweep->add_option("--axis2", ax2, "second axis parameter");
    sweep->add_option("--axis2-min", scfg.axis2.min, "");
    sweep->add_option("--axis2-max", scfg.axis2.max, "");
    sweep->add_option("--axis2-points", scfg.axis2.count, "");
    sweep->add_option("--engine", sweep_engine, "quadrature | residue | both");
    sweep->add_option("--out-csv", scfg.out_csv, "CSV output path");
    sweep->add_option("--out-json", scfg.out_json, "JSON sidecar path");
    sweep->add_option("--out-plot", scfg.out_plot, "plot script path");
    sweep->add_option("--workers", scfg.workers, "worker threads (0 = auto)");
    sweep->add_option("--seed", scfg.seed, "deterministic seed");
    sweep->add_option("--spot-fraction", scfg.cross_check_fraction,
                      "fraction of cells cross-checked with quadrature");
    sweep->add_option("--cert-restarts", scfg.classify_settings.certificate.restarts, "");
    sweep->add_option("--cert-iterations", scfg.classify_settings.certificate.iterations, "");
    double sk = std::nan(""), sT = std::nan(""), sdT = std::nan("");
    double sgamma = std::nan(""), swc = std::nan("");
    double swL = std::nan(""), swC = std::nan(""), swR = std::nan("");
    sweep->add_option("--k", sk, "fixed coupling");
    sweep->add_option("--T", sT, "fixed temperature ratio");
    sweep->add_option("--dT", sdT, "fixed gradient ratio");
    sweep->add_option("--gamma", sgamma, "fixed dissipation rate");
    sweep->add_option("--omega-c", swc, "fixed cutoff");
    sweep->add_option("--omega-L", swL, "");
    sweep->add_option("--omega-C", swC, "");
    sweep->add_option("--omega-R", swR, "");

    // ---- validate ----
    auto* val = app.add_subcommand("validate", "run the validation suites");
    int vsamples = 40;
    std::uint64_t vseed = 42;
    val->add_option("--samples", vsamples, "cross-engine sample count");
    val->add_option("--seed", vseed, "sampling seed");

    // ---- preset ----
    auto* preset = app.add_subcommand("preset", "figure preset utilities");
    auto* plist = preset->add_subcommand("list", "list available presets");
    preset->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (point->parsed()) {
            if (!std::isnan(delta)) pp.omega_C = units::Omega + delta;
            return run_point(pp, engine_from_string(engine_str), cls, pretty);
        }
        if (sweep->parsed()) {
            SweepConfig cfg;
            if (!preset_name.empty()) {
                const auto p = find_preset(preset_name);
                if (!p) throw ConfigError("unknown preset '" + preset_name + "'");
                cfg = p->config;
            } else if (!config_path.empty()) {
                cfg = parse_config_file(config_path);
            } else {
                cfg = scfg;
                cfg.axis1.param = axis_param_from_string(ax1);
                cfg.axis2.param = axis_param_from_string(ax2);
            }
            // explicit flags override the preset / config file
            for (const auto& [opt, apply] :
                 std::initializer_list<std::pair<const CLI::Option*,
                                                 std::function<void()>>>{
                     {sweep->get_option("--out-csv"), [&] { cfg.out_csv = scfg.out_csv; }},
                     {sweep->get_option("--out-json"), [&] { cfg.out_json = scfg.out_json; }},
                     {sweep->get_option("--out-plot"), [&] { cfg.out_plot = scfg.out_plot; }},
                     {sweep->get_option("--workers"), [&] { cfg.workers = scfg.workers; }},
                     {sweep->get_option("--seed"), [&] { cfg.seed = scfg.seed; }},
                     {sweep->get_option("--spot-fraction"),
                      [&] { cfg.cross_check_fraction = scfg.cross_check_fraction; }},
                     {sweep->get_option("--cert-restarts"),
                      [&] { cfg.classify_settings.certificate.restarts =
                                scfg.classify_settings.certificate.restarts; }},
                     {sweep->get_option("--cert-iterations"),
                      [&] { cfg.classify_settings.certificate.iterations =
                                scfg.classify_settings.certificate.iterations; }},
                     {sweep->get_option("--axis1-points"),
                      [&] { cfg.axis1.count = scfg.axis1.count; }},
                     {sweep->get_option("--axis2-points"),
                      [&] { cfg.axis2.count = scfg.axis2.count; }},
                     {sweep->get_option("--axis1-min"),
                      [&] { cfg.axis1.min = scfg.axis1.min; }},
                     {sweep->get_option("--axis1-max"),
                      [&] { cfg.axis1.max = scfg.axis1.max; }},
                     {sweep->get_option("--axis2-min"),
                      [&] { cfg.axis2.min = scfg.axis2.min; }},
                     {sweep->get_option("--axis2-max"),
                      [&] { cfg.axis2.max = scfg.axis2.max; }}}) {
                if (opt->count() > 0) apply();
            }
            if (!sweep_engine.empty()) cfg.engine = engine_from_string(sweep_engine);
            if (!std::isnan(sk)) cfg.fixed.k = sk;
            if (!std::isnan(sT)) cfg.fixed.T = sT;
            if (!std::isnan(sdT)) cfg.fixed.dT = sdT;
            if (!std::isnan(sgamma)) cfg.fixed.gamma = sgamma;
            if (!std::isnan(swc)) cfg.fixed.omega_c = swc;
            if (!std::isnan(swL)) cfg.fixed.omega_L = swL;
            if (!std::isnan(swC)) cfg.fixed.omega_C = swC;
            if (!std::isnan(swR)) cfg.fixed.omega_R = swR;
            return run_sweep_cmd(cfg);
        }
        if (plist->parsed()) {
            for (const Preset& p : presets()) {
                std::printf("%-10s axis1=%s [%g, %g] x%d%s  axis2=%s [%g, %g] x%d%s\n",
                            p.name.c_str(), to_string(p.config.axis1.param),
                            p.config.axis1.min, p.config.axis1.max,
                            p.config.axis1.count,
                            p.config.axis1.log_scale ? " (log)" : "",
                            to_string(p.config.axis2.param), p.config.axis2.min,
                            p.config.axis2.max, p.config.axis2.count,
                            p.config.axis2.log_scale ? " (log)" : "");
                std::printf("           %s\n", p.description.c_str());
            }
            return 0;
        }
        if (val->parsed()) return run_validate(vsamples, vseed);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ParameterError& e) {
        std::fprintf(stderr, "parameter error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
