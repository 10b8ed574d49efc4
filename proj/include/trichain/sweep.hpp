// sweep.hpp — Phase-diagram grids over figure-style parameter planes:
// configuration, presets, deterministic parallel evaluation, CSV/JSON
// output and plot-script emission.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "trichain/covariance.hpp"
#include "trichain/entanglement.hpp"
#include "trichain/errors.hpp"
#include "trichain/model.hpp"
#include "trichain/quadrature_engine.hpp"
#include "trichain/residue_engine.hpp"
#include "trichain/units.hpp"

namespace trichain {

enum class Engine { Quadrature, Residue, Both };

inline const char* to_string(Engine e) {
    switch (e) {
        case Engine::Quadrature: return "quadrature";
        case Engine::Residue: return "residue";
        case Engine::Both: return "both";
    }
    return "?";
}

inline Engine engine_from_string(const std::string& s) {
    if (s == "quadrature") return Engine::Quadrature;
    if (s == "residue") return Engine::Residue;
    if (s == "both") return Engine::Both;
    throw ConfigError("unknown engine '" + s + "' (quadrature|residue|both)");
}

// Sweepable parameters; all values are the dimensionless figure-axis ratios.
enum class AxisParam { K, T, DT, Delta, Gamma };

inline const char* to_string(AxisParam p) {
    switch (p) {
        case AxisParam::K: return "k";
        case AxisParam::T: return "T";
        case AxisParam::DT: return "dT";
        case AxisParam::Delta: return "delta";
        case AxisParam::Gamma: return "gamma";
    }
    return "?";
}

inline AxisParam axis_param_from_string(const std::string& s) {
    if (s == "k") return AxisParam::K;
    if (s == "T") return AxisParam::T;
    if (s == "dT") return AxisParam::DT;
    if (s == "delta") return AxisParam::Delta;
    if (s == "gamma") return AxisParam::Gamma;
    throw ConfigError("unknown axis parameter '" + s + "' (k|T|dT|delta|gamma)");
}

struct AxisSpec {
    AxisParam param = AxisParam::K;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_scale = false;

    double value(int i) const {
        if (count == 1) return min;
        const double t = static_cast<double>(i) / (count - 1);
        if (log_scale) return min * std::pow(max / min, t);
        return min + t * (max - min);
    }
};

// One evaluation point in figure-axis units. T is the axis ratio
// 2 k_B T / (hbar Omega); conversion to natural units happens here.
struct PointParams {
    double omega_L = 1.0, omega_C = 1.0, omega_R = 1.0;
    double k = 0.05;
    double T = 0.35;       // axis ratio
    double dT = 0.0;       // axis ratio, T_L - T_R
    double gamma = 1e-2;
    double omega_c = 50.0;

    ChainParams chain() const { return {omega_L, omega_C, omega_R, k}; }

    BathParams bath() const {
        const double Tn = units::temperature_from_ratio(T);
        const double dTn = units::temperature_from_ratio(dT);
        if (dTn == 0.0) return {Tn, Tn, Tn, gamma, omega_c};
        return BathParams::from_gradient(Tn, dTn, gamma, omega_c);
    }

    void apply(AxisParam p, double v) {
        switch (p) {
            case AxisParam::K: k = v; break;
            case AxisParam::T: T = v; break;
            case AxisParam::DT: dT = v; break;
            case AxisParam::Delta: omega_C = units::Omega + v; break;
            case AxisParam::Gamma: gamma = v; break;
        }
    }
};

struct SweepConfig {
    Engine engine = Engine::Residue;
    AxisSpec axis1, axis2;
    PointParams fixed;
    ClassifySettings classify_settings;
    double cross_check_fraction = 0.01;  // quadrature spot checks (engine=residue)
    double cross_tol_abs = 1e-8;
    double cross_tol_rel = 1e-6;
    std::string out_csv = "sweep.csv";
    std::string out_json;   // default: out_csv with .json extension
    std::string out_plot;   // default: plot_<csv stem>.py
    int workers = 0;        // 0 = hardware concurrency
    std::uint64_t seed = 1ull;
    std::string preset_name;

    void validate() const {
        if (axis1.param == axis2.param)
            throw ConfigError("sweep axes must reference distinct parameters");
        for (const AxisSpec* a : {&axis1, &axis2}) {
            if (!(std::isfinite(a->min) && std::isfinite(a->max)))
                throw ConfigError("axis range must be finite");
            if (a->count < 2) throw ConfigError("axis point count must be >= 2");
            if (!(a->min < a->max)) throw ConfigError("axis range must have min < max");
            if (a->log_scale && !(a->min > 0.0))
                throw ConfigError("log-scale axis requires min > 0");
        }
    }

    std::string json_path() const {
        if (!out_json.empty()) return out_json;
        const auto dot = out_csv.find_last_of('.');
        return (dot == std::string::npos ? out_csv : out_csv.substr(0, dot)) +
               ".json";
    }

    std::string plot_path() const {
        if (!out_plot.empty()) return out_plot;
        std::string stem = out_csv;
        const auto slash = stem.find_last_of('/');
        std::string dir =
            slash == std::string::npos ? "" : stem.substr(0, slash + 1);
        if (slash != std::string::npos) stem = stem.substr(slash + 1);
        const auto dot = stem.find_last_of('.');
        if (dot != std::string::npos) stem = stem.substr(0, dot);
        return dir + "plot_" + stem + ".py";
    }
};

struct CellResult {
    double a1 = 0.0, a2 = 0.0;
    bool ok = false;
    EntanglementClass cls = EntanglementClass::C5;
    std::array<double, 3> nu{};   // L|(CR), C|(LR), R|(LC)
    std::array<double, 3> en{};
    double phys_margin = 0.0;
    bool boundary = false;
    bool cross_checked = false;
    bool engines_agree = true;
    double cross_deviation = 0.0;
    double xp_diag_abs = 0.0;  // max |diag C_XP|, should vanish (stationarity)
    double xp_max_abs = 0.0;   // max |C_XP| entry, vanishes at equal temperatures
    std::string error;
};

struct PhaseDiagramGrid {
    SweepConfig config;
    std::vector<CellResult> cells;  // row-major, axis-1 fastest
    int failed_cells = 0;
    double max_cross_deviation = 0.0;

    const CellResult& at(int i1, int i2) const {
        return cells[static_cast<std::size_t>(i2) * config.axis1.count + i1];
    }
};

namespace detail_sweep {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline double cross_deviation(const Matrix6d& a, const Matrix6d& b,
                              double tol_abs, double tol_rel, bool* agree) {
    double worst = 0.0;
    *agree = true;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            const double d = std::abs(a(i, j) - b(i, j));
            const double s = std::max(std::abs(a(i, j)), std::abs(b(i, j)));
            worst = std::max(worst, d);
            if (d > std::max(tol_abs, tol_rel * s)) *agree = false;
        }
    return worst;
}

} // namespace detail_sweep

// Covariance for a single point with the requested engine. engine=Residue
// falls back to quadrature when the closed form refuses (degenerate roots);
// engine=Both returns the quadrature result (the authority) after checking
// agreement.
inline CovarianceMatrix point_covariance(const PointParams& p, Engine engine,
                                         bool* agree = nullptr,
                                         double* deviation = nullptr,
                                         double tol_abs = 1e-8,
                                         double tol_rel = 1e-6) {
    const ChainParams chain = p.chain();
    const BathParams bath = p.bath();
    if (agree) *agree = true;
    if (deviation) *deviation = 0.0;
    switch (engine) {
        case Engine::Quadrature:
            return steady_covariance_quadrature(chain, bath);
        case Engine::Residue:
            try {
                return steady_covariance_residue(chain, bath);
            } catch (const RootMultiplicityError&) {
                return steady_covariance_quadrature(chain, bath);
            } catch (const PhysicalityError&) {
                // excessive imaginary residue near degeneracies
                return steady_covariance_quadrature(chain, bath);
            } catch (const ParameterError&) {
                // zero-temperature baths: closed form undefined
                return steady_covariance_quadrature(chain, bath);
            }
        case Engine::Both: {
            const CovarianceMatrix q = steady_covariance_quadrature(chain, bath);
            CovarianceMatrix r;
            try {
                r = steady_covariance_residue(chain, bath);
            } catch (const RootMultiplicityError&) {
                return q;
            } catch (const PhysicalityError&) {
                return q;
            } catch (const ParameterError&) {
                return q;
            }
            bool ok = true;
            const double dev = detail_sweep::cross_deviation(q.sigma, r.sigma,
                                                             tol_abs, tol_rel, &ok);
            if (agree) *agree = ok;
            if (deviation) *deviation = dev;
            return q;
        }
    }
    throw ConfigError("point_covariance: bad engine");
}

inline CellResult evaluate_cell(const SweepConfig& cfg, int i1, int i2) {
    CellResult cell;
    cell.a1 = cfg.axis1.value(i1);
    cell.a2 = cfg.axis2.value(i2);
    PointParams p = cfg.fixed;
    p.apply(cfg.axis1.param, cell.a1);
    p.apply(cfg.axis2.param, cell.a2);

    const std::uint64_t cell_index =
        static_cast<std::uint64_t>(i2) * cfg.axis1.count + i1;
    try {
        Engine engine = cfg.engine;
        bool spot = false;
        if (engine == Engine::Residue && cfg.cross_check_fraction > 0.0) {
            const double u =
                static_cast<double>(detail_sweep::splitmix64(cfg.seed ^ cell_index)) /
                static_cast<double>(UINT64_MAX);
            spot = u < cfg.cross_check_fraction;
            if (spot) engine = Engine::Both;
        }
        bool agree = true;
        double dev = 0.0;
        const CovarianceMatrix sigma = point_covariance(
            p, engine, &agree, &dev, cfg.cross_tol_abs, cfg.cross_tol_rel);
        cell.cross_checked = engine == Engine::Both;
        cell.engines_agree = agree;
        cell.cross_deviation = dev;
        const Eigen::Matrix3d xp = sigma.xp();
        cell.xp_max_abs = xp.cwiseAbs().maxCoeff();
        for (int i = 0; i < 3; ++i)
            cell.xp_diag_abs = std::max(cell.xp_diag_abs, std::abs(xp(i, i)));

        ClassifySettings cs = cfg.classify_settings;
        cs.certificate.seed =
            detail_sweep::splitmix64(cfg.seed ^ (cell_index * 0x51ed2701ull));
        const EntanglementReport rep = classify(sigma.sigma, cs);
        cell.ok = true;
        cell.cls = rep.cls;
        for (int b = 0; b < 3; ++b) {
            cell.nu[b] = rep.bipartitions[b].nu_min;
            cell.en[b] = rep.bipartitions[b].log_negativity;
            cell.boundary = cell.boundary || rep.bipartitions[b].boundary;
        }
        if (rep.certificate &&
            std::abs(rep.certificate->margin) <= cs.certificate.found_tol)
            cell.boundary = true;
        cell.phys_margin = rep.physicality_margin;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
        cell.nu = {std::nan(""), std::nan(""), std::nan("")};
        cell.en = {std::nan(""), std::nan(""), std::nan("")};
        cell.phys_margin = std::nan("");
    }
    return cell;
}

// Evaluate the full grid. Cells are distributed over a bounded worker pool
// and gathered into deterministic row-major order (axis-1 fastest); output
// is identical for any worker count. TRICHAIN_MAX_WORKERS caps the pool.
inline PhaseDiagramGrid run_sweep(const SweepConfig& cfg) {
    cfg.validate();
    PhaseDiagramGrid grid;
    grid.config = cfg;
    const int n1 = cfg.axis1.count, n2 = cfg.axis2.count;
    grid.cells.resize(static_cast<std::size_t>(n1) * n2);

    int workers = cfg.workers > 0
                      ? cfg.workers
                      : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* cap = std::getenv("TRICHAIN_MAX_WORKERS")) {
        const int c = std::atoi(cap);
        if (c >= 1) workers = std::min(workers, c);
    }
    workers = std::min<int>(workers, n1 * n2);

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= grid.cells.size()) return;
            const int i1 = static_cast<int>(idx % n1);
            const int i2 = static_cast<int>(idx / n1);
            grid.cells[idx] = evaluate_cell(cfg, i1, i2);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    for (const CellResult& c : grid.cells) {
        if (!c.ok) ++grid.failed_cells;
        grid.max_cross_deviation =
            std::max(grid.max_cross_deviation, c.cross_deviation);
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace detail_sweep {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail_sweep

inline void write_csv(const PhaseDiagramGrid& grid, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open CSV output path: " + path);
    out << "axis1,axis2,class,nu_L,nu_C,nu_R,EN_L,EN_C,EN_R,phys_margin,boundary\n";
    for (const CellResult& c : grid.cells) {
        out << detail_sweep::fmt(c.a1) << ',' << detail_sweep::fmt(c.a2) << ',';
        out << (c.ok ? to_string(c.cls) : "ERROR");
        for (double v : c.nu) out << ',' << detail_sweep::fmt(v);
        for (double v : c.en) out << ',' << detail_sweep::fmt(v);
        out << ',' << detail_sweep::fmt(c.phys_margin);
        out << ',' << (c.boundary ? 1 : 0) << '\n';
    }
}

inline nlohmann::json config_to_json(const SweepConfig& cfg) {
    auto axis = [](const AxisSpec& a) {
        return nlohmann::json{{"param", to_string(a.param)},
                              {"min", a.min},
                              {"max", a.max},
                              {"count", a.count},
                              {"log_scale", a.log_scale}};
    };
    return nlohmann::json{
        {"engine", to_string(cfg.engine)},
        {"axis1", axis(cfg.axis1)},
        {"axis2", axis(cfg.axis2)},
        {"fixed",
         {{"omega_L", cfg.fixed.omega_L},
          {"omega_C", cfg.fixed.omega_C},
          {"omega_R", cfg.fixed.omega_R},
          {"k", cfg.fixed.k},
          {"T", cfg.fixed.T},
          {"dT", cfg.fixed.dT},
          {"gamma", cfg.fixed.gamma},
          {"omega_c", cfg.fixed.omega_c}}},
        {"tolerances",
         {{"sep_tol", cfg.classify_settings.sep_tol},
          {"boundary_band", cfg.classify_settings.boundary_band},
          {"cross_tol_abs", cfg.cross_tol_abs},
          {"cross_tol_rel", cfg.cross_tol_rel}}},
        {"certificate",
         {{"restarts", cfg.classify_settings.certificate.restarts},
          {"iterations", cfg.classify_settings.certificate.iterations},
          {"found_tol", cfg.classify_settings.certificate.found_tol}}},
        {"cross_check_fraction", cfg.cross_check_fraction},
        {"seed", cfg.seed},
        {"preset", cfg.preset_name},
        {"units",
         {{"temperature_axis", "2*k_B*T/(hbar*Omega)"},
          {"note", "hbar = k_B = m = 1; frequencies in units of Omega"}}}};
}

inline void write_json_sidecar(const PhaseDiagramGrid& grid,
                               const std::string& path) {
    nlohmann::json j;
    j["config"] = config_to_json(grid.config);
    j["csv"] = grid.config.out_csv;
    std::array<int, 6> counts{};
    for (const CellResult& c : grid.cells)
        if (c.ok) ++counts[static_cast<int>(c.cls)];
    j["summary"] = {
        {"cells", grid.cells.size()},
        {"failed_cells", grid.failed_cells},
        {"class_counts",
         {{"C1", counts[1]},
          {"C2", counts[2]},
          {"C3", counts[3]},
          {"C4", counts[4]},
          {"C5", counts[5]}}},
        {"max_cross_deviation", grid.max_cross_deviation}};
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open JSON output path: " + path);
    out << j.dump(2) << '\n';
}

inline void write_plot_script(const PhaseDiagramGrid& grid,
                              const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open plot script path: " + path);
    out << "#!/usr/bin/env python3\n"
           "# Render the entanglement-class map from the sweep CSV.\n"
           "import csv\n"
           "import sys\n"
           "import numpy as np\n"
           "import matplotlib\n"
           "matplotlib.use('Agg')\n"
           "import matplotlib.pyplot as plt\n"
           "from matplotlib.colors import ListedColormap, BoundaryNorm\n"
           "\n"
           "path = sys.argv[1] if len(sys.argv) > 1 else '"
        << grid.config.out_csv
        << "'\n"
           "a1, a2, cls = [], [], []\n"
           "codes = {'C1': 1, 'C2': 2, 'C3': 3, 'C4': 4, 'C5': 5, 'ERROR': 0}\n"
           "with open(path) as f:\n"
           "    for row in csv.DictReader(f):\n"
           "        a1.append(float(row['axis1']))\n"
           "        a2.append(float(row['axis2']))\n"
           "        cls.append(codes[row['class']])\n"
           "n1 = len(sorted(set(a1)))\n"
           "n2 = len(sorted(set(a2)))\n"
           "grid = np.array(cls).reshape(n2, n1)\n"
           "x = np.array(sorted(set(a1)))\n"
           "y = np.array(sorted(set(a2)))\n"
           "cmap = ListedColormap(['#888888', '#d73027', '#fc8d59', '#fee090',"
           " '#91bfdb', '#4575b4'])\n"
           "norm = BoundaryNorm(np.arange(-0.5, 6.0), cmap.N)\n"
           "plt.figure(figsize=(6, 5))\n"
           "plt.pcolormesh(x, y, grid, cmap=cmap, norm=norm, shading='nearest')\n"
           "cb = plt.colorbar(ticks=range(6))\n"
           "cb.ax.set_yticklabels(['ERR', 'C1', 'C2', 'C3', 'C4', 'C5'])\n"
           "plt.xlabel('"
        << to_string(grid.config.axis1.param)
        << "')\n"
           "plt.ylabel('"
        << to_string(grid.config.axis2.param)
        << "')\n"
           "out = path.rsplit('.', 1)[0] + '.png'\n"
           "plt.savefig(out, dpi=160, bbox_inches='tight')\n"
           "print('wrote', out)\n";
}

// ---------------------------------------------------------------------------
// Presets (axis extents the figure captions leave implicit are pinned here
// and echoed into the JSON sidecar).
// ---------------------------------------------------------------------------

struct Preset {
    std::string name;
    std::string description;
    SweepConfig config;
};

inline std::vector<Preset> presets() {
    std::vector<Preset> out;

    auto base = []() {
        SweepConfig c;
        c.fixed = PointParams{};  // resonant, k=0.05, T=0.35, gamma=0.01, wc=50
        return c;
    };

    {
        SweepConfig c = base();
        c.preset_name = "fig2";
        c.axis1 = {AxisParam::K, 0.1 / 60, 0.1, 60, false};
        c.axis2 = {AxisParam::T, 1.0 / 60, 1.0, 60, false};
        c.fixed.T = 0.35;
        c.out_csv = "fig2.csv";
        out.push_back({"fig2",
                       "classes vs coupling and temperature; resonant modes, "
                       "equal bath temperatures (gamma=0.01, omega_c=50)",
                       c});
    }
    {
        SweepConfig c = base();
        c.preset_name = "fig2-inset";
        c.axis1 = {AxisParam::K, 0.02 / 60, 0.02, 60, false};
        c.axis2 = {AxisParam::Gamma, 2e-3, 0.3, 60, true};
        c.fixed.T = 0.05;
        c.out_csv = "fig2_inset.csv";
        out.push_back({"fig2-inset",
                       "classes vs coupling and dissipation rate at "
                       "2 k_B T / (hbar Omega) = 0.05",
                       c});
    }
    {
        SweepConfig c = base();
        c.preset_name = "fig3a";
        c.axis1 = {AxisParam::Delta, 0.0, 3.0, 60, false};
        c.axis2 = {AxisParam::DT, -0.6, 0.6, 60, false};
        c.out_csv = "fig3a.csv";
        out.push_back({"fig3a",
                       "classes vs center-mode detuning and temperature "
                       "gradient at k=0.05, T=0.35",
                       c});
    }
    {
        SweepConfig c = base();
        c.preset_name = "fig3b";
        c.axis1 = {AxisParam::K, 0.1 / 60, 0.1, 60, false};
        c.axis2 = {AxisParam::DT, -0.6, 0.6, 60, false};
        c.out_csv = "fig3b.csv";
        out.push_back({"fig3b",
                       "classes vs coupling and temperature gradient; "
                       "resonant modes at T=0.35",
                       c});
    }
    {
        SweepConfig c = base();
        c.preset_name = "fig3c";
        c.axis1 = {AxisParam::K, 0.1 / 60, 0.1, 60, false};
        c.axis2 = {AxisParam::DT, -0.6, 0.6, 60, false};
        c.fixed.omega_L = 1.0;
        c.fixed.omega_C = 2.0;
        c.fixed.omega_R = 3.0;
        c.out_csv = "fig3c.csv";
        out.push_back({"fig3c",
                       "classes vs coupling and temperature gradient; "
                       "asymmetric modes (1, 2, 3) at T=0.35",
                       c});
    }
    return out;
}

inline std::optional<Preset> find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Config-file parsing: plain key = value lines, # comments.
// ---------------------------------------------------------------------------

inline void apply_config_entry(SweepConfig& cfg, const std::string& key,
                               const std::string& value) {
    auto to_double = [&](const std::string& s) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw ConfigError("bad numeric value '" + value + "' for key '" +
                              key + "'");
        }
    };
    auto to_int = [&](const std::string& s) {
        const double v = to_double(s);
        if (v != std::floor(v))
            throw ConfigError("expected integer for key '" + key + "'");
        return static_cast<long long>(v);
    };

    if (key == "engine") cfg.engine = engine_from_string(value);
    else if (key == "axis1") cfg.axis1.param = axis_param_from_string(value);
    else if (key == "axis1_min") cfg.axis1.min = to_double(value);
    else if (key == "axis1_max") cfg.axis1.max = to_double(value);
    else if (key == "axis1_points") cfg.axis1.count = static_cast<int>(to_int(value));
    else if (key == "axis1_log") cfg.axis1.log_scale = to_int(value) != 0;
    else if (key == "axis2") cfg.axis2.param = axis_param_from_string(value);
    else if (key == "axis2_min") cfg.axis2.min = to_double(value);
    else if (key == "axis2_max") cfg.axis2.max = to_double(value);
    else if (key == "axis2_points") cfg.axis2.count = static_cast<int>(to_int(value));
    else if (key == "axis2_log") cfg.axis2.log_scale = to_int(value) != 0;
    else if (key == "omega_L") cfg.fixed.omega_L = to_double(value);
    else if (key == "omega_C") cfg.fixed.omega_C = to_double(value);
    else if (key == "omega_R") cfg.fixed.omega_R = to_double(value);
    else if (key == "k") cfg.fixed.k = to_double(value);
    else if (key == "T") cfg.fixed.T = to_double(value);
    else if (key == "dT") cfg.fixed.dT = to_double(value);
    else if (key == "delta") cfg.fixed.omega_C = units::Omega + to_double(value);
    else if (key == "gamma") cfg.fixed.gamma = to_double(value);
    else if (key == "omega_c") cfg.fixed.omega_c = to_double(value);
    else if (key == "sep_tol") cfg.classify_settings.sep_tol = to_double(value);
    else if (key == "boundary_band") cfg.classify_settings.boundary_band = to_double(value);
    else if (key == "cert_restarts") cfg.classify_settings.certificate.restarts = static_cast<int>(to_int(value));
    else if (key == "cert_iterations") cfg.classify_settings.certificate.iterations = static_cast<int>(to_int(value));
    else if (key == "cross_check_fraction") cfg.cross_check_fraction = to_double(value);
    else if (key == "out_csv") cfg.out_csv = value;
    else if (key == "out_json") cfg.out_json = value;
    else if (key == "out_plot") cfg.out_plot = value;
    else if (key == "workers") cfg.workers = static_cast<int>(to_int(value));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(value));
    else throw ConfigError("unknown config key '" + key + "'");
}

inline SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    SweepConfig cfg;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        apply_config_entry(cfg, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
    }
    return cfg;
}

} // namespace trichain
