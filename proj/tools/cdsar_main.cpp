// Command-line front end; all numerics go through the shared-library C API.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cdsar/cdsar.h"
#include "cli_config.hpp"
#include "cli_report.hpp"

namespace {

using cdsar_cli::ConfigError;
using cdsar_cli::dump_canonical;
using cdsar_cli::fmt_double;
using cdsar_cli::ojson;
using cdsar_cli::RunConfig;

constexpr double kPi = 3.14159265358979323846;

// Library numeric failure; CLI maps this to exit code 3.
class NumericFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void check(cdsar_status st) {
    if (st == CDSAR_OK) return;
    const std::string msg = cdsar_last_error();
    if (st == CDSAR_INVALID_ARGUMENT || st == CDSAR_IO_ERROR) throw ConfigError(msg);
    throw NumericFailure(msg);
}

struct DatasetGuard {
    cdsar_dataset* ptr = nullptr;
    ~DatasetGuard() { cdsar_dataset_free(ptr); }
};

// Output destination: empty or "-" means standard output.
class Sink {
public:
    explicit Sink(const std::string& path) : path_(path) {
        if (!path.empty() && path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        os().flush();
        if (!os()) throw ConfigError("write failed: '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

std::vector<double> grid(double lo, double hi, int steps) {
    if (steps < 1) throw ConfigError("grid needs at least one step");
    if (steps == 1) return {lo};
    std::vector<double> g(steps);
    for (int k = 0; k < steps; ++k) g[k] = lo + (hi - lo) * k / (steps - 1);
    return g;
}

// Options shared by every subcommand; config is loaded lazily so commands
// that take no config still honor --seed/--threads.
struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> threads;

    RunConfig load() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : cdsar_cli::load_config_file(config_path);
        if (seed) cfg.master_seed = *seed;
        if (threads) cfg.threads = *threads;
        return cfg;
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--config", c.config_path, "configuration file (key = value sections)");
    sub->add_option("--seed", c.seed, "master seed override");
    sub->add_option("--threads", c.threads, "worker threads; <= 0 uses all cores");
}

double pi_value(const std::string& text) { return cdsar_cli::parse_pi_double(text); }

cdsar_model truth_value(const std::string& text) {
    if (text == "s") return CDSAR_S_MODEL;
    if (text == "t") return CDSAR_T_MODEL;
    throw ConfigError("truth must be 's' or 't'");
}

// Inverse of the synthesizer's layout: offsets on the streak are strictly
// increasing multiples of pi; control pairs trail at a constant zeta_max.
std::size_t infer_n_streak(const std::vector<double>& zetas) {
    auto on_streak = [](double z) {
        const double m = z / kPi;
        return std::fabs(m - std::round(m)) <= 1e-9 * std::max(1.0, std::fabs(m));
    };
    std::size_t k = 0;
    while (k < zetas.size() && on_streak(zetas[k]) &&
           (k == 0 || zetas[k] > zetas[k - 1] + 1e-12))
        ++k;
    return k;
}

// ---- phi-table ----

void cmd_phi_table(const std::vector<double>& v1s, const std::vector<double>& v2s,
                   const std::string& out) {
    Sink sink(out);
    sink.os() << "v1,v2,abs_phi,re_phi,im_phi\n";
    for (double v1 : v1s)
        for (double v2 : v2s) {
            double re = 0.0;
            double im = 0.0;
            check(cdsar_phi(v1, v2, &re, &im));
            const double abs = std::hypot(re, im);
            sink.os() << cdsar_cli::csv_row({fmt_double(v1), fmt_double(v2), fmt_double(abs),
                                             fmt_double(re), fmt_double(im)})
                      << "\n";
        }
    sink.finish();
}

// ---- kernel-slice ----

void cmd_kernel_slice(const RunConfig& cfg, const std::vector<double>& etas,
                      const std::vector<double>& zetas, double psi, const std::string& out) {
    const cdsar_radar_config radar = cdsar_cli::radar_of(cfg);
    Sink sink(out);
    sink.os() << "eta,zeta,psi,abs_w,re_w,im_w\n";
    for (double eta : etas)
        for (double zeta : zetas) {
            double re = 0.0;
            double im = 0.0;
            check(cdsar_kernel(&radar, eta, zeta, psi, &re, &im));
            sink.os() << cdsar_cli::csv_row({fmt_double(eta), fmt_double(zeta), fmt_double(psi),
                                             fmt_double(std::hypot(re, im)), fmt_double(re),
                                             fmt_double(im)})
                      << "\n";
        }
    sink.finish();
}

// ---- moments ----

void cmd_moments(const RunConfig& cfg, int steps, const std::string& out) {
    const cdsar_scene scene = cdsar_cli::scene_of(cfg);
    Sink sink(out);
    sink.os() << "zeta"
                 ",bg_g_s,bg_g_t,bg_abs_h"
                 ",delayed_g_s,delayed_g_t,delayed_abs_h"
                 ",streak_g_s,streak_g_t,streak_abs_h"
                 ",noise_g_s,noise_g_t,noise_abs_h"
                 ",s_a,s_b,s_c,s_d,t_a,t_b,t_c,t_d\n";
    const cdsar_kind kinds[4] = {CDSAR_BACKGROUND, CDSAR_DELAYED, CDSAR_STREAK, CDSAR_NOISE};
    for (double zeta : grid(0.0, cfg.zeta_max, steps)) {
        std::vector<std::string> row{fmt_double(zeta)};
        for (cdsar_kind kind : kinds) {
            double gs = 0.0;
            double gt = 0.0;
            double hre = 0.0;
            double him = 0.0;
            check(cdsar_unit_moments(kind, zeta, cfg.kappa, &gs, &gt, &hre, &him));
            row.push_back(fmt_double(gs));
            row.push_back(fmt_double(gt));
            row.push_back(fmt_double(std::hypot(hre, him)));
        }
        for (cdsar_model model : {CDSAR_S_MODEL, CDSAR_T_MODEL}) {
            double m[4];
            check(cdsar_pair_moments(model, 1, zeta, cfg.kappa, &scene.intensities, m));
            for (double v : m) row.push_back(fmt_double(v));
        }
        sink.os() << cdsar_cli::csv_row(row) << "\n";
    }
    sink.finish();
}

// ---- profile ----

void cmd_profile(const RunConfig& cfg, int steps, const std::string& out) {
    const cdsar_scene scene = cdsar_cli::scene_of(cfg);
    Sink sink(out);
    sink.os() << "zeta,es_s,et_s,es_t,et_t\n";
    for (double zeta : grid(0.0, cfg.zeta_max, steps)) {
        double ms[4];
        double mt[4];
        check(cdsar_pair_moments(CDSAR_S_MODEL, 1, zeta, cfg.kappa, &scene.intensities, ms));
        check(cdsar_pair_moments(CDSAR_T_MODEL, 1, zeta, cfg.kappa, &scene.intensities, mt));
        sink.os() << cdsar_cli::csv_row({fmt_double(zeta), fmt_double(ms[0]), fmt_double(ms[1]),
                                         fmt_double(mt[0]), fmt_double(mt[1])})
                  << "\n";
    }
    sink.finish();
}

// ---- simulate ----

void cmd_simulate(const RunConfig& cfg, std::uint64_t n, const std::string& out) {
    const cdsar_scene scene = cdsar_cli::scene_of(cfg);
    Sink sink(out);
    for (std::uint64_t trial = 0; trial < n; ++trial) {
        DatasetGuard ds;
        check(cdsar_synthesize(&scene, cfg.master_seed, trial, cfg.quad_tol, &ds.ptr));
        sink.os() << cdsar_cli::dataset_json(cfg.master_seed, scene.truth, ds.ptr).dump() << "\n";
    }
    sink.finish();
}

// ---- discriminate ----

void cmd_discriminate(const RunConfig& cfg, const std::string& input, const std::string& out) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!input.empty() && input != "-") {
        file.open(input, std::ios::binary);
        if (!file) throw ConfigError("cannot open input file '" + input + "'");
        in = &file;
    }
    Sink sink(out);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(*in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ojson rec;
        try {
            rec = ojson::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("dataset line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!rec.contains("zetas") || !rec.contains("pairs"))
            throw ConfigError("dataset line " + std::to_string(lineno) +
                              ": missing 'zetas' or 'pairs'");
        std::vector<double> zetas;
        std::vector<double> flat;
        try {
            zetas = rec["zetas"].get<std::vector<double>>();
            for (const auto& pair : rec["pairs"]) {
                const auto q = pair.get<std::vector<double>>();
                if (q.size() != 4) throw ConfigError("each pair needs 4 components");
                flat.insert(flat.end(), q.begin(), q.end());
            }
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("dataset line " + std::to_string(lineno) + ": " + e.what());
        }
        if (zetas.empty() || flat.size() != 4 * zetas.size())
            throw ConfigError("dataset line " + std::to_string(lineno) +
                              ": zetas/pairs size mismatch");
        DatasetGuard ds;
        check(cdsar_dataset_create(zetas.data(), flat.data(), zetas.size(),
                                   infer_n_streak(zetas), cfg.kappa, cfg.quad_tol, &ds.ptr));
        cdsar_decision dec;
        check(cdsar_discriminate(ds.ptr, &dec));
        sink.os() << cdsar_cli::decision_json(dec).dump() << "\n";
    }
    sink.finish();
}

// ---- montecarlo ----

void cmd_montecarlo(const RunConfig& cfg, const std::string& out) {
    const cdsar_scene scene = cdsar_cli::scene_of(cfg);
    const auto t0 = std::chrono::steady_clock::now();
    cdsar_table table;
    check(cdsar_run_ensemble(&scene, cfg.n_img, cfg.master_seed, cfg.threads, cfg.quad_tol,
                             &table));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Sink sink(out);
    sink.os() << dump_canonical(cdsar_cli::report_json(scene, cfg.n_img, cfg.master_seed, table));
    sink.finish();
    std::cerr << cdsar_cli::human_table(table, wall);
}

// ---- sweep ----

cdsar_sweep_param sweep_param_of(const std::string& name) {
    if (name == "zeta_max") return CDSAR_SWEEP_ZETA_MAX;
    if (name == "zeta_min") return CDSAR_SWEEP_ZETA_MIN;
    if (name == "q_st") return CDSAR_SWEEP_TARGET_SHARE;
    throw ConfigError("unknown sweep parameter '" + name + "' (zeta_max, zeta_min, q_st)");
}

std::vector<double> parse_value_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) values.push_back(cdsar_cli::parse_pi_double(item));
    if (values.empty()) throw ConfigError("empty sweep value list");
    return values;
}

void cmd_sweep(const RunConfig& cfg, const std::string& param, const std::string& values_text,
               const std::string& trend_csv, const std::string& out) {
    const cdsar_scene base = cdsar_cli::scene_of(cfg);
    const auto values = parse_value_list(values_text);
    std::vector<cdsar_table> tables(values.size());
    const auto t0 = std::chrono::steady_clock::now();
    check(cdsar_sweep(&base, sweep_param_of(param), values.data(), values.size(), cfg.n_img,
                      cfg.master_seed, cfg.threads, cfg.quad_tol, tables.data()));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    ojson j;
    j["parameter"] = param;
    j["base_scene"] = cdsar_cli::scene_json(base);
    j["n_img"] = cfg.n_img;
    j["master_seed"] = cfg.master_seed;
    ojson points = ojson::array();
    for (std::size_t k = 0; k < values.size(); ++k) {
        ojson p;
        p["value"] = values[k];
        p["table"] = cdsar_cli::table_json(tables[k]);
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    Sink sink(out);
    sink.os() << dump_canonical(j);
    sink.finish();

    if (!trend_csv.empty()) {
        Sink trend(trend_csv);
        trend.os() << "param_value,r_s,r_t,metric,std\n";
        for (std::size_t k = 0; k < values.size(); ++k)
            trend.os() << cdsar_cli::csv_row({fmt_double(values[k]), fmt_double(tables[k].r_s),
                                              fmt_double(tables[k].r_t),
                                              std::to_string(tables[k].metric),
                                              fmt_double(tables[k].metric_std)})
                       << "\n";
        trend.finish();
    }
    for (std::size_t k = 0; k < values.size(); ++k)
        std::cerr << param << " = " << fmt_double(values[k]) << "\n"
                  << cdsar_cli::human_table(tables[k], wall / static_cast<double>(values.size()));
}

// ---- reproduce-paper ----

std::string kappa_tag(double kappa) { return kappa == 0.4 ? "04" : "1"; }

RunConfig reproduction_base(char run, double kappa) {
    RunConfig cfg; // generic defaults
    cfg.kappa = kappa;
    // The target-share sweep couples the noise power so that noise keeps a
    // fixed 0.1 share of the total: p_n = 0.1 / (0.9 - q_st).
    if (run == 'C') cfg.p_n = 0.1 / (0.9 - cfg.q_st);
    return cfg;
}

void cmd_reproduce(const RunConfig& cfg, const std::string& outdir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(outdir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + outdir + "'");

    ojson summary_rows = ojson::array();
    bool all_ok = true;
    auto write_file = [&](const std::string& name, const ojson& j) {
        Sink sink(outdir + "/" + name);
        sink.os() << dump_canonical(j);
        sink.finish();
    };

    std::cout << "run kappa parameter        value      metric published delta band\n";
    for (const auto& sw : cdsar_cli::kPublishedSweeps) {
        for (double kappa : cdsar_cli::kPublishedKappas) {
            RunConfig base_cfg = reproduction_base(sw.run, kappa);
            base_cfg.master_seed = cfg.master_seed;
            const cdsar_scene base = cdsar_cli::scene_of(base_cfg);
            const std::uint64_t run_seed =
                cdsar_derived_seed(cfg.master_seed, cdsar_cli::reproduction_salt(sw.run, kappa));
            cdsar_table tables[3];
            check(cdsar_sweep(&base, sweep_param_of(sw.parameter), sw.values, 3, cfg.n_img,
                              run_seed, cfg.threads, cfg.quad_tol, tables));
            const int* published = kappa == 0.4 ? sw.published_k04 : sw.published_k10;

            ojson points = ojson::array();
            bool trend_ok = true;
            for (int k = 0; k < 3; ++k) {
                const int delta = tables[k].metric - published[k];
                const bool within = std::abs(delta) <= cdsar_cli::kMetricBand;
                all_ok = all_ok && within;
                if (k > 0) {
                    const bool step_ok = sw.decreasing ? tables[k].metric <= tables[k - 1].metric
                                                       : tables[k].metric >= tables[k - 1].metric;
                    trend_ok = trend_ok && step_ok;
                }
                ojson p;
                p["value"] = sw.values[k];
                p["published"] = published[k];
                p["table"] = cdsar_cli::table_json(tables[k]);
                p["delta"] = delta;
                p["within_band"] = within;
                points.push_back(std::move(p));

                ojson row;
                row["run"] = std::string(1, sw.run);
                row["kappa"] = kappa;
                row["parameter"] = sw.parameter;
                row["value"] = sw.values[k];
                row["metric"] = tables[k].metric;
                row["published"] = published[k];
                row["delta"] = delta;
                row["within_band"] = within;
                summary_rows.push_back(std::move(row));

                char buf[160];
                std::snprintf(buf, sizeof(buf), "%c   %-5g %-16s %-10.6g %3d    %3d       %+3d   %s\n",
                              sw.run, kappa, sw.parameter, sw.values[k], tables[k].metric,
                              published[k], delta, within ? "ok" : "OUT");
                std::cout << buf;
            }
            all_ok = all_ok && trend_ok;

            ojson j;
            j["run"] = std::string(1, sw.run);
            j["kappa"] = kappa;
            j["parameter"] = sw.parameter;
            j["n_img"] = cfg.n_img;
            j["master_seed"] = cfg.master_seed;
            j["run_seed"] = run_seed;
            j["points"] = std::move(points);
            j["trend"] = sw.decreasing ? "decreasing" : "increasing";
            j["trend_ok"] = trend_ok;
            write_file(std::string("run_") + sw.run + "_kappa" + kappa_tag(kappa) + ".json", j);
        }
    }

    // Control-pair count study: metric shift vs the n_hom = 15 baseline.
    for (double kappa : cdsar_cli::kPublishedKappas) {
        RunConfig base_cfg = reproduction_base('D', kappa);
        const std::uint64_t run_seed =
            cdsar_derived_seed(cfg.master_seed, cdsar_cli::reproduction_salt('D', kappa));
        cdsar_table tables[3];
        for (int k = 0; k < 3; ++k) {
            RunConfig point_cfg = base_cfg;
            point_cfg.n_hom = static_cast<std::uint64_t>(cdsar_cli::kRunDNHom[k]);
            const cdsar_scene scene = cdsar_cli::scene_of(point_cfg);
            check(cdsar_run_ensemble(&scene, cfg.n_img,
                                     cdsar_derived_seed(run_seed, static_cast<std::uint64_t>(k)),
                                     cfg.threads, cfg.quad_tol, &tables[k]));
        }
        const cdsar_table& baseline = tables[1];
        ojson points = ojson::array();
        bool within_all = true;
        for (int k = 0; k < 3; ++k) {
            const int delta = tables[k].metric - baseline.metric;
            const double bound =
                cdsar_cli::kRunDBound +
                2.0 * std::sqrt(tables[k].metric_std * tables[k].metric_std +
                                baseline.metric_std * baseline.metric_std);
            const bool within = k == 1 || std::abs(delta) <= bound;
            within_all = within_all && within;
            ojson p;
            p["value"] = cdsar_cli::kRunDNHom[k];
            p["table"] = cdsar_cli::table_json(tables[k]);
            p["delta_vs_baseline"] = delta;
            p["bound"] = bound;
            p["within"] = within;
            points.push_back(std::move(p));

            ojson row;
            row["run"] = "D";
            row["kappa"] = kappa;
            row["parameter"] = "n_hom";
            row["value"] = cdsar_cli::kRunDNHom[k];
            row["metric"] = tables[k].metric;
            row["delta_vs_baseline"] = delta;
            row["within_band"] = within;
            summary_rows.push_back(std::move(row));

            char buf[160];
            std::snprintf(buf, sizeof(buf), "D   %-5g %-16s %-10.6g %3d    (vs 15)   %+3d   %s\n",
                          kappa, "n_hom", cdsar_cli::kRunDNHom[k], tables[k].metric, delta,
                          within ? "ok" : "OUT");
            std::cout << buf;
        }
        all_ok = all_ok && within_all;
        ojson j;
        j["run"] = "D";
        j["kappa"] = kappa;
        j["parameter"] = "n_hom";
        j["n_img"] = cfg.n_img;
        j["master_seed"] = cfg.master_seed;
        j["run_seed"] = run_seed;
        j["points"] = std::move(points);
        j["within"] = within_all;
        write_file(std::string("run_D_kappa") + kappa_tag(kappa) + ".json", j);
    }

    ojson summary;
    summary["master_seed"] = cfg.master_seed;
    summary["n_img"] = cfg.n_img;
    summary["band"] = cdsar_cli::kMetricBand;
    summary["rows"] = std::move(summary_rows);
    summary["all_within_band"] = all_ok;
    write_file("summary.json", summary);
    std::cout << (all_ok ? "all rows within the acceptance band\n"
                         : "some rows fall outside the acceptance band\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coordinate-delay SAR ambiguity-pair statistics toolkit"};
    app.require_subcommand(1);

    Common common;
    std::string output;
    std::string out_default_stdout;

    // phi-table
    auto* phi_cmd = app.add_subcommand("phi-table", "aperture factor Phi on a (v1, v2) grid (CSV)");
    std::string v1_min = "0", v1_max = "5", v2_min = "0", v2_max = "50";
    int v1_steps = 51, v2_steps = 201;
    add_common(phi_cmd, common);
    phi_cmd->add_option("--v1-min", v1_min);
    phi_cmd->add_option("--v1-max", v1_max);
    phi_cmd->add_option("--v1-steps", v1_steps);
    phi_cmd->add_option("--v2-min", v2_min);
    phi_cmd->add_option("--v2-max", v2_max);
    phi_cmd->add_option("--v2-steps", v2_steps);
    phi_cmd->add_option("--output", output, "CSV path; '-' = stdout");
    phi_cmd->callback([&] {
        cmd_phi_table(grid(pi_value(v1_min), pi_value(v1_max), v1_steps),
                      grid(pi_value(v2_min), pi_value(v2_max), v2_steps), output);
    });

    // kernel-slice
    auto* kernel_cmd =
        app.add_subcommand("kernel-slice", "point-spread kernel |W| on an (eta, zeta) grid (CSV)");
    std::string eta_min = "-2pi", eta_max = "2pi", z_min = "-2pi", z_max = "2pi", psi = "0";
    int eta_steps = 81, z_steps = 81;
    add_common(kernel_cmd, common);
    kernel_cmd->add_option("--eta-min", eta_min);
    kernel_cmd->add_option("--eta-max", eta_max);
    kernel_cmd->add_option("--eta-steps", eta_steps);
    kernel_cmd->add_option("--zeta-min", z_min);
    kernel_cmd->add_option("--zeta-max", z_max);
    kernel_cmd->add_option("--zeta-steps", z_steps);
    kernel_cmd->add_option("--psi", psi, "fixed delay offset");
    kernel_cmd->add_option("--output", output, "CSV path; '-' = stdout");
    kernel_cmd->callback([&] {
        cmd_kernel_slice(common.load(), grid(pi_value(eta_min), pi_value(eta_max), eta_steps),
                         grid(pi_value(z_min), pi_value(z_max), z_steps), pi_value(psi), output);
    });

    // moments
    auto* moments_cmd =
        app.add_subcommand("moments", "per-kind unit moments and model moments along the streak (CSV)");
    int moments_steps = 121;
    add_common(moments_cmd, common);
    moments_cmd->add_option("--steps", moments_steps, "points on [0, zeta_max]");
    moments_cmd->add_option("--output", output, "CSV path; '-' = stdout");
    moments_cmd->callback([&] { cmd_moments(common.load(), moments_steps, output); });

    // profile
    auto* profile_cmd =
        app.add_subcommand("profile", "expected S/T intensity profiles for both models (CSV)");
    int profile_steps = 121;
    add_common(profile_cmd, common);
    profile_cmd->add_option("--steps", profile_steps, "points on [0, zeta_max]");
    profile_cmd->add_option("--output", output, "CSV path; '-' = stdout");
    profile_cmd->callback([&] { cmd_profile(common.load(), profile_steps, output); });

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "synthesize datasets as JSON lines");
    std::uint64_t sim_n = 1;
    std::optional<std::string> sim_truth;
    add_common(simulate_cmd, common);
    simulate_cmd->add_option("--n", sim_n, "number of datasets (trials 0..n-1)");
    simulate_cmd->add_option("--truth", sim_truth, "generating model: s | t");
    simulate_cmd->add_option("--output", output, "JSONL path; '-' = stdout");
    simulate_cmd->callback([&] {
        RunConfig cfg = common.load();
        if (sim_truth) cfg.truth = truth_value(*sim_truth);
        cmd_simulate(cfg, sim_n, output);
    });

    // discriminate
    auto* disc_cmd =
        app.add_subcommand("discriminate", "classify JSON-line datasets; one decision per line");
    std::string disc_input = "-";
    std::optional<std::string> disc_kappa;
    add_common(disc_cmd, common);
    disc_cmd->add_option("--input", disc_input, "JSONL path; '-' = stdin");
    disc_cmd->add_option("--kappa", disc_kappa, "aperture parameter of the datasets");
    disc_cmd->add_option("--output", output, "JSONL path; '-' = stdout");
    disc_cmd->callback([&] {
        RunConfig cfg = common.load();
        if (disc_kappa) cfg.kappa = pi_value(*disc_kappa);
        cdsar_cli::validate(cfg);
        cmd_discriminate(cfg, disc_input, output);
    });

    // montecarlo
    auto* mc_cmd = app.add_subcommand("montecarlo", "classification error ensemble (JSON + table)");
    std::optional<std::uint64_t> mc_n_img;
    add_common(mc_cmd, common);
    mc_cmd->add_option("--n-img", mc_n_img, "images per true model");
    mc_cmd->add_option("--output", output, "JSON path; '-' = stdout");
    mc_cmd->callback([&] {
        RunConfig cfg = common.load();
        if (mc_n_img) cfg.n_img = *mc_n_img;
        cdsar_cli::validate(cfg);
        cmd_montecarlo(cfg, output);
    });

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "ensemble per parameter value (JSON, CSV trend)");
    std::string sweep_par, sweep_values, trend_csv;
    std::optional<std::uint64_t> sweep_n_img;
    add_common(sweep_cmd, common);
    sweep_cmd->add_option("--param", sweep_par, "zeta_max | zeta_min | q_st")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values; 'pi' suffix allowed")
        ->required();
    sweep_cmd->add_option("--n-img", sweep_n_img, "images per true model");
    sweep_cmd->add_option("--trend-csv", trend_csv, "also write the trend as CSV");
    sweep_cmd->add_option("--output", output, "JSON path; '-' = stdout");
    sweep_cmd->callback([&] {
        RunConfig cfg = common.load();
        if (sweep_n_img) cfg.n_img = *sweep_n_img;
        cdsar_cli::validate(cfg);
        cmd_sweep(cfg, sweep_par, sweep_values, trend_csv, output);
    });

    // reproduce-paper
    auto* rp_cmd = app.add_subcommand(
        "reproduce-paper", "run the published sweeps at kappa 0.4 and 1; write reports + summary");
    std::string rp_dir = "reproduce-out";
    std::optional<std::uint64_t> rp_n_img;
    add_common(rp_cmd, common);
    rp_cmd->add_option("--output-dir", rp_dir, "report directory");
    rp_cmd->add_option("--n-img", rp_n_img, "images per true model per point");
    rp_cmd->callback([&] {
        RunConfig cfg = common.load();
        if (rp_n_img) cfg.n_img = *rp_n_img;
        cdsar_cli::validate(cfg);
        cmd_reproduce(cfg, rp_dir);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
