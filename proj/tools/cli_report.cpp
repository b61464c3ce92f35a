#include "cli_report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cdsar_cli {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

ojson scene_json(const cdsar_scene& s) {
    ojson j;
    j["zeta_min"] = s.zeta_min;
    j["zeta_max"] = s.zeta_max;
    j["n_hom"] = s.n_hom;
    j["kappa"] = s.kappa;
    j["p_b"] = s.intensities.p_b;
    j["p_n"] = s.intensities.p_n;
    j["p_x"] = s.intensities.p_x;
    return j;
}

ojson table_json(const cdsar_table& t) {
    ojson j;
    j["n_img"] = t.n_img;
    j["r_s"] = t.r_s;
    j["r_t"] = t.r_t;
    j["std_r_s"] = t.std_r_s;
    j["std_r_t"] = t.std_r_t;
    j["non_converged"] = t.non_converged;
    j["metric"] = t.metric;
    j["metric_std"] = t.metric_std;
    return j;
}

ojson report_json(const cdsar_scene& s, std::size_t n_img, std::uint64_t master_seed,
                  const cdsar_table& t) {
    ojson j;
    j["scene"] = scene_json(s);
    j["n_img"] = n_img;
    j["master_seed"] = master_seed;
    j["table"] = table_json(t);
    return j;
}

ojson fit_json(const cdsar_fit_result& f) {
    ojson j;
    j["p_b"] = f.intensities.p_b;
    j["p_n"] = f.intensities.p_n;
    j["p_x"] = f.intensities.p_x;
    j["loglik"] = f.loglik;
    j["converged"] = f.converged != 0;
    j["evaluations"] = f.evaluations;
    return j;
}

ojson decision_json(const cdsar_decision& d) {
    ojson j;
    j["label"] = d.verdict == CDSAR_S_MODEL ? "s" : "t";
    j["margin"] = d.margin;
    j["fit_s"] = fit_json(d.fit_s);
    j["fit_t"] = fit_json(d.fit_t);
    return j;
}

ojson dataset_json(std::uint64_t seed, cdsar_model truth, const cdsar_dataset* ds) {
    std::size_t n_pairs = 0;
    std::size_t n_streak = 0;
    if (cdsar_dataset_size(ds, &n_pairs, &n_streak) != CDSAR_OK)
        throw std::runtime_error(cdsar_last_error());
    ojson zetas = ojson::array();
    ojson pairs = ojson::array();
    for (std::size_t j = 0; j < n_pairs; ++j) {
        double zeta = 0.0;
        double q[4];
        if (cdsar_dataset_pair(ds, j, &zeta, q) != CDSAR_OK)
            throw std::runtime_error(cdsar_last_error());
        zetas.push_back(zeta);
        pairs.push_back(ojson::array({q[0], q[1], q[2], q[3]}));
    }
    ojson j;
    j["seed"] = seed;
    j["model"] = truth == CDSAR_S_MODEL ? "s" : "t";
    j["zetas"] = std::move(zetas);
    j["pairs"] = std::move(pairs);
    return j;
}

std::string dump_canonical(const ojson& j) { return j.dump(2) + "\n"; }

std::string human_table(const cdsar_table& t, double wall_seconds) {
    const double n = static_cast<double>(t.n_img);
    auto count = [&](double r) { return static_cast<long>(std::lround(r * n)); };
    char buf[256];
    std::ostringstream out;
    out << "truth \\ label          s          t\n";
    std::snprintf(buf, sizeof(buf), "s            %10ld %10ld   r_s = %.4f\n",
                  count(1.0 - t.r_s), count(t.r_s), t.r_s);
    out << buf;
    std::snprintf(buf, sizeof(buf), "t            %10ld %10ld   r_t = %.4f\n",
                  count(t.r_t), count(1.0 - t.r_t), t.r_t);
    out << buf;
    std::snprintf(buf, sizeof(buf), "metric %d +- %.1f   non-converged %zu   wall %.1f s\n",
                  t.metric, t.metric_std, t.non_converged, wall_seconds);
    out << buf;
    return out.str();
}

const PublishedSweep kPublishedSweeps[3] = {
    {'A', "zeta_max", {4.0 * kPi, 8.0 * kPi, 20.0 * kPi}, {48, 34, 6}, {36, 17, 2}, true},
    {'B', "zeta_min", {3.0 * kPi, 8.0 * kPi, 12.0 * kPi}, {22, 27, 37}, {11, 23, 35}, false},
    {'C', "q_st", {0.1, 0.3, 0.6}, {47, 35, 17}, {43, 29, 5}, true},
};

std::uint64_t reproduction_salt(char run, double kappa) {
    if (run < 'A' || run > 'D') throw std::invalid_argument("unknown reproduction run");
    const std::uint64_t base = static_cast<std::uint64_t>(run - 'A') * 2;
    return base + (kappa == kPublishedKappas[0] ? 0 : 1);
}

} // namespace cdsar_cli
