#include "cli_config.hpp"

#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cdsar_cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_plain_double(const std::string& text, const std::string& what) {
    if (text.empty()) throw ConfigError(what + ": empty numeric value");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
        throw ConfigError(what + ": bad numeric value '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    if (text.empty() || text[0] == '-') throw ConfigError(what + ": expected a nonnegative integer");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || errno == ERANGE)
        throw ConfigError(what + ": bad integer '" + text + "'");
    return static_cast<std::uint64_t>(v);
}

int parse_int(const std::string& text, const std::string& what) {
    if (text.empty()) throw ConfigError(what + ": expected an integer");
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + text.size() || errno == ERANGE || v < -1000000 || v > 1000000)
        throw ConfigError(what + ": bad integer '" + text + "'");
    return static_cast<int>(v);
}

cdsar_model parse_truth(const std::string& text, const std::string& what) {
    if (text == "s" || text == "s-model") return CDSAR_S_MODEL;
    if (text == "t" || text == "t-model") return CDSAR_T_MODEL;
    throw ConfigError(what + ": expected 's' or 't', got '" + text + "'");
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

double parse_pi_double(const std::string& text) {
    const std::string s = trim(text);
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        std::string head = trim(s.substr(0, s.size() - 2));
        if (!head.empty() && head.back() == '*') head = trim(head.substr(0, head.size() - 1));
        if (head.empty()) return kPi;
        if (head == "-") return -kPi;
        if (head == "+") return kPi;
        return parse_plain_double(head, "pi multiple") * kPi;
    }
    return parse_plain_double(s, "number");
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "scene" && section != "run" && section != "radar")
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty()) throw ConfigError(where + ": key '" + key + "' outside any section");
        const std::string what = "[" + section + "] " + key;

        if (section == "scene") {
            if (key == "zeta_min") cfg.zeta_min = parse_pi_double(value);
            else if (key == "zeta_max") cfg.zeta_max = parse_pi_double(value);
            else if (key == "n_hom") cfg.n_hom = parse_u64(value, what);
            else if (key == "kappa") cfg.kappa = parse_pi_double(value);
            else if (key == "truth") cfg.truth = parse_truth(value, what);
            else if (key == "p_n") cfg.p_n = parse_plain_double(value, what);
            else if (key == "q_st") cfg.q_st = parse_plain_double(value, what);
            else throw ConfigError(what + ": unknown key");
        } else if (section == "run") {
            if (key == "n_img") cfg.n_img = parse_u64(value, what);
            else if (key == "master_seed") cfg.master_seed = parse_u64(value, what);
            else if (key == "threads") cfg.threads = parse_int(value, what);
            else if (key == "quad_tol") cfg.quad_tol = parse_plain_double(value, what);
            else if (key == "output") cfg.output = value;
            else throw ConfigError(what + ": unknown key");
        } else { // radar
            if (key == "omega0") cfg.omega0 = parse_plain_double(value, what);
            else if (key == "bandwidth") cfg.bandwidth = parse_plain_double(value, what);
            else if (key == "tau") cfg.tau = parse_plain_double(value, what);
            else if (key == "phi_t") cfg.phi_t = parse_plain_double(value, what);
            else if (key == "theta") cfg.theta = parse_plain_double(value, what);
            else if (key == "wave_speed") cfg.wave_speed = parse_plain_double(value, what);
            else if (key == "n_pulses") cfg.n_pulses = parse_int(value, what);
            else throw ConfigError(what + ": unknown key");
        }
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[scene]\n";
    out << "zeta_min = " << fmt_double(cfg.zeta_min) << "\n";
    out << "zeta_max = " << fmt_double(cfg.zeta_max) << "\n";
    out << "n_hom = " << cfg.n_hom << "\n";
    out << "kappa = " << fmt_double(cfg.kappa) << "\n";
    out << "truth = " << (cfg.truth == CDSAR_S_MODEL ? "s" : "t") << "\n";
    out << "p_n = " << fmt_double(cfg.p_n) << "\n";
    out << "q_st = " << fmt_double(cfg.q_st) << "\n";
    out << "\n[run]\n";
    out << "n_img = " << cfg.n_img << "\n";
    out << "master_seed = " << cfg.master_seed << "\n";
    out << "threads = " << cfg.threads << "\n";
    out << "quad_tol = " << fmt_double(cfg.quad_tol) << "\n";
    if (!cfg.output.empty()) out << "output = " << cfg.output << "\n";

    std::ostringstream radar;
    if (cfg.omega0) radar << "omega0 = " << fmt_double(*cfg.omega0) << "\n";
    if (cfg.bandwidth) radar << "bandwidth = " << fmt_double(*cfg.bandwidth) << "\n";
    if (cfg.tau) radar << "tau = " << fmt_double(*cfg.tau) << "\n";
    if (cfg.phi_t) radar << "phi_t = " << fmt_double(*cfg.phi_t) << "\n";
    if (cfg.theta) radar << "theta = " << fmt_double(*cfg.theta) << "\n";
    if (cfg.wave_speed) radar << "wave_speed = " << fmt_double(*cfg.wave_speed) << "\n";
    if (cfg.n_pulses) radar << "n_pulses = " << *cfg.n_pulses << "\n";
    const std::string r = radar.str();
    if (!r.empty()) out << "\n[radar]\n" << r;
    return out.str();
}

void validate(const RunConfig& cfg) {
    if (!(cfg.zeta_min > 0.0)) throw ConfigError("zeta_min must be positive");
    if (!(cfg.zeta_max >= cfg.zeta_min)) throw ConfigError("zeta_max must be >= zeta_min");
    if (!(cfg.kappa >= 0.0)) throw ConfigError("kappa must be nonnegative");
    if (!(cfg.p_n >= 0.0)) throw ConfigError("p_n must be nonnegative");
    if (!(cfg.q_st >= 0.0 && cfg.q_st < 1.0)) throw ConfigError("q_st must lie in [0, 1)");
    if (cfg.n_img == 0) throw ConfigError("n_img must be at least 1");
    if (!(cfg.quad_tol > 0.0)) throw ConfigError("quad_tol must be positive");
    auto positive = [](const std::optional<double>& v, const char* name) {
        if (v && !(*v > 0.0)) throw ConfigError(std::string(name) + " must be positive");
    };
    positive(cfg.omega0, "omega0");
    positive(cfg.bandwidth, "bandwidth");
    positive(cfg.tau, "tau");
    positive(cfg.phi_t, "phi_t");
    positive(cfg.theta, "theta");
    positive(cfg.wave_speed, "wave_speed");
    if (cfg.n_pulses && *cfg.n_pulses < 1) throw ConfigError("n_pulses must be at least 1");
}

cdsar_scene scene_of(const RunConfig& cfg) {
    cdsar_scene scene;
    scene.zeta_min = cfg.zeta_min;
    scene.zeta_max = cfg.zeta_max;
    scene.n_hom = static_cast<size_t>(cfg.n_hom);
    scene.kappa = cfg.kappa;
    scene.truth = cfg.truth;
    if (cdsar_intensities_from_contrasts(cfg.p_n, cfg.q_st, &scene.intensities) != CDSAR_OK)
        throw ConfigError(cdsar_last_error());
    return scene;
}

cdsar_radar_config radar_of(const RunConfig& cfg) {
    cdsar_radar_config radar;
    if (cdsar_demo_config(cfg.kappa, &radar) != CDSAR_OK) throw ConfigError(cdsar_last_error());
    if (cfg.omega0) radar.omega0 = *cfg.omega0;
    if (cfg.bandwidth) radar.bandwidth = *cfg.bandwidth;
    if (cfg.tau) radar.tau = *cfg.tau;
    if (cfg.phi_t) radar.phi_t = *cfg.phi_t;
    if (cfg.theta) radar.theta = *cfg.theta;
    if (cfg.wave_speed) radar.wave_speed = *cfg.wave_speed;
    if (cfg.n_pulses) radar.n_pulses = *cfg.n_pulses;
    return radar;
}

} // namespace cdsar_cli
