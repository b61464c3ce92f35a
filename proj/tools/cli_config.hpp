#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "cdsar/cdsar.h"

namespace cdsar_cli {

// Invalid configuration (parse error, unknown key, violated invariant).
// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Full run description: scene + harness + optional radar overrides.  Values
// not present in the file keep the generic defaults below.
struct RunConfig {
    // [scene]
    double zeta_min = 3.0 * 3.14159265358979323846;
    double zeta_max = 12.0 * 3.14159265358979323846;
    std::uint64_t n_hom = 15;
    double kappa = 1.0;
    cdsar_model truth = CDSAR_T_MODEL;
    double p_n = 0.25;
    double q_st = 0.4;

    // [run]
    std::uint64_t n_img = 400;
    std::uint64_t master_seed = 20260814;
    int threads = 1;
    double quad_tol = 1e-6;
    std::string output; // default destination; empty = standard output

    // [radar] — optional overrides on top of the demo geometry for kappa
    std::optional<double> omega0;
    std::optional<double> bandwidth;
    std::optional<double> tau;
    std::optional<double> phi_t;
    std::optional<double> theta;
    std::optional<double> wave_speed;
    std::optional<int> n_pulses;

    bool operator==(const RunConfig&) const = default;
};

// Scalar with an optional "pi" suffix: "3pi", "0.5pi", "pi", "-pi", or a
// plain decimal.  Throws ConfigError on anything else.
double parse_pi_double(const std::string& text);

// key = value lines under [scene] / [run] / [radar] headers; '#' and ';'
// start comments.  Unknown sections or keys are rejected, and every loaded
// value is revalidated.  parse_config starts from the defaults, so a partial
// file overrides only what it names.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Inverse of parse_config: parse(serialize(cfg)) == cfg.  Doubles are
// emitted with 17 significant digits.
std::string serialize_config(const RunConfig& cfg);

void validate(const RunConfig& cfg); // throws ConfigError

// Scene handed to the library; intensities solved from (p_n, q_st).
cdsar_scene scene_of(const RunConfig& cfg);

// Demo geometry for cfg.kappa with any [radar] overrides applied.
cdsar_radar_config radar_of(const RunConfig& cfg);

} // namespace cdsar_cli
