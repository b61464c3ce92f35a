#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cdsar/cdsar.h"
#include "json.hpp"

namespace cdsar_cli {

using ojson = nlohmann::ordered_json;

// 17-significant-digit decimal, the round-trip representation used in CSV.
std::string fmt_double(double v);

// RFC-4180-style escaping (quote fields containing comma, quote, or newline;
// double embedded quotes).  Rows are joined with commas, records with '\n'.
std::string csv_field(const std::string& raw);
std::string csv_row(const std::vector<std::string>& fields);

// JSON views of the library records.  Key order is fixed so serialized
// output is byte-stable; wall-clock time never enters these.
ojson scene_json(const cdsar_scene& s);
ojson table_json(const cdsar_table& t);
ojson report_json(const cdsar_scene& s, std::size_t n_img, std::uint64_t master_seed,
                  const cdsar_table& t);
ojson fit_json(const cdsar_fit_result& f);
ojson decision_json(const cdsar_decision& d);
ojson dataset_json(std::uint64_t seed, cdsar_model truth, const cdsar_dataset* ds);

// Two-space indent plus trailing newline; the one serialization used for
// files that are compared byte-for-byte.
std::string dump_canonical(const ojson& j);

// Console rendering of a classification table.
std::string human_table(const cdsar_table& t, double wall_seconds);

// Published Monte-Carlo reference metrics for the three parameter sweeps at
// kappa = 0.4 and kappa = 1, with the accepted reproduction band and the
// expected trend direction.
struct PublishedSweep {
    char run;              // 'A', 'B', 'C'
    const char* parameter; // config key swept
    double values[3];
    int published_k04[3];
    int published_k10[3];
    bool decreasing; // expected metric trend along values
};

extern const PublishedSweep kPublishedSweeps[3];
inline constexpr int kMetricBand = 8;          // accepted |metric - published|
inline constexpr double kPublishedKappas[2] = {0.4, 1.0};
inline constexpr double kRunDNHom[3] = {0.0, 15.0, 30.0};
inline constexpr int kRunDBound = 5; // published control-pair sensitivity bound

// Seed salt for one reproduction sub-run; order A@0.4, A@1, B@0.4, ... D@1.
std::uint64_t reproduction_salt(char run, double kappa);

} // namespace cdsar_cli
