#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffdyn/budgets.hpp"
#include "ffdyn/errors.hpp"
#include "ffdyn/orbit_lab.hpp"
#include "ffdyn/point.hpp"
#include "ffdyn/selfmap.hpp"

namespace ffdyn {

using Json = nlohmann::ordered_json;

// Bumped whenever a field is renamed, retyped, or removed.
inline constexpr int kSchemaVersion = 1;

// A malformed config file or an invalid field value.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// One run's worth of knobs.  The CLI fills this from an optional config file
// first, then from flags (flags win); the library consumes it directly.
struct ExperimentConfig {
    std::uint64_t seed = 0;
    int n = 2;                            // ambient dimension for sampling
    std::string map_text;                 // statement text, e.g. "map P2: [...]"
    std::vector<std::string> point_texts; // statement texts for fixed points
    int iterations = 8;                   // orbit length M
    long box = 5;                         // coefficient box [-B, B] for sampling
    int section_degree = 2;               // degree d of sampled sections
    int count = 100;                      // number of sampled sections
    int delta_depth = 0;                  // 0 = per-class default
    double tol = 1e-2;
    Budgets budgets;
    std::string format = "json";          // json | csv | human
    int jobs = 1;
    bool timings = false;                 // attach wall_ms to records

    // Throws ConfigError when a field is out of range.
    void validate() const;
};

// Applies one `key = value` setting; shared by the file loader and the CLI.
// Throws ConfigError on unknown keys or unparseable values.
void apply_config_setting(ExperimentConfig& cfg, const std::string& key,
                          const std::string& value);

// Flat key = value lines; '#' comments and blank lines ignored.
ExperimentConfig load_config_file(const std::string& path);

// n+1 binary forms of degree d with uniform integer coefficients in [-B, B],
// resampled (at most 1000 attempts per section) until the tuple is coprime of
// exact degree d.  Section i draws from Rng::for_job(seed, i), so results are
// byte-identical whether consumers run them serially or in parallel.
std::vector<Point> sample_sections(std::uint64_t seed, int n, int d, long box, int count);
std::vector<Point> sample_sections(const ExperimentConfig& cfg);

// ---- result records ---------------------------------------------------------
//
// JSON-lines schema: one self-describing object per job.  Every numeric
// quantity carries a provenance flag: "exact" (certified by exact
// arithmetic), "estimated" (finite-window estimate), or "probabilistic"
// (empirical fraction over random samples).

Json make_record(const std::string& kind, const ExperimentConfig& cfg);
void attach_orbit(Json& rec, const OrbitRecord& orb);
void attach_alpha(Json& rec, const AlphaEstimate& est);
void attach_degrees(Json& rec, const DegreeSequence& seq);
void attach_delta(Json& rec, const DegreeEstimate& est);
void attach_inequality(Json& rec, const InequalityReport& rep);
void attach_wall_ms(Json& rec, double ms); // only called under timings

// Compact single-line dump (JSON-lines entry).
std::string to_json_line(const Json& rec);

// Lossy tabular projection: one row per orbit/degree index m, with the
// scalar estimates repeated on each row of their record.
std::string csv_from_records(const std::vector<Json>& records);

// Multi-line readable rendering of one record.
std::string human_from_record(const Json& rec);

// ---- batch runner -----------------------------------------------------------

enum class BatchMode { Serial, Parallel };

// Runs `count` independent jobs and returns their outputs in submission
// order.  Parallel mode runs under OpenMP with `jobs` workers; a job must
// depend only on its index (use Rng::for_job) so both modes emit identical
// bytes.  A job that throws contributes a {"job": i, "error": ...} line
// instead of propagating.
std::vector<std::string> run_batch(int count, int jobs, BatchMode mode,
                                   const std::function<std::string(int)>& job);

// The random-section experiment: sample `cfg.count` sections of degree
// `cfg.section_degree`, run each orbit to cfg.iterations, and compare every
// arithmetic-degree estimate against the map's dynamical-degree estimate.
struct SectionsReport {
    std::vector<Json> records; // one per section, submission order
    Json summary;              // counts + empirical fraction
    int attained = 0;          // sections with |alpha_hat - delta_hat| <= tol
    double fraction = 0.0;
};

SectionsReport run_sections_experiment(const SelfMap& f, const ExperimentConfig& cfg,
                                       BatchMode mode = BatchMode::Parallel);

} // namespace ffdyn
