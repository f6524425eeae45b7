#include "ffdyn/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ffdyn/dsl.hpp"
#include "ffdyn/rng.hpp"

namespace ffdyn {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) throw ConfigError("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' needs an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size()) throw ConfigError("");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' needs a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("config: '" + key + "' needs true/false, got '" + value + "'");
}

} // namespace

void ExperimentConfig::validate() const {
    if (n < 1 || n > 3) throw ConfigError("config: n must be 1, 2, or 3");
    if (iterations < 1) throw ConfigError("config: iterations must be >= 1");
    if (section_degree < 1) throw ConfigError("config: section_degree must be >= 1");
    if (count < 1) throw ConfigError("config: count must be >= 1");
    if (box < 0) throw ConfigError("config: box must be >= 0");
    if (!(tol > 0)) throw ConfigError("config: tol must be positive");
    if (jobs < 1) throw ConfigError("config: jobs must be >= 1");
    if (format != "json" && format != "csv" && format != "human")
        throw ConfigError("config: format must be json, csv, or human");
    if (budgets.max_degree < 1 || budgets.max_height < 1 || budgets.max_bits < 1)
        throw ConfigError("config: budgets must be positive");
}

void apply_config_setting(ExperimentConfig& cfg, const std::string& key,
                          const std::string& value) {
    if (key == "seed") {
        try {
            cfg.seed = std::stoull(value);
        } catch (const std::exception&) {
            throw ConfigError("config: 'seed' needs an unsigned integer, got '" + value + "'");
        }
    } else if (key == "n") {
        cfg.n = static_cast<int>(parse_long(key, value));
    } else if (key == "map") {
        cfg.map_text = value;
    } else if (key == "point") {
        cfg.point_texts.push_back(value);
    } else if (key == "iterations" || key == "M") {
        cfg.iterations = static_cast<int>(parse_long(key, value));
    } else if (key == "box" || key == "B") {
        cfg.box = parse_long(key, value);
    } else if (key == "section_degree" || key == "d") {
        cfg.section_degree = static_cast<int>(parse_long(key, value));
    } else if (key == "count") {
        cfg.count = static_cast<int>(parse_long(key, value));
    } else if (key == "delta_depth") {
        cfg.delta_depth = static_cast<int>(parse_long(key, value));
    } else if (key == "tol") {
        cfg.tol = parse_double(key, value);
    } else if (key == "max_height") {
        cfg.budgets.max_height = parse_long(key, value);
    } else if (key == "max_degree") {
        cfg.budgets.max_degree = parse_long(key, value);
    } else if (key == "max_bits") {
        cfg.budgets.max_bits = static_cast<std::size_t>(parse_long(key, value));
    } else if (key == "format") {
        cfg.format = value;
    } else if (key == "jobs") {
        cfg.jobs = static_cast<int>(parse_long(key, value));
    } else if (key == "timings") {
        cfg.timings = parse_bool(key, value);
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) +
                              " is not 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config: line " + std::to_string(lineno) + " has an empty key");
        apply_config_setting(cfg, key, value);
    }
    return cfg;
}

std::vector<Point> sample_sections(std::uint64_t seed, int n, int d, long box, int count) {
    if (n < 1 || n > 3) throw ConfigError("sample_sections: n must be 1, 2, or 3");
    if (d < 1) throw ConfigError("sample_sections: d must be >= 1");
    if (count < 1) throw ConfigError("sample_sections: count must be >= 1");
    if (box < 0) throw ConfigError("sample_sections: box must be >= 0");

    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Rng rng = Rng::for_job(seed, static_cast<std::uint64_t>(i));
        bool found = false;
        for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
            std::vector<BinaryForm> raw;
            raw.reserve(static_cast<std::size_t>(n) + 1);
            for (int c = 0; c <= n; ++c) {
                BinaryForm form = BinaryForm::zero(d);
                for (int j = 0; j <= d; ++j) {
                    long a = rng.uniform(-box, box);
                    if (a != 0) form = form + BinaryForm::term(d, j, Rational(a));
                }
                raw.push_back(form);
            }
            try {
                Point P = Point::normalize(std::move(raw));
                if (P.degree() == d) {
                    out.push_back(std::move(P));
                    found = true;
                }
            } catch (const AllZeroError&) {
                // resample
            }
        }
        if (!found)
            throw SamplingExhaustedError(
                "sample_sections: no coprime section of exact degree " + std::to_string(d) +
                " in 1000 attempts for sample " + std::to_string(i) +
                " (box = " + std::to_string(box) + ")");
    }
    return out;
}

std::vector<Point> sample_sections(const ExperimentConfig& cfg) {
    return sample_sections(cfg.seed, cfg.n, cfg.section_degree, cfg.box, cfg.count);
}

// ---- result records ---------------------------------------------------------

namespace {

Json exact_long(long v) { return Json{{"value", v}, {"provenance", "exact"}}; }

Json exact_series(const std::vector<long>& v) {
    return Json{{"values", v}, {"provenance", "exact"}};
}

Json estimated_series(const std::vector<double>& v) {
    return Json{{"values", v}, {"provenance", "estimated"}};
}

// Common shape of the alpha/delta growth estimates.
Json growth_json(const std::vector<double>& roots, const std::vector<double>& ratios,
                 double window_limsup, double window_liminf,
                 const std::optional<Rational>& exact, const std::string& method) {
    Json est;
    est["value"] = exact.has_value() ? exact->get_d() : window_limsup;
    est["provenance"] = exact.has_value() ? "exact" : "estimated";
    est["exact"] = exact.has_value() ? Json(rat_to_string(*exact)) : Json(nullptr);
    est["method"] = method;
    Json out;
    out["estimate"] = est;
    out["window"] = Json{{"limsup", window_limsup},
                         {"liminf", window_liminf},
                         {"provenance", "estimated"}};
    out["roots"] = estimated_series(roots);
    out["ratios"] = estimated_series(ratios);
    return out;
}

} // namespace

Json make_record(const std::string& kind, const ExperimentConfig& cfg) {
    Json rec;
    rec["schema_version"] = kSchemaVersion;
    rec["kind"] = kind;
    Json echo;
    echo["seed"] = cfg.seed;
    echo["n"] = cfg.n;
    if (!cfg.map_text.empty()) echo["map"] = cfg.map_text;
    if (!cfg.point_texts.empty()) echo["points"] = cfg.point_texts;
    echo["iterations"] = cfg.iterations;
    echo["box"] = cfg.box;
    echo["section_degree"] = cfg.section_degree;
    echo["count"] = cfg.count;
    echo["delta_depth"] = cfg.delta_depth;
    echo["tol"] = cfg.tol;
    echo["budgets"] = Json{{"max_degree", cfg.budgets.max_degree},
                           {"max_height", cfg.budgets.max_height},
                           {"max_bits", cfg.budgets.max_bits}};
    rec["config"] = std::move(echo);
    return rec;
}

void attach_orbit(Json& rec, const OrbitRecord& orb) {
    Json j;
    j["heights"] = exact_series(orb.heights);
    j["cancellations"] = exact_series(orb.cancellations);
    j["indeterminacy_hit"] =
        orb.indeterminacy_hit.has_value() ? Json(*orb.indeterminacy_hit) : Json(nullptr);
    j["period"] = orb.period.has_value()
                      ? Json{orb.period->first, orb.period->second}
                      : Json(nullptr);
    j["truncated"] = orb.truncated;
    j["truncated_reason"] = orb.truncated_reason;
    rec["orbit"] = std::move(j);
}

void attach_alpha(Json& rec, const AlphaEstimate& est) {
    rec["alpha"] = growth_json(est.roots, est.ratios, est.window_limsup,
                               est.window_liminf, est.exact, est.method);
}

void attach_degrees(Json& rec, const DegreeSequence& seq) {
    Json j;
    j["d"] = exact_series(seq.d);
    j["e"] = exact_series(seq.e);
    j["truncated"] = seq.truncated;
    j["truncated_reason"] = seq.truncated_reason;
    rec["degrees"] = std::move(j);
}

void attach_delta(Json& rec, const DegreeEstimate& est) {
    rec["delta"] = growth_json(est.roots, est.ratios, est.window_limsup,
                               est.window_liminf, est.exact, est.method);
}

void attach_inequality(Json& rec, const InequalityReport& rep) {
    attach_orbit(rec, rep.record);
    attach_alpha(rec, rep.alpha);
    attach_degrees(rec, rep.degrees);
    attach_delta(rec, rep.delta);
    rec["alpha_hat"] = Json{{"value", rep.alpha_hat},
                            {"provenance", rep.alpha.exact.has_value() ? "exact" : "estimated"}};
    rec["delta_hat"] = Json{{"value", rep.delta_hat},
                            {"provenance", rep.delta.exact.has_value() ? "exact" : "estimated"}};
    rec["tol"] = Json{{"value", rep.tol}, {"provenance", "exact"}};
    rec["holds"] = rep.holds;
}

void attach_wall_ms(Json& rec, double ms) {
    rec["wall_ms"] = Json{{"value", ms}, {"provenance", "estimated"}};
}

std::string to_json_line(const Json& rec) { return rec.dump(); }

namespace {

std::string csv_cell_from(const Json& rec, const char* outer, const char* inner,
                          std::size_t index) {
    if (!rec.contains(outer)) return "";
    const Json& series = rec[outer][inner]["values"];
    if (index >= series.size()) return "";
    return series[index].dump();
}

std::string csv_scalar(const Json& rec, const char* key) {
    if (!rec.contains(key)) return "";
    return rec[key]["value"].dump();
}

} // namespace

std::string csv_from_records(const std::vector<Json>& records) {
    std::ostringstream os;
    os << "record,kind,m,height,cancellation,degree_d,degree_e,alpha,delta,verdict\n";
    for (std::size_t r = 0; r < records.size(); ++r) {
        const Json& rec = records[r];
        std::string kind = rec.contains("kind") ? rec["kind"].get<std::string>() : "";
        std::string alpha = rec.contains("alpha")
                                ? rec["alpha"]["estimate"]["value"].dump()
                                : csv_scalar(rec, "alpha_hat");
        std::string delta = rec.contains("delta")
                                ? rec["delta"]["estimate"]["value"].dump()
                                : csv_scalar(rec, "delta_hat");
        std::string verdict;
        if (rec.contains("holds")) verdict = rec["holds"].dump();
        else if (rec.contains("matches_delta")) verdict = rec["matches_delta"].dump();
        else if (rec.contains("fraction")) verdict = rec["fraction"]["value"].dump();

        std::size_t rows = 1;
        if (rec.contains("orbit"))
            rows = std::max(rows, rec["orbit"]["heights"]["values"].size());
        if (rec.contains("degrees"))
            rows = std::max(rows, rec["degrees"]["d"]["values"].size());

        for (std::size_t m = 0; m < rows; ++m) {
            os << r << ',' << kind << ',' << m << ','
               << csv_cell_from(rec, "orbit", "heights", m) << ','
               << (m < 1 ? "" : csv_cell_from(rec, "orbit", "cancellations", m - 1)) << ','
               << csv_cell_from(rec, "degrees", "d", m) << ','
               << csv_cell_from(rec, "degrees", "e", m) << ','
               << alpha << ',' << delta << ',' << verdict << '\n';
        }
    }
    return os.str();
}

namespace {

void human_series(std::ostringstream& os, const char* label, const Json& series) {
    os << "  " << label << ":";
    for (const auto& v : series["values"]) os << ' ' << v.dump();
    os << '\n';
}

void human_growth(std::ostringstream& os, const char* label, const Json& g) {
    const Json& est = g["estimate"];
    os << "  " << label << " = " << est["value"].dump();
    if (!est["exact"].is_null())
        os << " (exact " << est["exact"].get<std::string>() << ", "
           << est["method"].get<std::string>() << ")";
    else
        os << " (window [" << g["window"]["liminf"].dump() << ", "
           << g["window"]["limsup"].dump() << "])";
    os << '\n';
}

} // namespace

std::string human_from_record(const Json& rec) {
    std::ostringstream os;
    os << rec["kind"].get<std::string>();
    if (rec.contains("index")) os << " #" << rec["index"].dump();
    if (rec.contains("point")) os << "  " << rec["point"].get<std::string>();
    os << '\n';
    if (rec.contains("orbit")) {
        const Json& orb = rec["orbit"];
        human_series(os, "heights", orb["heights"]);
        human_series(os, "cancellations", orb["cancellations"]);
        if (!orb["indeterminacy_hit"].is_null())
            os << "  orbit entered the base locus at step " << orb["indeterminacy_hit"].dump()
               << '\n';
        if (!orb["period"].is_null())
            os << "  periodic: enters a cycle of length " << orb["period"][1].dump()
               << " at step " << orb["period"][0].dump() << '\n';
        if (orb["truncated"].get<bool>())
            os << "  truncated: " << orb["truncated_reason"].get<std::string>() << '\n';
    }
    if (rec.contains("degrees")) {
        const Json& deg = rec["degrees"];
        human_series(os, "degrees d", deg["d"]);
        human_series(os, "degrees e", deg["e"]);
        if (deg["truncated"].get<bool>())
            os << "  truncated: " << deg["truncated_reason"].get<std::string>() << '\n';
    }
    if (rec.contains("alpha")) human_growth(os, "alpha", rec["alpha"]);
    if (rec.contains("delta")) human_growth(os, "delta", rec["delta"]);
    if (rec.contains("holds"))
        os << "  inequality alpha <= delta + tol: "
           << (rec["holds"].get<bool>() ? "HOLDS" : "VIOLATED") << '\n';
    if (rec.contains("matches_delta"))
        os << "  attains delta: " << (rec["matches_delta"].get<bool>() ? "yes" : "no") << '\n';
    if (rec.contains("fraction"))
        os << "  fraction attaining delta: " << rec["fraction"]["value"].dump() << " ("
           << rec["attained"]["value"].dump() << "/" << rec["count"].dump() << ")\n";
    if (rec.contains("error"))
        os << "  error: " << rec["error"].get<std::string>() << '\n';
    if (rec.contains("wall_ms"))
        os << "  wall: " << rec["wall_ms"]["value"].dump() << " ms\n";
    return os.str();
}

// ---- batch runner -----------------------------------------------------------

namespace {

std::string run_one_guarded(int i, const std::function<std::string(int)>& job) {
    try {
        return job(i);
    } catch (const std::exception& e) {
        return Json{{"job", i}, {"error", e.what()}}.dump();
    }
}

} // namespace

std::vector<std::string> run_batch(int count, int jobs, BatchMode mode,
                                   const std::function<std::string(int)>& job) {
    if (count < 0) throw ConfigError("run_batch: count must be >= 0");
    std::vector<std::string> out(static_cast<std::size_t>(count));
    if (mode == BatchMode::Serial || jobs <= 1) {
        for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = run_one_guarded(i, job);
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = run_one_guarded(i, job);
#else
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = run_one_guarded(i, job);
#endif
    return out;
}

SectionsReport run_sections_experiment(const SelfMap& f, const ExperimentConfig& cfg,
                                       BatchMode mode) {
    cfg.validate();
    if (f.n() != cfg.n)
        throw DimensionError("sections experiment: map is on P^" + std::to_string(f.n()) +
                             " but config says n = " + std::to_string(cfg.n));

    DeltaReport dr = estimate_delta(f, cfg.delta_depth, cfg.budgets);
    const double delta_hat = dr.estimate.exact.has_value() ? dr.estimate.exact->get_d()
                                                           : dr.estimate.window_limsup;

    std::vector<Point> sections = sample_sections(cfg);

    auto job = [&](int i) -> std::string {
        auto start = std::chrono::steady_clock::now();
        Json rec = make_record("section", cfg);
        rec["index"] = i;
        rec["point"] = print_point(sections[static_cast<std::size_t>(i)]);
        OrbitRecord orb =
            orbit(f, sections[static_cast<std::size_t>(i)], cfg.iterations,
                  /*keep_points=*/true, cfg.budgets);
        attach_orbit(rec, orb);
        bool matches = false;
        try {
            AlphaEstimate alpha = alpha_estimate(orb);
            attach_alpha(rec, alpha);
            const double alpha_hat =
                alpha.exact.has_value() ? alpha.exact->get_d() : alpha.window_limsup;
            matches = std::abs(alpha_hat - delta_hat) <= cfg.tol;
        } catch (const TooShortError& e) {
            rec["error"] = e.what();
        }
        rec["delta_hat"] = Json{{"value", delta_hat},
                                {"provenance",
                                 dr.estimate.exact.has_value() ? "exact" : "estimated"}};
        rec["matches_delta"] = matches;
        if (cfg.timings) {
            auto end = std::chrono::steady_clock::now();
            attach_wall_ms(rec, std::chrono::duration<double, std::milli>(end - start).count());
        }
        return to_json_line(rec);
    };

    std::vector<std::string> lines = run_batch(cfg.count, cfg.jobs, mode, job);

    SectionsReport report;
    report.records.reserve(lines.size());
    for (const std::string& line : lines) {
        report.records.push_back(Json::parse(line));
        const Json& rec = report.records.back();
        if (rec.contains("matches_delta") && rec["matches_delta"].get<bool>())
            ++report.attained;
    }
    report.fraction =
        static_cast<double>(report.attained) / static_cast<double>(cfg.count);

    Json summary = make_record("sections_summary", cfg);
    attach_degrees(summary, dr.degrees);
    attach_delta(summary, dr.estimate);
    summary["count"] = cfg.count;
    summary["attained"] = exact_long(report.attained);
    summary["fraction"] = Json{{"value", report.fraction}, {"provenance", "probabilistic"}};
    report.summary = std::move(summary);
    return report;
}

} // namespace ffdyn
