// Command-line surface for the exact dynamics lab: heights, orbits, growth
// estimates, inequality checks, random-section experiments, and a pinned
// reference suite.  Exit codes: 0 success, 1 reference-suite mismatch (or
// internal failure), 2 input/parse errors, 3 budget/resource exhaustion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffdyn/dsl.hpp"
#include "ffdyn/experiments.hpp"
#include "ffdyn/heights.hpp"
#include "ffdyn/orbit_lab.hpp"

using namespace ffdyn;

namespace {

struct Flags {
    ExperimentConfig cfg;
    std::string config_path;
    std::string map_file;
    std::string point_file;
    bool serial = false;
    bool iterations_given = false; // -M was explicit (delta uses it as depth)
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Resolves --config, then --map-file/--point-file, into the final config.
// CLI flags already live in flags.cfg; file values fill only fields whose
// flags were not given (tracked via CLI11 option counts by the caller).
void load_sources(Flags& flags) {
    if (!flags.map_file.empty()) {
        if (!flags.cfg.map_text.empty())
            throw ConfigError("give either --map or --map-file, not both");
        flags.cfg.map_text = read_file(flags.map_file);
    }
    if (!flags.point_file.empty()) {
        std::istringstream is(read_file(flags.point_file));
        std::string line;
        while (std::getline(is, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            std::size_t b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos) continue;
            std::size_t e = line.find_last_not_of(" \t\r");
            flags.cfg.point_texts.push_back(line.substr(b, e - b + 1));
        }
    }
}

SelfMap require_map(const Flags& flags) {
    if (flags.cfg.map_text.empty()) throw ConfigError("this command needs --map or --map-file");
    return parse_map(flags.cfg.map_text);
}

std::vector<Point> require_points(const Flags& flags) {
    if (flags.cfg.point_texts.empty())
        throw ConfigError("this command needs at least one --point or a --point-file");
    std::vector<Point> out;
    out.reserve(flags.cfg.point_texts.size());
    for (const std::string& text : flags.cfg.point_texts) out.push_back(parse_point(text));
    return out;
}

void emit(const Flags& flags, const std::vector<Json>& records) {
    if (flags.cfg.format == "json") {
        for (const Json& rec : records) std::cout << to_json_line(rec) << '\n';
    } else if (flags.cfg.format == "csv") {
        std::cout << csv_from_records(records);
    } else {
        for (const Json& rec : records) std::cout << human_from_record(rec);
    }
}

int cmd_height(const Flags& flags) {
    std::vector<Json> records;
    for (const std::string& text : flags.cfg.point_texts) {
        Point P = parse_point(text);
        Json rec = make_record("height", flags.cfg);
        rec["point"] = print_point(P);
        const long hd = height_degree(P);
        rec["height_degree"] = Json{{"value", hd}, {"provenance", "exact"}};
        ValuationHeight vh = height_valuation(P);
        rec["splits_into_linear_places"] = vh.split;
        rec["height_valuation"] =
            vh.split ? Json{{"value", vh.value}, {"provenance", "exact"}} : Json(nullptr);
        if (vh.split) rec["paths_agree"] = (vh.value == hd);
        records.push_back(std::move(rec));
    }
    if (records.empty()) throw ConfigError("height needs at least one --point");
    if (flags.cfg.format == "human") {
        for (const Json& rec : records) {
            std::cout << rec["point"].get<std::string>() << "\n  height (section degree) = "
                      << rec["height_degree"]["value"].dump() << '\n';
            if (rec["splits_into_linear_places"].get<bool>())
                std::cout << "  height (valuation sum)  = "
                          << rec["height_valuation"]["value"].dump() << "  ("
                          << (rec["paths_agree"].get<bool>() ? "paths agree" : "PATHS DISAGREE")
                          << ")\n";
            else
                std::cout << "  valuation sum skipped: a coordinate does not split into "
                             "linear factors over Q\n";
        }
        return 0;
    }
    emit(flags, records);
    return 0;
}

int cmd_orbit(const Flags& flags, bool with_alpha) {
    SelfMap f = require_map(flags);
    std::vector<Point> points = require_points(flags);
    std::vector<Json> records;
    for (const Point& P : points) {
        Json rec = make_record(with_alpha ? "alpha" : "orbit", flags.cfg);
        rec["point"] = print_point(P);
        OrbitRecord orb = orbit(f, P, flags.cfg.iterations, true, flags.cfg.budgets);
        attach_orbit(rec, orb);
        if (with_alpha) {
            try {
                attach_alpha(rec, alpha_estimate(orb));
            } catch (const TooShortError& e) {
                rec["error"] = e.what();
            }
        }
        records.push_back(std::move(rec));
    }
    emit(flags, records);
    return 0;
}

int cmd_delta(const Flags& flags) {
    SelfMap f = require_map(flags);
    int depth = flags.cfg.delta_depth;
    if (depth <= 0 && flags.iterations_given) depth = flags.cfg.iterations;
    DeltaReport dr = estimate_delta(f, depth, flags.cfg.budgets);
    Json rec = make_record("delta", flags.cfg);
    attach_degrees(rec, dr.degrees);
    attach_delta(rec, dr.estimate);
    emit(flags, {rec});
    return 0;
}

int cmd_check(const Flags& flags) {
    SelfMap f = require_map(flags);
    std::vector<Point> points = require_points(flags);
    std::vector<Json> records;
    for (const Point& P : points) {
        Json rec = make_record("check", flags.cfg);
        rec["point"] = print_point(P);
        InequalityReport rep = check_fundamental_inequality(
            f, P, flags.cfg.iterations, flags.cfg.tol, flags.cfg.budgets,
            flags.cfg.delta_depth);
        attach_inequality(rec, rep);
        SufficientReport suff =
            check_sufficient_condition(f, P, flags.cfg.iterations, flags.cfg.budgets);
        rec["sufficient"] = Json{{"positivity", suff.positivity},
                                 {"avoidance_certified_to", suff.avoidance_certified_to},
                                 {"iterates_available", suff.iterates_available},
                                 {"certified_to_requested", suff.certified_to_requested},
                                 {"note", suff.note}};
        records.push_back(std::move(rec));
    }
    emit(flags, records);
    if (flags.cfg.format == "human") {
        for (const Json& rec : records) {
            const Json& s = rec["sufficient"];
            std::cout << "  growth criterion premises: positivity "
                      << (s["positivity"].get<bool>() ? "yes" : "no")
                      << ", base-locus avoidance certified to m = "
                      << s["avoidance_certified_to"].dump() << '\n'
                      << "  " << s["note"].get<std::string>() << '\n';
        }
    }
    return 0;
}

int cmd_sections(const Flags& flags) {
    SelfMap f = require_map(flags);
    ExperimentConfig cfg = flags.cfg;
    cfg.n = f.n();
    SectionsReport rep = run_sections_experiment(
        f, cfg, flags.serial ? BatchMode::Serial : BatchMode::Parallel);
    std::vector<Json> records = rep.records;
    records.push_back(rep.summary);
    emit(flags, records);
    return 0;
}

struct ReferenceCheck {
    std::string name;
    bool pass;
    std::string detail;
};

int cmd_reproduce(const Flags& flags) {
    std::vector<ReferenceCheck> checks;
    const Budgets& budgets = flags.cfg.budgets;

    SelfMap power = parse_map("map P2: [x^2*z, y^3, z^3]");
    Point moving = parse_point("point P2: [t, 2, 1]");
    Point constant = parse_point("point P2: [1, 2, 1]");

    {
        OrbitRecord orb = orbit(power, moving, 10, true, budgets);
        bool ok = orb.heights.size() == 11;
        for (std::size_t m = 0; ok && m < orb.heights.size(); ++m)
            ok = orb.heights[m] == (1L << m);
        std::ostringstream os;
        os << "heights of (t, 2) under (x^2, y^3) are 2^m for m <= 10";
        checks.push_back({os.str(), ok, ""});

        AlphaEstimate alpha = alpha_estimate(orb);
        bool a_ok = alpha.exact.has_value() && *alpha.exact == Rational(2);
        checks.push_back({"alpha = 2, certified from the exact ratio", a_ok,
                          a_ok ? "" : "estimate " + std::to_string(alpha.final)});

        DeltaReport dr = estimate_delta(power, 6, budgets);
        bool d_ok = dr.estimate.exact.has_value() && *dr.estimate.exact == Rational(3);
        for (std::size_t m = 0; d_ok && m < dr.degrees.d.size(); ++m) {
            long want = 1;
            for (std::size_t k = 0; k <= m; ++k) want *= 3;
            d_ok = dr.degrees.d[m] == want;
        }
        checks.push_back({"delta = 3 with degree sequence 3^m for m <= 6", d_ok, ""});

        bool lt = a_ok && d_ok; // alpha = 2 < 3 = delta: a strict-gap example
        checks.push_back({"alpha < delta on this orbit (strict gap)", lt, ""});

        SufficientReport suff = check_sufficient_condition(power, moving, 8, budgets);
        bool s_ok = suff.positivity && suff.avoidance_certified_to == 0;
        checks.push_back(
            {"growth-criterion premise fails here: the section meets the base locus "
             "already at m = 1 (consistent with alpha < delta)",
             s_ok, ""});
    }
    {
        OrbitRecord orb = orbit(power, constant, 5, true, budgets);
        bool all_zero = true;
        for (long h : orb.heights) all_zero = all_zero && h == 0;
        AlphaEstimate alpha = alpha_estimate(orb);
        bool ok = all_zero && alpha.exact.has_value() && *alpha.exact == Rational(1);
        checks.push_back({"constant point (1, 2): heights stay 0 and alpha = 1", ok, ""});
    }
    {
        DeltaReport dr = estimate_delta(parse_map("map P2: [y*z, x*z, x*y]"), 8, budgets);
        bool ok = dr.estimate.exact.has_value() && *dr.estimate.exact == Rational(1) &&
                  dr.degrees.d == std::vector<long>{2, 1, 2, 1, 2, 1, 2, 1};
        checks.push_back(
            {"standard Cremona involution: degrees alternate 2,1 and delta = 1", ok, ""});
    }
    {
        SelfMap twisted = parse_map("map P1: [t*x^2, y^2]");
        DegreeSequence seq = degree_sequence(twisted, 6, budgets);
        bool ok = twisted.x_degree() == 2 && twisted.t_degree() == 1;
        for (std::size_t m = 0; ok && m < seq.e.size(); ++m)
            ok = seq.e[m] == (1L << (m + 1)) - 1;
        checks.push_back({"twisted squaring on P^1: bidegree (2,1) with e_m = 2^m - 1", ok, ""});
    }

    bool all = true;
    for (const ReferenceCheck& c : checks) {
        all = all && c.pass;
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << '\n';
    }
    std::cout << (all ? "reference suite: all checks passed"
                      : "reference suite: MISMATCH")
              << '\n';
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dynamics lab on projective space over Q(t)"};
    app.fallthrough();
    Flags flags;

    auto* opt_seed = app.add_option("--seed", flags.cfg.seed, "run seed (default 0)");
    auto* opt_iter =
        app.add_option("-M,--iterations", flags.cfg.iterations, "orbit/iterate depth");
    auto* opt_tol = app.add_option("--tol", flags.cfg.tol, "estimate tolerance");
    auto* opt_bh =
        app.add_option("--budget-height", flags.cfg.budgets.max_height, "orbit height cap");
    auto* opt_bb =
        app.add_option("--budget-bits", flags.cfg.budgets.max_bits, "coefficient bit cap");
    auto* opt_bd =
        app.add_option("--budget-degree", flags.cfg.budgets.max_degree, "iterate degree cap");
    auto* opt_format = app.add_option("--format", flags.cfg.format, "json | csv | human")
                           ->check(CLI::IsMember({"json", "csv", "human"}));
    auto* opt_jobs = app.add_option("--jobs", flags.cfg.jobs, "parallel worker count");
    auto* opt_timings = app.add_flag("--timings", flags.cfg.timings,
                                     "attach wall-clock times to records");
    app.add_option("--config", flags.config_path, "flat key = value config file");

    auto add_map_opts = [&](CLI::App* sub) {
        sub->add_option("--map", flags.cfg.map_text, "map statement, e.g. 'map P1: [t*x^2, y^2]'");
        sub->add_option("--map-file", flags.map_file, "file holding one map statement");
    };
    auto add_point_opts = [&](CLI::App* sub) {
        sub->add_option("--point", flags.cfg.point_texts,
                        "point statement, e.g. 'point P1: [t, 1]' (repeatable)");
        sub->add_option("--point-file", flags.point_file,
                        "file with one point statement per line");
    };

    CLI::App* height = app.add_subcommand("height", "both height computations of a point");
    add_point_opts(height);
    CLI::App* orb = app.add_subcommand("orbit", "orbit heights and cancellations");
    add_map_opts(orb);
    add_point_opts(orb);
    CLI::App* alpha = app.add_subcommand("alpha", "arithmetic-degree estimate along an orbit");
    add_map_opts(alpha);
    add_point_opts(alpha);
    CLI::App* delta = app.add_subcommand("delta", "dynamical-degree estimate of a map");
    add_map_opts(delta);
    auto* opt_depth = delta->add_option("--delta-depth", flags.cfg.delta_depth,
                                        "degree-sequence depth (0 = per-class default)");
    CLI::App* check = app.add_subcommand(
        "check", "fundamental inequality + growth-criterion premises for (map, point)");
    add_map_opts(check);
    add_point_opts(check);
    check->add_option("--delta-depth", flags.cfg.delta_depth,
                      "degree-sequence depth (0 = per-class default)");
    CLI::App* sections =
        app.add_subcommand("sections", "random-section experiment against the map degree");
    add_map_opts(sections);
    auto* opt_d = sections->add_option("-d,--degree", flags.cfg.section_degree,
                                       "section degree to sample");
    auto* opt_B = sections->add_option("-B,--box", flags.cfg.box,
                                       "coefficient box [-B, B]");
    auto* opt_count = sections->add_option("--count", flags.cfg.count, "number of sections");
    sections->add_flag("--serial", flags.serial, "run the serial reference batch");
    CLI::App* repro = app.add_subcommand(
        "reproduce-paper", "run the pinned reference suite; nonzero exit on mismatch");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        // Config-file values fill fields whose flags were not given.
        if (!flags.config_path.empty()) {
            ExperimentConfig file_cfg = load_config_file(flags.config_path);
            if (!opt_seed->count()) flags.cfg.seed = file_cfg.seed;
            if (!opt_iter->count()) flags.cfg.iterations = file_cfg.iterations;
            if (!opt_tol->count()) flags.cfg.tol = file_cfg.tol;
            if (!opt_bh->count()) flags.cfg.budgets.max_height = file_cfg.budgets.max_height;
            if (!opt_bb->count()) flags.cfg.budgets.max_bits = file_cfg.budgets.max_bits;
            if (!opt_bd->count()) flags.cfg.budgets.max_degree = file_cfg.budgets.max_degree;
            if (!opt_format->count()) flags.cfg.format = file_cfg.format;
            if (!opt_jobs->count()) flags.cfg.jobs = file_cfg.jobs;
            if (!opt_timings->count()) flags.cfg.timings = file_cfg.timings;
            if (!opt_depth->count()) flags.cfg.delta_depth = file_cfg.delta_depth;
            if (!opt_d->count()) flags.cfg.section_degree = file_cfg.section_degree;
            if (!opt_B->count()) flags.cfg.box = file_cfg.box;
            if (!opt_count->count()) flags.cfg.count = file_cfg.count;
            if (flags.cfg.map_text.empty()) flags.cfg.map_text = file_cfg.map_text;
            if (flags.cfg.point_texts.empty()) flags.cfg.point_texts = file_cfg.point_texts;
        }
        flags.iterations_given = opt_iter->count() > 0;
        load_sources(flags);

        if (height->parsed()) return cmd_height(flags);
        if (orb->parsed()) return cmd_orbit(flags, false);
        if (alpha->parsed()) return cmd_orbit(flags, true);
        if (delta->parsed()) return cmd_delta(flags);
        if (check->parsed()) return cmd_check(flags);
        if (sections->parsed()) return cmd_sections(flags);
        if (repro->parsed()) return cmd_reproduce(flags);
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NotHomogeneousError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const MixedDegreesError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedExtensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const AllZeroError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const SamplingExhaustedError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
