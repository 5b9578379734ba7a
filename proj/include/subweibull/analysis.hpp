#ifndef SUBWEIBULL_ANALYSIS_HPP
#define SUBWEIBULL_ANALYSIS_HPP

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subweibull/distribution.hpp"
#include "subweibull/subweibull.hpp"
#include "subweibull/tilting.hpp"
#include "subweibull/transform.hpp"
#include "subweibull/version.hpp"

namespace subweibull {

using json = nlohmann::json;

struct DistributionEntry {
    std::string name;
    Distribution dist;
    std::vector<double> tilts;
};

struct AnalysisConfig {
    std::vector<DistributionEntry> distributions;
    std::vector<double> q_grid;
    ToleranceConfig tolerances;
    std::uint64_t seed = 0;
    std::string output_dir = "analysis_out";
    bool emit_csv = true;
};

// ---------------------------------------------------------------------------
// Config parsing. Violations are collected, not fail-fast, so a single
// validate run reports everything wrong with the file.
// ---------------------------------------------------------------------------

namespace detail {

inline double require_number(const json& obj, const std::string& key, const std::string& where,
                             std::vector<std::string>& violations) {
    if (!obj.contains(key) || !obj[key].is_number()) {
        violations.push_back(where + "." + key + " must be a number");
        return 1.0;  // placeholder; violations force a throw later
    }
    return obj[key].get<double>();
}

inline std::optional<Distribution> parse_distribution(const json& spec, const std::string& where,
                                                      std::vector<std::string>& violations) {
    if (!spec.contains("family") || !spec["family"].is_string()) {
        violations.push_back(where + ".family must be a string");
        return std::nullopt;
    }
    const std::string family = spec["family"].get<std::string>();
    const json params = spec.contains("params") ? spec["params"] : json::object();
    if (!params.is_object()) {
        violations.push_back(where + ".params must be an object");
        return std::nullopt;
    }
    auto num = [&](const char* key) { return require_number(params, key, where + ".params", violations); };
    const std::size_t before = violations.size();
    try {
        if (family == "gaussian") {
            const double mu = num("mu"), sigma = num("sigma");
            if (violations.size() > before) return std::nullopt;
            if (sigma <= 0.0) {
                violations.push_back(where + ": gaussian.sigma must be > 0");
                return std::nullopt;
            }
            return make_gaussian(mu, sigma);
        }
        if (family == "exponential") {
            const double rate = num("rate");
            if (violations.size() > before) return std::nullopt;
            if (rate <= 0.0) {
                violations.push_back(where + ": exponential.rate must be > 0");
                return std::nullopt;
            }
            return make_exponential(rate);
        }
        if (family == "laplace") {
            const double loc = num("location"), scale = num("scale");
            if (violations.size() > before) return std::nullopt;
            if (scale <= 0.0) {
                violations.push_back(where + ": laplace.scale must be > 0");
                return std::nullopt;
            }
            return make_laplace(loc, scale);
        }
        if (family == "weibull") {
            const double shape = num("shape"), scale = num("scale");
            if (violations.size() > before) return std::nullopt;
            if (shape <= 0.0 || scale <= 0.0) {
                violations.push_back(where + ": weibull.shape and weibull.scale must be > 0");
                return std::nullopt;
            }
            return make_weibull(shape, scale);
        }
        if (family == "half_normal") {
            const double sigma = num("sigma");
            if (violations.size() > before) return std::nullopt;
            if (sigma <= 0.0) {
                violations.push_back(where + ": half_normal.sigma must be > 0");
                return std::nullopt;
            }
            return make_half_normal(sigma);
        }
        if (family == "poisson") {
            const double mu = num("mu");
            if (violations.size() > before) return std::nullopt;
            if (mu <= 0.0) {
                violations.push_back(where + ": poisson.mu must be > 0");
                return std::nullopt;
            }
            return make_poisson(mu);
        }
        if (family == "uniform") {
            const double a = num("a"), b = num("b");
            if (violations.size() > before) return std::nullopt;
            if (!(a < b)) {
                violations.push_back(where + ": uniform requires a < b");
                return std::nullopt;
            }
            return make_uniform(a, b);
        }
        if (family == "pareto") {
            const double x_min = num("x_min"), alpha = num("alpha");
            if (violations.size() > before) return std::nullopt;
            if (x_min <= 0.0 || alpha <= 0.0) {
                violations.push_back(where + ": pareto.x_min and pareto.alpha must be > 0");
                return std::nullopt;
            }
            return make_pareto(x_min, alpha);
        }
        if (family == "log_normal") {
            const double mu = num("mu"), sigma = num("sigma");
            if (violations.size() > before) return std::nullopt;
            if (sigma <= 0.0) {
                violations.push_back(where + ": log_normal.sigma must be > 0");
                return std::nullopt;
            }
            return make_log_normal(mu, sigma);
        }
        if (family == "point_mass") {
            const double c = num("c");
            if (violations.size() > before) return std::nullopt;
            return make_point_mass(c);
        }
        if (family == "two_sided_mixture") {
            if (!params.contains("left") || !params.contains("right")) {
                violations.push_back(where + ": two_sided_mixture needs left and right specs");
                return std::nullopt;
            }
            auto left = parse_distribution(params["left"], where + ".left", violations);
            auto right = parse_distribution(params["right"], where + ".right", violations);
            const double p = require_number(params, "p", where + ".params", violations);
            if (!left || !right || violations.size() > before) return std::nullopt;
            if (!(p > 0.0 && p < 1.0)) {
                violations.push_back(where + ": two_sided_mixture.p must lie in (0,1)");
                return std::nullopt;
            }
            return make_two_sided_mixture(std::move(*left), std::move(*right), p);
        }
    } catch (const std::invalid_argument& e) {
        violations.push_back(where + ": " + e.what());
        return std::nullopt;
    }
    violations.push_back(where + ": unknown family \"" + family + "\"");
    return std::nullopt;
}

inline void apply_tolerance_overrides(const json& t, ToleranceConfig& tol,
                                      std::vector<std::string>& violations) {
    for (auto it = t.begin(); it != t.end(); ++it) {
        const std::string& key = it.key();
        const json& v = it.value();
        auto as_double = [&](double& target) {
            if (v.is_number()) target = v.get<double>();
            else violations.push_back("tolerances." + key + " must be a number");
        };
        auto as_int = [&](int& target) {
            if (v.is_number_integer()) target = v.get<int>();
            else violations.push_back("tolerances." + key + " must be an integer");
        };
        auto as_bool = [&](bool& target) {
            if (v.is_boolean()) target = v.get<bool>();
            else violations.push_back("tolerances." + key + " must be a boolean");
        };
        if (key == "window_min_exp") as_int(tol.window_min_exp);
        else if (key == "window_max_exp") as_int(tol.window_max_exp);
        else if (key == "window_value_exp") as_int(tol.window_value_exp);
        else if (key == "log_increment_threshold") as_double(tol.log_increment_threshold);
        else if (key == "quad_rel_tol") as_double(tol.quad_rel_tol);
        else if (key == "interval_tol") as_double(tol.interval_tol);
        else if (key == "theta_max") as_double(tol.theta_max);
        else if (key == "radius_tol") as_double(tol.radius_tol);
        else if (key == "radius_lambda_max") as_double(tol.radius_lambda_max);
        else if (key == "radius_lambda_min") as_double(tol.radius_lambda_min);
        else if (key == "probability_tol") as_double(tol.probability_tol);
        else if (key == "t_max_scale") as_double(tol.t_max_scale);
        else if (key == "p_max") as_int(tol.p_max);
        else if (key == "prefer_closed_forms") as_bool(tol.prefer_closed_forms);
        else if (key == "use_tail_profiles") as_bool(tol.use_tail_profiles);
        else violations.push_back("tolerances." + key + " is not a known tolerance");
    }
}

}  // namespace detail

inline AnalysisConfig validate_config(const std::string& raw) {
    std::vector<std::string> violations;
    json root;
    try {
        root = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw ConfigError("config is not valid JSON", {e.what()});
    }
    if (!root.is_object()) throw ConfigError("config root must be an object",
                                             {"config root must be an object"});

    AnalysisConfig cfg;
    if (!root.contains("seed") || !root["seed"].is_number_integer())
        violations.push_back("seed is required and must be an integer (no wall-clock default)");
    else
        cfg.seed = root["seed"].get<std::uint64_t>();

    if (!root.contains("q_grid") || !root["q_grid"].is_array() || root["q_grid"].empty()) {
        violations.push_back("q_grid must be a nonempty array of positive reals");
    } else {
        for (const auto& q : root["q_grid"]) {
            if (!q.is_number() || q.get<double>() <= 0.0) {
                violations.push_back("q_grid entries must be positive numbers");
                break;
            }
            cfg.q_grid.push_back(q.get<double>());
        }
    }

    if (root.contains("output_dir")) {
        if (root["output_dir"].is_string()) cfg.output_dir = root["output_dir"].get<std::string>();
        else violations.push_back("output_dir must be a string");
    }
    if (root.contains("emit_csv")) {
        if (root["emit_csv"].is_boolean()) cfg.emit_csv = root["emit_csv"].get<bool>();
        else violations.push_back("emit_csv must be a boolean");
    }
    if (root.contains("tolerances")) {
        if (root["tolerances"].is_object())
            detail::apply_tolerance_overrides(root["tolerances"], cfg.tolerances, violations);
        else
            violations.push_back("tolerances must be an object");
    }

    if (!root.contains("distributions") || !root["distributions"].is_array() ||
        root["distributions"].empty()) {
        violations.push_back("distributions must be a nonempty array");
    } else {
        std::map<std::string, int> seen;
        int idx = 0;
        for (const auto& entry : root["distributions"]) {
            const std::string where = "distributions[" + std::to_string(idx) + "]";
            ++idx;
            if (!entry.is_object()) {
                violations.push_back(where + " must be an object");
                continue;
            }
            std::string name;
            if (!entry.contains("name") || !entry["name"].is_string() ||
                entry["name"].get<std::string>().empty()) {
                violations.push_back(where + ".name must be a nonempty string");
            } else {
                name = entry["name"].get<std::string>();
                if (++seen[name] > 1)
                    violations.push_back("duplicate distribution name \"" + name + "\"");
            }
            auto dist = detail::parse_distribution(entry, where, violations);
            std::vector<double> tilts;
            if (entry.contains("tilts")) {
                if (!entry["tilts"].is_array()) {
                    violations.push_back(where + ".tilts must be an array of numbers");
                } else {
                    for (const auto& t : entry["tilts"]) {
                        if (!t.is_number()) {
                            violations.push_back(where + ".tilts entries must be numbers");
                            break;
                        }
                        tilts.push_back(t.get<double>());
                    }
                }
            }
            if (entry.contains("tilt")) {  // single-tilt shorthand
                if (entry["tilt"].is_object() && entry["tilt"].contains("theta") &&
                    entry["tilt"]["theta"].is_number())
                    tilts.push_back(entry["tilt"]["theta"].get<double>());
                else
                    violations.push_back(where + ".tilt must be an object {\"theta\": number}");
            }
            if (dist && !name.empty())
                cfg.distributions.push_back({name, std::move(*dist), std::move(tilts)});
        }
    }

    if (!violations.empty()) throw ConfigError("invalid config", violations);
    return cfg;
}

// ---------------------------------------------------------------------------
// Canonical serialization: sorted keys (nlohmann objects iterate sorted),
// floats at 17 significant digits, LF line endings. Byte-identical output for
// identical configs.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_canonical(const json& j, std::ostream& os, int level) {
    const std::string pad(2 * static_cast<std::size_t>(level), ' ');
    const std::string pad_in(2 * static_cast<std::size_t>(level + 1), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in << json(it.key()).dump() << ": ";
                write_canonical(it.value(), os, level + 1);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& el : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad_in;
                write_canonical(el, os, level + 1);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float:
            os << format_double(j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

// Extended nonnegative endpoints serialize as a number or the string "inf".
inline json extended_json(double v) {
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

inline json interval_json(const ConvergenceInterval& ci) {
    return json{{"s", extended_json(ci.s)}, {"t", extended_json(ci.t)}};
}

inline json subweibull_report_json(const SubweibullReport& r) {
    json j;
    j["q"] = r.q;
    switch (r.verdict) {
        case SubweibullReport::Verdict::Strict: j["verdict"] = "strict"; break;
        case SubweibullReport::Verdict::Broad: j["verdict"] = "broad"; break;
        case SubweibullReport::Verdict::NotSubweibull: j["verdict"] = "not_subweibull"; break;
    }
    j["r_q"] = extended_json(r.r_q);
    j["k1"] = r.k1 ? json(*r.k1) : json(nullptr);
    j["k2"] = r.k2 ? json(*r.k2) : json(nullptr);
    j["k3"] = r.k3 ? json(*r.k3) : json(nullptr);
    j["boundary_attained"] = r.boundary_attained ? json(*r.boundary_attained) : json(nullptr);
    return j;
}

inline json preservation_json(const PreservationReport& r) {
    json j;
    j["q"] = r.q;
    j["theta"] = r.theta;
    j["r_base"] = extended_json(r.r_base);
    j["r_tilted"] = extended_json(r.r_tilted);
    j["relative_gap"] = extended_json(r.relative_gap);
    return j;
}

inline json tolerances_json(const ToleranceConfig& t) {
    json j;
    j["window_min_exp"] = t.window_min_exp;
    j["window_max_exp"] = t.window_max_exp;
    j["window_value_exp"] = t.window_value_exp;
    j["log_increment_threshold"] = t.log_increment_threshold;
    j["quad_rel_tol"] = t.quad_rel_tol;
    j["interval_tol"] = t.interval_tol;
    j["theta_max"] = t.theta_max;
    j["radius_tol"] = t.radius_tol;
    j["radius_lambda_max"] = t.radius_lambda_max;
    j["radius_lambda_min"] = t.radius_lambda_min;
    j["probability_tol"] = t.probability_tol;
    j["t_max_scale"] = t.t_max_scale;
    j["p_max"] = t.p_max;
    j["prefer_closed_forms"] = t.prefer_closed_forms;
    j["use_tail_profiles"] = t.use_tail_profiles;
    return j;
}

inline json distribution_json(const Distribution& d) {
    json j;
    j["family"] = d.family_name();
    json p;
    std::visit(
        [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, Gaussian>) p = {{"mu", f.mu}, {"sigma", f.sigma}};
            else if constexpr (std::is_same_v<T, Exponential>) p = {{"rate", f.rate}};
            else if constexpr (std::is_same_v<T, Laplace>)
                p = {{"location", f.location}, {"scale", f.scale}};
            else if constexpr (std::is_same_v<T, Weibull>)
                p = {{"shape", f.shape}, {"scale", f.scale}};
            else if constexpr (std::is_same_v<T, HalfNormal>) p = {{"sigma", f.sigma}};
            else if constexpr (std::is_same_v<T, Poisson>) p = {{"mu", f.mu}};
            else if constexpr (std::is_same_v<T, Uniform>) p = {{"a", f.a}, {"b", f.b}};
            else if constexpr (std::is_same_v<T, Pareto>)
                p = {{"x_min", f.x_min}, {"alpha", f.alpha}};
            else if constexpr (std::is_same_v<T, LogNormal>)
                p = {{"mu", f.mu}, {"sigma", f.sigma}};
            else if constexpr (std::is_same_v<T, PointMass>) p = {{"c", f.c}};
            else {
                const TwoSidedMixture& m = f;
                p = {{"left", distribution_json(*m.left)},
                     {"right", distribution_json(*m.right)},
                     {"p", m.p}};
            }
        },
        d.family());
    j["params"] = p;
    return j;
}

inline std::string format_q_for_filename(double q) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", q);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    os << text;
    if (!os) throw IoError("failed writing " + path.string());
}

inline std::string csv_of_sequence(const std::vector<std::pair<double, double>>& seq) {
    std::ostringstream os;
    os << "x,value\n";
    for (const auto& [x, v] : seq) {
        os << format_double(x) << ",";
        if (std::isinf(v))
            os << (v > 0 ? "inf" : "-inf");
        else
            os << format_double(v);
        os << "\n";
    }
    return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The batch pipeline: per distribution, the convergence interval and tail
// classes; per q, a subweibull report; per tilt, the shifted interval,
// normalizer and (for q > 1) preservation reports. A failing tilt is recorded
// on its own entry and never disturbs the others.
// ---------------------------------------------------------------------------
inline json run_analysis(const AnalysisConfig& cfg) {
    const ToleranceConfig& tol = cfg.tolerances;
    json results = json::object();

    for (const auto& entry : cfg.distributions) {
        json r;
        r["family"] = entry.dist.family_name();
        const ConvergenceInterval ci = convergence_interval(entry.dist, tol);
        r["convergence_interval"] = detail::interval_json(ci);
        r["tail_classification"] = {
            {"left", ci.s == 0.0 ? "heavy" : "light"},
            {"right", ci.t == 0.0 ? "heavy" : "light"},
        };

        json sw = json::array();
        for (double q : cfg.q_grid) sw.push_back(detail::subweibull_report_json(classify(entry.dist, q, tol)));
        r["subweibull"] = sw;

        json tilts = json::array();
        for (double theta : entry.tilts) {
            json tj;
            tj["theta"] = theta;
            try {
                const TiltedDistribution td = tilt(entry.dist, theta, tol);
                tj["error"] = nullptr;
                tj["log_normalizer"] = td.log_normalizer;
                tj["convergence_interval"] =
                    detail::interval_json(tilted_convergence_interval(td, tol));
                json pres = json::array();
                for (double q : cfg.q_grid) {
                    if (q > 1.0)
                        pres.push_back(detail::preservation_json(
                            radius_preservation_report(entry.dist, theta, q, tol)));
                }
                tj["preservation"] = pres;
            } catch (const TiltOutsideInterval& e) {
                tj["error"] = e.what();
            }
            tilts.push_back(tj);
        }
        r["tilts"] = tilts;
        results[entry.name] = r;
    }

    json config_echo;
    config_echo["seed"] = cfg.seed;
    config_echo["q_grid"] = cfg.q_grid;
    config_echo["output_dir"] = cfg.output_dir;
    config_echo["emit_csv"] = cfg.emit_csv;
    config_echo["tolerances"] = detail::tolerances_json(tol);
    json dists = json::array();
    for (const auto& e : cfg.distributions) {
        json d = detail::distribution_json(e.dist);
        d["name"] = e.name;
        d["tilts"] = e.tilts;
        dists.push_back(d);
    }
    config_echo["distributions"] = dists;

    json report;
    report["tool_version"] = kVersion;
    report["config"] = config_echo;
    report["results"] = results;
    return report;
}

inline std::string render_report(const json& report) {
    std::ostringstream os;
    detail::write_canonical(report, os, 0);
    os << "\n";
    return os.str();
}

// Runs the analysis and writes report.json plus one CSV per diagnostic
// sequence. The override arguments steer where files land without touching
// the config echo: report.json stays a pure function of the config text.
inline json run_analysis_to_files(const AnalysisConfig& cfg, std::string output_dir = "",
                                  std::optional<bool> emit_csv = std::nullopt) {
    namespace fs = std::filesystem;
    if (output_dir.empty()) output_dir = cfg.output_dir;
    const bool write_csv = emit_csv.value_or(cfg.emit_csv);
    const json report = run_analysis(cfg);
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError("cannot create output directory " + output_dir);
    detail::write_text_file(fs::path(output_dir) / "report.json", render_report(report));

    if (write_csv) {
        for (const auto& entry : cfg.distributions) {
            const double scale = entry.dist.scale_hint();
            const double t_max = cfg.tolerances.t_max_scale * scale;
            // diagnostic tilt rate: lambda = (1 / (2 scale))^q keeps the
            // envelope comparable across families
            for (double q : cfg.q_grid) {
                const double lambda = std::pow(0.5 / scale, q);
                std::vector<double> t_grid;
                for (int i = 1; i <= 40; ++i)
                    t_grid.push_back(t_max * std::pow(10.0, -2.0 * (1.0 - i / 40.0)));
                const auto tail = limsup_tail_diagnostic(entry.dist, q, lambda, t_grid);
                detail::write_text_file(fs::path(output_dir) /
                                            (entry.name + "_tail_q" +
                                             detail::format_q_for_filename(q) + ".csv"),
                                        detail::csv_of_sequence(tail));
                try {
                    std::vector<int> p_grid;
                    for (int p = 1; p <= cfg.tolerances.p_max; ++p) p_grid.push_back(p);
                    const auto mom = limsup_moment_diagnostic(entry.dist, q, p_grid, cfg.tolerances);
                    std::vector<std::pair<double, double>> seq;
                    seq.reserve(mom.size());
                    for (const auto& [p, v] : mom) seq.emplace_back(p, v);
                    detail::write_text_file(fs::path(output_dir) /
                                                (entry.name + "_moment_q" +
                                                 detail::format_q_for_filename(q) + ".csv"),
                                            detail::csv_of_sequence(seq));
                } catch (const MomentDivergence&) {
                    // heavy-tail input: the moment sequence does not exist;
                    // the tail CSV still carries the divergence evidence
                }
            }
        }
    }
    return report;
}

}  // namespace subweibull

#endif  // SUBWEIBULL_ANALYSIS_HPP
