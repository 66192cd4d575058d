#include "persuasion/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "persuasion/benchmark.hpp"
#include "persuasion/costs.hpp"
#include "persuasion/crossing.hpp"
#include "persuasion/equilibria.hpp"
#include "persuasion/wald.hpp"

namespace persuasion::cli {

using Json = nlohmann::ordered_json;

namespace {

class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

Json parse_document(const std::string& text, std::vector<ConfigError>& errors) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto [line, col] = line_col(text, e.byte);
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << col << ": " << e.what();
        errors.push_back({"document", os.str()});
        return {};
    }
}

std::optional<double> number_field(const Json& obj, const char* key, const std::string& field,
                                   std::vector<ConfigError>& errors) {
    if (!obj.contains(key)) {
        errors.push_back({field, "missing field " + field});
        return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number()) {
        errors.push_back({field, field + " must be a number"});
        return std::nullopt;
    }
    return v.get<double>();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string describe(const std::vector<ConfigError>& errors) {
    std::string out;
    for (const auto& e : errors) out += e.field + ": " + e.message + "\n";
    return out;
}

Json to_json(const Experiment& e) {
    return Json{{"p", e.p()}, {"q", e.q()}, {"uninformative", e.is_uninformative()}};
}

Json to_json(const GameConfig& cfg) {
    Json cost;
    if (cfg.is_llr()) {
        cost = {{"model", "llr"}, {"C_g", cfg.llr().c_good}, {"C_b", cfg.llr().c_bad}};
    } else {
        cost = {{"model", "shannon"}, {"C", std::get<ShannonCost>(cfg.cost).c}};
    }
    Json types = Json::array();
    for (const auto& t : cfg.types) types.push_back({{"mu", t.mu}, {"prob", t.prob}});
    return Json{{"cost", cost}, {"beta_bar", cfg.beta_bar}, {"types", types}};
}

Json opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const CrossingReport& r) {
    return Json{{"regime", to_string(r.regime)},
                {"C_g", r.c_good},
                {"C_b", r.c_bad},
                {"K_hat", r.k_hat},
                {"x_hat", r.x_hat},
                {"t_star", opt(r.t_star)},
                {"delta_at_t_star", r.delta_at_tstar},
                {"t_hat", opt(r.t_hat)},
                {"t_check", opt(r.t_check)}};
}

Json to_json(const BenchmarkSolution& b, double mu, double beta) {
    return Json{{"mu", mu},
                {"beta", beta},
                {"experiment", to_json(b.experiment)},
                {"value", b.value},
                {"p_sym", opt(b.p_sym)},
                {"feasibility", b.feasibility}};
}

Json to_json(const BlackwellEntry& e) {
    return Json{{"theta", e.theta},
                {"outcome", to_json(e.outcome)},
                {"benchmark", to_json(e.benchmark)},
                {"order", to_string(e.order)}};
}

Json profile_json(const std::vector<Experiment>& assignment) {
    Json out = Json::array();
    for (const auto& e : assignment) out.push_back({{"p", e.p()}, {"q", e.q()}});
    return out;
}

GameConfig require_config(const Options& opts) {
    const auto loaded = opts.config_path.empty() ? load_config(opts.config_text) : load_config_file(opts.config_path);
    if (!loaded.ok()) throw InvalidInput(describe(loaded.errors));
    return *loaded.config;
}

Json analyze(const GameConfig& cfg) {
    Json doc = to_json(cfg);
    doc["mu0"] = cfg.mu0;
    doc["crossing"] = cfg.is_llr() ? to_json(crossing_regime(cfg.llr().c_good, cfg.llr().c_bad)) : Json(nullptr);
    return doc;
}

Json separating_doc(const GameConfig& cfg, Json& doc) {
    const auto out = separating(cfg);
    Json types = Json::array();
    std::vector<Experiment> assignment;
    for (std::size_t th = 0; th < out.types.size(); ++th) {
        const auto& t = out.types[th];
        types.push_back({{"theta", th},
                         {"mu", cfg.mu(th)},
                         {"experiment", to_json(t.experiment)},
                         {"payoff", t.payoff},
                         {"binding", t.binding}});
        assignment.push_back(t.experiment);
    }
    doc["separating"] = types;
    Json bw = Json::array();
    for (const auto& e : compare_blackwell(out, cfg)) bw.push_back(to_json(e));
    doc["blackwell"] = bw;
    return profile_json(assignment);
}

Json pooling_doc(const GameConfig& cfg, const CrossingReport& rep, Json& doc) {
    const auto s = pooling_set(cfg);
    Json pool{{"nonempty", s.nonempty()},
              {"q_lo", s.q_lo},
              {"q_hi", s.q_hi},
              {"obedience_bound", s.obedience_bound},
              {"participation_bound", s.participation_bound},
              {"large_deviation_bound", s.large_dev_bound},
              {"t_hat", s.t_hat}};
    Json profile = nullptr;
    if (s.nonempty()) {
        const double q_mid = 0.5 * (s.q_lo + s.q_hi);
        const auto mid = pooling_experiment(q_mid, rep);
        pool["top"] = to_json(pooling_experiment(s.q_hi, rep));
        pool["representative"] = to_json(mid);
        doc["blackwell"] = Json::array({to_json(compare_blackwell(s, cfg))});
        profile = profile_json(std::vector<Experiment>(cfg.size(), mid));
    }
    doc["pooling"] = pool;
    return profile;
}

Json uninformative_doc(const GameConfig& cfg, Json& doc) {
    const auto u = uninformative_report(cfg);
    doc["uninformative"] = Json{{"exists", u.exists},
                                {"pi_star", to_json(u.pi_star)},
                                {"mu_bar", u.mu_bar},
                                {"no_guarantee", u.no_guarantee}};
    if (!u.exists) return nullptr;
    return profile_json(std::vector<Experiment>(cfg.size(), Experiment::uninformative()));
}

Json solve(const GameConfig& cfg, Equilibrium which) {
    Json doc = to_json(cfg);
    // Raises the regime mismatch for Shannon configs.
    if (!cfg.is_llr()) require_regime(cfg, Regime::SingleCrossing);
    const auto rep = crossing_regime(cfg.llr().c_good, cfg.llr().c_bad);
    doc["crossing"] = to_json(rep);

    Json profile = nullptr;
    std::string kind;
    auto pick = [&](Json candidate, const char* name) {
        if (profile.is_null() && !candidate.is_null()) {
            profile = std::move(candidate);
            kind = name;
        }
    };
    switch (which) {
        case Equilibrium::Auto:
            if (rep.regime == Regime::SingleCrossing) {
                pick(separating_doc(cfg, doc), "separating");
            } else {
                pick(pooling_doc(cfg, rep, doc), "pooling");
                pick(uninformative_doc(cfg, doc), "uninformative");
            }
            break;
        case Equilibrium::Separating:
            require_regime(cfg, Regime::SingleCrossing);
            pick(separating_doc(cfg, doc), "separating");
            break;
        case Equilibrium::Pooling:
            pick(pooling_doc(cfg, require_regime(cfg, Regime::TripleCrossing), doc), "pooling");
            break;
        case Equilibrium::Uninformative:
            pick(uninformative_doc(cfg, doc), "uninformative");
            break;
    }
    doc["profile_kind"] = profile.is_null() ? Json(nullptr) : Json(kind);
    doc["profile"] = profile;
    return doc;
}

Json verify(const GameConfig& cfg, const Options& opts, bool& ok) {
    std::string text = opts.config_text;
    if (!opts.profile_path.empty()) {
        text = read_file(opts.profile_path);
    } else if (!opts.config_path.empty()) {
        text = read_file(opts.config_path);
    }
    const auto prof = load_profile(text, cfg.size());
    GridSpec g;
    g.n_p = g.n_q = opts.grid;
    g.tol = opts.tol;
    g.threads = opts.threads;
    const auto r = verify_d1(prof, cfg, g);
    ok = r.ok();

    Json on_path = Json::array();
    for (std::size_t th = 0; th < cfg.size(); ++th) {
        on_path.push_back({{"theta", th},
                           {"experiment", to_json(prof.assignment[th])},
                           {"payoff", r.on_path_payoffs[th]},
                           {"belief", r.on_path_beliefs[th]}});
    }
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back({{"kind", to_string(v.kind)},
                              {"theta", v.theta},
                              {"witness", to_json(v.witness)},
                              {"belief", v.belief},
                              {"margin", v.margin}});
    }
    return Json{{"ok", r.ok()},
                {"grid", opts.grid},
                {"tol", opts.tol},
                {"deviations_checked", r.deviations_checked},
                {"on_path", on_path},
                {"violations", violations}};
}

Json bench(const GameConfig& cfg) {
    Json types = Json::array();
    for (std::size_t th = 0; th < cfg.size(); ++th) {
        auto row = to_json(solve_benchmark(cfg.mu(th), cfg.mu(th), cfg), cfg.mu(th), cfg.mu(th));
        row["theta"] = th;
        types.push_back(row);
    }
    return Json{{"types", types}, {"prior", to_json(solve_benchmark(cfg.mu0, cfg.mu0, cfg), cfg.mu0, cfg.mu0)}};
}

Json wald(const Options& opts) {
    WaldConfig w;
    w.alpha = opts.alpha;
    w.c_g = opts.c_g;
    w.c_b = opts.c_b;
    w.n_bar = opts.n_bar;
    w.n_low = opts.n_low;
    w.mu0 = opts.mu0;
    w.seed = opts.seed;
    w.n_paths = opts.paths;
    w.threads = opts.threads;
    validate(w);

    const auto e = thresholds_to_experiment(w.alpha, w.n_bar, w.n_low);
    const auto [mu_top, mu_bottom] = posterior_thresholds(w.mu0, w.alpha, w.n_bar, w.n_low);
    const auto [cost_good, cost_bad] = conditional_costs(w);
    const auto llr = map_to_llr_constants(w.alpha, w.c_g, w.c_b);
    const auto s = simulate(w);

    return Json{
        {"config",
         {{"alpha", w.alpha}, {"c_g", w.c_g}, {"c_b", w.c_b}, {"n_bar", w.n_bar}, {"n_low", w.n_low}, {"mu0", w.mu0}}},
        {"closed_form",
         {{"p", e.p()},
          {"q", e.q()},
          {"mu_top", mu_top},
          {"mu_bottom", mu_bottom},
          {"cost", closed_form_cost(w)},
          {"cost_good", cost_good},
          {"cost_bad", cost_bad},
          {"C_g", llr.c_good},
          {"C_b", llr.c_bad},
          {"llr_cost", cost(e, w.mu0, llr)}}},
        {"simulation",
         {{"seed", s.seed},
          {"n_paths", s.n_paths},
          {"mean_cost", s.mean_cost},
          {"se_cost", s.se_cost},
          {"p_emp", s.p_emp},
          {"q_emp", s.q_emp},
          {"mean_draws", s.mean_draws},
          {"paths_good", s.paths_good},
          {"paths_bad", s.paths_bad},
          {"mean_draws_good", s.mean_draws_good},
          {"mean_draws_bad", s.mean_draws_bad},
          {"mean_cost_good", s.mean_cost_good},
          {"se_cost_good", s.se_cost_good},
          {"mean_cost_bad", s.mean_cost_bad},
          {"se_cost_bad", s.se_cost_bad},
          {"mean_posterior", s.mean_posterior},
          {"se_posterior", s.se_posterior},
          {"cap_hits", s.cap_hits}}}};
}

struct Series {
    std::string name;
    std::optional<double> mu;
    std::vector<CurvePoint> points;
};

std::vector<Series> curves(const GameConfig& cfg, const Options& opts) {
    const double p0 = opts.p.value_or(0.7);
    const double q0 = opts.q.value_or(0.3);
    if (!(q0 > 0.0 && q0 < p0 && p0 < 1.0)) throw InvalidInput("curves: need 0 < q < p < 1");
    if (opts.samples < 2) throw InvalidInput("curves: samples must be at least 2");
    const int n = opts.samples;

    std::vector<Series> out;
    for (std::size_t th = 0; th < cfg.size(); ++th) {
        auto down = trace_indifference(p0, q0, cfg.mu(th), cfg.cost, 0.0);
        const auto up = trace_indifference(p0, q0, cfg.mu(th), cfg.cost, 1.0);
        std::reverse(down.begin(), down.end());
        down.insert(down.end(), up.begin() + 1, up.end());
        out.push_back({"indifference", cfg.mu(th), std::move(down)});
    }

    auto locus = [&](const char* name, auto&& fn) {
        Series s{name, std::nullopt, {}};
        for (int i = 1; i < n; ++i) {
            const double q = static_cast<double>(i) / n;
            const double p = fn(q);
            if (p <= 1.0) s.points.push_back({p, q});
        }
        out.push_back(std::move(s));
    };
    if (cfg.is_llr()) {
        const auto rep = crossing_regime(cfg.llr().c_good, cfg.llr().c_bad);
        if (rep.regime == Regime::TripleCrossing) {
            locus("p_hat", [&](double q) { return p_hat(q, rep); });
            locus("p_check", [&](double q) { return p_check(q, rep); });
        }
    } else {
        const double c = std::get<ShannonCost>(cfg.cost).c;
        locus("p_tilde", [&](double q) { return shannon_p_tilde(q, c); });
    }

    std::vector<double> mus;
    for (const auto& t : cfg.types) mus.push_back(t.mu);
    mus.push_back(cfg.mu0);
    for (std::size_t k = 0; k < mus.size(); ++k) {
        Series s{k + 1 == mus.size() ? "obedience_prior" : "obedience", mus[k], {}};
        const double ratio = q_ratio(mus[k], cfg.beta_bar);
        for (int i = 0; i < n; ++i) {
            const double p = static_cast<double>(i) / (n - 1);
            s.points.push_back({p, ratio * p});
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::string curves_csv(const std::vector<Series>& series) {
    std::string out = "series,mu,p,q\n";
    char buf[128];
    for (const auto& s : series) {
        std::string mu;
        if (s.mu) {
            std::snprintf(buf, sizeof buf, "%.17g", *s.mu);
            mu = buf;
        }
        for (const auto& pt : s.points) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", pt.p, pt.q);
            out += s.name + "," + mu + buf;
        }
    }
    return out;
}

Json curves_json(const std::vector<Series>& series, const Options& opts) {
    Json arr = Json::array();
    for (const auto& s : series) {
        Json pts = Json::array();
        for (const auto& pt : s.points) pts.push_back(Json::array({pt.p, pt.q}));
        arr.push_back({{"name", s.name}, {"mu", opt(s.mu)}, {"points", pts}});
    }
    return Json{{"experiment", {{"p", opts.p.value_or(0.7)}, {"q", opts.q.value_or(0.3)}}}, {"series", arr}};
}

}  // namespace

const char* to_string(Command c) {
    switch (c) {
        case Command::Analyze: return "analyze";
        case Command::Solve: return "solve";
        case Command::Verify: return "verify";
        case Command::Bench: return "bench";
        case Command::Wald: return "wald";
        case Command::Curves: return "curves";
    }
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (auto c : {Command::Analyze, Command::Solve, Command::Verify, Command::Bench, Command::Wald, Command::Curves}) {
        if (name == to_string(c)) return c;
    }
    return std::nullopt;
}

LoadResult load_config(const std::string& text) {
    LoadResult out;
    const Json doc = parse_document(text, out.errors);
    if (!out.errors.empty()) return out;
    if (!doc.is_object()) {
        out.errors.push_back({"document", "config must be an object"});
        return out;
    }

    RawConfig raw;
    auto& errs = out.errors;
    if (!doc.contains("cost")) {
        errs.push_back({"cost", "missing field cost"});
    } else if (!doc["cost"].is_object()) {
        errs.push_back({"cost", "cost must be an object"});
    } else {
        const auto& c = doc["cost"];
        const std::string model = c.contains("model") && c["model"].is_string() ? c["model"].get<std::string>() : "";
        if (!c.contains("model")) {
            errs.push_back({"cost.model", "missing field cost.model"});
        } else if (model == "llr") {
            const auto cg = number_field(c, "C_g", "cost.C_g", errs);
            const auto cb = number_field(c, "C_b", "cost.C_b", errs);
            if (cg && cb) raw.cost = LlrCost{*cg, *cb};
        } else if (model == "shannon") {
            if (const auto cc = number_field(c, "C", "cost.C", errs)) raw.cost = ShannonCost{*cc};
        } else {
            errs.push_back({"cost.model", "cost.model must be \"llr\" or \"shannon\""});
        }
    }

    if (const auto bb = number_field(doc, "beta_bar", "beta_bar", errs)) raw.beta_bar = *bb;

    if (!doc.contains("types")) {
        errs.push_back({"types", "missing field types"});
    } else if (!doc["types"].is_array()) {
        errs.push_back({"types", "types must be an array"});
    } else {
        const auto& ts = doc["types"];
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const std::string where = "types[" + std::to_string(i) + "]";
            if (!ts[i].is_object()) {
                errs.push_back({where, where + " must be an object"});
                continue;
            }
            const auto mu = number_field(ts[i], "mu", where + ".mu", errs);
            const auto prob = number_field(ts[i], "prob", where + ".prob", errs);
            if (mu && prob) raw.types.push_back({*mu, *prob});
        }
    }
    if (!errs.empty()) return out;

    auto v = validate_config(raw);
    out.config = std::move(v.config);
    out.errors = std::move(v.errors);
    return out;
}

LoadResult load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {std::nullopt, {{"config", "cannot read " + path}}};
    std::ostringstream os;
    os << in.rdbuf();
    return load_config(os.str());
}

StrategyProfile load_profile(const std::string& text, std::size_t n_types) {
    std::vector<ConfigError> errors;
    const Json doc = parse_document(text, errors);
    if (!errors.empty()) throw InvalidInput(describe(errors));
    if (!doc.is_object() || !doc.contains("profile")) throw InvalidInput("profile: missing field profile");
    const auto& arr = doc["profile"];
    if (!arr.is_array()) throw InvalidInput("profile: profile must be an array of {p, q}");
    if (arr.size() != n_types) {
        throw InvalidInput("profile: expected " + std::to_string(n_types) + " entries, got " + std::to_string(arr.size()));
    }
    StrategyProfile prof;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "profile[" + std::to_string(i) + "]";
        const auto p = arr[i].is_object() ? number_field(arr[i], "p", where + ".p", errors) : std::nullopt;
        const auto q = arr[i].is_object() ? number_field(arr[i], "q", where + ".q", errors) : std::nullopt;
        if (!arr[i].is_object()) errors.push_back({where, where + " must be an object"});
        if (!p || !q) continue;
        try {
            prof.assignment.push_back(Experiment::make(*p, *q));
        } catch (const std::invalid_argument&) {
            errors.push_back({where, where + " must satisfy 0 <= q <= p <= 1"});
        }
    }
    if (!errors.empty()) throw InvalidInput(describe(errors));
    return prof;
}

RunResult run(const Options& opts) {
    RunResult res;
    try {
        if (opts.format == Format::Csv && opts.command != Command::Curves) {
            throw InvalidInput("--format csv is only available for curves");
        }
        if (opts.grid < 3) throw InvalidInput("--grid must be at least 3");
        Json doc;
        switch (opts.command) {
            case Command::Analyze: doc = analyze(require_config(opts)); break;
            case Command::Solve: doc = solve(require_config(opts), opts.equilibrium); break;
            case Command::Verify: {
                bool ok = true;
                doc = verify(require_config(opts), opts, ok);
                if (!ok) res.status = kViolations;
                break;
            }
            case Command::Bench: doc = bench(require_config(opts)); break;
            case Command::Wald: doc = wald(opts); break;
            case Command::Curves: {
                const auto series = curves(require_config(opts), opts);
                if (opts.format == Format::Csv) {
                    res.output = curves_csv(series);
                    return res;
                }
                doc = curves_json(series, opts);
                break;
            }
        }
        res.output = doc.dump(2) + "\n";
    } catch (const RegimeError& e) {
        res = {kRegimeMismatch, "", e.what()};
    } catch (const std::exception& e) {
        res = {kInvalidInput, "", e.what()};
    }
    return res;
}

}  // namespace persuasion::cli
