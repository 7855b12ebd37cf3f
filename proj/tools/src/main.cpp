// levydiv command-line front end: dividend values, optimal barriers, Parisian
// ruin probabilities and Monte Carlo cross-checks, driven by a sectioned JSON
// config. Exit codes: 0 success, 1 numerical failure, 2 config/validation
// failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <levydiv/dividend_payment_delay.hpp>
#include <levydiv/dividend_ruin_delay.hpp>
#include <levydiv/numerics.hpp>
#include <levydiv/parisian_ruin.hpp>
#include <levydiv/scale.hpp>
#include <levydiv/simulate.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace levydiv;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_keys(const json& j, const std::string& section,
                std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw ConfigError("config section '" + section + "': unknown key '" +
                              it.key() + "'");
    }
}

double require_number(const json& j, const std::string& section, const char* key) {
    if (!j.contains(key))
        throw ConfigError("config section '" + section + "': missing key '" + key + "'");
    if (!j[key].is_number())
        throw ConfigError("config section '" + section + "': key '" + key +
                          "' must be a number");
    return j[key].get<double>();
}

struct ControlSection {
    double q = 0.0;
    double zeta = 0.0;
    double d = 0.0;
    bool a_optimal = false;
    double a = 0.0;
    bool has_a = false;
};

struct RunConfig {
    RiskModel model = CramerLundbergExp{2.0, 1.0, 1.0};
    ControlSection control;
    std::vector<double> grid;
    SimConfig sim;
    std::string sim_target;
    double sim_x = 0.0;
    bool sim_has_x = false;
    double time_cap = 0.0;
    bool has_time_cap = false;
    std::string out_path;
    std::string format = "csv";
    bool has_control = false, has_grid = false, has_sim = false, has_output = false;
};

RiskModel parse_model(const json& j) {
    if (!j.contains("variant") || !j["variant"].is_string())
        throw ConfigError("config section 'model': missing string key 'variant'");
    const std::string variant = j["variant"].get<std::string>();
    RiskModel model;
    if (variant == "cramer_lundberg") {
        check_keys(j, "model", {"variant", "premium_rate", "claim_intensity", "claim_rate"});
        model = CramerLundbergExp{require_number(j, "model", "premium_rate"),
                                  require_number(j, "model", "claim_intensity"),
                                  require_number(j, "model", "claim_rate")};
    } else if (variant == "brownian") {
        check_keys(j, "model", {"variant", "drift", "volatility"});
        model = BrownianDrift{require_number(j, "model", "drift"),
                              require_number(j, "model", "volatility")};
    } else {
        throw ConfigError("config section 'model': variant must be 'cramer_lundberg' or 'brownian'");
    }
    try {
        validate(model);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config section 'model': ") + e.what());
    }
    return model;
}

ControlSection parse_control(const json& j) {
    check_keys(j, "control", {"q", "zeta", "d", "a"});
    ControlSection c;
    if (j.contains("q")) c.q = require_number(j, "control", "q");
    if (j.contains("zeta")) {
        c.zeta = require_number(j, "control", "zeta");
        if (!(c.zeta >= 0.0)) throw ConfigError("config section 'control': zeta must be >= 0");
    }
    if (j.contains("d")) {
        c.d = require_number(j, "control", "d");
        if (!(c.d >= 0.0)) throw ConfigError("config section 'control': d must be >= 0");
    }
    if (j.contains("a")) {
        c.has_a = true;
        if (j["a"].is_string()) {
            if (j["a"].get<std::string>() != "optimal")
                throw ConfigError("config section 'control': a must be a number or \"optimal\"");
            c.a_optimal = true;
        } else {
            c.a = require_number(j, "control", "a");
            if (!(c.a >= 0.0)) throw ConfigError("config section 'control': a must be >= 0");
        }
    }
    return c;
}

std::vector<double> parse_grid(const json& j) {
    check_keys(j, "grid", {"x_min", "x_max", "n_points"});
    const double lo = require_number(j, "grid", "x_min");
    const double hi = require_number(j, "grid", "x_max");
    const double np = require_number(j, "grid", "n_points");
    const int n = static_cast<int>(np);
    if (n != np || n < 1) throw ConfigError("config section 'grid': n_points must be a positive integer");
    if (!(hi >= lo)) throw ConfigError("config section 'grid': x_max must be >= x_min");
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return xs;
}

void parse_sim(const json& j, RunConfig& cfg) {
    check_keys(j, "sim", {"n_paths", "seed", "euler_step", "horizon_epsilon",
                          "batch_size", "target", "x", "time_cap"});
    if (j.contains("n_paths")) {
        const double v = require_number(j, "sim", "n_paths");
        if (v != static_cast<std::uint64_t>(v) || v < 1)
            throw ConfigError("config section 'sim': n_paths must be a positive integer");
        cfg.sim.n_paths = static_cast<std::uint64_t>(v);
    }
    if (j.contains("seed")) cfg.sim.seed = static_cast<std::uint64_t>(require_number(j, "sim", "seed"));
    if (j.contains("euler_step")) cfg.sim.euler_step = require_number(j, "sim", "euler_step");
    if (j.contains("horizon_epsilon"))
        cfg.sim.horizon_epsilon = require_number(j, "sim", "horizon_epsilon");
    if (j.contains("batch_size")) {
        const double v = require_number(j, "sim", "batch_size");
        if (v != static_cast<std::uint64_t>(v) || v < 1)
            throw ConfigError("config section 'sim': batch_size must be a positive integer");
        cfg.sim.batch_size = static_cast<std::uint64_t>(v);
    }
    if (j.contains("target")) {
        if (!j["target"].is_string())
            throw ConfigError("config section 'sim': target must be a string");
        cfg.sim_target = j["target"].get<std::string>();
    }
    if (j.contains("x")) {
        cfg.sim_x = require_number(j, "sim", "x");
        cfg.sim_has_x = true;
    }
    if (j.contains("time_cap")) {
        cfg.time_cap = require_number(j, "sim", "time_cap");
        cfg.has_time_cap = true;
    }
    try {
        cfg.sim.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config section 'sim': ") + e.what());
    }
}

void parse_output(const json& j, RunConfig& cfg) {
    check_keys(j, "output", {"path", "format"});
    if (!j.contains("path") || !j["path"].is_string())
        throw ConfigError("config section 'output': missing string key 'path'");
    cfg.out_path = j["path"].get<std::string>();
    if (j.contains("format")) {
        if (!j["format"].is_string())
            throw ConfigError("config section 'output': format must be a string");
        cfg.format = j["format"].get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json")
            throw ConfigError("config section 'output': format must be 'csv' or 'json'");
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    check_keys(j, "<root>", {"model", "control", "grid", "sim", "output"});
    if (!j.contains("model")) throw ConfigError("config: missing 'model' section");
    RunConfig cfg;
    cfg.model = parse_model(j["model"]);
    if (j.contains("control")) {
        cfg.control = parse_control(j["control"]);
        cfg.has_control = true;
    }
    if (j.contains("grid")) {
        cfg.grid = parse_grid(j["grid"]);
        cfg.has_grid = true;
    }
    if (j.contains("sim")) {
        parse_sim(j["sim"], cfg);
        cfg.has_sim = true;
    }
    if (j.contains("output")) {
        parse_output(j["output"], cfg);
        cfg.has_output = true;
    }
    return cfg;
}

void require_sections(const RunConfig& cfg, bool control, bool grid, bool sim,
                      bool output) {
    if (control && !cfg.has_control) throw ConfigError("config: missing 'control' section");
    if (grid && !cfg.has_grid) throw ConfigError("config: missing 'grid' section");
    if (sim && !cfg.has_sim) throw ConfigError("config: missing 'sim' section");
    if (output && !cfg.has_output) throw ConfigError("config: missing 'output' section");
}

double resolve_barrier(const RunConfig& cfg) {
    if (!cfg.control.has_a) throw ConfigError("config section 'control': missing key 'a'");
    if (cfg.control.a_optimal)
        return optimal_barrier(cfg.model, cfg.control.q, ParisianSpec{cfg.control.zeta});
    return cfg.control.a;
}

// Table emission: CSV with LF endings, or a columns/rows JSON object.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_table(const Table& t, const RunConfig& cfg) {
    std::ostringstream out;
    if (cfg.format == "csv") {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << "\n";
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << fmt17(row[i]);
            out << "\n";
        }
    } else {
        json j;
        j["columns"] = t.columns;
        j["rows"] = json::array();
        for (const auto& row : t.rows) {
            json r = json::array();
            for (double v : row) r.push_back(fmt17(v));
            j["rows"].push_back(r);
        }
        out << j.dump(2) << "\n";
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + cfg.out_path);
    f << out.str();
}

void write_json_report(const json& j, const RunConfig& cfg) {
    const std::string text = j.dump(2) + "\n";
    if (cfg.has_output) {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write output file: " + cfg.out_path);
        f << text;
    } else {
        std::fputs(text.c_str(), stdout);
    }
}

int cmd_value_ruin_delay(const RunConfig& cfg) {
    require_sections(cfg, true, true, false, true);
    if (!(cfg.control.q > 0.0)) throw ConfigError("value-ruin-delay: q must be > 0");
    const ParisianSpec spec{cfg.control.zeta};
    const BarrierPolicy policy{resolve_barrier(cfg)};
    Table t;
    t.columns = {"x", "v", "v_prime", "barrier", "V", "V_prime"};
    for (double x : cfg.grid)
        t.rows.push_back({x, value_ruin_delay(cfg.model, cfg.control.q, spec, policy, x),
                          value_ruin_delay_prime(cfg.model, cfg.control.q, spec, policy, x),
                          policy.a, parisian_V(cfg.model, cfg.control.q, spec, x),
                          parisian_V_derivative(cfg.model, cfg.control.q, spec, x, 1)});
    write_table(t, cfg);
    return 0;
}

int cmd_optimal_barrier(const RunConfig& cfg) {
    require_sections(cfg, true, false, false, false);
    if (!(cfg.control.q > 0.0)) throw ConfigError("optimal-barrier: q must be > 0");
    const ParisianSpec spec{cfg.control.zeta};
    const double a_star = optimal_barrier(cfg.model, cfg.control.q, spec);
    json j;
    j["a_star"] = fmt17(a_star);
    j["V_second_at_a_star"] =
        fmt17(parisian_V_derivative(cfg.model, cfg.control.q, spec, a_star, 2));
    j["method"] = "closed_form";
    write_json_report(j, cfg);
    return 0;
}

int cmd_ruin_prob(const RunConfig& cfg) {
    require_sections(cfg, true, true, false, true);
    const ParisianSpec spec{cfg.control.zeta};
    const double drift = drift_at_zero(cfg.model);
    if (!(drift > 0.0)) throw ConfigError("ruin-prob: requires psi'(0+) > 0");
    const ScaleEval w0(cfg.model, 0.0);
    Table t;
    t.columns = {"x", "parisian_ruin_prob", "classical_ruin_prob"};
    for (double x : cfg.grid) {
        const double parisian = parisian_ruin_probability(cfg.model, spec, x);
        const double classical = 1.0 - drift * w0.W(x);
        if (parisian > classical + 1e-12)
            throw std::runtime_error("ruin-prob: parisian probability exceeds classical");
        t.rows.push_back({x, parisian, classical});
    }
    write_table(t, cfg);
    return 0;
}

int cmd_value_payment_delay(const RunConfig& cfg) {
    require_sections(cfg, true, true, false, true);
    if (!(cfg.control.q > 0.0)) throw ConfigError("value-payment-delay: q must be > 0");
    if (cfg.control.a_optimal)
        throw ConfigError("value-payment-delay: 'optimal' barrier is not supported here");
    if (!cfg.control.has_a || !(cfg.control.a > 0.0))
        throw ConfigError("value-payment-delay: a must be > 0");
    const PaymentDelaySpec spec{cfg.control.d};
    const double a = cfg.control.a;
    const double va = solve_boundary_value(cfg.model, cfg.control.q, spec, a);
    // continuity at the barrier before emitting anything
    const double above_at_a = value_above(cfg.model, cfg.control.q, spec, a, va, a);
    if (std::abs(above_at_a - va) > 1e-6 * std::max(1.0, std::abs(va)))
        throw std::runtime_error("value-payment-delay: discontinuity at the barrier");

    std::vector<std::tuple<double, double, std::string>> rows;
    for (double x : cfg.grid) {
        const bool below = x <= a;
        const double v = below ? value_below(cfg.model, cfg.control.q, a, va, x)
                               : value_above(cfg.model, cfg.control.q, spec, a, va, x);
        rows.emplace_back(x, v, below ? "below" : "above");
    }
    std::ostringstream out;
    if (cfg.format == "csv") {
        out << "x,v,va,region\n";
        for (const auto& [x, v, region] : rows)
            out << fmt17(x) << "," << fmt17(v) << "," << fmt17(va) << "," << region << "\n";
    } else {
        json j;
        j["columns"] = {"x", "v", "va", "region"};
        j["rows"] = json::array();
        for (const auto& [x, v, region] : rows)
            j["rows"].push_back({fmt17(x), fmt17(v), fmt17(va), region});
        out << j.dump(2) << "\n";
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + cfg.out_path);
    f << out.str();
    return 0;
}

int cmd_simulate(const RunConfig& cfg) {
    require_sections(cfg, true, false, true, false);
    if (!cfg.sim_has_x) throw ConfigError("simulate: missing sim.x");
    SimEstimate est;
    if (cfg.sim_target == "ruin_delay") {
        est = simulate_ruin_delay(cfg.model, cfg.control.q, ParisianSpec{cfg.control.zeta},
                                  BarrierPolicy{resolve_barrier(cfg)}, cfg.sim_x, cfg.sim);
    } else if (cfg.sim_target == "payment_delay") {
        est = simulate_payment_delay(cfg.model, cfg.control.q, PaymentDelaySpec{cfg.control.d},
                                     BarrierPolicy{resolve_barrier(cfg)}, cfg.sim_x, cfg.sim);
    } else if (cfg.sim_target == "parisian_ruin_prob") {
        if (!cfg.has_time_cap) throw ConfigError("simulate: parisian_ruin_prob requires sim.time_cap");
        est = simulate_parisian_ruin_prob(cfg.model, ParisianSpec{cfg.control.zeta},
                                          cfg.sim_x, cfg.sim, cfg.time_cap);
    } else {
        throw ConfigError("simulate: sim.target must be 'ruin_delay', 'payment_delay' or 'parisian_ruin_prob'");
    }
    json j;
    j["mean"] = fmt17(est.mean);
    j["std_error"] = fmt17(est.std_error);
    j["n_paths"] = est.n_effective;
    j["censoring_bias_bound"] = fmt17(est.censoring_bias_bound);
    j["seed"] = cfg.sim.seed;
    write_json_report(j, cfg);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    require_sections(cfg, true, true, false, true);
    if (!(cfg.control.q > 0.0)) throw ConfigError("verify: q must be > 0");
    const ParisianSpec spec{cfg.control.zeta};
    const BarrierPolicy policy{resolve_barrier(cfg)};
    const VerifyReport report = hjb_verify(cfg.model, cfg.control.q, spec, policy,
                                           cfg.grid, 1e-6);
    std::ostringstream out;
    out << "x,hjb_value,v_prime,pass\n";
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const double x = report.grid[i];
        const double hjb = report.hjb_values[i];
        const bool ok = (x <= policy.a ? std::abs(hjb) <= 1e-6 : hjb <= 1e-8) &&
                        report.derivative_values[i] >= 1.0 - 1e-8;
        out << fmt17(x) << "," << fmt17(hjb) << "," << fmt17(report.derivative_values[i])
            << "," << (ok ? "true" : "false") << "\n";
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write output file: " + cfg.out_path);
    f << out.str();
    json summary;
    summary["passed"] = report.passed;
    summary["max_violation"] = fmt17(report.max_violation);
    summary["barrier"] = fmt17(policy.a);
    std::fputs((summary.dump(2) + "\n").c_str(), stdout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dividend values, optimal barriers and Parisian ruin for "
                 "spectrally negative risk processes"};
    app.require_subcommand(1);

    std::string config_path;
    int (*handler)(const RunConfig&) = nullptr;
    const std::pair<const char*, int (*)(const RunConfig&)> commands[] = {
        {"value-ruin-delay", cmd_value_ruin_delay},
        {"optimal-barrier", cmd_optimal_barrier},
        {"ruin-prob", cmd_ruin_prob},
        {"value-payment-delay", cmd_value_payment_delay},
        {"simulate", cmd_simulate},
        {"verify", cmd_verify},
    };
    for (const auto& [name, fn] : commands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("-c,--config", config_path, "JSON config file")->required();
        sub->callback([&handler, fn] { handler = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        const RunConfig cfg = load_config(config_path);
        return handler(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
