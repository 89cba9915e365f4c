#include "bcva/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace bcva {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& message) {
    throw ConfigError("field '" + field + "': " + message);
}

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : object.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(where.empty() ? key : where + "." + key, "unknown key");
        }
    }
}

const json& require_object(const json& parent, const std::string& key, const std::string& path) {
    if (!parent.contains(key)) fail(path, "missing");
    const json& value = parent.at(key);
    if (!value.is_object()) fail(path, "expected an object");
    return value;
}

double number(const json& object, const std::string& key, const std::string& path,
              std::optional<double> fallback = std::nullopt) {
    if (!object.contains(key)) {
        if (fallback) return *fallback;
        fail(path, "missing");
    }
    const json& value = object.at(key);
    if (!value.is_number()) fail(path, "expected a number");
    const double x = value.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
}

std::uint64_t count(const json& object, const std::string& key, const std::string& path,
                    std::uint64_t fallback) {
    if (!object.contains(key)) return fallback;
    const json& value = object.at(key);
    if (!value.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return value.get<std::uint64_t>();
}

std::string text(const json& object, const std::string& key, const std::string& path,
                 std::optional<std::string> fallback = std::nullopt) {
    if (!object.contains(key)) {
        if (fallback) return *fallback;
        fail(path, "missing");
    }
    const json& value = object.at(key);
    if (!value.is_string()) fail(path, "expected a string");
    return value.get<std::string>();
}

std::string line_column(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::variant<ForwardSpec, ZcbSpec> parse_instrument(const json& root) {
    const json& node = require_object(root, "instrument", "instrument");
    const std::string type = text(node, "type", "instrument.type");
    if (type == "forward") {
        reject_unknown_keys(node, "instrument", {"type", "s0", "sigma", "strike", "maturity"});
        ForwardSpec f;
        f.s0 = number(node, "s0", "instrument.s0", 1.0);
        f.sigma = number(node, "sigma", "instrument.sigma");
        f.strike = number(node, "strike", "instrument.strike");
        f.maturity = number(node, "maturity", "instrument.maturity");
        if (!(f.s0 > 0.0)) fail("instrument.s0", "must be positive");
        if (!(f.sigma > 0.0)) fail("instrument.sigma", "must be positive");
        if (!(f.strike >= 0.0)) fail("instrument.strike", "must be non-negative");
        if (!(f.maturity > 0.0)) fail("instrument.maturity", "must be positive");
        return f;
    }
    if (type == "zcb") {
        reject_unknown_keys(node, "instrument", {"type", "maturity"});
        ZcbSpec z;
        z.maturity = number(node, "maturity", "instrument.maturity");
        if (!(z.maturity > 0.0)) fail("instrument.maturity", "must be positive");
        return z;
    }
    fail("instrument.type", "expected \"forward\" or \"zcb\", got \"" + type + "\"");
}

CreditParams parse_credit(const json& root) {
    CreditParams credit;
    if (!root.contains("credit")) return credit;
    const json& node = require_object(root, "credit", "credit");
    reject_unknown_keys(node, "credit", {"lgd_a", "lgd_b"});
    credit.lgd_a = number(node, "lgd_a", "credit.lgd_a", 1.0);
    credit.lgd_b = number(node, "lgd_b", "credit.lgd_b", 1.0);
    if (credit.lgd_a < 0.0 || credit.lgd_a > 1.0) fail("credit.lgd_a", "must lie in [0, 1]");
    if (credit.lgd_b < 0.0 || credit.lgd_b > 1.0) fail("credit.lgd_b", "must lie in [0, 1]");
    return credit;
}

DefaultModelSpec parse_default_model(const json& root) {
    const json& node = require_object(root, "default_model", "default_model");
    reject_unknown_keys(node, "default_model", {"lambda_a", "lambda_b", "theta", "kendall_tau"});
    DefaultModelSpec spec;
    spec.lambda_a = number(node, "lambda_a", "default_model.lambda_a");
    spec.lambda_b = number(node, "lambda_b", "default_model.lambda_b");
    if (!(spec.lambda_a > 0.0)) fail("default_model.lambda_a", "must be positive");
    if (!(spec.lambda_b > 0.0)) fail("default_model.lambda_b", "must be positive");
    const bool has_theta = node.contains("theta");
    const bool has_tau = node.contains("kendall_tau");
    if (has_theta == has_tau) fail("default_model", "give exactly one of theta / kendall_tau");
    if (has_theta) {
        spec.theta = number(node, "theta", "default_model.theta");
        if (!(*spec.theta >= 1.0)) fail("default_model.theta", "must be >= 1");
    } else {
        spec.kendall_tau = number(node, "kendall_tau", "default_model.kendall_tau");
        if (!(*spec.kendall_tau >= 0.0 && *spec.kendall_tau < 1.0)) {
            fail("default_model.kendall_tau", "must lie in [0, 1)");
        }
    }
    return spec;
}

std::variant<SemiAnalytic, McMethodSpec> parse_method(const json& root) {
    if (!root.contains("method")) return SemiAnalytic{};
    const json& node = require_object(root, "method", "method");
    const std::string type = text(node, "type", "method.type");
    if (type == "semi_analytic") {
        reject_unknown_keys(node, "method", {"type"});
        return SemiAnalytic{};
    }
    if (type != "mc") fail("method.type", "expected \"semi_analytic\" or \"mc\", got \"" + type + "\"");
    reject_unknown_keys(node, "method", {"type", "n_paths", "seed", "chunk_size", "estimator", "antithetic"});
    McMethodSpec mc;
    mc.config.n_paths = count(node, "n_paths", "method.n_paths", mc.config.n_paths);
    mc.config.seed = count(node, "seed", "method.seed", mc.config.seed);
    mc.config.chunk_size = count(node, "chunk_size", "method.chunk_size", mc.config.chunk_size);
    if (mc.config.n_paths < 2) fail("method.n_paths", "must be at least 2");
    if (mc.config.chunk_size < 1) fail("method.chunk_size", "must be at least 1");
    if (node.contains("antithetic")) {
        if (!node.at("antithetic").is_boolean()) fail("method.antithetic", "expected a boolean");
        mc.config.antithetic = node.at("antithetic").get<bool>();
    }
    const std::string estimator = text(node, "estimator", "method.estimator", "conditioned");
    if (estimator == "conditioned") {
        mc.estimator = McEstimator::Conditioned;
    } else if (estimator == "path_level") {
        mc.estimator = McEstimator::PathLevel;
    } else {
        fail("method.estimator", "expected \"conditioned\" or \"path_level\"");
    }
    return mc;
}

SweepSpec parse_sweep(const json& root) {
    SweepSpec sweep;
    if (!root.contains("sweep") || root.at("sweep").is_null()) return sweep;
    if (root.at("sweep").is_string() && root.at("sweep").get<std::string>() == "none") return sweep;
    const json& node = require_object(root, "sweep", "sweep");
    reject_unknown_keys(node, "sweep", {"variable", "grid"});
    const std::string variable = text(node, "variable", "sweep.variable");
    if (variable == "tau" || variable == "kendall_tau") {
        sweep.variable = SweepVariable::KendallTau;
    } else if (variable == "lambda_a") {
        sweep.variable = SweepVariable::LambdaA;
    } else if (variable == "none") {
        return sweep;
    } else {
        fail("sweep.variable", "expected \"tau\", \"lambda_a\" or \"none\"");
    }
    if (!node.contains("grid") || !node.at("grid").is_array()) fail("sweep.grid", "expected an array");
    const json& grid = node.at("grid");
    if (grid.empty()) fail("sweep.grid", "must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::string path = "sweep.grid[" + std::to_string(i) + "]";
        if (!grid[i].is_number()) fail(path, "expected a number");
        const double x = grid[i].get<double>();
        if (sweep.variable == SweepVariable::KendallTau && !(x >= 0.0 && x < 1.0)) {
            fail(path, "kendall tau must lie in [0, 1)");
        }
        if (sweep.variable == SweepVariable::LambdaA && !(x > 0.0 && std::isfinite(x))) {
            fail(path, "intensity must be positive");
        }
        if (!sweep.grid.empty() && x < sweep.grid.back()) fail(path, "grid must be sorted ascending");
        sweep.grid.push_back(x);
    }
    return sweep;
}

std::string format_number(double x) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof buffer, x);
    return std::string(buffer, result.ptr);
}

ResultRow evaluate(const RunConfig& config, double theta, double lambda_a, unsigned threads) {
    const GumbelBivariateExponential model(lambda_a, config.default_model.lambda_b, theta);
    ResultRow row;
    if (const auto* zcb = std::get_if<ZcbSpec>(&config.instrument)) {
        const Market market(GbmEquity(1.0, 1.0), DiscountCurve(config.rate));
        row.report = zcb_report(ZeroCouponBond{zcb->maturity}, config.credit, model, market);
        row.method = "analytic";
        return row;
    }
    const auto& fwd_spec = std::get<ForwardSpec>(config.instrument);
    const Market market(GbmEquity(fwd_spec.s0, fwd_spec.sigma), DiscountCurve(config.rate));
    const EquityForward fwd{fwd_spec.strike, fwd_spec.maturity, Position::Long};
    if (const auto* mc = std::get_if<McMethodSpec>(&config.method)) {
        row.report = bcva_full_forward(fwd, config.credit, model, market,
                                       MonteCarlo{mc->config, mc->estimator, threads});
        row.method = mc->estimator == McEstimator::Conditioned ? "mc" : "mc_path_level";
        row.n_paths = mc->config.n_paths;
        row.seed = mc->config.seed;
    } else {
        row.report = bcva_full_forward(fwd, config.credit, model, market, SemiAnalytic{});
        row.method = "semi_analytic";
    }
    return row;
}

}  // namespace

double DefaultModelSpec::resolved_theta() const {
    if (theta) return *theta;
    return GumbelBivariateExponential::theta_from_kendall_tau(kendall_tau.value_or(0.0));
}

RunConfig parse_run_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON at " + line_column(json_text, e.byte) + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("configuration must be a JSON object");
    reject_unknown_keys(root, "", {"instrument", "credit", "default_model", "rate", "method", "sweep"});

    RunConfig config;
    config.instrument = parse_instrument(root);
    config.credit = parse_credit(root);
    config.default_model = parse_default_model(root);
    config.rate = number(root, "rate", "rate", 0.0);
    config.method = parse_method(root);
    config.sweep = parse_sweep(root);
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str());
}

ResultRow run_point(const RunConfig& config, unsigned threads) {
    return evaluate(config, config.default_model.resolved_theta(), config.default_model.lambda_a, threads);
}

std::vector<ResultRow> run_sweep(const RunConfig& config, unsigned threads) {
    if (config.sweep.variable == SweepVariable::None) {
        throw ConfigError("field 'sweep': a sweep is required for this command");
    }
    std::vector<ResultRow> rows;
    rows.reserve(config.sweep.grid.size());
    for (const double x : config.sweep.grid) {
        double theta = config.default_model.resolved_theta();
        double lambda_a = config.default_model.lambda_a;
        if (config.sweep.variable == SweepVariable::KendallTau) {
            theta = GumbelBivariateExponential::theta_from_kendall_tau(x);
        } else {
            lambda_a = x;
        }
        ResultRow row = evaluate(config, theta, lambda_a, threads);
        row.sweep_value = x;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ResultRow& row : rows) {
        const BcvaReport& r = row.report;
        out << (row.sweep_value ? format_number(*row.sweep_value) : std::string{}) << ','
            << format_number(r.risk_free_value) << ',' << format_number(r.ucva_a) << ','
            << format_number(r.udva_a) << ',' << format_number(r.bilateral_cva) << ','
            << format_number(r.bilateral_dva) << ',' << format_number(r.full_price) << ','
            << format_number(r.simplified_price) << ',' << format_number(r.difference) << ','
            << format_number(r.std_errors.difference) << ',' << row.method << ','
            << (row.n_paths ? std::to_string(*row.n_paths) : std::string{}) << ','
            << (row.seed ? std::to_string(*row.seed) : std::string{}) << '\n';
    }
}

}  // namespace bcva
