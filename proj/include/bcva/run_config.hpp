#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bcva/cva_engine.hpp"

namespace bcva {

/// Invalid or unparsable run configuration. The message names the line/column or field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ForwardSpec {
    double s0 = 1.0;
    double sigma = 0.4;
    double strike = 1.0;
    double maturity = 5.0;
};

struct ZcbSpec {
    double maturity = 5.0;
};

struct DefaultModelSpec {
    double lambda_a = 0.1;
    double lambda_b = 0.05;
    std::optional<double> theta;
    std::optional<double> kendall_tau;

    /// Resolves whichever of theta / kendall_tau was given.
    double resolved_theta() const;
};

struct McMethodSpec {
    McConfig config;
    McEstimator estimator = McEstimator::Conditioned;
};

enum class SweepVariable { None, KendallTau, LambdaA };

struct SweepSpec {
    SweepVariable variable = SweepVariable::None;
    std::vector<double> grid;
};

/// One experiment: instrument, credit, joint default law, rate, method and optional sweep.
struct RunConfig {
    std::variant<ForwardSpec, ZcbSpec> instrument = ForwardSpec{};
    CreditParams credit;
    DefaultModelSpec default_model;
    double rate = 0.0;
    std::variant<SemiAnalytic, McMethodSpec> method = SemiAnalytic{};
    SweepSpec sweep;
};

/// Parses and validates a JSON run configuration.
///
/// {
///   "instrument":    {"type": "forward", "s0": 1, "sigma": 0.4, "strike": 1, "maturity": 5}
///                  | {"type": "zcb", "maturity": 5},
///   "credit":        {"lgd_a": 1, "lgd_b": 1},
///   "default_model": {"lambda_a": 0.1, "lambda_b": 0.05, "theta": 2 | "kendall_tau": 0.5},
///   "rate":          0.0,
///   "method":        {"type": "semi_analytic"}
///                  | {"type": "mc", "n_paths": 1000000, "seed": 42, "chunk_size": 65536,
///                     "estimator": "conditioned" | "path_level", "antithetic": false},
///   "sweep":         {"variable": "kendall_tau" | "lambda_a", "grid": [...]}   (optional)
/// }
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::string& path);

/// One output line.
struct ResultRow {
    std::optional<double> sweep_value;
    BcvaReport report;
    std::string method;
    std::optional<std::uint64_t> n_paths;
    std::optional<std::uint64_t> seed;
};

/// Values the base configuration (sweep ignored).
ResultRow run_point(const RunConfig& config, unsigned threads = 1);
/// Values every sweep point; requires a sweep.
std::vector<ResultRow> run_sweep(const RunConfig& config, unsigned threads = 1);

inline constexpr std::string_view kCsvHeader =
    "sweep_value,risk_free_value,ucva_a,udva_a,bilateral_cva,bilateral_dva,full_price,"
    "simplified_price,difference,difference_stderr,method,n_paths,seed";

/// Header line plus one line per row. Numbers use the shortest round-trip representation.
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace bcva
