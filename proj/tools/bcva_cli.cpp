// bcva: bilateral CVA experiment runner.
//
//   bcva price  <config.json> [--out file.csv] [--threads n]
//   bcva sweep  <config.json> [--out file.csv] [--svg chart.svg] [--threads n]
//   bcva validate [--seed n] [--threads n]
//
// Exit codes: 0 success, 1 invariant failure, 2 config error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bcva/errors.hpp"
#include "bcva/run_config.hpp"
#include "bcva/svg_plot.hpp"
#include "bcva/validation.hpp"

namespace {

constexpr int kInvariantFailure = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw bcva::ConfigError("cannot write '" + path + "'");
    out << text;
}

void emit_svg(const bcva::RunConfig& config, const std::vector<bcva::ResultRow>& rows, const std::string& path) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        xs.push_back(rows[i].sweep_value.value_or(static_cast<double>(i)));
        ys.push_back(rows[i].report.difference);
    }
    bcva::LineChart chart;
    chart.y_label = "D^AB";
    switch (config.sweep.variable) {
        case bcva::SweepVariable::KendallTau: chart.x_label = "Kendall's tau"; break;
        case bcva::SweepVariable::LambdaA: chart.x_label = "lambda_A"; break;
        case bcva::SweepVariable::None: chart.x_label = "point"; break;
    }
    chart.title = "Full bilateral minus simplified price vs " + chart.x_label;
    std::ostringstream svg;
    bcva::write_svg_line_chart(svg, chart, xs, ys);
    emit(svg.str(), path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilateral CVA: full first-to-default vs simplified formula"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string svg_path;
    unsigned threads = 1;

    auto* price = app.add_subcommand("price", "Value the base configuration");
    price->add_option("config", config_path, "JSON run configuration")->required();
    auto* sweep = app.add_subcommand("sweep", "Value every point of the configured sweep");
    sweep->add_option("config", config_path, "JSON run configuration")->required();
    for (auto* sub : {price, sweep}) {
        sub->add_option("--out", out_path, "Write CSV here instead of standard output");
        sub->add_option("--svg", svg_path, "Also write an SVG chart of the difference column");
        sub->add_option("--threads", threads, "Monte Carlo workers (0 = all cores); never changes results");
    }

    auto* validate = app.add_subcommand("validate", "Run the invariant suite at desk scale");
    bcva::ValidationOptions validation;
    std::string fault = "none";
    validate->add_option("--seed", validation.seed, "Seed for the simulated checks");
    validate->add_option("--threads", validation.threads, "Monte Carlo workers (0 = all cores)");
    validate->add_option("--inject-fault", fault, "Mutation sanity check")
        ->check(CLI::IsMember({"none", "partial-sign", "put-sign"}))
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (validate->parsed()) {
            if (fault == "partial-sign") validation.fault = bcva::InjectedFault::PartialSign;
            if (fault == "put-sign") validation.fault = bcva::InjectedFault::PutSign;
            const auto results = bcva::run_validation(validation);
            bcva::write_validation_report(std::cout, results);
            for (const auto& r : results) {
                if (!r.passed) return kInvariantFailure;
            }
            return 0;
        }

        const bcva::RunConfig config = bcva::load_run_config(config_path);
        std::vector<bcva::ResultRow> rows;
        if (price->parsed()) {
            rows.push_back(bcva::run_point(config, threads));
        } else {
            rows = bcva::run_sweep(config, threads);
        }
        std::ostringstream csv;
        bcva::write_csv(csv, rows);
        emit(csv.str(), out_path);
        if (!svg_path.empty()) emit_svg(config, rows, svg_path);
        return 0;
    } catch (const bcva::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const bcva::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const bcva::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    }
}
