// Command-line front end: config-driven PNL/IL curves, hedge solves and
// swap-engine cross-checks.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lphedge/amm_math.hpp"
#include "lphedge/config.hpp"
#include "lphedge/errors.hpp"
#include "lphedge/hedger.hpp"
#include "lphedge/options.hpp"
#include "lphedge/pool_sim.hpp"
#include "lphedge/report.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lphedge;

struct GridFlags {
    double min_factor = 0.1;
    double max_factor = 4.0;
    int count = 512;
};

void add_grid_flags(CLI::App* cmd, GridFlags& flags) {
    cmd->add_option("--grid-min-factor", flags.min_factor,
                    "Grid lower bound as a multiple of the entry price");
    cmd->add_option("--grid-max-factor", flags.max_factor,
                    "Grid upper bound as a multiple of the entry price");
    cmd->add_option("--grid-count", flags.count, "Number of geometric grid points");
}

hedge::PriceGrid build_grid(const amm::Position& position, const GridFlags& flags) {
    return hedge::geometric_grid(amm::entry_price(position),
                                 {flags.min_factor, flags.max_factor, flags.count});
}

std::string out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int run_curve(const std::string& config_path, const std::string& metric,
              const GridFlags& grid_flags, const std::string& out_dir) {
    const auto cfg = config::load_position_config(config_path);
    const amm::Position position = config::make_position(cfg);
    const hedge::PriceGrid grid = build_grid(position, grid_flags);

    hedge::PnlCurve curve;
    curve.label = metric;
    curve.normalizer = amm::initial_value(position);
    curve.prices = grid.points;
    curve.values.reserve(grid.points.size());
    for (const double p : grid.points) {
        const amm::Price price(p);
        if (metric == "lp_pnl") {
            curve.values.push_back(amm::lp_pnl(position, price));
        } else if (metric == "il") {
            curve.values.push_back(amm::il(position, price));
        } else {
            curve.values.push_back(amm::pool_value(position, price));
        }
    }
    const std::string path = out_path(out_dir, metric + "_curve.txt");
    hedge::write_curve(curve, path);
    std::cout << "wrote " << path << "\n";
    return 0;
}

int run_hedge(const std::string& config_path, const std::string& chain_path,
              const GridFlags& grid_flags, double lambda,
              const hedge::SolverConfig& solver, const std::string& out_dir) {
    const auto cfg = config::load_position_config(config_path);
    const amm::Position position = config::make_position(cfg);
    const hedge::PriceGrid grid = build_grid(position, grid_flags);
    options::OptionsChain chain = options::load_chain(chain_path);

    const hedge::HedgeProblem problem =
        hedge::make_problem(position, grid, std::move(chain), lambda);
    const hedge::HedgeResult result = hedge::solve(problem, solver);

    hedge::write_report(result, problem, solver, out_path(out_dir, "hedge_report.json"));

    hedge::PnlCurve lp_curve;
    lp_curve.label = "lp_pnl";
    lp_curve.normalizer = problem.normalizer;
    lp_curve.prices = grid.points;
    for (const double p : grid.points) {
        lp_curve.values.push_back(amm::lp_pnl(position, amm::Price(p)));
    }
    hedge::write_curve(lp_curve, out_path(out_dir, "lp_pnl_curve.txt"));

    hedge::PnlCurve payoff_curve;
    payoff_curve.label = "options_payoff";
    payoff_curve.normalizer = problem.normalizer;
    payoff_curve.prices = grid.points;
    for (const double p : grid.points) {
        payoff_curve.values.push_back(
            options::portfolio_payoff(result.legs, amm::Price(p)) / problem.normalizer);
    }
    hedge::write_curve(payoff_curve, out_path(out_dir, "options_payoff_curve.txt"));

    hedge::write_curve(hedge::evaluate_strategy(position, result.legs, grid),
                       out_path(out_dir, "strategy_pnl_curve.txt"));

    std::cout << "legs: " << result.nonzero_count
              << "  max_abs_residual: " << fmt(result.max_abs_residual)
              << "  rms_residual: " << fmt(result.rms_residual) << "\n";
    std::cout << "wrote " << out_path(out_dir, "hedge_report.json") << "\n";
    return 0;
}

int run_simulate(const std::string& config_path, double target_price, int steps,
                 const std::string& out_dir) {
    const auto cfg = config::load_position_config(config_path);
    const amm::Position position = config::make_position(cfg);
    const amm::Price target(target_price);

    double sim_a = 0.0;
    double sim_b = 0.0;
    double cf_a = 0.0;
    double cf_b = 0.0;
    std::string engine;
    if (const auto* uni = std::get_if<amm::UniformPosition>(&position)) {
        engine = "single-swap bisection (steps flag unused)";
        const auto [a0, b0] = amm::amounts_from_price_uniform(uni->kappa, uni->entry_price);
        sim::SimPool pool(a0, b0);
        pool.move_price_to(target);
        sim_a = pool.reserve_a();
        sim_b = pool.reserve_b();
        std::tie(cf_a, cf_b) = amm::amounts_from_price_uniform(uni->kappa, target);
    } else {
        engine = "geometric price walk, " + std::to_string(steps) + " steps";
        const auto& conc = std::get<amm::ConcentratedPosition>(position);
        std::tie(sim_a, sim_b) = sim::simulate_concentrated_exit(conc, target, steps);
        std::tie(cf_a, cf_b) =
            amm::final_amounts_concentrated(conc.sqrt_kappa, conc.lower_price,
                                            conc.upper_price, target);
    }

    const double cf_value = target.value() * cf_a + cf_b;
    const double deviation =
        (std::abs(sim_a - cf_a) * target.value() + std::abs(sim_b - cf_b)) / cf_value;

    std::string report;
    report += "engine: " + engine + "\n";
    report += "target_price: " + fmt(target.value()) + "\n";
    report += "closed_form_amount_a: " + fmt(cf_a) + "\n";
    report += "closed_form_amount_b: " + fmt(cf_b) + "\n";
    report += "simulated_amount_a: " + fmt(sim_a) + "\n";
    report += "simulated_amount_b: " + fmt(sim_b) + "\n";
    report += "value_weighted_deviation: " + fmt(deviation) + "\n";
    std::cout << report;
    if (!out_dir.empty()) {
        const std::string path = out_path(out_dir, "simulate_report.txt");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << report;
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LP position PNL curves and options delta-hedging"};
    app.require_subcommand(1);

    std::string config_path;
    std::string chain_path;
    std::string out_dir = ".";
    std::string metric = "lp_pnl";
    GridFlags grid_flags;
    double lambda = 1e-4;
    hedge::SolverConfig solver;
    double target_price = 0.0;
    int steps = 10000;

    auto* curve = app.add_subcommand("curve", "Sample a position metric over a price grid");
    curve->add_option("--config", config_path, "Position config file")->required();
    curve->add_option("--metric", metric, "Metric to sample")
        ->check(CLI::IsMember({"lp_pnl", "il", "pool_value"}));
    add_grid_flags(curve, grid_flags);
    curve->add_option("--out", out_dir, "Output directory");

    auto* hedge_cmd = app.add_subcommand("hedge", "Solve for a delta-hedging options portfolio");
    hedge_cmd->add_option("--config", config_path, "Position config file")->required();
    hedge_cmd->add_option("--chain", chain_path, "Options chain snapshot file")->required();
    add_grid_flags(hedge_cmd, grid_flags);
    hedge_cmd->add_option("--lambda", lambda, "L1 regularization weight");
    hedge_cmd->add_option("--seed", solver.seed, "SGD shuffle seed");
    hedge_cmd->add_option("--epochs", solver.epochs, "SGD epochs");
    hedge_cmd->add_option("--out", out_dir, "Output directory");

    auto* simulate = app.add_subcommand("simulate",
                                        "Cross-check closed forms against the swap engine");
    simulate->add_option("--config", config_path, "Position config file")->required();
    simulate->add_option("--target-price", target_price, "Final price to walk to")->required();
    simulate->add_option("--steps", steps, "Price walk steps");
    simulate->add_option("--out", out_dir, "Optional output directory");
    simulate->parse_complete_callback([&] {
        if (!simulate->count("--out")) {
            out_dir.clear();
        }
    });

    CLI11_PARSE(app, argc, argv);

    try {
        if (curve->parsed()) {
            return run_curve(config_path, metric, grid_flags, out_dir);
        }
        if (hedge_cmd->parsed()) {
            return run_hedge(config_path, chain_path, grid_flags, lambda, solver, out_dir);
        }
        return run_simulate(config_path, target_price, steps, out_dir);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what();
        if (!e.field().empty()) {
            std::cerr << " (field: " << e.field() << ")";
        }
        std::cerr << "\n";
    } catch (const ChainError& e) {
        std::cerr << "chain error: " << e.what();
        if (e.record_index() >= 0) {
            std::cerr << " (record " << e.record_index() << ")";
        }
        std::cerr << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
}
