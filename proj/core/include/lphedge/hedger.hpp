#pragma once

#include <span>
#include <string>
#include <vector>

#include "lphedge/amm_math.hpp"
#include "lphedge/options.hpp"

namespace lphedge::hedge {

// =============================================================================
// Grid and curves
// =============================================================================

struct GridSpec {
    double min_factor = 0.1;
    double max_factor = 4.0;
    int count = 512;
};

// Strictly increasing candidate final prices, token b units.
struct PriceGrid {
    std::vector<double> points;
    GridSpec spec;
};

PriceGrid geometric_grid(amm::Price entry, const GridSpec& spec);

// Sampled final-price -> PNL-fraction mapping, the common currency of all
// outputs. `normalizer` is the initial investment the fractions refer to.
struct PnlCurve {
    std::vector<double> prices;
    std::vector<double> values;
    std::string label;
    double normalizer = 0.0;
};

// =============================================================================
// Problem and result
// =============================================================================

struct HedgeProblem {
    PnlCurve target;             // -lp_pnl sampled on the grid
    options::OptionsChain chain;
    double lambda = 1e-4;        // L1 weight on theta
    double normalizer = 0.0;     // initial investment, token b units
};

struct SolverConfig {
    double learning_rate = 0.05; // decays as 1/sqrt(epoch)
    int epochs = 2000;
    int batch_size = 32;
    unsigned long long seed = 42;
    double prune_threshold = 1e-4;
};

struct HedgeResult {
    std::vector<options::PortfolioLeg> legs; // nonzero theta only
    std::vector<double> theta;               // full weight vector, chain order
    PnlCurve residual_curve;                 // lp_pnl + normalized payoff per grid point
    double max_abs_residual = 0.0;
    double rms_residual = 0.0;
    int nonzero_count = 0;
    double final_cost = 0.0;
};

// =============================================================================
// Operations
// =============================================================================

// Negated LP PNL on the grid: the payoff the options portfolio must replicate.
PnlCurve build_target(const amm::Position& position, const PriceGrid& grid);

HedgeProblem make_problem(const amm::Position& position, const PriceGrid& grid,
                          options::OptionsChain chain, double lambda);

// J(theta): half the sum of squared residuals over the grid plus the L1 term.
// The residual at a grid price is portfolio payoff / normalizer - target.
double cost(std::span<const double> theta, const HedgeProblem& problem);

// Gradient of the smooth (squared-residual) term only; the L1 part is handled
// by the solver's proximal step. Longs differentiate against the ask premium,
// shorts against the bid; a zero weight uses the ask side.
std::vector<double> gradient(std::span<const double> theta, const HedgeProblem& problem);

// Mini-batch SGD over grid points with a per-epoch soft-threshold step for
// the L1 term. Deterministic for a fixed seed. Non-convergence is not an
// error; the result carries the achieved residuals.
HedgeResult solve(const HedgeProblem& problem, const SolverConfig& config);

// lp_pnl(p) + portfolio payoff(p) / initial value, per grid point: the curve
// that should be flat zero for a perfect hedge.
PnlCurve evaluate_strategy(const amm::Position& position,
                           std::span<const options::PortfolioLeg> legs,
                           const PriceGrid& grid);

// Nearest-integer contract quantities, zero-quantity legs dropped. Never
// applied automatically; the report shows its residuals next to the
// fractional solution.
std::vector<options::PortfolioLeg> round_to_integer_contracts(
    std::span<const options::PortfolioLeg> legs);

struct ResidualStats {
    double max_abs = 0.0;
    double rms = 0.0;
};

// Residual statistics of an arbitrary portfolio against the problem target.
ResidualStats residual_stats(std::span<const options::PortfolioLeg> legs,
                             const HedgeProblem& problem);

} // namespace lphedge::hedge
