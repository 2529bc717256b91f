#include "lphedge/hedger.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lphedge/errors.hpp"

namespace lphedge::hedge {

namespace {

void validate_problem(const HedgeProblem& problem) {
    if (problem.chain.quotes.empty()) {
        throw ChainError("hedge problem has an empty options chain");
    }
    if (problem.target.prices.size() < 2 ||
        problem.target.prices.size() != problem.target.values.size()) {
        throw std::invalid_argument("hedge target must cover a grid of at least 2 points");
    }
    if (!(problem.normalizer > 0.0)) {
        throw std::invalid_argument("normalizer must be positive");
    }
    if (problem.lambda < 0.0) {
        throw std::invalid_argument("lambda must be nonnegative");
    }
}

void validate_theta(std::span<const double> theta, const HedgeProblem& problem) {
    if (theta.size() != problem.chain.quotes.size()) {
        throw std::invalid_argument("theta length must match the chain length");
    }
}

// Ask for longs, bid for shorts, ask-side convention at exactly zero.
double premium_for_sign(const options::OptionQuote& q, double theta) {
    if (theta < 0.0) {
        if (!q.bid) {
            throw ChainError("no bid quoted for " + options::contract_id(q));
        }
        return *q.bid;
    }
    if (!q.ask) {
        throw ChainError("no ask quoted for " + options::contract_id(q));
    }
    return *q.ask;
}

// Precomputed dense view of the regression: per-option intrinsic payoffs over
// the grid, normalized by the initial investment.
struct Workspace {
    std::size_t n = 0; // options
    std::size_t m = 0; // grid points
    std::vector<double> phi;      // n x m, intrinsic / normalizer
    std::vector<double> ask_n;    // ask / normalizer (NaN when absent)
    std::vector<double> bid_n;    // bid / normalizer (NaN when absent)
    std::vector<double> inv_s2;   // per-option preconditioner, 1 / RMS(phi)^2

    explicit Workspace(const HedgeProblem& problem) {
        const auto& quotes = problem.chain.quotes;
        const auto& prices = problem.target.prices;
        n = quotes.size();
        m = prices.size();
        phi.resize(n * m);
        ask_n.resize(n);
        bid_n.resize(n);
        inv_s2.resize(n);
        const double inv_norm = 1.0 / problem.normalizer;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& q = quotes[i];
            double sum_sq = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double v = options::intrinsic_value(q.kind, amm::Price(prices[j]),
                                                          amm::Price(q.strike)) *
                                 inv_norm;
                phi[i * m + j] = v;
                sum_sq += v * v;
            }
            const double s2 = sum_sq / static_cast<double>(m);
            inv_s2[i] = s2 > 0.0 ? 1.0 / s2 : 1.0;
            ask_n[i] = q.ask ? *q.ask * inv_norm : std::nan("");
            bid_n[i] = q.bid ? *q.bid * inv_norm : std::nan("");
        }
    }

    double premium_n(std::size_t i, double theta) const {
        return theta < 0.0 ? bid_n[i] : ask_n[i];
    }

    // Net normalized premium paid for the whole portfolio (price independent).
    double premium_outlay(std::span<const double> theta) const {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (theta[i] != 0.0) {
                total += theta[i] * premium_n(i, theta[i]);
            }
        }
        return total;
    }

    double residual_at(std::span<const double> theta, double outlay,
                       const std::vector<double>& target, std::size_t j) const {
        double payoff = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (theta[i] != 0.0) {
                payoff += theta[i] * phi[i * m + j];
            }
        }
        return payoff - outlay - target[j];
    }

    double objective(std::span<const double> theta, const std::vector<double>& target,
                     double lambda) const {
        const double outlay = premium_outlay(theta);
        double sum_sq = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double r = residual_at(theta, outlay, target, j);
            sum_sq += r * r;
        }
        double l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            l1 += std::abs(theta[i]);
        }
        return 0.5 * sum_sq + lambda * l1;
    }
};

// Portable Fisher-Yates so solves stay bit-identical across standard
// libraries (std::shuffle is implementation defined).
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
    for (std::size_t i = indices.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(indices[i - 1], indices[j]);
    }
}

double soft_threshold(double v, double tau) {
    if (v > tau) {
        return v - tau;
    }
    if (v < -tau) {
        return v + tau;
    }
    return 0.0;
}

} // namespace

PriceGrid geometric_grid(amm::Price entry, const GridSpec& spec) {
    if (spec.count < 2) {
        throw std::invalid_argument("grid count must be at least 2");
    }
    if (!(spec.min_factor > 0.0) || !(spec.min_factor < spec.max_factor)) {
        throw std::invalid_argument("grid factors must satisfy 0 < min < max");
    }
    const double p_min = entry.value() * spec.min_factor;
    const double p_max = entry.value() * spec.max_factor;
    const double log_min = std::log(p_min);
    const double log_span = std::log(p_max) - std::log(p_min);

    PriceGrid grid;
    grid.spec = spec;
    grid.points.resize(static_cast<std::size_t>(spec.count));
    grid.points.front() = p_min;
    grid.points.back() = p_max;
    for (int i = 1; i + 1 < spec.count; ++i) {
        grid.points[static_cast<std::size_t>(i)] =
            std::exp(log_min + log_span * static_cast<double>(i) /
                                   static_cast<double>(spec.count - 1));
    }
    for (std::size_t i = 1; i < grid.points.size(); ++i) {
        if (!(grid.points[i - 1] < grid.points[i])) {
            throw std::invalid_argument("grid points must be strictly increasing");
        }
    }
    return grid;
}

PnlCurve build_target(const amm::Position& position, const PriceGrid& grid) {
    PnlCurve curve;
    curve.label = "target";
    curve.normalizer = amm::initial_value(position);
    curve.prices = grid.points;
    curve.values.reserve(grid.points.size());
    for (const double p : grid.points) {
        curve.values.push_back(-amm::lp_pnl(position, amm::Price(p)));
    }
    return curve;
}

HedgeProblem make_problem(const amm::Position& position, const PriceGrid& grid,
                          options::OptionsChain chain, double lambda) {
    HedgeProblem problem;
    problem.target = build_target(position, grid);
    problem.chain = std::move(chain);
    problem.lambda = lambda;
    problem.normalizer = amm::initial_value(position);
    return problem;
}

double cost(std::span<const double> theta, const HedgeProblem& problem) {
    validate_problem(problem);
    validate_theta(theta, problem);

    const auto& quotes = problem.chain.quotes;
    const auto& prices = problem.target.prices;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < prices.size(); ++j) {
        const amm::Price p(prices[j]);
        double payoff = 0.0;
        for (std::size_t i = 0; i < quotes.size(); ++i) {
            if (theta[i] != 0.0) {
                payoff += options::leg_payoff({quotes[i], theta[i]}, p);
            }
        }
        const double r = payoff / problem.normalizer - problem.target.values[j];
        sum_sq += r * r;
    }
    double l1 = 0.0;
    for (const double t : theta) {
        l1 += std::abs(t);
    }
    return 0.5 * sum_sq + problem.lambda * l1;
}

std::vector<double> gradient(std::span<const double> theta, const HedgeProblem& problem) {
    validate_problem(problem);
    validate_theta(theta, problem);

    const auto& quotes = problem.chain.quotes;
    const auto& prices = problem.target.prices;
    const double inv_norm = 1.0 / problem.normalizer;
    std::vector<double> grad(quotes.size(), 0.0);
    for (std::size_t j = 0; j < prices.size(); ++j) {
        const amm::Price p(prices[j]);
        double payoff = 0.0;
        for (std::size_t i = 0; i < quotes.size(); ++i) {
            if (theta[i] != 0.0) {
                payoff += options::leg_payoff({quotes[i], theta[i]}, p);
            }
        }
        const double r = payoff * inv_norm - problem.target.values[j];
        for (std::size_t i = 0; i < quotes.size(); ++i) {
            const double per_unit =
                options::intrinsic_value(quotes[i].kind, p, amm::Price(quotes[i].strike)) -
                premium_for_sign(quotes[i], theta[i]);
            grad[i] += r * per_unit * inv_norm;
        }
    }
    return grad;
}

HedgeResult solve(const HedgeProblem& problem, const SolverConfig& config) {
    validate_problem(problem);
    if (!(config.learning_rate > 0.0) || config.epochs < 1 || config.batch_size < 1 ||
        config.prune_threshold < 0.0) {
        throw std::invalid_argument("invalid solver config");
    }

    const Workspace ws(problem);
    const auto& target = problem.target.values;
    const std::size_t n = ws.n;
    const std::size_t m = ws.m;

    // Sides without a market are never entered.
    std::vector<char> can_long(n), can_short(n);
    for (std::size_t i = 0; i < n; ++i) {
        can_long[i] = problem.chain.quotes[i].ask.has_value();
        can_short[i] = problem.chain.quotes[i].bid.has_value();
    }

    // The batch updates descend on the mean squared residual, so the L1
    // weight is rescaled to keep problem.lambda meaningful for the summed
    // cost the caller sees.
    const double lambda_mean = problem.lambda / static_cast<double>(m);

    std::vector<double> theta(n, 0.0);
    std::vector<double> snapshot(n, 0.0);
    std::vector<double> grad(n, 0.0);
    std::vector<std::size_t> order(m);
    for (std::size_t j = 0; j < m; ++j) {
        order[j] = j;
    }

    std::mt19937_64 rng(config.seed);
    double guard = 1.0;
    double best_cost = ws.objective(theta, target, problem.lambda);

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const double lr =
            config.learning_rate * guard / std::sqrt(static_cast<double>(epoch));
        snapshot = theta;
        shuffle_indices(order, rng);

        for (std::size_t start = 0; start < m;
             start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t stop =
                std::min(m, start + static_cast<std::size_t>(config.batch_size));
            const double inv_batch = 1.0 / static_cast<double>(stop - start);
            const double outlay = ws.premium_outlay(theta);

            std::fill(grad.begin(), grad.end(), 0.0);
            for (std::size_t b = start; b < stop; ++b) {
                const std::size_t j = order[b];
                const double r = ws.residual_at(theta, outlay, target, j);
                for (std::size_t i = 0; i < n; ++i) {
                    const double prem = theta[i] < 0.0 ? ws.bid_n[i] : ws.ask_n[i];
                    const double per_unit =
                        ws.phi[i * m + j] - (std::isnan(prem) ? 0.0 : prem);
                    grad[i] += r * per_unit;
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                theta[i] -= lr * inv_batch * grad[i] * ws.inv_s2[i];
                if ((theta[i] > 0.0 && !can_long[i]) || (theta[i] < 0.0 && !can_short[i])) {
                    theta[i] = 0.0;
                }
            }
        }

        for (std::size_t i = 0; i < n; ++i) {
            theta[i] = soft_threshold(theta[i], lr * lambda_mean * ws.inv_s2[i]);
        }

        // Guarded step: an epoch that raises the cost is rolled back and the
        // learning rate halved, so the per-epoch cost is non-increasing.
        const double epoch_cost = ws.objective(theta, target, problem.lambda);
        if (epoch_cost > best_cost) {
            theta = snapshot;
            guard *= 0.5;
        } else {
            best_cost = epoch_cost;
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(theta[i]) < config.prune_threshold) {
            theta[i] = 0.0;
        }
    }

    HedgeResult result;
    result.theta = theta;
    for (std::size_t i = 0; i < n; ++i) {
        if (theta[i] != 0.0) {
            result.legs.push_back({problem.chain.quotes[i], theta[i]});
        }
    }
    result.nonzero_count = static_cast<int>(result.legs.size());

    result.residual_curve.label = "strategy_pnl";
    result.residual_curve.normalizer = problem.normalizer;
    result.residual_curve.prices = problem.target.prices;
    result.residual_curve.values.resize(m);
    const double outlay = ws.premium_outlay(theta);
    double sum_sq = 0.0;
    double max_abs = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double r = ws.residual_at(theta, outlay, target, j);
        result.residual_curve.values[j] = r;
        sum_sq += r * r;
        max_abs = std::max(max_abs, std::abs(r));
    }
    result.max_abs_residual = max_abs;
    result.rms_residual = std::sqrt(sum_sq / static_cast<double>(m));
    result.final_cost = ws.objective(theta, target, problem.lambda);
    return result;
}

std::vector<options::PortfolioLeg> round_to_integer_contracts(
    std::span<const options::PortfolioLeg> legs) {
    std::vector<options::PortfolioLeg> rounded;
    for (const auto& leg : legs) {
        const double qty = std::round(leg.theta);
        if (qty != 0.0) {
            rounded.push_back({leg.quote, qty});
        }
    }
    return rounded;
}

ResidualStats residual_stats(std::span<const options::PortfolioLeg> legs,
                             const HedgeProblem& problem) {
    validate_problem(problem);
    ResidualStats stats;
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < problem.target.prices.size(); ++j) {
        const amm::Price p(problem.target.prices[j]);
        const double r = options::portfolio_payoff(legs, p) / problem.normalizer -
                         problem.target.values[j];
        stats.max_abs = std::max(stats.max_abs, std::abs(r));
        sum_sq += r * r;
    }
    stats.rms = std::sqrt(sum_sq / static_cast<double>(problem.target.prices.size()));
    return stats;
}

PnlCurve evaluate_strategy(const amm::Position& position,
                           std::span<const options::PortfolioLeg> legs,
                           const PriceGrid& grid) {
    PnlCurve curve;
    curve.label = "strategy_pnl";
    curve.normalizer = amm::initial_value(position);
    curve.prices = grid.points;
    curve.values.reserve(grid.points.size());
    for (const double p : grid.points) {
        const amm::Price price(p);
        curve.values.push_back(amm::lp_pnl(position, price) +
                               options::portfolio_payoff(legs, price) / curve.normalizer);
    }
    return curve;
}

} // namespace lphedge::hedge
