#include "lphedge/amm_math.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lphedge/errors.hpp"

namespace lphedge::amm {

namespace {

constexpr double kUniformDepositTolerance = 0.005;   // |b/a - p| / p
constexpr double kLiquidityEstimateTolerance = 0.01; // two-sided sqrt_kappa gap

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

void require_nonneg(double v, const char* what) {
    if (v < 0.0 || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be nonnegative and finite");
    }
}

void require_range(Price lower, Price upper) {
    if (!(lower.value() < upper.value())) {
        throw std::domain_error("lower_price must be strictly below upper_price");
    }
}

} // namespace

Price::Price(double value) : value_(value) {
    require_positive(value, "price");
}

Delta::Delta(double value) : value_(value) {
    if (!std::isfinite(value) || value <= -1.0) {
        throw std::domain_error("delta must be finite and greater than -1");
    }
}

TokenPair make_token_pair(std::string symbol_a, std::string symbol_b,
                          int decimals_a, int decimals_b) {
    if (decimals_a < 0 || decimals_a > 36 || decimals_b < 0 || decimals_b > 36) {
        throw std::domain_error("token decimals must be in [0, 36]");
    }
    return TokenPair{std::move(symbol_a), std::move(symbol_b), decimals_a, decimals_b};
}

UniformPosition UniformPosition::from_deposit(Price entry_price,
                                              double amount_a, double amount_b) {
    require_positive(amount_a, "amount_a");
    require_positive(amount_b, "amount_b");
    const double pool_price = amount_b / amount_a;
    const double drift = std::abs(pool_price - entry_price.value()) / entry_price.value();
    if (drift > kUniformDepositTolerance) {
        throw ConsistencyError("deposit ratio b/a deviates from entry price by more than 0.5%");
    }
    const double kappa = amount_a * amount_b;
    require_positive(kappa, "kappa");
    return UniformPosition{entry_price, amount_a, amount_b, kappa};
}

ConcentratedPosition ConcentratedPosition::from_deposit(Price entry_price,
                                                        Price lower_price, Price upper_price,
                                                        double amount_a, double amount_b) {
    const double sqrt_kappa =
        liquidity_from_deposit(entry_price, lower_price, upper_price, amount_a, amount_b);
    return ConcentratedPosition{entry_price, lower_price, upper_price,
                                amount_a, amount_b, sqrt_kappa};
}

ConcentratedPosition ConcentratedPosition::from_liquidity(Price entry_price,
                                                          Price lower_price, Price upper_price,
                                                          double amount_a, double amount_b,
                                                          double sqrt_kappa) {
    require_range(lower_price, upper_price);
    require_nonneg(amount_a, "amount_a");
    require_nonneg(amount_b, "amount_b");
    require_positive(sqrt_kappa, "sqrt_kappa");
    if (amount_a == 0.0 && amount_b == 0.0) {
        throw std::domain_error("position must deposit at least one token");
    }
    const bool interior = entry_price.value() > lower_price.value() &&
                          entry_price.value() < upper_price.value();
    if (interior && (amount_a == 0.0 || amount_b == 0.0)) {
        throw std::domain_error("in-range position must deposit both tokens");
    }
    return ConcentratedPosition{entry_price, lower_price, upper_price,
                                amount_a, amount_b, sqrt_kappa};
}

Delta delta_from_prices(Price entry, Price final_price) {
    return Delta(final_price.value() / entry.value() - 1.0);
}

std::pair<double, double> amounts_from_price_uniform(double kappa, Price price) {
    require_positive(kappa, "kappa");
    return {std::sqrt(kappa / price.value()), std::sqrt(kappa * price.value())};
}

double lp_pnl_uniform(Delta delta) {
    return std::sqrt(delta.value() + 1.0) - 1.0;
}

double il_uniform(Delta delta) {
    return 2.0 * std::sqrt(delta.value() + 1.0) / (delta.value() + 2.0) - 1.0;
}

std::pair<double, double> final_amounts_concentrated(double sqrt_kappa,
                                                     Price lower, Price upper,
                                                     Price final_price) {
    require_positive(sqrt_kappa, "sqrt_kappa");
    require_range(lower, upper);

    const double sqrt_l = std::sqrt(lower.value());
    const double sqrt_u = std::sqrt(upper.value());
    const double p_f = final_price.value();

    if (p_f <= lower.value()) {
        return {sqrt_kappa * (sqrt_u - sqrt_l) / std::sqrt(lower.value() * upper.value()), 0.0};
    }
    if (p_f >= upper.value()) {
        return {0.0, sqrt_kappa * (sqrt_u - sqrt_l)};
    }
    const double sqrt_f = std::sqrt(p_f);
    return {sqrt_kappa * (sqrt_u - sqrt_f) / std::sqrt(p_f * upper.value()),
            sqrt_kappa * (sqrt_f - sqrt_l)};
}

double liquidity_from_deposit(Price entry, Price lower, Price upper,
                              double amount_a, double amount_b) {
    require_range(lower, upper);
    require_nonneg(amount_a, "amount_a");
    require_nonneg(amount_b, "amount_b");

    const double p_i = entry.value();
    const double sqrt_l = std::sqrt(lower.value());
    const double sqrt_u = std::sqrt(upper.value());

    if (p_i <= lower.value()) {
        if (amount_a <= 0.0) {
            throw std::domain_error("below-range deposit requires token a");
        }
        if (amount_b != 0.0) {
            throw ConsistencyError("below-range deposit cannot hold token b");
        }
        return amount_a * std::sqrt(lower.value() * upper.value()) / (sqrt_u - sqrt_l);
    }
    if (p_i >= upper.value()) {
        if (amount_b <= 0.0) {
            throw std::domain_error("above-range deposit requires token b");
        }
        if (amount_a != 0.0) {
            throw ConsistencyError("above-range deposit cannot hold token a");
        }
        return amount_b / (sqrt_u - sqrt_l);
    }

    if (amount_a <= 0.0 || amount_b <= 0.0) {
        throw std::domain_error("in-range deposit requires both tokens");
    }
    const double sqrt_i = std::sqrt(p_i);
    const double est_a = amount_a * std::sqrt(p_i * upper.value()) / (sqrt_u - sqrt_i);
    const double est_b = amount_b / (sqrt_i - sqrt_l);
    const double gap = std::abs(est_a - est_b) / std::max(est_a, est_b);
    if (gap > kLiquidityEstimateTolerance) {
        throw ConsistencyError("single-sided liquidity estimates disagree by more than 1%");
    }
    return std::min(est_a, est_b);
}

double final_pool_value(Price final_price, double amount_a, double amount_b) {
    require_nonneg(amount_a, "amount_a");
    require_nonneg(amount_b, "amount_b");
    return final_price.value() * amount_a + amount_b;
}

double value_if_held(Price /*entry*/, Price final_price,
                     double amount_a_init, double amount_b_init) {
    require_nonneg(amount_a_init, "amount_a_init");
    require_nonneg(amount_b_init, "amount_b_init");
    return final_price.value() * amount_a_init + amount_b_init;
}

double lp_pnl_concentrated(const ConcentratedPosition& position, Price final_price) {
    const auto [a_f, b_f] = final_amounts_concentrated(position.sqrt_kappa,
                                                       position.lower_price,
                                                       position.upper_price,
                                                       final_price);
    const double initial = position.entry_price.value() * position.amount_a_init +
                           position.amount_b_init;
    return final_pool_value(final_price, a_f, b_f) / initial - 1.0;
}

double il_concentrated(const ConcentratedPosition& position, Price final_price) {
    const auto [a_f, b_f] = final_amounts_concentrated(position.sqrt_kappa,
                                                       position.lower_price,
                                                       position.upper_price,
                                                       final_price);
    const double held = value_if_held(position.entry_price, final_price,
                                      position.amount_a_init, position.amount_b_init);
    return final_pool_value(final_price, a_f, b_f) / held - 1.0;
}

Price tick_to_price(long tick, int decimals_a, int decimals_b) {
    if (tick < -kMaxTick || tick > kMaxTick) {
        throw std::domain_error("tick outside protocol bounds");
    }
    if (decimals_a < 0 || decimals_a > 36 || decimals_b < 0 || decimals_b > 36) {
        throw std::domain_error("token decimals must be in [0, 36]");
    }
    const double raw = std::pow(1.0001, static_cast<double>(tick));
    const double scale = std::pow(10.0, static_cast<double>(decimals_a - decimals_b));
    return Price(raw * scale);
}

Price entry_price(const Position& position) {
    return std::visit([](const auto& p) { return p.entry_price; }, position);
}

double initial_value(const Position& position) {
    return std::visit([](const auto& p) {
        return p.entry_price.value() * p.amount_a_init + p.amount_b_init;
    }, position);
}

double lp_pnl(const Position& position, Price final_price) {
    if (const auto* u = std::get_if<UniformPosition>(&position)) {
        return lp_pnl_uniform(delta_from_prices(u->entry_price, final_price));
    }
    return lp_pnl_concentrated(std::get<ConcentratedPosition>(position), final_price);
}

double il(const Position& position, Price final_price) {
    if (const auto* u = std::get_if<UniformPosition>(&position)) {
        return il_uniform(delta_from_prices(u->entry_price, final_price));
    }
    return il_concentrated(std::get<ConcentratedPosition>(position), final_price);
}

double pool_value(const Position& position, Price final_price) {
    if (const auto* u = std::get_if<UniformPosition>(&position)) {
        const auto [a, b] = amounts_from_price_uniform(u->kappa, final_price);
        return final_pool_value(final_price, a, b);
    }
    const auto& c = std::get<ConcentratedPosition>(position);
    const auto [a, b] = final_amounts_concentrated(c.sqrt_kappa, c.lower_price,
                                                   c.upper_price, final_price);
    return final_pool_value(final_price, a, b);
}

} // namespace lphedge::amm
