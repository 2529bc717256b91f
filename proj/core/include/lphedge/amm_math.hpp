#pragma once

#include <string>
#include <utility>
#include <variant>

namespace lphedge::amm {

// =============================================================================
// Domain values
// =============================================================================

// Price of token a in units of token b. Token b's self-price is always 1 and
// is never stored.
class Price {
public:
    explicit Price(double value);

    double value() const noexcept { return value_; }

private:
    double value_;
};

// Relative price move (final/entry - 1). Must stay above -1 so the implied
// final price remains positive.
class Delta {
public:
    explicit Delta(double value);

    double value() const noexcept { return value_; }

private:
    double value_;
};

struct TokenPair {
    std::string symbol_a;
    std::string symbol_b;
    int decimals_a = 18;
    int decimals_b = 18;
};

// Validates decimals are in [0, 36].
TokenPair make_token_pair(std::string symbol_a, std::string symbol_b,
                          int decimals_a, int decimals_b);

// =============================================================================
// Positions
// =============================================================================

// Full-range (constant product) liquidity position. kappa = a0 * b0 and the
// deposit ratio b0/a0 must match the entry price within 0.5%.
struct UniformPosition {
    Price entry_price;
    double amount_a_init = 0.0;
    double amount_b_init = 0.0;
    double kappa = 0.0;

    static UniformPosition from_deposit(Price entry_price,
                                        double amount_a, double amount_b);
};

// Range-bound liquidity position. Holds the liquidity parameter sqrt(kappa)
// directly since every amount formula consumes the square root.
struct ConcentratedPosition {
    Price entry_price;
    Price lower_price;
    Price upper_price;
    double amount_a_init = 0.0;
    double amount_b_init = 0.0;
    double sqrt_kappa = 0.0;

    // Derives sqrt_kappa from the deposited amounts via liquidity_from_deposit.
    static ConcentratedPosition from_deposit(Price entry_price,
                                             Price lower_price, Price upper_price,
                                             double amount_a, double amount_b);

    // Checks the range/amount invariants, trusts the given sqrt_kappa.
    static ConcentratedPosition from_liquidity(Price entry_price,
                                               Price lower_price, Price upper_price,
                                               double amount_a, double amount_b,
                                               double sqrt_kappa);
};

using Position = std::variant<UniformPosition, ConcentratedPosition>;

// =============================================================================
// Closed forms
// =============================================================================

// final/entry - 1.
Delta delta_from_prices(Price entry, Price final_price);

// Reserves of a constant-product pool at a given price:
// a = sqrt(kappa/p), b = sqrt(kappa*p).
std::pair<double, double> amounts_from_price_uniform(double kappa, Price price);

// sqrt(delta+1) - 1, as a fraction of the initial investment.
double lp_pnl_uniform(Delta delta);

// 2*sqrt(delta+1)/(delta+2) - 1, as a fraction of the held-portfolio value.
// Nonpositive everywhere, zero only at delta = 0.
double il_uniform(Delta delta);

// Piecewise token amounts of a range position once price settles at p_f:
// all token a below the range, all token b above it, mixed inside.
std::pair<double, double> final_amounts_concentrated(double sqrt_kappa,
                                                     Price lower, Price upper,
                                                     Price final_price);

// Inverts the amount formulas at the entry price. Interior deposits yield two
// independent single-sided estimates; returns the smaller and rejects a
// relative disagreement above 1%.
double liquidity_from_deposit(Price entry, Price lower, Price upper,
                              double amount_a, double amount_b);

// p_f * a + b, in token b units.
double final_pool_value(Price final_price, double amount_a, double amount_b);

// Value of simply holding the initial deposit: p_f * a0 + b0.
double value_if_held(Price entry, Price final_price,
                     double amount_a_init, double amount_b_init);

double lp_pnl_concentrated(const ConcentratedPosition& position, Price final_price);
double il_concentrated(const ConcentratedPosition& position, Price final_price);

// 1.0001^tick adjusted for the tokens' decimal scales. |tick| <= 887272.
Price tick_to_price(long tick, int decimals_a, int decimals_b);

inline constexpr long kMaxTick = 887272;

// =============================================================================
// Position helpers
// =============================================================================

Price entry_price(const Position& position);

// Initial investment in token b units: entry * a0 + b0.
double initial_value(const Position& position);

double lp_pnl(const Position& position, Price final_price);
double il(const Position& position, Price final_price);
double pool_value(const Position& position, Price final_price);

} // namespace lphedge::amm
