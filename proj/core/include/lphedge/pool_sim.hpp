#pragma once

#include <utility>

#include "lphedge/amm_math.hpp"

namespace lphedge::sim {

// Zero-fee constant-product swap engine. Deliberately knows nothing about the
// closed-form amount formulas: price moves are found by searching over swap
// inputs, so the engine can serve as an independent oracle for them.
class SimPool {
public:
    SimPool(double reserve_a, double reserve_b);

    double reserve_a() const noexcept { return reserve_a_; }
    double reserve_b() const noexcept { return reserve_b_; }
    double kappa() const noexcept { return kappa_; }
    double spot_price() const noexcept { return reserve_b_ / reserve_a_; }

    // Swap `da` of token a into the pool; returns the token b paid out.
    double swap_exact_a_in(double da);

    // Swap `db` of token b into the pool; returns the token a paid out.
    double swap_exact_b_in(double db);

    // Executes the single swap that moves the spot price to `target`,
    // found by bisection over the swap input.
    void move_price_to(amm::Price target);

private:
    double reserve_a_;
    double reserve_b_;
    double kappa_;
};

// Range-bound pool simulated through its virtual constant-product reserves:
// (a + sqrt(kappa/p_u)) * (b + sqrt(kappa*p_l)) = kappa while price is in
// [p_l, p_u]. Price moves happen one linearized arbitrage trade at a time,
// so stepping error shrinks as the walk is refined.
class RangedSimPool {
public:
    RangedSimPool(double sqrt_kappa, amm::Price lower, amm::Price upper,
                  amm::Price start_price);

    double price() const noexcept { return virtual_b_ / virtual_a_; }
    bool active() const noexcept;

    // One arbitrage trade toward `target` (clamped to the range), sized from
    // the local marginal price. Call repeatedly to track a price schedule.
    void step_towards(double target);

    // Real token holdings backing the position at the current price.
    std::pair<double, double> real_amounts() const;

private:
    double virtual_a_;
    double virtual_b_;
    double sqrt_kappa_;
    double lower_;
    double upper_;
    double offset_a_; // sqrt(kappa / p_u)
    double offset_b_; // sqrt(kappa * p_l)
};

// Walks price from the position's entry to `final_price` in `steps` geometric
// increments through a RangedSimPool and returns the holdings it ends with.
// Converges to final_amounts_concentrated as steps grows.
std::pair<double, double> simulate_concentrated_exit(
    const amm::ConcentratedPosition& position, amm::Price final_price, int steps);

} // namespace lphedge::sim
