#include "lphedge/pool_sim.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <stdexcept>

namespace lphedge::sim {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::domain_error(std::string(what) + " must be positive and finite");
    }
}

} // namespace

SimPool::SimPool(double reserve_a, double reserve_b)
    : reserve_a_(reserve_a), reserve_b_(reserve_b), kappa_(reserve_a * reserve_b) {
    require_positive(reserve_a, "reserve_a");
    require_positive(reserve_b, "reserve_b");
}

double SimPool::swap_exact_a_in(double da) {
    require_positive(da, "swap input");
    const double db = reserve_b_ - kappa_ / (reserve_a_ + da);
    reserve_a_ += da;
    reserve_b_ -= db;
    return db;
}

double SimPool::swap_exact_b_in(double db) {
    require_positive(db, "swap input");
    const double da = reserve_a_ - kappa_ / (reserve_b_ + db);
    reserve_b_ += db;
    reserve_a_ -= da;
    return da;
}

void SimPool::move_price_to(amm::Price target) {
    const double t = target.value();
    const double p0 = spot_price();
    if (t == p0) {
        return;
    }

    // Post-swap spot as a function of the input amount, evaluated through the
    // same arithmetic the swap itself uses. Monotone in the input, so the
    // required single swap can be bracketed and bisected without any closed
    // form for reserves-at-price.
    const bool a_in = t < p0; // adding a lowers the price
    const auto price_after = [&](double in) {
        if (a_in) {
            const double db = reserve_b_ - kappa_ / (reserve_a_ + in);
            return (reserve_b_ - db) / (reserve_a_ + in);
        }
        const double da = reserve_a_ - kappa_ / (reserve_b_ + in);
        return (reserve_b_ + in) / (reserve_a_ - da);
    };
    const auto past_target = [&](double p) { return a_in ? p <= t : p >= t; };

    double lo = 0.0;
    double hi = a_in ? reserve_a_ : reserve_b_;
    while (!past_target(price_after(hi))) {
        hi *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) {
            break;
        }
        if (past_target(price_after(mid))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    const double in = std::abs(price_after(hi) - t) < std::abs(price_after(lo) - t) ? hi : lo;
    if (in > 0.0) {
        if (a_in) {
            swap_exact_a_in(in);
        } else {
            swap_exact_b_in(in);
        }
    }
}

RangedSimPool::RangedSimPool(double sqrt_kappa, amm::Price lower, amm::Price upper,
                             amm::Price start_price)
    : sqrt_kappa_(sqrt_kappa), lower_(lower.value()), upper_(upper.value()) {
    require_positive(sqrt_kappa, "sqrt_kappa");
    if (!(lower_ < upper_)) {
        throw std::domain_error("lower_price must be strictly below upper_price");
    }
    offset_a_ = sqrt_kappa_ / std::sqrt(upper_);
    offset_b_ = sqrt_kappa_ * std::sqrt(lower_);
    // Virtual reserves satisfy A*B = kappa and B/A = price; pin the start
    // price to the range so out-of-range entries begin at the boundary.
    const double p0 = std::clamp(start_price.value(), lower_, upper_);
    virtual_a_ = sqrt_kappa_ / std::sqrt(p0);
    virtual_b_ = sqrt_kappa_ * std::sqrt(p0);
}

bool RangedSimPool::active() const noexcept {
    // A few ulps of slack so a pool parked exactly on a boundary reads as
    // inactive despite division rounding in price().
    const double tol = 8.0 * std::numeric_limits<double>::epsilon();
    const double p = price();
    return p > lower_ * (1.0 + tol) && p < upper_ * (1.0 - tol);
}

void RangedSimPool::step_towards(double target) {
    const double t = std::clamp(target, lower_, upper_);
    const double p = price();
    if (t == p) {
        return;
    }
    const double kappa = sqrt_kappa_ * sqrt_kappa_;
    if (t < p) {
        // dp/da = -2p/A, so a first-order trade toward t adds this much a.
        const double da = virtual_a_ * (p - t) / (2.0 * p);
        if (da <= 0.0) {
            return;
        }
        const double db = virtual_b_ - kappa / (virtual_a_ + da);
        virtual_a_ += da;
        virtual_b_ -= db;
    } else {
        const double db = virtual_b_ * (t - p) / (2.0 * p);
        if (db <= 0.0) {
            return;
        }
        const double da = virtual_a_ - kappa / (virtual_b_ + db);
        virtual_b_ += db;
        virtual_a_ -= da;
    }
}

std::pair<double, double> RangedSimPool::real_amounts() const {
    return {std::max(0.0, virtual_a_ - offset_a_),
            std::max(0.0, virtual_b_ - offset_b_)};
}

std::pair<double, double> simulate_concentrated_exit(
    const amm::ConcentratedPosition& position, amm::Price final_price, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("steps must be at least 1");
    }

    RangedSimPool pool(position.sqrt_kappa, position.lower_price,
                       position.upper_price, position.entry_price);

    const double entry = position.entry_price.value();
    const double ratio = final_price.value() / entry;
    if (ratio == 1.0) {
        return pool.real_amounts();
    }
    for (int k = 1; k <= steps; ++k) {
        const double target = entry * std::pow(ratio, static_cast<double>(k) /
                                                          static_cast<double>(steps));
        pool.step_towards(target);
    }
    return pool.real_amounts();
}

} // namespace lphedge::sim
