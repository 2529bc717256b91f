#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lphedge/amm_math.hpp"
#include "lphedge/config.hpp"
#include "lphedge/errors.hpp"

using namespace lphedge;
using config::PositionConfig;
using config::PositionKind;

namespace {

constexpr const char* kUniformConfig = R"(# ETH-USDT v2 deposit
schema_version = 1
kind = uniform
symbol_a = ETH
symbol_b = USDT
decimals_a = 18
decimals_b = 6
entry_price = 1613.68
amount_a = 143.78
amount_b = 232015.77
)";

constexpr const char* kConcentratedTicks = R"(
schema_version = 1
kind = concentrated
symbol_a = WBTC
symbol_b = USDC
decimals_a = 8
decimals_b = 6
entry_price = 23776.00
amount_a = 19.94
amount_b = 265132.51
lower_tick = 51960
upper_tick = 59940
)";

constexpr const char* kConcentratedPrices = R"(
schema_version = 1
kind = concentrated
symbol_a = WBTC
symbol_b = USDC
decimals_a = 8
decimals_b = 6
entry_price = 23776.00
amount_a = 19.94
amount_b = 265132.51
lower_price = 18050.17
upper_price = 40089.53
)";

} // namespace

TEST_CASE("parse a uniform config") {
    const auto cfg = config::parse_position_config(kUniformConfig);
    CHECK(cfg.kind == PositionKind::Uniform);
    CHECK(cfg.symbol_a == "ETH");
    CHECK(cfg.decimals_b == 6);
    CHECK(*cfg.entry_price == 1613.68);
    CHECK(cfg.amount_a == 143.78);
    CHECK_FALSE(cfg.entry_tick.has_value());
    const auto pos = config::make_position(cfg);
    CHECK(std::get<amm::UniformPosition>(pos).kappa ==
          doctest::Approx(143.78 * 232015.77));
}

TEST_CASE("parse a concentrated config with ticks") {
    const auto cfg = config::parse_position_config(kConcentratedTicks);
    CHECK(cfg.kind == PositionKind::Concentrated);
    CHECK(*cfg.lower_tick == 51960);
    CHECK(*cfg.upper_tick == 59940);
    const auto pos = config::make_position(cfg);
    const auto& conc = std::get<amm::ConcentratedPosition>(pos);
    CHECK(conc.lower_price.value() == doctest::Approx(18050.17).epsilon(1e-6));
    CHECK(conc.upper_price.value() == doctest::Approx(40089.53).epsilon(1e-6));
}

TEST_CASE("tick and price range forms agree") {
    const auto by_tick =
        std::get<amm::ConcentratedPosition>(config::make_position(
            config::parse_position_config(kConcentratedTicks)));
    const auto by_price =
        std::get<amm::ConcentratedPosition>(config::make_position(
            config::parse_position_config(kConcentratedPrices)));
    CHECK(std::abs(by_tick.lower_price.value() - by_price.lower_price.value()) <= 0.01);
    CHECK(std::abs(by_tick.upper_price.value() - by_price.upper_price.value()) <= 0.01);
    for (const double p : {12000.0, 20000.0, 30000.0, 45000.0}) {
        CHECK(std::abs(amm::lp_pnl_concentrated(by_tick, amm::Price(p)) -
                       amm::lp_pnl_concentrated(by_price, amm::Price(p))) <= 1e-6);
    }
}

TEST_CASE("config round trip preserves the position exactly") {
    for (const char* text : {kUniformConfig, kConcentratedTicks, kConcentratedPrices}) {
        const auto cfg = config::parse_position_config(text);
        const auto reparsed =
            config::parse_position_config(config::serialize_position_config(cfg));
        CHECK(reparsed.kind == cfg.kind);
        CHECK(reparsed.symbol_a == cfg.symbol_a);
        CHECK(reparsed.symbol_b == cfg.symbol_b);
        CHECK(reparsed.decimals_a == cfg.decimals_a);
        CHECK(reparsed.decimals_b == cfg.decimals_b);
        CHECK(reparsed.entry_price == cfg.entry_price);
        CHECK(reparsed.entry_tick == cfg.entry_tick);
        CHECK(reparsed.amount_a == cfg.amount_a);
        CHECK(reparsed.amount_b == cfg.amount_b);
        CHECK(reparsed.lower_price == cfg.lower_price);
        CHECK(reparsed.upper_price == cfg.upper_price);
        CHECK(reparsed.lower_tick == cfg.lower_tick);
        CHECK(reparsed.upper_tick == cfg.upper_tick);
    }
}

TEST_CASE("config errors name the offending field") {
    const auto field_of = [](const std::string& text) -> std::string {
        try {
            config::parse_position_config(text);
        } catch (const ConfigError& e) {
            return e.field();
        }
        return "<no error>";
    };

    CHECK(field_of("schema_version = 1\nkinds = uniform\n") == "kinds");
    CHECK(field_of(std::string(kUniformConfig) + "entry_tick = 100\n") == "entry_price");
    CHECK(field_of(std::string(kUniformConfig) + "amount_a = 3\n") == "amount_a");
    CHECK(field_of(std::string(kUniformConfig) + "lower_price = 1\n") == "lower_price");
    CHECK(field_of("schema_version = 2\nkind = uniform\n") == "schema_version");

    // missing upper_price
    std::string partial = kConcentratedPrices;
    partial.erase(partial.find("upper_price"));
    CHECK(field_of(partial) == "upper_price");

    // both range forms at once
    CHECK(field_of(std::string(kConcentratedPrices) +
                   "lower_tick = 51960\nupper_tick = 59940\n") == "lower_price");

    // malformed number
    std::string bad = kUniformConfig;
    bad.replace(bad.find("143.78"), 6, "14x.78");
    CHECK(field_of(bad) == "amount_a");
}

TEST_CASE("make_position validates deposits") {
    std::string drifted = kUniformConfig;
    drifted.replace(drifted.find("232015.77"), 9, "250000.00");
    const auto cfg = config::parse_position_config(drifted);
    CHECK_THROWS_AS(config::make_position(cfg), ConsistencyError);
}

TEST_CASE("load errors carry the path") {
    try {
        config::load_position_config("/nonexistent/pos.cfg");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/pos.cfg") != std::string::npos);
    }
}
