#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "lphedge/errors.hpp"
#include "lphedge/options.hpp"

using namespace lphedge;
using amm::Price;
using options::OptionKind;
using options::OptionQuote;
using options::PortfolioLeg;
using options::Side;

namespace {

OptionQuote quote(OptionKind kind, double strike, double bid, double ask) {
    return OptionQuote{kind, strike, bid, ask, "2022-09-30", "ETH"};
}

constexpr const char* kArrayChain = R"({
  "timestamp": "2022-07-15T00:00:00Z",
  "underlying": "ETH",
  "spot": "1613.68",
  "premium_denomination": "underlying",
  "quotes": [
    {"kind": "call", "strike": "1600", "expiry": "2022-09-30", "bid": "0.05", "ask": "0.06"}
  ]
})";

} // namespace

TEST_CASE("payoff_vanilla") {
    CHECK(options::payoff_vanilla(OptionKind::Call, Side::Long, Price(120), Price(100), 5.0) ==
          15.0);
    CHECK(options::payoff_vanilla(OptionKind::Call, Side::Long, Price(80), Price(100), 5.0) ==
          -5.0);
    CHECK(options::payoff_vanilla(OptionKind::Put, Side::Short, Price(80), Price(100), 7.0) ==
          -13.0);
    CHECK_THROWS_AS(
        options::payoff_vanilla(OptionKind::Call, Side::Long, Price(80), Price(100), -1.0),
        std::domain_error);

    SUBCASE("long and short of the same contract cancel") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> dist(1.0, 500.0);
        for (int i = 0; i < 100; ++i) {
            const Price p(dist(rng));
            const Price k(dist(rng));
            const double c = dist(rng) / 10.0;
            for (const auto kind : {OptionKind::Call, OptionKind::Put}) {
                CHECK(options::payoff_vanilla(kind, Side::Long, p, k, c) +
                          options::payoff_vanilla(kind, Side::Short, p, k, c) ==
                      0.0);
            }
        }
    }
    SUBCASE("put-call parity at zero premium") {
        for (double p = 10.0; p < 400.0; p += 7.3) {
            const double call =
                options::payoff_vanilla(OptionKind::Call, Side::Long, Price(p), Price(100), 0.0);
            const double put =
                options::payoff_vanilla(OptionKind::Put, Side::Long, Price(p), Price(100), 0.0);
            CHECK(call - put == p - 100.0);
        }
    }
}

TEST_CASE("leg_payoff") {
    CHECK(options::leg_payoff({quote(OptionKind::Call, 100, 4, 5), 2.0}, Price(120)) == 30.0);
    CHECK(options::leg_payoff({quote(OptionKind::Call, 100, 4, 5), -1.0}, Price(120)) == -16.0);

    SUBCASE("zero spread long/short symmetry") {
        const auto q = quote(OptionKind::Put, 100, 6, 6);
        for (double p = 40.0; p < 200.0; p += 11.0) {
            CHECK(options::leg_payoff({q, 1.0}, Price(p)) +
                      options::leg_payoff({q, -1.0}, Price(p)) ==
                  0.0);
        }
    }
    SUBCASE("missing premium side is a data error") {
        OptionQuote no_ask{OptionKind::Call, 100.0, 4.0, std::nullopt, "2022-09-30", "ETH"};
        OptionQuote no_bid{OptionKind::Call, 100.0, std::nullopt, 5.0, "2022-09-30", "ETH"};
        CHECK_THROWS_AS(options::leg_payoff({no_ask, 1.0}, Price(120)), ChainError);
        CHECK_THROWS_AS(options::leg_payoff({no_bid, -1.0}, Price(120)), ChainError);
        CHECK(options::leg_payoff({no_ask, -1.0}, Price(120)) == -16.0);
    }
    SUBCASE("zero theta is rejected") {
        CHECK_THROWS_AS(options::leg_payoff({quote(OptionKind::Call, 100, 4, 5), 0.0},
                                            Price(120)),
                        std::invalid_argument);
    }
    SUBCASE("scaling is exact") {
        const auto q = quote(OptionKind::Call, 100, 4, 5);
        for (double p = 50.0; p < 300.0; p += 13.7) {
            const double once = options::leg_payoff({q, 0.75}, Price(p));
            const double twice = options::leg_payoff({q, 1.5}, Price(p));
            CHECK(twice == 2.0 * once);
        }
    }
}

TEST_CASE("portfolio_payoff") {
    SUBCASE("empty portfolio pays zero") {
        CHECK(options::portfolio_payoff({}, Price(123.0)) == 0.0);
    }
    SUBCASE("straddle at the money") {
        const std::vector<PortfolioLeg> legs = {{quote(OptionKind::Call, 100, 4, 5), 1.0},
                                                {quote(OptionKind::Put, 100, 4, 5), 1.0}};
        CHECK(options::portfolio_payoff(legs, Price(100)) == -10.0);
    }
    SUBCASE("matches a brute-force sum over random legs") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> strike(50.0, 200.0);
        std::uniform_real_distribution<double> theta(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<PortfolioLeg> legs;
            for (int i = 0; i < 3; ++i) {
                const double bid = strike(rng) / 40.0;
                legs.push_back({quote(i % 2 ? OptionKind::Put : OptionKind::Call,
                                      strike(rng), bid, bid + 0.5),
                                theta(rng)});
            }
            for (double p = 20.0; p < 260.0; p += 17.0) {
                double expected = 0.0;
                for (const auto& leg : legs) {
                    const double c = leg.theta > 0 ? *leg.quote.ask : *leg.quote.bid;
                    const Side side = leg.theta > 0 ? Side::Long : Side::Short;
                    expected += std::abs(leg.theta) *
                                options::payoff_vanilla(leg.quote.kind, side, Price(p),
                                                        Price(leg.quote.strike), c);
                }
                CHECK(options::portfolio_payoff(legs, Price(p)) ==
                      doctest::Approx(expected).epsilon(1e-12));
            }
        }
    }
    SUBCASE("piecewise linear with kinks only at strikes") {
        const std::vector<PortfolioLeg> legs = {{quote(OptionKind::Call, 100, 4, 5), 2.0},
                                                {quote(OptionKind::Put, 140, 6, 7), -1.5},
                                                {quote(OptionKind::Call, 180, 2, 3), 0.5}};
        // between consecutive strikes the payoff is affine: midpoint rule
        const double edges[] = {20.0, 100.0, 140.0, 180.0, 260.0};
        for (std::size_t seg = 0; seg + 1 < std::size(edges); ++seg) {
            const double lo = edges[seg] + 1.0;
            const double hi = edges[seg + 1] - 1.0;
            const double f_lo = options::portfolio_payoff(legs, Price(lo));
            const double f_hi = options::portfolio_payoff(legs, Price(hi));
            const double f_mid = options::portfolio_payoff(legs, Price(0.5 * (lo + hi)));
            CHECK(f_mid == doctest::Approx(0.5 * (f_lo + f_hi)).epsilon(1e-12));
        }
        // and the slope genuinely changes across each strike
        for (const double k : {100.0, 140.0, 180.0}) {
            const double below = options::portfolio_payoff(legs, Price(k - 2.0)) -
                                 options::portfolio_payoff(legs, Price(k - 4.0));
            const double above = options::portfolio_payoff(legs, Price(k + 4.0)) -
                                 options::portfolio_payoff(legs, Price(k + 2.0));
            CHECK(std::abs(above - below) > 1e-9);
        }
    }
}

TEST_CASE("load_chain converts underlying-denominated premiums") {
    const auto chain = options::parse_chain(kArrayChain);
    REQUIRE(chain.quotes.size() == 1);
    CHECK(chain.underlying == "ETH");
    CHECK(chain.spot == 1613.68);
    CHECK(chain.quotes[0].kind == OptionKind::Call);
    CHECK(chain.quotes[0].strike == 1600.0);
    CHECK(*chain.quotes[0].bid == doctest::Approx(80.684).epsilon(1e-12));
    CHECK(*chain.quotes[0].ask == doctest::Approx(96.8208).epsilon(1e-12));
    CHECK(chain.quotes[0].underlying == "ETH");
}

TEST_CASE("parse_chain accepts the line-delimited form") {
    const std::string text =
        "{\"timestamp\": \"t0\", \"underlying\": \"BTC\", \"spot\": \"23776\", "
        "\"premium_denomination\": \"quote\"}\n"
        "{\"kind\": \"call\", \"strike\": \"24000\", \"expiry\": \"2022-12-30\", "
        "\"bid\": \"900\", \"ask\": \"950\"}\n"
        "{\"kind\": \"put\", \"strike\": \"20000\", \"expiry\": \"2022-12-30\", "
        "\"bid\": null, \"ask\": \"400\"}\n";
    const auto chain = options::parse_chain(text);
    REQUIRE(chain.quotes.size() == 2);
    CHECK(*chain.quotes[0].bid == 900.0);
    CHECK_FALSE(chain.quotes[1].bid.has_value());
    CHECK(*chain.quotes[1].ask == 400.0);
}

TEST_CASE("parse_chain schema violations") {
    SUBCASE("bid above ask names the record") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"2\", \"ask\": \"3\"}\n"
            "{\"kind\": \"call\", \"strike\": \"100\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"5\", \"ask\": \"3\"}\n";
        try {
            options::parse_chain(text);
            FAIL("expected ChainError");
        } catch (const ChainError& e) {
            CHECK(e.record_index() == 1);
        }
    }
    SUBCASE("empty chain") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
    SUBCASE("unknown field rejected") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"2\", \"ask\": \"3\", \"vega\": \"1\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
    SUBCASE("field order is fixed") {
        const std::string text =
            "{\"underlying\": \"E\", \"timestamp\": \"t\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"2\", \"ask\": \"3\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
    SUBCASE("numbers must be decimal strings") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": 100, "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"2\", \"ask\": \"3\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
    SUBCASE("bad expiry") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"30SEP22\", "
            "\"bid\": \"2\", \"ask\": \"3\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
    SUBCASE("negative premium") {
        const std::string text =
            "{\"timestamp\": \"t\", \"underlying\": \"E\", \"spot\": \"100\", "
            "\"premium_denomination\": \"quote\"}\n"
            "{\"kind\": \"call\", \"strike\": \"90\", \"expiry\": \"2022-09-30\", "
            "\"bid\": \"-2\", \"ask\": \"3\"}\n";
        CHECK_THROWS_AS(options::parse_chain(text), ChainError);
    }
}

TEST_CASE("chain serialize/load round trip is bit exact") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> strike(1.0, 90000.0);
    std::uniform_real_distribution<double> prem(0.0, 5000.0);
    options::OptionsChain chain;
    chain.timestamp = "2022-07-15T00:00:00Z";
    chain.underlying = "BTC";
    chain.spot = 23776.0 * (1.0 + 1e-13); // not exactly representable inputs welcome
    for (int i = 0; i < 64; ++i) {
        OptionQuote q;
        q.kind = i % 2 ? OptionKind::Put : OptionKind::Call;
        q.strike = strike(rng);
        const double b = prem(rng);
        q.bid = b;
        q.ask = b + prem(rng) / 100.0;
        if (i % 7 == 0) {
            q.bid.reset();
        }
        q.expiry = "2022-12-30";
        q.underlying = "BTC";
        chain.quotes.push_back(q);
    }
    const auto reloaded = options::parse_chain(options::serialize_chain(chain));
    REQUIRE(reloaded.quotes.size() == chain.quotes.size());
    CHECK(std::memcmp(&reloaded.spot, &chain.spot, sizeof(double)) == 0);
    for (std::size_t i = 0; i < chain.quotes.size(); ++i) {
        const auto& a = chain.quotes[i];
        const auto& b = reloaded.quotes[i];
        CHECK(a.strike == b.strike);
        CHECK(a.bid.has_value() == b.bid.has_value());
        if (a.bid) {
            CHECK(std::memcmp(&*a.bid, &*b.bid, sizeof(double)) == 0);
        }
        CHECK(*a.ask == *b.ask);
        CHECK(a.expiry == b.expiry);
    }
}

TEST_CASE("contract_id") {
    CHECK(options::contract_id(quote(OptionKind::Call, 1600, 1, 2)) ==
          "ETH-2022-09-30-1600-C");
    CHECK(options::contract_id(quote(OptionKind::Put, 24000, 1, 2)) ==
          "ETH-2022-09-30-24000-P");
}
