#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lphedge/amm_math.hpp"

namespace lphedge::options {

enum class OptionKind { Call, Put };
enum class Side { Long, Short };

// One listed option. Premiums are kept in token b (quote) units; a side with
// no market is absent rather than zero, so an explicit zero premium stays
// tradable.
struct OptionQuote {
    OptionKind kind = OptionKind::Call;
    double strike = 0.0;
    std::optional<double> bid;
    std::optional<double> ask;
    std::string expiry;     // ISO-8601 date
    std::string underlying;
};

// Signed holding of one contract: positive theta is long (entered at the
// ask), negative is short (entered at the bid).
struct PortfolioLeg {
    OptionQuote quote;
    double theta = 0.0;
};

struct OptionsChain {
    std::string timestamp;
    std::string underlying;
    double spot = 0.0;
    std::vector<OptionQuote> quotes;
};

const char* to_string(OptionKind kind);

// "BTC-2022-09-30-20000-C" style identifier.
std::string contract_id(const OptionQuote& quote);

// max(0, p-k) for calls, max(0, k-p) for puts.
double intrinsic_value(OptionKind kind, amm::Price final_price, amm::Price strike);

// Expiry payoff of a single contract net of its premium.
double payoff_vanilla(OptionKind kind, Side side, amm::Price final_price,
                      amm::Price strike, double premium);

// Premium for entering theta contracts: ask side for longs, bid side for
// shorts. Throws ChainError when the required side has no market.
double entry_premium(const OptionQuote& quote, double theta);

double leg_payoff(const PortfolioLeg& leg, amm::Price final_price);

// Sum over legs; empty portfolio pays 0.
double portfolio_payoff(std::span<const PortfolioLeg> legs, amm::Price final_price);

// Snapshot file parsing. Two layouts are accepted: a single JSON object with
// a `quotes` array, or line-delimited JSON (header object first, one quote
// object per following line). Header fields: timestamp, underlying, spot,
// premium_denomination; quote fields: kind, strike, expiry, bid, ask, in
// that order, numbers as decimal strings, no extra fields. Premiums quoted in
// the underlying are converted to token b at the snapshot spot.
OptionsChain parse_chain(const std::string& text);
OptionsChain load_chain(const std::string& path);

// Canonical array-form snapshot (premiums already in token b units). Numeric
// fields survive a save/load round trip bit-exactly.
std::string serialize_chain(const OptionsChain& chain);
void save_chain(const OptionsChain& chain, const std::string& path);

} // namespace lphedge::options
