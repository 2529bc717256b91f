#pragma once

#include <optional>
#include <string>

#include "lphedge/amm_math.hpp"

namespace lphedge::config {

enum class PositionKind { Uniform, Concentrated };

// Position description as read from a config file. Entry and range may each
// be given as a price or as a protocol tick; ticks are resolved through the
// token decimals.
struct PositionConfig {
    int schema_version = 1;
    PositionKind kind = PositionKind::Uniform;
    std::string symbol_a;
    std::string symbol_b;
    int decimals_a = 18;
    int decimals_b = 18;
    std::optional<double> entry_price; // token b per token a
    std::optional<long> entry_tick;
    double amount_a = 0.0;
    double amount_b = 0.0;
    std::optional<double> lower_price;
    std::optional<double> upper_price;
    std::optional<long> lower_tick;
    std::optional<long> upper_tick;
};

// Key-value text format, '#' comments, one key per line. Unknown, duplicate
// or missing keys raise ConfigError with the offending field name.
PositionConfig parse_position_config(const std::string& text);
PositionConfig load_position_config(const std::string& path);

// Canonical form; doubles carry 17 significant digits so a written config
// re-parses to an identical position.
std::string serialize_position_config(const PositionConfig& config);
void save_position_config(const PositionConfig& config, const std::string& path);

amm::TokenPair token_pair(const PositionConfig& config);

// Resolves ticks, validates amounts against the entry price and builds the
// position.
amm::Position make_position(const PositionConfig& config);

} // namespace lphedge::config
