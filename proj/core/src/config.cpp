#include "lphedge/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "lphedge/errors.hpp"

namespace lphedge::config {

namespace {

const char* kKnownKeys[] = {"schema_version", "kind",        "symbol_a",
                            "symbol_b",       "decimals_a",  "decimals_b",
                            "entry_price",    "entry_tick",  "amount_a",
                            "amount_b",       "lower_price", "upper_price",
                            "lower_tick",     "upper_tick"};

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool known_key(const std::string& key) {
    for (const char* k : kKnownKeys) {
        if (key == k) {
            return true;
        }
    }
    return false;
}

double parse_double(const std::string& value, const std::string& field) {
    const char* begin = value.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (errno != 0 || end == begin || *end != '\0') {
        throw ConfigError("invalid number '" + value + "' for " + field, field);
    }
    return v;
}

long parse_long(const std::string& value, const std::string& field) {
    const char* begin = value.c_str();
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(begin, &end, 10);
    if (errno != 0 || end == begin || *end != '\0') {
        throw ConfigError("invalid integer '" + value + "' for " + field, field);
    }
    return v;
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

PositionConfig parse_position_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value', got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known_key(key)) {
            throw ConfigError("unknown config field '" + key + "'", key);
        }
        if (kv.count(key)) {
            throw ConfigError("duplicate config field '" + key + "'", key);
        }
        if (value.empty()) {
            throw ConfigError("empty value for '" + key + "'", key);
        }
        kv[key] = value;
    }

    const auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = kv.find(key);
        if (it == kv.end()) {
            return std::nullopt;
        }
        return it->second;
    };
    const auto require = [&](const char* key) -> std::string {
        auto v = take(key);
        if (!v) {
            throw ConfigError(std::string("missing config field '") + key + "'", key);
        }
        return *v;
    };

    PositionConfig cfg;
    cfg.schema_version = static_cast<int>(parse_long(require("schema_version"),
                                                     "schema_version"));
    if (cfg.schema_version != 1) {
        throw ConfigError("unsupported schema_version", "schema_version");
    }

    const std::string kind = require("kind");
    if (kind == "uniform") {
        cfg.kind = PositionKind::Uniform;
    } else if (kind == "concentrated") {
        cfg.kind = PositionKind::Concentrated;
    } else {
        throw ConfigError("kind must be 'uniform' or 'concentrated'", "kind");
    }

    cfg.symbol_a = require("symbol_a");
    cfg.symbol_b = require("symbol_b");
    cfg.decimals_a = static_cast<int>(parse_long(require("decimals_a"), "decimals_a"));
    cfg.decimals_b = static_cast<int>(parse_long(require("decimals_b"), "decimals_b"));

    if (auto v = take("entry_price")) {
        cfg.entry_price = parse_double(*v, "entry_price");
    }
    if (auto v = take("entry_tick")) {
        cfg.entry_tick = parse_long(*v, "entry_tick");
    }
    if (cfg.entry_price.has_value() == cfg.entry_tick.has_value()) {
        throw ConfigError("exactly one of entry_price or entry_tick is required",
                          "entry_price");
    }

    cfg.amount_a = parse_double(require("amount_a"), "amount_a");
    cfg.amount_b = parse_double(require("amount_b"), "amount_b");

    if (auto v = take("lower_price")) {
        cfg.lower_price = parse_double(*v, "lower_price");
    }
    if (auto v = take("upper_price")) {
        cfg.upper_price = parse_double(*v, "upper_price");
    }
    if (auto v = take("lower_tick")) {
        cfg.lower_tick = parse_long(*v, "lower_tick");
    }
    if (auto v = take("upper_tick")) {
        cfg.upper_tick = parse_long(*v, "upper_tick");
    }

    const bool has_price_range = cfg.lower_price || cfg.upper_price;
    const bool has_tick_range = cfg.lower_tick || cfg.upper_tick;
    if (cfg.kind == PositionKind::Uniform) {
        if (has_price_range || has_tick_range) {
            throw ConfigError("uniform positions take no price range", "lower_price");
        }
    } else {
        if (has_price_range == has_tick_range) {
            throw ConfigError(
                "concentrated positions need exactly one range form (prices or ticks)",
                "lower_price");
        }
        if (has_price_range && !(cfg.lower_price && cfg.upper_price)) {
            throw ConfigError("both lower_price and upper_price are required",
                              cfg.lower_price ? "upper_price" : "lower_price");
        }
        if (has_tick_range && !(cfg.lower_tick && cfg.upper_tick)) {
            throw ConfigError("both lower_tick and upper_tick are required",
                              cfg.lower_tick ? "upper_tick" : "lower_tick");
        }
    }
    return cfg;
}

PositionConfig load_position_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file: " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_position_config(buf.str());
}

std::string serialize_position_config(const PositionConfig& config) {
    std::ostringstream out;
    out << "# lphedge position config\n";
    out << "schema_version = " << config.schema_version << "\n";
    out << "kind = " << (config.kind == PositionKind::Uniform ? "uniform" : "concentrated")
        << "\n";
    out << "symbol_a = " << config.symbol_a << "\n";
    out << "symbol_b = " << config.symbol_b << "\n";
    out << "decimals_a = " << config.decimals_a << "\n";
    out << "decimals_b = " << config.decimals_b << "\n";
    if (config.entry_price) {
        out << "entry_price = " << num17(*config.entry_price) << " # token b per token a\n";
    } else {
        out << "entry_tick = " << *config.entry_tick << "\n";
    }
    out << "amount_a = " << num17(config.amount_a) << " # token a units\n";
    out << "amount_b = " << num17(config.amount_b) << " # token b units\n";
    if (config.lower_price) {
        out << "lower_price = " << num17(*config.lower_price) << " # token b per token a\n";
    }
    if (config.upper_price) {
        out << "upper_price = " << num17(*config.upper_price) << " # token b per token a\n";
    }
    if (config.lower_tick) {
        out << "lower_tick = " << *config.lower_tick << "\n";
    }
    if (config.upper_tick) {
        out << "upper_tick = " << *config.upper_tick << "\n";
    }
    return out.str();
}

void save_position_config(const PositionConfig& config, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write config file: " + path);
    }
    out << serialize_position_config(config);
}

amm::TokenPair token_pair(const PositionConfig& config) {
    return amm::make_token_pair(config.symbol_a, config.symbol_b, config.decimals_a,
                                config.decimals_b);
}

amm::Position make_position(const PositionConfig& config) {
    const amm::TokenPair pair = token_pair(config);
    const amm::Price entry =
        config.entry_price
            ? amm::Price(*config.entry_price)
            : amm::tick_to_price(*config.entry_tick, pair.decimals_a, pair.decimals_b);

    if (config.kind == PositionKind::Uniform) {
        return amm::UniformPosition::from_deposit(entry, config.amount_a, config.amount_b);
    }

    const amm::Price lower =
        config.lower_price
            ? amm::Price(*config.lower_price)
            : amm::tick_to_price(*config.lower_tick, pair.decimals_a, pair.decimals_b);
    const amm::Price upper =
        config.upper_price
            ? amm::Price(*config.upper_price)
            : amm::tick_to_price(*config.upper_tick, pair.decimals_a, pair.decimals_b);
    return amm::ConcentratedPosition::from_deposit(entry, lower, upper, config.amount_a,
                                                   config.amount_b);
}

} // namespace lphedge::config
