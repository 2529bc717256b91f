#pragma once

#include <stdexcept>
#include <string>

namespace lphedge {

// Deposit or quote data that contradicts itself (amounts vs. price,
// two-sided liquidity estimates disagreeing, bid above ask).
class ConsistencyError : public std::runtime_error {
public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or invalid options-chain snapshot. Carries the index of the
// offending quote record, or -1 when the problem is not tied to a record.
class ChainError : public std::runtime_error {
public:
    explicit ChainError(const std::string& what, long record_index = -1)
        : std::runtime_error(what), record_index_(record_index) {}

    long record_index() const noexcept { return record_index_; }

private:
    long record_index_;
};

// Malformed position config file. Carries the offending field name so the
// CLI can point at it.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::string field = {})
        : std::runtime_error(what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace lphedge
