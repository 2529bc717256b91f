#include "lphedge/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lphedge::hedge {

namespace {

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << content;
}

} // namespace

std::string format_curve(const PnlCurve& curve) {
    std::ostringstream out;
    out << "# lphedge curve v1\n";
    out << "# label: " << curve.label << "\n";
    out << "# normalizer: " << num12(curve.normalizer) << "\n";
    out << "# columns: price value\n";
    for (std::size_t i = 0; i < curve.prices.size(); ++i) {
        out << num12(curve.prices[i]) << " " << num12(curve.values[i]) << "\n";
    }
    return out.str();
}

void write_curve(const PnlCurve& curve, const std::string& path) {
    write_file(path, format_curve(curve));
}

PnlCurve read_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read curve file: " + path);
    }
    PnlCurve curve;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto label_pos = line.find("label: ");
            if (label_pos != std::string::npos) {
                curve.label = line.substr(label_pos + 7);
            }
            const auto norm_pos = line.find("normalizer: ");
            if (norm_pos != std::string::npos) {
                curve.normalizer = std::strtod(line.c_str() + norm_pos + 12, nullptr);
            }
            continue;
        }
        std::istringstream row(line);
        double price = 0.0;
        double value = 0.0;
        if (!(row >> price >> value)) {
            throw std::runtime_error("malformed curve row: " + line);
        }
        curve.prices.push_back(price);
        curve.values.push_back(value);
    }
    return curve;
}

std::string format_report(const HedgeResult& result, const HedgeProblem& problem,
                          const SolverConfig& config) {
    using ordered_json = nlohmann::ordered_json;
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["chain"] = {{"timestamp", problem.chain.timestamp},
                    {"underlying", problem.chain.underlying},
                    {"spot", problem.chain.spot},
                    {"quote_count", problem.chain.quotes.size()}};
    // The problem carries resolved prices, so the echo uses grid bounds.
    doc["grid"] = {{"min_price", problem.target.prices.front()},
                   {"max_price", problem.target.prices.back()},
                   {"count", problem.target.prices.size()}};
    doc["solver"] = {{"lambda", problem.lambda},
                     {"learning_rate", config.learning_rate},
                     {"epochs", config.epochs},
                     {"batch_size", config.batch_size},
                     {"seed", config.seed},
                     {"prune_threshold", config.prune_threshold}};
    doc["normalizer"] = problem.normalizer;

    ordered_json legs = ordered_json::array();
    for (const auto& leg : result.legs) {
        ordered_json entry;
        entry["contract"] = options::contract_id(leg.quote);
        entry["kind"] = options::to_string(leg.quote.kind);
        entry["strike"] = leg.quote.strike;
        entry["expiry"] = leg.quote.expiry;
        entry["theta"] = leg.theta;
        entry["premium_side"] = leg.theta > 0.0 ? "ask" : "bid";
        entry["premium"] = options::entry_premium(leg.quote, leg.theta);
        legs.push_back(std::move(entry));
    }
    doc["legs"] = std::move(legs);
    doc["residual"] = {{"max_abs", result.max_abs_residual},
                       {"rms", result.rms_residual},
                       {"nonzero_count", result.nonzero_count},
                       {"final_cost", result.final_cost}};

    // What the hedge would look like at whole-contract quantities. Reported
    // only; the solved legs above keep their fractional weights.
    const auto rounded = round_to_integer_contracts(result.legs);
    const auto rounded_stats = residual_stats(rounded, problem);
    ordered_json rounded_legs = ordered_json::array();
    for (const auto& leg : rounded) {
        rounded_legs.push_back({{"contract", options::contract_id(leg.quote)},
                                {"theta", leg.theta}});
    }
    doc["integer_rounding"] = {{"nonzero_count", rounded.size()},
                               {"max_abs", rounded_stats.max_abs},
                               {"rms", rounded_stats.rms},
                               {"legs", std::move(rounded_legs)}};
    return doc.dump(2) + "\n";
}

void write_report(const HedgeResult& result, const HedgeProblem& problem,
                  const SolverConfig& config, const std::string& path) {
    write_file(path, format_report(result, problem, config));
}

} // namespace lphedge::hedge
