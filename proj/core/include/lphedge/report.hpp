#pragma once

#include <string>

#include "lphedge/hedger.hpp"

namespace lphedge::hedge {

// Two-column numeric text (price, pnl_fraction), 12 significant digits,
// locale independent; label and normalizer ride along as '#' header lines.
// Rewriting the same curve reproduces the file byte for byte.
std::string format_curve(const PnlCurve& curve);
void write_curve(const PnlCurve& curve, const std::string& path);
PnlCurve read_curve(const std::string& path);

// Structured JSON report for a solved hedge: legs with contract identifiers,
// premium side and value, residual statistics and a config echo.
std::string format_report(const HedgeResult& result, const HedgeProblem& problem,
                          const SolverConfig& config);
void write_report(const HedgeResult& result, const HedgeProblem& problem,
                  const SolverConfig& config, const std::string& path);

} // namespace lphedge::hedge
