// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_REPORT_HPP
#define JMSIM_REPORT_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "jmsim/chaindata.hpp"
#include "jmsim/engine.hpp"
#include "jmsim/metrics.hpp"

namespace jmsim {

// CLI output writers. Everything here is deterministic: repeated runs with
// the same config and seed produce byte-identical files.

// height,difficulty,solve_time,total_hashrate,attacker_active,winner
void write_series_csv(std::ostream& out, const ChainState& chain);

nlohmann::json summary_to_json(const RunSummary& summary, std::span<const std::string> labels);

// Two-column plot data, one file per curve: height vs difficulty, height vs
// total hashrate, and height vs the attack flag.
void write_plot_difficulty(std::ostream& out, const ChainState& chain);
void write_plot_hashrate(std::ostream& out, const ChainState& chain);
void write_plot_attack(std::ostream& out, const ChainState& chain);

// Synthetic header export (cumulative-time timestamps) so a simulated chain
// can be fed back through the analyzer.
std::vector<HeaderRow> chain_to_headers(const ChainState& chain);

// Minimal SVG line chart: difficulty over height with attack spans shaded.
void write_svg_chart(std::ostream& out, const ChainState& chain);

// solve-time and region CSVs for the analyzer.
void write_solve_times_csv(std::ostream& out, std::span<const SolveTimeRow> rows);
void write_regions_csv(std::ostream& out, std::span<const AttackRegion> regions);

std::string format_compact_double(double v);  // %.17g, round-trip exact

}  // namespace jmsim

#endif  // JMSIM_REPORT_HPP
