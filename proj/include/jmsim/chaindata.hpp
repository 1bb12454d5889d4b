// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef JMSIM_CHAINDATA_HPP
#define JMSIM_CHAINDATA_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jmsim/u256.hpp"

namespace jmsim {

// Real-chain header ingestion and the jumping-mining signature detector:
// a region is attackable when relative difficulty is low and blocks arrive
// in a fast burst.

struct HeaderRow {
    int64_t height = 0;
    double timestamp = 0.0;  // unix seconds
    std::optional<double> difficulty;
    std::optional<uint32_t> compact_bits;  // exactly one of the two is set
};

enum class HeaderFormat { Csv, JsonLines };

struct HeaderParseError : std::runtime_error {
    HeaderParseError(size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    size_t line_number;
};

// Decodes the standard compact ("nBits") target encoding:
// target = mantissa * 256^(exponent - 3).
U256 target_from_compact(uint32_t bits);

// Parses a header export. CSV expects a header row `height,time,difficulty`
// or `height,time,bits` (bits in hex with 0x prefix); JSON-lines expects one
// object per line with the same keys. Rows are sorted by height; duplicate
// heights are rejected. Errors carry the offending line number.
std::vector<HeaderRow> parse_headers(std::istream& input, HeaderFormat format);

// Inverse of parse_headers; emitted output parses back to identical rows.
void emit_headers(std::ostream& out, std::span<const HeaderRow> rows, HeaderFormat format);

struct SolveTimeRow {
    int64_t height = 0;
    double solve_time_s = 0.0;
    bool negative = false;  // real-chain timestamp skew, preserved not clamped
};

// solve_time(h) = timestamp(h) - timestamp(previous row). Needs >= 2 rows.
std::vector<SolveTimeRow> solve_times(std::span<const HeaderRow> rows);

struct DetectorConfig {
    int window = 35;          // rolling-median span; burst mean uses window/7
    double low_frac = 0.95;   // relative-difficulty threshold, mirrors AttackIn
    double burst_frac = 0.5;  // local mean vs file-wide median solve time
};

struct AttackRegion {
    int64_t start_height = 0;
    int64_t end_height = 0;  // inclusive
    double mean_solve_time_s = 0.0;
    double mean_relative_difficulty = 0.0;
};

// Flags heights where difficulty / rolling-median difficulty < low_frac and
// the local mean solve time < burst_frac * the file-wide median solve time;
// adjacent flagged heights merge into one region. Both signals are relative,
// so the detector is invariant to rescaling difficulties or solve times.
// Negative solve times are kept in the series but excluded from medians.
std::vector<AttackRegion> detect_attack_regions(std::span<const HeaderRow> rows,
                                                const DetectorConfig& cfg);

}  // namespace jmsim

#endif  // JMSIM_CHAINDATA_HPP
