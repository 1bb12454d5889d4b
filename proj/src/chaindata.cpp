// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/chaindata.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "jmsim/difficulty.hpp"

namespace jmsim {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(start)));
            break;
        }
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

int64_t parse_i64(const std::string& s, size_t line) {
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw HeaderParseError(line, "bad integer '" + s + "'");
    }
    return v;
}

double parse_f64(const std::string& s, size_t line) {
    try {
        size_t consumed = 0;
        double v = std::stod(s, &consumed);
        if (consumed != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw HeaderParseError(line, "bad number '" + s + "'");
    }
}

uint32_t parse_bits(const std::string& s, size_t line) {
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
        throw HeaderParseError(line, "bits must be hex with 0x prefix, got '" + s + "'");
    }
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data() + 2, s.data() + s.size(), v, 16);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw HeaderParseError(line, "bad bits '" + s + "'");
    }
    return v;
}

void sort_and_check(std::vector<HeaderRow>& rows, std::vector<size_t>& lines) {
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&rows](size_t a, size_t b) { return rows[a].height < rows[b].height; });
    std::vector<HeaderRow> sorted;
    std::vector<size_t> sorted_lines;
    sorted.reserve(rows.size());
    for (size_t idx : order) {
        sorted.push_back(rows[idx]);
        sorted_lines.push_back(lines[idx]);
    }
    for (size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].height == sorted[i - 1].height) {
            throw HeaderParseError(std::max(sorted_lines[i], sorted_lines[i - 1]),
                                   "duplicate height " + std::to_string(sorted[i].height));
        }
    }
    rows = std::move(sorted);
}

std::vector<HeaderRow> parse_csv(std::istream& input) {
    std::string line;
    size_t line_number = 0;
    if (!std::getline(input, line)) throw HeaderParseError(1, "missing header row");
    ++line_number;
    auto header = split_csv(line);
    bool has_difficulty;
    if (header == std::vector<std::string>{"height", "time", "difficulty"}) {
        has_difficulty = true;
    } else if (header == std::vector<std::string>{"height", "time", "bits"}) {
        has_difficulty = false;
    } else {
        throw HeaderParseError(1, "header must be 'height,time,difficulty' or 'height,time,bits'");
    }

    std::vector<HeaderRow> rows;
    std::vector<size_t> lines;
    while (std::getline(input, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 3) throw HeaderParseError(line_number, "expected 3 columns");
        HeaderRow row;
        row.height = parse_i64(fields[0], line_number);
        row.timestamp = parse_f64(fields[1], line_number);
        if (has_difficulty) {
            row.difficulty = parse_f64(fields[2], line_number);
        } else {
            row.compact_bits = parse_bits(fields[2], line_number);
        }
        rows.push_back(row);
        lines.push_back(line_number);
    }
    sort_and_check(rows, lines);
    return rows;
}

std::vector<HeaderRow> parse_json_lines(std::istream& input) {
    std::vector<HeaderRow> rows;
    std::vector<size_t> lines;
    std::string line;
    size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw HeaderParseError(line_number, e.what());
        }
        if (!obj.is_object() || !obj.contains("height") || !obj.contains("time")) {
            throw HeaderParseError(line_number, "object with height and time required");
        }
        HeaderRow row;
        try {
            row.height = obj.at("height").get<int64_t>();
            row.timestamp = obj.at("time").get<double>();
            if (obj.contains("difficulty")) {
                row.difficulty = obj.at("difficulty").get<double>();
            } else if (obj.contains("bits")) {
                row.compact_bits = parse_bits(obj.at("bits").get<std::string>(), line_number);
            } else {
                throw HeaderParseError(line_number, "difficulty or bits required");
            }
        } catch (const nlohmann::json::exception& e) {
            throw HeaderParseError(line_number, e.what());
        }
        rows.push_back(row);
        lines.push_back(line_number);
    }
    sort_and_check(rows, lines);
    return rows;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median_of(std::vector<double> values) {
    size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<ptrdiff_t>(mid), values.end());
    double hi = values[mid];
    if (values.size() % 2 == 1) return hi;
    double lo = *std::max_element(values.begin(), values.begin() + static_cast<ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

}  // namespace

U256 target_from_compact(uint32_t bits) {
    uint32_t exponent = bits >> 24;
    uint32_t mantissa = bits & 0x007fffff;
    if (bits & 0x00800000) throw std::domain_error("target_from_compact: negative target");
    if (mantissa == 0) throw std::domain_error("target_from_compact: zero target");
    if (exponent <= 3) {
        return U256(mantissa >> (8 * (3 - exponent)));
    }
    unsigned shift = 8 * (exponent - 3);
    if (shift + 24 > 256) throw std::domain_error("target_from_compact: overflow");
    return U256(mantissa) << shift;
}

std::vector<HeaderRow> parse_headers(std::istream& input, HeaderFormat format) {
    return format == HeaderFormat::Csv ? parse_csv(input) : parse_json_lines(input);
}

void emit_headers(std::ostream& out, std::span<const HeaderRow> rows, HeaderFormat format) {
    if (format == HeaderFormat::Csv) {
        bool has_difficulty = rows.empty() || rows.front().difficulty.has_value();
        out << (has_difficulty ? "height,time,difficulty\n" : "height,time,bits\n");
        char bits_buf[16];
        for (const HeaderRow& row : rows) {
            out << row.height << ',' << format_double(row.timestamp) << ',';
            if (row.difficulty) {
                out << format_double(*row.difficulty);
            } else {
                std::snprintf(bits_buf, sizeof(bits_buf), "0x%08x", *row.compact_bits);
                out << bits_buf;
            }
            out << '\n';
        }
        return;
    }
    char bits_buf[16];
    for (const HeaderRow& row : rows) {
        nlohmann::json obj;
        obj["height"] = row.height;
        obj["time"] = row.timestamp;
        if (row.difficulty) {
            obj["difficulty"] = *row.difficulty;
        } else {
            std::snprintf(bits_buf, sizeof(bits_buf), "0x%08x", *row.compact_bits);
            obj["bits"] = bits_buf;
        }
        out << obj.dump() << '\n';
    }
}

std::vector<SolveTimeRow> solve_times(std::span<const HeaderRow> rows) {
    if (rows.size() < 2) throw std::invalid_argument("solve_times: need at least 2 rows");
    std::vector<SolveTimeRow> out;
    out.reserve(rows.size() - 1);
    for (size_t i = 1; i < rows.size(); ++i) {
        double st = rows[i].timestamp - rows[i - 1].timestamp;
        out.push_back(SolveTimeRow{rows[i].height, st, st < 0.0});
    }
    return out;
}

std::vector<AttackRegion> detect_attack_regions(std::span<const HeaderRow> rows,
                                                const DetectorConfig& cfg) {
    if (cfg.window < 3) throw std::invalid_argument("detect_attack_regions: window must be >= 3");
    if (!(cfg.low_frac > 0.0 && cfg.low_frac < 1.0)) {
        throw std::invalid_argument("detect_attack_regions: low_frac outside (0,1)");
    }
    if (!(cfg.burst_frac > 0.0 && cfg.burst_frac < 1.0)) {
        throw std::invalid_argument("detect_attack_regions: burst_frac outside (0,1)");
    }
    if (rows.size() < 2) return {};

    const size_t n = rows.size();
    std::vector<double> difficulty(n);
    for (size_t i = 0; i < n; ++i) {
        difficulty[i] = rows[i].difficulty
                            ? *rows[i].difficulty
                            : absolute_difficulty_from_target(target_from_compact(*rows[i].compact_bits));
    }

    // Solve time of row i is timestamp[i] - timestamp[i-1]; row 0 has none.
    std::vector<double> st(n, 0.0);
    std::vector<double> positive_st;
    for (size_t i = 1; i < n; ++i) {
        st[i] = rows[i].timestamp - rows[i - 1].timestamp;
        if (st[i] >= 0.0) positive_st.push_back(st[i]);
    }
    if (positive_st.empty()) return {};
    const double file_median_st = median_of(positive_st);
    if (!(file_median_st > 0.0)) return {};

    // The difficulty median smooths over the full window; the burst signal
    // averages solve times over a much shorter span so a dozen fast blocks
    // are not washed out by their slow neighbours.
    const size_t half = static_cast<size_t>(cfg.window) / 2;
    const size_t burst_half = std::max<size_t>(1, static_cast<size_t>(cfg.window) / 14);
    std::vector<bool> flagged(n, false);
    std::vector<double> rel(n, 1.0);
    for (size_t i = 0; i < n; ++i) {
        size_t lo = i >= half ? i - half : 0;
        size_t hi = std::min(n - 1, i + half);
        double med = median_of({difficulty.begin() + static_cast<ptrdiff_t>(lo),
                                difficulty.begin() + static_cast<ptrdiff_t>(hi) + 1});
        if (!(med > 0.0)) continue;
        rel[i] = difficulty[i] / med;

        size_t blo = std::max<size_t>(i >= burst_half ? i - burst_half : 0, 1);
        size_t bhi = std::min(n - 1, i + burst_half);
        double st_sum = 0.0;
        size_t st_count = 0;
        for (size_t j = blo; j <= bhi; ++j) {
            st_sum += st[j];
            ++st_count;
        }
        if (st_count == 0) continue;
        double local_mean = st_sum / static_cast<double>(st_count);

        flagged[i] = rel[i] < cfg.low_frac && local_mean < cfg.burst_frac * file_median_st;
    }

    std::vector<AttackRegion> regions;
    size_t i = 0;
    while (i < n) {
        if (!flagged[i]) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i + 1 < n && flagged[i + 1]) ++i;
        AttackRegion region;
        region.start_height = rows[start].height;
        region.end_height = rows[i].height;
        double st_sum = 0.0;
        size_t st_count = 0;
        double rel_sum = 0.0;
        for (size_t j = start; j <= i; ++j) {
            rel_sum += rel[j];
            if (j >= 1) {
                st_sum += st[j];
                ++st_count;
            }
        }
        region.mean_relative_difficulty = rel_sum / static_cast<double>(i - start + 1);
        region.mean_solve_time_s = st_count > 0 ? st_sum / static_cast<double>(st_count) : 0.0;
        regions.push_back(region);
        ++i;
    }
    return regions;
}

}  // namespace jmsim
