// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace jmsim {

std::string format_compact_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_series_csv(std::ostream& out, const ChainState& chain) {
    out << "height,difficulty,solve_time,total_hashrate,attacker_active,winner\n";
    for (const BlockRecord& r : chain.records) {
        out << r.height << ',' << format_compact_double(r.difficulty) << ','
            << format_compact_double(r.solve_time_s) << ','
            << format_compact_double(r.total_hashrate) << ',' << (r.attacker_active ? 1 : 0)
            << ',' << r.winner << '\n';
    }
}

nlohmann::json summary_to_json(const RunSummary& summary, std::span<const std::string> labels) {
    nlohmann::json doc;
    doc["num_blocks"] = summary.num_blocks;
    doc["total_time_s"] = summary.total_time_s;
    nlohmann::json classes = nlohmann::json::array();
    for (size_t i = 0; i < summary.classes.size(); ++i) {
        const ClassSummary& cls = summary.classes[i];
        nlohmann::json entry;
        entry["class"] = i < labels.size() ? labels[i] : std::to_string(cls.id);
        entry["id"] = cls.id;
        entry["blocks_won"] = cls.blocks_won;
        entry["active_time_s"] = cls.active_time_s;
        entry["relative_hashrate"] = cls.relative_hashrate;
        if (cls.avg_block_time_s) {
            entry["avg_block_time_s"] = *cls.avg_block_time_s;
        } else {
            entry["avg_block_time_s"] = nullptr;
        }
        entry["efficiency"] = cls.efficiency;
        classes.push_back(entry);
    }
    doc["classes"] = classes;
    nlohmann::json episodes = nlohmann::json::array();
    for (const AttackEpisode& e : summary.attack_episodes) {
        episodes.push_back({{"start_height", e.start_height},
                            {"end_height", e.end_height},
                            {"mean_difficulty", e.mean_difficulty}});
    }
    doc["attack_episodes"] = episodes;
    return doc;
}

void write_plot_difficulty(std::ostream& out, const ChainState& chain) {
    for (const BlockRecord& r : chain.records) {
        out << r.height << ' ' << format_compact_double(r.difficulty) << '\n';
    }
}

void write_plot_hashrate(std::ostream& out, const ChainState& chain) {
    for (const BlockRecord& r : chain.records) {
        out << r.height << ' ' << format_compact_double(r.total_hashrate) << '\n';
    }
}

void write_plot_attack(std::ostream& out, const ChainState& chain) {
    for (const BlockRecord& r : chain.records) {
        out << r.height << ' ' << (r.attacker_active ? 1 : 0) << '\n';
    }
}

std::vector<HeaderRow> chain_to_headers(const ChainState& chain) {
    std::vector<HeaderRow> rows;
    rows.reserve(chain.records.size());
    double clock = 0.0;
    for (const BlockRecord& r : chain.records) {
        clock += r.solve_time_s;
        HeaderRow row;
        row.height = r.height;
        row.timestamp = clock;
        row.difficulty = r.difficulty;
        rows.push_back(row);
    }
    return rows;
}

void write_svg_chart(std::ostream& out, const ChainState& chain) {
    const int width = 960, height = 360, pad = 40;
    double max_d = 0.0;
    for (const BlockRecord& r : chain.records) max_d = std::max(max_d, r.difficulty);
    if (max_d <= 0.0) max_d = 1.0;
    const double n = static_cast<double>(std::max<size_t>(chain.records.size(), 2) - 1);
    auto x_of = [&](size_t i) { return pad + (width - 2 * pad) * (static_cast<double>(i) / n); };
    auto y_of = [&](double d) { return height - pad - (height - 2 * pad) * (d / max_d); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // attack spans
    size_t i = 0;
    while (i < chain.records.size()) {
        if (!chain.records[i].attacker_active) {
            ++i;
            continue;
        }
        size_t start = i;
        while (i + 1 < chain.records.size() && chain.records[i + 1].attacker_active) ++i;
        out << "<rect x=\"" << x_of(start) << "\" y=\"" << pad << "\" width=\""
            << std::max(1.0, x_of(i) - x_of(start)) << "\" height=\"" << height - 2 * pad
            << "\" fill=\"#ffd8a8\"/>\n";
        ++i;
    }
    out << "<polyline fill=\"none\" stroke=\"#1c7ed6\" stroke-width=\"1\" points=\"";
    for (size_t k = 0; k < chain.records.size(); ++k) {
        out << x_of(k) << ',' << y_of(chain.records[k].difficulty) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << pad << "\" y=\"" << pad - 10
        << "\" font-family=\"monospace\" font-size=\"12\">difficulty (Lz units) vs height; shaded = attacker active</text>\n";
    out << "</svg>\n";
}

void write_solve_times_csv(std::ostream& out, std::span<const SolveTimeRow> rows) {
    out << "height,solve_time,negative\n";
    for (const SolveTimeRow& r : rows) {
        out << r.height << ',' << format_compact_double(r.solve_time_s) << ','
            << (r.negative ? 1 : 0) << '\n';
    }
}

void write_regions_csv(std::ostream& out, std::span<const AttackRegion> regions) {
    out << "start_height,end_height,mean_solve_time,mean_relative_difficulty\n";
    for (const AttackRegion& r : regions) {
        out << r.start_height << ',' << r.end_height << ','
            << format_compact_double(r.mean_solve_time_s) << ','
            << format_compact_double(r.mean_relative_difficulty) << '\n';
    }
}

}  // namespace jmsim
