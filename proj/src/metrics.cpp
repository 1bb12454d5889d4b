// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/metrics.hpp"

#include <stdexcept>

#include "jmsim/engine.hpp"

namespace jmsim {

RunSummary summarize(const ChainState& chain, std::span<const MinerSpec> miners) {
    if (chain.records.empty()) throw std::invalid_argument("summarize: empty chain");

    const double worker = worker_hashrate(miners);
    if (!(worker > 0.0)) throw std::invalid_argument("summarize: no always-on hashrate");

    RunSummary summary;
    summary.num_blocks = static_cast<int64_t>(chain.records.size());

    std::vector<ParticipationState> states;
    states.reserve(miners.size());
    for (const MinerSpec& m : miners) states.push_back(initial_participation(m));

    std::vector<int64_t> blocks_won(miners.size(), 0);
    std::vector<double> active_time(miners.size(), 0.0);

    for (const BlockRecord& record : chain.records) {
        if (record.height > 0) {
            double prev_difficulty = chain.records[static_cast<size_t>(record.height) - 1].difficulty;
            for (size_t i = 0; i < miners.size(); ++i) {
                states[i] = decide_participation(miners[i], states[i], record.height, prev_difficulty);
            }
        }
        summary.total_time_s += record.solve_time_s;
        for (size_t i = 0; i < miners.size(); ++i) {
            if (states[i].active) active_time[i] += record.solve_time_s;
            if (miners[i].id == record.winner) ++blocks_won[i];
        }
    }

    for (size_t i = 0; i < miners.size(); ++i) {
        ClassSummary cls;
        cls.id = miners[i].id;
        cls.blocks_won = blocks_won[i];
        cls.active_time_s = active_time[i];
        cls.relative_hashrate = miners[i].hashrate / worker;
        if (blocks_won[i] > 0) {
            cls.avg_block_time_s = active_time[i] / static_cast<double>(blocks_won[i]);
            cls.efficiency = 1.0 / (*cls.avg_block_time_s * cls.relative_hashrate);
        }
        summary.classes.push_back(cls);
    }

    // Attack episodes: maximal runs of attacker-active blocks.
    std::optional<AttackEpisode> open;
    double episode_difficulty_sum = 0.0;
    int64_t episode_len = 0;
    for (const BlockRecord& record : chain.records) {
        if (record.attacker_active) {
            if (!open) {
                open = AttackEpisode{record.height, record.height, 0.0};
                episode_difficulty_sum = 0.0;
                episode_len = 0;
            }
            open->end_height = record.height;
            episode_difficulty_sum += record.difficulty;
            ++episode_len;
        } else if (open) {
            open->mean_difficulty = episode_difficulty_sum / static_cast<double>(episode_len);
            summary.attack_episodes.push_back(*open);
            open.reset();
        }
    }
    if (open) {
        open->mean_difficulty = episode_difficulty_sum / static_cast<double>(episode_len);
        summary.attack_episodes.push_back(*open);
    }

    return summary;
}

std::vector<SeriesRow> difficulty_series(const ChainState& chain) {
    std::vector<SeriesRow> rows;
    rows.reserve(chain.records.size());
    for (const BlockRecord& record : chain.records) {
        rows.push_back(SeriesRow{record.height, record.difficulty, record.total_hashrate,
                                 record.attacker_active});
    }
    return rows;
}

}  // namespace jmsim
