// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "jmsim/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "jmsim/sampler.hpp"

namespace jmsim {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double to_double(const std::string& key, const std::string& s) {
    try {
        size_t consumed = 0;
        double v = std::stod(s, &consumed);
        if (consumed != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': bad number '" + s + "'");
    }
}

int64_t to_i64(const std::string& key, const std::string& s) {
    try {
        size_t consumed = 0;
        int64_t v = std::stoll(s, &consumed);
        if (consumed != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("field '" + key + "': bad integer '" + s + "'");
    }
}

DaaAlgorithm parse_algorithm(const std::string& s) {
    if (s == "bitcoin_epoch") return DaaAlgorithm::BitcoinEpoch;
    if (s == "bch_144") return DaaAlgorithm::Bch144;
    if (s == "digishield_17") return DaaAlgorithm::DigiShield17;
    if (s == "btg_weighted") return DaaAlgorithm::BtgWeighted;
    if (s == "improved") return DaaAlgorithm::ImprovedAntiAttack;
    throw ConfigError("field 'daa': unknown algorithm '" + s + "'");
}

std::vector<uint64_t> parse_seeds(const std::string& value) {
    std::vector<uint64_t> seeds;
    for (const std::string& tok : split_ws(value)) {
        size_t dots = tok.find("..");
        if (dots != std::string::npos) {
            auto lo = static_cast<uint64_t>(to_i64("seeds", tok.substr(0, dots)));
            auto hi = static_cast<uint64_t>(to_i64("seeds", tok.substr(dots + 2)));
            if (hi < lo) throw ConfigError("field 'seeds': empty range '" + tok + "'");
            for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
        } else {
            seeds.push_back(static_cast<uint64_t>(to_i64("seeds", tok)));
        }
    }
    if (seeds.empty()) throw ConfigError("field 'seeds': no seeds given");
    return seeds;
}

struct RawScenario {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;  // file order
};

Scenario build_scenario(const RawScenario& raw) {
    Scenario scenario;
    scenario.name = raw.name;

    std::map<std::string, std::string> keys;
    std::vector<std::pair<std::string, std::string>> miners;
    for (const auto& [key, value] : raw.entries) {
        if (key.rfind("miner.", 0) == 0) {
            miners.emplace_back(key.substr(6), value);
            continue;
        }
        if (!keys.emplace(key, value).second) {
            throw ConfigError("scenario '" + raw.name + "': duplicate field '" + key + "'");
        }
    }

    auto take = [&keys](const std::string& key) -> std::optional<std::string> {
        auto it = keys.find(key);
        if (it == keys.end()) return std::nullopt;
        std::string v = it->second;
        keys.erase(it);
        return v;
    };

    DaaAlgorithm algorithm = DaaAlgorithm::BtgWeighted;
    if (auto v = take("daa")) algorithm = parse_algorithm(*v);
    DaaConfig daa = DaaConfig::defaults_for(algorithm);
    if (auto v = take("target_block_time_s")) daa.target_block_time_s = to_double("target_block_time_s", *v);
    if (auto v = take("window")) daa.window = static_cast<int>(to_i64("window", *v));
    if (auto v = take("adjust")) daa.adjust = to_double("adjust", *v);
    if (auto v = take("min_difficulty")) daa.pow_limit = pow_limit_from_min_difficulty(to_double("min_difficulty", *v));
    if (auto v = take("digishield_damp")) daa.digishield_damp = to_double("digishield_damp", *v);
    if (auto v = take("digishield_timespan_min_frac")) daa.digishield_timespan_min_frac = to_double("digishield_timespan_min_frac", *v);
    if (auto v = take("digishield_timespan_max_frac")) daa.digishield_timespan_max_frac = to_double("digishield_timespan_max_frac", *v);
    if (auto v = take("bitcoin_clamp_lo")) daa.bitcoin_clamp_lo = to_double("bitcoin_clamp_lo", *v);
    if (auto v = take("bitcoin_clamp_hi")) daa.bitcoin_clamp_hi = to_double("bitcoin_clamp_hi", *v);
    if (auto v = take("bch_clamp_lo")) daa.bch_clamp_lo = to_double("bch_clamp_lo", *v);
    if (auto v = take("bch_clamp_hi")) daa.bch_clamp_hi = to_double("bch_clamp_hi", *v);
    if (auto v = take("surge5_span")) daa.surge5_span = to_double("surge5_span", *v);
    if (auto v = take("surge10_fast_span")) daa.surge10_fast_span = to_double("surge10_fast_span", *v);
    if (auto v = take("surge10_slow_span")) daa.surge10_slow_span = to_double("surge10_slow_span", *v);

    scenario.sim.daa = daa;
    if (auto v = take("num_blocks")) scenario.sim.num_blocks = to_i64("num_blocks", *v);
    if (auto v = take("genesis_difficulty")) scenario.sim.genesis_difficulty = to_double("genesis_difficulty", *v);

    scenario.seeds = {1};
    if (auto v = take("seeds")) scenario.seeds = parse_seeds(*v);
    scenario.sim.seed = scenario.seeds.front();

    if (!keys.empty()) {
        throw ConfigError("scenario '" + raw.name + "': unknown field '" + keys.begin()->first + "'");
    }
    if (miners.empty()) {
        throw ConfigError("scenario '" + raw.name + "': no miners (need at least one miner.<label> entry)");
    }

    double worker_unit = scenario.sim.genesis_difficulty * kLz / daa.target_block_time_s;
    int id = 0;
    for (const auto& [label, value] : miners) {
        scenario.sim.miners.push_back(parse_miner(value, id++, worker_unit));
        scenario.miner_labels.push_back(label);
    }
    return scenario;
}

}  // namespace

MinerSpec parse_miner(const std::string& value, int id, double worker_hashrate_hs) {
    auto tokens = split_ws(value);
    if (tokens.empty()) throw ConfigError("field 'miner': empty strategy");
    MinerSpec spec;
    spec.id = id;
    const std::string& kind = tokens[0];
    auto expect = [&](size_t n) {
        if (tokens.size() != n) {
            throw ConfigError("field 'miner': '" + kind + "' takes " + std::to_string(n - 1) +
                              " arguments, got " + std::to_string(tokens.size() - 1));
        }
    };
    if (kind == "always_on") {
        expect(2);
        spec.hashrate = to_double("miner", tokens[1]) * worker_hashrate_hs;
        spec.strategy = AlwaysOn{};
    } else if (kind == "threshold_jumper") {
        expect(5);
        spec.hashrate = to_double("miner", tokens[1]) * worker_hashrate_hs;
        spec.strategy = ThresholdJumper{to_double("miner", tokens[2]), to_double("miner", tokens[3]),
                                        to_double("miner", tokens[4])};
    } else if (kind == "epoch_jumper") {
        expect(3);
        spec.hashrate = to_double("miner", tokens[1]) * worker_hashrate_hs;
        spec.strategy = EpochJumper{to_i64("miner", tokens[2])};
    } else {
        throw ConfigError("field 'miner': unknown strategy '" + kind + "'");
    }
    return spec;
}

RunManifest parse_manifest(std::istream& input) {
    RunManifest manifest;
    std::vector<RawScenario> raw;
    std::string line;
    size_t line_number = 0;
    while (std::getline(input, line)) {
        ++line_number;
        std::string text = trim(line);
        if (size_t hash = text.find('#'); hash != std::string::npos) text = trim(text.substr(0, hash));
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ConfigError("line " + std::to_string(line_number) + ": unterminated section");
            std::string name = trim(text.substr(1, text.size() - 2));
            if (name.empty()) throw ConfigError("line " + std::to_string(line_number) + ": empty scenario name");
            raw.push_back(RawScenario{name, {}});
            continue;
        }
        size_t eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
        if (raw.empty()) throw ConfigError("line " + std::to_string(line_number) + ": key outside a [scenario] section");
        raw.back().entries.emplace_back(trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
    }

    if (raw.empty()) throw ConfigError("no scenarios in config");
    for (const RawScenario& r : raw) {
        for (const Scenario& existing : manifest.scenarios) {
            if (existing.name == r.name) throw ConfigError("duplicate scenario name '" + r.name + "'");
        }
        manifest.scenarios.push_back(build_scenario(r));
    }
    return manifest;
}

RunManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config file: " + path);
    return parse_manifest(in);
}

}  // namespace jmsim
