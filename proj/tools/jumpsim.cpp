// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "jmsim/chaindata.hpp"
#include "jmsim/config.hpp"
#include "jmsim/engine.hpp"
#include "jmsim/metrics.hpp"
#include "jmsim/report.hpp"

namespace fs = std::filesystem;
using namespace jmsim;

namespace {

// Exit codes are part of the CLI contract: 0 success, 2 usage/config, 3 I/O.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + path.string());
    return out;
}

const Scenario& pick_scenario(const RunManifest& manifest, const std::string& requested) {
    if (!requested.empty()) {
        for (const Scenario& s : manifest.scenarios) {
            if (s.name == requested) return s;
        }
        throw ConfigError("no scenario named '" + requested + "' in config");
    }
    if (manifest.scenarios.size() != 1) {
        throw ConfigError("config has " + std::to_string(manifest.scenarios.size()) +
                          " scenarios; pick one with --scenario");
    }
    return manifest.scenarios.front();
}

struct SimulateOptions {
    std::string config_path;
    std::string out_dir;
    std::string scenario;
    std::optional<uint64_t> seed;
    std::optional<int64_t> num_blocks;
    bool emit_headers = false;
    bool svg = false;
};

int cmd_simulate(const SimulateOptions& opt) {
    RunManifest manifest = load_manifest(opt.config_path);
    Scenario scenario = pick_scenario(manifest, opt.scenario);
    if (opt.seed) scenario.sim.seed = *opt.seed;
    if (opt.num_blocks) scenario.sim.num_blocks = *opt.num_blocks;

    ChainState chain = run(scenario.sim);
    RunSummary summary = summarize(chain, scenario.sim.miners);

    fs::create_directories(opt.out_dir);
    std::string base = scenario.name + "_seed" + std::to_string(scenario.sim.seed);
    fs::path dir(opt.out_dir);

    {
        auto out = open_out(dir / (base + "_series.csv"));
        write_series_csv(out, chain);
    }
    {
        auto out = open_out(dir / (base + "_summary.json"));
        out << summary_to_json(summary, scenario.miner_labels).dump(2) << '\n';
    }
    {
        auto out = open_out(dir / (base + "_difficulty.dat"));
        write_plot_difficulty(out, chain);
    }
    {
        auto out = open_out(dir / (base + "_hashrate.dat"));
        write_plot_hashrate(out, chain);
    }
    {
        auto out = open_out(dir / (base + "_attack.dat"));
        write_plot_attack(out, chain);
    }
    if (opt.emit_headers) {
        auto out = open_out(dir / (base + "_headers.csv"));
        emit_headers(out, chain_to_headers(chain), HeaderFormat::Csv);
    }
    if (opt.svg) {
        auto out = open_out(dir / (base + "_chart.svg"));
        write_svg_chart(out, chain);
    }
    std::cout << base << ": " << chain.records.size() << " blocks, "
              << summary.attack_episodes.size() << " attack episodes\n";
    return kExitOk;
}

struct SweepOptions {
    std::string manifest_path;
    std::string out_dir;
    unsigned jobs = 0;
};

struct SweepRun {
    const Scenario* scenario;
    uint64_t seed;
    RunSummary summary;
};

int cmd_sweep(const SweepOptions& opt) {
    RunManifest manifest = load_manifest(opt.manifest_path);
    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);

    std::vector<SweepRun> runs;
    for (const Scenario& scenario : manifest.scenarios) {
        for (uint64_t seed : scenario.seeds) {
            runs.push_back(SweepRun{&scenario, seed, {}});
        }
    }

    unsigned jobs = opt.jobs != 0 ? opt.jobs : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(runs.size())));

    std::atomic<size_t> cursor{0};
    std::mutex failure_mutex;
    std::optional<std::string> failed_run;
    std::exception_ptr failure;

    auto worker = [&] {
        while (true) {
            size_t i = cursor.fetch_add(1);
            if (i >= runs.size()) return;
            SweepRun& job = runs[i];
            try {
                SimConfig sim = job.scenario->sim;
                sim.seed = job.seed;
                ChainState chain = run(sim);
                job.summary = summarize(chain, sim.miners);
                auto out = open_out(dir / (job.scenario->name + "_seed" + std::to_string(job.seed) +
                                           "_summary.json"));
                out << summary_to_json(job.summary, job.scenario->miner_labels).dump(2) << '\n';
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                    failed_run = job.scenario->name + " seed " + std::to_string(job.seed);
                }
                cursor.store(runs.size());
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    if (failure) {
        std::cerr << "sweep: run '" << *failed_run << "' failed\n";
        std::rethrow_exception(failure);
    }

    {
        auto out = open_out(dir / "sweep_results.csv");
        out << "scenario,seed,class,blocks_won,avg_block_time,efficiency\n";
        for (const SweepRun& job : runs) {
            for (size_t i = 0; i < job.summary.classes.size(); ++i) {
                const ClassSummary& cls = job.summary.classes[i];
                out << job.scenario->name << ',' << job.seed << ','
                    << job.scenario->miner_labels[i] << ',' << cls.blocks_won << ','
                    << (cls.avg_block_time_s ? format_compact_double(*cls.avg_block_time_s) : "")
                    << ',' << format_compact_double(cls.efficiency) << '\n';
            }
        }
    }
    {
        auto out = open_out(dir / "sweep_rollup.csv");
        out << "scenario,class,runs,mean_avg_block_time,stddev_avg_block_time,mean_efficiency,"
               "stddev_efficiency\n";
        for (const Scenario& scenario : manifest.scenarios) {
            for (size_t i = 0; i < scenario.miner_labels.size(); ++i) {
                double sum_t = 0.0, sum_t2 = 0.0, sum_e = 0.0, sum_e2 = 0.0;
                size_t n = 0;
                for (const SweepRun& job : runs) {
                    if (job.scenario != &scenario) continue;
                    const ClassSummary& cls = job.summary.classes[i];
                    double t = cls.avg_block_time_s.value_or(0.0);
                    sum_t += t;
                    sum_t2 += t * t;
                    sum_e += cls.efficiency;
                    sum_e2 += cls.efficiency * cls.efficiency;
                    ++n;
                }
                double dn = static_cast<double>(n);
                double mean_t = sum_t / dn;
                double mean_e = sum_e / dn;
                double var_t = n > 1 ? std::max(0.0, (sum_t2 - dn * mean_t * mean_t) / (dn - 1.0)) : 0.0;
                double var_e = n > 1 ? std::max(0.0, (sum_e2 - dn * mean_e * mean_e) / (dn - 1.0)) : 0.0;
                out << scenario.name << ',' << scenario.miner_labels[i] << ',' << n << ','
                    << format_compact_double(mean_t) << ',' << format_compact_double(std::sqrt(var_t))
                    << ',' << format_compact_double(mean_e) << ','
                    << format_compact_double(std::sqrt(var_e)) << '\n';
            }
        }
    }
    std::cout << "sweep: " << runs.size() << " runs complete\n";
    return kExitOk;
}

struct AnalyzeOptions {
    std::string data_path;
    std::string format;  // "", "csv", "jsonl"
    std::string out_dir;
    DetectorConfig detector;
};

int cmd_analyze(const AnalyzeOptions& opt) {
    HeaderFormat format;
    if (opt.format == "csv") {
        format = HeaderFormat::Csv;
    } else if (opt.format == "jsonl") {
        format = HeaderFormat::JsonLines;
    } else {
        fs::path p(opt.data_path);
        std::string ext = p.extension().string();
        format = (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") ? HeaderFormat::JsonLines
                                                                         : HeaderFormat::Csv;
    }

    std::ifstream in(opt.data_path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + opt.data_path);
    std::vector<HeaderRow> rows = parse_headers(in, format);

    std::vector<SolveTimeRow> times = solve_times(rows);
    std::vector<AttackRegion> regions = detect_attack_regions(rows, opt.detector);

    fs::create_directories(opt.out_dir);
    fs::path dir(opt.out_dir);
    std::string stem = fs::path(opt.data_path).stem().string();
    {
        auto out = open_out(dir / (stem + "_solve_times.csv"));
        write_solve_times_csv(out, times);
    }
    {
        auto out = open_out(dir / (stem + "_attack_regions.csv"));
        write_regions_csv(out, regions);
    }
    std::cout << regions.size() << " attack region(s)\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"jumping-mining attack simulator and chain analyzer"};
    app.require_subcommand(1);

    SimulateOptions sim_opt;
    auto* simulate = app.add_subcommand("simulate", "run one scenario, write series/summary/plots");
    simulate->add_option("--config", sim_opt.config_path, "scenario config file")->required();
    simulate->add_option("--out", sim_opt.out_dir, "output directory")->required();
    simulate->add_option("--scenario", sim_opt.scenario, "scenario name (when the file has several)");
    uint64_t seed_val = 0;
    int64_t blocks_val = 0;
    auto* seed_opt = simulate->add_option("--seed", seed_val, "override the scenario seed");
    auto* blocks_opt = simulate->add_option("--num-blocks", blocks_val, "override the block count");
    simulate->add_flag("--emit-headers", sim_opt.emit_headers, "also write a synthetic header export");
    simulate->add_flag("--svg", sim_opt.svg, "also write a simple SVG chart");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "run every scenario x seed and merge the results");
    sweep->add_option("--manifest", sweep_opt.manifest_path, "manifest config file")->required();
    sweep->add_option("--out", sweep_opt.out_dir, "output directory")->required();
    sweep->add_option("--jobs", sweep_opt.jobs, "parallel runs (default: hardware threads)");

    AnalyzeOptions an_opt;
    auto* analyze = app.add_subcommand("analyze", "analyze a block-header export for attack regions");
    analyze->add_option("--data", an_opt.data_path, "header export (csv or json-lines)")->required();
    analyze->add_option("--format", an_opt.format, "csv or jsonl (default: by extension)")
        ->check(CLI::IsMember({"csv", "jsonl"}));
    analyze->add_option("--out", an_opt.out_dir, "output directory")->required();
    analyze->add_option("--window", an_opt.detector.window, "rolling median window");
    analyze->add_option("--low-frac", an_opt.detector.low_frac, "relative difficulty threshold");
    analyze->add_option("--burst-frac", an_opt.detector.burst_frac, "burst solve-time threshold");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*simulate) {
            if (*seed_opt) sim_opt.seed = seed_val;
            if (*blocks_opt) sim_opt.num_blocks = blocks_val;
            return cmd_simulate(sim_opt);
        }
        if (*sweep) return cmd_sweep(sweep_opt);
        if (*analyze) return cmd_analyze(an_opt);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitConfig;
}
