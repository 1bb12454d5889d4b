// Copyright (c) 2026 The jmsim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "jmsim/difficulty.hpp"
#include "oracle_anti_attack.hpp"

using namespace jmsim;

namespace {

std::vector<BlockRecord> make_history(const std::vector<double>& difficulty,
                                      const std::vector<double>& solve_time) {
    std::vector<BlockRecord> records;
    for (size_t i = 0; i < difficulty.size(); ++i) {
        records.push_back(BlockRecord{static_cast<int64_t>(i), difficulty[i], solve_time[i], 0,
                                      false, 1.0});
    }
    return records;
}

std::vector<BlockRecord> constant_history(size_t n, double difficulty, double solve_time) {
    return make_history(std::vector<double>(n, difficulty), std::vector<double>(n, solve_time));
}

}  // namespace

TEST_CASE("target/difficulty conversions") {
    CHECK(target_from_absolute_difficulty(1.0) == U256::pow2(224));
    CHECK(target_from_absolute_difficulty(std::ldexp(1.0, 224)) == U256(1));
    CHECK_THROWS_AS(target_from_absolute_difficulty(std::ldexp(1.0, 225)), std::domain_error);
    CHECK_THROWS_AS(target_from_absolute_difficulty(0.0), std::domain_error);
    CHECK(target_from_difficulty(1.0) == U256::pow2(184));
    CHECK(difficulty_from_target(U256::pow2(184)) == 1.0);
    for (double d : {1.0, 3.0, 1e6}) {
        double back = difficulty_from_target(target_from_difficulty(d));
        CHECK(std::abs(back - d) / d <= std::ldexp(1.0, -50));
    }
    CHECK_THROWS_AS(difficulty_from_target(U256(0)), std::domain_error);
}

TEST_CASE("canonical windows per algorithm") {
    CHECK(DaaConfig::defaults_for(DaaAlgorithm::BitcoinEpoch).window == 2016);
    CHECK(DaaConfig::defaults_for(DaaAlgorithm::Bch144).window == 144);
    CHECK(DaaConfig::defaults_for(DaaAlgorithm::DigiShield17).window == 17);
    CHECK(DaaConfig::defaults_for(DaaAlgorithm::BtgWeighted).window == 45);
    CHECK(DaaConfig::defaults_for(DaaAlgorithm::ImprovedAntiAttack).window == 45);
}

TEST_CASE("bitcoin epoch retarget") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::BitcoinEpoch);
    const double t = cfg.target_block_time_s;

    // non-boundary heights carry the previous difficulty
    auto history = constant_history(100, 5.0, t);
    CHECK(next_difficulty_bitcoin(history, cfg) == 5.0);

    // on-schedule epoch leaves difficulty unchanged
    history = constant_history(2016, 5.0, t);
    CHECK(next_difficulty_bitcoin(history, cfg) == 5.0);

    // half the expected time doubles the difficulty
    history = constant_history(2016, 5.0, t / 2.0);
    CHECK(next_difficulty_bitcoin(history, cfg) == 10.0);

    // an epoch at T/8 pins the ratio at the 4x clamp
    history = constant_history(2016, 5.0, t / 8.0);
    CHECK(next_difficulty_bitcoin(history, cfg) == 20.0);

    CHECK_THROWS_AS(next_difficulty_bitcoin({}, cfg), std::invalid_argument);
}

TEST_CASE("bitcoin: changes only at epoch boundaries, ratio in [0.25, 4]") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::BitcoinEpoch);
    cfg.window = 32;  // small epoch to cover many boundaries
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> st_dist(1.0, 4000.0);
    std::vector<BlockRecord> history = constant_history(1, 4.0, 600.0);
    for (int h = 1; h < 400; ++h) {
        double d = next_difficulty(history, cfg);
        double prev = history.back().difficulty;
        if (h % cfg.window != 0) {
            CHECK(d == prev);
        } else {
            double ratio = d / prev;
            CHECK(ratio >= 0.25);
            CHECK(ratio <= 4.0);
        }
        history.push_back(BlockRecord{h, d, st_dist(rng), 0, false, 1.0});
    }
}

TEST_CASE("bch full-window retarget") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::Bch144);
    const double t = cfg.target_block_time_s;

    auto history = constant_history(144, 6.0, t);
    CHECK(next_difficulty_bch(history, cfg) == doctest::Approx(6.0).epsilon(1e-12));

    // window twice as slow halves the difficulty (clamp-free point)
    history = constant_history(144, 6.0, 2.0 * t);
    CHECK(next_difficulty_bch(history, cfg) == doctest::Approx(3.0).epsilon(1e-12));

    // 14.4 * T window sum pins the ratio at the 2x clamp
    history = constant_history(144, 6.0, t / 10.0);
    CHECK(next_difficulty_bch(history, cfg) == doctest::Approx(12.0).epsilon(1e-12));

    // bootstrap: single block works
    history = constant_history(1, 6.0, t);
    CHECK(next_difficulty_bch(history, cfg) == doctest::Approx(6.0).epsilon(1e-12));
    CHECK_THROWS_AS(next_difficulty_bch({}, cfg), std::invalid_argument);
}

TEST_CASE("bch: per-block change ratio stays in [0.5, 2]") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::Bch144);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> st_dist(1.0, 5000.0);
    std::vector<BlockRecord> history = constant_history(1, 4.0, 600.0);
    for (int h = 1; h < 600; ++h) {
        double d = next_difficulty(history, cfg);
        double ratio = d / history.back().difficulty;
        CHECK(ratio >= 0.5 - 1e-12);
        CHECK(ratio <= 2.0 + 1e-12);
        history.push_back(BlockRecord{h, d, st_dist(rng), 0, false, 1.0});
    }
}

TEST_CASE("digishield damped retarget") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::DigiShield17);
    const double t = cfg.target_block_time_s;

    auto history = constant_history(17, 4.0, t);
    CHECK(next_difficulty_digishield(history, cfg) == doctest::Approx(4.0).epsilon(1e-12));

    // window twice as slow: difficulty decreases, but damping keeps the step
    // well short of the raw halving
    history = constant_history(17, 4.0, 2.0 * t);
    double slowed = next_difficulty_digishield(history, cfg);
    CHECK(slowed < 4.0);
    CHECK(slowed == doctest::Approx(4.0 / 1.25).epsilon(1e-9));  // damped ratio 1 + 1/4
    CHECK(std::abs(slowed - 4.0) < 4.0 * 0.5);                   // |step| < raw ratio

    // a window at T/10 hits the upper per-retarget clamp (-16% timespan)
    history = constant_history(17, 4.0, t / 10.0);
    double surged = next_difficulty_digishield(history, cfg);
    CHECK(surged == doctest::Approx(4.0 / cfg.digishield_timespan_min_frac).epsilon(1e-9));

    CHECK_THROWS_AS(next_difficulty_digishield({}, cfg), std::invalid_argument);
}

TEST_CASE("btg weighted retarget") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::BtgWeighted);
    cfg.adjust = 1.0;
    const double t = cfg.target_block_time_s;

    // fixed point: equal targets, all solve times at T
    auto history = constant_history(45, 3.0, t);
    double fixed = next_difficulty_btg_weighted(history, cfg);
    CHECK(fixed == difficulty_from_target(target_from_difficulty(3.0)));
    CHECK(fixed == doctest::Approx(3.0).epsilon(1e-12));

    // all solve times 2T: newTarget = 2g, difficulty halves
    history = constant_history(45, 3.0, 2.0 * t);
    CHECK(next_difficulty_btg_weighted(history, cfg) == doctest::Approx(1.5).epsilon(1e-9));

    // two-block hand example: avgT = (1*10 + 2*590)/3 = 396.66..7 s
    cfg.window = 2;
    history = make_history({3.0, 3.0}, {10.0, 590.0});
    double avg_t = (1.0 * 10.0 + 2.0 * 590.0) / 3.0;
    double expect = difficulty_from_target(mul_floor(target_from_difficulty(3.0), avg_t / t));
    double got = next_difficulty_btg_weighted(history, cfg);
    CHECK(got == expect);
    CHECK(got == doctest::Approx(3.0 * t / avg_t).epsilon(1e-9));

    CHECK_THROWS_AS(next_difficulty_btg_weighted({}, cfg), std::invalid_argument);
}

TEST_CASE("improved retarget: guard branches against hand-built windows") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::ImprovedAntiAttack);
    cfg.adjust = 1.0;
    const double t = cfg.target_block_time_s;
    const double d0 = 3.0;
    const U256 g = target_from_difficulty(d0);

    SUBCASE("burst in the last 5 blocks caps the target at avg5/4") {
        std::vector<double> st(45, t);
        for (size_t i = 40; i < 45; ++i) st[i] = 0.2 * t;  // last-5 sum = T <= 1.5T
        auto history = make_history(std::vector<double>(45, d0), st);
        CHECK(next_difficulty_improved(history, cfg) == difficulty_from_target(g / 4));
    }

    SUBCASE("fast last 10 blocks cap the target at avg10/2") {
        std::vector<double> st(45, t);
        for (size_t i = 35; i < 45; ++i) st[i] = 0.45 * t;  // last-10 sum = 4.5T <= 5T
        auto history = make_history(std::vector<double>(45, d0), st);
        CHECK(next_difficulty_improved(history, cfg) == difficulty_from_target(g / 2));
    }

    SUBCASE("mildly fast last 10 blocks cap the target at avg10*2/3") {
        std::vector<double> st(45, t);
        for (size_t i = 35; i < 45; ++i) st[i] = 0.95 * t;  // last-10 sum = 9.5T <= 10T
        auto history = make_history(std::vector<double>(45, d0), st);
        CHECK(next_difficulty_improved(history, cfg) == difficulty_from_target(mul_div(g, 2, 3)));
    }

    SUBCASE("sum_time floor keeps a degenerate window from collapsing the target") {
        // Tiny solve times everywhere force the N*N*T/6 floor; large last-10
        // targets push the surge caps far above the raw value so only the
        // floor shapes the result.
        std::vector<double> difficulty(45, d0);
        for (size_t i = 35; i < 45; ++i) difficulty[i] = d0 / 64.0;  // target 64g
        std::vector<double> st(45, 0.01 * t);
        auto history = make_history(difficulty, st);
        double got = next_difficulty_improved(history, cfg);
        // floored weighted sum: N*N*T/6 = 337.5T against 10.35T raw
        // next = 675g * (2*337.5/(45*46*45)) = 4.891...g
        double expect_ratio = 675.0 * (2.0 * 337.5 / (45.0 * 46.0 * 45.0));
        CHECK(got == doctest::Approx(d0 / expect_ratio).epsilon(1e-9));
        // the last-5 surge cap sits at 16g here and must not bind
        CHECK(got > difficulty_from_target(g * 16));
    }

    SUBCASE("a 20T straggler at the window end hits the 13/10 fall guard") {
        std::vector<double> st(45, t);
        st[44] = 20.0 * t;  // last-5 sum 24T, last-10 sum 29T: no surge caps
        auto history = make_history(std::vector<double>(45, d0), st);
        double got = next_difficulty_improved(history, cfg);
        CHECK(got == difficulty_from_target(mul_div(g, 13, 10)));
        // difficulty drops at most ~23% in one step
        CHECK(got > d0 * 0.76);
    }

    SUBCASE("pow_limit clamps the final target") {
        // Difficulty just above the configured floor, one large straggler:
        // the 13/10 rise would cross pow_limit, so pow_limit wins.
        const double near_floor = 0.00105;
        std::vector<double> st(45, t);
        st[44] = 20.0 * t;
        auto history = make_history(std::vector<double>(45, near_floor), st);
        double got = next_difficulty_improved(history, cfg);
        CHECK(got == difficulty_from_target(cfg.pow_limit));
        CHECK(got == doctest::Approx(0.001).epsilon(1e-9));
    }

    SUBCASE("bootstrap pads the window with the earliest record") {
        auto history = constant_history(3, d0, 1.02 * t);
        double padded = next_difficulty_improved(history, cfg);
        auto full = constant_history(45, d0, 1.02 * t);
        CHECK(padded == next_difficulty_improved(full, cfg));
        CHECK_THROWS_AS(next_difficulty_improved({}, cfg), std::invalid_argument);
    }

    SUBCASE("base retarget fixed point when no guard engages") {
        // Solve times just above T keep the last-10 sum off the 10T
        // boundary; the base step then reproduces the difficulty to within
        // the small raw drift.
        auto history = constant_history(45, d0, 1.001 * t);
        double got = next_difficulty_improved(history, cfg);
        CHECK(got == doctest::Approx(d0 / 1.001).epsilon(1e-6));
    }

    SUBCASE("a window exactly on schedule sits on the 10T boundary and fires the 2/3 cap") {
        auto history = constant_history(45, d0, t);
        CHECK(next_difficulty_improved(history, cfg) == difficulty_from_target(mul_div(g, 2, 3)));
    }
}

TEST_CASE("improved retarget agrees with the straight-line transcription") {
    DaaConfig cfg = DaaConfig::defaults_for(DaaAlgorithm::ImprovedAntiAttack);
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> log_d(-1.0, 4.0);
    std::uniform_real_distribution<double> st_dist(1.0, 3000.0);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> difficulty(45), st(45);
        for (int i = 0; i < 45; ++i) {
            difficulty[static_cast<size_t>(i)] = std::exp(log_d(rng));
            st[static_cast<size_t>(i)] = st_dist(rng);
        }
        auto history = make_history(difficulty, st);
        double expect = difficulty_from_target(test::anti_attack_next_target(
            st, difficulty, cfg.target_block_time_s, cfg.adjust, cfg.pow_limit));
        CHECK(next_difficulty_improved(history, cfg) == expect);
    }
}

TEST_CASE("all algorithms: positive difficulty, target within pow_limit") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> st_dist(0.1, 20000.0);
    std::uniform_real_distribution<double> log_d(-3.0, 6.0);
    for (auto alg : {DaaAlgorithm::BitcoinEpoch, DaaAlgorithm::Bch144, DaaAlgorithm::DigiShield17,
                     DaaAlgorithm::BtgWeighted, DaaAlgorithm::ImprovedAntiAttack}) {
        DaaConfig cfg = DaaConfig::defaults_for(alg);
        double floor_d = difficulty_from_target(cfg.pow_limit);
        for (int trial = 0; trial < 40; ++trial) {
            size_t len = 1 + static_cast<size_t>(rng() % 200);
            std::vector<double> difficulty(len), st(len);
            for (size_t i = 0; i < len; ++i) {
                difficulty[i] = std::exp(log_d(rng));
                st[i] = st_dist(rng);
            }
            double d = next_difficulty(make_history(difficulty, st), cfg);
            CHECK(d > 0.0);
            CHECK(d >= floor_d * (1.0 - 1e-12));
            CHECK(std::isfinite(d));
            if (alg == DaaAlgorithm::ImprovedAntiAttack) {
                // fall guard: the target never rises past 13/10 of the last
                // block's, so difficulty never drops below last/1.3
                CHECK(d >= difficulty.back() / 1.3 * (1.0 - 1e-12));
                double last5 = 0.0;
                for (size_t i = len >= 5 ? len - 5 : 0; i < len; ++i) last5 += st[i];
                size_t pad5 = len < 5 ? 5 - len : 0;  // bootstrap pads with the first record
                last5 += static_cast<double>(pad5) * st[0];
                if (last5 <= 1.5 * cfg.target_block_time_s) {
                    // burst cap: at least quadruple the recent average difficulty
                    U256 avg5;
                    for (size_t i = len >= 5 ? len - 5 : 0; i < len; ++i) {
                        avg5 += target_from_difficulty(difficulty[i]);
                    }
                    for (size_t i = 0; i < pad5; ++i) avg5 += target_from_difficulty(difficulty[0]);
                    avg5 /= 5;
                    double cap_d = difficulty_from_target(std::min(avg5 / 4, cfg.pow_limit));
                    CHECK(d >= cap_d * (1.0 - 1e-12));
                }
            }
        }
    }
}

TEST_CASE("fixed point within a factor of 1/adjust for the stock algorithms") {
    for (auto alg : {DaaAlgorithm::BitcoinEpoch, DaaAlgorithm::Bch144, DaaAlgorithm::DigiShield17,
                     DaaAlgorithm::BtgWeighted}) {
        DaaConfig cfg = DaaConfig::defaults_for(alg);
        auto history = constant_history(static_cast<size_t>(cfg.window), 4.0,
                                        cfg.target_block_time_s);
        double d = next_difficulty(history, cfg);
        double factor = std::max(d / 4.0, 4.0 / d);
        CHECK(factor <= 1.0 / cfg.adjust + 1e-9);
    }
}
