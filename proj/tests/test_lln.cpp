#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <vector>

#include "fixtures.hpp"
#include "lln.hpp"

using namespace slln;
using namespace slln::lln;

TEST_CASE("mean bounds stay pinned to the envelope for exact fixtures") {
    for (const char* name : {"iid-ambiguous", "moving-average"}) {
        const MeanBoundsSequence seq = mean_bounds_sequence(fixture_model(name), 32);
        INFO(name);
        REQUIRE(seq.n_values.size() == 32);
        CHECK(seq.bracket_high == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(seq.bracket_low == doctest::Approx(0.3).epsilon(1e-12));
        for (size_t i = 0; i < seq.n_values.size(); ++i) {
            CHECK(seq.upper_means[i] == doctest::Approx(0.7).epsilon(1e-10));
            CHECK(seq.lower_means[i] == doctest::Approx(0.3).epsilon(1e-10));
        }
    }
}

TEST_CASE("mu limit estimate settles on constant mean sequences") {
    const MuLimitEstimate est =
        estimate_mu_limits(mean_bounds_sequence(fixture_model("moving-average"), 64));
    CHECK(est.mu_bar == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(est.mu_under == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(est.upper_converged);
    CHECK(est.lower_converged);
}

TEST_CASE("mu limit estimate refuses tiny horizons and flags oscillation") {
    try {
        estimate_mu_limits(mean_bounds_sequence(fixture_model("iid-ambiguous"), 4));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::HorizonTooSmall);
    }

    // Swings by log2 level so every doubling delta stays at 0.4.
    MeanBoundsSequence wobble;
    for (size_t n = 1; n <= 64; ++n) {
        wobble.n_values.push_back(n);
        const auto level = static_cast<size_t>(
            std::lround(std::floor(std::log2(static_cast<double>(n)))));
        const double swing = (level % 2 == 0) ? 0.2 : -0.2;
        wobble.upper_means.push_back(0.7 + swing);
        wobble.lower_means.push_back(0.3);
    }
    wobble.bracket_low = 0.3;
    wobble.bracket_high = 0.9;
    const MuLimitEstimate est = estimate_mu_limits(wobble);
    REQUIRE(est.upper_deltas.size() == 6);
    CHECK(est.upper_deltas.front() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(est.upper_deltas.back() == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_FALSE(est.upper_converged);
    CHECK(est.lower_converged);
}

TEST_CASE("classical maximal inequality on a fair coin") {
    const SequenceModel m = fixture_model("classical-singleton");
    const KolmogorovReport rep = kolmogorov_report(m, 2, 1.0, 0.5, 2.0);
    CHECK(rep.classical);
    CHECK(rep.second_moment_sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.upper.lhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.lower.lhs == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.c_hat_upper == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.c_hat_lower == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.exp_bound == doctest::Approx(4.71653131057379).epsilon(1e-12));
    CHECK(rep.upper.pass);
    CHECK(rep.lower.pass);
}

TEST_CASE("ambiguous maximal inequality keeps the minimal constant below 1") {
    const SequenceModel m = fixture_model("iid-ambiguous");
    const KolmogorovReport rep = kolmogorov_report(m, 2, 1.0, 0.5, 2.0);
    CHECK_FALSE(rep.classical);
    CHECK(rep.second_moment_sum == doctest::Approx(1.4).epsilon(1e-12));
    // Centered upper sums never clear the threshold; the lower event is
    // exactly {S_2 = 2}, whose lower capacity is 0.3^2.
    CHECK(rep.upper.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.c_hat_upper == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.lower.lhs == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(rep.c_hat_lower == doctest::Approx(0.09 / 1.4).epsilon(1e-12));
    CHECK(rep.upper.pass);
    CHECK(rep.lower.pass);
}

TEST_CASE("kolmogorov argument guards") {
    const SequenceModel m = fixture_model("iid-ambiguous");
    CHECK_THROWS_AS(kolmogorov_report(m, 0, 1.0, 0.5, 2.0), Error);
    CHECK_THROWS_AS(kolmogorov_report(m, 2, 0.0, 0.5, 2.0), Error);
    CHECK_THROWS_AS(kolmogorov_report(m, 2, 1.0, 0.0, 2.0), Error);
    CHECK_THROWS_AS(kolmogorov_report(m, 2, 1.0, 0.5, -1.0), Error);
}

TEST_CASE("centered maximal deviation obeys the explicit-constant bound") {
    const SequenceModel m = fixture_model("iid-ambiguous");
    const InequalityReport mid =
        lower_capacity_maximal_check(m, 2, {0.5, 0.5}, 1.0);
    CHECK(mid.lhs == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(mid.rhs == doctest::Approx(2.8).epsilon(1e-12));
    CHECK(mid.pass);

    const InequalityReport far =
        lower_capacity_maximal_check(m, 2, {0.5, 0.5}, 1.5);
    CHECK(far.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(far.rhs == doctest::Approx(2.8 / 2.25).epsilon(1e-12));
    CHECK(far.pass);

    const SequenceModel single = fixture_model("classical-singleton");
    const InequalityReport classical =
        lower_capacity_maximal_check(single, 2, {0.5, 0.5}, 1.0);
    CHECK(classical.lhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(classical.rhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(classical.pass);
}

TEST_CASE("centers outside the mean band are rejected") {
    const SequenceModel m = fixture_model("iid-ambiguous");
    try {
        lower_capacity_maximal_check(m, 2, {0.1, 0.5}, 1.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MuOutOfBand);
    }
    CHECK_THROWS_AS(lower_capacity_maximal_check(m, 2, {0.5}, 1.0), Error);
}

TEST_CASE("path simulation is reproducible for any thread count") {
    const SequenceModel m = fixture_model("heavy-tail");
    const engine::AdversaryStrategy s = engine::AdversaryStrategy::constant(1);
    const std::vector<size_t> cps = {100, 500, 1000};

    setenv("SLLN_THREADS", "1", 1);
    const std::vector<PathStats> serial = simulate_paths(m, s, 1000, 6, cps, 42);
    setenv("SLLN_THREADS", "4", 1);
    const std::vector<PathStats> parallel = simulate_paths(m, s, 1000, 6, cps, 42);
    unsetenv("SLLN_THREADS");

    REQUIRE(serial.size() == 6);
    REQUIRE(parallel.size() == 6);
    for (size_t p = 0; p < serial.size(); ++p) {
        CHECK(serial[p].path_index == p);
        CHECK(serial[p].running_means == parallel[p].running_means);
        CHECK(serial[p].running_sups == parallel[p].running_sups);
        CHECK(serial[p].running_max_devs == parallel[p].running_max_devs);
        for (size_t i = 0; i < cps.size(); ++i)
            CHECK(serial[p].checkpoints[i] == cps[i]);
    }
}

TEST_CASE("paths under a singleton law track the classical mean") {
    const SequenceModel m = fixture_model("classical-singleton");
    const std::vector<PathStats> paths = simulate_paths(
        m, engine::AdversaryStrategy::constant(0), 20000, 8, {20000}, 7);
    for (const PathStats& p : paths) {
        CHECK(std::fabs(p.running_means.back() - 0.5) < 0.02);
    }
}

TEST_CASE("cluster experiment brackets both targets on the ambiguous fixture") {
    const SequenceModel m = fixture_model("moving-average");
    const ClusterReport rep = cluster_set_experiment(m, 0.3, 0.7, 12.0, 200000, 42);
    CHECK(rep.mu_bar == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(rep.mu_under == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(rep.limsup_estimate >= 0.6);
    CHECK(rep.liminf_estimate <= 0.4);
    CHECK(rep.limsup_estimate > rep.liminf_estimate);
    CHECK(rep.coverage >= 0.8);
    REQUIRE(rep.epoch_ends.size() == 3);
    CHECK(rep.epoch_ends.back() == 200000);
    CHECK(rep.grid.size() == rep.covered.size());

    const ClusterReport again = cluster_set_experiment(m, 0.3, 0.7, 12.0, 200000, 42);
    CHECK(again.limsup_estimate == rep.limsup_estimate);
    CHECK(again.coverage == rep.coverage);
}

TEST_CASE("cluster experiment guards") {
    const SequenceModel m = fixture_model("moving-average");
    try {
        cluster_set_experiment(m, 0.8, 0.9, 12.0, 1000, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TargetOutOfBracket);
    }
    try {
        cluster_set_experiment(m, 0.7, 0.3, 12.0, 1000, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TargetOrderError);
    }
    CHECK_THROWS_AS(
        cluster_set_experiment(fixture_model("heavy-tail"), 0.3, 0.7, 12.0, 1000, 1),
        Error);
}

TEST_CASE("divergence experiment separates heavy and light tails") {
    const DivergenceReport heavy =
        divergence_experiment(fixture_model("heavy-tail"), 5, 12, 42);
    CHECK(heavy.checkpoints.front() == 1000);
    CHECK(heavy.checkpoints.back() == 1000000);
    CHECK(heavy.diagnostics_diverging);
    CHECK(heavy.growth_fraction >= 0.9);
    CHECK(heavy.pass);
    REQUIRE(heavy.median_stats.size() == heavy.checkpoints.size());
    CHECK(heavy.median_stats.back() > heavy.median_stats.front());

    const DivergenceReport light =
        divergence_experiment(fixture_model("pareto2-control"), 5, 12, 42);
    CHECK_FALSE(light.diagnostics_diverging);
    CHECK_FALSE(light.pass);
}

TEST_CASE("divergence experiment guards") {
    try {
        divergence_experiment(fixture_model("classical-singleton"), 5, 4, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoHeavyTailLaw);
    }
    CHECK_THROWS_AS(divergence_experiment(fixture_model("moving-average"), 5, 4, 1),
                    Error);
}

TEST_CASE("weighted deviations shrink under summable weights") {
    const std::vector<SequenceModel> models = {fixture_model("biased-sign")};
    std::vector<double> a(4000);
    for (size_t i = 0; i < a.size(); ++i) a[i] = static_cast<double>(i + 1);
    const Theorem1Report rep = theorem1_experiment(models, a, {1000, 4000}, 42);
    CHECK(rep.pass);
    CHECK(rep.epsilon == doctest::Approx(0.05));
    CHECK(rep.weight_sum > 0.0);
    REQUIRE(rep.runs.size() == 3);
    for (const auto& run : rep.runs) {
        CHECK(run.pass);
        CHECK(run.final_upper <= 0.05);
        CHECK(run.final_lower >= -0.05);
        REQUIRE(run.upper_stats.size() == 2);
    }

    const Theorem1Report again = theorem1_experiment(models, a, {1000, 4000}, 42);
    CHECK(again.runs[0].final_upper == rep.runs[0].final_upper);
}

TEST_CASE("weighted deviation experiment rejects divergent weights") {
    const std::vector<SequenceModel> models = {fixture_model("biased-sign")};
    std::vector<double> a(4000);
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = std::pow(static_cast<double>(i + 1), 0.25);
    try {
        theorem1_experiment(models, a, {1000, 4000}, 42);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WeightConditionFails);
    }
}

TEST_CASE("weighted deviation experiment needs iid exact marginals") {
    CHECK_THROWS_AS(
        theorem1_experiment({fixture_model("moving-average")},
                            {1.0, 2.0, 3.0, 4.0}, {2, 4}, 1),
        Error);
    CHECK_THROWS_AS(
        theorem1_experiment({fixture_model("heavy-tail")},
                            {1.0, 2.0, 3.0, 4.0}, {2, 4}, 1),
        Error);
}
