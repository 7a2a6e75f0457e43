#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "engine.hpp"

namespace slln::lln {

// Exact envelope means of partial sums, n = 1..N, with the one-coordinate
// bracket they must stay inside.
struct MeanBoundsSequence {
    std::vector<size_t> n_values;
    std::vector<double> upper_means;  // E[S_n]/n
    std::vector<double> lower_means;  // conjugate e[S_n]/n
    double bracket_low = 0.0;         // e[X_1]
    double bracket_high = 0.0;        // E[X_1]
};

MeanBoundsSequence mean_bounds_sequence(const SequenceModel& model, size_t N,
                                        const engine::EngineLimits& limits = {});

struct MuLimitEstimate {
    double mu_bar = 0.0;    // last upper mean
    double mu_under = 0.0;  // last lower mean
    std::vector<double> upper_deltas;  // |mean(2n) - mean(n)| over doublings
    std::vector<double> lower_deltas;
    bool upper_converged = false;
    bool lower_converged = false;
};

// Trend extrapolation of the envelope means. Converged means the doubling
// deltas decayed to a quarter of the first one (or vanished outright); no
// limit is asserted either way.
MuLimitEstimate estimate_mu_limits(const MeanBoundsSequence& seq);

struct InequalityReport {
    std::string descriptor;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool pass = false;  // lhs <= rhs + 1e-12
};

struct KolmogorovReport {
    InequalityReport upper;  // V_hat of {max_k (S_k - E[S_k]) >= x} vs C=1
    InequalityReport lower;  // nu_hat of {max_k (S_k - e[S_k]) >= x} vs C=1
    double c_hat_upper = 0.0;  // minimal constant LHS x^2 / sum E[X_i^2]
    double c_hat_lower = 0.0;
    double exp_bound = 0.0;  // delta^-p x^-p sum E[X_i^2] + exp-term, C_p = 1
    double second_moment_sum = 0.0;
    bool classical = false;  // singleton law; C=1 then asserted hard
};

// Maximal-inequality report in the x^-2 form. The free constant is not
// invented: the minimal one is reported, and only the classical case is
// asserted against 1.
KolmogorovReport kolmogorov_report(const SequenceModel& model, size_t n, double x,
                                   double delta, double p,
                                   const engine::EngineLimits& limits = {});

// nu_hat(max_k |sum_{i<=k}(X_i - mu_i)| >= x) <= (2/x^2) sum E[X_i^2], with
// the explicit constant 2. Every mu_i must sit inside [e[X_1], E[X_1]].
InequalityReport lower_capacity_maximal_check(const SequenceModel& model, size_t n,
                                              const std::vector<double>& mus,
                                              double x,
                                              const engine::EngineLimits& limits = {});

struct PathStats {
    uint64_t seed = 0;
    uint64_t path_index = 0;
    std::string strategy;
    std::vector<size_t> checkpoints;
    std::vector<double> running_means;     // S_n / n
    std::vector<double> running_sups;      // max_{k<=n} |S_k| / k
    std::vector<double> running_max_devs;  // max_{k<=n} |S_k|
};

// Strategy-driven simulation; each path owns counter-based streams keyed by
// (seed, path index), so results are bit-identical for any thread count.
// Parallel across paths; reads SLLN_THREADS.
std::vector<PathStats> simulate_paths(const SequenceModel& model,
                                      const engine::AdversaryStrategy& strategy,
                                      size_t n, size_t n_paths,
                                      const std::vector<size_t>& checkpoints,
                                      uint64_t seed);

struct ClusterReport {
    double mu_bar = 0.0;
    double mu_under = 0.0;
    double limsup_estimate = 0.0;  // max running mean, last 10% of each b-epoch
    double liminf_estimate = 0.0;  // min running mean, last 10% of each a-epoch
    double coverage = 0.0;         // grid fraction visited within 0.02
    std::vector<double> grid;
    std::vector<uint8_t> covered;
    std::vector<size_t> epoch_ends;
    std::vector<double> epoch_end_means;
    std::string strategy;
};

// One trajectory under an epoch schedule alternating targets a and b with
// geometrically growing epoch lengths; within an epoch the law is an i.i.d.
// coin between the two extreme-mean laws, mixed to hit the target exactly.
ClusterReport cluster_set_experiment(const SequenceModel& model, double a, double b,
                                     double epoch_growth, size_t n, uint64_t seed,
                                     const engine::EngineLimits& limits = {});

struct DivergenceReport {
    std::string strategy;
    std::vector<size_t> checkpoints;
    std::vector<double> median_stats;  // median over paths of max_{k<=n}|S_k|/k
    double growth_fraction = 0.0;      // paths whose stat grew start to end
    bool diagnostics_diverging = false;
    bool pass = false;
};

// Watches max_{k<=n}|S_k|/k at geometric checkpoints from 10^3 to 10^6 under
// the adversary that best exhibits divergence: a bounded warm-up law until
// the first checkpoint, the heaviest law after. A heavy spike before the
// watch window would freeze the running sup and mask real growth; the
// warm-up keeps the window aligned with the heavy regime. Passes when the
// statistic grows for >= 90% of paths and the Choquet diagnostics flag
// divergence.
DivergenceReport divergence_experiment(const SequenceModel& model,
                                       size_t n_checkpoints, size_t n_paths,
                                       uint64_t seed);

struct Theorem1Report {
    struct StrategyRun {
        std::string strategy;
        std::vector<double> upper_stats;  // (S_n - sum E[X_i]) / a_n
        std::vector<double> lower_stats;  // (S_n - sum e[X_i]) / a_n
        double max_upper_tail = 0.0;      // max upper stat over n >= n0
        double min_lower_tail = 0.0;
        double final_upper = 0.0;
        double final_lower = 0.0;
        bool pass = false;
    };
    std::vector<size_t> checkpoints;
    std::vector<StrategyRun> runs;
    double epsilon = 0.0;
    double weight_sum = 0.0;  // final partial sum of E[X_i^2]/a_i^2
    bool pass = false;
};

// Weighted-deviation experiment for an independent non-identical sequence:
// marginal ambiguities cycle through the given IID models. Gate: the weight
// series must pass weight_sequence_check, else WeightConditionFails.
Theorem1Report theorem1_experiment(const std::vector<SequenceModel>& models,
                                   const std::vector<double>& a,
                                   const std::vector<size_t>& checkpoints,
                                   uint64_t seed, double epsilon = 0.05,
                                   const engine::EngineLimits& limits = {});

} // namespace slln::lln
