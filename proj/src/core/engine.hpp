#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "functional.hpp"
#include "model.hpp"
#include "rng.hpp"

namespace slln::engine {

struct EngineLimits {
    // Full-history DP and tree recursion: driver tuples allowed.
    size_t max_leaves = size_t{1} << 21;
    // Compressed DP: distinct (step, window, statistic, flag) states.
    size_t max_states = 4'000'000;
    // Literal strategy enumeration: adaptive strategies allowed.
    double strategy_cap = 1e7;
};

struct ExpectationPair {
    double upper = 0.0;
    double lower = 0.0;
};

// Counts of value-function work, for complexity-contract tests.
struct DpStats {
    size_t value_evals = 0;
    size_t states = 0;
};

// History-dependent law selection. One strategy induces one classical
// measure on driver paths.
class AdversaryStrategy {
  public:
    struct Ctx {
        size_t t;                            // driver step, 1-based
        const std::vector<double>& history;  // realized drivers before t
        RngStream* aux;                      // null during exact evaluation
    };
    using Policy = std::function<size_t(const Ctx&)>;

    static AdversaryStrategy constant(size_t law_index);
    // Blocks of (length, law); the final block repeats forever.
    static AdversaryStrategy epoch_schedule(
        std::vector<std::pair<size_t, size_t>> blocks);
    // Exact-history lookup with a fallback law for unlisted prefixes.
    static AdversaryStrategy table(
        std::vector<std::pair<std::vector<double>, size_t>> rules, size_t fallback);
    static AdversaryStrategy hook(std::string id, Policy policy, bool deterministic);

    size_t select(const Ctx& ctx) const { return policy_(ctx); }
    const std::string& id() const { return id_; }
    bool deterministic() const { return deterministic_; }

  private:
    AdversaryStrategy(std::string id, Policy p, bool det)
        : id_(std::move(id)), policy_(std::move(p)), deterministic_(det) {}

    std::string id_;
    Policy policy_;
    bool deterministic_ = true;
};

// Exact upper expectation by backward induction over full driver tuples:
// innermost coordinate resolved first, max over laws at every prefix.
double upper_expectation(const SequenceModel& model, const Functional& phi,
                         const EngineLimits& limits = {});
double lower_expectation(const SequenceModel& model, const Functional& phi,
                         const EngineLimits& limits = {});
ExpectationPair expectation_pair(const SequenceModel& model, const Functional& phi,
                                 const EngineLimits& limits = {});

// Independent evaluator: top-down recursion with fresh payoff evaluation per
// leaf, no layer arrays. Same value as upper_expectation, different route.
double tree_sup_expectation(const SequenceModel& model, const Functional& phi,
                            const EngineLimits& limits = {});

struct OracleResult {
    double value = 0.0;
    // Law index per reachable history prefix, heap order; the first
    // maximizer in lexicographic strategy order.
    std::vector<uint8_t> best_strategy;
    double n_strategies = 0.0;
};

// Literal enumeration of every adaptive strategy, maximum of the induced
// classical expectations.
OracleResult oracle_upper_expectation(const SequenceModel& model,
                                      const Functional& phi,
                                      const EngineLimits& limits = {});

// Exact classical expectation of phi under the measure the strategy induces.
double strategy_measure_expectation(const SequenceModel& model,
                                    const AdversaryStrategy& strategy,
                                    const Functional& phi,
                                    const EngineLimits& limits = {});

struct CheckReport {
    bool pass = true;
    double max_deviation = 0.0;
    std::vector<std::string> violations;
};

// Monotonicity, constant preservation, sub-additivity, positive
// homogeneity, translation, and the difference inequality, over the given
// functionals and derived pairs.
CheckReport check_sublinear_axioms(const SequenceModel& model,
                                   const std::vector<Functional>& phis,
                                   double tol = 1e-12,
                                   const EngineLimits& limits = {});

// |E[S_n] - n E[X_1]| <= tol for IID models, both envelopes.
CheckReport check_independent_bounded_additivity(const SequenceModel& model,
                                                 size_t n, double tol = 1e-10,
                                                 const EngineLimits& limits = {});

// E_A[phi(X_1..X_n)] vs E_B[phi(X_{1+p}..X_{n+p})].
CheckReport check_identity_in_distribution(const SequenceModel& model_a,
                                           const SequenceModel& model_b, size_t p,
                                           size_t n,
                                           const std::vector<Functional>& phis,
                                           double tol = 1e-10,
                                           const EngineLimits& limits = {});

// Two-block payoff for dependence checks: phi(x-block, y-block).
struct BlockFunctional {
    size_t nx = 0;
    size_t ny = 0;
    std::string label;
    std::function<double(const std::vector<double>&, const std::vector<double>&)> eval;
};

// Nested-evaluation identity for blocks (X_1..X_n) and (X_ystart..X_yend),
// both sides by literal strategy enumeration. Blocks with a gap > m must
// satisfy it; adjacent blocks generally must not.
CheckReport check_block_independence(const SequenceModel& model, size_t n,
                                     size_t y_start, size_t y_end,
                                     const std::vector<BlockFunctional>& phis,
                                     double tol = 1e-10,
                                     const EngineLimits& limits = {});

// Definition-level m-dependence: y-block starts after a gap of m indices.
CheckReport check_m_dependence(const SequenceModel& model, size_t n, size_t j,
                               const std::vector<BlockFunctional>& phis,
                               double tol = 1e-10, const EngineLimits& limits = {});

// E[sum_{i<=n} h(i, X_i)] via the windowed additive DP; h indexed 1-based.
double upper_additive(const SequenceModel& model, size_t n,
                      const std::function<double(size_t, double)>& h,
                      const EngineLimits& limits = {}, DpStats* stats = nullptr);

// E[sign * S_n] for every n = 1..N in one sweep.
std::vector<double> upper_partial_sums(const SequenceModel& model, size_t N,
                                       double sign, const EngineLimits& limits = {},
                                       DpStats* stats = nullptr);

// Adaptive-worst-case probability of a running-deviation event, exact via a
// compressed state (window, partial sum, hit flag).
struct MaxDevEventSpec {
    size_t n = 0;
    std::vector<double> centers;  // cumulative centering M_k, size n (empty = 0)
    double x = 0.0;
    bool absolute = true;
};

// V_hat of {exists k <= n: dev_k >= x}; with complement=true, of its
// complement {forall k: dev_k < x}.
double upper_capacity_max_dev(const SequenceModel& model, const MaxDevEventSpec& ev,
                              bool complement = false,
                              const EngineLimits& limits = {},
                              DpStats* stats = nullptr);
double lower_capacity_max_dev(const SequenceModel& model, const MaxDevEventSpec& ev,
                              const EngineLimits& limits = {},
                              DpStats* stats = nullptr);

} // namespace slln::engine
