#pragma once

#include <utility>
#include <vector>

#include "engine.hpp"

namespace slln::sequences {

SequenceModel make_iid_model(AmbiguitySet driver);
SequenceModel make_moving_window_model(size_t m, AmbiguitySet driver,
                                       WindowSpec window);

struct WeightReport {
    std::vector<double> partial_sums;  // sum_{i<=N} sm_i / a_i^2 for N = 1..len
    bool cauchy_flag = false;          // doubling-window increments decayed 2x
};

// Partial sums of E[X_i^2]/a_i^2 with a summability trend flag.
WeightReport weight_sequence_check(const std::vector<double>& second_moments,
                                   const std::vector<double>& a);

// M_i = (sum_{j>=i} s_j)^(-1/2), made nondecreasing and >= 1. For the raw
// values, s_i/sqrt(r_i) <= 2(sqrt(r_i) - sqrt(r_{i+1})) telescopes to
// sum M_i s_i <= 2 sqrt(sum s_j). Zero tails carry the last finite weight.
std::vector<double> build_weights_M(const std::vector<double>& s);

// Consecutive index blocks [a_{n-1}+1, a_n] of lengths l_n >= m+1.
struct BlockingScheme {
    size_t m = 0;
    std::vector<size_t> a;  // endpoints, a[0] = 0
    std::vector<size_t> l;  // l[n-1] = block length l_n
    std::vector<double> M;  // the weights the construction consulted

    size_t n_blocks() const { return l.size(); }
};

// Greedy construction: l_n = max(m+1, l_{n-1}, floor of the weight cap
// min(M_{a_{n-1}+1}^(1/4), n^(1/4))), blocks appended until a_n >= N.
BlockingScheme blocking_scheme(size_t m, const std::vector<double>& M, size_t N);

// Length monotonicity, endpoint arithmetic, and the weight cap past the
// forced-minimum prefix. Throws InvariantViolation.
void assert_blocking_invariants(const BlockingScheme& scheme);

enum class BlockKind { Z, W };

// Index window of block n, 1-based inclusive; W windows are empty for m=0
// (second < first).
std::pair<size_t, size_t> block_range(const BlockingScheme& scheme, BlockKind kind,
                                      size_t n);

// Payoff summing Y_i = X_i^(i) over the block window, as a functional of
// the first a_n observables.
Functional block_sum_functionals(const BlockingScheme& scheme, BlockKind kind,
                                 size_t n);

// Same block sum with the window shifted to start at observable 1; the
// truncation levels keep their absolute indices. Under stationarity this
// has the distribution of the in-place block at a fraction of the horizon.
Functional shifted_block_functional(const BlockingScheme& scheme, BlockKind kind,
                                    size_t n);

// Greedy Wittmann subsequence: n_{k+1} = smallest n with a_n >= lambda *
// a_{n_k}; certifies a_{n_{k+1}} <= lambda^3 * a_{n_k + 1} for every step.
// Indices are 1-based.
std::vector<size_t> geometric_subsequence(const std::vector<double>& a,
                                          double lambda);

} // namespace slln::sequences
