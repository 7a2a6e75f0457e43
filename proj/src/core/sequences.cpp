#include "sequences.hpp"

#include <algorithm>
#include <cmath>

namespace slln::sequences {

SequenceModel make_iid_model(AmbiguitySet driver) {
    return SequenceModel::iid(std::move(driver));
}

SequenceModel make_moving_window_model(size_t m, AmbiguitySet driver,
                                       WindowSpec window) {
    return SequenceModel::moving_window(m, std::move(driver), window);
}

namespace {

// Increments of a nondecreasing sequence over doubling windows
// [2^j, 2^{j+1}]; values indexed 1-based via vals[i-1].
std::vector<double> doubling_increments(const std::vector<double>& vals) {
    std::vector<double> out;
    for (size_t lo = 1; 2 * lo <= vals.size(); lo *= 2)
        out.push_back(vals[2 * lo - 1] - vals[lo - 1]);
    return out;
}

// True when the increments decayed to at most half of the first nonzero
// one. Successive ratios sit exactly at the boundary for 1/n^2-type tails,
// so the trend is judged across the whole range instead.
bool increments_halved(const std::vector<double>& increments) {
    double first = 0.0;
    for (double d : increments) {
        if (d > 0.0) {
            first = d;
            break;
        }
    }
    if (first == 0.0) return true;
    return increments.back() <= 0.5 * first;
}

} // namespace

WeightReport weight_sequence_check(const std::vector<double>& second_moments,
                                   const std::vector<double>& a) {
    require(!a.empty() && second_moments.size() == a.size(), ErrorCode::BadArgument,
            "need matching nonempty moment and weight lists");
    require(a.front() >= 1.0, ErrorCode::NotMonotone, "a_1 must be >= 1");
    require(std::is_sorted(a.begin(), a.end()), ErrorCode::NotMonotone,
            "a must be nondecreasing");
    for (double sm : second_moments)
        require(sm >= 0.0, ErrorCode::BadArgument, "second moment below zero");

    WeightReport report;
    report.partial_sums.reserve(a.size());
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        acc += second_moments[i] / (a[i] * a[i]);
        report.partial_sums.push_back(acc);
    }
    report.cauchy_flag = increments_halved(doubling_increments(report.partial_sums));
    return report;
}

std::vector<double> build_weights_M(const std::vector<double>& s) {
    require(!s.empty(), ErrorCode::BadArgument, "empty weight input");
    for (double v : s)
        require(v >= 0.0 && std::isfinite(v), ErrorCode::BadArgument,
                "weight terms must be finite and nonnegative");

    // Partial sums of s must have halved across the doubling range,
    // otherwise the suffix sums do not shrink and no M_i ladder exists.
    if (s.size() >= 4) {
        std::vector<double> partial(s.size());
        double acc = 0.0;
        for (size_t i = 0; i < s.size(); ++i) {
            acc += s[i];
            partial[i] = acc;
        }
        require(increments_halved(doubling_increments(partial)),
                ErrorCode::TailNotSummable, "weight series shows no decay");
    }

    std::vector<double> suffix(s.size() + 1, 0.0);
    for (size_t i = s.size(); i-- > 0;) suffix[i] = suffix[i + 1] + s[i];

    std::vector<double> M(s.size());
    double last = 1.0;
    for (size_t i = 0; i < s.size(); ++i) {
        const double raw =
            suffix[i] > 0.0 ? 1.0 / std::sqrt(suffix[i]) : last;
        last = std::max({raw, last, 1.0});
        M[i] = last;
    }
    return M;
}

BlockingScheme blocking_scheme(size_t m, const std::vector<double>& M, size_t N) {
    require(N >= 1, ErrorCode::HorizonTooSmall, "horizon must be positive");
    require(!M.empty(), ErrorCode::BadArgument, "empty weight list");
    require(std::is_sorted(M.begin(), M.end()), ErrorCode::NotMonotone,
            "weights must be nondecreasing");
    require(M.front() >= 1.0, ErrorCode::BadArgument, "weights must be >= 1");

    BlockingScheme scheme;
    scheme.m = m;
    scheme.M = M;
    scheme.a.push_back(0);

    size_t prev_l = 0;
    while (scheme.a.back() < N) {
        const size_t idx = scheme.a.back() + 1;
        require(idx <= M.size(), ErrorCode::HorizonTooSmall,
                "weights run out before the horizon is covered");
        const double n_real = static_cast<double>(scheme.l.size() + 1);
        const double cap =
            std::min(std::pow(M[idx - 1], 0.25), std::pow(n_real, 0.25));
        const auto governed = static_cast<size_t>(std::floor(cap + 1e-9));
        const size_t ln = std::max({m + 1, prev_l, governed});
        scheme.l.push_back(ln);
        scheme.a.push_back(scheme.a.back() + ln);
        prev_l = ln;
    }
    assert_blocking_invariants(scheme);
    return scheme;
}

void assert_blocking_invariants(const BlockingScheme& scheme) {
    require(scheme.a.size() == scheme.l.size() + 1 && scheme.a.front() == 0,
            ErrorCode::InvariantViolation, "endpoint list shape is wrong");

    // Forced prefix: blocks where the minimum length or monotone clipping
    // overrides the weight cap. The cap constraint applies past it.
    size_t forced_end = 0;
    for (size_t n = 1; n <= scheme.n_blocks(); ++n) {
        const size_t ln = scheme.l[n - 1];
        require(ln >= scheme.m + 1, ErrorCode::InvariantViolation,
                "block shorter than m+1");
        require(n == 1 || ln >= scheme.l[n - 2], ErrorCode::InvariantViolation,
                "block lengths decrease");
        require(scheme.a[n] == scheme.a[n - 1] + ln, ErrorCode::InvariantViolation,
                "endpoints do not accumulate the lengths");
        const size_t idx = scheme.a[n - 1] + 1;
        require(idx <= scheme.M.size(), ErrorCode::InvariantViolation,
                "weight list shorter than the scheme");
        const double cap = std::min(std::pow(scheme.M[idx - 1], 0.25),
                                    std::pow(static_cast<double>(n), 0.25));
        if (static_cast<double>(ln) > std::floor(cap + 1e-9)) forced_end = n;
    }
    for (size_t n = forced_end + 1; n <= scheme.n_blocks(); ++n) {
        const size_t idx = scheme.a[n - 1] + 1;
        const double cap = std::min(std::pow(scheme.M[idx - 1], 0.25),
                                    std::pow(static_cast<double>(n), 0.25));
        require(static_cast<double>(scheme.l[n - 1]) <= cap + 1e-9,
                ErrorCode::InvariantViolation,
                "block length exceeds the weight cap past the forced prefix");
    }
}

std::pair<size_t, size_t> block_range(const BlockingScheme& scheme, BlockKind kind,
                                      size_t n) {
    require(n >= 1 && n <= scheme.n_blocks(), ErrorCode::IndexOutOfScheme,
            "block index outside the scheme");
    const size_t lo = scheme.a[n - 1] + 1;
    const size_t hi = scheme.a[n];
    if (kind == BlockKind::Z) return {lo, hi - scheme.m};
    return {hi - scheme.m + 1, hi};
}

namespace {

Functional window_sum(const BlockingScheme& scheme, BlockKind kind, size_t n,
                      bool shifted) {
    const auto [lo, hi] = block_range(scheme, kind, n);
    const size_t horizon =
        shifted ? (hi >= lo ? hi - lo + 1 : 1) : scheme.a[n];
    const size_t base = shifted ? lo - 1 : 0;  // obs index offset
    std::string label = kind == BlockKind::Z ? "Z_" : "W_";
    label += std::to_string(n);
    if (shifted) label += " shifted";

    return fn_custom(horizon, label, [lo, hi, base](const std::vector<double>& x) {
        double acc = 0.0;
        for (size_t i = lo; i <= hi; ++i) {
            const double level = static_cast<double>(i);
            acc += std::clamp(x[i - 1 - base], -level, level);
        }
        return acc;
    });
}

} // namespace

Functional block_sum_functionals(const BlockingScheme& scheme, BlockKind kind,
                                 size_t n) {
    return window_sum(scheme, kind, n, false);
}

Functional shifted_block_functional(const BlockingScheme& scheme, BlockKind kind,
                                    size_t n) {
    return window_sum(scheme, kind, n, true);
}

std::vector<size_t> geometric_subsequence(const std::vector<double>& a,
                                          double lambda) {
    require(lambda > 1.0, ErrorCode::BadArgument, "lambda must exceed 1");
    require(!a.empty(), ErrorCode::BadArgument, "empty sequence");
    require(a.front() > 0.0, ErrorCode::BadArgument, "a_1 must be positive");
    require(std::is_sorted(a.begin(), a.end()), ErrorCode::NotMonotone,
            "a must be nondecreasing");

    const double lam3 = lambda * lambda * lambda;
    std::vector<size_t> ks{1};
    while (true) {
        const size_t nk = ks.back();
        const double target = lambda * a[nk - 1];
        size_t next = 0;
        for (size_t n = nk + 1; n <= a.size(); ++n) {
            if (a[n - 1] >= target) {
                next = n;
                break;
            }
        }
        if (next == 0) break;
        require(a[next - 1] <= lam3 * a[nk] + 1e-12 * lam3 * a[nk],
                ErrorCode::BoundViolated,
                "a_{n_{k+1}} = " + std::to_string(a[next - 1]) +
                    " exceeds lambda^3 * a_{n_k+1} = " +
                    std::to_string(lam3 * a[nk]));
        ks.push_back(next);
    }
    require(ks.size() >= 2, ErrorCode::HorizonExhausted,
            "horizon too short for one geometric step");
    return ks;
}

} // namespace slln::sequences
