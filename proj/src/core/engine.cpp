#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <map>
#include <unordered_map>

namespace slln::engine {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Flattened exact-mode view: support indices replace values everywhere,
// the window table turns (m+1) consecutive driver indices into X_i.
struct ExactView {
    size_t s = 0;       // support size
    size_t k = 0;       // law count
    size_t m = 0;       // window memory
    size_t n = 0;       // observables
    size_t T = 0;       // driver coordinates = n + m
    size_t cells = 0;   // s^(m+1)
    size_t leaves = 0;  // s^T
    const std::vector<std::vector<double>>* probs = nullptr;
    const std::vector<double>* obs_table = nullptr;
};

ExactView exact_view(const SequenceModel& model, size_t n_obs,
                     const EngineLimits& limits, bool need_leaves) {
    require(model.exact_capable(), ErrorCode::NotExactCapable,
            "exact evaluation needs finite laws on one shared support");
    require(n_obs >= 1, ErrorCode::HorizonMismatch, "horizon must be positive");

    ExactView v;
    v.s = model.support_size();
    v.k = model.driver().n_laws();
    v.m = model.m();
    v.n = n_obs;
    v.T = model.drivers_for(n_obs);
    v.probs = &model.driver().law_probs;
    v.obs_table = &model.obs_table();
    v.cells = 1;
    for (size_t i = 0; i <= v.m; ++i) v.cells *= v.s;

    if (need_leaves) {
        size_t leaves = 1;
        for (size_t t = 0; t < v.T; ++t) {
            require(leaves <= limits.max_leaves / v.s, ErrorCode::StateSpaceCap,
                    "driver tuple space exceeds the leaf cap");
            leaves *= v.s;
        }
        v.leaves = leaves;
    }
    return v;
}

// Payoff at every driver tuple, lexicographic order, coordinate 1 most
// significant. Rolling base-s window keeps the last m+1 digits.
std::vector<double> leaf_payoffs(const ExactView& v, const Functional& phi) {
    std::vector<double> out(v.leaves);
    std::vector<size_t> digits(v.T, 0);
    std::vector<double> obs(v.n);
    const auto& table = *v.obs_table;
    size_t L = 0;
    while (true) {
        size_t full = 0;
        for (size_t t = 0; t < v.T; ++t) {
            full = (full * v.s + digits[t]) % v.cells;
            if (t >= v.m) obs[t - v.m] = table[full];
        }
        out[L] = phi.eval(obs);
        ++L;
        size_t pos = v.T;
        while (pos > 0 && ++digits[pos - 1] == v.s) digits[--pos] = 0;
        if (pos == 0) break;
    }
    return out;
}

double reduce_layers(const ExactView& v, std::vector<double>& vals) {
    const auto& probs = *v.probs;
    size_t width = vals.size();
    for (size_t t = v.T; t >= 1; --t) {
        width /= v.s;
        for (size_t p = 0; p < width; ++p) {
            double best = kNegInf;
            for (size_t j = 0; j < v.k; ++j) {
                double acc = 0.0;
                for (size_t d = 0; d < v.s; ++d)
                    acc += probs[j][d] * vals[p * v.s + d];
                if (acc > best) best = acc;
            }
            vals[p] = best;
        }
    }
    return vals[0];
}

void check_horizon(const SequenceModel& model, const Functional& phi) {
    require(phi.horizon >= 1, ErrorCode::HorizonMismatch, "empty functional");
    (void)model;
}

} // namespace

double upper_expectation(const SequenceModel& model, const Functional& phi,
                         const EngineLimits& limits) {
    check_horizon(model, phi);
    ExactView v = exact_view(model, phi.horizon, limits, true);
    std::vector<double> vals = leaf_payoffs(v, phi);
    return reduce_layers(v, vals);
}

double lower_expectation(const SequenceModel& model, const Functional& phi,
                         const EngineLimits& limits) {
    return -upper_expectation(model, fn_negate(phi), limits);
}

ExpectationPair expectation_pair(const SequenceModel& model, const Functional& phi,
                                 const EngineLimits& limits) {
    ExpectationPair pair;
    pair.upper = upper_expectation(model, phi, limits);
    pair.lower = lower_expectation(model, phi, limits);
    require(pair.lower <= pair.upper + 1e-12, ErrorCode::InvariantViolation,
            "conjugate expectation exceeds upper expectation");
    return pair;
}

namespace {

struct TreeCtx {
    const ExactView* v;
    const Functional* phi;
    std::vector<double> obs;
};

double tree_rec(TreeCtx& ctx, size_t t, size_t full) {
    const ExactView& v = *ctx.v;
    if (t > v.T) return ctx.phi->eval(ctx.obs);
    const auto& probs = *v.probs;
    double child[8];
    for (size_t d = 0; d < v.s; ++d) {
        size_t next_full = (full * v.s + d) % v.cells;
        bool emits = t >= v.m + 1;
        if (emits) ctx.obs.push_back((*v.obs_table)[next_full]);
        child[d] = tree_rec(ctx, t + 1, next_full);
        if (emits) ctx.obs.pop_back();
    }
    double best = kNegInf;
    for (size_t j = 0; j < v.k; ++j) {
        double acc = 0.0;
        for (size_t d = 0; d < v.s; ++d) acc += probs[j][d] * child[d];
        if (acc > best) best = acc;
    }
    return best;
}

} // namespace

double tree_sup_expectation(const SequenceModel& model, const Functional& phi,
                            const EngineLimits& limits) {
    check_horizon(model, phi);
    ExactView v = exact_view(model, phi.horizon, limits, true);
    require(v.s <= 8, ErrorCode::StateSpaceCap, "tree recursion supports s <= 8");
    TreeCtx ctx{&v, &phi, {}};
    ctx.obs.reserve(v.n);
    return tree_rec(ctx, 1, 0);
}

OracleResult oracle_upper_expectation(const SequenceModel& model,
                                      const Functional& phi,
                                      const EngineLimits& limits) {
    check_horizon(model, phi);
    ExactView v = exact_view(model, phi.horizon, limits, true);

    // History prefixes (internal nodes of the complete s-ary tree of depth T).
    double h_real = 0.0;
    double pw = 1.0;
    for (size_t t = 0; t < v.T; ++t) {
        h_real += pw;
        pw *= static_cast<double>(v.s);
    }
    const double count =
        v.k == 1 ? 1.0 : std::pow(static_cast<double>(v.k), h_real);
    require(count <= limits.strategy_cap, ErrorCode::StrategySpaceTooLarge,
            "adaptive strategy space has about " + std::to_string(count) +
                " elements");
    const size_t H = static_cast<size_t>(h_real);

    std::vector<double> payoff = leaf_payoffs(v, phi);

    // Per leaf: the node id and branch digit at every depth. Node ids are
    // heap order: offset(t) + base-s value of the first t digits.
    std::vector<size_t> offsets(v.T + 1, 0);
    for (size_t t = 1; t <= v.T; ++t) {
        size_t p = 1;
        for (size_t i = 0; i + 1 < t; ++i) p *= v.s;
        offsets[t] = offsets[t - 1] + p;
    }
    std::vector<uint32_t> node_of(v.leaves * v.T);
    std::vector<uint8_t> digit_of(v.leaves * v.T);
    for (size_t L = 0; L < v.leaves; ++L) {
        size_t prefix = 0;
        size_t rem = L;
        size_t scale = v.leaves;
        for (size_t t = 0; t < v.T; ++t) {
            scale /= v.s;
            size_t d = rem / scale;
            rem %= scale;
            node_of[L * v.T + t] = static_cast<uint32_t>(offsets[t] + prefix);
            digit_of[L * v.T + t] = static_cast<uint8_t>(d);
            prefix = prefix * v.s + d;
        }
    }

    const auto& probs = *v.probs;
    std::vector<uint8_t> sigma(H, 0);
    OracleResult result;
    result.value = kNegInf;
    result.n_strategies = count;

    while (true) {
        double e = 0.0;
        for (size_t L = 0; L < v.leaves; ++L) {
            double w = payoff[L];
            if (w == 0.0) continue;
            for (size_t t = 0; t < v.T; ++t)
                w *= probs[sigma[node_of[L * v.T + t]]][digit_of[L * v.T + t]];
            e += w;
        }
        if (e > result.value) {
            result.value = e;
            result.best_strategy = sigma;
        }
        // Next strategy in lexicographic order (last node fastest).
        size_t pos = H;
        while (pos > 0 && ++sigma[pos - 1] == v.k) sigma[--pos] = 0;
        if (pos == 0) break;
    }
    return result;
}

double strategy_measure_expectation(const SequenceModel& model,
                                    const AdversaryStrategy& strategy,
                                    const Functional& phi,
                                    const EngineLimits& limits) {
    check_horizon(model, phi);
    require(strategy.deterministic(), ErrorCode::NotExactCapable,
            "exact evaluation needs a deterministic strategy");
    ExactView v = exact_view(model, phi.horizon, limits, true);
    const auto& probs = *v.probs;
    const auto& support = model.driver().support;

    std::vector<double> history;
    history.reserve(v.T);
    std::vector<double> obs;
    obs.reserve(v.n);

    std::function<double(size_t, size_t)> rec = [&](size_t t, size_t full) -> double {
        if (t > v.T) return phi.eval(obs);
        const size_t j = strategy.select({t, history, nullptr});
        require(j < v.k, ErrorCode::BadArgument,
                "strategy selected law " + std::to_string(j) + " of " +
                    std::to_string(v.k));
        double acc = 0.0;
        for (size_t d = 0; d < v.s; ++d) {
            const double p = probs[j][d];
            if (p == 0.0) continue;
            size_t next_full = (full * v.s + d) % v.cells;
            history.push_back(support[d]);
            bool emits = t >= v.m + 1;
            if (emits) obs.push_back((*v.obs_table)[next_full]);
            acc += p * rec(t + 1, next_full);
            if (emits) obs.pop_back();
            history.pop_back();
        }
        return acc;
    };
    return rec(1, 0);
}

AdversaryStrategy AdversaryStrategy::constant(size_t law_index) {
    return AdversaryStrategy(
        "constant(" + std::to_string(law_index) + ")",
        [law_index](const Ctx&) { return law_index; }, true);
}

AdversaryStrategy AdversaryStrategy::epoch_schedule(
    std::vector<std::pair<size_t, size_t>> blocks) {
    require(!blocks.empty(), ErrorCode::BadArgument, "no epochs given");
    for (const auto& [len, law] : blocks)
        require(len >= 1, ErrorCode::BadArgument, "epoch length must be positive");
    std::string id = "epochs(";
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) id += ",";
        id += std::to_string(blocks[i].first) + ":" + std::to_string(blocks[i].second);
    }
    id += ")";
    return AdversaryStrategy(
        std::move(id),
        [blocks = std::move(blocks)](const Ctx& ctx) {
            size_t t = ctx.t;
            for (const auto& [len, law] : blocks) {
                if (t <= len) return law;
                t -= len;
            }
            return blocks.back().second;
        },
        true);
}

AdversaryStrategy AdversaryStrategy::table(
    std::vector<std::pair<std::vector<double>, size_t>> rules, size_t fallback) {
    std::map<std::vector<double>, size_t> lookup;
    for (auto& [hist, law] : rules) lookup.emplace(std::move(hist), law);
    return AdversaryStrategy(
        "table(" + std::to_string(lookup.size()) + " rules)",
        [lookup = std::move(lookup), fallback](const Ctx& ctx) {
            const auto it = lookup.find(ctx.history);
            return it == lookup.end() ? fallback : it->second;
        },
        true);
}

AdversaryStrategy AdversaryStrategy::hook(std::string id, Policy policy,
                                          bool deterministic) {
    return AdversaryStrategy(std::move(id), std::move(policy), deterministic);
}

double upper_additive(const SequenceModel& model, size_t n,
                      const std::function<double(size_t, double)>& h,
                      const EngineLimits& limits, DpStats* stats) {
    ExactView v = exact_view(model, n, limits, false);
    const auto& probs = *v.probs;
    const auto& table = *v.obs_table;
    const size_t wcount = v.cells / v.s;  // s^m
    require(v.cells <= limits.max_states, ErrorCode::StateSpaceCap,
            "window state space exceeds the cap");

    std::vector<double> next(wcount, 0.0);
    std::vector<double> cur;
    for (size_t t = v.T; t >= 1; --t) {
        const bool emits = t >= v.m + 1;
        size_t lt = std::min(t - 1, v.m);
        size_t states = 1;
        for (size_t i = 0; i < lt; ++i) states *= v.s;
        cur.assign(states, 0.0);
        for (size_t w = 0; w < states; ++w) {
            double best = kNegInf;
            for (size_t j = 0; j < v.k; ++j) {
                double acc = 0.0;
                for (size_t d = 0; d < v.s; ++d) {
                    const size_t grown = w * v.s + d;
                    if (emits) {
                        acc += probs[j][d] *
                               (h(t - v.m, table[grown]) + next[grown % wcount]);
                    } else {
                        acc += probs[j][d] * next[grown];
                    }
                }
                if (acc > best) best = acc;
            }
            cur[w] = best;
            if (stats) stats->value_evals += v.k * v.s;
        }
        if (stats) stats->states += states;
        next = std::move(cur);
    }
    return next[0];
}

std::vector<double> upper_partial_sums(const SequenceModel& model, size_t N,
                                       double sign, const EngineLimits& limits,
                                       DpStats* stats) {
    require(N >= 1, ErrorCode::BadArgument, "need at least one horizon");
    ExactView v = exact_view(model, 1, limits, false);
    const auto& probs = *v.probs;
    const auto& table = *v.obs_table;
    const size_t wcount = v.cells / v.s;
    require(v.cells <= limits.max_states, ErrorCode::StateSpaceCap,
            "window state space exceeds the cap");

    // U[w]: value with the window filled as w and rho observables left; the
    // recursion is time-homogeneous so one ladder serves every horizon.
    std::vector<double> U(wcount, 0.0), nextU(wcount);
    std::vector<double> out(N);

    // Completes the first m adaptive driver picks on top of U.
    std::function<double(size_t, size_t)> prefix = [&](size_t depth,
                                                       size_t w) -> double {
        if (depth == v.m) return U[w];
        double best = kNegInf;
        for (size_t j = 0; j < v.k; ++j) {
            double acc = 0.0;
            for (size_t d = 0; d < v.s; ++d) acc += probs[j][d] * prefix(depth + 1, w * v.s + d);
            if (acc > best) best = acc;
        }
        return best;
    };

    for (size_t rho = 1; rho <= N; ++rho) {
        for (size_t w = 0; w < wcount; ++w) {
            double best = kNegInf;
            for (size_t j = 0; j < v.k; ++j) {
                double acc = 0.0;
                for (size_t d = 0; d < v.s; ++d) {
                    const size_t full = w * v.s + d;
                    acc += probs[j][d] * (sign * table[full] + U[full % wcount]);
                }
                if (acc > best) best = acc;
            }
            nextU[w] = best;
            if (stats) stats->value_evals += v.k * v.s;
        }
        std::swap(U, nextU);
        if (stats) stats->states += wcount;
        out[rho - 1] = prefix(0, 0);
    }
    return out;
}

namespace {

struct DevKey {
    uint32_t t;
    uint32_t w;
    uint64_t sbits;

    bool operator==(const DevKey& o) const {
        return t == o.t && w == o.w && sbits == o.sbits;
    }
};

struct DevKeyHash {
    size_t operator()(const DevKey& key) const {
        uint64_t h = mix64(key.sbits ^ (uint64_t{key.t} << 32) ^ key.w);
        return static_cast<size_t>(h);
    }
};

uint64_t bits_of(double x) {
    uint64_t b;
    std::memcpy(&b, &x, sizeof(b));
    return b;
}

struct DevCtx {
    const ExactView* v;
    const MaxDevEventSpec* ev;
    bool complement;
    size_t max_states;
    std::unordered_map<DevKey, double, DevKeyHash> memo;
    DpStats* stats;
};

// States with the hit flag already set collapse: the continuation value is 1
// (or 0 for the complement) under every strategy, so only flag-clear states
// are memoized.
double dev_rec(DevCtx& ctx, size_t t, size_t w, double S) {
    const ExactView& v = *ctx.v;
    if (t > v.T) return ctx.complement ? 1.0 : 0.0;

    const DevKey key{static_cast<uint32_t>(t), static_cast<uint32_t>(w), bits_of(S)};
    if (const auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;
    require(ctx.memo.size() < ctx.max_states, ErrorCode::StateSpaceCap,
            "deviation DP exceeded the state cap");

    const auto& probs = *v.probs;
    const bool emits = t >= v.m + 1;
    const size_t wcount = v.cells / v.s;
    double child[8];
    for (size_t d = 0; d < v.s; ++d) {
        const size_t grown = w * v.s + d;
        if (!emits) {
            child[d] = dev_rec(ctx, t + 1, grown, S);
            continue;
        }
        const double S2 = S + (*v.obs_table)[grown];
        double dev = S2 - ctx.ev->centers[t - v.m - 1];
        if (ctx.ev->absolute) dev = std::fabs(dev);
        if (dev >= ctx.ev->x) {
            child[d] = ctx.complement ? 0.0 : 1.0;
        } else {
            child[d] = dev_rec(ctx, t + 1, grown % wcount, S2);
        }
    }
    double best = kNegInf;
    for (size_t j = 0; j < v.k; ++j) {
        double acc = 0.0;
        for (size_t d = 0; d < v.s; ++d) acc += probs[j][d] * child[d];
        if (acc > best) best = acc;
    }
    if (ctx.stats) ctx.stats->value_evals += v.k * v.s;
    ctx.memo.emplace(key, best);
    return best;
}

} // namespace

double upper_capacity_max_dev(const SequenceModel& model, const MaxDevEventSpec& ev,
                              bool complement, const EngineLimits& limits,
                              DpStats* stats) {
    require(ev.n >= 1, ErrorCode::BadArgument, "event needs a positive horizon");
    require(ev.centers.empty() || ev.centers.size() == ev.n, ErrorCode::BadArgument,
            "centers must be empty or one per prefix");
    ExactView v = exact_view(model, ev.n, limits, false);
    require(v.s <= 8, ErrorCode::StateSpaceCap, "deviation DP supports s <= 8");

    MaxDevEventSpec filled = ev;
    if (filled.centers.empty()) filled.centers.assign(ev.n, 0.0);

    DevCtx ctx{&v, &filled, complement, limits.max_states, {}, stats};
    const double value = dev_rec(ctx, 1, 0, 0.0);
    if (stats) stats->states = ctx.memo.size();
    return value;
}

double lower_capacity_max_dev(const SequenceModel& model, const MaxDevEventSpec& ev,
                              const EngineLimits& limits, DpStats* stats) {
    return 1.0 - upper_capacity_max_dev(model, ev, true, limits, stats);
}

} // namespace slln::engine
