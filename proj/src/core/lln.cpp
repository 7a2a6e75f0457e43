#include "lln.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "functional.hpp"
#include "sequences.hpp"

namespace slln::lln {

namespace {

// Doubling ladder n, n/2, n/4, ... in ascending order.
std::vector<size_t> halving_ladder(size_t n) {
    std::vector<size_t> out;
    for (size_t k = n; k >= 1; k /= 2) {
        out.push_back(k);
        if (k == 1) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

bool deltas_converged(const std::vector<double>& deltas) {
    double first = 0.0;
    for (double d : deltas)
        if (d > 0.0) {
            first = d;
            break;
        }
    if (first == 0.0) return true;
    return deltas.back() <= std::max(1e-9, 0.25 * first);
}

size_t thread_count(size_t jobs) {
    size_t n = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SLLN_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) n = static_cast<size_t>(v);
    }
    if (n == 0) n = 1;
    return std::min(n, std::max<size_t>(1, jobs));
}

double median_of(std::vector<double> v) {
    const size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + mid, v.end());
    double hi = v[mid];
    if (v.size() % 2 == 0) {
        std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
        return 0.5 * (v[mid - 1] + hi);
    }
    return hi;
}

// Classical mean of X_1 when every driver coordinate follows one law.
double law_observable_mean(const SequenceModel& model, size_t law) {
    const auto& table = model.obs_table();
    const auto& probs = model.driver().law_probs[law];
    const size_t s = model.support_size();
    const size_t w = model.m() + 1;
    double mean = 0.0;
    for (size_t cell = 0; cell < table.size(); ++cell) {
        double p = 1.0;
        size_t rest = cell;
        for (size_t j = 0; j < w; ++j) {
            p *= probs[rest % s];
            rest /= s;
        }
        mean += p * table[cell];
    }
    return mean;
}

Functional fn_square_first() { return fn_power(fn_sum(1), 2); }

void validate_checkpoints(const std::vector<size_t>& cps, size_t n) {
    require(!cps.empty(), ErrorCode::BadArgument, "no checkpoints given");
    require(cps.front() >= 1, ErrorCode::BadArgument, "checkpoints start at 1");
    for (size_t i = 0; i + 1 < cps.size(); ++i)
        require(cps[i] < cps[i + 1], ErrorCode::BadArgument,
                "checkpoints must increase");
    require(cps.back() <= n, ErrorCode::BadArgument,
            "checkpoint beyond horizon");
}

} // namespace

MeanBoundsSequence mean_bounds_sequence(const SequenceModel& model, size_t N,
                                        const engine::EngineLimits& limits) {
    require(N >= 1, ErrorCode::BadArgument, "empty horizon");
    MeanBoundsSequence out;
    const auto upper = engine::upper_partial_sums(model, N, 1.0, limits);
    const auto neg = engine::upper_partial_sums(model, N, -1.0, limits);
    out.n_values.resize(N);
    out.upper_means.resize(N);
    out.lower_means.resize(N);
    for (size_t n = 1; n <= N; ++n) {
        out.n_values[n - 1] = n;
        out.upper_means[n - 1] = upper[n - 1] / static_cast<double>(n);
        out.lower_means[n - 1] = -neg[n - 1] / static_cast<double>(n);
    }
    const auto one = engine::expectation_pair(model, fn_sum(1), limits);
    out.bracket_low = one.lower;
    out.bracket_high = one.upper;
    return out;
}

MuLimitEstimate estimate_mu_limits(const MeanBoundsSequence& seq) {
    const size_t N = seq.n_values.size();
    require(N >= 8, ErrorCode::HorizonTooSmall,
            "trend needs at least 8 horizon values");
    MuLimitEstimate out;
    out.mu_bar = seq.upper_means.back();
    out.mu_under = seq.lower_means.back();
    const auto ladder = halving_ladder(N);
    for (size_t i = 0; i + 1 < ladder.size(); ++i) {
        const size_t lo = ladder[i] - 1, hi = ladder[i + 1] - 1;
        out.upper_deltas.push_back(
            std::abs(seq.upper_means[hi] - seq.upper_means[lo]));
        out.lower_deltas.push_back(
            std::abs(seq.lower_means[hi] - seq.lower_means[lo]));
    }
    out.upper_converged = deltas_converged(out.upper_deltas);
    out.lower_converged = deltas_converged(out.lower_deltas);
    return out;
}

KolmogorovReport kolmogorov_report(const SequenceModel& model, size_t n, double x,
                                   double delta, double p,
                                   const engine::EngineLimits& limits) {
    require(n >= 1, ErrorCode::BadArgument, "empty horizon");
    require(std::isfinite(x) && x > 0.0, ErrorCode::BadArgument,
            "threshold x must be positive");
    require(std::isfinite(delta) && delta > 0.0 && delta <= 1.0,
            ErrorCode::BadArgument, "delta must lie in (0, 1]");
    require(std::isfinite(p) && p > 0.0, ErrorCode::BadArgument,
            "moment order p must be positive");

    KolmogorovReport rep;
    const double sq1 = engine::upper_expectation(model, fn_square_first(), limits);
    rep.second_moment_sum = static_cast<double>(n) * sq1;

    const auto upper_sums = engine::upper_partial_sums(model, n, 1.0, limits);
    auto lower_sums = engine::upper_partial_sums(model, n, -1.0, limits);
    for (double& v : lower_sums) v = -v;

    engine::MaxDevEventSpec up_ev{n, upper_sums, x, false};
    engine::MaxDevEventSpec lo_ev{n, lower_sums, x, false};
    const double up_lhs = engine::upper_capacity_max_dev(model, up_ev, false, limits);
    const double lo_lhs = engine::lower_capacity_max_dev(model, lo_ev, limits);

    const double rhs =
        rep.second_moment_sum > 0.0 ? rep.second_moment_sum / (x * x) : 0.0;
    auto fill = [&](InequalityReport& r, const char* side, double lhs) {
        r.descriptor = std::string(side) + " capacity of running deviation >= " +
                       std::to_string(x) + " at n = " + std::to_string(n);
        r.lhs = lhs;
        r.rhs = rhs;
        r.ratio = rhs > 0.0
                      ? lhs / rhs
                      : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        r.pass = lhs <= rhs + 1e-12;
    };
    fill(rep.upper, "upper", up_lhs);
    fill(rep.lower, "lower", lo_lhs);

    auto minimal_constant = [&](double lhs) {
        if (rep.second_moment_sum > 0.0)
            return lhs * x * x / rep.second_moment_sum;
        return lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    };
    rep.c_hat_upper = minimal_constant(up_lhs);
    rep.c_hat_lower = minimal_constant(lo_lhs);

    rep.exp_bound =
        std::pow(delta, -p) * std::pow(x, -p) * rep.second_moment_sum +
        std::exp(-x * x / (2.0 * (1.0 + delta) * rep.second_moment_sum));

    rep.classical = model.driver().n_laws() == 1;
    if (rep.classical) {
        require(rep.c_hat_upper <= 1.0 + 1e-12, ErrorCode::AssertionFailed,
                "classical maximal inequality constant exceeds 1");
        require(rep.c_hat_lower <= 1.0 + 1e-12, ErrorCode::AssertionFailed,
                "classical maximal inequality constant exceeds 1");
    }
    return rep;
}

InequalityReport lower_capacity_maximal_check(const SequenceModel& model, size_t n,
                                              const std::vector<double>& mus,
                                              double x,
                                              const engine::EngineLimits& limits) {
    require(n >= 1, ErrorCode::BadArgument, "empty horizon");
    require(mus.size() == n, ErrorCode::BadArgument,
            "need one center per coordinate");
    require(std::isfinite(x) && x > 0.0, ErrorCode::BadArgument,
            "threshold x must be positive");
    const auto one = engine::expectation_pair(model, fn_sum(1), limits);
    for (double mu : mus)
        require(mu >= one.lower - 1e-12 && mu <= one.upper + 1e-12,
                ErrorCode::MuOutOfBand,
                "center outside the one-coordinate envelope bracket");

    std::vector<double> centers(n);
    double cum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        cum += mus[i];
        centers[i] = cum;
    }
    engine::MaxDevEventSpec ev{n, std::move(centers), x, true};
    const double lhs = engine::lower_capacity_max_dev(model, ev, limits);

    const double sq1 = engine::upper_expectation(model, fn_square_first(), limits);
    const double rhs = 2.0 * static_cast<double>(n) * sq1 / (x * x);

    InequalityReport r;
    r.descriptor = "lower capacity of centered running |deviation| >= " +
                   std::to_string(x) + " at n = " + std::to_string(n) +
                   " vs explicit constant 2";
    r.lhs = lhs;
    r.rhs = rhs;
    r.ratio = rhs > 0.0
                  ? lhs / rhs
                  : (lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    r.pass = lhs <= rhs + 1e-12;
    return r;
}

std::vector<PathStats> simulate_paths(const SequenceModel& model,
                                      const engine::AdversaryStrategy& strategy,
                                      size_t n, size_t n_paths,
                                      const std::vector<size_t>& checkpoints,
                                      uint64_t seed) {
    require(n >= 1, ErrorCode::BadArgument, "empty horizon");
    require(n_paths >= 1, ErrorCode::BadArgument, "no paths requested");
    validate_checkpoints(checkpoints, n);

    const auto& laws = model.driver().laws;
    const size_t n_laws = laws.size();
    const size_t m = model.m();
    const size_t T = model.drivers_for(n);

    std::vector<PathStats> out(n_paths);
    std::atomic<size_t> next{0};

    auto worker = [&]() {
        std::vector<double> history;
        history.reserve(T);
        for (;;) {
            const size_t p = next.fetch_add(1);
            if (p >= n_paths) return;
            RngStream draws(seed, p, 0);
            RngStream aux(seed, p, 1);
            history.clear();

            PathStats ps;
            ps.seed = seed;
            ps.path_index = p;
            ps.strategy = strategy.id();
            ps.checkpoints = checkpoints;
            ps.running_means.reserve(checkpoints.size());
            ps.running_sups.reserve(checkpoints.size());
            ps.running_max_devs.reserve(checkpoints.size());

            double S = 0.0, run_sup = 0.0, run_maxdev = 0.0;
            size_t ci = 0;
            for (size_t t = 1; t <= T; ++t) {
                const engine::AdversaryStrategy::Ctx ctx{t, history, &aux};
                const size_t law = strategy.select(ctx) % n_laws;
                history.push_back(laws[law].sample(draws));
                if (t < m + 1) continue;
                const size_t k = t - m;
                S += model.window_of_values(&history[k - 1], m + 1);
                const double dev = std::abs(S);
                run_maxdev = std::max(run_maxdev, dev);
                run_sup = std::max(run_sup, dev / static_cast<double>(k));
                if (ci < checkpoints.size() && k == checkpoints[ci]) {
                    ps.running_means.push_back(S / static_cast<double>(k));
                    ps.running_sups.push_back(run_sup);
                    ps.running_max_devs.push_back(run_maxdev);
                    ++ci;
                }
            }
            out[p] = std::move(ps);
        }
    };

    const size_t nt = thread_count(n_paths);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nt);
        for (size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

ClusterReport cluster_set_experiment(const SequenceModel& model, double a, double b,
                                     double epoch_growth, size_t n, uint64_t seed,
                                     const engine::EngineLimits& limits) {
    require(model.exact_capable(), ErrorCode::NotExactCapable,
            "cluster targets need exact envelope means");
    require(std::isfinite(a) && std::isfinite(b), ErrorCode::BadArgument,
            "targets must be finite");
    require(a <= b, ErrorCode::TargetOrderError, "need a <= b");
    require(std::isfinite(epoch_growth) && epoch_growth >= 1.0,
            ErrorCode::BadArgument, "epoch growth must be >= 1");
    require(n >= 3, ErrorCode::HorizonTooSmall, "need room for three epochs");

    const auto one = engine::expectation_pair(model, fn_sum(1), limits);
    require(a >= one.lower - 1e-9 && b <= one.upper + 1e-9,
            ErrorCode::TargetOutOfBracket,
            "targets must sit inside the envelope bracket");

    const size_t n_laws = model.driver().n_laws();
    size_t lo_law = 0, hi_law = 0;
    double lo_mean = law_observable_mean(model, 0), hi_mean = lo_mean;
    for (size_t l = 1; l < n_laws; ++l) {
        const double mean = law_observable_mean(model, l);
        if (mean < lo_mean) lo_mean = mean, lo_law = l;
        if (mean > hi_mean) hi_mean = mean, hi_law = l;
    }

    // Mixing coin per target; degenerate spread only admits targets at the
    // common mean.
    auto mix_for = [&](double target) {
        const double spread = hi_mean - lo_mean;
        if (spread <= 1e-12) {
            require(std::abs(target - lo_mean) <= 1e-9,
                    ErrorCode::TargetOutOfBracket,
                    "all laws share one mean; target must equal it");
            return 0.0;
        }
        return std::min(1.0, std::max(0.0, (target - lo_mean) / spread));
    };

    // Three epochs targeting a, b, a with geometric lengths; the last epoch
    // absorbs the remainder so a low-mean regime closes the horizon.
    const double g = epoch_growth;
    const size_t L0 = std::max<size_t>(1, static_cast<size_t>(
                                              static_cast<double>(n) /
                                              (1.0 + g + g * g)));
    const size_t l1 = std::max<size_t>(1, static_cast<size_t>(
                                              std::llround(L0 * g)));
    require(L0 + l1 < n, ErrorCode::HorizonTooSmall,
            "epochs do not fit the horizon");
    const std::array<size_t, 3> ends{L0, L0 + l1, n};
    const std::array<double, 3> lambdas{mix_for(a), mix_for(b), mix_for(a)};
    const std::array<bool, 3> is_b{false, true, false};

    ClusterReport rep;
    rep.mu_bar = one.upper;
    rep.mu_under = one.lower;
    rep.strategy = "epoch_mix(a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                   ",growth=" + std::to_string(epoch_growth) + ")";
    rep.epoch_ends.assign(ends.begin(), ends.end());

    const size_t grid_points =
        1 + static_cast<size_t>(std::floor((b - a) / 0.02 + 1e-9));
    rep.grid.resize(grid_points);
    rep.covered.assign(grid_points, 0);
    for (size_t j = 0; j < grid_points; ++j) rep.grid[j] = a + 0.02 * j;

    const auto& laws = model.driver().laws;
    const size_t m = model.m();
    const size_t T = model.drivers_for(n);
    RngStream draws(seed, 0, 0);
    RngStream aux(seed, 0, 1);

    std::vector<double> history;
    history.reserve(T);
    double S = 0.0;
    double limsup_est = -std::numeric_limits<double>::infinity();
    double liminf_est = std::numeric_limits<double>::infinity();
    size_t epoch = 0;
    rep.epoch_end_means.resize(3, 0.0);

    auto epoch_of_obs = [&](size_t k) {
        size_t e = 0;
        while (k > ends[e]) ++e;
        return e;
    };

    for (size_t t = 1; t <= T; ++t) {
        const size_t k_t = t > m ? std::min(t - m, n) : 1;
        epoch = epoch_of_obs(k_t);
        const size_t law = aux.next_u01() < lambdas[epoch] ? hi_law : lo_law;
        history.push_back(laws[law].sample(draws));
        if (t < m + 1) continue;

        const size_t k = t - m;
        S += model.window_of_values(&history[k - 1], m + 1);
        const double mean = S / static_cast<double>(k);
        const size_t e = epoch_of_obs(k);

        if (k >= 50) {
            const double lo = mean - 0.02 - 1e-12, hi = mean + 0.02 + 1e-12;
            const auto j0 = static_cast<long long>(std::ceil((lo - a) / 0.02));
            const auto j1 = static_cast<long long>(std::floor((hi - a) / 0.02));
            for (long long j = std::max(0LL, j0);
                 j <= std::min<long long>(grid_points - 1, j1); ++j)
                rep.covered[static_cast<size_t>(j)] = 1;
        }

        const size_t e_start = e == 0 ? 1 : ends[e - 1] + 1;
        const size_t e_len = ends[e] - e_start + 1;
        if (k >= ends[e] - e_len / 10) {
            if (is_b[e])
                limsup_est = std::max(limsup_est, mean);
            else
                liminf_est = std::min(liminf_est, mean);
        }
        if (k == ends[e]) rep.epoch_end_means[e] = mean;
    }

    rep.limsup_estimate = limsup_est;
    rep.liminf_estimate = liminf_est;
    size_t hit = 0;
    for (uint8_t c : rep.covered) hit += c;
    rep.coverage = static_cast<double>(hit) / static_cast<double>(grid_points);
    return rep;
}

DivergenceReport divergence_experiment(const SequenceModel& model,
                                       size_t n_checkpoints, size_t n_paths,
                                       uint64_t seed) {
    require(n_checkpoints >= 2, ErrorCode::BadArgument,
            "need at least the two endpoint checkpoints");
    require(n_paths >= 1, ErrorCode::BadArgument, "no paths requested");
    require(model.m() == 0 && model.window().kind == WindowKind::Identity,
            ErrorCode::BadArgument,
            "divergence diagnostics need the identity observable");

    const auto& laws = model.driver().laws;
    size_t heavy = laws.size();
    for (size_t l = 0; l < laws.size() && heavy == laws.size(); ++l)
        if (!laws[l].has_finite_mean()) heavy = l;
    for (size_t l = 0; l < laws.size() && heavy == laws.size(); ++l)
        if (!laws[l].finite_support()) heavy = l;
    require(heavy < laws.size(), ErrorCode::NoHeavyTailLaw,
            "every law has bounded support");

    constexpr size_t n_lo = 1000, n_hi = 1000000;
    std::vector<size_t> cps;
    for (size_t j = 0; j < n_checkpoints; ++j) {
        const double e = 3.0 + 3.0 * static_cast<double>(j) /
                                   static_cast<double>(n_checkpoints - 1);
        const auto cp = static_cast<size_t>(std::llround(std::pow(10.0, e)));
        if (cps.empty() || cp > cps.back()) cps.push_back(cp);
    }
    cps.front() = n_lo;
    cps.back() = n_hi;

    size_t warm = laws.size();
    for (size_t l = 0; l < laws.size() && warm == laws.size(); ++l)
        if (laws[l].finite_support()) warm = l;
    const auto strategy =
        warm < laws.size()
            ? engine::AdversaryStrategy::epoch_schedule({{n_lo, warm}, {1, heavy}})
            : engine::AdversaryStrategy::constant(heavy);

    const auto paths = simulate_paths(model, strategy, n_hi, n_paths, cps, seed);

    DivergenceReport rep;
    rep.strategy = strategy.id();
    rep.checkpoints = cps;
    rep.median_stats.resize(cps.size());
    std::vector<double> col(n_paths);
    for (size_t j = 0; j < cps.size(); ++j) {
        for (size_t p = 0; p < n_paths; ++p) col[p] = paths[p].running_sups[j];
        rep.median_stats[j] = median_of(col);
    }
    size_t grew = 0;
    for (const auto& ps : paths)
        if (ps.running_sups.back() > ps.running_sups.front()) ++grew;
    rep.growth_fraction = static_cast<double>(grew) / static_cast<double>(n_paths);

    auto tail = [&laws](double t) {
        double v = 0.0;
        for (const auto& law : laws) {
            if (law.finite_support()) {
                const auto& d = law.finite_law();
                double p = 0.0;
                for (size_t i = 0; i < d.size(); ++i)
                    if (std::abs(d.support[i]) >= t) p += d.probs[i];
                v = std::max(v, p);
            } else {
                v = std::max(v, pareto_tail(law.pareto_params(), t));
            }
        }
        return v;
    };
    auto excess = [&laws](double c) {
        double v = 0.0;
        for (const auto& law : laws) {
            if (law.finite_support()) {
                const auto& d = law.finite_law();
                double e = 0.0;
                for (size_t i = 0; i < d.size(); ++i)
                    e += d.probs[i] * std::max(std::abs(d.support[i]) - c, 0.0);
                v = std::max(v, e);
            } else {
                v = std::max(v, pareto_excess_mean(law.pareto_params(), c));
            }
        }
        return v;
    };
    const auto diag =
        capacity::finiteness_diagnostics_tails(tail, excess, 1.0, 64, 1048576.0);
    rep.diagnostics_diverging = !diag.tail_summable;
    rep.pass = rep.growth_fraction >= 0.9 && rep.diagnostics_diverging;
    return rep;
}

Theorem1Report theorem1_experiment(const std::vector<SequenceModel>& models,
                                   const std::vector<double>& a,
                                   const std::vector<size_t>& checkpoints,
                                   uint64_t seed, double epsilon,
                                   const engine::EngineLimits& limits) {
    require(!models.empty(), ErrorCode::BadArgument, "no marginal models given");
    for (const auto& model : models) {
        require(model.is_iid(), ErrorCode::BadArgument,
                "marginals must be IID models");
        require(model.exact_capable(), ErrorCode::NotExactCapable,
                "marginal envelope means must be exact");
    }
    require(std::isfinite(epsilon) && epsilon > 0.0, ErrorCode::BadArgument,
            "epsilon must be positive");
    require(!checkpoints.empty(), ErrorCode::BadArgument, "no checkpoints given");
    const size_t n = checkpoints.back();
    validate_checkpoints(checkpoints, n);
    require(a.size() >= n, ErrorCode::HorizonTooSmall,
            "weight sequence shorter than the horizon");
    for (size_t i = 0; i < n; ++i)
        require(std::isfinite(a[i]) && a[i] > 0.0, ErrorCode::BadArgument,
                "weights must be positive");

    const size_t period = models.size();
    std::vector<double> up_mean(period), lo_mean(period), up_sq(period);
    size_t max_laws = 1;
    for (size_t j = 0; j < period; ++j) {
        const auto one = engine::expectation_pair(models[j], fn_sum(1), limits);
        up_mean[j] = one.upper;
        lo_mean[j] = one.lower;
        up_sq[j] = engine::upper_expectation(models[j], fn_square_first(), limits);
        max_laws = std::max(max_laws, models[j].driver().n_laws());
    }

    std::vector<double> sm(n), weights(a.begin(), a.begin() + n);
    for (size_t i = 0; i < n; ++i) sm[i] = up_sq[i % period];
    const auto wr = sequences::weight_sequence_check(sm, weights);
    require(wr.cauchy_flag, ErrorCode::WeightConditionFails,
            "weighted second-moment series shows no summability trend");

    Theorem1Report rep;
    rep.checkpoints = checkpoints;
    rep.epsilon = epsilon;
    rep.weight_sum = wr.partial_sums.back();

    std::vector<engine::AdversaryStrategy> battery;
    battery.push_back(engine::AdversaryStrategy::constant(0));
    battery.push_back(engine::AdversaryStrategy::hook(
        "cycle_laws",
        [max_laws](const engine::AdversaryStrategy::Ctx& ctx) {
            return (ctx.t - 1) % max_laws;
        },
        true));
    battery.push_back(engine::AdversaryStrategy::hook(
        "uniform_random_law",
        [max_laws](const engine::AdversaryStrategy::Ctx& ctx) {
            const auto pick =
                static_cast<size_t>(ctx.aux->next_u01() * max_laws);
            return std::min(pick, max_laws - 1);
        },
        false));

    size_t n0 = checkpoints.front();
    for (size_t cp : checkpoints)
        if (cp >= 1000) {
            n0 = cp;
            break;
        }

    std::vector<double> history;
    history.reserve(n);
    bool all_pass = true;
    for (size_t s = 0; s < battery.size(); ++s) {
        const auto& strat = battery[s];
        RngStream draws(seed, s, 0);
        RngStream aux(seed, s, 1);
        history.clear();

        Theorem1Report::StrategyRun run;
        run.strategy = strat.id();
        double S = 0.0, cum_up = 0.0, cum_lo = 0.0;
        double max_tail = -std::numeric_limits<double>::infinity();
        double min_tail = std::numeric_limits<double>::infinity();
        size_t ci = 0;
        for (size_t i = 1; i <= n; ++i) {
            const size_t j = (i - 1) % period;
            const auto& laws = models[j].driver().laws;
            const engine::AdversaryStrategy::Ctx ctx{i, history, &aux};
            const size_t law = strat.select(ctx) % laws.size();
            const double x = laws[law].sample(draws);
            history.push_back(x);
            S += x;
            cum_up += up_mean[j];
            cum_lo += lo_mean[j];
            if (ci < checkpoints.size() && i == checkpoints[ci]) {
                const double up_stat = (S - cum_up) / weights[i - 1];
                const double lo_stat = (S - cum_lo) / weights[i - 1];
                run.upper_stats.push_back(up_stat);
                run.lower_stats.push_back(lo_stat);
                if (i >= n0) {
                    max_tail = std::max(max_tail, up_stat);
                    min_tail = std::min(min_tail, lo_stat);
                }
                ++ci;
            }
        }
        run.max_upper_tail = max_tail;
        run.min_lower_tail = min_tail;
        run.final_upper = run.upper_stats.back();
        run.final_lower = run.lower_stats.back();
        run.pass = run.final_upper <= epsilon && run.final_lower >= -epsilon;
        all_pass = all_pass && run.pass;
        rep.runs.push_back(std::move(run));
    }
    rep.pass = all_pass;
    return rep;
}

} // namespace slln::lln
