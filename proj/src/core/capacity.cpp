#include "capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace slln::capacity {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Functional indicator(const EventPredicate& ev) {
    auto pred = ev.pred;
    return fn_custom(ev.n, "1{" + ev.label + "}",
                     [pred](const std::vector<double>& x) {
                         return pred(x) ? 1.0 : 0.0;
                     });
}

// Ratio test on the increments of a nondecreasing sequence sampled at
// doubling indices: the series keeps growing when the last full increment
// is at least 0.9 of the one before it. Fewer than two finite increments
// carry no trend and cannot certify growth.
bool increments_decay(const std::vector<double>& increments) {
    if (increments.empty()) return true;
    const double last = increments.back();
    if (last == 0.0) return true;
    if (!std::isfinite(last)) return false;
    if (increments.size() < 2) return true;
    const double prev = increments[increments.size() - 2];
    if (prev <= 0.0) return false;
    return last / prev < 0.9;
}

} // namespace

Cmp cmp_from_name(const std::string& name) {
    if (name == "ge") return Cmp::Ge;
    if (name == "gt") return Cmp::Gt;
    if (name == "le") return Cmp::Le;
    if (name == "lt") return Cmp::Lt;
    if (name == "eq") return Cmp::Eq;
    fail(ErrorCode::ParseError, "unknown comparison '" + name + "'");
}

const char* cmp_name(Cmp c) {
    switch (c) {
        case Cmp::Ge: return "ge";
        case Cmp::Gt: return "gt";
        case Cmp::Le: return "le";
        case Cmp::Lt: return "lt";
        case Cmp::Eq: return "eq";
    }
    return "?";
}

EventPredicate threshold_event(const Functional& f, Cmp cmp, double value) {
    EventPredicate ev;
    ev.n = f.horizon;
    ev.label = f.label + " " + cmp_name(cmp) + " " + std::to_string(value);
    auto eval = f.eval;
    ev.pred = [eval, cmp, value](const std::vector<double>& x) {
        const double v = eval(x);
        switch (cmp) {
            case Cmp::Ge: return v >= value;
            case Cmp::Gt: return v > value;
            case Cmp::Le: return v <= value;
            case Cmp::Lt: return v < value;
            case Cmp::Eq: return v == value;
        }
        return false;
    };
    return ev;
}

EventPredicate event_complement(const EventPredicate& ev) {
    EventPredicate out;
    out.n = ev.n;
    out.label = "not(" + ev.label + ")";
    auto pred = ev.pred;
    out.pred = [pred](const std::vector<double>& x) { return !pred(x); };
    return out;
}

double upper_capacity(const SequenceModel& model, const EventPredicate& ev,
                      const engine::EngineLimits& limits) {
    require(ev.n >= 1, ErrorCode::BadArgument, "event needs a positive horizon");
    return engine::upper_expectation(model, indicator(ev), limits);
}

double lower_capacity(const SequenceModel& model, const EventPredicate& ev,
                      const engine::EngineLimits& limits) {
    return 1.0 - upper_capacity(model, event_complement(ev), limits);
}

McCapacityBound mc_capacity_lower_bound(
    const SequenceModel& model, const EventPredicate& ev,
    const std::vector<engine::AdversaryStrategy>& strategies, size_t n_paths,
    uint64_t seed) {
    require(!strategies.empty(), ErrorCode::BadArgument, "no strategies given");
    require(n_paths >= 1, ErrorCode::BadArgument, "need at least one path");

    const size_t T = model.drivers_for(ev.n);
    const size_t m = model.m();
    McCapacityBound best;

    for (size_t si = 0; si < strategies.size(); ++si) {
        const auto& strategy = strategies[si];
        size_t hits = 0;
        std::vector<double> eps(T);
        std::vector<double> history;
        history.reserve(T);
        std::vector<double> obs(ev.n);
        for (size_t path = 0; path < n_paths; ++path) {
            RngStream draws(seed, path, 2 * si);
            RngStream aux(seed, path, 2 * si + 1);
            history.clear();
            for (size_t t = 1; t <= T; ++t) {
                const size_t j = strategy.select({t, history, &aux});
                require(j < model.driver().n_laws(), ErrorCode::BadArgument,
                        "strategy selected a law outside the set");
                eps[t - 1] = model.driver().laws[j].sample(draws);
                history.push_back(eps[t - 1]);
            }
            for (size_t i = 0; i < ev.n; ++i)
                obs[i] = model.window_of_values(&eps[i], m + 1);
            if (ev.pred(obs)) ++hits;
        }
        const double freq = static_cast<double>(hits) / static_cast<double>(n_paths);
        if (freq >= best.estimate) {
            best.estimate = freq;
            best.std_error =
                std::sqrt(freq * (1.0 - freq) / static_cast<double>(n_paths));
        }
    }
    return best;
}

CapacityCurve capacity_curve(const SequenceModel& model, const Functional& X,
                             const engine::EngineLimits& limits) {
    require(model.exact_capable(), ErrorCode::UnboundedSupport,
            "layer-cake needs finite support");

    // Distinct values of X over every support tuple, with 0 inserted.
    const size_t s = model.support_size();
    const size_t T = model.drivers_for(X.horizon);
    size_t leaves = 1;
    for (size_t t = 0; t < T; ++t) {
        require(leaves <= limits.max_leaves / s, ErrorCode::StateSpaceCap,
                "value enumeration exceeds the leaf cap");
        leaves *= s;
    }
    const size_t m = model.m();
    std::set<double> values{0.0};
    std::vector<double> eps(T), obs(X.horizon);
    for (size_t L = 0; L < leaves; ++L) {
        size_t rem = L;
        for (size_t pos = T; pos-- > 0;) {
            eps[pos] = model.driver().support[rem % s];
            rem /= s;
        }
        for (size_t i = 0; i < X.horizon; ++i)
            obs[i] = model.window_of_values(&eps[i], m + 1);
        values.insert(X.eval(obs));
    }

    CapacityCurve curve;
    curve.thresholds.assign(values.begin(), values.end());
    curve.values.reserve(curve.thresholds.size());
    for (double t : curve.thresholds) {
        curve.values.push_back(
            upper_capacity(model, threshold_event(X, Cmp::Ge, t), limits));
    }
    return curve;
}

double choquet_integral_finite(const CapacityCurve& curve) {
    require(!curve.thresholds.empty(), ErrorCode::BadArgument, "empty curve");
    require(std::is_sorted(curve.thresholds.begin(), curve.thresholds.end()),
            ErrorCode::NotMonotone, "thresholds must be sorted");
    require(curve.thresholds.size() == curve.values.size(), ErrorCode::BadArgument,
            "curve lengths differ");

    double acc = 0.0;
    for (size_t i = 1; i < curve.thresholds.size(); ++i) {
        const double gap = curve.thresholds[i] - curve.thresholds[i - 1];
        const double v = curve.values[i];
        acc += curve.thresholds[i] > 0.0 ? gap * v : gap * (v - 1.0);
    }
    return acc;
}

double choquet_integral_finite(const SequenceModel& model, const Functional& X,
                               const engine::EngineLimits& limits) {
    return choquet_integral_finite(capacity_curve(model, X, limits));
}

std::vector<double> octave_grid(double t_max, size_t points_per_octave) {
    require(t_max >= 1.0, ErrorCode::BadArgument, "grid end must be >= 1");
    require(points_per_octave >= 2, ErrorCode::BadArgument,
            "need at least two points per octave");
    std::vector<double> grid;
    const double p = static_cast<double>(points_per_octave);
    for (size_t i = 0; i <= points_per_octave; ++i)
        grid.push_back(static_cast<double>(i) / p);
    for (double lo = 1.0; lo < t_max; lo *= 2.0) {
        const double hi = std::min(lo * 2.0, t_max);
        for (size_t i = 1; i <= points_per_octave; ++i)
            grid.push_back(std::min(lo + (lo * static_cast<double>(i)) / p, hi));
        if (hi == t_max) break;
    }
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> grid_with_breakpoints(double t_max, size_t points_per_octave,
                                          std::vector<double> jumps) {
    std::vector<double> grid = octave_grid(t_max, points_per_octave);
    for (double x : jumps) {
        if (x < 0.0 || x >= t_max) continue;
        grid.push_back(x);
        grid.push_back(std::nextafter(x, kInf));
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

QuadratureResult choquet_integral_quadrature(
    const std::function<double(double)>& tail, double t_max,
    const std::vector<double>& grid) {
    require(t_max > 0.0, ErrorCode::BadArgument, "integration end must be positive");
    require(grid.size() >= 2, ErrorCode::BadArgument, "grid too short");
    require(grid.front() == 0.0, ErrorCode::BadArgument, "grid must start at 0");
    require(std::fabs(grid.back() - t_max) <= 1e-9 * t_max, ErrorCode::BadArgument,
            "grid must end at t_max");

    std::vector<double> octave_sums;
    double value = 0.0;
    double prev_t = grid[0];
    double prev_v = tail(prev_t);
    for (size_t i = 1; i < grid.size(); ++i) {
        const double t = grid[i];
        require(t > prev_t, ErrorCode::BadArgument, "grid must increase");
        const double v = tail(t);
        require(v >= -1e-12 && v <= 1.0 + 1e-12, ErrorCode::BadArgument,
                "tail value outside [0,1]");
        require(v <= prev_v + 1e-9, ErrorCode::GridTooCoarse,
                "tail increases at t = " + std::to_string(t));
        const double piece = 0.5 * (prev_v + v) * (t - prev_t);
        value += piece;
        // Bucket by octave of the piece midpoint: [2^j, 2^{j+1}) -> j.
        const double mid = 0.5 * (prev_t + t);
        if (mid >= 1.0) {
            const auto j = static_cast<size_t>(std::floor(std::log2(mid)));
            if (octave_sums.size() <= j) octave_sums.resize(j + 1, 0.0);
            octave_sums[j] += piece;
        }
        prev_t = t;
        prev_v = v;
    }

    // Only octaves the grid covers completely can vote on divergence.
    const auto complete =
        static_cast<size_t>(std::floor(std::log2(t_max * (1.0 + 1e-12))));
    if (octave_sums.size() > complete) octave_sums.resize(complete);

    QuadratureResult out;
    out.value = value;
    out.diverging = !increments_decay(octave_sums);
    return out;
}

double truncate(double x, double c) {
    require(c > 0.0, ErrorCode::BadArgument, "truncation level must be positive");
    return std::clamp(x, -c, c);
}

Functional truncate_functional(const Functional& f, double c) {
    require(c > 0.0, ErrorCode::BadArgument, "truncation level must be positive");
    auto eval = f.eval;
    return fn_custom(f.horizon, f.label + "^(" + std::to_string(c) + ")",
                     [eval, c](const std::vector<double>& x) {
                         return std::clamp(eval(x), -c, c);
                     });
}

std::vector<double> doubling_schedule(double c0, size_t steps) {
    require(c0 > 0.0, ErrorCode::BadArgument, "schedule must start positive");
    require(steps >= 1, ErrorCode::BadArgument, "empty schedule");
    std::vector<double> out(steps);
    double c = c0;
    for (size_t i = 0; i < steps; ++i, c *= 2.0) out[i] = c;
    return out;
}

namespace {

ExtendedExpectationResult run_truncation_ladder(
    const std::function<double(double)>& value_at,
    const std::vector<double>& c_schedule, double tol) {
    require(!c_schedule.empty(), ErrorCode::BadArgument, "empty schedule");
    require(std::is_sorted(c_schedule.begin(), c_schedule.end()),
            ErrorCode::NotMonotone, "schedule must be nondecreasing");
    require(c_schedule.front() > 0.0, ErrorCode::BadArgument,
            "truncation levels must be positive");
    require(tol > 0.0, ErrorCode::BadArgument, "tolerance must be positive");

    ExtendedExpectationResult res;
    for (double c : c_schedule) {
        const double v = value_at(c);
        if (!res.c_grid.empty())
            res.deltas.push_back(std::fabs(v - res.value));
        res.c_grid.push_back(c);
        res.value = v;
        const size_t d = res.deltas.size();
        if (d >= 2 && res.deltas[d - 1] < tol && res.deltas[d - 2] < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

} // namespace

ExtendedExpectationResult extended_expectation(const SequenceModel& model,
                                               const Functional& X,
                                               const std::vector<double>& c_schedule,
                                               double tol,
                                               const engine::EngineLimits& limits) {
    return run_truncation_ladder(
        [&](double c) {
            return engine::upper_expectation(model, truncate_functional(X, c), limits);
        },
        c_schedule, tol);
}

ExtendedExpectationResult extended_expectation_analytic(
    const std::function<double(double)>& truncated_mean,
    const std::vector<double>& c_schedule, double tol) {
    return run_truncation_ladder(truncated_mean, c_schedule, tol);
}

engine::CheckReport extended_additivity_check(const SequenceModel& model, size_t n,
                                              double tol,
                                              const engine::EngineLimits& limits) {
    require(model.is_iid(), ErrorCode::BadArgument,
            "extended additivity needs an IID model");
    require(n >= 1, ErrorCode::BadArgument, "need a positive horizon");

    const std::vector<double> schedule = doubling_schedule(1.0, 24);
    const double conv_tol = 1e-12;
    const ExtendedExpectationResult one =
        extended_expectation(model, fn_sum(1), schedule, conv_tol, limits);
    require(one.converged, ErrorCode::BadArgument,
            "marginal extended expectation does not converge");
    const ExtendedExpectationResult sum =
        extended_expectation(model, fn_sum(n), schedule, conv_tol, limits);
    require(sum.converged, ErrorCode::BadArgument,
            "extended expectation of the partial sum does not converge");

    engine::CheckReport report;
    const double dev = std::fabs(sum.value - static_cast<double>(n) * one.value);
    report.max_deviation = dev;
    if (dev > static_cast<double>(n) * tol) {
        report.pass = false;
        report.violations.push_back("extended additivity off by " +
                                    std::to_string(dev));
    }
    return report;
}

namespace {

FinitenessDiagnostics run_diagnostics(const std::function<double(double)>& tail,
                                      const std::function<double(double)>& excess,
                                      double M, size_t I_max, double c_max) {
    require(M > 0.0, ErrorCode::BadArgument, "tail spacing must be positive");
    require(I_max >= 4, ErrorCode::BadArgument, "need at least four tail terms");
    require(c_max >= 1.0, ErrorCode::BadArgument, "truncation range too small");

    FinitenessDiagnostics out;
    out.partial_sums.reserve(I_max);
    double acc = 0.0;
    for (size_t i = 1; i <= I_max; ++i) {
        acc += tail(M * static_cast<double>(i));
        out.partial_sums.push_back(acc);
    }
    std::vector<double> increments;
    for (size_t lo = 1; 2 * lo <= I_max; lo *= 2)
        increments.push_back(out.partial_sums[2 * lo - 1] - out.partial_sums[lo - 1]);
    out.tail_summable = increments_decay(increments);

    for (double c = 1.0; c <= c_max; c *= 2.0) {
        out.c_grid.push_back(c);
        out.excess_means.push_back(excess(c));
    }
    const auto& e = out.excess_means;
    if (e.back() == 0.0) {
        out.excess_vanishing = true;
    } else if (!std::isfinite(e.back()) || e.size() < 2) {
        out.excess_vanishing = false;
    } else {
        const double prev = e[e.size() - 2];
        out.excess_vanishing = prev > 0.0 && e.back() / prev < 0.9;
    }
    return out;
}

} // namespace

FinitenessDiagnostics choquet_finiteness_diagnostics(
    const SequenceModel& model, const Functional& X, double M, size_t I_max,
    double c_max, const engine::EngineLimits& limits) {
    require(model.exact_capable(), ErrorCode::UnboundedSupport,
            "exact diagnostics need finite support; use the tail form");
    auto eval = X.eval;
    Functional absX = fn_custom(X.horizon, "|" + X.label + "|",
                                [eval](const std::vector<double>& x) {
                                    return std::fabs(eval(x));
                                });
    return run_diagnostics(
        [&](double t) {
            return upper_capacity(model, threshold_event(absX, Cmp::Ge, t), limits);
        },
        [&](double c) {
            auto aeval = absX.eval;
            Functional excess =
                fn_custom(X.horizon, "excess",
                          [aeval, c](const std::vector<double>& x) {
                              return std::max(0.0, aeval(x) - c);
                          });
            return engine::upper_expectation(model, excess, limits);
        },
        M, I_max, c_max);
}

FinitenessDiagnostics finiteness_diagnostics_tails(
    const std::function<double(double)>& tail,
    const std::function<double(double)>& excess, double M, size_t I_max,
    double c_max) {
    return run_diagnostics(tail, excess, M, I_max, c_max);
}

} // namespace slln::capacity
