#pragma once

#include <functional>
#include <string>
#include <vector>

#include "engine.hpp"

namespace slln::capacity {

// Measurable event on the first n observables. pred must be total on every
// support tuple it is paired with.
struct EventPredicate {
    size_t n = 0;
    std::function<bool(const std::vector<double>&)> pred;
    std::string label;
};

enum class Cmp { Ge, Gt, Le, Lt, Eq };

Cmp cmp_from_name(const std::string& name);
const char* cmp_name(Cmp c);

// {f(X_1..X_n) cmp value}.
EventPredicate threshold_event(const Functional& f, Cmp cmp, double value);
EventPredicate event_complement(const EventPredicate& ev);

// V_hat(A): adaptive-worst-case probability, evaluated as the upper
// expectation of the indicator payoff.
double upper_capacity(const SequenceModel& model, const EventPredicate& ev,
                      const engine::EngineLimits& limits = {});
// nu_hat(A) = 1 - V_hat(complement of A).
double lower_capacity(const SequenceModel& model, const EventPredicate& ev,
                      const engine::EngineLimits& limits = {});

struct McCapacityBound {
    double estimate = 0.0;   // max empirical frequency over the strategies
    double std_error = 0.0;  // binomial SE of the attaining strategy
};

// Simulated lower bound on V_hat: each strategy induces one measure, the
// event frequency under it sits below the capacity up to sampling noise.
McCapacityBound mc_capacity_lower_bound(
    const SequenceModel& model, const EventPredicate& ev,
    const std::vector<engine::AdversaryStrategy>& strategies, size_t n_paths,
    uint64_t seed);

// V(X >= t) sampled at sorted thresholds; values are nonincreasing in t.
struct CapacityCurve {
    std::vector<double> thresholds;
    std::vector<double> values;
};

// Curve over all distinct values of X (with 0 inserted), one exact capacity
// evaluation per threshold.
CapacityCurve capacity_curve(const SequenceModel& model, const Functional& X,
                             const engine::EngineLimits& limits = {});

// Exact layer-cake sum over the curve: positive thresholds weight V(X >= t),
// non-positive ones weight V(X >= t) - 1.
double choquet_integral_finite(const CapacityCurve& curve);
double choquet_integral_finite(const SequenceModel& model, const Functional& X,
                               const engine::EngineLimits& limits = {});

struct QuadratureResult {
    double value = 0.0;  // trapezoid integral of the tail on [0, t_max]
    bool diverging = false;
};

// Nodes 0..1 uniform, then points_per_octave per octave [2^j, 2^{j+1}].
std::vector<double> octave_grid(double t_max, size_t points_per_octave);
// Same grid with extra nodes snapped to each side of the given jump points,
// so step tails integrate exactly.
std::vector<double> grid_with_breakpoints(double t_max, size_t points_per_octave,
                                          std::vector<double> jumps);

// Trapezoid Choquet integral of a nonincreasing tail t -> V(X >= t) over the
// given grid. diverging is set when the increments over successive octaves
// stop decaying (last ratio >= 0.9).
QuadratureResult choquet_integral_quadrature(
    const std::function<double(double)>& tail, double t_max,
    const std::vector<double>& grid);

// Clamp to [-c, c].
double truncate(double x, double c);
Functional truncate_functional(const Functional& f, double c);

struct ExtendedExpectationResult {
    double value = 0.0;
    bool converged = false;
    std::vector<double> c_grid;  // truncation levels actually evaluated
    std::vector<double> deltas;  // successive |differences|, one fewer entry
};

std::vector<double> doubling_schedule(double c0, size_t steps);

// E[X^(c)] along the schedule; converged once two successive deltas fall
// below tol (evaluation stops there). Non-convergence is reported in the
// result, not thrown.
ExtendedExpectationResult extended_expectation(const SequenceModel& model,
                                               const Functional& X,
                                               const std::vector<double>& c_schedule,
                                               double tol,
                                               const engine::EngineLimits& limits = {});
// Same ladder driven by an analytic map c -> E[X^(c)].
ExtendedExpectationResult extended_expectation_analytic(
    const std::function<double(double)>& truncated_mean,
    const std::vector<double>& c_schedule, double tol);

// |bE[S_n] - n bE[X_1]| <= n * tol for IID models whose marginal extended
// expectation converges.
engine::CheckReport extended_additivity_check(const SequenceModel& model, size_t n,
                                              double tol = 1e-10,
                                              const engine::EngineLimits& limits = {});

struct FinitenessDiagnostics {
    std::vector<double> partial_sums;  // sum_{i<=I} V(|X| >= M i), I = 1..I_max
    bool tail_summable = false;
    std::vector<double> c_grid;        // doubling truncation levels
    std::vector<double> excess_means;  // E[(|X| - c)^+] at each level
    bool excess_vanishing = false;
};

// Summability of the capacity tail series and decay of the excess means,
// the two finiteness signatures of a Choquet-integrable |X|.
FinitenessDiagnostics choquet_finiteness_diagnostics(
    const SequenceModel& model, const Functional& X, double M, size_t I_max,
    double c_max, const engine::EngineLimits& limits = {});
// Analytic route: tail(t) = V(|X| >= t), excess(c) = E[(|X| - c)^+].
FinitenessDiagnostics finiteness_diagnostics_tails(
    const std::function<double(double)>& tail,
    const std::function<double(double)>& excess, double M, size_t I_max,
    double c_max);

} // namespace slln::capacity
