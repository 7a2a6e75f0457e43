#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace slln::engine {

namespace {

void note(CheckReport& report, double dev, double tol, const std::string& what) {
    report.max_deviation = std::max(report.max_deviation, dev);
    if (dev > tol) {
        report.pass = false;
        report.violations.push_back(what + " off by " + std::to_string(dev));
    }
}

Functional fn_shift(const Functional& phi, double c) {
    auto eval = phi.eval;
    return fn_custom(phi.horizon, phi.label + "+" + std::to_string(c),
                     [eval, c](const std::vector<double>& x) { return eval(x) + c; });
}

Functional fn_scale(const Functional& phi, double lambda) {
    auto eval = phi.eval;
    return fn_custom(phi.horizon, std::to_string(lambda) + "*" + phi.label,
                     [eval, lambda](const std::vector<double>& x) {
                         return lambda * eval(x);
                     });
}

Functional fn_plus(const Functional& a, const Functional& b) {
    auto ea = a.eval;
    auto eb = b.eval;
    return fn_custom(a.horizon, a.label + "+" + b.label,
                     [ea, eb](const std::vector<double>& x) { return ea(x) + eb(x); });
}

Functional fn_minus(const Functional& a, const Functional& b) {
    auto ea = a.eval;
    auto eb = b.eval;
    return fn_custom(a.horizon, a.label + "-" + b.label,
                     [ea, eb](const std::vector<double>& x) { return ea(x) - eb(x); });
}

} // namespace

CheckReport check_sublinear_axioms(const SequenceModel& model,
                                   const std::vector<Functional>& phis,
                                   double tol, const EngineLimits& limits) {
    require(!phis.empty(), ErrorCode::BadArgument, "no functionals to check");
    CheckReport report;

    for (const Functional& phi : phis) {
        const double e = upper_expectation(model, phi, limits);

        for (double c : {-1.0, 0.0, 5.0}) {
            Functional constant = fn_custom(phi.horizon, "const",
                                            [c](const std::vector<double>&) { return c; });
            note(report, std::fabs(upper_expectation(model, constant, limits) - c),
                 tol, "constant " + std::to_string(c) + " at " + phi.label);
        }

        for (double c : {1.7, -0.4}) {
            const double shifted = upper_expectation(model, fn_shift(phi, c), limits);
            note(report, std::fabs(shifted - (e + c)), tol,
                 "translation of " + phi.label);
        }

        for (double lambda : {2.0, 0.5}) {
            const double scaled = upper_expectation(model, fn_scale(phi, lambda), limits);
            note(report, std::fabs(scaled - lambda * e), tol,
                 "homogeneity of " + phi.label);
        }

        // phi <= phi + 0.25 pointwise; the envelopes must preserve the order.
        const double above = upper_expectation(model, fn_shift(phi, 0.25), limits);
        note(report, std::max(0.0, e - above), tol, "monotonicity at " + phi.label);
    }

    for (size_t i = 0; i + 1 < phis.size(); ++i) {
        const Functional& a = phis[i];
        const Functional& b = phis[i + 1];
        if (a.horizon != b.horizon) continue;
        const double ea = upper_expectation(model, a, limits);
        const double eb = upper_expectation(model, b, limits);
        const double e_sum = upper_expectation(model, fn_plus(a, b), limits);
        note(report, std::max(0.0, e_sum - (ea + eb)), tol,
             "sub-additivity of " + a.label + ", " + b.label);
        const double e_diff = upper_expectation(model, fn_minus(a, b), limits);
        note(report, std::max(0.0, (ea - eb) - e_diff), tol,
             "difference bound of " + a.label + ", " + b.label);
    }
    return report;
}

CheckReport check_independent_bounded_additivity(const SequenceModel& model,
                                                 size_t n, double tol,
                                                 const EngineLimits& limits) {
    require(model.is_iid(), ErrorCode::BadArgument,
            "additivity of partial sums needs an IID model");
    require(n >= 1, ErrorCode::BadArgument, "need a positive horizon");
    CheckReport report;

    const ExpectationPair one = expectation_pair(model, fn_sum(1), limits);
    const ExpectationPair sum = expectation_pair(model, fn_sum(n), limits);
    const double dn = static_cast<double>(n);
    note(report, std::fabs(sum.upper - dn * one.upper), tol,
         "upper envelope of S_" + std::to_string(n));
    note(report, std::fabs(sum.lower - dn * one.lower), tol,
         "lower envelope of S_" + std::to_string(n));
    return report;
}

CheckReport check_identity_in_distribution(const SequenceModel& model_a,
                                           const SequenceModel& model_b, size_t p,
                                           size_t n,
                                           const std::vector<Functional>& phis,
                                           double tol, const EngineLimits& limits) {
    require(n >= 1, ErrorCode::BadArgument, "need a positive block length");
    CheckReport report;

    for (const Functional& phi : phis) {
        require(phi.horizon == n, ErrorCode::HorizonMismatch,
                "functional horizon must equal the block length");
        auto eval = phi.eval;
        Functional shifted =
            fn_custom(n + p, phi.label + " shifted by " + std::to_string(p),
                      [eval, p, n](const std::vector<double>& x) {
                          std::vector<double> block(x.begin() + static_cast<long>(p),
                                                    x.begin() + static_cast<long>(p + n));
                          return eval(block);
                      });
        const double au = upper_expectation(model_a, phi, limits);
        const double bu = upper_expectation(model_b, shifted, limits);
        note(report, std::fabs(au - bu), tol, "upper envelope at " + phi.label);
        const double al = lower_expectation(model_a, phi, limits);
        const double bl = lower_expectation(model_b, shifted, limits);
        note(report, std::fabs(al - bl), tol, "lower envelope at " + phi.label);
    }
    return report;
}

CheckReport check_block_independence(const SequenceModel& model, size_t n,
                                     size_t y_start, size_t y_end,
                                     const std::vector<BlockFunctional>& phis,
                                     double tol, const EngineLimits& limits) {
    require(n >= 1 && y_start > n && y_end >= y_start, ErrorCode::BadArgument,
            "blocks must be ordered and non-empty");
    const size_t q = y_end - y_start + 1;
    CheckReport report;

    for (const BlockFunctional& phi : phis) {
        require(phi.nx == n && phi.ny == q, ErrorCode::HorizonMismatch,
                "block functional shape must match the blocks");

        Functional joint = fn_custom(
            y_end, phi.label, [&phi, n, y_start, y_end](const std::vector<double>& o) {
                std::vector<double> x(o.begin(), o.begin() + static_cast<long>(n));
                std::vector<double> y(o.begin() + static_cast<long>(y_start - 1),
                                      o.begin() + static_cast<long>(y_end));
                return phi.eval(x, y);
            });
        const double lhs = oracle_upper_expectation(model, joint, limits).value;

        // Inner value as a function of the realized x-block, evaluated on a
        // fresh stationary block of the same length.
        std::map<std::vector<double>, double> inner_cache;
        Functional outer = fn_custom(
            n, phi.label + " nested",
            [&phi, &inner_cache, &model, &limits, q](const std::vector<double>& x) {
                if (const auto it = inner_cache.find(x); it != inner_cache.end())
                    return it->second;
                Functional inner = fn_custom(
                    q, phi.label + " inner",
                    [&phi, &x](const std::vector<double>& y) { return phi.eval(x, y); });
                const double value =
                    oracle_upper_expectation(model, inner, limits).value;
                inner_cache.emplace(x, value);
                return value;
            });
        const double rhs = oracle_upper_expectation(model, outer, limits).value;

        note(report, std::fabs(lhs - rhs), tol, "nested identity at " + phi.label);
    }
    return report;
}

CheckReport check_m_dependence(const SequenceModel& model, size_t n, size_t j,
                               const std::vector<BlockFunctional>& phis, double tol,
                               const EngineLimits& limits) {
    require(j >= model.m() + 1, ErrorCode::BadArgument,
            "second block is empty unless j > m");
    return check_block_independence(model, n, n + model.m() + 1, n + j, phis, tol,
                                    limits);
}

} // namespace slln::engine
