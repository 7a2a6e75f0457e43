// Acceptance gate: one line per shipped guarantee, PASS/FAIL plus the
// measured numbers. Exit status is nonzero when any line fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "capacity.hpp"
#include "engine.hpp"
#include "experiments.hpp"
#include "fixtures.hpp"
#include "functional.hpp"
#include "lln.hpp"
#include "measures.hpp"
#include "rng.hpp"
#include "sequences.hpp"

using namespace slln;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

std::string dev(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.1e", v);
    return b;
}

SamplableDistribution finite_law(const std::vector<double>& support,
                                 const std::vector<double>& probs) {
    return SamplableDistribution::finite(make_finite_distribution(support, probs));
}

SamplableDistribution bern(double p) { return finite_law({0.0, 1.0}, {1.0 - p, p}); }

// Every non-empty subset of three probability rows, on a two-point and a
// three-point support: 14 ambiguity sets, |laws| <= 3, support <= 3.
std::vector<AmbiguitySet> catalog_sets() {
    const std::vector<std::vector<double>> supports = {{0.0, 1.0}, {-1.0, 0.5, 1.0}};
    const std::vector<std::vector<std::vector<double>>> rows = {
        {{0.7, 0.3}, {0.3, 0.7}, {0.5, 0.5}},
        {{0.6, 0.2, 0.2}, {0.2, 0.2, 0.6}, {0.25, 0.5, 0.25}},
    };
    std::vector<AmbiguitySet> sets;
    for (size_t s = 0; s < supports.size(); ++s) {
        for (unsigned mask = 1; mask < 8; ++mask) {
            std::vector<SamplableDistribution> laws;
            for (size_t r = 0; r < 3; ++r)
                if (mask & (1u << r)) laws.push_back(finite_law(supports[s], rows[s][r]));
            sets.push_back(make_ambiguity_set(std::move(laws)));
        }
    }
    return sets;
}

struct FamilyInstance {
    SequenceModel model;
    size_t n;
};

// Catalog sets crossed with m in {0, 1, 2} and every horizon that keeps the
// driver tuple within 5 coordinates.
std::vector<FamilyInstance> exhaustive_family() {
    std::vector<FamilyInstance> out;
    for (const AmbiguitySet& set : catalog_sets()) {
        for (size_t m = 0; m <= 2; ++m) {
            SequenceModel model =
                m == 0 ? SequenceModel::iid(set)
                : m == 1
                    ? SequenceModel::moving_window(
                          1, set, WindowSpec{WindowKind::MeanWindow, 1.0, 0.0})
                    : SequenceModel::moving_window(
                          2, set, WindowSpec{WindowKind::MaxWindow, 1.0, 0.0});
            for (size_t n = 1; n + m <= 5; ++n) out.push_back({model, n});
        }
    }
    return out;
}

std::vector<Functional> family_payoffs(size_t n) {
    std::vector<double> centers(n);
    for (size_t k = 0; k < n; ++k) centers[k] = 0.3 * static_cast<double>(k + 1);
    return {fn_sum(n), fn_mean(n), fn_max_partial_dev(n, centers, true),
            fn_power(fn_sum(n), 2), fn_affine(fn_sum(n), -1.5, 0.25)};
}

Functional sq_gap() {
    return fn_custom(2, "sq_gap", [](const std::vector<double>& x) {
        const double d = x[0] - x[1];
        return d * d;
    });
}

Functional abs_first() {
    return fn_custom(1, "abs_x1",
                     [](const std::vector<double>& x) { return std::fabs(x[0]); });
}

Functional abs_sum2() {
    return fn_custom(2, "abs_s2", [](const std::vector<double>& x) {
        return std::fabs(x[0] + x[1]);
    });
}

// Left-continuous step lookup V(X >= t) from an exact curve.
std::function<double(double)> curve_tail(const capacity::CapacityCurve& curve) {
    return [curve](double t) {
        for (size_t i = 0; i < curve.thresholds.size(); ++i)
            if (curve.thresholds[i] >= t) return curve.values[i];
        return 0.0;
    };
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. The backward-induction DP, the independent top-down tree recursion,
// and literal strategy enumeration agree on every family instance.
Outcome c1_oracle_equivalence() {
    size_t instances = 0;
    size_t enumerated = 0;
    double worst = 0.0;
    for (const FamilyInstance& inst : exhaustive_family()) {
        for (const Functional& phi : family_payoffs(inst.n)) {
            ++instances;
            const double dp = engine::upper_expectation(inst.model, phi);
            const double tree = engine::tree_sup_expectation(inst.model, phi);
            worst = std::max(worst, std::fabs(dp - tree));
            try {
                const auto oracle = engine::oracle_upper_expectation(inst.model, phi);
                worst = std::max(worst, std::fabs(dp - oracle.value));
                ++enumerated;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::StrategySpaceTooLarge) throw;
            }
        }
    }
    Outcome o;
    o.pass = worst <= 1e-10 && enumerated > 0;
    o.detail = std::to_string(instances) + " instances, literal enumeration on " +
               std::to_string(enumerated) + ", max deviation " + dev(worst);
    return o;
}

Functional random_bounded(RngStream& rng, size_t n, size_t tag) {
    std::vector<double> lin(n);
    std::vector<double> sq(n);
    for (size_t k = 0; k < n; ++k) {
        lin[k] = 2.0 * rng.next_u01() - 1.0;
        sq[k] = 2.0 * rng.next_u01() - 1.0;
    }
    const double amp = 2.0 * rng.next_u01() - 1.0;
    const double freq = 1.0 + 3.0 * rng.next_u01();
    return fn_custom(n, "rand" + std::to_string(tag),
                     [lin, sq, amp, freq, n](const std::vector<double>& x) {
                         double acc = 0.0;
                         double total = 0.0;
                         for (size_t k = 0; k < n; ++k) {
                             acc += lin[k] * x[k] + sq[k] * x[k] * x[k];
                             total += x[k];
                         }
                         return acc + amp * std::cos(freq * total);
                     });
}

// 2. Monotonicity, constants, sub-additivity, homogeneity, translation, and
// the difference inequality over 1000 randomized bounded payoffs.
Outcome c2_axioms() {
    const std::vector<SequenceModel> models = {
        fixture_model("iid-ambiguous"), fixture_model("moving-average"),
        fixture_model("biased-sign"), fixture_model("classical-singleton")};
    size_t functionals = 0;
    size_t violations = 0;
    double worst = 0.0;
    for (size_t i = 0; i < 500; ++i) {
        RngStream rng(20260819, i, 0);
        const size_t n = 1 + i % 3;
        const std::vector<Functional> phis = {random_bounded(rng, n, 2 * i),
                                              random_bounded(rng, n, 2 * i + 1)};
        functionals += phis.size();
        const auto rep =
            engine::check_sublinear_axioms(models[i % models.size()], phis, 1e-12);
        worst = std::max(worst, rep.max_deviation);
        violations += rep.violations.size();
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = std::to_string(functionals) + " randomized payoffs, " +
               std::to_string(violations) + " violations, max deviation " +
               dev(worst);
    return o;
}

// 3. |E[S_n] - n E[X_1]| on every exact IID fixture, both envelopes.
Outcome c3_additivity() {
    size_t checks = 0;
    size_t fixtures = 0;
    double worst = 0.0;
    bool all = true;
    for (const std::string& name : fixture_names()) {
        const SequenceModel m = fixture_model(name);
        if (!m.is_iid() || !m.exact_capable()) continue;
        ++fixtures;
        for (size_t n = 1; n <= 8; ++n) {
            const auto rep = engine::check_independent_bounded_additivity(m, n, 1e-10);
            ++checks;
            worst = std::max(worst, rep.max_deviation);
            all = all && rep.pass;
        }
    }
    Outcome o;
    o.pass = all && fixtures > 0;
    o.detail = std::to_string(checks) + " checks on " + std::to_string(fixtures) +
               " fixtures, n <= 8, max deviation " + dev(worst);
    return o;
}

// 4. nu_hat of the centered running deviation vs (2/x^2) sum E[X_i^2], the
// family crossed with a three-point center grid and four thresholds.
Outcome c4_maximal_inequality() {
    size_t checks = 0;
    size_t violations = 0;
    double worst_ratio = 0.0;
    for (const FamilyInstance& inst : exhaustive_family()) {
        const auto one = engine::expectation_pair(inst.model, fn_sum(1));
        std::vector<double> grid = {one.lower, 0.5 * (one.lower + one.upper),
                                    one.upper};
        if (one.upper - one.lower < 1e-15) grid = {one.lower};
        for (double mu : grid) {
            const std::vector<double> mus(inst.n, mu);
            for (double x : {0.5, 1.0, 1.5, 2.0}) {
                const auto rep =
                    lln::lower_capacity_maximal_check(inst.model, inst.n, mus, x);
                ++checks;
                if (!rep.pass) ++violations;
                worst_ratio = std::max(worst_ratio, rep.ratio);
            }
        }
    }
    Outcome o;
    o.pass = violations == 0;
    o.detail = std::to_string(checks) + " checks, " + std::to_string(violations) +
               " violations, worst lhs/rhs " + num(worst_ratio);
    return o;
}

// 5. Classical instances keep the empirical constant at or below 1; the
// ambiguous constant at n = 4 stays within twice its n = 2 value.
Outcome c5_kolmogorov() {
    size_t classical_cases = 0;
    double max_classical = 0.0;
    bool classical_ok = true;
    size_t trend_cases = 0;
    double max_c2 = 0.0;
    double max_c4 = 0.0;
    double worst_gap = -1e300;
    for (const AmbiguitySet& set : catalog_sets()) {
        const SequenceModel model = SequenceModel::iid(set);
        if (set.n_laws() == 1) {
            for (size_t n = 1; n <= 6; ++n)
                for (double x : {0.5, 1.0, 2.0}) {
                    const auto rep = lln::kolmogorov_report(model, n, x, 0.5, 2.0);
                    ++classical_cases;
                    classical_ok = classical_ok && rep.classical &&
                                   rep.upper.pass && rep.lower.pass;
                    max_classical = std::max(
                        {max_classical, rep.c_hat_upper, rep.c_hat_lower});
                }
        } else {
            const double c2 =
                lln::kolmogorov_report(model, 2, 0.5, 0.5, 2.0).c_hat_upper;
            const double c4 =
                lln::kolmogorov_report(model, 4, 0.5, 0.5, 2.0).c_hat_upper;
            ++trend_cases;
            max_c2 = std::max(max_c2, c2);
            max_c4 = std::max(max_c4, c4);
            worst_gap = std::max(worst_gap, c4 - 2.0 * c2);
        }
    }
    Outcome o;
    o.pass = classical_ok && max_classical <= 1.0 + 1e-12 && worst_gap <= 1e-12;
    o.detail = "classical C_hat <= 1 on " + std::to_string(classical_cases) +
               " cases (max " + num(max_classical) + "); trend on " +
               std::to_string(trend_cases) + " ambiguous sets at x = 0.5 (max C2 " +
               num(max_c2) + ", max C4 " + num(max_c4) + ", worst C4 - 2 C2 " +
               num(worst_gap) + ")";
    return o;
}

// 6. Envelope means of the moving-average fixture sit on the one-coordinate
// bracket for every n <= 200.
Outcome c6_mean_bounds() {
    const auto seq = lln::mean_bounds_sequence(fixture_model("moving-average"), 200);
    double worst = 0.0;
    for (size_t i = 0; i < seq.n_values.size(); ++i) {
        worst = std::max(worst, std::fabs(seq.upper_means[i] - 0.7));
        worst = std::max(worst, std::fabs(seq.lower_means[i] - 0.3));
    }
    Outcome o;
    o.pass = seq.n_values.size() == 200 && worst <= 1e-10 &&
             std::fabs(seq.bracket_high - 0.7) <= 1e-12 &&
             std::fabs(seq.bracket_low - 0.3) <= 1e-12;
    o.detail = "n = 1..200, max |mean - bracket| " + dev(worst);
    return o;
}

// 7. Moving-window models are stationary and m-dependent; adjacent blocks
// with no gap break the nested identity.
Outcome c7_dependence() {
    const WindowSpec mean_w{WindowKind::MeanWindow, 1.0, 0.0};
    const WindowSpec max_w{WindowKind::MaxWindow, 1.0, 0.0};
    const AmbiguitySet pair = make_ambiguity_set({bern(0.3), bern(0.7)});
    const AmbiguitySet single = make_ambiguity_set({bern(0.6)});

    const std::vector<Functional> stat_phis = {fn_sum(2), fn_mean(2), sq_gap()};
    engine::BlockFunctional prod{
        1, 1, "xy",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return x[0] * y[0];
        }};
    engine::BlockFunctional peak{
        1, 1, "max_xy",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return std::max(x[0], y[0]);
        }};
    engine::BlockFunctional spread{
        1, 2, "x_ysum",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            return x[0] * (y[0] + y[1]);
        }};

    double worst = 0.0;
    bool ok = true;
    const std::vector<SequenceModel> stationary = {
        fixture_model("moving-average"),
        SequenceModel::moving_window(1, pair, max_w),
        SequenceModel::moving_window(2, pair, mean_w),
        SequenceModel::moving_window(2, pair, max_w)};
    for (const SequenceModel& model : stationary)
        for (size_t p : {1, 2}) {
            const auto rep = engine::check_identity_in_distribution(
                model, model, p, 2, stat_phis, 1e-10);
            ok = ok && rep.pass;
            worst = std::max(worst, rep.max_deviation);
        }

    // Ambiguous drivers keep the m = 1 strategy space enumerable; m = 2 runs
    // on a singleton driver, where the nested identity is still definitional.
    for (const SequenceModel& model :
         {fixture_model("moving-average"), SequenceModel::moving_window(1, pair, max_w)}) {
        const auto rep = engine::check_m_dependence(model, 1, 2, {prod, peak}, 1e-10);
        ok = ok && rep.pass;
        worst = std::max(worst, rep.max_deviation);
    }
    for (const SequenceModel& model : {SequenceModel::moving_window(2, single, mean_w),
                                       SequenceModel::moving_window(2, single, max_w)}) {
        const auto gap1 = engine::check_m_dependence(model, 1, 3, {prod, peak}, 1e-10);
        const auto gap2 = engine::check_m_dependence(model, 1, 4, {spread}, 1e-10);
        ok = ok && gap1.pass && gap2.pass;
        worst = std::max({worst, gap1.max_deviation, gap2.max_deviation});
    }

    const auto adj1 = engine::check_block_independence(
        fixture_model("moving-average"), 1, 2, 2, {prod}, 1e-10);
    const auto adj2 = engine::check_block_independence(
        SequenceModel::moving_window(2, single, mean_w), 1, 2, 2, {prod}, 1e-10);
    const bool controls = !adj1.pass && adj1.max_deviation > 1e-10 && !adj2.pass &&
                          adj2.max_deviation > 1e-10;

    Outcome o;
    o.pass = ok && controls;
    o.detail = "max deviation " + dev(worst) + "; no-gap controls deviate by " +
               num(adj1.max_deviation) + " and " + num(adj2.max_deviation);
    return o;
}

// 8. Layer-cake vs breakpoint-snapped quadrature, classical reduction of the
// Choquet integral, and Choquet domination of the upper expectation.
Outcome c8_choquet() {
    const std::vector<Functional> nonneg = {abs_first(), abs_sum2(),
                                            fn_max_partial_dev(2, {}, true)};
    double quad_dev = 0.0;
    size_t quad_cases = 0;
    bool settling = true;
    for (const std::string& name : fixture_names()) {
        const SequenceModel model = fixture_model(name);
        if (!model.exact_capable()) continue;
        for (const Functional& X : nonneg) {
            const auto curve = capacity::capacity_curve(model, X);
            const double exact = capacity::choquet_integral_finite(curve);
            const double t_max = curve.thresholds.back();
            const auto quad = capacity::choquet_integral_quadrature(
                curve_tail(curve), t_max,
                capacity::grid_with_breakpoints(t_max, 8, curve.thresholds));
            ++quad_cases;
            quad_dev = std::max(quad_dev, std::fabs(quad.value - exact));
            settling = settling && !quad.diverging;
        }
    }

    double classical_dev = 0.0;
    for (const AmbiguitySet& set : catalog_sets()) {
        if (set.n_laws() != 1) continue;
        const double mu = finite_mean(set.laws[0].finite_law());
        const SequenceModel model = SequenceModel::iid(set);
        for (size_t n = 1; n <= 3; ++n)
            classical_dev = std::max(
                classical_dev,
                std::fabs(capacity::choquet_integral_finite(model, fn_sum(n)) -
                          static_cast<double>(n) * mu));
    }

    double min_margin = 1e300;
    for (const std::string& name : fixture_names()) {
        const SequenceModel model = fixture_model(name);
        if (!model.exact_capable()) continue;
        for (const Functional& X : {abs_first(), abs_sum2()}) {
            const double cho = capacity::choquet_integral_finite(model, X);
            const double ue = engine::upper_expectation(model, X);
            min_margin = std::min(min_margin, cho - ue);
        }
    }

    Outcome o;
    o.pass = quad_dev <= 1e-8 && settling && classical_dev <= 1e-12 &&
             min_margin >= -1e-10;
    o.detail = std::to_string(quad_cases) + " quadrature cases (max gap " +
               dev(quad_dev) + "), classical reduction gap " + dev(classical_dev) +
               ", domination margin " + num(min_margin);
    return o;
}

// 9. Blocking schemes keep their construction invariants; shifted Z and W
// block sums stay under their weighted budgets; the W share of each block
// vanishes as the endpoints grow.
Outcome c9_blocking() {
    const size_t len = 1100;
    std::vector<double> quartic(len);
    std::vector<double> inv_sq(len);
    for (size_t i = 0; i < len; ++i) {
        const double v = static_cast<double>(i + 1);
        quartic[i] = v * v * v * v;
        inv_sq[i] = 1.0 / (v * v);
    }
    const std::vector<std::vector<double>> ladders = {
        quartic, std::vector<double>(len, 1.0), sequences::build_weights_M(inv_sq)};

    size_t schemes = 0;
    bool ok = true;
    for (size_t m = 0; m <= 2; ++m)
        for (const auto& M : ladders)
            for (size_t N : {50, 100, 250, 1000}) {
                const auto s = sequences::blocking_scheme(m, M, N);
                sequences::assert_blocking_invariants(s);
                ++schemes;
                ok = ok && s.a.front() == 0 && s.a.back() >= N;
                for (size_t k = 1; k < s.a.size(); ++k)
                    ok = ok && s.a[k] - s.a[k - 1] == s.l[k - 1];
                for (size_t k = 0; k < s.l.size(); ++k) {
                    ok = ok && s.l[k] >= m + 1;
                    if (k) ok = ok && s.l[k] >= s.l[k - 1];
                }
            }

    const std::vector<SequenceModel> models = {
        fixture_model("iid-ambiguous"), fixture_model("moving-average"),
        SequenceModel::moving_window(2, make_ambiguity_set({bern(0.3), bern(0.7)}),
                                     WindowSpec{WindowKind::MeanWindow, 1.0, 0.0})};
    double worst_z = -1e300;
    double worst_w = -1e300;
    bool w_trend = true;
    for (size_t m = 0; m <= 2; ++m) {
        const SequenceModel& model = models[m];
        for (const auto& M : ladders) {
            const auto s = sequences::blocking_scheme(m, M, 1000);
            double z_lhs = 0.0;
            double w_lhs = 0.0;
            double z_rhs = 0.0;
            double w_rhs = 0.0;
            size_t covered = 0;
            double prev_contrib = 1e300;
            double first_contrib = 0.0;
            double last_contrib = 0.0;
            for (size_t b = 1; b <= s.n_blocks(); ++b) {
                const double an = static_cast<double>(s.a[b]);
                const Functional z = sequences::shifted_block_functional(
                    s, sequences::BlockKind::Z, b);
                z_lhs += engine::upper_expectation(model, fn_power(z, 2)) / (an * an);
                while (covered < s.a[b]) {
                    ++covered;
                    const double level = static_cast<double>(covered);
                    const Functional y = fn_custom(
                        1, "y_sq", [level](const std::vector<double>& x) {
                            const double c = std::clamp(x[0], -level, level);
                            return c * c;
                        });
                    const double ysq = engine::upper_expectation(model, y);
                    z_rhs += M[covered - 1] * ysq / (level * level);
                    w_rhs += ysq / (level * level);
                }
                worst_z = std::max(worst_z, z_lhs - z_rhs);
                if (m >= 1) {
                    const Functional w = sequences::shifted_block_functional(
                        s, sequences::BlockKind::W, b);
                    const double contrib =
                        engine::upper_expectation(model, fn_power(w, 2)) / (an * an);
                    w_lhs += contrib;
                    worst_w = std::max(worst_w,
                                       w_lhs - static_cast<double>(m) * w_rhs);
                    w_trend = w_trend && contrib <= prev_contrib + 1e-15;
                    prev_contrib = contrib;
                    if (b == 1) first_contrib = contrib;
                    last_contrib = contrib;
                }
            }
            if (m >= 1) w_trend = w_trend && last_contrib < first_contrib;
        }
    }

    Outcome o;
    o.pass = ok && worst_z <= 1e-12 && worst_w <= 1e-12 && w_trend;
    o.detail = std::to_string(schemes) +
               " schemes hold their invariants; budget margins z " + num(worst_z) +
               ", w " + num(worst_w) + (w_trend ? ", w share decreasing" : "");
    return o;
}

// 10. Greedy geometric subsequences certify lambda a_{n_k} <= a_{n_{k+1}}
// <= lambda^3 a_{n_k + 1} on polynomial, exponential, and n log n growth.
Outcome c10_geometric() {
    std::vector<std::vector<double>> seqs(4);
    for (size_t i = 0; i < 64; ++i) {
        const double v = static_cast<double>(i + 1);
        seqs[0].push_back(v);
        seqs[1].push_back(v * v);
        seqs[3].push_back(v * std::log(v + 1.0));
    }
    for (size_t i = 0; i < 40; ++i)
        seqs[2].push_back(std::ldexp(1.0, static_cast<int>(i)));

    size_t pairs = 0;
    bool ok = true;
    for (const auto& a : seqs)
        for (double lambda : {1.5, 2.0, 4.0}) {
            const auto idx = sequences::geometric_subsequence(a, lambda);
            ok = ok && !idx.empty() && idx.front() == 1;
            for (size_t k = 0; k + 1 < idx.size(); ++k) {
                const size_t nk = idx[k];
                const size_t nk1 = idx[k + 1];
                ok = ok && nk1 > nk;
                ok = ok && a[nk1 - 1] >= lambda * a[nk - 1] * (1.0 - 1e-12);
                ok = ok && a[nk1 - 1] <=
                               lambda * lambda * lambda * a[nk] * (1.0 + 1e-12);
                ++pairs;
            }
        }
    Outcome o;
    o.pass = ok;
    o.detail = "both bounds re-verified on " + std::to_string(pairs) +
               " consecutive pairs, 4 growth laws x 3 ratios";
    return o;
}

// 11. One seeded million-step trajectory oscillates between both envelope
// means and visits the bracket densely.
Outcome c11_cluster() {
    const auto rep = lln::cluster_set_experiment(fixture_model("moving-average"),
                                                 0.3, 0.7, 12.0, 1000000, 42);
    Outcome o;
    o.pass = rep.limsup_estimate >= 0.65 && rep.liminf_estimate <= 0.35 &&
             rep.coverage >= 0.9;
    o.detail = "limsup " + num(rep.limsup_estimate) + " (>= 0.65), liminf " +
               num(rep.liminf_estimate) + " (<= 0.35), coverage " +
               num(rep.coverage) + " (>= 0.9)";
    return o;
}

// 12. The heavy-tail fixture exhibits divergence under the adversarial
// schedule; the integrable Pareto control does not.
Outcome c12_divergence() {
    const auto heavy = lln::divergence_experiment(fixture_model("heavy-tail"), 7,
                                                  100, 42);
    const auto control = lln::divergence_experiment(fixture_model("pareto2-control"),
                                                    7, 100, 42);
    Outcome o;
    o.pass = heavy.pass && heavy.growth_fraction >= 0.9 &&
             heavy.diagnostics_diverging && !control.pass &&
             !control.diagnostics_diverging;
    o.detail = "heavy-tail growth fraction " + num(heavy.growth_fraction) +
               " diverging; pareto2 control growth fraction " +
               num(control.growth_fraction) + " settling";
    return o;
}

// 13. Seeded stochastic experiments rewrite byte-identical CSV files across
// reruns and thread counts.
Outcome c13_determinism() {
    const auto dir = std::filesystem::temp_directory_path() / "slln_acceptance";
    size_t bytes = 0;
    bool ok = true;
    const auto both = [&](ExperimentConfig cfg, const char* threads_a,
                          const char* threads_b) {
        ::setenv("SLLN_THREADS", threads_a, 1);
        const std::string first = slurp(run_experiment(cfg).csv_path);
        ::setenv("SLLN_THREADS", threads_b, 1);
        const std::string second = slurp(run_experiment(cfg).csv_path);
        ok = ok && !first.empty() && first == second;
        bytes += first.size();
    };

    ExperimentConfig cluster(fixture_model("moving-average"));
    cluster.experiment = "cluster";
    cluster.fixture = "moving-average";
    cluster.n = 100000;
    cluster.target_a = 0.3;
    cluster.target_b = 0.7;
    cluster.seed = 42;
    cluster.out_dir = (dir / "cluster").string();
    both(cluster, "1", "4");

    ExperimentConfig theorem1(fixture_model("biased-sign"));
    theorem1.experiment = "theorem1";
    theorem1.fixture = "biased-sign";
    theorem1.checkpoints = {1000, 2000};
    theorem1.seed = 7;
    theorem1.out_dir = (dir / "theorem1").string();
    both(theorem1, "2", "5");

    ExperimentConfig divergence(fixture_model("heavy-tail"));
    divergence.experiment = "divergence";
    divergence.fixture = "heavy-tail";
    divergence.n_checkpoints = 4;
    divergence.paths = 4;
    divergence.seed = 42;
    divergence.out_dir = (dir / "divergence").string();
    both(divergence, "1", "3");

    ::unsetenv("SLLN_THREADS");
    Outcome o;
    o.pass = ok;
    o.detail = "cluster, theorem1, divergence reruns across thread counts, " +
               std::to_string(bytes) + " bytes compared per run";
    return o;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        Outcome (*fn)();
        double budget_seconds;
    };
    const Entry entries[] = {
        {"dp vs independent evaluation routes", c1_oracle_equivalence, 120.0},
        {"sub-linear axioms on randomized payoffs", c2_axioms, 0.0},
        {"iid partial-sum additivity", c3_additivity, 0.0},
        {"maximal inequality, explicit constant 2", c4_maximal_inequality, 300.0},
        {"empirical maximal-inequality constants", c5_kolmogorov, 0.0},
        {"moving-average envelope means", c6_mean_bounds, 0.0},
        {"stationarity and m-dependence", c7_dependence, 0.0},
        {"choquet integration", c8_choquet, 0.0},
        {"blocking schemes and block budgets", c9_blocking, 0.0},
        {"geometric subsequence bounds", c10_geometric, 0.0},
        {"cluster-set trajectory", c11_cluster, 180.0},
        {"heavy-tail divergence and control", c12_divergence, 300.0},
        {"seeded csv determinism", c13_determinism, 0.0},
    };

    int failures = 0;
    for (size_t i = 0; i < sizeof entries / sizeof entries[0]; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = entries[i].fn();
        } catch (const Error& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (o.pass && entries[i].budget_seconds > 0.0 &&
            secs > entries[i].budget_seconds) {
            o.pass = false;
            o.detail += " [exceeded the " + num(entries[i].budget_seconds) +
                        "s budget]";
        }
        std::printf("criterion %2zu: %s  (%6.1fs)  %s: %s\n", i + 1,
                    o.pass ? "PASS" : "FAIL", secs, entries[i].name,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    if (failures == 0)
        std::printf("all 13 criteria passed\n");
    else
        std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
