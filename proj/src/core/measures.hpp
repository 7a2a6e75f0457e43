#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "rng.hpp"

namespace slln {

// Probability mass on finitely many real points. Support is kept strictly
// increasing; duplicate points are merged at construction.
struct FiniteDistribution {
    std::vector<double> support;
    std::vector<double> probs;

    size_t size() const { return support.size(); }
};

FiniteDistribution make_finite_distribution(std::vector<double> support,
                                            std::vector<double> probs);

double classical_expectation(const FiniteDistribution& d,
                             const std::function<double(double)>& f);

double finite_mean(const FiniteDistribution& d);
double finite_second_moment(const FiniteDistribution& d);

struct ParetoParams {
    double alpha = 1.0;
    double scale = 1.0;
};

// P(X > t) for Pareto(alpha, scale); equals 1 below the scale point.
double pareto_tail(const ParetoParams& p, double t);
// E[min(X, c)] for c >= 0. Finite for every alpha > 0.
double pareto_truncated_mean(const ParetoParams& p, double c);
// E[(X - c)^+]; +inf when alpha <= 1.
double pareto_excess_mean(const ParetoParams& p, double c);

enum class LawKind { Finite, Pareto, DiscretizedPareto };

// One candidate law: either an explicit finite distribution, an exact Pareto
// tail, or a finite discretization of a Pareto on a geometric grid.
class SamplableDistribution {
  public:
    static SamplableDistribution finite(FiniteDistribution d);
    static SamplableDistribution pareto(double alpha, double scale);
    static SamplableDistribution discretized_pareto(double alpha, double scale,
                                                    double t_max, int points);

    LawKind kind() const { return kind_; }
    bool finite_support() const { return kind_ != LawKind::Pareto; }
    bool has_finite_mean() const;

    double sample(RngStream& rng) const;

    const FiniteDistribution& finite_law() const;
    const ParetoParams& pareto_params() const;

    // Exact first/second moments; +inf where the tail is too heavy.
    double mean() const;
    double second_moment() const;

  private:
    SamplableDistribution() = default;

    LawKind kind_ = LawKind::Finite;
    FiniteDistribution finite_;
    ParetoParams pareto_;
};

// Finite set of candidate laws. When every law is finite and they all sit
// on exactly the same support points, the set carries an exact tabular
// form: the shared support plus one probability row per law.
struct AmbiguitySet {
    std::vector<SamplableDistribution> laws;

    bool exact_capable = false;
    std::vector<double> support;
    std::vector<std::vector<double>> law_probs;

    size_t n_laws() const { return laws.size(); }
    size_t support_size() const { return support.size(); }
};

AmbiguitySet make_ambiguity_set(std::vector<SamplableDistribution> laws);

nlohmann::json law_to_json(const SamplableDistribution& law);
SamplableDistribution law_from_json(const nlohmann::json& j);

nlohmann::json ambiguity_to_json(const AmbiguitySet& set);
AmbiguitySet ambiguity_from_json(const nlohmann::json& j);

} // namespace slln
