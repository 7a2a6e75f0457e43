#include "measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace slln {

FiniteDistribution make_finite_distribution(std::vector<double> support,
                                            std::vector<double> probs) {
    require(!support.empty(), ErrorCode::EmptySupport, "no support points");
    require(support.size() == probs.size(), ErrorCode::ParseError,
            "support and probs length mismatch");
    for (double x : support)
        require(std::isfinite(x), ErrorCode::ParseError, "support point not finite");

    double total = 0.0;
    for (double p : probs) {
        require(std::isfinite(p), ErrorCode::ParseError, "probability not finite");
        require(p >= 0.0, ErrorCode::NegativeProb, "probability below zero");
        total += p;
    }
    require(std::fabs(total - 1.0) <= 1e-9, ErrorCode::NotNormalizable,
            "probabilities sum to " + std::to_string(total));

    std::map<double, double> mass;
    for (size_t i = 0; i < support.size(); ++i) mass[support[i]] += probs[i] / total;

    FiniteDistribution d;
    d.support.reserve(mass.size());
    d.probs.reserve(mass.size());
    for (const auto& [x, p] : mass) {
        d.support.push_back(x);
        d.probs.push_back(p);
    }
    return d;
}

double classical_expectation(const FiniteDistribution& d,
                             const std::function<double(double)>& f) {
    double acc = 0.0;
    for (size_t i = 0; i < d.size(); ++i) acc += d.probs[i] * f(d.support[i]);
    return acc;
}

double finite_mean(const FiniteDistribution& d) {
    return classical_expectation(d, [](double x) { return x; });
}

double finite_second_moment(const FiniteDistribution& d) {
    return classical_expectation(d, [](double x) { return x * x; });
}

double pareto_tail(const ParetoParams& p, double t) {
    if (t <= p.scale) return 1.0;
    return std::pow(p.scale / t, p.alpha);
}

double pareto_truncated_mean(const ParetoParams& p, double c) {
    require(c >= 0.0, ErrorCode::BadArgument, "truncation level below zero");
    if (c <= p.scale) return c;
    const double s = p.scale;
    const double a = p.alpha;
    if (a == 1.0) return s * (1.0 + std::log(c / s));
    return s + std::pow(s, a) * (std::pow(c, 1.0 - a) - std::pow(s, 1.0 - a)) / (1.0 - a);
}

double pareto_excess_mean(const ParetoParams& p, double c) {
    if (p.alpha <= 1.0) return std::numeric_limits<double>::infinity();
    const double s = p.scale;
    const double a = p.alpha;
    if (c <= s) {
        const double mean = a * s / (a - 1.0);
        return mean - c;
    }
    return std::pow(s, a) * std::pow(c, 1.0 - a) / (a - 1.0);
}

SamplableDistribution SamplableDistribution::finite(FiniteDistribution d) {
    SamplableDistribution law;
    law.kind_ = LawKind::Finite;
    law.finite_ = std::move(d);
    return law;
}

SamplableDistribution SamplableDistribution::pareto(double alpha, double scale) {
    require(alpha > 0.0, ErrorCode::BadArgument, "pareto alpha must be positive");
    require(scale > 0.0, ErrorCode::BadArgument, "pareto scale must be positive");
    SamplableDistribution law;
    law.kind_ = LawKind::Pareto;
    law.pareto_ = ParetoParams{alpha, scale};
    return law;
}

SamplableDistribution SamplableDistribution::discretized_pareto(double alpha,
                                                                double scale,
                                                                double t_max,
                                                                int points) {
    require(alpha > 0.0, ErrorCode::BadArgument, "pareto alpha must be positive");
    require(scale > 0.0, ErrorCode::BadArgument, "pareto scale must be positive");
    require(t_max > scale, ErrorCode::BadArgument, "grid end must exceed the scale");
    require(points >= 2, ErrorCode::BadArgument, "need at least two grid points");

    const ParetoParams p{alpha, scale};
    std::vector<double> grid(static_cast<size_t>(points));
    const double ratio = t_max / scale;
    for (int j = 0; j < points; ++j)
        grid[static_cast<size_t>(j)] =
            scale * std::pow(ratio, static_cast<double>(j) / (points - 1));

    // Mass between consecutive grid points collapses onto the left point;
    // the last point absorbs the whole upper tail. Total mass is exactly 1.
    std::vector<double> probs(grid.size());
    for (size_t j = 0; j + 1 < grid.size(); ++j)
        probs[j] = pareto_tail(p, grid[j]) - pareto_tail(p, grid[j + 1]);
    probs.back() = pareto_tail(p, grid.back());

    SamplableDistribution law;
    law.kind_ = LawKind::DiscretizedPareto;
    law.pareto_ = p;
    law.finite_ = make_finite_distribution(std::move(grid), std::move(probs));
    return law;
}

bool SamplableDistribution::has_finite_mean() const {
    if (kind_ == LawKind::Pareto) return pareto_.alpha > 1.0;
    return true;
}

double SamplableDistribution::sample(RngStream& rng) const {
    if (kind_ == LawKind::Pareto) {
        const double u = rng.next_u01();
        return pareto_.scale * std::pow(u, -1.0 / pareto_.alpha);
    }
    const double u = rng.next_u01();
    double cum = 0.0;
    for (size_t i = 0; i < finite_.size(); ++i) {
        cum += finite_.probs[i];
        if (u <= cum) return finite_.support[i];
    }
    return finite_.support.back();
}

const FiniteDistribution& SamplableDistribution::finite_law() const {
    require(finite_support(), ErrorCode::NotExactCapable,
            "law has unbounded support");
    return finite_;
}

const ParetoParams& SamplableDistribution::pareto_params() const {
    require(kind_ != LawKind::Finite, ErrorCode::BadArgument,
            "law has no pareto parameters");
    return pareto_;
}

double SamplableDistribution::mean() const {
    if (kind_ == LawKind::Pareto) {
        if (pareto_.alpha <= 1.0) return std::numeric_limits<double>::infinity();
        return pareto_.alpha * pareto_.scale / (pareto_.alpha - 1.0);
    }
    return finite_mean(finite_);
}

double SamplableDistribution::second_moment() const {
    if (kind_ == LawKind::Pareto) {
        if (pareto_.alpha <= 2.0) return std::numeric_limits<double>::infinity();
        return pareto_.alpha * pareto_.scale * pareto_.scale / (pareto_.alpha - 2.0);
    }
    return finite_second_moment(finite_);
}

AmbiguitySet make_ambiguity_set(std::vector<SamplableDistribution> laws) {
    require(!laws.empty(), ErrorCode::EmptyAmbiguitySet, "no candidate laws");

    AmbiguitySet set;
    set.laws = std::move(laws);

    // Exact DP needs one shared support: all laws finite and on exactly the
    // same points. List order is the tie-breaking order downstream.
    const bool all_finite =
        std::all_of(set.laws.begin(), set.laws.end(),
                    [](const SamplableDistribution& l) { return l.finite_support(); });
    if (!all_finite) return set;

    const auto& first = set.laws.front().finite_law().support;
    const bool same_support = std::all_of(
        set.laws.begin(), set.laws.end(), [&](const SamplableDistribution& l) {
            return l.finite_law().support == first;
        });
    if (!same_support) return set;

    set.exact_capable = true;
    set.support = first;
    set.law_probs.reserve(set.n_laws());
    for (const auto& law : set.laws) set.law_probs.push_back(law.finite_law().probs);
    return set;
}

nlohmann::json law_to_json(const SamplableDistribution& law) {
    nlohmann::json j;
    switch (law.kind()) {
        case LawKind::Finite:
            j["kind"] = "finite";
            j["support"] = law.finite_law().support;
            j["probs"] = law.finite_law().probs;
            break;
        case LawKind::Pareto:
            j["kind"] = "pareto";
            j["alpha"] = law.pareto_params().alpha;
            j["scale"] = law.pareto_params().scale;
            break;
        case LawKind::DiscretizedPareto:
            j["kind"] = "discretized_pareto";
            j["alpha"] = law.pareto_params().alpha;
            j["scale"] = law.pareto_params().scale;
            j["t_max"] = law.finite_law().support.back();
            j["points"] = law.finite_law().size();
            break;
    }
    return j;
}

SamplableDistribution law_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("kind"), ErrorCode::ParseError,
            "law must be an object with a kind");
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "finite") {
            return SamplableDistribution::finite(make_finite_distribution(
                j.at("support").get<std::vector<double>>(),
                j.at("probs").get<std::vector<double>>()));
        }
        if (kind == "pareto") {
            return SamplableDistribution::pareto(j.at("alpha").get<double>(),
                                                 j.at("scale").get<double>());
        }
        if (kind == "discretized_pareto") {
            return SamplableDistribution::discretized_pareto(
                j.at("alpha").get<double>(), j.at("scale").get<double>(),
                j.at("t_max").get<double>(), j.at("points").get<int>());
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad law fields: ") + e.what());
    }
    fail(ErrorCode::ParseError, "unknown law kind '" + kind + "'");
}

nlohmann::json ambiguity_to_json(const AmbiguitySet& set) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& law : set.laws) arr.push_back(law_to_json(law));
    return arr;
}

AmbiguitySet ambiguity_from_json(const nlohmann::json& j) {
    require(j.is_array(), ErrorCode::ParseError, "ambiguity set must be an array");
    std::vector<SamplableDistribution> laws;
    laws.reserve(j.size());
    for (const auto& item : j) laws.push_back(law_from_json(item));
    return make_ambiguity_set(std::move(laws));
}

} // namespace slln
