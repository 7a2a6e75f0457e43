#include "fixtures.hpp"

#include <algorithm>

#include "error.hpp"

namespace slln {

namespace {

SamplableDistribution bern(double p) {
    return SamplableDistribution::finite(
        make_finite_distribution({0.0, 1.0}, {1.0 - p, p}));
}

SamplableDistribution sign_coin(double p_plus) {
    return SamplableDistribution::finite(
        make_finite_distribution({-1.0, 1.0}, {1.0 - p_plus, p_plus}));
}

} // namespace

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{
        "moving-average",  "heavy-tail",      "classical-singleton",
        "iid-ambiguous",   "pareto2-control", "biased-sign",
    };
    return names;
}

bool is_fixture_name(const std::string& name) {
    const auto& names = fixture_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

SequenceModel fixture_model(const std::string& name) {
    if (name == "moving-average")
        return SequenceModel::moving_window(
            1, make_ambiguity_set({bern(0.3), bern(0.7)}),
            WindowSpec{WindowKind::MeanWindow, 1.0, 0.0});
    if (name == "heavy-tail")
        return SequenceModel::iid(make_ambiguity_set(
            {bern(0.5), SamplableDistribution::pareto(1.0, 1.0)}));
    if (name == "classical-singleton")
        return SequenceModel::iid(make_ambiguity_set({bern(0.5)}));
    if (name == "iid-ambiguous")
        return SequenceModel::iid(make_ambiguity_set({bern(0.3), bern(0.7)}));
    if (name == "pareto2-control")
        return SequenceModel::iid(
            make_ambiguity_set({SamplableDistribution::pareto(2.0, 1.0)}));
    if (name == "biased-sign")
        return SequenceModel::iid(
            make_ambiguity_set({sign_coin(0.998), sign_coin(0.999)}));
    fail(ErrorCode::BadArgument, "unknown fixture: " + name);
}

} // namespace slln
