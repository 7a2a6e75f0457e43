#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "capacity.hpp"
#include "engine.hpp"
#include "model.hpp"

namespace slln {

// One experiment invocation, fully resolved: model in place, defaults
// filled, indices validated. Field relevance depends on `experiment`.
struct ExperimentConfig {
    explicit ExperimentConfig(SequenceModel m) : model(std::move(m)) {}

    std::string experiment;
    std::string fixture = "custom";
    SequenceModel model;
    std::vector<SequenceModel> models;  // theorem1 marginal cycle

    size_t n = 0;
    double x = 1.0;
    std::vector<double> mus;
    std::optional<double> target_a;
    std::optional<double> target_b;
    double epoch_growth = 12.0;
    std::vector<size_t> checkpoints;
    size_t n_checkpoints = 7;
    size_t paths = 100;
    double epsilon = 0.05;
    std::string family = "exhaustive-small";
    std::string weight_rule = "n";  // theorem1: n | sqrt_n_log_n | sqrt_n
    std::string m_rule = "ones";    // blocking: ones | linear | quartic

    nlohmann::json functional;  // optional payoff spec
    nlohmann::json event;       // optional event spec
    nlohmann::json strategy;    // optional adversary spec

    std::optional<uint64_t> seed;
    std::string out_dir = "out";
    double tol_exact = 1e-10;
    double tol_quadrature = 1e-8;
};

const std::vector<std::string>& experiment_kinds();

// subcommand wins over the config's own "experiment" field; pass empty to
// require the field.
ExperimentConfig parse_config(const std::string& text,
                              const std::string& subcommand = "");

// Accepts {"fixture": "<name>"}, {"model": {...}}, or a bare model object.
SequenceModel model_spec_from_json(const nlohmann::json& j);

Functional functional_from_json(const nlohmann::json& j);
capacity::EventPredicate event_from_json(const nlohmann::json& j);
engine::AdversaryStrategy strategy_from_json(const nlohmann::json& j,
                                             size_t n_laws);

} // namespace slln
