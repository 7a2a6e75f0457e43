#include "config.hpp"

#include <algorithm>

#include "fixtures.hpp"
#include "functional.hpp"

namespace slln {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& msg) {
    fail(ErrorCode::ParseError, msg);
}

double get_double(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    require(j.at(key).is_number(), ErrorCode::ParseError,
            std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

size_t get_size(const json& j, const char* key, size_t fallback) {
    if (!j.contains(key)) return fallback;
    require(j.at(key).is_number_unsigned(), ErrorCode::ParseError,
            std::string(key) + " must be a nonnegative integer");
    return j.at(key).get<size_t>();
}

std::string get_string(const json& j, const char* key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    require(j.at(key).is_string(), ErrorCode::ParseError,
            std::string(key) + " must be a string");
    return j.at(key).get<std::string>();
}

SequenceModel model_from_json(const json& j) {
    require(j.is_object(), ErrorCode::ParseError, "model must be an object");
    const std::string kind = get_string(j, "kind", "iid");
    require(j.contains("laws"), ErrorCode::ParseError, "model needs laws");
    AmbiguitySet driver = ambiguity_from_json(j.at("laws"));
    if (kind == "iid") return SequenceModel::iid(std::move(driver));
    if (kind == "moving_window") {
        const size_t m = get_size(j, "m", 1);
        WindowSpec w{WindowKind::MeanWindow, 1.0, 0.0};
        if (j.contains("window")) {
            const json& wj = j.at("window");
            w = window_from_name(get_string(wj, "name", "mean_window"),
                                 get_double(wj, "a", 1.0),
                                 get_double(wj, "b", 0.0));
        }
        return SequenceModel::moving_window(m, std::move(driver), w);
    }
    parse_fail("model kind must be iid or moving_window, got " + kind);
}

SequenceModel resolve_model(const json& cfg, std::string& fixture) {
    if (cfg.contains("fixture")) {
        fixture = get_string(cfg, "fixture", "");
        require(is_fixture_name(fixture), ErrorCode::BadArgument,
                "unknown fixture: " + fixture);
        return fixture_model(fixture);
    }
    if (cfg.contains("model")) {
        fixture = "custom";
        return model_from_json(cfg.at("model"));
    }
    parse_fail("config needs a fixture name or a model object");
}

bool stochastic_kind(const std::string& kind) {
    return kind == "cluster" || kind == "divergence" || kind == "theorem1";
}

} // namespace

SequenceModel model_spec_from_json(const json& j) {
    require(j.is_object(), ErrorCode::ParseError,
            "model spec must be an object");
    if (j.contains("fixture") || j.contains("model")) {
        std::string fixture;
        return resolve_model(j, fixture);
    }
    return model_from_json(j);
}

const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds{
        "expect",       "capacity", "choquet",    "blocking", "inequalities",
        "mean-bounds",  "cluster",  "divergence", "theorem1",
    };
    return kinds;
}

Functional functional_from_json(const json& j) {
    require(j.is_object() && j.contains("kind"), ErrorCode::ParseError,
            "functional must be an object with a kind");
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "sum") return fn_sum(get_size(j, "n", 1));
        if (kind == "mean") return fn_mean(get_size(j, "n", 1));
        if (kind == "max_partial_dev") {
            std::vector<double> centers;
            if (j.contains("centers"))
                centers = j.at("centers").get<std::vector<double>>();
            const bool absolute = j.value("absolute", true);
            return fn_max_partial_dev(get_size(j, "n", 1), std::move(centers),
                                      absolute);
        }
        if (kind == "power") {
            require(j.contains("inner"), ErrorCode::ParseError,
                    "power needs an inner functional");
            return fn_power(functional_from_json(j.at("inner")),
                            static_cast<int>(get_size(j, "k", 2)));
        }
        if (kind == "affine") {
            require(j.contains("inner"), ErrorCode::ParseError,
                    "affine needs an inner functional");
            return fn_affine(functional_from_json(j.at("inner")),
                             get_double(j, "a", 1.0), get_double(j, "b", 0.0));
        }
        fail(ErrorCode::UnknownFunctional, "no functional named " + kind);
    } catch (const json::exception& e) {
        parse_fail(std::string("bad functional fields: ") + e.what());
    }
}

capacity::EventPredicate event_from_json(const json& j) {
    require(j.is_object() && j.contains("functional"), ErrorCode::ParseError,
            "event needs a functional");
    const Functional f = functional_from_json(j.at("functional"));
    const capacity::Cmp cmp = capacity::cmp_from_name(get_string(j, "cmp", "ge"));
    return capacity::threshold_event(f, cmp, get_double(j, "value", 1.0));
}

engine::AdversaryStrategy strategy_from_json(const json& j, size_t n_laws) {
    require(j.is_object() && j.contains("kind"), ErrorCode::ParseError,
            "strategy must be an object with a kind");
    auto check_law = [n_laws](size_t law) {
        require(law < n_laws, ErrorCode::BadArgument,
                "law index " + std::to_string(law) + " out of range for a " +
                    std::to_string(n_laws) + "-law set");
    };
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "constant") {
            const size_t law = get_size(j, "law", 0);
            check_law(law);
            return engine::AdversaryStrategy::constant(law);
        }
        if (kind == "epochs") {
            require(j.contains("blocks") && j.at("blocks").is_array(),
                    ErrorCode::ParseError, "epochs needs a blocks array");
            std::vector<std::pair<size_t, size_t>> blocks;
            for (const auto& e : j.at("blocks")) {
                require(e.is_array() && e.size() == 2, ErrorCode::ParseError,
                        "each block is [length, law]");
                const auto len = e.at(0).get<size_t>();
                const auto law = e.at(1).get<size_t>();
                check_law(law);
                blocks.emplace_back(len, law);
            }
            return engine::AdversaryStrategy::epoch_schedule(std::move(blocks));
        }
        parse_fail("strategy kind must be constant or epochs, got " + kind);
    } catch (const json::exception& e) {
        parse_fail(std::string("bad strategy fields: ") + e.what());
    }
}

ExperimentConfig parse_config(const std::string& text,
                              const std::string& subcommand) {
    json cfg;
    try {
        cfg = json::parse(text);
    } catch (const json::exception& e) {
        parse_fail(e.what());
    }
    require(cfg.is_object(), ErrorCode::ParseError,
            "config must be a JSON object");

    std::string fixture;
    ExperimentConfig out(resolve_model(cfg, fixture));
    out.fixture = std::move(fixture);
    out.experiment =
        subcommand.empty() ? get_string(cfg, "experiment", "") : subcommand;
    const auto& kinds = experiment_kinds();
    require(std::find(kinds.begin(), kinds.end(), out.experiment) != kinds.end(),
            ErrorCode::ParseError, "unknown experiment: " + out.experiment);

    const size_t n_laws = out.model.driver().n_laws();

    try {
        out.n = get_size(cfg, "n", 0);
        out.x = get_double(cfg, "x", 1.0);
        if (cfg.contains("mus"))
            out.mus = cfg.at("mus").get<std::vector<double>>();
        if (cfg.contains("a")) out.target_a = get_double(cfg, "a", 0.0);
        if (cfg.contains("b")) out.target_b = get_double(cfg, "b", 0.0);
        if (out.target_a && out.target_b)
            require(*out.target_a <= *out.target_b, ErrorCode::TargetOrderError,
                    "cluster targets need a <= b");
        out.epoch_growth = get_double(cfg, "epoch_growth", 12.0);
        if (cfg.contains("checkpoints"))
            out.checkpoints = cfg.at("checkpoints").get<std::vector<size_t>>();
        out.n_checkpoints = get_size(cfg, "n_checkpoints", 7);
        out.paths = get_size(cfg, "paths", 100);
        out.epsilon = get_double(cfg, "epsilon", 0.05);
        out.family = get_string(cfg, "family", "exhaustive-small");
        out.weight_rule = get_string(cfg, "weights", "n");
        out.m_rule = get_string(cfg, "M_rule", "ones");
        out.out_dir = get_string(cfg, "out", "out");
        out.tol_exact = get_double(cfg, "tol_exact", 1e-10);
        out.tol_quadrature = get_double(cfg, "tol_quadrature", 1e-8);

        if (cfg.contains("functional")) {
            out.functional = cfg.at("functional");
            functional_from_json(out.functional);
        }
        if (cfg.contains("event")) {
            out.event = cfg.at("event");
            event_from_json(out.event);
        }
        if (cfg.contains("strategy")) {
            out.strategy = cfg.at("strategy");
            strategy_from_json(out.strategy, n_laws);
        }

        if (cfg.contains("models")) {
            require(cfg.at("models").is_array(), ErrorCode::ParseError,
                    "models must be an array");
            for (const auto& e : cfg.at("models")) {
                if (e.is_string()) {
                    const auto name = e.get<std::string>();
                    require(is_fixture_name(name), ErrorCode::BadArgument,
                            "unknown fixture: " + name);
                    out.models.push_back(fixture_model(name));
                } else {
                    out.models.push_back(model_from_json(e));
                }
            }
        }

        if (cfg.contains("seed")) {
            require(cfg.at("seed").is_number_unsigned(), ErrorCode::ParseError,
                    "seed must be a nonnegative integer");
            out.seed = cfg.at("seed").get<uint64_t>();
        }
    } catch (const json::exception& e) {
        parse_fail(std::string("bad config fields: ") + e.what());
    }
    if (stochastic_kind(out.experiment))
        require(out.seed.has_value(), ErrorCode::MissingSeed,
                out.experiment + " is stochastic and needs a seed");
    return out;
}

} // namespace slln
