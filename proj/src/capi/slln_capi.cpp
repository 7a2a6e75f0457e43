#include "slln/slln.h"

#include <cstring>
#include <new>
#include <string>
#include <utility>

#include <json.hpp>

#include "capacity.hpp"
#include "config.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "fixtures.hpp"
#include "model.hpp"

struct slln_model {
    slln::SequenceModel model;
};

namespace {

thread_local std::string g_last_error;

void copy_out(const std::string& text, char* buf, size_t cap) {
    if (buf == nullptr || cap == 0) return;
    const size_t n = std::min(text.size(), cap - 1);
    std::memcpy(buf, text.data(), n);
    buf[n] = '\0';
}

// Runs fn, captures any failure into the thread-local message, and maps
// it onto the status bands shared with the process exit codes.
template <typename Fn>
int guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return std::forward<Fn>(fn)();
    } catch (const slln::Error& e) {
        g_last_error = e.what();
        return slln::exit_code_for(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SLLN_RESOURCE_CAP;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SLLN_INTERNAL_ERROR;
    } catch (...) {
        g_last_error = "unknown failure";
        return SLLN_INTERNAL_ERROR;
    }
}

int expectation_call(const slln_model* model, const char* functional_json,
                     double* out, bool upper) {
    return guarded([&] {
        slln::require(model != nullptr && functional_json != nullptr &&
                          out != nullptr,
                      slln::ErrorCode::BadArgument, "null argument");
        const auto j = nlohmann::json::parse(functional_json, nullptr, false);
        slln::require(!j.is_discarded(), slln::ErrorCode::ParseError,
                      "functional is not valid JSON");
        const slln::Functional f = slln::functional_from_json(j);
        *out = upper ? slln::engine::upper_expectation(model->model, f)
                     : slln::engine::lower_expectation(model->model, f);
        return SLLN_OK;
    });
}

int capacity_call(const slln_model* model, const char* event_json, double* out,
                  bool upper) {
    return guarded([&] {
        slln::require(model != nullptr && event_json != nullptr &&
                          out != nullptr,
                      slln::ErrorCode::BadArgument, "null argument");
        const auto j = nlohmann::json::parse(event_json, nullptr, false);
        slln::require(!j.is_discarded(), slln::ErrorCode::ParseError,
                      "event is not valid JSON");
        const slln::capacity::EventPredicate ev = slln::event_from_json(j);
        *out = upper ? slln::capacity::upper_capacity(model->model, ev)
                     : slln::capacity::lower_capacity(model->model, ev);
        return SLLN_OK;
    });
}

} // namespace

extern "C" {

const char* slln_version(void) { return "1.0.0"; }

const char* slln_last_error(void) { return g_last_error.c_str(); }

int slln_model_create(const char* model_json, slln_model** out) {
    return guarded([&] {
        slln::require(model_json != nullptr && out != nullptr,
                      slln::ErrorCode::BadArgument, "null argument");
        *out = nullptr;
        const auto j = nlohmann::json::parse(model_json, nullptr, false);
        slln::require(!j.is_discarded(), slln::ErrorCode::ParseError,
                      "model spec is not valid JSON");
        *out = new slln_model{slln::model_spec_from_json(j)};
        return SLLN_OK;
    });
}

void slln_model_destroy(slln_model* model) { delete model; }

int slln_model_describe(const slln_model* model, char* buf, size_t cap) {
    return guarded([&] {
        slln::require(model != nullptr, slln::ErrorCode::BadArgument,
                      "null model");
        copy_out(model->model.describe(), buf, cap);
        return SLLN_OK;
    });
}

int slln_upper_expectation(const slln_model* model, const char* functional_json,
                           double* out) {
    return expectation_call(model, functional_json, out, true);
}

int slln_lower_expectation(const slln_model* model, const char* functional_json,
                           double* out) {
    return expectation_call(model, functional_json, out, false);
}

int slln_upper_capacity(const slln_model* model, const char* event_json,
                        double* out) {
    return capacity_call(model, event_json, out, true);
}

int slln_lower_capacity(const slln_model* model, const char* event_json,
                        double* out) {
    return capacity_call(model, event_json, out, false);
}

int slln_run_experiment(const char* config_json, const char* subcommand,
                        const uint64_t* seed, const char* out_dir, char* summary,
                        size_t summary_cap) {
    return guarded([&] {
        slln::require(config_json != nullptr, slln::ErrorCode::BadArgument,
                      "null config");
        std::string text = config_json;
        if (seed != nullptr) {
            auto j = nlohmann::json::parse(text, nullptr, false);
            slln::require(!j.is_discarded(), slln::ErrorCode::ParseError,
                          "config is not valid JSON");
            j["seed"] = *seed;
            text = j.dump();
        }
        slln::ExperimentConfig cfg = slln::parse_config(
            text, subcommand != nullptr ? subcommand : "");
        if (out_dir != nullptr) cfg.out_dir = out_dir;
        const slln::ExperimentOutcome outcome = slln::run_experiment(cfg);
        std::string joined;
        for (const std::string& line : outcome.summary) {
            if (!joined.empty()) joined += '\n';
            joined += line;
        }
        if (!joined.empty()) joined += '\n';
        joined += "csv: " + outcome.csv_path;
        copy_out(joined, summary, summary_cap);
        return outcome.pass ? SLLN_OK : SLLN_ASSERTION_FAILED;
    });
}

int slln_list_fixtures(char* buf, size_t cap) {
    return guarded([&] {
        std::string text;
        for (const std::string& name : slln::fixture_names()) {
            if (!text.empty()) text += '\n';
            text += name;
        }
        copy_out(text, buf, cap);
        return SLLN_OK;
    });
}

} // extern "C"
