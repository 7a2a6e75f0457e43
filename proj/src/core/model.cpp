#include "model.hpp"

#include <algorithm>
#include <cmath>

namespace slln {

double window_value(const WindowSpec& w, const double* vals, size_t len) {
    switch (w.kind) {
        case WindowKind::Identity:
            return vals[len - 1];
        case WindowKind::MeanWindow: {
            double s = 0.0;
            for (size_t i = 0; i < len; ++i) s += vals[i];
            return s / static_cast<double>(len);
        }
        case WindowKind::MaxWindow: {
            double best = vals[0];
            for (size_t i = 1; i < len; ++i) best = std::max(best, vals[i]);
            return best;
        }
        case WindowKind::AffineWindow: {
            double s = 0.0;
            for (size_t i = 0; i < len; ++i) s += vals[i];
            return w.a * (s / static_cast<double>(len)) + w.b;
        }
    }
    fail(ErrorCode::Internal, "unhandled window kind");
}

const char* window_name(WindowKind k) {
    switch (k) {
        case WindowKind::Identity: return "identity";
        case WindowKind::MeanWindow: return "mean_window";
        case WindowKind::MaxWindow: return "max_window";
        case WindowKind::AffineWindow: return "affine_window";
    }
    return "unknown";
}

WindowSpec window_from_name(const std::string& name, double a, double b) {
    WindowSpec w;
    w.a = a;
    w.b = b;
    if (name == "identity") w.kind = WindowKind::Identity;
    else if (name == "mean_window") w.kind = WindowKind::MeanWindow;
    else if (name == "max_window") w.kind = WindowKind::MaxWindow;
    else if (name == "affine_window") w.kind = WindowKind::AffineWindow;
    else fail(ErrorCode::UnknownWindowFn, "no window function named '" + name + "'");
    return w;
}

namespace {

// Tabulate g over all (m+1)-tuples of support indices. Cap keeps the table
// from exploding for wide supports with large m.
std::vector<double> build_obs_table(const AmbiguitySet& driver, size_t m,
                                    const WindowSpec& w) {
    const size_t s = driver.support_size();
    size_t cells = 1;
    for (size_t i = 0; i <= m; ++i) {
        require(cells <= (size_t{1} << 24) / s, ErrorCode::StateSpaceCap,
                "window table too large");
        cells *= s;
    }
    std::vector<double> table(cells);
    std::vector<double> vals(m + 1);
    for (size_t idx = 0; idx < cells; ++idx) {
        size_t rem = idx;
        for (size_t pos = m + 1; pos-- > 0;) {
            vals[pos] = driver.support[rem % s];
            rem /= s;
        }
        table[idx] = window_value(w, vals.data(), m + 1);
    }
    return table;
}

} // namespace

SequenceModel SequenceModel::iid(AmbiguitySet driver) {
    SequenceModel model;
    model.iid_ = true;
    model.m_ = 0;
    model.window_ = WindowSpec{WindowKind::Identity, 1.0, 0.0};
    model.driver_ = std::move(driver);
    if (model.driver_.exact_capable)
        model.obs_table_ = build_obs_table(model.driver_, 0, model.window_);
    return model;
}

SequenceModel SequenceModel::moving_window(size_t m, AmbiguitySet driver,
                                           WindowSpec w) {
    require(w.kind != WindowKind::Identity || m == 0, ErrorCode::BadArgument,
            "identity window requires m = 0");
    SequenceModel model;
    model.iid_ = false;
    model.m_ = m;
    model.window_ = w;
    model.driver_ = std::move(driver);
    if (model.driver_.exact_capable)
        model.obs_table_ = build_obs_table(model.driver_, m, w);
    return model;
}

const std::vector<double>& SequenceModel::obs_table() const {
    require(exact_capable(), ErrorCode::NotExactCapable,
            "driver laws lack a shared finite support");
    return obs_table_;
}

std::string SequenceModel::describe() const {
    std::string out = iid_ ? "iid" : "moving_window(m=" + std::to_string(m_) +
                                         ", " + window_name(window_.kind) + ")";
    out += ", " + std::to_string(driver_.n_laws()) + " laws";
    if (exact_capable())
        out += ", support " + std::to_string(driver_.support_size());
    return out;
}

} // namespace slln
