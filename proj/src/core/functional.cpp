#include "functional.hpp"

#include <cmath>
#include <limits>

namespace slln {

Functional fn_sum(size_t n) {
    require(n >= 1, ErrorCode::BadArgument, "horizon must be positive");
    Functional f;
    f.horizon = n;
    f.label = "sum";
    f.eval = [](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    };
    return f;
}

Functional fn_mean(size_t n) {
    require(n >= 1, ErrorCode::BadArgument, "horizon must be positive");
    Functional f;
    f.horizon = n;
    f.label = "mean";
    f.eval = [n](const std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v;
        return s / static_cast<double>(n);
    };
    return f;
}

Functional fn_max_partial_dev(size_t n, std::vector<double> centers, bool absolute) {
    require(n >= 1, ErrorCode::BadArgument, "horizon must be positive");
    require(centers.empty() || centers.size() == n, ErrorCode::BadArgument,
            "centers must be empty or one per prefix");
    if (centers.empty()) centers.assign(n, 0.0);
    Functional f;
    f.horizon = n;
    f.label = absolute ? "max_abs_partial_dev" : "max_partial_dev";
    f.eval = [centers = std::move(centers), absolute](const std::vector<double>& x) {
        double s = 0.0;
        double best = -std::numeric_limits<double>::infinity();
        for (size_t k = 0; k < x.size(); ++k) {
            s += x[k];
            double d = s - centers[k];
            if (absolute) d = std::fabs(d);
            if (d > best) best = d;
        }
        return best;
    };
    return f;
}

Functional fn_power(Functional inner, int k) {
    require(k >= 1, ErrorCode::BadArgument, "power must be >= 1");
    Functional f;
    f.horizon = inner.horizon;
    f.label = "pow" + std::to_string(k) + "(" + inner.label + ")";
    f.eval = [inner = std::move(inner.eval), k](const std::vector<double>& x) {
        return std::pow(inner(x), k);
    };
    return f;
}

Functional fn_affine(Functional inner, double a, double b) {
    Functional f;
    f.horizon = inner.horizon;
    f.label = "affine(" + inner.label + ")";
    f.eval = [inner = std::move(inner.eval), a, b](const std::vector<double>& x) {
        return a * inner(x) + b;
    };
    return f;
}

Functional fn_negate(const Functional& f) {
    Functional g;
    g.horizon = f.horizon;
    g.label = "neg(" + f.label + ")";
    g.eval = [inner = f.eval](const std::vector<double>& x) { return -inner(x); };
    return g;
}

Functional fn_custom(size_t n, std::string label,
                     std::function<double(const std::vector<double>&)> f) {
    require(n >= 1, ErrorCode::BadArgument, "horizon must be positive");
    Functional g;
    g.horizon = n;
    g.label = std::move(label);
    g.eval = std::move(f);
    return g;
}

} // namespace slln
