#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace slln {

// Payoff on the first `horizon` observables of a sequence model. eval must
// be total on every support tuple it is paired with.
struct Functional {
    size_t horizon = 0;
    std::function<double(const std::vector<double>&)> eval;
    std::string label;
};

Functional fn_sum(size_t n);
Functional fn_mean(size_t n);

// max over k <= n of S_k - centers[k-1], or |S_k - centers[k-1]| when
// absolute. Empty centers means centering at zero.
Functional fn_max_partial_dev(size_t n, std::vector<double> centers, bool absolute);

Functional fn_power(Functional inner, int k);
Functional fn_affine(Functional inner, double a, double b);
Functional fn_negate(const Functional& f);

Functional fn_custom(size_t n, std::string label,
                     std::function<double(const std::vector<double>&)> f);

} // namespace slln
