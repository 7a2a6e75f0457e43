#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "measures.hpp"

namespace slln {

enum class WindowKind { Identity, MeanWindow, MaxWindow, AffineWindow };

// Named window functions form a closed vocabulary so configs stay data.
// AffineWindow maps a window to a * mean(window) + b.
struct WindowSpec {
    WindowKind kind = WindowKind::Identity;
    double a = 1.0;
    double b = 0.0;
};

double window_value(const WindowSpec& w, const double* vals, size_t len);
const char* window_name(WindowKind k);
WindowSpec window_from_name(const std::string& name, double a, double b);

// Observable sequence X_i built from an i.i.d.-across-time driver with an
// ambiguous marginal. IID: X_i = eps_i. MovingWindow: X_i =
// g(eps_i, ..., eps_{i+m}), which is m-dependent and stationary.
class SequenceModel {
  public:
    static SequenceModel iid(AmbiguitySet driver);
    static SequenceModel moving_window(size_t m, AmbiguitySet driver, WindowSpec w);

    bool is_iid() const { return iid_; }
    size_t m() const { return m_; }
    const AmbiguitySet& driver() const { return driver_; }
    const WindowSpec& window() const { return window_; }

    size_t drivers_for(size_t n_obs) const { return n_obs + m_; }
    bool exact_capable() const { return driver_.exact_capable; }
    size_t support_size() const { return driver_.support_size(); }

    // Window values tabulated over driver support index tuples. Index is the
    // base-s encoding of (m+1) consecutive driver indices, oldest first.
    const std::vector<double>& obs_table() const;

    double window_of_values(const double* vals, size_t len) const {
        return window_value(window_, vals, len);
    }

    std::string describe() const;

  private:
    SequenceModel() = default;

    bool iid_ = true;
    size_t m_ = 0;
    AmbiguitySet driver_;
    WindowSpec window_;
    std::vector<double> obs_table_;
};

} // namespace slln
