#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tauberkit {

// Sampled diagnostic curve with the analytic limit it should approach.
// sup_deviation_tail = sup |value - target| over [window_lo, window_hi].
struct Trace {
    std::vector<double> x;
    std::vector<double> value;
    double target = 0.0;
    double sup_deviation_tail = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;

    // Recompute the tail deviation over [lo, hi] (by x).
    void set_window(double lo, double hi) {
        window_lo = lo;
        window_hi = hi;
        double sup = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i] >= lo && x[i] <= hi) sup = std::max(sup, std::abs(value[i] - target));
        sup_deviation_tail = sup;
    }

    // Window covering the last `fraction` of the x range.
    void set_tail_window(double fraction = 0.2) {
        if (x.empty()) return;
        double lo = x.back() - fraction * (x.back() - x.front());
        set_window(lo, x.back());
    }
};

} // namespace tauberkit
