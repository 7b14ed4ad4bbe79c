#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tauberkit/errors.hpp"

namespace tauberkit {

// Compensated (Kahan) accumulator. Keeps long quadrature and series sums
// accurate to a few ulp of the true value independent of term count.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

inline double trapezoid(std::span<const double> f, double h) {
    if (f.size() < 2) return 0.0;
    KahanSum s;
    for (std::size_t i = 0; i + 1 < f.size(); ++i) s.add(0.5 * h * (f[i] + f[i + 1]));
    return s.value();
}

// Cumulative trapezoid integral at each grid point; out[0] = 0.
inline std::vector<double> cumulative_trapezoid(std::span<const double> f, double h) {
    std::vector<double> out(f.size(), 0.0);
    KahanSum s;
    for (std::size_t i = 1; i < f.size(); ++i) {
        s.add(0.5 * h * (f[i - 1] + f[i]));
        out[i] = s.value();
    }
    return out;
}

// Composite Simpson rule; requires an even number of intervals.
inline double simpson(std::span<const double> f, double h) {
    if (f.size() < 3) fail(errc::odd_intervals, "Simpson rule needs at least 2 intervals");
    if ((f.size() - 1) % 2 != 0)
        fail(errc::odd_intervals, "Simpson rule needs an even interval count, got " +
                                      std::to_string(f.size() - 1));
    KahanSum s;
    s.add(f[0]);
    s.add(f[f.size() - 1]);
    for (std::size_t i = 1; i + 1 < f.size(); i += 2) s.add(4.0 * f[i]);
    for (std::size_t i = 2; i + 1 < f.size(); i += 2) s.add(2.0 * f[i]);
    return s.value() * h / 3.0;
}

} // namespace tauberkit
