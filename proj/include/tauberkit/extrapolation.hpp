#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace tauberkit {

// One Aitken delta-squared step on (s0, s1, s2).
// Degenerate second difference means the sequence is (locally) constant or
// linear in n; passing s0 through keeps exact sequences exact.
inline double aitken_step(double s0, double s1, double s2) {
    double dx = s1 - s0;
    double dx2 = s2 - 2.0 * s1 + s0;
    if (std::abs(dx2) <= std::numeric_limits<double>::min() * (1.0 + std::abs(s0)))
        return s0;
    return s0 - dx * dx / dx2;
}

struct AitkenResult {
    double value = 0.0;     // final iterate
    double residual = 0.0;  // |final iterate - previous iterate|
    std::size_t rounds = 0; // delta-squared passes applied
};

// Iterated Aitken acceleration. Each round shortens the sequence by two;
// the "iterates" are the last entries of successive rounds and the residual
// is the gap between the final two of them.
inline AitkenResult iterated_aitken(std::span<const double> seq) {
    AitkenResult r;
    if (seq.empty()) return r;
    std::vector<double> cur(seq.begin(), seq.end());
    double prev_iterate = cur.back();
    r.value = cur.back();
    while (cur.size() >= 3) {
        std::vector<double> next(cur.size() - 2);
        for (std::size_t i = 0; i + 2 < cur.size(); ++i)
            next[i] = aitken_step(cur[i], cur[i + 1], cur[i + 2]);
        cur.swap(next);
        prev_iterate = r.value;
        r.value = cur.back();
        ++r.rounds;
    }
    r.residual = std::abs(r.value - prev_iterate);
    return r;
}

} // namespace tauberkit
