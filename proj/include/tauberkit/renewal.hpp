#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tauberkit/errors.hpp"
#include "tauberkit/measures.hpp"
#include "tauberkit/quadrature.hpp"
#include "tauberkit/trace.hpp"

namespace tauberkit {

// Renewal mass sequence on the lattice: q[n] is the expected renewal mass at
// n*span, q[0] = 1 exactly, each q[n] in [0, 1].
struct RenewalSeq {
    double span = 1.0;
    std::vector<double> q;
};

// q_n = sum_{k=1}^{min(n,M)} p_k q_{n-k}, seeded by q_0 = 1. Direct O(N*M)
// convolution; the recursion is contractive so plain accumulation is stable.
inline RenewalSeq renewal_sequence(const LatticeDist& d, std::int64_t N) {
    if (N < 0) fail(errc::n_negative, "sequence length must be nonnegative");
    auto n_total = static_cast<std::size_t>(N);
    std::vector<double> q(n_total + 1);
    q[0] = 1.0;
    const std::size_t M = d.probs.size();
    const double* p = d.probs.data();
    for (std::size_t n = 1; n <= n_total; ++n) {
        std::size_t kmax = n < M ? n : M;
        double s = 0.0;
        for (std::size_t k = 1; k <= kmax; ++k) s += p[k - 1] * q[n - k];
        q[n] = s;
    }
    return RenewalSeq{d.span, std::move(q)};
}

// Cumulative renewal function on a uniform grid: Q[k] = Q(k*step),
// nondecreasing with Q(0) = 1 (the delta at the origin).
struct RenewalGrid {
    double step = 1.0;
    std::vector<double> Q;

    double xmax() const { return step * static_cast<double>(Q.size() - 1); }
};

// Renewal function of a continuous step density: collapse the density to
// lattice cells at its own grid step, run the lattice recursion, accumulate.
// A density whose grid ends before X counts as zero beyond its support.
inline RenewalGrid continuous_renewal(const GridDensity& p, double X) {
    if (!(X >= 0.0) || !std::isfinite(X)) fail(errc::bad_input, "X must be nonnegative");
    LatticeDist cells = discretize_density(p, p.step);
    auto N = static_cast<std::int64_t>(std::floor(X / p.step + 1e-9));
    RenewalSeq seq = renewal_sequence(cells, N);
    std::vector<double> Q(seq.q.size());
    KahanSum s;
    for (std::size_t k = 0; k < seq.q.size(); ++k) {
        s.add(seq.q[k]);
        Q[k] = s.value();
    }
    return RenewalGrid{p.step, std::move(Q)};
}

// Increment trace Q(x+h) - Q(x) against the renewal-density limit h/mean.
// h must sit on the grid; the tail window is the last 20% of the x range.
inline Trace blackwell_increments(const RenewalGrid& grid, double h, double mean) {
    if (!(mean > 0.0)) fail(errc::bad_input, "mean must be positive");
    double ratio = h / grid.step;
    auto j = static_cast<std::int64_t>(std::llround(ratio));
    if (j < 1 || std::abs(ratio - static_cast<double>(j)) > 1e-9 * std::max(1.0, ratio))
        fail(errc::h_not_grid_aligned,
             "h = " + std::to_string(h) + " is not a positive multiple of step " +
                 std::to_string(grid.step));
    if (static_cast<std::size_t>(j) >= grid.Q.size())
        fail(errc::bad_input, "h exceeds the grid range");

    Trace t;
    t.target = h / mean;
    std::size_t count = grid.Q.size() - static_cast<std::size_t>(j);
    t.x.reserve(count);
    t.value.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        t.x.push_back(static_cast<double>(k) * grid.step);
        t.value.push_back(grid.Q[k + static_cast<std::size_t>(j)] - grid.Q[k]);
    }
    t.set_tail_window(0.2);
    return t;
}

// Multiplicative renewal table: f(1) = 1, f(n) = sum_{d | n, d >= 2} g(d) f(n/d),
// with running partial sums S(m) = sum_{n <= m} f(n).
struct ArithRenewal {
    std::uint64_t X = 0;
    std::vector<double> f;            // index 1..X, f[0] unused
    std::vector<double> partial_sums; // partial_sums[m] = S(m), index 0 unused
    double limit_target = 0.0;        // 1 / sum g(n) ln(n)/n
};

inline constexpr std::uint64_t kDirichletCap = 10'000'000;

inline ArithRenewal dirichlet_renewal(const ArithWeights& w, std::uint64_t X,
                                      std::uint64_t cap = kDirichletCap) {
    if (X < 1) fail(errc::bad_input, "X must be at least 1");
    if (X > cap)
        fail(errc::x_too_large, "X = " + std::to_string(X) + " exceeds cap " + std::to_string(cap));

    // Dense weight lookup; keys beyond X never divide an index in range.
    std::uint64_t max_key = 0;
    for (const auto& [n, wt] : w.g)
        if (wt != 0.0 && n <= X) max_key = std::max(max_key, n);
    std::vector<double> gd(max_key + 1, 0.0);
    for (const auto& [n, wt] : w.g)
        if (n <= max_key) gd[n] = wt;

    // Smallest-prime-factor sieve drives divisor enumeration in O(X log X).
    std::vector<std::uint32_t> spf(X + 1, 0);
    for (std::uint64_t i = 2; i <= X; ++i) {
        if (spf[i] != 0) continue;
        for (std::uint64_t j = i; j <= X; j += i)
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
    }

    ArithRenewal out;
    out.X = X;
    out.f.assign(X + 1, 0.0);
    out.partial_sums.assign(X + 1, 0.0);
    out.f[1] = 1.0;
    KahanSum S;
    S.add(1.0);
    out.partial_sums[1] = S.value();

    std::vector<std::uint64_t> divisors;
    divisors.reserve(1536);
    for (std::uint64_t n = 2; n <= X; ++n) {
        divisors.clear();
        divisors.push_back(1);
        std::uint64_t m = n;
        while (m > 1) {
            std::uint64_t p = spf[m], e = 0;
            while (m % p == 0) { m /= p; ++e; }
            std::size_t base = divisors.size();
            std::uint64_t pe = 1;
            for (std::uint64_t t = 1; t <= e; ++t) {
                pe *= p;
                for (std::size_t i = 0; i < base; ++i) divisors.push_back(divisors[i] * pe);
            }
        }
        double v = 0.0;
        for (std::uint64_t d : divisors)
            if (d >= 2 && d < gd.size() && gd[d] != 0.0) v += gd[d] * out.f[n / d];
        out.f[n] = v;
        S.add(v);
        out.partial_sums[n] = S.value();
    }

    double lm = w.log_moment();
    out.limit_target = lm > 0.0 ? 1.0 / lm : 0.0;
    return out;
}

// S(x)/x on a logarithmic grid; the tail window is the last decade.
inline Trace partial_sum_ratio(const ArithRenewal& a, std::size_t points_per_decade = 32) {
    if (a.X < 1) fail(errc::bad_input, "empty renewal table");
    Trace t;
    t.target = a.limit_target;
    std::uint64_t prev = 0;
    for (std::size_t j = 0;; ++j) {
        double xr = std::pow(10.0, static_cast<double>(j) / static_cast<double>(points_per_decade));
        auto x = static_cast<std::uint64_t>(std::llround(xr));
        if (x >= a.X) break;
        if (x <= prev) continue;
        prev = x;
        t.x.push_back(static_cast<double>(x));
        t.value.push_back(a.partial_sums[x] / static_cast<double>(x));
    }
    t.x.push_back(static_cast<double>(a.X));
    t.value.push_back(a.partial_sums[a.X] / static_cast<double>(a.X));
    t.set_window(std::max(1.0, static_cast<double>(a.X) / 10.0), static_cast<double>(a.X));
    return t;
}

} // namespace tauberkit
