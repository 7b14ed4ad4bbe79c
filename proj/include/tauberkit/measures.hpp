#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tauberkit/errors.hpp"
#include "tauberkit/quadrature.hpp"

namespace tauberkit {

inline constexpr double kLatticeMassTol = 1e-12;
inline constexpr double kDensityMassTol = 1e-9;

// Lattice sub-probability step distribution. probs[i] is the mass p_{i+1} at
// (i+1)*span; the atom at 0 is always zero and not stored. tail_mass is
// whatever the source placed beyond the stored indices (0 for exact inputs).
struct LatticeDist {
    double span = 1.0;
    std::vector<double> probs;
    double tail_mass = 0.0;

    static LatticeDist make(double span, std::vector<double> probs, double tail_mass = 0.0) {
        if (!(span > 0.0) || !std::isfinite(span)) fail(errc::bad_input, "span must be positive");
        if (!(tail_mass >= 0.0)) fail(errc::bad_input, "tail_mass must be nonnegative");
        KahanSum s;
        for (double p : probs) {
            if (!std::isfinite(p) || p < 0.0) fail(errc::bad_input, "negative or non-finite probability");
            s.add(p);
        }
        double total = s.value() + tail_mass;
        if (std::abs(total - 1.0) > kLatticeMassTol)
            fail(errc::sum_not_one, "probs + tail_mass sum to " + std::to_string(total));
        return LatticeDist{span, std::move(probs), tail_mass};
    }

    double prob_sum() const {
        KahanSum s;
        for (double p : probs) s.add(p);
        return s.value();
    }
};

// Normalize a raw lattice input: validate masses and re-index so that the
// gcd of the support is 1, scaling the span to compensate. p0 is the mass at
// the origin, which must be absent or zero. Idempotent.
inline LatticeDist normalize_lattice(double span, std::span<const double> probs, double p0 = 0.0) {
    if (!(span > 0.0) || !std::isfinite(span)) fail(errc::bad_input, "span must be positive");
    if (p0 != 0.0) fail(errc::invalid_atom_at_zero, "mass at the origin must be zero");

    KahanSum s;
    std::uint64_t g = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        double p = probs[i];
        if (!std::isfinite(p) || p < 0.0) fail(errc::bad_input, "negative or non-finite probability");
        s.add(p);
        if (p > 0.0) {
            g = std::gcd(g, static_cast<std::uint64_t>(i + 1));
            last = i + 1;
        }
    }
    if (g == 0) fail(errc::empty_support, "all probabilities are zero");
    if (std::abs(s.value() - 1.0) > kLatticeMassTol)
        fail(errc::sum_not_one, "probabilities sum to " + std::to_string(s.value()));

    std::vector<double> out(last / g, 0.0);
    for (std::size_t i = 0; i < last; ++i)
        if ((i + 1) % g == 0) out[(i + 1) / g - 1] = probs[i];
    return LatticeDist{span * static_cast<double>(g), std::move(out), 0.0};
}

inline double lattice_mean(const LatticeDist& d) {
    if (d.tail_mass > 0.0)
        fail(errc::tail_mass_present, "mean of a truncated distribution would be underestimated");
    KahanSum s;
    for (std::size_t i = 0; i < d.probs.size(); ++i)
        s.add(static_cast<double>(i + 1) * d.probs[i]);
    return d.span * s.value();
}

// Multiplicative weight map g: n >= 2 -> weight, normalized so that
// sum g(n)/n = 1 within declared_sum_tol.
struct ArithWeights {
    std::map<std::uint64_t, double> g;
    double declared_sum_tol = 1e-12;

    static ArithWeights make(std::map<std::uint64_t, double> g, double sum_tol = 1e-12) {
        KahanSum s;
        for (const auto& [n, w] : g) {
            if (n < 2) fail(errc::bad_input, "weight key " + std::to_string(n) + " below 2");
            if (!std::isfinite(w) || w < 0.0) fail(errc::bad_input, "negative or non-finite weight");
            s.add(w / static_cast<double>(n));
        }
        if (std::abs(s.value() - 1.0) > sum_tol)
            fail(errc::sum_not_one, "sum g(n)/n = " + std::to_string(s.value()));
        return ArithWeights{std::move(g), sum_tol};
    }

    // sum g(n) ln(n)/n, the denominator of the density limit.
    double log_moment() const {
        KahanSum s;
        for (const auto& [n, w] : g)
            s.add(w * std::log(static_cast<double>(n)) / static_cast<double>(n));
        return s.value();
    }
};

struct PowerSupportCheck {
    bool pass = true;
    std::uint64_t witness = 0; // smallest d >= 2 covering the support when pass == false
};

namespace detail {

// d^j with overflow saturation; anything past 2^63 cannot equal a map key.
inline std::uint64_t pow_sat(std::uint64_t d, unsigned j) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < j; ++i) {
        if (r > (std::uint64_t(1) << 63) / d) return std::uint64_t(0) - 1;
        r *= d;
    }
    return r;
}

inline bool is_power_of(std::uint64_t e, std::uint64_t d) {
    if (e < d) return false;
    while (e % d == 0) e /= d;
    return e == 1;
}

} // namespace detail

// The support passes when it is not contained in {d, d^2, d^3, ...} for any
// d >= 2. Every viable d satisfies d^j = min(support) for some j >= 1, so
// only the integer roots of the minimal element need testing.
inline PowerSupportCheck check_power_support(const ArithWeights& w) {
    std::vector<std::uint64_t> supp;
    for (const auto& [n, wt] : w.g)
        if (wt > 0.0) supp.push_back(n);
    if (supp.empty()) fail(errc::empty_support, "weight map has no positive entries");

    std::uint64_t m = supp.front();
    std::vector<std::uint64_t> candidates;
    for (unsigned j = 1; (std::uint64_t(1) << j) <= m; ++j) {
        auto d = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(m), 1.0 / j)));
        for (std::uint64_t dd = (d > 2 ? d - 1 : 2); dd <= d + 1; ++dd)
            if (dd >= 2 && detail::pow_sat(dd, j) == m) candidates.push_back(dd);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    for (std::uint64_t d : candidates) {
        bool covers = true;
        for (std::uint64_t e : supp)
            if (!detail::is_power_of(e, d)) { covers = false; break; }
        if (covers) return PowerSupportCheck{false, d};
    }
    return PowerSupportCheck{true, 0};
}

// Density samples on the uniform grid k*step, k = 0..K. tail_mass is the
// (declared) mass beyond K*step. Trapezoid integral + tail must be 1.
struct GridDensity {
    double step = 1.0;
    std::vector<double> values;
    double tail_mass = 0.0;

    static GridDensity make(double step, std::vector<double> values, double tail_mass = 0.0) {
        validate(step, values, tail_mass);
        double total = trapezoid(values, step) + tail_mass;
        if (std::abs(total - 1.0) > kDensityMassTol)
            fail(errc::sum_not_one, "density integral + tail_mass = " + std::to_string(total));
        return GridDensity{step, std::move(values), tail_mass};
    }

    // Rescale samples so the trapezoid integral is exactly 1 (tail folded in).
    static GridDensity normalized(double step, std::vector<double> values) {
        validate(step, values, 0.0);
        double total = trapezoid(values, step);
        if (!(total > 0.0)) fail(errc::empty_support, "density integrates to zero");
        for (double& v : values) v /= total;
        return GridDensity{step, std::move(values), 0.0};
    }

    double xmax() const { return step * static_cast<double>(values.size() - 1); }

private:
    static void validate(double step, const std::vector<double>& values, double tail_mass) {
        if (!(step > 0.0) || !std::isfinite(step)) fail(errc::bad_input, "step must be positive");
        if (values.size() < 2) fail(errc::bad_input, "need at least two density samples");
        if (!(tail_mass >= 0.0)) fail(errc::bad_input, "tail_mass must be nonnegative");
        for (double v : values)
            if (!std::isfinite(v) || v < 0.0) fail(errc::bad_input, "negative or non-finite density value");
    }
};

namespace detail {

// Integral of the piecewise-linear interpolant from 0 to position pos,
// where pos counts half-steps (sample i sits at pos = 2i). Exact for the
// interpolant, so cell masses telescope to the full trapezoid integral.
class HalfStepIntegral {
public:
    HalfStepIntegral(std::span<const double> f, double h)
        : f_(f), h_(h), cum_(cumulative_trapezoid(f, h)) {}

    double at(std::uint64_t pos) const {
        std::uint64_t i = pos / 2;
        if (i >= f_.size() - 1) return cum_.back();
        double v = cum_[i];
        if (pos % 2) v += h_ / 8.0 * (3.0 * f_[i] + f_[i + 1]);
        return v;
    }

private:
    std::span<const double> f_;
    double h_;
    std::vector<double> cum_;
};

} // namespace detail

// Collapse a density to lattice cell masses at spacing target_step = r*step:
// cell k owns ((k-1/2)*d, (k+1/2)*d], with the sliver [0, d/2] folded into
// k = 1. Masses telescope, so the total is preserved to machine precision;
// the residue against 1 becomes the lattice tail (folded back into the last
// cell when below the lattice mass tolerance).
inline LatticeDist discretize_density(const GridDensity& p, double target_step) {
    double ratio = target_step / p.step;
    auto r = static_cast<std::uint64_t>(std::llround(ratio));
    if (r < 1 || std::abs(ratio - static_cast<double>(r)) > 1e-9 * ratio)
        fail(errc::step_mismatch, "target_step is not an integer multiple of the grid step");
    if (std::all_of(p.values.begin(), p.values.end(), [](double v) { return v == 0.0; }))
        fail(errc::empty_support, "density is identically zero");

    detail::HalfStepIntegral I(p.values, p.step);
    std::uint64_t end = 2 * (p.values.size() - 1);
    std::vector<double> masses;
    double prev = 0.0;
    for (std::uint64_t k = 1; (2 * k - 1) * r < end || k == 1; ++k) {
        std::uint64_t hi = (2 * k + 1) * r;
        double cur = I.at(hi < end ? hi : end);
        double m = cur - prev;
        if (m < 0.0 && m > -1e-12) m = 0.0; // fp dust from the cumulative sums
        masses.push_back(m);
        prev = cur;
        if (hi >= end) break;
    }

    while (!masses.empty() && masses.back() == 0.0) masses.pop_back();
    if (masses.empty()) fail(errc::empty_support, "density is identically zero");

    KahanSum s;
    for (double m : masses) s.add(m);
    double tail = 1.0 - s.value();
    if (tail < 0.0) {
        double scale = 1.0 / s.value();
        for (double& m : masses) m *= scale;
        tail = 0.0;
    } else if (tail <= kLatticeMassTol) {
        masses.back() += tail;
        tail = 0.0;
    }
    return LatticeDist::make(target_step, std::move(masses), tail);
}

} // namespace tauberkit
