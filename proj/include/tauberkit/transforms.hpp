#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tauberkit/errors.hpp"
#include "tauberkit/measures.hpp"
#include "tauberkit/parallel.hpp"
#include "tauberkit/quadrature.hpp"
#include "tauberkit/renewal.hpp"
#include "tauberkit/trace.hpp"

namespace tauberkit {

using complex = std::complex<double>;

// Every evaluator returns its truncation/quadrature tail as an explicit
// upper bound next to the value; honesty of these bounds is tested.
struct EvalResult {
    complex value{0.0, 0.0};
    double tail_bound = 0.0;
};

// Samples of S(x) on a uniform grid [0, X] plus the declared growth model
// |S(x)| <= growth_constant * e^x * x^growth_exponent used for tail bounds
// beyond X. The constant is calibrated from the stored tail (x >= min(1, X/2)
// avoids the x -> 0 blowup of x^-rho for positive exponents).
struct SampledFunction {
    double step = 1.0;
    std::vector<double> values;
    double growth_exponent = 0.0;
    double growth_constant = 1.0;

    static SampledFunction make(double step, std::vector<double> values, double growth_exponent) {
        if (!(step > 0.0) || !std::isfinite(step)) fail(errc::bad_input, "step must be positive");
        if (values.size() < 2) fail(errc::bad_input, "need at least two samples");
        SampledFunction S{step, std::move(values), growth_exponent, 0.0};
        double x_lo = std::min(1.0, S.xmax() / 2.0);
        double c = 0.0;
        for (std::size_t i = 1; i < S.values.size(); ++i) {
            double x = step * static_cast<double>(i);
            if (x < x_lo) continue;
            c = std::max(c, std::abs(S.values[i]) * std::exp(-x) * std::pow(x, -growth_exponent));
        }
        S.growth_constant = c > 0.0 ? c : 1.0;
        return S;
    }

    double xmax() const { return step * static_cast<double>(values.size() - 1); }
    double x(std::size_t i) const { return step * static_cast<double>(i); }
};

namespace detail {

// Upper bound for C * integral_X^inf x^rho e^{-beta x} dx, beta > 0.
inline double laplace_tail_bound(double C, double X, double rho, double beta) {
    if (rho == 0.0) return C * std::exp(-beta * X) / beta;
    if (rho < 0.0) return C * std::pow(X, rho) * std::exp(-beta * X) / beta;
    // (X+u)^rho <= (2X)^rho + (2u)^rho splits the integral into two pieces.
    return C * std::exp(-beta * X) *
           (std::pow(2.0 * X, rho) / beta +
            std::pow(2.0, rho) * std::tgamma(rho + 1.0) / std::pow(beta, rho + 1.0));
}

} // namespace detail

// L{S; s} = integral_0^X e^{-s x} S(x) dx by trapezoid rule, with the growth
// model bounding what lies beyond X. Only Re s > 1 keeps that tail finite.
inline EvalResult laplace_sampled(const SampledFunction& S, complex s) {
    double beta = s.real() - 1.0;
    if (!(beta > 0.0)) fail(errc::divergent_region, "laplace transform needs Re s > 1");
    KahanSum re, im;
    complex w_prev = S.values[0]; // e^{-s*0} = 1
    for (std::size_t i = 1; i < S.values.size(); ++i) {
        complex w = std::exp(-s * S.x(i)) * S.values[i];
        complex panel = 0.5 * S.step * (w_prev + w);
        re.add(panel.real());
        im.add(panel.imag());
        w_prev = w;
    }
    double tail = detail::laplace_tail_bound(S.growth_constant, S.xmax(), S.growth_exponent, beta);
    return EvalResult{complex{re.value(), im.value()}, tail};
}

// sum_{n=n0}^{n0+len-1} a_n e^{-(s-1) alpha n}. Used with a_n = p_n (n0 = 1)
// or a_n = q_n (n0 = 0). extra_tail is mass known to sit beyond the stored
// coefficients (lattice tail_mass); an infinite source keeps its geometric
// tail bound even when the truncation point reaches the stored data's end.
inline EvalResult stieltjes_sum(std::span<const double> a, std::size_t n0, double alpha, complex s,
                                std::size_t N, double extra_tail, bool infinite_source) {
    double beta = s.real() - 1.0;
    std::size_t last = n0 + a.size() - 1;
    std::size_t N_eff = std::min<std::size_t>(N, last);
    if (N_eff < n0) fail(errc::bad_input, "truncation point below the first coefficient");

    complex zstep = std::exp(-(s - 1.0) * alpha);
    complex zn = std::exp(-(s - 1.0) * alpha * static_cast<double>(n0));
    KahanSum re, im;
    for (std::size_t n = n0; n <= N_eff; ++n) {
        complex term = a[n - n0] * zn;
        re.add(term.real());
        im.add(term.imag());
        zn *= zstep;
    }

    double tail = 0.0;
    double sup = 0.0;
    for (double v : a) sup = std::max(sup, std::abs(v));
    if (N_eff < last || infinite_source) {
        if (!(beta > 0.0)) fail(errc::tail_unbounded, "geometric tail bound needs Re s > 1");
        tail += sup * std::exp(-beta * alpha * static_cast<double>(N_eff)) /
                (1.0 - std::exp(-beta * alpha));
    }
    if (extra_tail > 0.0) {
        if (beta < 0.0) fail(errc::tail_unbounded, "unstored mass grows for Re s < 1");
        tail += extra_tail * std::exp(-beta * alpha * static_cast<double>(last));
    }
    return EvalResult{complex{re.value(), im.value()}, tail};
}

// Transform of the step measure: G(s) = sum_n p_n e^{-(s-1) alpha n}.
inline EvalResult stieltjes_lattice(const LatticeDist& d, complex s,
                                    std::size_t N = std::size_t(-1)) {
    return stieltjes_sum(d.probs, 1, d.span, s, N, d.tail_mass, false);
}

// Transform of the renewal measure: F(s) = sum_n q_n e^{-(s-1) alpha n}.
inline EvalResult stieltjes_lattice(const RenewalSeq& q, complex s,
                                    std::size_t N = std::size_t(-1)) {
    return stieltjes_sum(q.q, 0, q.span, s, N, 0.0, true);
}

// Smallest truncation point pushing the geometric tail below tail_target.
inline std::size_t stieltjes_terms_needed(double alpha, double beta, double tail_target,
                                          double sup_coeff = 1.0) {
    if (!(beta > 0.0)) fail(errc::tail_unbounded, "geometric tail bound needs Re s > 1");
    double denom = 1.0 - std::exp(-beta * alpha);
    double n = std::log(sup_coeff / (tail_target * denom)) / (beta * alpha);
    return n > 0.0 ? static_cast<std::size_t>(std::ceil(n)) + 1 : 1;
}

// Finite Dirichlet sum of a weight map: G(s) = sum g(n) n^{-s}, exact.
inline EvalResult dirichlet_series(const ArithWeights& w, complex s) {
    KahanSum re, im;
    for (const auto& [n, wt] : w.g) {
        complex term = wt * std::exp(-s * std::log(static_cast<double>(n)));
        re.add(term.real());
        im.add(term.imag());
    }
    return EvalResult{complex{re.value(), im.value()}, 0.0};
}

// Truncated Dirichlet series sum_{n<=N} f(n) n^{-s} for coefficients with
// declared polynomial growth f(n) <= C n^rho. The comparison-integral tail
// C N^{rho+1-sigma}/(sigma-rho-1) only exists for Re s > rho + 1.
inline EvalResult dirichlet_series(const ArithRenewal& a, complex s, std::uint64_t N,
                                   double rho = 1.0) {
    double sigma = s.real();
    if (!(sigma > rho + 1.0))
        fail(errc::truncation_unbounded,
             "truncation bound needs Re s > rho + 1 = " + std::to_string(rho + 1.0));
    std::uint64_t N_eff = std::min<std::uint64_t>(N, a.X);
    if (N_eff < 1) fail(errc::bad_input, "empty truncation range");
    KahanSum re, im;
    double C = 0.0;
    for (std::uint64_t n = 1; n <= a.X; ++n)
        C = std::max(C, std::abs(a.f[n]) / std::pow(static_cast<double>(n), rho));
    for (std::uint64_t n = 1; n <= N_eff; ++n) {
        if (a.f[n] == 0.0) continue;
        complex term = a.f[n] * std::exp(-s * std::log(static_cast<double>(n)));
        re.add(term.real());
        im.add(term.imag());
    }
    double tail = C * std::pow(static_cast<double>(N_eff), rho + 1.0 - sigma) / (sigma - rho - 1.0);
    return EvalResult{complex{re.value(), im.value()}, tail};
}

// Horner evaluation of sum_{n<=N} c_n z^n inside the open unit disc, with
// the geometric bound sup|c_n| |z|^{N+1}/(1-|z|) for the dropped tail.
inline EvalResult power_series(std::span<const double> c, complex z, std::size_t N) {
    double az = std::abs(z);
    if (!(az < 1.0)) fail(errc::outside_disc, "power series evaluated at |z| >= 1");
    if (c.empty()) fail(errc::bad_input, "no coefficients");
    std::size_t N_eff = std::min<std::size_t>(N, c.size() - 1);
    complex acc{0.0, 0.0};
    if (z.imag() == 0.0) {
        double zr = z.real(), r = 0.0;
        for (std::size_t n = N_eff + 1; n-- > 0;) r = r * zr + c[n];
        acc = r;
    } else {
        for (std::size_t n = N_eff + 1; n-- > 0;) acc = acc * z + c[n];
    }
    double sup = 0.0;
    for (double v : c) sup = std::max(sup, std::abs(v));
    double tail = sup * std::pow(az, static_cast<double>(N_eff) + 1.0) / (1.0 - az);
    return EvalResult{acc, tail};
}

inline std::size_t power_terms_needed(double abs_z, double tail_target, double sup_coeff = 1.0) {
    if (!(abs_z < 1.0)) fail(errc::outside_disc, "need |z| < 1");
    if (abs_z <= 0.0) return 1;
    double n = std::log(sup_coeff / (tail_target * (1.0 - abs_z))) / (-std::log(abs_z));
    return n > 0.0 ? static_cast<std::size_t>(std::ceil(n)) + 1 : 1;
}

// ---------------------------------------------------------------------------
// SeriesSpec: one evaluator interface over the supported transform sources.

enum class Geometry { half_plane, disc };

struct ExpRenewalSpec {};                            // F(s) = s/(s-1)
struct PoleSpec { double a = 1.0; Geometry geom = Geometry::half_plane; };
struct DoublePoleSpec {};                            // F(s) = 1/(s-1)^2
struct DirichletWeightsSpec { ArithWeights w; };     // F(s) = 1/(1 - sum g(n) n^{-s})
struct LatticeRenewalSpec { LatticeDist p; };        // F(s) = 1/(1 - G_p(s))
struct StieltjesSpec { RenewalSeq q; };              // F(s) = sum q_n e^{-(s-1) alpha n}
struct PowerSpec { std::vector<double> c; };         // F(z) = sum c_n z^n
struct SampledLaplaceSpec { SampledFunction S; };    // F(s) = L{S; s}

class SeriesSpec {
public:
    static SeriesSpec exp_renewal() { return SeriesSpec{ExpRenewalSpec{}, "exp_renewal"}; }
    static SeriesSpec pole_only(double a, Geometry g = Geometry::half_plane) {
        return SeriesSpec{PoleSpec{a, g}, "pole_only"};
    }
    static SeriesSpec double_pole() { return SeriesSpec{DoublePoleSpec{}, "double_pole"}; }
    static SeriesSpec dirichlet_weights(ArithWeights w) {
        return SeriesSpec{DirichletWeightsSpec{std::move(w)}, "dirichlet_weights"};
    }
    static SeriesSpec lattice_renewal(LatticeDist p) {
        if (p.tail_mass > 0.0)
            fail(errc::tail_unbounded, "lattice renewal spec needs a complete distribution");
        return SeriesSpec{LatticeRenewalSpec{std::move(p)}, "lattice_renewal"};
    }
    static SeriesSpec stieltjes(RenewalSeq q) {
        return SeriesSpec{StieltjesSpec{std::move(q)}, "stieltjes"};
    }
    static SeriesSpec power_coeffs(std::vector<double> c) {
        return SeriesSpec{PowerSpec{std::move(c)}, "power_coeffs"};
    }
    static SeriesSpec sampled(SampledFunction S) {
        return SeriesSpec{SampledLaplaceSpec{std::move(S)}, "sampled"};
    }

    const std::string& id() const { return id_; }

    Geometry geometry() const {
        if (std::holds_alternative<PowerSpec>(v_)) return Geometry::disc;
        if (auto* p = std::get_if<PoleSpec>(&v_)) return p->geom;
        return Geometry::half_plane;
    }

    // point is s for half-plane specs, z for disc specs.
    EvalResult evaluate(complex point, double tail_target = 1e-8) const {
        return std::visit([&](const auto& spec) { return eval(spec, point, tail_target); }, v_);
    }

private:
    using Variant = std::variant<ExpRenewalSpec, PoleSpec, DoublePoleSpec, DirichletWeightsSpec,
                                 LatticeRenewalSpec, StieltjesSpec, PowerSpec, SampledLaplaceSpec>;

    SeriesSpec(Variant v, std::string id) : v_(std::move(v)), id_(std::move(id)) {}

    static EvalResult eval(const ExpRenewalSpec&, complex s, double) {
        if (s == complex{1.0, 0.0}) fail(errc::evaluator_failure, "pole at s = 1");
        return EvalResult{s / (s - 1.0), 0.0};
    }
    static EvalResult eval(const PoleSpec& p, complex point, double) {
        complex denom = p.geom == Geometry::half_plane ? point - 1.0 : 1.0 - point;
        if (denom == complex{0.0, 0.0}) fail(errc::evaluator_failure, "pole hit");
        return EvalResult{p.a / denom, 0.0};
    }
    static EvalResult eval(const DoublePoleSpec&, complex s, double) {
        if (s == complex{1.0, 0.0}) fail(errc::evaluator_failure, "pole at s = 1");
        return EvalResult{1.0 / ((s - 1.0) * (s - 1.0)), 0.0};
    }
    static EvalResult eval(const DirichletWeightsSpec& d, complex s, double) {
        EvalResult g = dirichlet_series(d.w, s);
        complex denom = 1.0 - g.value;
        if (denom == complex{0.0, 0.0}) fail(errc::evaluator_failure, "1 - G(s) vanished");
        return EvalResult{1.0 / denom, 0.0};
    }
    static EvalResult eval(const LatticeRenewalSpec& l, complex s, double) {
        EvalResult g = stieltjes_lattice(l.p, s);
        complex denom = 1.0 - g.value;
        if (denom == complex{0.0, 0.0}) fail(errc::evaluator_failure, "1 - G(s) vanished");
        return EvalResult{1.0 / denom, 0.0};
    }
    static EvalResult eval(const StieltjesSpec& st, complex s, double tail_target) {
        double beta = s.real() - 1.0;
        double sup = 0.0;
        for (double v : st.q.q) sup = std::max(sup, std::abs(v));
        std::size_t need = stieltjes_terms_needed(st.q.span, beta, tail_target, sup);
        return stieltjes_lattice(st.q, s, need);
    }
    static EvalResult eval(const PowerSpec& p, complex z, double tail_target) {
        double sup = 0.0;
        for (double v : p.c) sup = std::max(sup, std::abs(v));
        std::size_t need = power_terms_needed(std::abs(z), tail_target, sup > 0.0 ? sup : 1.0);
        return power_series(p.c, z, need);
    }
    static EvalResult eval(const SampledLaplaceSpec& sl, complex s, double) {
        return laplace_sampled(sl.S, s);
    }

    Variant v_;
    std::string id_;
};

// ---------------------------------------------------------------------------
// Boundary sampling.

// Re F sampled on a rectangle hugging the boundary: row j at distance
// approach[j] (sigma - 1, or 1 - r on the disc), column i at transverse
// offset t_i in [-lambda, lambda]. Checkers read only the numbers; the
// approach_variable label records which boundary was sampled.
struct BoundaryGrid {
    std::string approach_variable = "sigma_minus_1"; // or "one_minus_r"
    std::vector<double> approach;
    std::vector<double> transverse;
    std::vector<std::vector<double>> U;
    double max_tail_bound = 0.0;
};

inline BoundaryGrid sample_boundary(const SeriesSpec& spec, double lambda,
                                    std::span<const double> approach,
                                    std::size_t transverse_points = 2001, unsigned threads = 0,
                                    double tail_cap = 1e-8) {
    if (!(lambda > 0.0)) fail(errc::bad_input, "lambda must be positive");
    if (approach.empty()) fail(errc::empty_grid, "empty approach schedule");
    for (std::size_t j = 0; j < approach.size(); ++j) {
        if (!(approach[j] > 0.0)) fail(errc::bad_input, "approach distances must be positive");
        if (j > 0 && !(approach[j] < approach[j - 1]))
            fail(errc::bad_input, "approach schedule must decrease strictly");
    }
    if (transverse_points < 3 || transverse_points % 2 == 0)
        fail(errc::bad_input, "transverse_points must be odd and at least 3");

    BoundaryGrid grid;
    grid.approach_variable =
        spec.geometry() == Geometry::half_plane ? "sigma_minus_1" : "one_minus_r";
    grid.approach.assign(approach.begin(), approach.end());
    std::size_t center = transverse_points / 2;
    double tstep = lambda / static_cast<double>(center);
    grid.transverse.resize(transverse_points);
    for (std::size_t i = 0; i < transverse_points; ++i)
        grid.transverse[i] =
            static_cast<double>(static_cast<std::int64_t>(i) - static_cast<std::int64_t>(center)) *
            tstep;

    grid.U.assign(approach.size(), std::vector<double>(transverse_points, 0.0));
    std::vector<double> row_tail(approach.size(), 0.0);
    bool disc = spec.geometry() == Geometry::disc;

    parallel_for(approach.size(), threads, [&](std::size_t j) {
        double d = grid.approach[j];
        double tail = 0.0;
        for (std::size_t i = 0; i < transverse_points; ++i) {
            complex point = disc ? (1.0 - d) * std::exp(complex{0.0, grid.transverse[i]})
                                 : complex{1.0 + d, grid.transverse[i]};
            EvalResult r = spec.evaluate(point, tail_cap);
            grid.U[j][i] = r.value.real();
            tail = std::max(tail, r.tail_bound);
        }
        row_tail[j] = tail;
    });

    for (double t : row_tail) grid.max_tail_bound = std::max(grid.max_tail_bound, t);
    if (grid.max_tail_bound > tail_cap)
        fail(errc::truncation_unbounded,
             "evaluator tail bound " + std::to_string(grid.max_tail_bound) +
                 " exceeds the per-point cap; extend the coefficient data or sample range");
    return grid;
}

// Evaluator with the boundary pole removed: F - a/(s-1), or F - a/(1-z).
inline EvalResult pole_subtracted(const SeriesSpec& spec, double a, complex point,
                                  double tail_target = 1e-8) {
    EvalResult r = spec.evaluate(point, tail_target);
    complex denom = spec.geometry() == Geometry::half_plane ? point - 1.0 : 1.0 - point;
    if (denom == complex{0.0, 0.0}) fail(errc::evaluator_failure, "pole hit");
    r.value -= a / denom;
    return r;
}

// e^{-x} S(x) against the candidate density a; tail window = last 20%.
inline Trace asymptotic_ratio(const SampledFunction& S, double a) {
    Trace t;
    t.target = a;
    t.x.reserve(S.values.size());
    t.value.reserve(S.values.size());
    for (std::size_t i = 0; i < S.values.size(); ++i) {
        t.x.push_back(S.x(i));
        t.value.push_back(std::exp(-S.x(i)) * S.values[i]);
    }
    t.set_tail_window(0.2);
    return t;
}

// Lattice variant: q_n against its limit.
inline Trace asymptotic_ratio(const RenewalSeq& q, double a) {
    Trace t;
    t.target = a;
    t.x.reserve(q.q.size());
    t.value.reserve(q.q.size());
    for (std::size_t n = 0; n < q.q.size(); ++n) {
        t.x.push_back(q.span * static_cast<double>(n));
        t.value.push_back(q.q[n]);
    }
    t.set_tail_window(0.2);
    return t;
}

} // namespace tauberkit
