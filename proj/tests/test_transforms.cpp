#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "tauberkit/transforms.hpp"

using namespace tauberkit;
using Catch::Matchers::WithinAbs;

namespace {

bool throws_code(errc expect, const std::function<void()>& body) {
    try {
        body();
    } catch (const Error& e) {
        return e.code() == expect;
    }
    return false;
}

LatticeDist two_point() { return normalize_lattice(1.0, std::vector<double>{0.5, 0.5}); }

SampledFunction exp_samples(double X, double step = 1e-3) {
    std::vector<double> v(static_cast<std::size_t>(std::llround(X / step)) + 1);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(step * static_cast<double>(i));
    return SampledFunction::make(step, std::move(v), 0.0);
}

} // namespace

TEST_CASE("laplace transform of e^x against the closed form") {
    SampledFunction S = exp_samples(40.0);
    CHECK_THAT(S.growth_constant, WithinAbs(1.0, 1e-12));

    EvalResult at2 = laplace_sampled(S, complex{2.0, 0.0});
    CHECK_THAT(at2.value.real(), WithinAbs(1.0, 1e-4));
    CHECK(std::abs(at2.value.imag()) < 1e-12);

    EvalResult at15 = laplace_sampled(S, complex{1.5, 0.0});
    CHECK_THAT(at15.value.real(), WithinAbs(2.0, 1e-3));

    CHECK(throws_code(errc::divergent_region, [&] { laplace_sampled(S, complex{1.0, 0.0}); }));
    CHECK(throws_code(errc::divergent_region, [&] { laplace_sampled(S, complex{0.5, 0.0}); }));
}

TEST_CASE("laplace tail bounds are honest under range halving") {
    SampledFunction S40 = exp_samples(40.0);
    SampledFunction S20 = exp_samples(20.0);
    for (double sigma : {1.2, 1.5, 2.0, 3.0}) {
        EvalResult a = laplace_sampled(S40, complex{sigma, 0.3});
        EvalResult b = laplace_sampled(S20, complex{sigma, 0.3});
        CHECK(std::abs(a.value - b.value) <= a.tail_bound + b.tail_bound + 1e-12);
    }
}

TEST_CASE("stieltjes transform of a single atom is a pure exponential") {
    LatticeDist d = normalize_lattice(0.7, std::vector<double>{1.0});
    complex s{1.3, 0.7};
    EvalResult g = stieltjes_lattice(d, s);
    complex exact = std::exp(-(s - 1.0) * 0.7);
    CHECK(std::abs(g.value - exact) < 1e-14);

    // at s = 1 the sum collapses to the total mass
    EvalResult at1 = stieltjes_lattice(d, complex{1.0, 0.0});
    CHECK_THAT(at1.value.real(), WithinAbs(1.0, 1e-15));
}

TEST_CASE("renewal and step transforms are linked by the reciprocal identity") {
    LatticeDist p = two_point();
    RenewalSeq q = renewal_sequence(p, 2000);
    for (complex s : {complex{1.5, 0.0}, complex{1.1, 0.3}}) {
        EvalResult F = stieltjes_lattice(q, s);
        EvalResult G = stieltjes_lattice(p, s);
        complex rhs = 1.0 / (1.0 - G.value);
        CHECK(std::abs(F.value - rhs) <= F.tail_bound + G.tail_bound + 1e-9);
        CHECK(std::abs(F.value - rhs) < 1e-6);
    }
}

TEST_CASE("stieltjes tail bound is honest and refuses beta <= 0 for infinite sources") {
    LatticeDist p = two_point();
    RenewalSeq q = renewal_sequence(p, 4000);
    complex s{1.05, 0.2};
    EvalResult full = stieltjes_lattice(q, s);
    EvalResult half = stieltjes_lattice(q, s, 2000);
    CHECK(std::abs(full.value - half.value) <= full.tail_bound + half.tail_bound + 1e-15);

    CHECK(throws_code(errc::tail_unbounded, [&] { stieltjes_lattice(q, complex{1.0, 0.0}); }));
}

TEST_CASE("positivity of the renewal transform numerator") {
    LatticeDist p = two_point();
    RenewalSeq q = renewal_sequence(p, 3000);
    for (double sigma : {1.05, 1.2, 1.5, 2.0}) {
        for (double t : {-3.0, -0.9, 0.0, 0.4, 2.2}) {
            EvalResult F = stieltjes_lattice(q, complex{sigma, t});
            CHECK(F.value.real() > 0.0);
        }
    }
}

TEST_CASE("finite dirichlet series hits closed-form boundary values") {
    ArithWeights w = ArithWeights::make({{2, 1.0}, {3, 1.5}});
    EvalResult g1 = dirichlet_series(w, complex{1.0, 0.0});
    CHECK_THAT(g1.value.real(), WithinAbs(1.0, 1e-15));
    CHECK(g1.tail_bound == 0.0);

    // G(1 + i t*) returns to 1 at t* = 2 pi / ln 2 for the pure power-of-2 weights
    ArithWeights pow2 = ArithWeights::make({{2, 2.0}});
    double tstar = 2.0 * 3.14159265358979323846 / std::log(2.0);
    EvalResult gstar = dirichlet_series(pow2, complex{1.0, tstar});
    CHECK(std::abs(gstar.value - complex{1.0, 0.0}) < 1e-12);
}

TEST_CASE("truncated dirichlet series carries a comparison-integral tail") {
    ArithWeights w = ArithWeights::make({{2, 2.0}});
    ArithRenewal a = dirichlet_renewal(w, 1 << 20);
    complex s{2.5, 0.0};
    EvalResult v = dirichlet_series(a, s, 1 << 20, 1.0);
    double exact = 1.0 / (1.0 - std::pow(2.0, -1.5));
    CHECK(std::abs(v.value.real() - exact) <= v.tail_bound);
    CHECK_THAT(v.value.real(), WithinAbs(exact, 1e-4));

    CHECK(throws_code(errc::truncation_unbounded,
                      [&] { dirichlet_series(a, complex{1.8, 0.0}, 1000, 1.0); }));
}

TEST_CASE("power series evaluation inside the disc") {
    // all-ones coefficients: geometric series
    std::vector<double> ones(4000, 1.0);
    EvalResult g = power_series(ones, complex{0.5, 0.0}, 3999);
    CHECK(std::abs(g.value.real() - 2.0) <= g.tail_bound + 1e-12);
    CHECK_THAT(g.value.real(), WithinAbs(2.0, 1e-9));

    // renewal coefficients against the rational closed form
    RenewalSeq q = renewal_sequence(two_point(), 200);
    complex z{0.3, 0.0};
    EvalResult f = power_series(q.q, z, 200);
    complex exact = 1.0 / (1.0 - (z + z * z) / 2.0);
    CHECK(std::abs(f.value - exact) <= f.tail_bound + 1e-12);

    CHECK(throws_code(errc::outside_disc, [&] { power_series(ones, complex{1.0, 0.0}, 10); }));
    CHECK(throws_code(errc::outside_disc, [&] { power_series(ones, complex{-1.2, 0.0}, 10); }));
}

TEST_CASE("power series tail honesty under truncation halving") {
    RenewalSeq q = renewal_sequence(two_point(), 400);
    complex z{0.97, 0.01};
    EvalResult full = power_series(q.q, z, 400);
    EvalResult half = power_series(q.q, z, 200);
    CHECK(std::abs(full.value - half.value) <= full.tail_bound + half.tail_bound + 1e-15);
}

TEST_CASE("series specs evaluate their closed forms") {
    SeriesSpec er = SeriesSpec::exp_renewal();
    CHECK(er.id() == "exp_renewal");
    CHECK(er.geometry() == Geometry::half_plane);
    complex s{2.0, 1.0};
    CHECK(std::abs(er.evaluate(s).value - s / (s - 1.0)) < 1e-15);
    CHECK(throws_code(errc::evaluator_failure, [&] { er.evaluate(complex{1.0, 0.0}); }));

    SeriesSpec pole = SeriesSpec::pole_only(3.5);
    CHECK(std::abs(pole.evaluate(s).value - 3.5 / (s - 1.0)) < 1e-15);

    SeriesSpec dpole = SeriesSpec::double_pole();
    CHECK(std::abs(dpole.evaluate(s).value - 1.0 / ((s - 1.0) * (s - 1.0))) < 1e-15);

    SeriesSpec disc_pole = SeriesSpec::pole_only(2.0, Geometry::disc);
    CHECK(disc_pole.geometry() == Geometry::disc);
    complex z{0.5, 0.0};
    CHECK(std::abs(disc_pole.evaluate(z).value - 2.0 / (1.0 - z)) < 1e-15);

    SeriesSpec power = SeriesSpec::power_coeffs({1.0, 1.0, 1.0, 1.0});
    CHECK(power.geometry() == Geometry::disc);

    CHECK(throws_code(errc::tail_unbounded, [] {
        SeriesSpec::lattice_renewal(LatticeDist::make(1.0, {0.5, 0.25}, 0.25));
    }));
}

TEST_CASE("lattice renewal spec matches the dirichlet weight spec on shared ground") {
    // two-point lattice in base e vs explicit reciprocal of its own transform
    SeriesSpec lat = SeriesSpec::lattice_renewal(two_point());
    complex s{1.25, 0.4};
    EvalResult F = lat.evaluate(s);
    complex g = 0.5 * std::exp(-(s - 1.0)) + 0.5 * std::exp(-2.0 * (s - 1.0));
    CHECK(std::abs(F.value - 1.0 / (1.0 - g)) < 1e-12);
}

TEST_CASE("dirichlet weight spec blows up near its recurrent boundary point") {
    SeriesSpec spec = SeriesSpec::dirichlet_weights(ArithWeights::make({{2, 2.0}}));
    double tstar = 2.0 * 3.14159265358979323846 / std::log(2.0);
    double d = 1e-3;
    EvalResult near = spec.evaluate(complex{1.0 + d, tstar});
    CHECK(std::abs(near.value) > 0.9 / (d * std::log(2.0)));
    EvalResult far = spec.evaluate(complex{1.0 + d, tstar / 2.0});
    CHECK(std::abs(far.value) < 10.0);
}

TEST_CASE("boundary sampling fills a conjugate-symmetric positive grid") {
    SeriesSpec er = SeriesSpec::exp_renewal();
    std::vector<double> approach{0.5, 0.25, 0.125};
    BoundaryGrid grid = sample_boundary(er, 1.0, approach, 201);

    CHECK(grid.approach_variable == "sigma_minus_1");
    REQUIRE(grid.U.size() == 3);
    REQUIRE(grid.transverse.size() == 201);
    CHECK(grid.transverse[100] == 0.0);

    // center column: Re F(1+d) = (1+d)/d
    CHECK_THAT(grid.U[0][100], WithinAbs(3.0, 1e-12));
    CHECK_THAT(grid.U[1][100], WithinAbs(5.0, 1e-12));
    CHECK_THAT(grid.U[2][100], WithinAbs(9.0, 1e-12));

    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i < 201; ++i) {
            CHECK(std::abs(grid.U[j][i] - grid.U[j][200 - i]) < 1e-12);
            CHECK(grid.U[j][i] > 0.0);
        }
}

TEST_CASE("boundary sampling validates its schedule") {
    SeriesSpec er = SeriesSpec::exp_renewal();
    std::vector<double> good{0.5, 0.25};
    std::vector<double> increasing{0.25, 0.5};
    std::vector<double> zero{0.5, 0.0};
    CHECK(throws_code(errc::bad_input, [&] { sample_boundary(er, 1.0, increasing, 11); }));
    CHECK(throws_code(errc::bad_input, [&] { sample_boundary(er, 1.0, zero, 11); }));
    CHECK(throws_code(errc::bad_input, [&] { sample_boundary(er, 1.0, good, 10); }));
    CHECK(throws_code(errc::empty_grid, [&] { sample_boundary(er, 1.0, {}, 11); }));
    CHECK(throws_code(errc::bad_input, [&] { sample_boundary(er, -1.0, good, 11); }));
}

TEST_CASE("disc specs sample along shrinking radii") {
    SeriesSpec dp = SeriesSpec::pole_only(1.0, Geometry::disc);
    std::vector<double> approach{0.5, 0.25};
    BoundaryGrid grid = sample_boundary(dp, 0.5, approach, 101);
    CHECK(grid.approach_variable == "one_minus_r");
    // center column: 1/(1-r) = 1/d
    CHECK_THAT(grid.U[0][50], WithinAbs(2.0, 1e-12));
    CHECK_THAT(grid.U[1][50], WithinAbs(4.0, 1e-12));
}

TEST_CASE("truncated stieltjes specs keep their grid tails below the cap") {
    RenewalSeq q = renewal_sequence(two_point(), 400);
    SeriesSpec spec = SeriesSpec::stieltjes(q);
    std::vector<double> approach{0.5, 0.25};
    BoundaryGrid grid = sample_boundary(spec, 1.0, approach, 51);
    CHECK(grid.max_tail_bound <= 1e-8);

    // same spec against the closed reciprocal form, within the honest tail
    SeriesSpec lat = SeriesSpec::lattice_renewal(two_point());
    complex s{1.25, 0.3};
    EvalResult a = spec.evaluate(s, 1e-10);
    EvalResult b = lat.evaluate(s);
    CHECK(std::abs(a.value - b.value) <= a.tail_bound + 1e-9);
}

TEST_CASE("pole subtraction cancels the exp-renewal singularity exactly") {
    SeriesSpec er = SeriesSpec::exp_renewal();
    for (double d : {1e-2, 1e-5, 1e-8}) {
        EvalResult r = pole_subtracted(er, 1.0, complex{1.0 + d, 0.0});
        CHECK_THAT(r.value.real(), WithinAbs(1.0, 1e-6));
    }
}

TEST_CASE("asymptotic ratio traces settle on their limits") {
    RenewalSeq q = renewal_sequence(two_point(), 100);
    Trace tq = asymptotic_ratio(q, 2.0 / 3.0);
    CHECK(tq.sup_deviation_tail < 1e-15);

    SampledFunction S = exp_samples(10.0, 1e-2);
    Trace ts = asymptotic_ratio(S, 1.0);
    CHECK(ts.sup_deviation_tail < 1e-12);
}
