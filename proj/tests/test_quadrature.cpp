#include "hls/extremal.hpp"
#include "hls/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hls;

namespace {

constexpr double kPi = std::numbers::pi;

double trapezoid_angular(double rho, double rho2, double tau, double lambda)
{
    // Periodic integrand: the plain rectangle rule is spectrally accurate away
    // from the singular locus and converges like N^{-(1 - lambda/2)} near it.
    const int N = 1'000'000;
    double sum = 0.0;
    for (int k = 0; k < N; ++k) {
        const double phi = 2.0 * kPi * (k + 0.5) / N;
        const double a = rho * rho + rho2 * rho2 - 2.0 * rho * rho2 * std::cos(phi);
        const double b = tau - 2.0 * rho * rho2 * std::sin(phi);
        sum += std::pow(a * a + b * b, -lambda / 4.0);
    }
    return sum / N;
}

GridPtr small_grid(int n_rho = 32, int n_t = 64, double extent = 50.0)
{
    GridSpec s;
    s.n_rho = n_rho;
    s.n_t = n_t;
    s.rho_max = extent;
    s.t_max = extent;
    return make_grid(s);
}

}  // namespace

TEST_CASE("riesz kernel")
{
    const GroupPoint u = GroupPoint::h1(0.3, -0.2, 0.5), v = GroupPoint::h1(-1.0, 0.4, 2.0);
    CHECK(riesz_kernel(u, v, 2.0) == doctest::Approx(std::pow(distance(u, v), -2.0)));
    CHECK(riesz_kernel(u, v, 1.3) == doctest::Approx(riesz_kernel(v, u, 1.3)).epsilon(1e-13));
    CHECK(riesz_kernel(u, u, 2.0) == kSingularKernel);
    const double d = 2.7;
    CHECK(riesz_kernel(dilate(d, u), dilate(d, v), 1.5) ==
          doctest::Approx(std::pow(d, -1.5) * riesz_kernel(u, v, 1.5)).epsilon(1e-12));
    CHECK_THROWS_AS(riesz_kernel(u, v, 4.0), InvalidArgument);
}

TEST_CASE("angular average against a 10^6-node rectangle rule")
{
    struct Case {
        double rho, rho2, tau, lambda, tol;
    };
    for (const Case& c : {Case{1.0, 0.2, 0.5, 2.0, 1e-12}, Case{1.0, 3.0, -2.0, 2.0, 1e-8},
                          Case{0.7, 0.9, 0.1, 1.0, 1e-8}, Case{2.0, 2.0, 0.3, 3.0, 1e-8},
                          Case{1.0, 1.05, 0.0, 2.0, 1e-8}, Case{5.0, 0.01, 10.0, 3.5, 1e-12},
                          Case{1.0, 1.0, 0.1, 1.0, 1e-8}})
        CHECK(angular_average_kernel(c.rho, c.rho2, c.tau, c.lambda) ==
              doctest::Approx(trapezoid_angular(c.rho, c.rho2, c.tau, c.lambda)).epsilon(c.tol));
    CHECK(angular_average_kernel(1.0, 1.0, 0.0, 2.0) == kSingularKernel);
    // rho2 = 0 collapses the ring to a point on the axis
    CHECK(angular_average_kernel(1.5, 0.0, 0.7, 2.0) ==
          doctest::Approx(std::pow(std::pow(1.5, 4) + 0.49, -0.5)).epsilon(1e-14));
}

TEST_CASE("lp_norm")
{
    const GridPtr g = small_grid(48, 97, 6.0);
    const CylGridFunction f = gaussian_profile(g);
    CylGridFunction h = f;
    h *= -3.0;
    CHECK(lp_norm(h, 1.5) == doctest::Approx(3.0 * lp_norm(f, 1.5)).epsilon(1e-14));
    // \int exp(-2 rho^2 - 2 t^2) = 2 pi * (1/4) * sqrt(pi/2)
    CHECK(std::pow(lp_norm(f, 2.0), 2) == doctest::Approx(kPi / 2 * std::sqrt(kPi / 2)).epsilon(1e-4));
    CHECK_THROWS_AS(lp_norm(f, 0.5), InvalidArgument);
}

TEST_CASE("ball indicator volume")
{
    // The node weights are trapezoid weights in log rho, so the discrete ball
    // volume converges to pi^2/2 under refinement rather than matching it.
    double prev_err = 1.0, prev_err2 = 1.0;
    for (auto [nr, nt] : {std::pair{32, 64}, std::pair{64, 128}, std::pair{127, 255}}) {
        const GridPtr g = small_grid(nr, nt);
        CylGridFunction one(g);
        for (double& v : one.values())
            v = 1.0;
        const double err = std::abs(ball_mass(one, 1.0, 0.0) / (kPi * kPi / 2) - 1.0);
        // |B_R| = R^4 |B_1|
        const double err2 = std::abs(ball_mass(one, 2.0, 0.0) / (8 * kPi * kPi) - 1.0);
        CHECK(err < prev_err);
        CHECK(err2 < prev_err2);
        prev_err = err;
        prev_err2 = err2;
        const CylGridFunction chi = ball_indicator(g, 1.0);
        CHECK(ball_mass(one, 1.0, 0.0) == doctest::Approx(lp_norm(chi, 1.0)).epsilon(1e-12));
    }
    CHECK(prev_err < 2e-3);
    CHECK(prev_err2 < 2e-3);
}

TEST_CASE("fractional integral of the unit ball at the origin")
{
    // Q |B| / (Q - lambda) = pi^2 on a grid sized to the ball
    GridSpec s;
    s.n_rho = 64;
    s.n_t = 129;
    s.rho_max = 4.0;
    s.t_max = 2.0;
    const CylGridFunction chi = ball_indicator(make_grid(s), 1.0);
    CHECK(fractional_integral(chi, 2.0, GroupPoint(1)) == doctest::Approx(kPi * kPi).epsilon(0.01));
    // I_2 H = 2 pi ((1 + rho^2)^2 + t^2)^{-1/2}, at points off the grid nodes
    const CylGridFunction H = extremal_H(2.0, small_grid(64, 129));
    for (auto [r, t] : {std::pair{0.0, 0.0}, std::pair{0.8, 0.3}, std::pair{2.0, -3.0}}) {
        const double exact = 2 * kPi / std::sqrt(std::pow(1 + r * r, 2) + t * t);
        CHECK(fractional_integral(H, 2.0, GroupPoint::h1(r, 0.0, t)) == doctest::Approx(exact).epsilon(0.01));
    }
}

TEST_CASE("operator table: symmetry, consistency and invariances")
{
    const GridPtr g = small_grid();
    const FractionalIntegralOperator op(g, 2.0);
    const CylGridFunction f = gaussian_profile(g);
    const CylGridFunction h = extremal_H(2.0, g);

    CHECK(op.energy(f, h) == doctest::Approx(op.energy(h, f)).epsilon(1e-14));
    CHECK(op.energy(f, f) > 0.0);
    CylGridFunction f3 = f;
    f3 *= 3.0;
    CHECK(op.energy(f3, h) == doctest::Approx(3.0 * op.energy(f, h)).epsilon(1e-13));

    // apply() and the pointwise quadrature describe the same discretization
    const CylGridFunction If = op.apply(f);
    for (auto [j, b] : {std::pair{5, 40}, std::pair{16, 32}, std::pair{25, 10}}) {
        const GroupPoint u = GroupPoint::h1(g->rho()[j], 0.0, g->t()[b]);
        CHECK(If(j, b) == doctest::Approx(fractional_integral(f, 2.0, u)).epsilon(5e-3));
    }

    const HlsParams hp = diagonal_params(1, 2.0);
    const double q = hls_quotient(op, f, hp);
    CHECK(hls_quotient(op, f3, hp) == doctest::Approx(q).epsilon(1e-12));
    CHECK(q < frank_lieb_constant(1, 2.0));
    CHECK(hls_quotient(op, h, hp) == doctest::Approx(4.0).epsilon(0.02));
    // Dilation and vertical translation are symmetries of the quotient.
    const double qh = hls_quotient(op, h, hp);
    const CylGridFunction hd = dilate_translate(h, 1.5, 0.4, hp.p);
    CHECK(hls_quotient(op, hd, hp) == doctest::Approx(qh).epsilon(0.01));

    CHECK_THROWS_AS(hls_quotient(op, CylGridFunction(g), hp), InvalidArgument);
    CHECK_THROWS_AS(op.apply(gaussian_profile(small_grid(16, 32))), InvalidArgument);
}
