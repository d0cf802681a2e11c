#include "hls/extremal.hpp"
#include "hls/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace hls;

namespace {

GridPtr grid_32()
{
    GridSpec s;
    s.n_rho = 32;
    s.n_t = 64;
    static const GridPtr g = make_grid(s);
    return g;
}

const FractionalIntegralOperator& op_32()
{
    static const FractionalIntegralOperator op(grid_32(), 2.0);
    return op;
}

double lp_distance(const CylGridFunction& f, const CylGridFunction& g, double p)
{
    CylGridFunction d = f;
    for (std::size_t k = 0; k < d.values().size(); ++k)
        d.values()[k] -= g.values()[k];
    return lp_norm(d, p);
}

const HlsParams kDiag = diagonal_params(1, 2.0);

}  // namespace

TEST_CASE("closed-form extremal on the grid")
{
    const GridPtr g = grid_32();
    for (double lambda : {1.0, 2.0, 3.0}) {
        const CylGridFunction H = extremal_H(lambda, g);
        const double e = -(8.0 - lambda) / 4.0;
        for (auto [j, b] : {std::pair{0, 0}, std::pair{20, 31}, std::pair{31, 63}}) {
            const double r = g->rho()[j], t = g->t()[b];
            CHECK(H(j, b) == doctest::Approx(std::pow(std::pow(1 + r * r, 2) + t * t, e)).epsilon(1e-14));
        }
        CHECK(H.nonnegative());
    }
}

TEST_CASE("normalization and resampling keep the L^p norm")
{
    const GridPtr g = grid_32();
    const CylGridFunction f = normalize(gaussian_profile(g), kDiag.p);
    CHECK(lp_norm(f, kDiag.p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lp_distance(dilate_translate(f, 1.0, 0.0, kDiag.p), f, kDiag.p) < 1e-6);
    const CylGridFunction fd = dilate_translate(f, 1.7, 0.6, kDiag.p);
    CHECK(lp_norm(fd, kDiag.p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fd.nonnegative());
    CHECK_THROWS_AS(normalize(CylGridFunction(g), kDiag.p), InvalidArgument);
}

TEST_CASE("concentration function")
{
    const GridPtr g = grid_32();
    const CylGridFunction f = normalize(gaussian_profile(g), kDiag.p);
    double prev = 0.0;
    for (double R : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
        const Concentration c = levy_concentration(f, kDiag.p, R);
        CHECK(c.mass >= prev);
        CHECK(c.mass <= 1.0 + 1e-12);
        CHECK(c.center_t == doctest::Approx(0.0).scale(1.0).epsilon(0.5));
        prev = c.mass;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("renormalization puts half of the mass in the unit ball")
{
    GridSpec s;
    s.n_rho = 48;
    s.n_t = 129;
    s.rho_max = 8.0;
    s.t_max = 8.0;
    const GridPtr g = make_grid(s);
    const CylGridFunction narrow =
        normalize(CylGridFunction::sample(g, [](double r, double t) { return std::exp(-4 * r * r - 16 * t * t); }),
                  kDiag.p);
    CHECK(levy_concentration(narrow, kDiag.p, 1.0).mass > 0.99);
    const Renormalized out = renormalize_concentration(narrow, kDiag);
    CHECK(out.d > 1.0);
    CHECK(levy_concentration(out.f, kDiag.p, 1.0).mass == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(lp_norm(out.f, kDiag.p) == doctest::Approx(1.0).epsilon(1e-12));

    const Renormalized again = renormalize_concentration(out.f, kDiag);
    CHECK(again.d == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(again.a == doctest::Approx(0.0).scale(1.0).epsilon(0.1));
}

TEST_CASE("Euler-Lagrange step")
{
    const CylGridFunction H = normalize(extremal_H(2.0, grid_32()), kDiag.p);
    const CylGridFunction next = euler_lagrange_step(op_32(), H, kDiag);
    CHECK(next.nonnegative());
    CHECK(lp_norm(next, kDiag.p) == doctest::Approx(1.0).epsilon(1e-12));

    // H is a fixed point up to discretization error, which shrinks under refinement
    GridSpec s;
    s.n_rho = 16;
    s.n_t = 32;
    s.rho_max = 20.0;
    s.t_max = 20.0;
    double prev = 1.0;
    for (int level = 0; level < 3; ++level, s = s.refined()) {
        const GridPtr g = make_grid(s);
        const FractionalIntegralOperator op(g, 2.0);
        const CylGridFunction Hg = normalize(extremal_H(2.0, g), kDiag.p);
        const double residual = lp_distance(euler_lagrange_step(op, Hg, kDiag), Hg, kDiag.p);
        CHECK(residual < prev);
        prev = residual;
    }
    CHECK(prev < 0.05);
    CylGridFunction neg = H;
    neg(3, 3) = -1.0;
    CHECK_THROWS_AS(euler_lagrange_step(op_32(), neg, kDiag), InvalidArgument);
}

TEST_CASE("maximize")
{
    const GridPtr g = grid_32();
    SUBCASE("started at H it stays put")
    {
        const CylGridFunction H = extremal_H(2.0, g);
        MaximizeOptions o;
        o.max_iter = 2;
        const MaximizeResult r = maximize(op_32(), kDiag, H, o);
        CHECK(r.quotient == doctest::Approx(hls_quotient(op_32(), H, kDiag)).epsilon(1e-2));
        CHECK(r.quotient <= frank_lieb_constant(1, 2.0) * 1.01);
    }
    SUBCASE("trace is nondecreasing and finite")
    {
        MaximizeOptions o;
        o.max_iter = 15;
        const MaximizeResult r = maximize(op_32(), kDiag, gaussian_profile(g), o);
        REQUIRE(r.trace.size() >= 2);
        for (std::size_t i = 1; i < r.trace.size(); ++i) {
            CHECK(r.trace[i].quotient >= r.trace[i - 1].quotient);
            CHECK(std::isfinite(r.trace[i].q1_concentration));
            CHECK(r.trace[i].dilation > 0.0);
        }
        CHECK(r.quotient == r.trace.back().quotient);
        CHECK(r.quotient > r.trace.front().quotient);
    }
    SUBCASE("zero start is rejected")
    {
        CHECK_THROWS_AS(maximize(op_32(), kDiag, CylGridFunction(g)), InvalidArgument);
    }
}

TEST_CASE("alignment modulo dilation and vertical shift")
{
    const GridPtr g = grid_32();
    const CylGridFunction f = extremal_H(2.0, g);
    const Alignment self = align(f, f, kDiag.p);
    CHECK(self.d == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(self.a == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(self.rel_error < 1e-6);

    const CylGridFunction moved = dilate_translate(f, 1.6, 0.7, kDiag.p);
    const Alignment a = align(moved, f, kDiag.p);
    CHECK(a.d == doctest::Approx(1.6).epsilon(0.01));
    CHECK(a.a == doctest::Approx(0.7).epsilon(0.02));
    CHECK(a.rel_error < 1e-2);

    CylGridFunction scaled = moved;
    scaled *= 5.0;
    CHECK(align(scaled, f, kDiag.p).rel_error == doctest::Approx(a.rel_error).epsilon(1e-9).scale(1e-12));
}
