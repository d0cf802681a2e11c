#include "hls/heisenberg.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace hls;

namespace {

GroupPoint random_point(std::mt19937_64& rng, int n, double scale = 2.0)
{
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> c(2 * n + 1);
    for (double& x : c)
        x = u(rng);
    return GroupPoint(n, c);
}

bool close(const GroupPoint& a, const GroupPoint& b, double tol)
{
    for (std::size_t k = 0; k < a.coords().size(); ++k)
        if (std::abs(a.coords()[k] - b.coords()[k]) > tol)
            return false;
    return true;
}

}  // namespace

TEST_CASE("group law on H^1 by hand")
{
    // (x, y, t)(x', y', t') = (x + x', y + y', t + t' + 2 (y x' - x y'))
    const GroupPoint u = GroupPoint::h1(1.0, 0.0, 0.0);
    const GroupPoint v = GroupPoint::h1(0.0, 1.0, 0.0);
    CHECK(multiply(u, v) == GroupPoint::h1(1.0, 1.0, -2.0));
    CHECK(multiply(v, u) == GroupPoint::h1(1.0, 1.0, 2.0));
}

TEST_CASE("group axioms")
{
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const GroupPoint u = random_point(rng, n), v = random_point(rng, n), w = random_point(rng, n);
            CHECK(close(multiply(multiply(u, v), w), multiply(u, multiply(v, w)), 1e-12));
            CHECK(close(multiply(u, inverse(u)), GroupPoint(n), 1e-12));
            CHECK(close(multiply(GroupPoint(n), u), u, 0.0));
        }
    }
}

TEST_CASE("norm is homogeneous and symmetric")
{
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 50; ++trial) {
            const GroupPoint u = random_point(rng, n);
            const double d = std::exp(std::uniform_real_distribution<double>(-3, 3)(rng));
            CHECK(norm(dilate(d, u)) == doctest::Approx(d * norm(u)).epsilon(1e-13));
            CHECK(norm(inverse(u)) == doctest::Approx(norm(u)).epsilon(1e-15));
            // dilations are automorphisms
            const GroupPoint v = random_point(rng, n);
            CHECK(close(dilate(d, multiply(u, v)), multiply(dilate(d, u), dilate(d, v)), 1e-9 * (1 + d * d)));
        }
    }
    CHECK(norm(GroupPoint::h1(1.0, 1.0, 0.0)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm(GroupPoint::h1(0.0, 0.0, -16.0)) == doctest::Approx(4.0));
}

TEST_CASE("distance is left invariant and satisfies the triangle inequality")
{
    std::mt19937_64 rng(13);
    for (int n = 1; n <= 2; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const GroupPoint u = random_point(rng, n), v = random_point(rng, n), w = random_point(rng, n);
            CHECK(distance(multiply(w, u), multiply(w, v)) == doctest::Approx(distance(u, v)).epsilon(1e-11));
            CHECK(distance(u, v) == doctest::Approx(distance(v, u)).epsilon(1e-12));
            CHECK(distance(u, w) <= distance(u, v) + distance(v, w) + 1e-12);
        }
    }
}

TEST_CASE("ball volume")
{
    CHECK(ball_volume(1) == doctest::Approx(std::numbers::pi * std::numbers::pi / 2).epsilon(1e-14));
    CHECK_THROWS_AS(ball_volume(0), InvalidArgument);
}

TEST_CASE("malformed points are rejected")
{
    CHECK_THROWS_AS(GroupPoint(0), InvalidArgument);
    CHECK_THROWS_AS(GroupPoint(1, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS(multiply(GroupPoint(1), GroupPoint(2)));
}
