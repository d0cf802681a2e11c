#include "hls/heisenberg.hpp"

#include "hls/constants.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hls {

namespace {

void require_same_dimension(const GroupPoint& u, const GroupPoint& v)
{
    if (u.n() != v.n())
        throw InvalidArgument("dimension mismatch: H^" + std::to_string(u.n()) + " vs H^" +
                              std::to_string(v.n()));
}

}  // namespace

GroupPoint::GroupPoint(int n) : GroupPoint(n, std::vector<double>(2 * std::max(n, 0) + 1, 0.0)) {}

GroupPoint::GroupPoint(int n, std::vector<double> coords) : n_(n), coords_(std::move(coords))
{
    if (n < 1)
        throw InvalidArgument("GroupPoint: n must be positive");
    if (coords_.size() != static_cast<std::size_t>(2 * n + 1))
        throw InvalidArgument("GroupPoint: expected 2n+1 coordinates");
    for (double c : coords_)
        if (!std::isfinite(c))
            throw InvalidArgument("GroupPoint: non-finite coordinate");
}

GroupPoint GroupPoint::h1(double x, double y, double t) { return GroupPoint(1, {x, y, t}); }

double GroupPoint::z_norm_sq() const
{
    double s = 0.0;
    for (int j = 0; j < 2 * n_; ++j)
        s += coords_[j] * coords_[j];
    return s;
}

double symplectic_twist(std::span<const double> u, std::span<const double> v, int n)
{
    // Im(z_j conj(z'_j)) = y_j x'_j - x_j y'_j
    double im = 0.0;
    for (int j = 0; j < n; ++j)
        im += u[n + j] * v[j] - u[j] * v[n + j];
    return 2.0 * im;
}

GroupPoint multiply(const GroupPoint& u, const GroupPoint& v)
{
    require_same_dimension(u, v);
    const int n = u.n();
    std::vector<double> c(2 * n + 1);
    for (int j = 0; j < 2 * n; ++j)
        c[j] = u.coords()[j] + v.coords()[j];
    c[2 * n] = u.t() + v.t() + symplectic_twist(u.coords(), v.coords(), n);
    return GroupPoint(n, std::move(c));
}

GroupPoint inverse(const GroupPoint& u)
{
    std::vector<double> c(u.coords().begin(), u.coords().end());
    for (double& x : c)
        x = -x;
    return GroupPoint(u.n(), std::move(c));
}

GroupPoint dilate(double d, const GroupPoint& u)
{
    if (!(d > 0.0) || !std::isfinite(d))
        throw InvalidArgument("dilate: factor must be positive");
    std::vector<double> c(u.coords().begin(), u.coords().end());
    const int n = u.n();
    for (int j = 0; j < 2 * n; ++j)
        c[j] *= d;
    c[2 * n] *= d * d;
    return GroupPoint(n, std::move(c));
}

double norm(const GroupPoint& u)
{
    const double z2 = u.z_norm_sq();
    // sqrt(sqrt(.)) of a hypot keeps precision for both |z| >> |t| and the reverse
    return std::sqrt(std::hypot(z2, u.t()));
}

double distance(const GroupPoint& u, const GroupPoint& v)
{
    require_same_dimension(u, v);
    return norm(multiply(inverse(u), v));
}

double ball_volume(int n)
{
    if (n < 1)
        throw InvalidArgument("ball_volume: n must be positive");
    const double Q = homogeneous_dimension(n);
    const double log_num = std::log(2.0) + 0.5 * (Q - 2.0) * std::log(std::numbers::pi) +
                           log_gamma(0.5) + log_gamma((Q + 2.0) / 4.0);
    const double log_den = std::log(Q - 2.0) + log_gamma((Q - 2.0) / 2.0) + log_gamma((Q + 4.0) / 4.0);
    return std::exp(log_num - log_den);
}

}  // namespace hls
