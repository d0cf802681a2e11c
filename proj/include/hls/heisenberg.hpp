#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace hls {

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A point (z, t) of the Heisenberg group H^n.
///
/// Coordinates are stored flat as (x_1..x_n, y_1..y_n, t) with z_j = x_j + i y_j.
class GroupPoint {
public:
    /// Identity element of H^n.
    explicit GroupPoint(int n);
    GroupPoint(int n, std::vector<double> coords);

    /// Convenience constructor for n = 1.
    static GroupPoint h1(double x, double y, double t);

    int n() const { return n_; }
    double x(int j) const { return coords_[j]; }
    double y(int j) const { return coords_[n_ + j]; }
    double t() const { return coords_[2 * n_]; }
    double& x(int j) { return coords_[j]; }
    double& y(int j) { return coords_[n_ + j]; }
    double& t() { return coords_[2 * n_]; }

    /// |z|^2
    double z_norm_sq() const;

    std::span<const double> coords() const { return coords_; }

    bool operator==(const GroupPoint&) const = default;

private:
    int n_;
    std::vector<double> coords_;
};

inline int homogeneous_dimension(int n) { return 2 * n + 2; }

/// Group law (z,t)(z',t') = (z+z', t+t'+2 Im(z . conj(z'))).
GroupPoint multiply(const GroupPoint& u, const GroupPoint& v);
GroupPoint inverse(const GroupPoint& u);
/// delta_d(z,t) = (d z, d^2 t), d > 0.
GroupPoint dilate(double d, const GroupPoint& u);
/// Homogeneous norm (|z|^4 + t^2)^{1/4}.
double norm(const GroupPoint& u);
/// Left-invariant metric |u^{-1} v|.
double distance(const GroupPoint& u, const GroupPoint& v);

/// Volume of the unit ball {|u| < 1} in H^n.
double ball_volume(int n);

/// 2 Im(z . conj(z')) computed on flat coordinate blocks.
double symplectic_twist(std::span<const double> u, std::span<const double> v, int n);

}  // namespace hls
