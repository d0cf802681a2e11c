#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace hls {

/// Group structure used by the sampler: H^n (left-invariant, homogeneous norm)
/// or flat R^N with the Euclidean norm. Points are flat coordinate arrays.
class Geometry {
public:
    static Geometry heisenberg(int n);
    static Geometry euclidean(int N);

    bool is_heisenberg() const { return heisenberg_; }
    /// n for H^n, N for R^N.
    int rank() const { return rank_; }
    int coord_dim() const { return heisenberg_ ? 2 * rank_ + 1 : rank_; }
    /// Homogeneous dimension.
    int Q() const { return heisenberg_ ? 2 * rank_ + 2 : rank_; }
    double unit_ball_volume() const { return ball_volume_; }

    double norm(std::span<const double> w) const;
    /// out = u . w
    void compose(std::span<const double> u, std::span<const double> w, std::span<double> out) const;
    /// In-place delta_d (Heisenberg) or scalar multiple (Euclidean).
    void dilate(double d, std::span<double> w) const;

private:
    Geometry(bool heisenberg, int rank);

    bool heisenberg_;
    int rank_;
    double ball_volume_;
};

using PointFunction = std::function<double(std::span<const double>)>;

struct McOptions {
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 0;
    /// Independent streams; 0 means one per hardware thread. The estimate
    /// depends on (seed, workers) but never on thread scheduling.
    int workers = 1;
    /// Scale of the heavy-tailed proposal for the outer variable.
    double scale = 1.0;
    /// Radius of the near-diagonal proposal component.
    double near_radius = 1.0;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// \iint f(u) g(v) |u^{-1} v|^{-lambda} du dv.
McEstimate mc_bilinear_energy(const PointFunction& f, const PointFunction& g, double lambda,
                              const Geometry& geometry, const McOptions& opts);

/// \int f(v) |u^{-1} v|^{-lambda} dv at the point u.
McEstimate mc_fractional_integral(const PointFunction& f, double lambda, std::span<const double> u,
                                  const Geometry& geometry, const McOptions& opts);

/// \int |f|^p.
McEstimate mc_lp_norm_power(const PointFunction& f, double p, const Geometry& geometry,
                            const McOptions& opts);

/// Volume of the unit ball by hit-or-miss in the enclosing box.
McEstimate mc_ball_volume(const Geometry& geometry, const McOptions& opts);

}  // namespace hls
