#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace hls {

/// Tensor grid for cylindrically symmetric functions f(|z|, t) on H^n.
struct GridSpec {
    int n = 1;
    double rho_min = 1e-3;
    double rho_max = 50.0;
    int n_rho = 64;
    double t_max = 50.0;
    int n_t = 128;

    /// Halve both spacings while keeping the existing nodes.
    GridSpec refined() const;
};

/// rho nodes (strictly increasing, positive) and uniform t nodes with
/// trapezoid weights in (log rho, t). The rho weights carry the cylindrical
/// measure factor omega_{2n-1} rho^{2n-1} d rho.
class CylGrid {
public:
    explicit CylGrid(const GridSpec& spec);
    /// Arbitrary rho nodes; t nodes must be uniformly spaced.
    CylGrid(int n, std::vector<double> rho, std::vector<double> t);

    int n() const { return n_; }
    int n_rho() const { return static_cast<int>(rho_.size()); }
    int n_t() const { return static_cast<int>(t_.size()); }
    std::size_t size() const { return rho_.size() * t_.size(); }
    std::size_t index(int j, int b) const { return static_cast<std::size_t>(j) * t_.size() + b; }

    std::span<const double> rho() const { return rho_; }
    std::span<const double> log_rho() const { return log_rho_; }
    std::span<const double> t() const { return t_; }
    std::span<const double> rho_weights() const { return rho_w_; }
    std::span<const double> t_weights() const { return t_w_; }
    double t_step() const { return t_step_; }
    double weight(int j, int b) const { return rho_w_[j] * t_w_[b]; }

    /// Cell boundaries used for partial-volume computations.
    std::span<const double> rho_edges() const { return rho_edges_; }
    std::span<const double> t_edges() const { return t_edges_; }

    bool same_as(const CylGrid& other) const;

private:
    void build();

    int n_;
    std::vector<double> rho_, log_rho_, t_;
    std::vector<double> rho_w_, t_w_;
    std::vector<double> rho_edges_, t_edges_;
    double t_step_ = 0.0;
};

using GridPtr = std::shared_ptr<const CylGrid>;

GridPtr make_grid(const GridSpec& spec);

/// A cylindrically symmetric function sampled on a CylGrid.
class CylGridFunction {
public:
    explicit CylGridFunction(GridPtr grid);
    CylGridFunction(GridPtr grid, std::vector<double> values);

    static CylGridFunction sample(GridPtr grid, const std::function<double(double rho, double t)>& f);

    const CylGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    int n() const { return grid_->n(); }

    double operator()(int j, int b) const { return values_[grid_->index(j, b)]; }
    double& operator()(int j, int b) { return values_[grid_->index(j, b)]; }
    double weight(int j, int b) const { return grid_->weight(j, b); }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    CylGridFunction& operator*=(double c);
    bool is_zero() const;
    bool nonnegative() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Mass of the density in the ball {rho^4 + (t - center_t)^2 < R^4}. Each node
/// carries the mass of its cell (edges from rho_edges/t_edges), prorated by
/// the covered fraction so the result is continuous in R and center_t.
double ball_mass(const CylGridFunction& density, double R, double center_t);

/// Cell average of the indicator of that ball: 1 inside, the covered share on
/// boundary cells. Resolves the ball far better than point sampling.
CylGridFunction ball_indicator(GridPtr grid, double R, double center_t = 0.0);

/// Throws InvalidArgument unless f and g live on the same grid.
void require_same_grid(const CylGridFunction& f, const CylGridFunction& g);

}  // namespace hls
