#pragma once

#include "hls/constants.hpp"
#include "hls/grid.hpp"
#include "hls/heisenberg.hpp"

#include <limits>
#include <vector>

namespace hls {

/// Value returned by kernel evaluations at the diagonal u = v.
inline constexpr double kSingularKernel = std::numeric_limits<double>::infinity();

/// |u^{-1} v|^{-lambda}; kSingularKernel when u = v.
double riesz_kernel(const GroupPoint& u, const GroupPoint& v, double lambda);

/// Circle average of the H^1 kernel between rings of radii rho, rho2 whose
/// vertical offset is tau:
///   (1/2pi) \int_0^{2pi} ((rho^2 + rho2^2 - 2 rho rho2 cos phi)^2
///                         + (tau - 2 rho rho2 sin phi)^2)^{-lambda/4} dphi.
///
/// Far from the singular locus the hypergeometric series in the reduced
/// eccentricity is summed directly; near it the angular integral is split at
/// the minimum and integrated with `order`-point Gauss panels graded toward
/// the peak. Returns kSingularKernel at rho = rho2, tau = 0.
double angular_average_kernel(double rho, double rho2, double tau, double lambda, int order = 10);

/// (sum w |f|^p)^{1/p}
double lp_norm(const CylGridFunction& f, double p);

struct QuadratureOptions {
    /// A panel counts as far (low-order tensor Gauss) when its extent is at most
    /// far_ratio times the local kernel length scale in each direction.
    double far_ratio = 0.5;
    /// Gauss-Legendre order on each (sub)panel.
    int gauss_order = 8;
    /// Geometric grading ratio toward singular edges and corners.
    double grading_ratio = 3.0;
    /// Smallest relative radius resolved around the singular point; the
    /// remainder is added from the leading-order power law.
    double corner_cutoff = 1e-12;
    int workers = 0;
};

/// Discretized I_lambda on a CylGrid (n = 1) as a t-convolution table.
///
/// f is represented by its piecewise-cubic interpolant in (log rho, t) near the
/// kernel singularity and by low-order Gauss moments of the kernel elsewhere.
class FractionalIntegralOperator {
public:
    FractionalIntegralOperator(GridPtr grid, double lambda, QuadratureOptions opts = {});

    const CylGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    double lambda() const { return lambda_; }

    /// Returns (I_lambda f) sampled at the grid nodes.
    CylGridFunction apply(const CylGridFunction& f) const;
    /// Symmetrized discrete form (<f, I g> + <g, I f>) / 2.
    double energy(const CylGridFunction& f, const CylGridFunction& g) const;

    /// Weight of source node (j, b) for target (i, a), with k = b - a.
    double entry(int i, int j, int k) const;

private:
    GridPtr grid_;
    double lambda_;
    int n_rho_, n_t_, n_off_;
    std::vector<double> table_;
};

/// I_lambda(f)(u) at an arbitrary point, by direct quadrature (n = 1).
double fractional_integral(const CylGridFunction& f, double lambda, const GroupPoint& u,
                           const QuadratureOptions& opts = {});

double bilinear_energy(const CylGridFunction& f, const CylGridFunction& g, double lambda,
                       const QuadratureOptions& opts = {});
double bilinear_energy(const FractionalIntegralOperator& op, const CylGridFunction& f,
                       const CylGridFunction& g);

/// ||I_lambda f||_q / ||f||_p on the grid of f.
double hls_quotient(const CylGridFunction& f, const HlsParams& params,
                    const QuadratureOptions& opts = {});
double hls_quotient(const FractionalIntegralOperator& op, const CylGridFunction& f,
                    const HlsParams& params);

}  // namespace hls
