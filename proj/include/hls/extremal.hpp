#pragma once

#include "hls/constants.hpp"
#include "hls/grid.hpp"
#include "hls/quadrature.hpp"

#include <stdexcept>
#include <vector>

namespace hls {

/// Raised when no ball inside the grid captures half of the L^p mass, so the
/// concentration normalization cannot be applied.
class VanishingFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// ((1 + rho^2)^2 + t^2)^{-(2Q - lambda)/4} on the grid.
CylGridFunction extremal_H(double lambda, GridPtr grid);

/// exp(-rho^2 - t^2)
CylGridFunction gaussian_profile(GridPtr grid);

/// f / ||f||_p
CylGridFunction normalize(const CylGridFunction& f, double p);

/// d^{-Q/p} f(z/d, (t - a)/d^2) resampled onto the grid of f: cubic in log rho
/// (constant below the first node, zero beyond the last) and band-limited in t.
/// Negative interpolation ripples are clipped and the result is rescaled to the
/// L^p norm of f.
CylGridFunction dilate_translate(const CylGridFunction& f, double d, double a, double p);

/// |f|^p
CylGridFunction density(const CylGridFunction& f, double p);

/// Largest ball mass of |f|^p over radius-R balls centered on the axis at grid t
/// nodes; ties go to the center of smallest |t|.
struct Concentration {
    double mass;
    double center_t;
};
Concentration levy_concentration(const CylGridFunction& f, double p, double R);

/// f <- normalize( (I((I f)^{q-1}))^{1/(p-1)} ), restricted to f >= 0.
CylGridFunction euler_lagrange_step(const FractionalIntegralOperator& op, const CylGridFunction& f,
                                    const HlsParams& params);

struct Renormalized {
    CylGridFunction f;
    double d;
    double a;
};

/// Dilates and shifts f so that the best radius-1 ball holds half of the
/// L^p mass (within 1e-3) and sits at the origin. When the grid cannot resolve
/// that concentration the closest reachable dilation is returned.
Renormalized renormalize_concentration(const CylGridFunction& f, const HlsParams& params);

struct TraceRecord {
    int iter;
    double quotient;
    double q1_concentration;
    double dilation;
    double t_shift;
    bool accepted;
};
using ConvergenceTrace = std::vector<TraceRecord>;

struct MaximizeOptions {
    int max_iter = 500;
    double rtol = 1e-7;
    /// Convergence is declared when the quotient gains less than rtol
    /// (relative) over this many iterations.
    int window = 10;
    double theta_min = 1e-4;
    bool renormalize = true;
};

struct MaximizeResult {
    CylGridFunction f;
    double quotient;
    ConvergenceTrace trace;
    bool converged;
};

MaximizeResult maximize(const FractionalIntegralOperator& op, const HlsParams& params,
                        const CylGridFunction& init, const MaximizeOptions& opts = {});

struct Alignment {
    double d;
    double a;
    double rel_error;
};

/// Minimizes || f/|f|_p - T_{d,a}(g/|g|_p) ||_p over dilations d and t-shifts a,
/// with T as in dilate_translate.
Alignment align(const CylGridFunction& f, const CylGridFunction& g, double p);

}  // namespace hls
