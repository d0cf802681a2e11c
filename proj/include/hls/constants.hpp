#pragma once

// Closed-form sharp constants and admissible exponent tuples for the
// Hardy-Littlewood-Sobolev inequality on R^N and on the Heisenberg group.
//
// Everything is reported in the bilinear normalization
//   | \iint f(u) g(v) |u^{-1} v|^{-lambda} du dv | <= C ||f||_r ||g||_s,
// and every Gamma ratio is evaluated in log space with a single exponentiation.

namespace hls {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Exponent tuple for the fractional-integral form sup ||I_lambda f||_q / ||f||_p.
///
/// 1/q = 1/p - (Q - lambda)/Q, with the dual bilinear exponents r = q' and s = p.
struct HlsParams {
    int n = 1;
    int Q = 4;
    double lambda = 2.0;
    double p = 4.0 / 3.0;
    double q = 4.0;
    double r = 4.0 / 3.0;
    double s = 4.0 / 3.0;

    /// True when r = s = 2Q/(2Q - lambda), the case with a known extremal.
    bool diagonal(double tol = 1e-12) const;
};

/// Euclidean bilinear exponents with 1/r + 1/s + lambda/N = 2.
struct EuclideanParams {
    int N = 3;
    double lambda = 2.0;
    double r = 1.5;
    double s = 1.5;
};

/// Tolerance on the linear exponent relations.
inline constexpr double kAdmissibilityTol = 1e-12;

HlsParams derive_conjugates(int n, double lambda, double p);
/// Diagonal tuple p = 2Q/(2Q - lambda).
HlsParams diagonal_params(int n, double lambda);
/// Throws InvalidArgument unless all tuple relations hold.
void validate(const HlsParams& params);
EuclideanParams make_euclidean_params(int N, double lambda, double r, double s);

/// Frank-Lieb diagonal sharp constant on H^n.
double frank_lieb_constant(int n, double lambda);

/// Upper bound for the bilinear constant on H^n for general (r, s).
double heisenberg_upper_bound(int n, double lambda, double r, double s);

enum class LiebVariant {
    /// pi^{lambda/N}: the power of pi scales with the dimension.
    pi_per_dimension,
    /// pi^{lambda/2}, the classical form.
    standard,
};

/// Variant selected by the Monte Carlo discrimination experiment.
inline constexpr LiebVariant kDefaultLiebVariant = LiebVariant::standard;

const char* to_string(LiebVariant v);

/// Lieb's diagonal sharp constant on R^N, r = s = 2N/(2N - lambda).
double lieb_diagonal_constant(int N, double lambda, LiebVariant variant = kDefaultLiebVariant);

/// Lieb-Loss upper bound for the Euclidean constant with general (r, s).
double lieb_loss_upper_bound(int N, double lambda, double r, double s);

/// Area of the unit sphere S^{N-1} in R^N.
double unit_sphere_area(int N);

}  // namespace hls
