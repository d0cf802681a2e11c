#include "hls/constants.hpp"

#include "hls/heisenberg.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace hls {

namespace {

constexpr double kPi = std::numbers::pi;

void require_lambda(double lambda, double dim)
{
    if (!(lambda > 0.0 && lambda < dim) || !std::isfinite(lambda))
        throw InvalidArgument("lambda out of (0,Q)");
}

void require_bilinear(double lambda, double dim, double r, double s)
{
    require_lambda(lambda, dim);
    if (!(r > 1.0 && std::isfinite(r)) || !(s > 1.0 && std::isfinite(s)))
        throw InvalidArgument("exponents r, s must lie in (1, inf)");
    const double defect = 1.0 / r + 1.0 / s + lambda / dim - 2.0;
    if (std::abs(defect) > kAdmissibilityTol) {
        std::ostringstream msg;
        msg << "exponents violate 1/r + 1/s + lambda/Q = 2 (defect " << defect << ")";
        throw InvalidArgument(msg.str());
    }
}

// Shared bracket [(l/(1-1/r))^l + (l/(1-1/s))^l] with l = lambda/dim.
double two_term_bracket(double l, double r, double s)
{
    return std::pow(l / (1.0 - 1.0 / r), l) + std::pow(l / (1.0 - 1.0 / s), l);
}

}  // namespace

double log_gamma(double x)
{
    if (!(x > 0.0) || std::isnan(x))
        throw InvalidArgument("log_gamma: argument must be positive");
    return std::lgamma(x);
}

bool HlsParams::diagonal(double tol) const
{
    const double rd = 2.0 * Q / (2.0 * Q - lambda);
    return std::abs(r - rd) <= tol * rd && std::abs(s - rd) <= tol * rd;
}

HlsParams derive_conjugates(int n, double lambda, double p)
{
    if (n < 1)
        throw InvalidArgument("n must be positive");
    const int Q = homogeneous_dimension(n);
    require_lambda(lambda, Q);
    const double p_max = Q / (Q - lambda);
    if (!(p > 1.0 && p < p_max) || !std::isfinite(p)) {
        std::ostringstream msg;
        msg << "p must lie in (1, Q/(Q-lambda)) = (1, " << p_max << ")";
        throw InvalidArgument(msg.str());
    }
    HlsParams out;
    out.n = n;
    out.Q = Q;
    out.lambda = lambda;
    out.p = p;
    const double inv_q = 1.0 / p - (Q - lambda) / static_cast<double>(Q);
    out.q = 1.0 / inv_q;
    out.r = out.q / (out.q - 1.0);
    out.s = p;
    validate(out);
    return out;
}

HlsParams diagonal_params(int n, double lambda)
{
    const int Q = homogeneous_dimension(n);
    require_lambda(lambda, Q);
    return derive_conjugates(n, lambda, 2.0 * Q / (2.0 * Q - lambda));
}

void validate(const HlsParams& params)
{
    if (params.n < 1 || params.Q != homogeneous_dimension(params.n))
        throw InvalidArgument("inconsistent (n, Q)");
    require_bilinear(params.lambda, params.Q, params.r, params.s);
    const double Q = params.Q;
    if (!(params.p > 1.0 && params.p < Q / (Q - params.lambda)))
        throw InvalidArgument("p outside (1, Q/(Q-lambda))");
    const double defect = 1.0 / params.q - (1.0 / params.p - (Q - params.lambda) / Q);
    if (std::abs(defect) > kAdmissibilityTol || !(params.q > 1.0))
        throw InvalidArgument("q violates 1/q = 1/p - (Q-lambda)/Q");
    if (std::abs(params.s - params.p) > kAdmissibilityTol * params.p ||
        std::abs(params.r - params.q / (params.q - 1.0)) > kAdmissibilityTol * params.r)
        throw InvalidArgument("dual exponents must satisfy r = q', s = p");
}

EuclideanParams make_euclidean_params(int N, double lambda, double r, double s)
{
    if (N < 1)
        throw InvalidArgument("N must be positive");
    require_bilinear(lambda, N, r, s);
    return EuclideanParams{N, lambda, r, s};
}

double frank_lieb_constant(int n, double lambda)
{
    if (n < 1)
        throw InvalidArgument("n must be positive");
    const double Q = homogeneous_dimension(n);
    require_lambda(lambda, Q);
    const double log_nfact = log_gamma(n + 1.0);
    const double log_base = (n + 1.0) * std::log(kPi) - (n - 1.0) * std::log(2.0) - log_nfact;
    const double log_value = (lambda / Q) * log_base + log_nfact + log_gamma((Q - lambda) / 2.0) -
                             2.0 * log_gamma((2.0 * Q - lambda) / 4.0);
    return std::exp(log_value);
}

double heisenberg_upper_bound(int n, double lambda, double r, double s)
{
    if (n < 1)
        throw InvalidArgument("n must be positive");
    const double Q = homogeneous_dimension(n);
    require_bilinear(lambda, Q, r, s);
    const double l = lambda / Q;
    const double prefactor = Q * std::pow(ball_volume(n), l) / (r * s * (Q - lambda));
    return prefactor * two_term_bracket(l, r, s);
}

const char* to_string(LiebVariant v)
{
    return v == LiebVariant::pi_per_dimension ? "pi_per_dimension" : "standard";
}

double lieb_diagonal_constant(int N, double lambda, LiebVariant variant)
{
    if (N < 1)
        throw InvalidArgument("N must be positive");
    require_lambda(lambda, N);
    const double pi_exponent = variant == LiebVariant::pi_per_dimension ? lambda / N : lambda / 2.0;
    const double log_value = pi_exponent * std::log(kPi) + log_gamma(N / 2.0 - lambda / 2.0) -
                             log_gamma(N - lambda / 2.0) +
                             ((lambda - N) / N) * (log_gamma(N / 2.0) - log_gamma(N));
    return std::exp(log_value);
}

double unit_sphere_area(int N)
{
    if (N < 1)
        throw InvalidArgument("N must be positive");
    return std::exp(std::log(2.0) + 0.5 * N * std::log(kPi) - log_gamma(N / 2.0));
}

double lieb_loss_upper_bound(int N, double lambda, double r, double s)
{
    if (N < 1)
        throw InvalidArgument("N must be positive");
    require_bilinear(lambda, N, r, s);
    const double l = lambda / N;
    const double prefactor =
        N / (r * s * (N - lambda)) * std::pow(unit_sphere_area(N) / N, l);
    return prefactor * two_term_bracket(l, r, s);
}

}  // namespace hls
