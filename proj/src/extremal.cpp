#include "hls/extremal.hpp"

#include "hls/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hls {

CylGridFunction extremal_H(double lambda, GridPtr grid)
{
    const int Q = homogeneous_dimension(grid->n());
    if (!(lambda > 0.0 && lambda < Q))
        throw InvalidArgument("lambda out of (0,Q)");
    const double e = -(2.0 * Q - lambda) / 4.0;
    return CylGridFunction::sample(std::move(grid), [e](double rho, double t) {
        const double a = 1.0 + rho * rho;
        return std::pow(a * a + t * t, e);
    });
}

CylGridFunction gaussian_profile(GridPtr grid)
{
    return CylGridFunction::sample(std::move(grid),
                                   [](double rho, double t) { return std::exp(-rho * rho - t * t); });
}

CylGridFunction normalize(const CylGridFunction& f, double p)
{
    const double nrm = lp_norm(f, p);
    if (!(nrm > 0.0))
        throw InvalidArgument("cannot normalize the zero function");
    CylGridFunction out = f;
    out *= 1.0 / nrm;
    return out;
}

CylGridFunction density(const CylGridFunction& f, double p)
{
    CylGridFunction out = f;
    for (double& v : out.values())
        v = std::pow(std::abs(v), p);
    return out;
}

namespace {

double sinc(double x)
{
    if (std::abs(x) < 1e-12)
        return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// Four-point Lagrange weights at x on the nodes starting at `first`.
void lagrange4(std::span<const double> nodes, int first, double x, double* w)
{
    for (int p = 0; p < 4; ++p) {
        double v = 1.0;
        for (int m = 0; m < 4; ++m)
            if (m != p)
                v *= (x - nodes[first + m]) / (nodes[first + p] - nodes[first + m]);
        w[p] = v;
    }
}

}  // namespace

CylGridFunction dilate_translate(const CylGridFunction& f, double d, double a, double p)
{
    if (!(d > 0.0) || !std::isfinite(d) || !std::isfinite(a))
        throw InvalidArgument("dilation must be positive and finite");
    const CylGrid& g = f.grid();
    const int J = g.n_rho(), B = g.n_t();
    const auto t = g.t();
    const double h = g.t_step();
    const double prefactor = std::pow(d, -homogeneous_dimension(g.n()) / p);

    // t pass: row j of `shifted` holds f(rho_j, (t_b - a)/d^2)
    std::vector<double> shifted(static_cast<std::size_t>(J) * B, 0.0);
    std::vector<double> w(B);
    for (int b = 0; b < B; ++b) {
        const double src = (t[b] - a) / (d * d);
        if (src < t.front() - 0.5 * h || src > t.back() + 0.5 * h)
            continue;
        for (int k = 0; k < B; ++k)
            w[k] = sinc((src - t[k]) / h);
        for (int j = 0; j < J; ++j) {
            double s = 0.0;
            for (int k = 0; k < B; ++k)
                s += w[k] * f(j, k);
            shifted[static_cast<std::size_t>(j) * B + b] = s;
        }
    }

    // rho pass: cubic in log rho at log(rho_j / d)
    const auto s_nodes = g.log_rho();
    CylGridFunction out(f.grid_ptr());
    const double shift = std::log(d);
    for (int j = 0; j < J; ++j) {
        const double src = s_nodes[j] - shift;
        if (src > s_nodes.back() + 1e-12)
            continue;
        double lw[4];
        int first = 0;
        if (src <= s_nodes.front()) {
            lw[0] = 1.0, lw[1] = lw[2] = lw[3] = 0.0;
        } else {
            const int k = static_cast<int>(std::upper_bound(s_nodes.begin(), s_nodes.end(), src) - s_nodes.begin()) - 1;
            first = std::clamp(k - 1, 0, J - 4);
            lagrange4(s_nodes, first, src, lw);
        }
        for (int b = 0; b < B; ++b) {
            double v = 0.0;
            for (int m = 0; m < 4; ++m)
                v += lw[m] * shifted[static_cast<std::size_t>(first + m) * B + b];
            out(j, b) = std::max(0.0, prefactor * v);
        }
    }
    const double target = lp_norm(f, p);
    const double got = lp_norm(out, p);
    if (got > 0.0)
        out *= target / got;
    return out;
}

namespace {

// Candidate centers k h on the axis, anchored at t = 0.
std::vector<double> axis_centers(const CylGrid& g, double R)
{
    const double h = g.t_step();
    const double reach = g.t().back() - R * R;
    std::vector<double> out{0.0};
    for (int k = 1; k * h <= reach; ++k) {
        out.push_back(k * h);
        out.push_back(-k * h);
    }
    return out;
}

Concentration best_ball(const CylGridFunction& dens, double R)
{
    Concentration best{-1.0, 0.0};
    for (double c : axis_centers(dens.grid(), R)) {
        const double m = ball_mass(dens, R, c);
        // candidates come in order of |c|, so a strict improvement is needed
        if (m > best.mass * (1.0 + 1e-12) || best.mass < 0.0)
            best = {m, c};
    }
    if (best.mass < 0.0)
        best.mass = 0.0;
    return best;
}

}  // namespace

Concentration levy_concentration(const CylGridFunction& f, double p, double R)
{
    if (!(R > 0.0))
        throw InvalidArgument("R must be positive");
    return best_ball(density(f, p), R);
}

CylGridFunction euler_lagrange_step(const FractionalIntegralOperator& op, const CylGridFunction& f,
                                    const HlsParams& params)
{
    validate(params);
    if (!f.nonnegative())
        throw InvalidArgument("euler_lagrange_step: f must be nonnegative");
    if (f.is_zero())
        throw InvalidArgument("euler_lagrange_step: f must be nonzero");
    CylGridFunction g = op.apply(f);
    for (double& v : g.values())
        v = std::pow(std::max(v, 0.0), params.q - 1.0);
    CylGridFunction out = op.apply(g);
    for (double& v : out.values())
        v = std::pow(std::max(v, 0.0), 1.0 / (params.p - 1.0));
    return normalize(out, params.p);
}

Renormalized renormalize_concentration(const CylGridFunction& f, const HlsParams& params)
{
    constexpr double kHalf = 0.5;
    constexpr double kTol = 1e-3;
    const CylGridFunction dens = density(f, params.p);
    const double total = [&] {
        double s = 0.0;
        for (int j = 0; j < dens.grid().n_rho(); ++j)
            for (int b = 0; b < dens.grid().n_t(); ++b)
                s += dens.weight(j, b) * dens(j, b);
        return s;
    }();
    if (!(total > 0.0))
        throw InvalidArgument("renormalize_concentration: f must be nonzero");
    const double half = kHalf * total;

    const Concentration at_one = best_ball(dens, 1.0);
    if (at_one.center_t == 0.0 && std::abs(at_one.mass - half) <= kTol * total)
        return {f, 1.0, 0.0};

    const CylGrid& g = dens.grid();
    const auto inscribed = [&](double c) {
        return std::min(g.rho().back(), std::sqrt(std::max(0.0, g.t().back() - std::abs(c))));
    };
    // radius at which the ball centered at c holds half the mass
    const auto half_radius = [&](double c) {
        double hi = inscribed(c);
        if (!(hi > 0.0) || ball_mass(dens, hi, c) < half)
            return -1.0;
        double lo = 1e-3 * hi;
        if (ball_mass(dens, lo, c) >= half)
            return lo;
        for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it) {
            const double mid = std::sqrt(lo * hi);
            const double m = ball_mass(dens, mid, c);
            if (std::abs(m - half) <= 1e-6 * total)
                return mid;
            (m < half ? lo : hi) = mid;
        }
        return std::sqrt(lo * hi);
    };

    double c = at_one.center_t;
    double R = half_radius(c);
    if (R < 0.0 && c != 0.0) {
        c = 0.0;
        R = half_radius(c);
    }
    if (R < 0.0)
        throw VanishingFailure("no ball inside the grid holds half of the mass");
    for (int round = 0; round < 8; ++round) {
        const Concentration best = best_ball(dens, R);
        if (best.center_t == c || best.mass <= ball_mass(dens, R, c) * (1.0 + 1e-12))
            break;
        const double R_new = half_radius(best.center_t);
        if (R_new < 0.0)
            break;
        c = best.center_t;
        R = R_new;
    }
    // Resampling shifts the half-mass radius slightly; settle d on the
    // resampled profile itself, where d -> Q(1) is decreasing.
    const auto attempt = [&](double d) {
        Renormalized r{dilate_translate(f, d, -c * d * d, params.p), d, -c * d * d};
        return std::pair{std::move(r), best_ball(density(r.f, params.p), 1.0).mass / total - kHalf};
    };
    auto [out, gap] = attempt(1.0 / R);
    if (std::abs(gap) <= kTol)
        return out;
    double lo = out.d, hi = out.d;
    double gap_lo = gap, gap_hi = gap;
    Renormalized closest = out;
    double closest_gap = std::abs(gap);
    for (int k = 0; k < 40 && gap_lo * gap_hi > 0.0; ++k) {
        // step in the direction that moves Q(1) toward 1/2
        const double next = (gap > 0.0 ? hi * 1.05 : lo / 1.05);
        auto [r, g2] = attempt(next);
        if (std::abs(g2) <= kTol)
            return r;
        if (std::abs(g2) < closest_gap) {
            closest_gap = std::abs(g2);
            closest = r;
        }
        if (gap > 0.0) {
            hi = next;
            gap_hi = g2;
        } else {
            lo = next;
            gap_lo = g2;
        }
    }
    // A grid too coarse for the required concentration cannot reach 1/2;
    // that is a resolution limit rather than vanishing, so keep the closest.
    if (gap_lo * gap_hi > 0.0)
        return closest;
    // bisection in log d between lo (Q(1) above 1/2) and hi (below)
    if (gap_lo < 0.0)
        std::swap(lo, hi);
    for (int k = 0; k < 60; ++k) {
        const double mid = std::sqrt(lo * hi);
        auto [r, g2] = attempt(mid);
        if (std::abs(g2) <= kTol || std::abs(std::log(hi / lo)) < 1e-12)
            return r;
        (g2 > 0.0 ? lo : hi) = mid;
    }
    return attempt(std::sqrt(lo * hi)).first;
}

MaximizeResult maximize(const FractionalIntegralOperator& op, const HlsParams& params,
                        const CylGridFunction& init, const MaximizeOptions& opts)
{
    validate(params);
    if (std::abs(params.lambda - op.lambda()) > 1e-15 || params.n != op.grid().n())
        throw InvalidArgument("operator does not match parameters");
    if (!init.grid().same_as(op.grid()))
        throw InvalidArgument("grid mismatch");
    if (init.is_zero())
        throw InvalidArgument("maximize: initial function is zero");
    if (!init.nonnegative())
        throw InvalidArgument("maximize: initial function must be nonnegative");
    if (opts.max_iter < 1 || opts.window < 1 || !(opts.rtol >= 0.0) || !(opts.theta_min > 0.0))
        throw InvalidArgument("maximize: invalid iteration controls");

    const double p = params.p;
    CylGridFunction f = normalize(init, p);
    double q = hls_quotient(op, f, params);
    MaximizeResult result{f, q, {}, false};
    result.trace.push_back({0, q, levy_concentration(f, p, 1.0).mass, 1.0, 0.0, true});

    for (int it = 1; it <= opts.max_iter; ++it) {
        CylGridFunction next = euler_lagrange_step(op, f, params);
        double d = 1.0, a = 0.0;
        double q_next = -1.0;
        bool accepted = false;
        if (opts.renormalize) {
            Renormalized r = renormalize_concentration(next, params);
            if (r.d != 1.0 || r.a != 0.0) {
                // resampling costs a little accuracy; keep the raw step if that is better
                const double q_r = hls_quotient(op, r.f, params);
                if (q_r >= q) {
                    next = std::move(r.f);
                    q_next = q_r;
                    d = r.d;
                    a = r.a;
                    accepted = true;
                }
            }
        }
        if (!accepted) {
            q_next = hls_quotient(op, next, params);
            accepted = q_next >= q;
        }
        for (double theta = 0.5; !accepted && theta >= opts.theta_min; theta *= 0.5) {
            CylGridFunction mix = f;
            auto mv = mix.values();
            const auto nv = next.values();
            for (std::size_t k = 0; k < mv.size(); ++k)
                mv[k] = (1.0 - theta) * mv[k] + theta * nv[k];
            mix = normalize(mix, p);
            const double q_mix = hls_quotient(op, mix, params);
            if (q_mix >= q) {
                next = std::move(mix);
                q_next = q_mix;
                accepted = true;
            }
        }
        if (accepted) {
            f = std::move(next);
            q = q_next;
        } else {
            d = 1.0;
            a = 0.0;
        }
        result.trace.push_back({it, q, levy_concentration(f, p, 1.0).mass, d, a, accepted});
        if (!accepted) {
            // the step is deterministic, so every later attempt would fail the same way
            result.converged = true;
            break;
        }
        if (it >= opts.window) {
            const double before = result.trace[it - opts.window].quotient;
            if (q - before <= opts.rtol * std::abs(q)) {
                result.converged = true;
                break;
            }
        }
    }
    result.f = std::move(f);
    result.quotient = q;
    return result;
}

namespace {

double distance_p(const CylGridFunction& f, const CylGridFunction& g, double p)
{
    CylGridFunction diff = f;
    auto dv = diff.values();
    const auto gv = g.values();
    for (std::size_t k = 0; k < dv.size(); ++k)
        dv[k] -= gv[k];
    return lp_norm(diff, p);
}

// Minimizes a unimodal function on [lo, hi].
template <class F>
double golden_min(F fn, double lo, double hi, int iters)
{
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    for (int k = 0; k < iters; ++k) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - r * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + r * (hi - lo);
            f2 = fn(x2);
        }
    }
    return f1 <= f2 ? x1 : x2;
}

}  // namespace

Alignment align(const CylGridFunction& f, const CylGridFunction& g, double p)
{
    require_same_grid(f, g);
    const CylGridFunction fn = normalize(f, p);
    const CylGridFunction gn = normalize(g, p);
    const auto error = [&](double log_d, double a) {
        return distance_p(fn, dilate_translate(gn, std::exp(log_d), a, p), p);
    };

    const double h = f.grid().t_step();
    const double a_reach = std::min(10.0, 0.25 * f.grid().t().back());
    Alignment best{1.0, 0.0, error(0.0, 0.0)};
    double best_log_d = 0.0;
    for (int i = -12; i <= 12; ++i) {
        const double log_d = i * std::log(4.0) / 12.0;
        for (int k = -static_cast<int>(a_reach / (0.5 * h)); k * 0.5 * h <= a_reach; ++k) {
            const double a = k * 0.5 * h;
            const double e = error(log_d, a);
            if (e < best.rel_error) {
                best = {std::exp(log_d), a, e};
                best_log_d = log_d;
            }
        }
    }
    // coordinate refinement around the coarse optimum
    double step_d = std::log(4.0) / 12.0, step_a = 0.5 * h;
    double a = best.a;
    for (int round = 0; round < 4; ++round) {
        best_log_d = golden_min([&](double x) { return error(x, a); }, best_log_d - step_d, best_log_d + step_d, 30);
        a = golden_min([&](double x) { return error(best_log_d, x); }, a - step_a, a + step_a, 30);
        step_d *= 0.5;
        step_a *= 0.5;
    }
    const double e = error(best_log_d, a);
    if (e < best.rel_error)
        best = {std::exp(best_log_d), a, e};
    return best;
}

}  // namespace hls
