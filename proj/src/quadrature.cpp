#include "hls/quadrature.hpp"

#include "hls/gauss.hpp"
#include "hls/parallel.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <span>
#include <cmath>
#include <numbers>

namespace hls {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesLimit = 0.75;  // squared eccentricity below which the series is summed

void require_lambda(double lambda, int Q)
{
    if (!(lambda > 0.0 && lambda < Q))
        throw InvalidArgument("lambda out of (0,Q)");
}

void require_h1(const CylGrid& grid)
{
    if (grid.n() != 1)
        throw InvalidArgument("deterministic quadrature is implemented for n = 1 only");
}

}  // namespace

double riesz_kernel(const GroupPoint& u, const GroupPoint& v, double lambda)
{
    require_lambda(lambda, homogeneous_dimension(u.n()));
    const double d = distance(u, v);
    if (d == 0.0)
        return kSingularKernel;
    return std::pow(d, -lambda);
}

double angular_average_kernel(double rho, double rho2, double tau, double lambda, int order)
{
    if (!(rho >= 0.0) || !(rho2 >= 0.0))
        throw InvalidArgument("angular_average_kernel: radii must be nonnegative");
    // Expanding the square, the base is c^2 + b^2 - 2 b c cos(phi - phi*) with
    // a = rho^2 + rho2^2, b = 2 rho rho2, c = |(a, tau)|; its minimum is d^2, d = c - b.
    const double a = rho * rho + rho2 * rho2;
    const double b = 2.0 * rho * rho2;
    const double c = std::hypot(a, tau);
    const double diff = (rho - rho2) * (rho + rho2);
    const double d_num = diff * diff + tau * tau;
    if (d_num == 0.0)
        return kSingularKernel;
    const double d = d_num / (c + b);
    const double nu = 0.25 * lambda;
    const double A = c * c + b * b;
    const double x = 2.0 * b * c / A;
    const double x2 = x * x;

    if (x2 <= kSeriesLimit) {
        // (1/2pi) \int (A - B cos psi)^{-nu} = A^{-nu} 2F1(nu/2, nu/2 + 1/2; 1; x^2)
        const double a1 = 0.5 * nu, a2 = 0.5 * nu + 0.5;
        double term = 1.0, sum = 1.0;
        for (int m = 0; m < 2000; ++m) {
            term *= (a1 + m) * (a2 + m) / ((m + 1.0) * (m + 1.0)) * x2;
            sum += term;
            if (term < 1e-17 * sum)
                break;
        }
        return std::exp(-nu * std::log(A)) * sum;
    }

    // (2/pi) \int_0^{pi/2} (d^2 + 4 b c sin^2 theta)^{-nu} d theta, peaked at theta = 0
    const double bc4 = 4.0 * b * c;
    const double theta0 = d / std::sqrt(bc4);
    const Rule1d rule = graded_rule(0.0, 0.5 * kPi, true, theta0, 3.0, order);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
        const double s = std::sin(rule.x[k]);
        sum += rule.w[k] * std::exp(-nu * std::log(d * d + bc4 * s * s));
    }
    return 2.0 / kPi * sum;
}

double lp_norm(const CylGridFunction& f, double p)
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw InvalidArgument("lp_norm: p must be >= 1");
    const CylGrid& g = f.grid();
    double sum = 0.0;
    for (int j = 0; j < g.n_rho(); ++j) {
        double row = 0.0;
        for (int b = 0; b < g.n_t(); ++b) {
            const double v = std::abs(f(j, b));
            if (v != 0.0)
                row += g.t_weights()[b] * (p == 1.0 ? v : std::pow(v, p));
        }
        sum += g.rho_weights()[j] * row;
    }
    return std::pow(sum, 1.0 / p);
}

namespace {

// Source layout for one quadrature row: rho nodes (log-spaced panels) and a
// uniform array of vertical offsets tau_b = tau0 + b h.
struct RowLayout {
    std::span<const double> rho;
    std::span<const double> s;  // log rho
    double tau0;
    double h;
    int n_tau;
};

// Cubic Lagrange basis on four nodes.
struct Stencil {
    int first;
    std::array<double, 4> nodes;

    std::array<double, 4> basis(double x) const
    {
        std::array<double, 4> out;
        for (int p = 0; p < 4; ++p) {
            double v = 1.0;
            for (int m = 0; m < 4; ++m)
                if (m != p)
                    v *= (x - nodes[m]) / (nodes[p] - nodes[m]);
            out[p] = v;
        }
        return out;
    }
};

Stencil s_stencil(const RowLayout& L, int panel)
{
    const int J = static_cast<int>(L.s.size());
    const int first = std::clamp(panel - 1, 0, J - 4);
    return Stencil{first, {L.s[first], L.s[first + 1], L.s[first + 2], L.s[first + 3]}};
}

Stencil tau_stencil(const RowLayout& L, int panel)
{
    const int first = std::clamp(panel - 1, 0, L.n_tau - 4);
    Stencil st{first, {}};
    for (int p = 0; p < 4; ++p)
        st.nodes[p] = L.tau0 + (first + p) * L.h;
    return st;
}

struct Rect {
    double s_lo, s_hi, t_lo, t_hi;
};

class RowBuilder {
public:
    RowBuilder(const RowLayout& layout, double rho_star, double lambda,
               const QuadratureOptions& opts)
        : L_(layout), rho_star_(rho_star), lambda_(lambda), opts_(opts),
          s_star_(rho_star > 0.0 ? std::log(rho_star) : -std::numeric_limits<double>::infinity()),
          row_(layout.s.size() * static_cast<std::size_t>(layout.n_tau), 0.0)
    {
    }

    // Integrates every panel whose lower tau edge is >= tau_floor (pass -inf for all).
    void run(double tau_floor)
    {
        const int J = static_cast<int>(L_.s.size());
        for (int j = 0; j + 1 < J; ++j) {
            std::vector<std::pair<double, double>> s_parts;
            // snap edges lying on the singular point up to rounding
            const double s_tol = 1e-9 * (L_.s[j + 1] - L_.s[j]);
            const double sa = snap(L_.s[j], s_star_, s_tol), sb = snap(L_.s[j + 1], s_star_, s_tol);
            if (s_star_ > sa && s_star_ < sb)
                s_parts = {{sa, s_star_}, {s_star_, sb}};
            else
                s_parts = {{sa, sb}};
            const Stencil ss = s_stencil(L_, j);
            for (int b = 0; b + 1 < L_.n_tau; ++b) {
                const double t_tol = 1e-9 * L_.h;
                const double ta = snap(L_.tau0 + b * L_.h, 0.0, t_tol);
                const double tb = snap(L_.tau0 + (b + 1) * L_.h, 0.0, t_tol);
                if (ta < tau_floor - 1e-12 * L_.h)
                    continue;
                std::vector<std::pair<double, double>> t_parts;
                if (ta < 0.0 && tb > 0.0)
                    t_parts = {{ta, 0.0}, {0.0, tb}};
                else
                    t_parts = {{ta, tb}};
                const bool split = s_parts.size() > 1 || t_parts.size() > 1;
                const Stencil ts = tau_stencil(L_, b);
                if (!split) {
                    const double r = closeness(Rect{sa, sb, ta, tb});
                    if (r <= opts_.far_ratio) {
                        add_far(Rect{sa, sb, ta, tb}, r, ss, ts);
                        continue;
                    }
                }
                for (auto [s0, s1] : s_parts)
                    for (auto [t0, t1] : t_parts)
                        add_moments(Rect{s0, s1, t0, t1}, ss, ts);
            }
        }
    }

    std::vector<double>& row() { return row_; }

private:
    static double snap(double x, double target, double tol)
    {
        return std::abs(x - target) <= tol ? target : x;
    }

    double kernel(double rho2, double tau) const
    {
        return angular_average_kernel(rho_star_, rho2, tau, lambda_);
    }

    // Smallest |rho*^2 - rho'^2| over the panel's rho range.
    double radial_gap(const Rect& r) const
    {
        const double lo = std::exp(r.s_lo), hi = std::exp(r.s_hi);
        if (rho_star_ >= lo && rho_star_ <= hi)
            return 0.0;
        const double nearest = rho_star_ < lo ? lo : hi;
        return std::abs(rho_star_ * rho_star_ - nearest * nearest);
    }

    static double gap_to(double lo, double hi, double x)
    {
        if (x >= lo && x <= hi)
            return 0.0;
        return x < lo ? lo - x : x - hi;
    }

    // Panel extent over the local kernel length scale, maximized over both
    // directions; small values mean the kernel is smooth across the panel.
    double closeness(const Rect& r) const
    {
        const double dtau = gap_to(r.t_lo, r.t_hi, 0.0);
        const double ell_tau = std::max(dtau, radial_gap(r));
        double out = (r.t_hi - r.t_lo) / ell_tau;
        if (rho_star_ > 0.0) {
            const double ds = gap_to(r.s_lo, r.s_hi, s_star_);
            const double ell_s = std::max(ds, dtau / (2.0 * rho_star_ * rho_star_));
            out = std::max(out, (r.s_hi - r.s_lo) / ell_s);
        }
        return std::isfinite(out) ? out : std::numeric_limits<double>::infinity();
    }

    // Tensor Gauss rule on a smooth panel, order growing with closeness.
    void add_far(const Rect& r, double closeness, const Stencil& ss, const Stencil& ts)
    {
        const int m = closeness <= 0.1 ? 2 : closeness <= 0.25 ? 3 : 4;
        const GaussRule& g = gauss_legendre(m);
        const double hs = 0.5 * (r.s_hi - r.s_lo), ms = 0.5 * (r.s_hi + r.s_lo);
        const double ht = 0.5 * (r.t_hi - r.t_lo), mt = 0.5 * (r.t_hi + r.t_lo);
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c)
                accumulate(ms + hs * g.nodes[a], mt + ht * g.nodes[c],
                           hs * ht * g.weights[a] * g.weights[c], ss, ts);
    }

    void accumulate(double s, double tau, double w, const Stencil& ss, const Stencil& ts)
    {
        const double rho2 = std::exp(s);
        const double k = kernel(rho2, tau);
        if (!std::isfinite(k))
            return;
        const double val = w * 2.0 * kPi * rho2 * rho2 * k;
        const auto ls = ss.basis(s);
        const auto lt = ts.basis(tau);
        for (int p = 0; p < 4; ++p) {
            double* out = &row_[(ss.first + p) * static_cast<std::size_t>(L_.n_tau) + ts.first];
            const double vp = val * ls[p];
            for (int q = 0; q < 4; ++q)
                out[q] += vp * lt[q];
        }
    }

    void add_moments(const Rect& r, const Stencil& ss, const Stencil& ts)
    {
        const bool touches_s = rho_star_ > 0.0 && (r.s_lo == s_star_ || r.s_hi == s_star_);
        const bool touches_t = r.t_lo == 0.0 || r.t_hi == 0.0;
        if (touches_s && touches_t) {
            add_corner(r, ss, ts);
            return;
        }
        const int m = opts_.gauss_order;
        Rule1d s_rule, t_rule;
        if (touches_s) {
            const double dtau = gap_to(r.t_lo, r.t_hi, 0.0);
            const double scale = 0.05 * dtau / (2.0 * rho_star_ * rho_star_);
            s_rule = graded_rule(r.s_lo, r.s_hi, r.s_lo == s_star_, scale, opts_.grading_ratio, m);
        } else {
            s_rule.append_gauss(r.s_lo, r.s_hi, m);
        }
        if (touches_t) {
            const double scale = std::max(0.05 * radial_gap(r), 1e-300);
            t_rule = graded_rule(r.t_lo, r.t_hi, r.t_lo == 0.0, scale, opts_.grading_ratio, m);
        } else {
            t_rule.append_gauss(r.t_lo, r.t_hi, m);
        }
        for (std::size_t a = 0; a < s_rule.x.size(); ++a)
            for (std::size_t c = 0; c < t_rule.x.size(); ++c)
                accumulate(s_rule.x[a], t_rule.x[c], s_rule.w[a] * t_rule.w[c], ss, ts);
    }

    // Panel with the singular point at a corner: split into two triangles with
    // apex at the singular point, Duffy-map each to a square, grade the radial
    // variable toward the apex and add the innermost piece from the leading
    // power law u^{3 - lambda} of the radial integrand.
    void add_corner(const Rect& r, const Stencil& ss, const Stencil& ts)
    {
        const double s0 = s_star_;
        const double t0 = 0.0;
        const double sx = (r.s_lo == s0) ? (r.s_hi - s0) : (r.s_lo - s0);  // signed extents
        const double ty = (r.t_lo == t0) ? (r.t_hi - t0) : (r.t_lo - t0);
        const double LX = std::abs(sx), LY = std::abs(ty);
        // aspect of the panel in coordinates where the singularity is isotropic
        const double aspect = LY / (2.0 * rho_star_ * rho_star_ * LX);
        const int m = opts_.gauss_order;
        const double u_min = opts_.corner_cutoff;
        const double exponent = lambda_ > 2.0 ? 3.0 - lambda_ : 1.0;
        Rule1d u_rule = graded_rule(0.0, 1.0, true, u_min, opts_.grading_ratio, m);
        // drop the innermost Gauss panel on [0, u_min]; replaced by the power-law tail
        Rule1d u_main;
        for (std::size_t k = 0; k < u_rule.x.size(); ++k)
            if (u_rule.x[k] > u_min) {
                u_main.x.push_back(u_rule.x[k]);
                u_main.w.push_back(u_rule.w[k]);
            }
        u_main.x.push_back(u_min);
        u_main.w.push_back(u_min / (exponent + 1.0));

        for (int tri = 0; tri < 2; ++tri) {
            const double v_scale = tri == 0 ? std::min(1.0, 0.05 / aspect) : std::min(1.0, 0.05 * aspect);
            const Rule1d v_rule = graded_rule(0.0, 1.0, true, v_scale, opts_.grading_ratio, m);
            for (std::size_t a = 0; a < u_main.x.size(); ++a) {
                const double u = u_main.x[a];
                for (std::size_t c = 0; c < v_rule.x.size(); ++c) {
                    const double v = v_rule.x[c];
                    const double X = tri == 0 ? u : u * v;
                    const double Y = tri == 0 ? u * v : u;
                    const double w = u_main.w[a] * v_rule.w[c] * u * LX * LY;
                    accumulate(s0 + X * sx, t0 + Y * ty, w, ss, ts);
                }
            }
        }
    }

    const RowLayout& L_;
    double rho_star_, lambda_;
    QuadratureOptions opts_;
    double s_star_;
    std::vector<double> row_;
};

std::vector<double> build_row(const RowLayout& layout, double rho_star, double lambda,
                              const QuadratureOptions& opts, bool symmetric_tau)
{
    RowBuilder builder(layout, rho_star, lambda, opts);
    if (!symmetric_tau) {
        builder.run(-std::numeric_limits<double>::infinity());
        return std::move(builder.row());
    }
    // The kernel is even in tau: integrate tau >= 0 and mirror.
    builder.run(0.0);
    std::vector<double> half = std::move(builder.row());
    std::vector<double> out(half.size(), 0.0);
    const int B = layout.n_tau;
    for (std::size_t j = 0; j < layout.s.size(); ++j)
        for (int b = 0; b < B; ++b)
            out[j * B + b] = half[j * B + b] + half[j * B + (B - 1 - b)];
    return out;
}

void validate_options(const QuadratureOptions& o)
{
    if (!(o.far_ratio > 0.0) || o.gauss_order < 2 || o.gauss_order > 64 || !(o.grading_ratio > 1.0) ||
        !(o.corner_cutoff > 0.0 && o.corner_cutoff < 1.0))
        throw InvalidArgument("invalid quadrature options");
}

}  // namespace

FractionalIntegralOperator::FractionalIntegralOperator(GridPtr grid, double lambda,
                                                       QuadratureOptions opts)
    : grid_(std::move(grid)), lambda_(lambda)
{
    if (!grid_)
        throw InvalidArgument("null grid");
    require_h1(*grid_);
    require_lambda(lambda, homogeneous_dimension(grid_->n()));
    validate_options(opts);
    n_rho_ = grid_->n_rho();
    n_t_ = grid_->n_t();
    n_off_ = 2 * n_t_ - 1;
    table_.assign(static_cast<std::size_t>(n_rho_) * n_rho_ * n_off_, 0.0);

    const RowLayout layout{grid_->rho(), grid_->log_rho(), -(n_t_ - 1) * grid_->t_step(),
                           grid_->t_step(), n_off_};
    const std::size_t row_size = static_cast<std::size_t>(n_rho_) * n_off_;
    parallel_for(n_rho_, resolve_workers(opts.workers), [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto row = build_row(layout, grid_->rho()[i], lambda_, opts, true);
            std::copy(row.begin(), row.end(), table_.begin() + i * row_size);
        }
    });
}

double FractionalIntegralOperator::entry(int i, int j, int k) const
{
    return table_[(static_cast<std::size_t>(i) * n_rho_ + j) * n_off_ + (k + n_t_ - 1)];
}

CylGridFunction FractionalIntegralOperator::apply(const CylGridFunction& f) const
{
    if (!f.grid().same_as(*grid_))
        throw InvalidArgument("grid mismatch");
    CylGridFunction out(grid_);
    const auto fv = f.values();
    const int B = n_t_;
    std::vector<double> acc(B);
    for (int i = 0; i < n_rho_; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int j = 0; j < n_rho_; ++j) {
            const double* w = &table_[(static_cast<std::size_t>(i) * n_rho_ + j) * n_off_];
            const double* fj = &fv[static_cast<std::size_t>(j) * B];
            for (int a = 0; a < B; ++a) {
                // entry index for source b: (b - a) + B - 1
                const double* wa = w + (B - 1 - a);
                double s = 0.0;
                for (int b = 0; b < B; ++b)
                    s += wa[b] * fj[b];
                acc[a] += s;
            }
        }
        for (int a = 0; a < B; ++a)
            out(i, a) = acc[a];
    }
    return out;
}

double FractionalIntegralOperator::energy(const CylGridFunction& f, const CylGridFunction& g) const
{
    require_same_grid(f, g);
    if (!f.grid().same_as(*grid_))
        throw InvalidArgument("grid mismatch");
    // average of <f, I g> and <g, I f> so the discrete form is exactly symmetric
    const auto pair = [&](const CylGridFunction& a, const CylGridFunction& Ib) {
        double sum = 0.0;
        for (int j = 0; j < n_rho_; ++j)
            for (int b = 0; b < n_t_; ++b)
                sum += grid_->weight(j, b) * a(j, b) * Ib(j, b);
        return sum;
    };
    const CylGridFunction Ig = apply(g);
    if (std::ranges::equal(f.values(), g.values()))
        return pair(f, Ig);
    return 0.5 * (pair(f, Ig) + pair(g, apply(f)));
}

double fractional_integral(const CylGridFunction& f, double lambda, const GroupPoint& u,
                           const QuadratureOptions& opts)
{
    const CylGrid& g = f.grid();
    require_h1(g);
    if (u.n() != 1)
        throw InvalidArgument("dimension mismatch");
    require_lambda(lambda, homogeneous_dimension(1));
    validate_options(opts);
    const double rho_u = std::sqrt(u.z_norm_sq());
    const RowLayout layout{g.rho(), g.log_rho(), g.t().front() - u.t(), g.t_step(), g.n_t()};
    const auto row = build_row(layout, rho_u, lambda, opts, false);
    double sum = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k)
        sum += row[k] * f.values()[k];
    return sum;
}

double bilinear_energy(const FractionalIntegralOperator& op, const CylGridFunction& f,
                       const CylGridFunction& g)
{
    return op.energy(f, g);
}

double bilinear_energy(const CylGridFunction& f, const CylGridFunction& g, double lambda,
                       const QuadratureOptions& opts)
{
    require_same_grid(f, g);
    if (f.is_zero() || g.is_zero()) {
        require_lambda(lambda, homogeneous_dimension(f.n()));
        return 0.0;
    }
    const FractionalIntegralOperator op(f.grid_ptr(), lambda, opts);
    return op.energy(f, g);
}

double hls_quotient(const FractionalIntegralOperator& op, const CylGridFunction& f,
                    const HlsParams& params)
{
    validate(params);
    if (std::abs(params.lambda - op.lambda()) > 1e-15 || params.n != op.grid().n())
        throw InvalidArgument("operator does not match parameters");
    if (f.is_zero())
        throw InvalidArgument("quotient undefined for f = 0");
    const CylGridFunction If = op.apply(f);
    return lp_norm(If, params.q) / lp_norm(f, params.p);
}

double hls_quotient(const CylGridFunction& f, const HlsParams& params, const QuadratureOptions& opts)
{
    validate(params);
    if (f.is_zero())
        throw InvalidArgument("quotient undefined for f = 0");
    const FractionalIntegralOperator op(f.grid_ptr(), params.lambda, opts);
    return hls_quotient(op, f, params);
}

}  // namespace hls
