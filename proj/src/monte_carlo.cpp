#include "hls/monte_carlo.hpp"

#include "hls/constants.hpp"
#include "hls/heisenberg.hpp"
#include "hls/parallel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace hls {

Geometry::Geometry(bool heisenberg, int rank) : heisenberg_(heisenberg), rank_(rank)
{
    if (rank < 1)
        throw InvalidArgument("geometry: dimension must be positive");
    if (heisenberg)
        ball_volume_ = ball_volume(rank);
    else
        ball_volume_ = std::exp(0.5 * rank * std::log(std::numbers::pi) - log_gamma(0.5 * rank + 1.0));
}

Geometry Geometry::heisenberg(int n) { return Geometry(true, n); }
Geometry Geometry::euclidean(int N) { return Geometry(false, N); }

double Geometry::norm(std::span<const double> w) const
{
    if (!heisenberg_) {
        double s = 0.0;
        for (int k = 0; k < rank_; ++k)
            s += w[k] * w[k];
        return std::sqrt(s);
    }
    double z2 = 0.0;
    for (int k = 0; k < 2 * rank_; ++k)
        z2 += w[k] * w[k];
    return std::sqrt(std::hypot(z2, w[2 * rank_]));
}

void Geometry::compose(std::span<const double> u, std::span<const double> w, std::span<double> out) const
{
    const int d = coord_dim();
    if (heisenberg_) {
        const double twist = symplectic_twist(u, w, rank_);
        for (int k = 0; k < d; ++k)
            out[k] = u[k] + w[k];
        out[d - 1] += twist;
    } else {
        for (int k = 0; k < d; ++k)
            out[k] = u[k] + w[k];
    }
}

void Geometry::dilate(double d, std::span<double> w) const
{
    const int m = coord_dim();
    for (int k = 0; k < m; ++k)
        w[k] *= d;
    if (heisenberg_)
        w[m - 1] *= d;
}

namespace {

class Stream {
public:
    Stream(std::uint64_t seed, int worker)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(worker)};
        engine_.seed(seq);
    }

    /// Uniform on [0, 1) from the top 53 bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform on (0, 1].
    double uniform_open0() { return 1.0 - uniform(); }

private:
    std::mt19937_64 engine_;
};

// Welford accumulator with Chan's merge.
struct Moments {
    double count = 0.0, mean = 0.0, m2 = 0.0;

    void add(double x)
    {
        count += 1.0;
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }

    void merge(const Moments& o)
    {
        if (o.count == 0.0)
            return;
        const double total = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / total;
        m2 += o.m2 + delta * delta * count * o.count / total;
        count = total;
    }

    McEstimate estimate() const
    {
        const double var = count > 1.0 ? m2 / (count - 1.0) : 0.0;
        return {mean, std::sqrt(var / count)};
    }
};

void require_lambda(double lambda, const Geometry& g)
{
    if (!(lambda > 0.0 && lambda < g.Q()))
        throw InvalidArgument("lambda out of (0,Q)");
}

void require_options(const McOptions& o)
{
    if (o.samples < 1000)
        throw InvalidArgument("monte carlo: need at least 1000 samples");
    if (!(o.scale > 0.0) || !(o.near_radius > 0.0))
        throw InvalidArgument("monte carlo: proposal scales must be positive");
}

// Proposals on the group. Directions come from a uniform point of the unit
// ball (rejection from the box) pushed to the target radius by dilation,
// which realizes the polar decomposition dv = r^{Q-1} dr dsigma.
class Sampler {
public:
    Sampler(const Geometry& g, double lambda, const McOptions& o)
        : g_(g), lambda_(lambda), s_(o.scale), r0_(o.near_radius), Q_(g.Q())
    {
        near_weight_ = std::pow(r0_, Q_ - lambda_) * Q_ * g_.unit_ball_volume() / (Q_ - lambda_);
    }

    void direction(Stream& rng, std::span<double> w, double r) const
    {
        const int d = g_.coord_dim();
        double nrm;
        do {
            for (int k = 0; k < d; ++k)
                w[k] = 2.0 * rng.uniform() - 1.0;
            nrm = g_.norm(w);
        } while (!(nrm < 1.0 && nrm > 0.0));
        g_.dilate(r / nrm, w);
    }

    // kappa / (|B| s^Q) (1 + (r/s)^Q)^{-(1+kappa)}
    double broad_density(double r) const
    {
        const double y = std::pow(r / s_, Q_);
        return kKappa / (g_.unit_ball_volume() * std::pow(s_, Q_)) * std::pow(1.0 + y, -(1.0 + kKappa));
    }

    double sample_broad(Stream& rng, std::span<double> w) const
    {
        const double y = std::pow(rng.uniform_open0(), -1.0 / kKappa) - 1.0;
        const double r = s_ * std::pow(y, 1.0 / Q_);
        direction(rng, w, r);
        return r;
    }

    // density (Q - lambda) r^{-lambda} / (r0^{Q-lambda} Q |B|) on r < r0
    double near_density(double r) const
    {
        if (r >= r0_)
            return 0.0;
        return std::pow(r, -lambda_) / near_weight_;
    }

    /// Draws w from the 1/2-1/2 mixture; returns |w|^{-lambda} / p_mix(w).
    double sample_offset(Stream& rng, std::span<double> w) const
    {
        double r;
        if (rng.uniform() < 0.5) {
            r = r0_ * std::pow(rng.uniform_open0(), 1.0 / (Q_ - lambda_));
            direction(rng, w, r);
        } else {
            r = sample_broad(rng, w);
        }
        if (!(r > 0.0))
            return 0.0;
        const double p = 0.5 * near_density(r) + 0.5 * broad_density(r);
        return std::pow(r, -lambda_) / p;
    }

private:
    static constexpr double kKappa = 0.5;
    const Geometry& g_;
    double lambda_, s_, r0_;
    int Q_;
    double near_weight_;
};

template <class Draw>
McEstimate run_streams(const McOptions& opts, Draw draw)
{
    const int workers = resolve_workers(opts.workers);
    std::vector<Moments> parts(workers);
    parallel_for(static_cast<std::size_t>(workers), workers, [&](int, std::size_t lo, std::size_t hi) {
        for (std::size_t w = lo; w < hi; ++w) {
            Stream rng(opts.seed, static_cast<int>(w));
            const std::size_t begin = opts.samples * w / workers;
            const std::size_t end = opts.samples * (w + 1) / workers;
            Moments m;
            draw(rng, end - begin, m);
            parts[w] = m;
        }
    });
    Moments total;
    for (const auto& m : parts)
        total.merge(m);
    return total.estimate();
}

}  // namespace

McEstimate mc_bilinear_energy(const PointFunction& f, const PointFunction& g, double lambda,
                              const Geometry& geometry, const McOptions& opts)
{
    require_lambda(lambda, geometry);
    require_options(opts);
    const Sampler sampler(geometry, lambda, opts);
    const int d = geometry.coord_dim();
    return run_streams(opts, [&](Stream& rng, std::size_t count, Moments& m) {
        std::vector<double> u(d), w(d), v(d);
        for (std::size_t i = 0; i < count; ++i) {
            const double ru = sampler.sample_broad(rng, u);
            const double fu = f(u);
            const double kw = sampler.sample_offset(rng, w);
            double x = 0.0;
            if (fu != 0.0 && kw != 0.0) {
                geometry.compose(u, w, v);
                x = fu * g(v) * kw / sampler.broad_density(ru);
            }
            m.add(x);
        }
    });
}

McEstimate mc_fractional_integral(const PointFunction& f, double lambda, std::span<const double> u,
                                  const Geometry& geometry, const McOptions& opts)
{
    require_lambda(lambda, geometry);
    require_options(opts);
    if (static_cast<int>(u.size()) != geometry.coord_dim())
        throw InvalidArgument("dimension mismatch");
    const Sampler sampler(geometry, lambda, opts);
    const int d = geometry.coord_dim();
    return run_streams(opts, [&](Stream& rng, std::size_t count, Moments& m) {
        std::vector<double> w(d), v(d);
        for (std::size_t i = 0; i < count; ++i) {
            const double kw = sampler.sample_offset(rng, w);
            double x = 0.0;
            if (kw != 0.0) {
                geometry.compose(u, w, v);
                x = f(v) * kw;
            }
            m.add(x);
        }
    });
}

McEstimate mc_lp_norm_power(const PointFunction& f, double p, const Geometry& geometry,
                            const McOptions& opts)
{
    if (!(p > 0.0))
        throw InvalidArgument("p must be positive");
    require_options(opts);
    // lambda only shapes the unused near component here
    const Sampler sampler(geometry, 0.5 * geometry.Q(), opts);
    const int d = geometry.coord_dim();
    return run_streams(opts, [&](Stream& rng, std::size_t count, Moments& m) {
        std::vector<double> u(d);
        for (std::size_t i = 0; i < count; ++i) {
            const double r = sampler.sample_broad(rng, u);
            const double fu = std::abs(f(u));
            m.add(fu == 0.0 ? 0.0 : std::pow(fu, p) / sampler.broad_density(r));
        }
    });
}

McEstimate mc_ball_volume(const Geometry& geometry, const McOptions& opts)
{
    require_options(opts);
    const int d = geometry.coord_dim();
    const double box = std::ldexp(1.0, d);
    return run_streams(opts, [&](Stream& rng, std::size_t count, Moments& m) {
        std::vector<double> w(d);
        for (std::size_t i = 0; i < count; ++i) {
            for (int k = 0; k < d; ++k)
                w[k] = 2.0 * rng.uniform() - 1.0;
            m.add(geometry.norm(w) < 1.0 ? box : 0.0);
        }
    });
}

}  // namespace hls
