#include "hls/cc_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace hls {

namespace {

// Relative slack so that points at distance exactly R count as inside.
constexpr double kBoundarySlack = 1e-12;

// |u^{-1} v| without allocating.
double fast_distance(std::span<const double> u, std::span<const double> v, int n)
{
    double z2 = 0.0;
    for (int k = 0; k < 2 * n; ++k) {
        const double d = v[k] - u[k];
        z2 += d * d;
    }
    const double t = v[2 * n] - u[2 * n] - symplectic_twist(u, v, n);
    return std::sqrt(std::hypot(z2, t));
}

double sum_masses(const std::vector<Atom>& atoms)
{
    double s = 0.0;
    for (const Atom& a : atoms)
        s += a.mass;
    return s;
}

double sum_density(const CylGridFunction& f)
{
    double s = 0.0;
    for (int j = 0; j < f.grid().n_rho(); ++j)
        for (int b = 0; b < f.grid().n_t(); ++b)
            s += f.weight(j, b) * f(j, b);
    return s;
}

bool on_axis(const GroupPoint& u)
{
    return u.z_norm_sq() == 0.0;
}

// Node (j, b) lies in the closed ball of radius R about (0, a).
bool node_inside(const CylGrid& g, int j, int b, double a, double R)
{
    const double r2 = g.rho()[j] * g.rho()[j];
    const double dt = g.t()[b] - a;
    const double R4 = R * R * R * R;
    return r2 * r2 + dt * dt <= R4 * (1.0 + kBoundarySlack);
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(int n, std::vector<Atom> atoms) : n_(n)
{
    if (n < 1)
        throw InvalidArgument("measure: n must be positive");
    for (const Atom& a : atoms) {
        if (a.point.n() != n)
            throw InvalidArgument("measure: atom dimension mismatch");
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass))
            throw InvalidArgument("measure: masses must be finite and nonnegative");
    }
    total_ = sum_masses(atoms);
    data_ = std::move(atoms);
}

DiscreteMeasure::DiscreteMeasure(CylGridFunction density) : n_(density.n())
{
    if (!density.nonnegative())
        throw InvalidArgument("measure: density must be nonnegative");
    total_ = sum_density(density);
    data_ = std::move(density);
}

DiscreteMeasure DiscreteMeasure::normalized() const
{
    if (!(total_ > 0.0))
        throw InvalidArgument("measure: cannot normalize zero mass");
    if (is_atomic()) {
        std::vector<Atom> out = atoms();
        for (Atom& a : out)
            a.mass /= total_;
        return DiscreteMeasure(n_, std::move(out));
    }
    CylGridFunction f = density();
    f *= 1.0 / total_;
    return DiscreteMeasure(std::move(f));
}

std::vector<GroupPoint> DiscreteMeasure::default_probes() const
{
    std::vector<GroupPoint> out;
    if (is_atomic()) {
        for (const Atom& a : atoms())
            out.push_back(a.point);
    } else {
        for (double t : density().grid().t()) {
            GroupPoint p(n_);
            p.t() = t;
            out.push_back(std::move(p));
        }
    }
    return out;
}

double DiscreteMeasure::ball_mass(const GroupPoint& center, double R) const
{
    if (!(R > 0.0))
        throw InvalidArgument("R must be positive");
    if (center.n() != n_)
        throw InvalidArgument("dimension mismatch");
    if (is_atomic()) {
        double s = 0.0;
        for (const Atom& a : atoms())
            if (fast_distance(center.coords(), a.point.coords(), n_) <= R * (1.0 + kBoundarySlack))
                s += a.mass;
        return s;
    }
    if (!on_axis(center))
        throw InvalidArgument("density measures only support centers on the axis");
    const CylGridFunction& f = density();
    const CylGrid& g = f.grid();
    double s = 0.0;
    for (int j = 0; j < g.n_rho(); ++j)
        for (int b = 0; b < g.n_t(); ++b)
            if (node_inside(g, j, b, center.t(), R))
                s += f.weight(j, b) * f(j, b);
    return s;
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const GroupPoint& w)
{
    if (!mu.is_atomic())
        throw InvalidArgument("translate: only atomic measures can be translated");
    std::vector<Atom> out;
    out.reserve(mu.atoms().size());
    for (const Atom& a : mu.atoms())
        out.push_back({multiply(w, a.point), a.mass});
    return DiscreteMeasure(mu.n(), std::move(out));
}

ConcentrationProbe levy_concentration(const DiscreteMeasure& mu, double R,
                                      const std::vector<GroupPoint>& probes)
{
    if (probes.empty())
        throw InvalidArgument("levy_concentration: empty probe set");
    ConcentrationProbe best{-1.0, probes.front()};
    for (const GroupPoint& c : probes) {
        const double m = mu.ball_mass(c, R);
        if (m > best.mass)
            best = {m, c};
    }
    return best;
}

ConcentrationProbe levy_concentration(const DiscreteMeasure& mu, double R)
{
    return levy_concentration(mu, R, mu.default_probes());
}

const char* to_string(TrichotomyKind kind)
{
    switch (kind) {
    case TrichotomyKind::vanishing:
        return "Vanishing";
    case TrichotomyKind::compactness:
        return "Compactness";
    case TrichotomyKind::dichotomy:
        return "Dichotomy";
    }
    return "?";
}

TrichotomyVerdict classify_trichotomy(const std::vector<DiscreteMeasure>& seq, double eps,
                                      const std::vector<double>& R_grid)
{
    if (seq.size() < 3)
        throw InvalidArgument("classify_trichotomy: need at least 3 measures");
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidArgument("classify_trichotomy: eps must lie in (0, 1/2)");
    if (R_grid.empty() || !(R_grid.front() > 0.0) || !std::is_sorted(R_grid.begin(), R_grid.end()) ||
        std::adjacent_find(R_grid.begin(), R_grid.end()) != R_grid.end())
        throw InvalidArgument("classify_trichotomy: R grid must be positive and increasing");
    for (const DiscreteMeasure& mu : seq)
        if (std::abs(mu.total_mass() - 1.0) > 1e-9)
            throw InvalidArgument("classify_trichotomy: measures must be normalized");

    const std::size_t L = seq.size();
    const std::size_t tail = std::max<std::size_t>(1, L / 3);
    const std::size_t first = L - tail;

    TrichotomyVerdict v;
    v.R_grid = R_grid;
    v.profile.assign(R_grid.size(), 0.0);
    for (std::size_t j = first; j < L; ++j) {
        const auto probes = seq[j].default_probes();
        for (std::size_t r = 0; r < R_grid.size(); ++r)
            v.profile[r] += levy_concentration(seq[j], R_grid[r], probes).mass / tail;
    }
    v.tail_mass = v.profile.back();

    if (v.tail_mass < eps) {
        v.kind = TrichotomyKind::vanishing;
    } else if (v.tail_mass > 1.0 - eps) {
        v.kind = TrichotomyKind::compactness;
        for (const DiscreteMeasure& mu : seq)
            v.centers.push_back(levy_concentration(mu, R_grid.front()).center);
    } else {
        v.kind = TrichotomyKind::dichotomy;
        v.k = std::min(v.tail_mass, 1.0 - v.tail_mass);
        // track the probe whose ball at the largest radius holds mass closest to k
        const DiscreteMeasure& last = seq.back();
        const double R = R_grid.back();
        const auto probes = last.default_probes();
        double best_gap = std::numeric_limits<double>::infinity();
        for (const GroupPoint& c : probes) {
            const double gap = std::abs(last.ball_mass(c, R) - v.k);
            if (gap < best_gap) {
                best_gap = gap;
                v.tracked_center = c;
            }
        }
        v.split = dichotomy_split(last, *v.tracked_center, R);
    }
    return v;
}

std::pair<DiscreteMeasure, DiscreteMeasure> dichotomy_split(const DiscreteMeasure& mu,
                                                            const GroupPoint& center, double R)
{
    if (!(R > 0.0))
        throw InvalidArgument("R must be positive");
    if (center.n() != mu.n())
        throw InvalidArgument("dimension mismatch");
    if (mu.is_atomic()) {
        std::vector<Atom> inside, outside;
        for (const Atom& a : mu.atoms()) {
            const bool in = fast_distance(center.coords(), a.point.coords(), mu.n()) <= R * (1.0 + kBoundarySlack);
            (in ? inside : outside).push_back(a);
        }
        return {DiscreteMeasure(mu.n(), std::move(inside)), DiscreteMeasure(mu.n(), std::move(outside))};
    }
    if (!on_axis(center))
        throw InvalidArgument("density measures only support centers on the axis");
    CylGridFunction inside = mu.density(), outside = mu.density();
    const CylGrid& g = inside.grid();
    for (int j = 0; j < g.n_rho(); ++j)
        for (int b = 0; b < g.n_t(); ++b)
            (node_inside(g, j, b, center.t(), R) ? outside : inside)(j, b) = 0.0;
    return {DiscreteMeasure(std::move(inside)), DiscreteMeasure(std::move(outside))};
}

double brezis_lieb_defect(const CylGridFunction& f_j, const CylGridFunction& f, double p)
{
    require_same_grid(f_j, f);
    if (!(p > 0.0))
        throw InvalidArgument("p must be positive");
    double s = 0.0;
    for (int j = 0; j < f.grid().n_rho(); ++j)
        for (int b = 0; b < f.grid().n_t(); ++b) {
            const double a = f_j(j, b), c = f(j, b);
            const double term = std::pow(std::abs(a), p) - std::pow(std::abs(c - a), p) - std::pow(std::abs(c), p);
            s += f.weight(j, b) * std::abs(term);
        }
    return s;
}

double strict_subadditivity_gap(double k, double p, double q)
{
    if (!(k >= 0.0 && k <= 1.0))
        throw InvalidArgument("k must lie in [0, 1]");
    if (!(p > 0.0) || !(q > p))
        throw InvalidArgument("need q > p > 0");
    const double e = q / p;
    return 1.0 - std::pow(k, e) - std::pow(1.0 - k, e);
}

namespace generators {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t family)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(family)};
    return std::mt19937_64(seq);
}

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Lattice offsets {-m..m}^3 with spacing (hz, hz, ht) and Gaussian masses.
std::vector<Atom> lattice_bump(int m, double hz, double ht, double mass)
{
    std::vector<Atom> atoms;
    double total = 0.0;
    for (int i = -m; i <= m; ++i)
        for (int k = -m; k <= m; ++k)
            for (int l = -m; l <= m; ++l) {
                const double x = i * hz, y = k * hz, t = l * ht;
                const double w = std::exp(-(i * i + k * k + l * l) / (0.5 * m * m + 0.5));
                atoms.push_back({GroupPoint::h1(x, y, t), w});
                total += w;
            }
    for (Atom& a : atoms)
        a.mass *= mass / total;
    return atoms;
}

void require_length(int length)
{
    if (length < 3)
        throw InvalidArgument("generator: sequence length must be at least 3");
}

}  // namespace

std::vector<DiscreteMeasure> spread(int length, std::uint64_t seed)
{
    require_length(length);
    auto rng = make_engine(seed, 1);
    // cluster of 7^3 atoms, each cell of the dilated lattice keeps its mass
    std::vector<Atom> base = lattice_bump(3, 1.0, 1.0, 1.0);
    for (Atom& a : base)
        a.mass *= uniform(rng, 0.9, 1.1);
    const GroupPoint offset = GroupPoint::h1(uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5));
    std::vector<DiscreteMeasure> seq;
    for (int j = 1; j <= length; ++j) {
        std::vector<Atom> atoms;
        for (const Atom& a : base)
            atoms.push_back({multiply(offset, dilate(j, a.point)), a.mass});
        seq.push_back(DiscreteMeasure(1, std::move(atoms)).normalized());
    }
    return seq;
}

std::vector<DiscreteMeasure> translate(int length, std::uint64_t seed, std::vector<GroupPoint>* centers_out)
{
    require_length(length);
    auto rng = make_engine(seed, 2);
    const DiscreteMeasure bump(1, lattice_bump(1, 1.0, 1.0, 1.0));
    std::vector<DiscreteMeasure> seq;
    if (centers_out)
        centers_out->clear();
    for (int j = 1; j <= length; ++j) {
        const GroupPoint u = GroupPoint::h1(uniform(rng, -20, 20), uniform(rng, -20, 20), uniform(rng, -20, 20));
        seq.push_back(hls::translate(bump, u).normalized());
        if (centers_out)
            centers_out->push_back(u);
    }
    return seq;
}

std::vector<DiscreteMeasure> split(int length, std::uint64_t seed, double k)
{
    require_length(length);
    if (!(k > 0.0 && k < 1.0))
        throw InvalidArgument("generator: k must lie in (0, 1)");
    auto rng = make_engine(seed, 3);
    const GroupPoint base = GroupPoint::h1(uniform(rng, -5, 5), uniform(rng, -5, 5), uniform(rng, -5, 5));
    const double angle = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    std::vector<DiscreteMeasure> seq;
    for (int j = 1; j <= length; ++j) {
        const double sep = 3.0 * j;
        const GroupPoint other = multiply(base, GroupPoint::h1(sep * std::cos(angle), sep * std::sin(angle), 0.0));
        std::vector<Atom> atoms;
        for (const Atom& a : lattice_bump(1, 0.2, 0.04, k))
            atoms.push_back({multiply(base, a.point), a.mass});
        for (const Atom& a : lattice_bump(1, 0.2, 0.04, 1.0 - k))
            atoms.push_back({multiply(other, a.point), a.mass});
        seq.push_back(DiscreteMeasure(1, std::move(atoms)).normalized());
    }
    return seq;
}

std::vector<CylGridFunction> escaping_bump(const GridPtr& grid, const std::vector<double>& shifts)
{
    std::vector<CylGridFunction> out;
    out.push_back(CylGridFunction::sample(grid, [](double r, double t) { return std::exp(-r * r - t * t); }));
    for (double D : shifts)
        out.push_back(CylGridFunction::sample(grid, [D](double r, double t) {
            return std::exp(-r * r - t * t) + std::exp(-r * r - (t - D) * (t - D));
        }));
    return out;
}

}  // namespace generators

}  // namespace hls
