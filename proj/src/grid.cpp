#include "hls/grid.hpp"

#include "hls/constants.hpp"
#include "hls/gauss.hpp"
#include "hls/heisenberg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace hls {

GridSpec GridSpec::refined() const
{
    GridSpec out = *this;
    out.n_rho = 2 * n_rho - 1;
    out.n_t = 2 * n_t - 1;
    return out;
}

namespace {

std::vector<double> geometric_nodes(double lo, double hi, int count)
{
    std::vector<double> out(count);
    const double log_lo = std::log(lo), log_hi = std::log(hi);
    for (int j = 0; j < count; ++j)
        out[j] = std::exp(log_lo + (log_hi - log_lo) * j / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> uniform_nodes(double lo, double hi, int count)
{
    std::vector<double> out(count);
    for (int b = 0; b < count; ++b)
        out[b] = lo + (hi - lo) * b / (count - 1);
    return out;
}

void validate_spec(const GridSpec& s)
{
    if (s.n < 1)
        throw InvalidArgument("grid: n must be positive");
    if (!(s.rho_min > 0.0) || !(s.rho_max > s.rho_min) || !std::isfinite(s.rho_max))
        throw InvalidArgument("grid: need 0 < rho_min < rho_max");
    if (!(s.t_max > 0.0) || !std::isfinite(s.t_max))
        throw InvalidArgument("grid: t_max must be positive");
    if (s.n_rho < 4 || s.n_t < 4)
        throw InvalidArgument("grid: need at least 4 nodes per axis");
}

}  // namespace

CylGrid::CylGrid(const GridSpec& spec) : n_(spec.n)
{
    validate_spec(spec);
    rho_ = geometric_nodes(spec.rho_min, spec.rho_max, spec.n_rho);
    t_ = uniform_nodes(-spec.t_max, spec.t_max, spec.n_t);
    build();
}

CylGrid::CylGrid(int n, std::vector<double> rho, std::vector<double> t)
    : n_(n), rho_(std::move(rho)), t_(std::move(t))
{
    if (n < 1)
        throw InvalidArgument("grid: n must be positive");
    if (rho_.size() < 4 || t_.size() < 4)
        throw InvalidArgument("grid: need at least 4 nodes per axis");
    for (std::size_t j = 0; j < rho_.size(); ++j)
        if (!(rho_[j] > 0.0) || !std::isfinite(rho_[j]) || (j > 0 && !(rho_[j] > rho_[j - 1])))
            throw InvalidArgument("grid: rho nodes must be positive and strictly increasing");
    const double h = (t_.back() - t_.front()) / (t_.size() - 1);
    for (std::size_t b = 1; b < t_.size(); ++b)
        if (std::abs((t_[b] - t_[b - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h)) || !(h > 0.0))
            throw InvalidArgument("grid: t nodes must be uniformly spaced and increasing");
    build();
}

void CylGrid::build()
{
    const int J = n_rho(), B = n_t();
    log_rho_.resize(J);
    for (int j = 0; j < J; ++j)
        log_rho_[j] = std::log(rho_[j]);
    t_step_ = (t_.back() - t_.front()) / (B - 1);

    // omega_{2n-1} rho^{2n-1} d rho = omega_{2n-1} rho^{2n} d(log rho)
    const double omega = 2.0 * std::exp(n_ * std::log(std::numbers::pi) - log_gamma(n_));
    rho_w_.assign(J, 0.0);
    for (int j = 0; j < J; ++j) {
        const double lo = j > 0 ? log_rho_[j - 1] : log_rho_[j];
        const double hi = j + 1 < J ? log_rho_[j + 1] : log_rho_[j];
        rho_w_[j] = omega * std::pow(rho_[j], 2 * n_) * 0.5 * (hi - lo);
    }
    t_w_.assign(B, t_step_);
    t_w_.front() = t_w_.back() = 0.5 * t_step_;

    rho_edges_.resize(J + 1);
    rho_edges_.front() = rho_.front();
    rho_edges_.back() = rho_.back();
    for (int j = 1; j < J; ++j)
        rho_edges_[j] = std::sqrt(rho_[j - 1] * rho_[j]);
    t_edges_.resize(B + 1);
    t_edges_.front() = t_.front();
    t_edges_.back() = t_.back();
    for (int b = 1; b < B; ++b)
        t_edges_[b] = 0.5 * (t_[b - 1] + t_[b]);
}

bool CylGrid::same_as(const CylGrid& other) const
{
    return this == &other || (n_ == other.n_ && rho_ == other.rho_ && t_ == other.t_);
}

GridPtr make_grid(const GridSpec& spec) { return std::make_shared<const CylGrid>(spec); }

CylGridFunction::CylGridFunction(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_ ? grid_->size() : 0, 0.0)
{
    if (!grid_)
        throw InvalidArgument("CylGridFunction: null grid");
}

CylGridFunction::CylGridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values))
{
    if (!grid_)
        throw InvalidArgument("CylGridFunction: null grid");
    if (values_.size() != grid_->size())
        throw InvalidArgument("CylGridFunction: value count does not match grid");
    for (double v : values_)
        if (!std::isfinite(v))
            throw InvalidArgument("CylGridFunction: non-finite value");
}

CylGridFunction CylGridFunction::sample(GridPtr grid,
                                        const std::function<double(double, double)>& f)
{
    CylGridFunction out(grid);
    for (int j = 0; j < grid->n_rho(); ++j)
        for (int b = 0; b < grid->n_t(); ++b)
            out(j, b) = f(grid->rho()[j], grid->t()[b]);
    for (double v : out.values_)
        if (!std::isfinite(v))
            throw InvalidArgument("CylGridFunction: non-finite sample");
    return out;
}

CylGridFunction& CylGridFunction::operator*=(double c)
{
    for (double& v : values_)
        v *= c;
    return *this;
}

bool CylGridFunction::is_zero() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool CylGridFunction::nonnegative() const
{
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

namespace {

// Calls visit(j, b, frac) for every cell meeting the closed ball of radius R
// centered at (0, center_t); frac is the covered share of the cell measure.
template <class Visit>
void for_each_covered_cell(const CylGrid& g, double R, double center_t, Visit&& visit)
{
    if (!(R > 0.0))
        throw InvalidArgument("ball_mass: R must be positive");
    const auto re = g.rho_edges();
    const auto te = g.t_edges();
    const double R2 = R * R, R4 = R2 * R2;
    const GaussRule& gauss = gauss_legendre(8);
    const int power = 2 * g.n() - 1;
    for (int j = 0; j < g.n_rho(); ++j) {
        const double r_lo = re[j], r_hi = re[j + 1];
        if (r_lo >= R)
            break;
        // radial nodes of the cell, weighted by the measure rho^{2n-1}
        std::array<double, 8> half{}, wr{};
        double wsum = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double r = 0.5 * (r_lo + r_hi) + 0.5 * (r_hi - r_lo) * gauss.nodes[k];
            wr[k] = gauss.weights[k] * std::pow(r, power);
            wsum += wr[k];
            const double r4 = r * r * r * r;
            half[k] = r4 < R4 ? std::sqrt(R4 - r4) : -1.0;
        }
        const double full_half = r_hi < R ? std::sqrt(R4 - std::pow(r_hi, 4)) : -1.0;
        for (int b = 0; b < g.n_t(); ++b) {
            const double t_lo = te[b] - center_t, t_hi = te[b + 1] - center_t;
            if (t_lo >= R2 || t_hi <= -R2)
                continue;
            double frac;
            if (full_half >= 0.0 && t_lo >= -full_half && t_hi <= full_half) {
                frac = 1.0;
            } else {
                double acc = 0.0;
                for (int k = 0; k < 8; ++k)
                    if (half[k] > 0.0)
                        acc += wr[k] * std::max(0.0, std::min(t_hi, half[k]) - std::max(t_lo, -half[k]));
                frac = acc / (wsum * (t_hi - t_lo));
            }
            if (frac > 0.0)
                visit(j, b, frac);
        }
    }
}

}  // namespace

double ball_mass(const CylGridFunction& density, double R, double center_t)
{
    double total = 0.0;
    for_each_covered_cell(density.grid(), R, center_t, [&](int j, int b, double frac) {
        total += frac * density.weight(j, b) * density(j, b);
    });
    return total;
}

CylGridFunction ball_indicator(GridPtr grid, double R, double center_t)
{
    CylGridFunction out(grid);
    for_each_covered_cell(*grid, R, center_t, [&](int j, int b, double frac) { out(j, b) = frac; });
    return out;
}

void require_same_grid(const CylGridFunction& f, const CylGridFunction& g)
{
    if (!f.grid().same_as(g.grid()))
        throw InvalidArgument("grid mismatch");
}

}  // namespace hls
