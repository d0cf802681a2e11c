#include "hls/gauss.hpp"

#include "hls/heisenberg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace hls {

namespace {

constexpr int kMaxOrder = 64;

GaussRule compute_rule(int order)
{
    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (order == 1)
                p0 = 1.0, p1 = x;
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[order - 1 - i] = x;
        rule.weights[i] = rule.weights[order - 1 - i] = w;
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order)
{
    if (order < 1 || order > kMaxOrder)
        throw InvalidArgument("gauss_legendre: order out of range");
    static std::array<GaussRule, kMaxOrder + 1> cache;
    static std::array<std::once_flag, kMaxOrder + 1> flags;
    std::call_once(flags[order], [order] {
        if (order == 1)
            cache[1] = GaussRule{{0.0}, {2.0}};
        else
            cache[order] = compute_rule(order);
    });
    return cache[order];
}

void Rule1d::append_gauss(double a, double b, int order)
{
    const GaussRule& g = gauss_legendre(order);
    const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
    for (int i = 0; i < order; ++i) {
        x.push_back(mid + half * g.nodes[i]);
        w.push_back(half * g.weights[i]);
    }
}

Rule1d graded_rule(double a, double b, bool toward_a, double min_width, double ratio, int order)
{
    Rule1d rule;
    const double length = std::abs(b - a);
    const double sign = b >= a ? 1.0 : -1.0;
    if (!(min_width > 0.0) || min_width >= length / ratio) {
        rule.append_gauss(a, b, order);
        return rule;
    }
    // offsets from the graded end: 0, m, m r, m r^2, ..., length
    std::vector<double> cuts{0.0};
    for (double c = min_width; c < length / ratio * 1.0000001; c *= ratio)
        cuts.push_back(c);
    cuts.push_back(length);
    const double origin = toward_a ? a : b;
    const double dir = toward_a ? sign : -sign;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double p = origin + dir * cuts[k], q = origin + dir * cuts[k + 1];
        rule.append_gauss(std::min(p, q), std::max(p, q), order);
    }
    return rule;
}

}  // namespace hls
