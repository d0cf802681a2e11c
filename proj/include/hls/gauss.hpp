#pragma once

#include <vector>

namespace hls {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached rule of the given order (1 <= order <= 64).
const GaussRule& gauss_legendre(int order);

/// Quadrature points mapped onto an interval.
struct Rule1d {
    std::vector<double> x;
    std::vector<double> w;

    void append_gauss(double a, double b, int order);
};

/// Gauss panels on [a, b] graded geometrically toward `a` (if toward_a) or `b`,
/// with innermost panel width `min_width`.
Rule1d graded_rule(double a, double b, bool toward_a, double min_width, double ratio, int order);

}  // namespace hls
