#include "twistmeans/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include "twistmeans/special_functions.hpp"

namespace twistmeans::quadrature {

Rule1D gauss_legendre(int m, double a, double b) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    if (m == 1) return {{mid}, {b - a}};
    Rule1D rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (int j = 2; j <= m; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = m * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0;
        double p1 = x;
        for (int j = 2; j <= m; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        dp = m * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = mid - half * x;
        rule.nodes[m - 1 - i] = mid + half * x;
        rule.weights[i] = half * w;
        rule.weights[m - 1 - i] = half * w;
    }
    return rule;
}

Rule1D gauss_laguerre(int m, double alpha) {
    Rule1D rule;
    rule.nodes = special::laguerre_zeros({m, alpha});
    rule.weights.resize(m);
    const double log_scale = std::lgamma(m + alpha + 1.0) - std::lgamma(m + 1.0);
    for (int i = 0; i < m; ++i) {
        const double x = rule.nodes[i];
        const double l = special::laguerre_eval({m + 1, alpha}, x);
        rule.weights[i] = std::exp(log_scale) * x / ((m + 1.0) * (m + 1.0) * l * l);
    }
    return rule;
}

Rule1D composite_gauss_legendre(int panels, int m, double a, double b) {
    Rule1D rule;
    const double width = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const Rule1D panel = gauss_legendre(m, a + p * width, a + (p + 1) * width);
        rule.nodes.insert(rule.nodes.end(), panel.nodes.begin(), panel.nodes.end());
        rule.weights.insert(rule.weights.end(), panel.weights.begin(), panel.weights.end());
    }
    return rule;
}

namespace {

template <class T>
T pairwise(std::span<const T> v) {
    constexpr std::size_t kBlock = 32;
    if (v.size() <= kBlock) {
        T s{};
        for (const T& x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise(v.first(half)) + pairwise(v.subspan(half));
}

}  // namespace

Complex pairwise_sum(std::span<const Complex> values) { return pairwise(values); }
double pairwise_sum(std::span<const double> values) { return pairwise(values); }

}  // namespace twistmeans::quadrature
