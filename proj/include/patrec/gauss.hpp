#pragma once

// Gauss-Legendre quadrature on [-1,1] and affine images of it.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace patrec {

struct GaussRule {
    std::vector<double> nodes;    // ascending, inside (-1,1)
    std::vector<double> weights;  // sum to 2
    int size() const { return static_cast<int>(nodes.size()); }
};

// Nodes are the roots of the Legendre polynomial P_n, located by Newton
// iteration from the Chebyshev initial guess; exact for degree <= 2n-1.
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
    GaussRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double deriv = 0.0;
        for (int pass = 0; pass < 100; ++pass) {
            double p_cur = 1.0, p_prev = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p_old = p_prev;
                p_prev = p_cur;
                p_cur = ((2 * j + 1) * x * p_prev - j * p_old) / (j + 1);
            }
            deriv = n * (x * p_cur - p_prev) / (x * x - 1.0);
            const double step = p_cur / deriv;
            x -= step;
            if (std::abs(step) < 1e-15) {
                // one clean evaluation of P_n' at the converged root
                p_cur = 1.0;
                p_prev = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p_old = p_prev;
                    p_prev = p_cur;
                    p_cur = ((2 * j + 1) * x * p_prev - j * p_old) / (j + 1);
                }
                deriv = n * (x * p_cur - p_prev) / (x * x - 1.0);
                break;
            }
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

// Maps a reference rule to [a,b]; weights pick up the factor (b-a)/2.
inline void map_rule(const GaussRule& ref, double a, double b,
                     std::vector<double>& nodes, std::vector<double>& weights) {
    const double mid = 0.5 * (a + b);
    const double hal = 0.5 * (b - a);
    nodes.resize(ref.nodes.size());
    weights.resize(ref.nodes.size());
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        nodes[i] = mid + hal * ref.nodes[i];
        weights[i] = hal * ref.weights[i];
    }
}

}  // namespace patrec
