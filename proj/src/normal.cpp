#include "trialbandit/normal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trialbandit {

double normal_pdf(double x) noexcept {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

GaussHermiteRule make_gauss_hermite_rule(std::size_t n) {
    if (n == 0) throw std::invalid_argument("Gauss-Hermite rule needs at least one node");

    // Physicists' nodes x (weight exp(-x^2)) first, mapped to N(0, 1) at the end.
    std::vector<double> x(n), w(n);
    const double pim4 = std::pow(std::numbers::pi, -0.25);
    const double dn = static_cast<double>(n);
    const std::size_t half = (n + 1) / 2;
    double z = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * dn + 1.0) - 1.85575 * std::pow(2.0 * dn + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(dn, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[i - 2];
        }

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * dn) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
    }

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        rule.nodes[k] = std::numbers::sqrt2 * x[n - 1 - k];
        rule.weights[k] = w[n - 1 - k] / std::sqrt(std::numbers::pi);
    }
    return rule;
}

const GaussHermiteRule& gauss_hermite_128() {
    static const GaussHermiteRule rule = make_gauss_hermite_rule(128);
    return rule;
}

}  // namespace trialbandit
