#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace trialbandit {

/// Standard normal density.
double normal_pdf(double x) noexcept;

/// Standard normal CDF via erfc, accurate in both tails.
double normal_cdf(double x) noexcept;

/// Gauss-Hermite rule for the probabilists' weight: sum_k weights[k] * f(nodes[k])
/// approximates E[f(Z)], Z ~ N(0, 1). Weights sum to one.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Builds an n-point rule by Newton iteration on orthonormal Hermite polynomials.
GaussHermiteRule make_gauss_hermite_rule(std::size_t n);

/// Shared 128-point rule.
const GaussHermiteRule& gauss_hermite_128();

}  // namespace trialbandit
