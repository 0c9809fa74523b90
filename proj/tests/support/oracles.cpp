#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trialbandit::testing {
namespace {

template <class F>
double golden_minimum(F&& f, double lo, double hi, int iterations = 200) {
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - ratio * (b - a), x2 = a + ratio * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iterations; ++k) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - ratio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + ratio * (b - a);
            f2 = f(x2);
        }
    }
    return std::min(f1, f2);
}

std::size_t best_index(std::span<const double> mu) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < mu.size(); ++j)
        if (mu[j] > mu[best]) best = j;
    return best;
}

}  // namespace

double min_row_budget(std::span<const double> coeff, double target) {
    if (coeff.size() == 1) return coeff[0] / target;
    // Give arm 0 the share t of the target; the rest of the row gets 1 - t.
    auto cost = [&](double t) {
        return coeff[0] / (target * t) + min_row_budget(coeff.subspan(1), target * (1.0 - t));
    };
    return golden_minimum(cost, 1e-9, 1.0 - 1e-9, coeff.size() > 2 ? 90 : 200);
}

double numeric_minimax_value(const RealGrid& coeff, double budget) {
    auto needed = [&](double r) {
        double total = 0.0;
        for (std::size_t i = 0; i < coeff.rows(); ++i) total += min_row_budget(coeff.row(i), r);
        return total;
    };
    double lo = 1e-12, hi = 1.0;
    while (needed(hi) > budget) hi *= 2.0;
    while (needed(lo) < budget) lo /= 2.0;
    for (int k = 0; k < 200 && hi - lo > 1e-14 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        (needed(mid) > budget ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double minimax_objective(const RealGrid& coeff, const RealGrid& n) {
    double worst = 0.0;
    for (std::size_t i = 0; i < coeff.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < coeff.cols(); ++j) row += coeff(i, j) / n(i, j);
        worst = std::max(worst, row);
    }
    return worst;
}

double surrogate_pics_objective(const RealGrid& mu, const RealGrid& sigma2, const RealGrid& n) {
    double worst = 0.0;
    for (std::size_t i = 0; i < mu.rows(); ++i) {
        const std::size_t b = best_index(mu.row(i));
        double row = 0.0;
        for (std::size_t j = 0; j < mu.cols(); ++j) {
            if (j == b) continue;
            const double gap = mu(i, b) - mu(i, j);
            row += (sigma2(i, j) / n(i, j) + sigma2(i, b) / n(i, b)) / (gap * gap);
        }
        worst = std::max(worst, row);
    }
    return worst;
}

RealGrid surrogate_pics_coefficients(const RealGrid& mu, const RealGrid& sigma2) {
    RealGrid coeff(mu.rows(), mu.cols(), 0.0);
    for (std::size_t i = 0; i < mu.rows(); ++i) {
        const std::size_t b = best_index(mu.row(i));
        for (std::size_t j = 0; j < mu.cols(); ++j) {
            if (j == b) continue;
            const double gap2 = (mu(i, b) - mu(i, j)) * (mu(i, b) - mu(i, j));
            coeff(i, j) += sigma2(i, j) / gap2;
            coeff(i, b) += sigma2(i, b) / gap2;
        }
    }
    return coeff;
}

RealGrid random_allocation(std::size_t C, std::size_t K, double budget, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    RealGrid n(C, K);
    double total = 0.0;
    for (double& x : n) {
        x = expo(rng) + 1e-12;
        total += x;
    }
    for (double& x : n) x *= budget / total;
    return n;
}

MonteCarloEstimate monte_carlo_pics(std::span<const double> mu, std::span<const double> sigma,
                                    std::span<const double> n, std::size_t draws,
                                    std::mt19937_64& rng) {
    const std::size_t b = best_index(mu);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> se(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) se[j] = sigma[j] / std::sqrt(n[j]);
    std::size_t wrong = 0;
    for (std::size_t d = 0; d < draws; ++d) {
        const double best = mu[b] + se[b] * z(rng);
        bool miss = false;
        for (std::size_t j = 0; j < mu.size(); ++j) {
            if (j == b) continue;
            if (mu[j] + se[j] * z(rng) >= best) miss = true;
        }
        if (miss) ++wrong;
    }
    const double p = static_cast<double>(wrong) / static_cast<double>(draws);
    return {p, std::sqrt(std::max(p * (1.0 - p), 1e-300) / static_cast<double>(draws))};
}

double boole_chebyshev_bound(std::span<const double> mu, std::span<const double> sigma,
                             std::span<const double> n) {
    const std::size_t b = best_index(mu);
    double bound = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        if (j == b) continue;
        const double gap = mu[b] - mu[j];
        bound += (sigma[j] * sigma[j] / n[j] + sigma[b] * sigma[b] / n[b]) / (gap * gap);
    }
    return bound;
}

TwoPass two_pass(std::span<const double> xs) {
    TwoPass out;
    if (xs.empty()) return out;
    long double sum = 0.0L;
    for (double x : xs) sum += x;
    out.mean = static_cast<double>(sum / static_cast<long double>(xs.size()));
    if (xs.size() < 2) return out;
    long double ss = 0.0L;
    for (double x : xs) ss += (x - static_cast<long double>(out.mean)) * (x - static_cast<long double>(out.mean));
    out.variance = static_cast<double>(ss / static_cast<long double>(xs.size() - 1));
    return out;
}

}  // namespace trialbandit::testing
