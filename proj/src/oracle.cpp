#include "trialbandit/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "trialbandit/normal.hpp"

namespace trialbandit {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Hermite is exact to rounding while every Phi factor varies no faster
// than about twice the density's scale; steeper factors are near-steps.
constexpr double kMaxHermiteSlope = 2.0;
// Phi(+-12) differs from 0/1 by < 2e-33.
constexpr double kTailCutoff = 12.0;
constexpr int kStepPanels = 12;

void require_positive_variances(const DatasetSpec& spec) {
    for (double s2 : spec.sigma2)
        if (!(s2 > 0.0)) throw std::invalid_argument(spec.name + ": variances must be positive");
}

RealGrid pics_scale(const DatasetSpec& spec) {
    const RealGrid sigma = true_sigma(spec);
    RealGrid v(spec.subpopulations(), spec.treatments());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const PicsWeightRow row = pics_weight_row(spec.mu.row(i), sigma.row(i));
        std::copy(row.v.begin(), row.v.end(), v.row(i).begin());
    }
    return v;
}

// Scores s_ij * S_i. Floored gaps can drive entries to +inf; those entries
// then share the mass uniformly.
RealGrid minimax_scores(const RealGrid& scale) {
    RealGrid scores(scale.rows(), scale.cols());
    bool overflow = false;
    for (std::size_t i = 0; i < scale.rows(); ++i) {
        double row_sum = 0.0;
        for (double s : scale.row(i)) row_sum += s;
        for (std::size_t j = 0; j < scale.cols(); ++j) {
            scores(i, j) = scale(i, j) * row_sum;
            if (!std::isfinite(scores(i, j))) overflow = true;
        }
    }
    if (overflow)
        for (double& s : scores) s = std::isfinite(s) ? 0.0 : 1.0;
    return scores;
}

}  // namespace

PicsWeightRow pics_weight_row(std::span<const double> mu_row, std::span<const double> sigma_row) {
    if (mu_row.size() != sigma_row.size() || mu_row.empty())
        throw std::invalid_argument("pics_weight_row: mismatched row lengths");
    PicsWeightRow out;
    out.j_star = argmax_lowest(mu_row);
    out.v.resize(mu_row.size());
    const double best = mu_row[out.j_star];
    double inv_gap2_sum = 0.0;
    for (std::size_t j = 0; j < mu_row.size(); ++j) {
        if (j == out.j_star) continue;
        const double gap = std::max(std::abs(best - mu_row[j]), kGapFloor);
        out.v[j] = sigma_row[j] / gap;
        inv_gap2_sum += 1.0 / (gap * gap);
    }
    out.v[out.j_star] = sigma_row[out.j_star] * std::sqrt(inv_gap2_sum);
    return out;
}

AllocationWeights minimax_fractions(const RealGrid& scale) {
    return AllocationWeights::normalized(minimax_scores(scale));
}

RealGrid minimax_allocation(const RealGrid& scale, double budget) {
    if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
    RealGrid alloc = minimax_fractions(scale).w;
    for (double& n : alloc) n *= budget;
    return alloc;
}

RealGrid true_sigma(const DatasetSpec& spec) {
    RealGrid sigma = spec.sigma2;
    for (double& s : sigma) s = std::sqrt(s);
    return sigma;
}

RealGrid variance_oracle_allocation(const DatasetSpec& spec, double budget) {
    require_positive_variances(spec);
    return minimax_allocation(true_sigma(spec), budget);
}

double variance_oracle_loss(const DatasetSpec& spec, double budget) {
    require_positive_variances(spec);
    if (!(budget > 0.0)) throw std::invalid_argument("budget must be positive");
    const RealGrid sigma = true_sigma(spec);
    double numerator = 0.0;
    for (std::size_t i = 0; i < sigma.rows(); ++i) {
        double row_sum = 0.0;
        for (double s : sigma.row(i)) row_sum += s;
        numerator += row_sum * row_sum;
    }
    return numerator / budget;
}

RealGrid pics_surrogate_allocation(const DatasetSpec& spec, double budget) {
    require_positive_variances(spec);
    return minimax_allocation(pics_scale(spec), budget);
}

double exact_pics_loss(std::span<const double> mu_row, std::span<const double> sigma_row,
                       std::span<const double> n_row) {
    const std::size_t K = mu_row.size();
    if (sigma_row.size() != K || n_row.size() != K)
        throw std::invalid_argument("exact_pics_loss: mismatched row lengths");
    for (double n : n_row)
        if (!(n > 0.0)) return kInf;

    const std::size_t best = argmax_lowest(mu_row);
    const double best_se = sigma_row[best] / std::sqrt(n_row[best]);

    // P(correct) = E_z[ prod_j Phi(slope_j * z + shift_j) ].
    std::vector<double> slope, shift;
    slope.reserve(K);
    shift.reserve(K);
    for (std::size_t j = 0; j < K; ++j) {
        if (j == best) continue;
        const double se = sigma_row[j] / std::sqrt(n_row[j]);
        slope.push_back(best_se / se);
        shift.push_back((mu_row[best] - mu_row[j]) / se);
    }
    auto integrand = [&](double z) {
        double prod = 1.0;
        for (std::size_t m = 0; m < slope.size(); ++m) prod *= normal_cdf(slope[m] * z + shift[m]);
        return prod;
    };

    double correct = 0.0;
    const double steepest = *std::max_element(slope.begin(), slope.end());
    if (steepest <= kMaxHermiteSlope) {
        const GaussHermiteRule& rule = gauss_hermite_128();
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            correct += rule.weights[k] * integrand(rule.nodes[k]);
    } else {
        // Composite Gauss-Legendre: unit panels over the bulk of phi, plus panels
        // of width 1/slope around each near-step factor's transition point.
        std::vector<double> breaks;
        for (double z = -kTailCutoff; z <= kTailCutoff; z += 0.5) breaks.push_back(z);
        for (std::size_t m = 0; m < slope.size(); ++m) {
            if (slope[m] <= kMaxHermiteSlope) continue;
            const double centre = -shift[m] / slope[m];
            for (int k = -kStepPanels; k <= kStepPanels; ++k) {
                const double z = centre + k / slope[m];
                if (std::abs(z) < kTailCutoff) breaks.push_back(z);
            }
        }
        std::sort(breaks.begin(), breaks.end());
        auto weighted = [&](double z) { return integrand(z) * normal_pdf(z); };
        using Legendre = boost::math::quadrature::gauss<double, 20>;
        for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
            if (breaks[b + 1] <= breaks[b]) continue;
            correct += Legendre::integrate(weighted, breaks[b], breaks[b + 1]);
        }
    }
    return std::clamp(1.0 - correct, 0.0, 1.0);
}

double worst_case_variance_loss(const DatasetSpec& spec, const RealGrid& counts) {
    if (counts.rows() != spec.subpopulations() || counts.cols() != spec.treatments())
        throw std::invalid_argument("count matrix does not match dataset dimensions");
    double worst = 0.0;
    for (std::size_t i = 0; i < counts.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < counts.cols(); ++j) {
            if (!(counts(i, j) > 0.0)) return kInf;
            row += spec.sigma2(i, j) / counts(i, j);
        }
        worst = std::max(worst, row);
    }
    return worst;
}

double worst_case_pics_loss(const DatasetSpec& spec, const RealGrid& counts) {
    if (counts.rows() != spec.subpopulations() || counts.cols() != spec.treatments())
        throw std::invalid_argument("count matrix does not match dataset dimensions");
    for (double n : counts)
        if (!(n > 0.0)) return kInf;
    const RealGrid sigma = true_sigma(spec);
    double worst = 0.0;
    for (std::size_t i = 0; i < counts.rows(); ++i)
        worst = std::max(worst, exact_pics_loss(spec.mu.row(i), sigma.row(i), counts.row(i)));
    return worst;
}

}  // namespace trialbandit
