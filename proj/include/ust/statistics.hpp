#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <vector>

#include "ust/common.hpp"

namespace ust {

struct ChiSquareResult {
    double statistic;
    int df;
    double p_value;
};

inline double chi_square_upper_p(double stat, int df) {
    if (df <= 0) return 1.0;
    boost::math::chi_squared dist(df);
    return boost::math::cdf(boost::math::complement(dist, stat));
}

// Goodness of fit against explicit cell probabilities.
inline ChiSquareResult chi_square_against(const std::vector<long long>& counts,
                                          const std::vector<double>& probs) {
    ensure(counts.size() == probs.size(), "chi-square: size mismatch");
    long long total = 0;
    for (auto c : counts) total += c;
    double stat = 0;
    int df = -1;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double expect = probs[i] * static_cast<double>(total);
        if (expect == 0) {
            ensure(counts[i] == 0, "chi-square: observation in a zero-probability cell");
            continue;
        }
        double d = static_cast<double>(counts[i]) - expect;
        stat += d * d / expect;
        ++df;
    }
    return {stat, df, chi_square_upper_p(stat, df)};
}

inline ChiSquareResult chi_square_uniform(const std::vector<long long>& counts) {
    std::vector<double> probs(counts.size(), 1.0 / static_cast<double>(counts.size()));
    return chi_square_against(counts, probs);
}

// Two-sample homogeneity test on matched histograms.
inline ChiSquareResult chi_square_two_sample(const std::vector<long long>& a,
                                             const std::vector<long long>& b) {
    ensure(a.size() == b.size(), "chi-square: size mismatch");
    long long na = 0, nb = 0;
    for (auto c : a) na += c;
    for (auto c : b) nb += c;
    double stat = 0;
    int df = -1;
    double ka = std::sqrt(static_cast<double>(nb) / static_cast<double>(na));
    double kb = 1.0 / ka;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double s = static_cast<double>(a[i] + b[i]);
        if (s == 0) continue;
        double d = ka * static_cast<double>(a[i]) - kb * static_cast<double>(b[i]);
        stat += d * d / s;
        ++df;
    }
    return {stat, df, chi_square_upper_p(stat, df)};
}

inline double total_variation(const std::vector<long long>& a, const std::vector<long long>& b) {
    ensure(a.size() == b.size(), "TV: size mismatch");
    double na = 0, nb = 0;
    for (auto c : a) na += static_cast<double>(c);
    for (auto c : b) nb += static_cast<double>(c);
    double tv = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        tv += std::abs(static_cast<double>(a[i]) / na - static_cast<double>(b[i]) / nb);
    return tv / 2;
}

struct MeanStderr {
    double mean;
    double stderr_;
    long long n;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    ensure(!xs.empty(), "mean of empty sample");
    double mean = 0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var = xs.size() > 1 ? var / static_cast<double>(xs.size() - 1) : 0.0;
    return {mean, std::sqrt(var / static_cast<double>(xs.size())),
            static_cast<long long>(xs.size())};
}

// 4-sigma binomial agreement band used by the marginal identity checks.
inline bool binomial_within(double observed_freq, double p, long long n, double sigmas = 4.0) {
    double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
    return std::abs(observed_freq - p) <= sigmas * se;
}

}  // namespace ust
