#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hnnwalk/errors.hpp"
#include "hnnwalk/thresholds.hpp"

namespace hnnwalk {

// Uniform return type of all estimators: point value, standard error and a
// 95% normal-theory confidence interval.
struct EstimateWithCI {
    double point = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t n_samples = 0;
    std::string method;
};

EstimateWithCI mean_estimate(std::span<const double> samples, std::string method);

// Ratio of means sum(num)/sum(den) over i.i.d. pairs, standard error by the
// delta method.
EstimateWithCI ratio_estimate(std::span<const double> num, std::span<const double> den,
                              std::string method);

EstimateWithCI binomial_estimate(std::int64_t successes, std::int64_t trials, std::string method);

// Do two estimates agree within a joint k-sigma band?
bool estimates_overlap(const EstimateWithCI& a, const EstimateWithCI& b,
                       double k_sigma = thresholds::agree_sigma);

// Streaming central moments up to order four.
class MomentAccumulator {
public:
    void add(double x);
    std::int64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const;        // unbiased
    double skewness() const;
    double excess_kurtosis() const;

private:
    std::int64_t n_ = 0;
    double mean_ = 0.0, m2_ = 0.0, m3_ = 0.0, m4_ = 0.0;
};

// Kolmogorov-Smirnov distance between the sample and N(mu, sigma^2).
double ks_statistic_vs_normal(std::vector<double> samples, double mu, double sigma);

struct SlopeFit {
    double slope = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t n_points = 0;
};

// Ordinary least squares slope of y on x.
SlopeFit ols_slope(std::span<const double> x, std::span<const double> y);

} // namespace hnnwalk
