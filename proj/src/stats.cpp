#include "hnnwalk/stats.hpp"

#include <algorithm>
#include <cmath>

namespace hnnwalk {

namespace {

EstimateWithCI finish(double point, double se, std::int64_t n, std::string method) {
    EstimateWithCI e;
    e.point = point;
    e.std_error = se;
    e.ci_low = point - thresholds::z95 * se;
    e.ci_high = point + thresholds::z95 * se;
    e.n_samples = n;
    e.method = std::move(method);
    return e;
}

} // namespace

EstimateWithCI mean_estimate(std::span<const double> samples, std::string method) {
    if (samples.empty()) throw InsufficientData("mean_estimate: no samples");
    double sum = 0.0;
    for (double x : samples) sum += x;
    const double n = static_cast<double>(samples.size());
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double se = samples.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    return finish(mean, se, static_cast<std::int64_t>(samples.size()), std::move(method));
}

EstimateWithCI ratio_estimate(std::span<const double> num, std::span<const double> den,
                              std::string method) {
    if (num.size() != den.size()) throw InsufficientData("ratio_estimate: size mismatch");
    if (num.empty()) throw InsufficientData("ratio_estimate: no samples");
    double sn = 0.0, sd = 0.0;
    for (double x : num) sn += x;
    for (double x : den) sd += x;
    if (sd == 0.0) throw InsufficientData("ratio_estimate: zero denominator");
    const double n = static_cast<double>(num.size());
    const double r = sn / sd;
    const double dbar = sd / n;
    // Var(r) ~ Var(num_i - r*den_i) / (n * dbar^2)
    double ss = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
        const double resid = num[i] - r * den[i];
        ss += resid * resid;
    }
    const double se =
        num.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) / std::abs(dbar) : 0.0;
    return finish(r, se, static_cast<std::int64_t>(num.size()), std::move(method));
}

EstimateWithCI binomial_estimate(std::int64_t successes, std::int64_t trials, std::string method) {
    if (trials <= 0) throw InsufficientData("binomial_estimate: no trials");
    const double p = static_cast<double>(successes) / static_cast<double>(trials);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return finish(p, se, trials, std::move(method));
}

bool estimates_overlap(const EstimateWithCI& a, const EstimateWithCI& b, double k_sigma) {
    const double joint = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    return std::abs(a.point - b.point) <= k_sigma * joint;
}

void MomentAccumulator::add(double x) {
    // Welford-style online update for central moments.
    const double n1 = static_cast<double>(n_);
    ++n_;
    const double n = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

double MomentAccumulator::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MomentAccumulator::skewness() const {
    if (n_ < 2 || m2_ == 0.0) return 0.0;
    const double n = static_cast<double>(n_);
    return std::sqrt(n) * m3_ / std::pow(m2_, 1.5);
}

double MomentAccumulator::excess_kurtosis() const {
    if (n_ < 2 || m2_ == 0.0) return 0.0;
    const double n = static_cast<double>(n_);
    return n * m4_ / (m2_ * m2_) - 3.0;
}

double ks_statistic_vs_normal(std::vector<double> samples, double mu, double sigma) {
    if (samples.empty() || sigma <= 0.0) return 0.0;
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double z = (samples[i] - mu) / sigma;
        const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(cdf - lo, hi - cdf));
    }
    return d;
}

SlopeFit ols_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3)
        throw InsufficientData("ols_slope: need at least 3 points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InsufficientData("ols_slope: degenerate x");
    SlopeFit fit;
    fit.slope = sxy / sxx;
    double sse = 0.0;
    const double intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - intercept - fit.slope * x[i];
        sse += r * r;
    }
    fit.std_error = std::sqrt(sse / (n - 2.0) / sxx);
    fit.ci_low = fit.slope - thresholds::z95 * fit.std_error;
    fit.ci_high = fit.slope + thresholds::z95 * fit.std_error;
    fit.n_points = static_cast<std::int64_t>(x.size());
    return fit;
}

} // namespace hnnwalk
