#include "cobosons/schmidt.hpp"

#include "cobosons/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace cobosons {

namespace {

Eigen::VectorXd canonicalize(std::vector<double> values)
{
    if (values.empty())
        throw InvalidArgument("Schmidt distribution needs at least one coefficient");
    double total = 0.0;
    for (double v : values) {
        if (!std::isfinite(v))
            throw InvalidArgument("Schmidt coefficient is not finite");
        if (v < 0.0)
            throw InvalidArgument("Schmidt coefficient is negative: " + std::to_string(v));
        total += v;
    }
    const double deviation = std::abs(total - 1.0);
    if (deviation > kRenormalizationLimit)
        throw InvalidArgument("Schmidt coefficients sum to " + std::to_string(total) + ", expected 1");
    if (deviation > kNormalizationTolerance) {
        for (double& v : values)
            v /= total;
    }

    std::sort(values.begin(), values.end(), std::greater<>());
    auto first_zero = std::find(values.begin(), values.end(), 0.0);
    values.erase(first_zero, values.end());

    return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

} // namespace

SchmidtDistribution::SchmidtDistribution(std::span<const double> lambdas)
    : lambdas_(canonicalize(std::vector<double>(lambdas.begin(), lambdas.end())))
{
}

SchmidtDistribution::SchmidtDistribution(const Eigen::Ref<const Eigen::VectorXd>& lambdas)
    : lambdas_(canonicalize(std::vector<double>(lambdas.begin(), lambdas.end())))
{
}

MomentVector::MomentVector(Eigen::VectorXd moments) : moments_(std::move(moments))
{
    constexpr double chain_tolerance = 1e-10;
    const auto K = moments_.size();
    if (K < 1)
        throw InvalidArgument("moment vector is empty");
    if (std::abs(moments_[0] - 1.0) > kNormalizationTolerance)
        throw InvalidArgument("M(1) must equal 1");
    for (Eigen::Index i = 0; i < K; ++i) {
        const double v = moments_[i];
        if (!std::isfinite(v) || v <= 0.0 || v > 1.0 + kNormalizationTolerance)
            throw InvalidArgument("M(" + std::to_string(i + 1) + ") outside (0, 1]");
        if (i > 0 && v > moments_[i - 1] + kNormalizationTolerance)
            throw InvalidArgument("power sums must be non-increasing in the order");
    }
    for (Eigen::Index i = 2; i < K; ++i) {
        const double m = static_cast<double>(i + 1);
        const double prev = moments_[i - 1];
        const double lower = std::pow(prev, (m - 1.0) / (m - 2.0));
        const double upper = std::pow(prev, m / (m - 1.0));
        if (moments_[i] < lower - chain_tolerance || moments_[i] > upper + chain_tolerance)
            throw InvalidArgument("M(" + std::to_string(i + 1) + ") violates the Jensen/Hoelder chain");
    }
}

MomentVector MomentVector::unchecked(Eigen::VectorXd moments)
{
    return MomentVector(std::move(moments), NoCheck{});
}

double MomentVector::at(int m) const
{
    if (m < 1 || m > max_order())
        throw InvalidArgument("moment order " + std::to_string(m) + " not available");
    return moments_[m - 1];
}

int MomentVector::effective_modes() const
{
    return modes_for_purity(purity());
}

int modes_for_purity(double purity)
{
    if (!(purity > 0.0) || purity > 1.0 + kNormalizationTolerance)
        throw InvalidArgument("purity must lie in (0, 1]");
    const double inverse = 1.0 / purity;
    const double nearest = std::round(inverse);
    if (std::abs(inverse - nearest) <= 1e-12 * inverse)
        return static_cast<int>(nearest);
    return static_cast<int>(std::ceil(inverse));
}

SchmidtDistribution make_uniform(int modes)
{
    if (modes < 1)
        throw InvalidArgument("uniform distribution needs at least one mode");
    return SchmidtDistribution(Eigen::VectorXd::Constant(modes, 1.0 / modes));
}

SchmidtDistribution make_uniform_purity(double purity)
{
    if (!(purity > 0.0) || purity > 1.0)
        throw InvalidArgument("purity must lie in (0, 1]");
    const int L = modes_for_purity(purity);
    if (L == 1)
        return make_uniform(1);

    // k(k+1) x^2 - 2k x + (1 - P) = 0 with k = L - 1; the larger root keeps
    // the odd entry 1 - kx at or below x.
    const double k = L - 1;
    const double discriminant = k * ((k + 1.0) * purity - 1.0);
    if (discriminant < -1e-9)
        throw InternalError("uniform family: no real root for purity " + std::to_string(purity));
    const double x = (k + std::sqrt(std::max(0.0, discriminant))) / (k * (k + 1.0));

    Eigen::VectorXd lambdas = Eigen::VectorXd::Constant(L, x);
    lambdas[0] = std::max(0.0, 1.0 - k * x);
    return SchmidtDistribution(lambdas);
}

SchmidtDistribution make_peaked(double purity, int modes)
{
    if (!(purity > 0.0) || purity > 1.0)
        throw InvalidArgument("purity must lie in (0, 1]");
    if (modes < 1)
        throw InvalidArgument("peaked distribution needs at least one mode");
    if (modes == 1) {
        if (std::abs(purity - 1.0) > kNormalizationTolerance)
            throw InvalidArgument("a single mode only admits purity 1");
        return make_uniform(1);
    }

    // S a^2 - 2a + (1 - (S-1) P) = 0, larger root.
    const double S = modes;
    const double n = S - 1.0;
    const double discriminant = n * (S * purity - 1.0);
    if (discriminant < -1e-12 * S)
        throw InvalidArgument("purity " + std::to_string(purity) + " is below the minimum 1/" +
                              std::to_string(modes) + " reachable with the given modes");
    const double a = (1.0 + std::sqrt(std::max(0.0, discriminant))) / S;
    const double rest = std::max(0.0, (1.0 - a) / n);

    Eigen::VectorXd lambdas = Eigen::VectorXd::Constant(modes, rest);
    lambdas[0] = a;
    return SchmidtDistribution(lambdas);
}

MomentVector moments(const SchmidtDistribution& dist, int max_order)
{
    if (max_order < 1)
        throw InvalidArgument("moment order must be positive");
    Eigen::VectorXd values(max_order);
    Eigen::ArrayXd power = dist.lambdas().array();
    values[0] = 1.0;
    for (int m = 2; m <= max_order; ++m) {
        power *= dist.lambdas().array();
        values[m - 1] = power.sum();
    }
    return MomentVector::unchecked(std::move(values));
}

double purity(const SchmidtDistribution& dist)
{
    return dist.lambdas().squaredNorm();
}

} // namespace cobosons
