#include "cobosons/interference.hpp"

#include "cobosons/combinatorics.hpp"
#include "cobosons/errors.hpp"
#include "cobosons/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace cobosons {

BeamSplitter::BeamSplitter(double reflectivity) : reflectivity_(reflectivity)
{
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0))
        throw InvalidArgument("reflectivity must lie in [0, 1]");
}

BeamSplitter BeamSplitter::from_time(double t, double rate)
{
    if (!std::isfinite(t) || !std::isfinite(rate))
        throw InvalidArgument("tunneling time and rate must be finite");
    // cos^2(x/2) = (1 + cos x)/2, which lands exactly on 1/2 at t J_v = pi/2.
    return BeamSplitter(std::clamp(0.5 * (1.0 + std::cos(t * rate)), 0.0, 1.0));
}

Eigen::Matrix2cd BeamSplitter::matrix() const
{
    const std::complex<double> i(0.0, 1.0);
    const double r = std::sqrt(reflectivity());
    const double t = std::sqrt(transmissivity());
    Eigen::Matrix2cd m;
    m << i * r, t,
         t, i * r;
    return m;
}

Eigen::VectorXd boson_output_distribution(int n_upper, int n_lower, const Eigen::Matrix2cd& transform)
{
    if (n_upper < 0 || n_lower < 0)
        throw InvalidArgument("boson numbers must be non-negative");
    const int n = n_upper + n_lower;
    if (n > kMaxFactorial)
        throw ResourceLimit("boson expansion limited to " + std::to_string(kMaxFactorial) + " particles");

    using cd = std::complex<double>;
    auto powers = [](cd base, int count) {
        Eigen::VectorXcd p(count + 1);
        p[0] = 1.0;
        for (int k = 1; k <= count; ++k)
            p[k] = p[k - 1] * base;
        return p;
    };
    const Eigen::VectorXcd u00 = powers(transform(0, 0), n_upper);
    const Eigen::VectorXcd u01 = powers(transform(0, 1), n_upper);
    const Eigen::VectorXcd u10 = powers(transform(1, 0), n_lower);
    const Eigen::VectorXcd u11 = powers(transform(1, 1), n_lower);

    // (U00 g1 + U01 g2)^{n_u} (U10 g1 + U11 g2)^{n_l}: coefficient of g1^k g2^{n-k}.
    Eigen::VectorXd probabilities(n + 1);
    const double input_norm = factorial(n_upper) * factorial(n_lower);
    for (int k = 0; k <= n; ++k) {
        cd amplitude = 0.0;
        for (int a = std::max(0, k - n_lower); a <= std::min(k, n_upper); ++a) {
            const int b = k - a;
            amplitude += binomial(n_upper, a) * binomial(n_lower, b) * u00[a] * u01[n_upper - a] * u10[b] *
                         u11[n_lower - b];
        }
        probabilities[k] = std::norm(amplitude) * factorial(k) * factorial(n - k) / input_norm;
    }
    return probabilities;
}

CountingDistribution boson_bs_distribution(int n_upper, int n_lower, const BeamSplitter& bs)
{
    return {boson_output_distribution(n_upper, n_lower, bs.matrix()), FockPair(n_upper, n_lower), bs.reflectivity()};
}

CountingDistribution component_distribution(const FockPair& pair, int p, const BeamSplitter& bs)
{
    if (p < 0 || p > pair.n2())
        throw InvalidArgument("component index " + std::to_string(p) + " outside 0.." + std::to_string(pair.n2()));
    const Eigen::VectorXd bosons = boson_output_distribution(pair.upper() - p, pair.lower() - p, bs.matrix());
    Eigen::VectorXd shifted = Eigen::VectorXd::Zero(pair.total() + 1);
    shifted.segment(p, bosons.size()) = bosons;
    return {std::move(shifted), pair, bs.reflectivity()};
}

CountingDistribution counting_statistics(const WeightVector& weights, const BeamSplitter& bs)
{
    Eigen::VectorXd total = Eigen::VectorXd::Zero(weights.pair.total() + 1);
    for (Eigen::Index p = 0; p < weights.size(); ++p)
        total += weights[p] * component_distribution(weights.pair, static_cast<int>(p), bs).probabilities;
    return {std::move(total), weights.pair, bs.reflectivity()};
}

CountingDistribution counting_statistics(const SchmidtDistribution& dist, const FockPair& pair,
                                         const BeamSplitter& bs)
{
    return counting_statistics(weights(dist, pair), bs);
}

CountingDistribution counting_statistics_from_moments(const MomentVector& moments, const FockPair& pair,
                                                      const BeamSplitter& bs)
{
    return counting_statistics(weights_from_moments(moments, pair), bs);
}

CountingDistribution n_plus_one_statistics(const SchmidtDistribution& dist, int n, const BeamSplitter& bs)
{
    const double ratio = chi_ratio(dist, n);
    const FockPair pair(n, 1);
    Eigen::VectorXd mixture = ratio * component_distribution(pair, 0, bs).probabilities +
                              (1.0 - ratio) * component_distribution(pair, 1, bs).probabilities;
    return {std::move(mixture), pair, bs.reflectivity()};
}

CountingDistribution distinguishable_reference(const FockPair& pair, const BeamSplitter& bs)
{
    const double R = bs.reflectivity();
    const double T = bs.transmissivity();
    const int n_up = pair.upper();
    const int n_low = pair.lower();

    // Upper-input particles stay with probability R, lower-input particles cross with probability T.
    Eigen::VectorXd stay(n_up + 1);
    for (int k = 0; k <= n_up; ++k)
        stay[k] = binomial(n_up, k) * std::pow(R, k) * std::pow(T, n_up - k);
    Eigen::VectorXd cross(n_low + 1);
    for (int k = 0; k <= n_low; ++k)
        cross[k] = binomial(n_low, k) * std::pow(T, k) * std::pow(R, n_low - k);

    Eigen::VectorXd total = Eigen::VectorXd::Zero(pair.total() + 1);
    for (int a = 0; a <= n_up; ++a)
        for (int b = 0; b <= n_low; ++b)
            total[a + b] += stay[a] * cross[b];
    return {std::move(total), pair, R};
}

std::vector<SweepRow> purity_sweep(DistributionFamily family, const FockPair& pair, const BeamSplitter& bs,
                                   std::vector<double> purity_grid, int peaked_modes)
{
    std::sort(purity_grid.begin(), purity_grid.end());
    std::vector<SweepRow> rows;
    rows.reserve(purity_grid.size());
    for (double P : purity_grid) {
        SweepRow row{P, std::nullopt, std::nullopt, "ok"};
        try {
            const SchmidtDistribution dist =
                family == DistributionFamily::uniform ? make_uniform_purity(P) : make_peaked(P, peaked_modes);
            WeightVector w = weights(dist, pair);
            row.counts = counting_statistics(w, bs);
            row.weights = std::move(w);
        } catch (const Error& e) {
            row.status = std::string("infeasible: ") + e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::VectorXd mirrored(const Eigen::VectorXd& probabilities)
{
    return probabilities.reverse();
}

} // namespace cobosons
