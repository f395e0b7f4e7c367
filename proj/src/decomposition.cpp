#include "cobosons/decomposition.hpp"

#include "cobosons/combinatorics.hpp"
#include "cobosons/errors.hpp"
#include "cobosons/symfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace cobosons {

FockPair::FockPair(int upper, int lower)
{
    if (upper < 0 || lower < 0)
        throw InvalidArgument("coboson numbers must be non-negative");
    swapped_ = upper < lower;
    n1_ = swapped_ ? lower : upper;
    n2_ = swapped_ ? upper : lower;
}

namespace {

void check_total(const FockPair& pair)
{
    if (pair.total() > kMaxTotalParticles)
        throw ResourceLimit("N1 + N2 = " + std::to_string(pair.total()) + " exceeds the supported maximum of " +
                            std::to_string(kMaxTotalParticles));
}

std::string lattice_name(const FockPair& pair, bool larger)
{
    const bool upper = larger != pair.swapped();
    return std::string(upper ? "upper" : "lower") + " lattice (" + std::to_string(larger ? pair.n1() : pair.n2()) +
           " cobosons)";
}

// w_p from the coefficient table e(a, b); C(N1,p) C(N2,p) p! p! (N-2p)! / (N1! N2!) = C(N-2p, N1-p).
WeightVector weights_from_table(const Eigen::MatrixXd& table, const FockPair& pair)
{
    const int n1 = pair.n1();
    const int n2 = pair.n2();
    const int total = pair.total();
    const double denominator = table(0, n1) * table(0, n2);

    Eigen::VectorXd w(n2 + 1);
    for (int p = 0; p <= n2; ++p)
        w[p] = binomial(total - 2 * p, n1 - p) * table(p, total - 2 * p) / denominator;
    return {std::move(w), pair};
}

} // namespace

WeightVector weights(const SchmidtDistribution& dist, const FockPair& pair)
{
    check_total(pair);
    const auto modes = dist.size();
    if (pair.n1() > modes)
        throw DomainError("Pauli-saturated " + lattice_name(pair, true) + ": only " + std::to_string(modes) +
                          " Schmidt modes");
    if (pair.n2() == 0)
        return {Eigen::VectorXd::Ones(1), pair};

    Eigen::MatrixXd table = mixed_elementary_table(dist.lambdas(), pair.n2(), pair.total());
    constexpr double tiny = std::numeric_limits<double>::min();
    if (!(table(0, pair.n1()) > tiny) || !(table(0, pair.n2()) > tiny)) {
        // The weights are ratios of homogeneous polynomials of equal degree,
        // so rescaling every coefficient leaves them unchanged. Lift the
        // smallest coefficient towards 1 while keeping (c lambda_max)^N finite.
        const double smallest = dist.lambdas()[modes - 1];
        const double largest = dist.lambdas()[0];
        const double scale = std::min(1.0 / smallest, std::pow(1e300, 1.0 / pair.total()) / largest);
        const Eigen::VectorXd scaled = dist.lambdas() * scale;
        table = mixed_elementary_table(scaled, pair.n2(), pair.total());
        if (!(table(0, pair.n1()) > tiny) || !(table(0, pair.n2()) > tiny))
            throw DomainError("normalization of the " + lattice_name(pair, true) + " underflows");
    }
    return weights_from_table(table, pair);
}

WeightVector weights_from_moments(const MomentVector& moments, const FockPair& pair)
{
    check_total(pair);
    if (moments.max_order() < pair.total())
        throw InvalidArgument("weights_from_moments: need moments up to order " + std::to_string(pair.total()) +
                              ", have " + std::to_string(moments.max_order()));

    // The series cancels heavily near saturation; extended precision keeps it level with the direct DP.
    const Vector<long double> power_sums = moments.values().cast<long double>();
    const Eigen::MatrixXd table =
        mixed_elementary_table_from_power_sums(power_sums, pair.n2(), pair.total()).cast<double>();
    // Series rounding leaves saturated normalizations near, not at, zero.
    constexpr double saturation_threshold = 1e-13;
    for (bool larger : {true, false}) {
        const int n = larger ? pair.n1() : pair.n2();
        if (!(factorial(n) * table(0, n) > saturation_threshold))
            throw DomainError("Pauli-saturated " + lattice_name(pair, larger) + ": chi vanishes for these moments");
    }
    if (pair.n2() == 0)
        return {Eigen::VectorXd::Ones(1), pair};
    return weights_from_table(table, pair);
}

W0Bounds w0_bounds(double purity, const FockPair& pair)
{
    if (!(purity > 0.0 && purity <= 1.0))
        throw InvalidArgument("purity must lie in (0, 1]");
    // floor(1/P): the ceiling overshoots w_0 itself between the points P = 1/L, e.g. w_0 = 1 - P for (1,1).
    const double inverse = 1.0 / purity;
    const double nearest = std::round(inverse);
    const int L = static_cast<int>(std::abs(inverse - nearest) <= 1e-12 * inverse ? nearest : std::floor(inverse));
    const int n1 = pair.n1();
    const int n2 = pair.n2();

    double lower = 0.0;
    if (L >= n1 + n2) {
        // (L-N1)! (L-N2)! / ((L-N1-N2)! L!) = prod_{i<N2} (L-N1-i) / (L-i)
        lower = 1.0;
        for (int i = 0; i < n2; ++i)
            lower *= static_cast<double>(L - n1 - i) / static_cast<double>(L - i);
    }

    const double root = std::sqrt(purity);
    const double upper = (1.0 - root) * (1.0 + root * (n1 + n2 - 1)) / ((1.0 + root * (n2 - 1)) * (1.0 + root * (n1 - 1)));
    return {lower, upper};
}

WeightVector weights_uniform_closed(int modes, const FockPair& pair)
{
    const int n1 = pair.n1();
    const int n2 = pair.n2();
    if (modes < 1)
        throw InvalidArgument("uniform distribution needs at least one mode");
    if (modes < n1)
        throw DomainError("Pauli-saturated " + lattice_name(pair, true) + ": only " + std::to_string(modes) +
                          " Schmidt modes");

    // Ratio recurrence w_{p+1}/w_p = (N1-p)(N2-p) / ((p+1)(S-N1-N2+p+1)) in log space.
    const int p_min = std::max(0, n1 + n2 - modes);
    std::vector<double> log_terms(n2 + 1, -std::numeric_limits<double>::infinity());
    log_terms[p_min] = 0.0;
    double largest = 0.0;
    for (int p = p_min; p < n2; ++p) {
        const double ratio = static_cast<double>(n1 - p) * static_cast<double>(n2 - p) /
                             (static_cast<double>(p + 1) * static_cast<double>(modes - n1 - n2 + p + 1));
        log_terms[p + 1] = log_terms[p] + std::log(ratio);
        largest = std::max(largest, log_terms[p + 1]);
    }

    Eigen::VectorXd w = Eigen::VectorXd::Zero(n2 + 1);
    for (int p = p_min; p <= n2; ++p)
        w[p] = std::exp(log_terms[p] - largest);
    w /= w.sum();
    return {std::move(w), pair};
}

} // namespace cobosons
