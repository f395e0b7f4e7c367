#include "cobosons/symfun.hpp"

#include <string>
#include <vector>

namespace cobosons {

MixedExponentQuery::MixedExponentQuery(int squared, int linear) : num_squared(squared), num_linear(linear)
{
    if (squared < 0 || linear < 0 || squared + linear < 1)
        throw InvalidArgument("exponent query needs p >= 0, r >= 0 and p + r >= 1");
}

double chi(const SchmidtDistribution& dist, int n)
{
    if (n < 0)
        throw InvalidArgument("chi: N must be non-negative");
    if (n == 0)
        return 1.0;
    if (n > dist.size())
        return 0.0;
    return factorial(n) * elementary_symmetric(dist.lambdas(), n)[n];
}

NormalizationTable chi_table(const SchmidtDistribution& dist, int max_n)
{
    if (max_n < 0)
        throw InvalidArgument("chi_table: N must be non-negative");
    const Eigen::VectorXd e = elementary_symmetric(dist.lambdas(), max_n);
    NormalizationTable table{Eigen::VectorXd::Zero(max_n + 1)};
    for (int n = 0; n <= max_n; ++n)
        table.chi[n] = n > dist.size() ? 0.0 : factorial(n) * e[n];
    return table;
}

double omega_mixed(const SchmidtDistribution& dist, const MixedExponentQuery& query)
{
    if (query.length() > dist.size())
        return 0.0;
    const Eigen::MatrixXd table = mixed_elementary_table(dist.lambdas(), query.num_squared, query.num_linear);
    return factorial(query.num_squared) * factorial(query.num_linear) * table(query.num_squared, query.num_linear);
}

double omega_brute_force(const SchmidtDistribution& dist, const MixedExponentQuery& query)
{
    const auto S = static_cast<int>(dist.size());
    const int length = query.length();
    if (S > 10 || length > 6)
        throw ResourceLimit("omega_brute_force: enumeration limited to S <= 10 and p + r <= 6 (got S = " +
                            std::to_string(S) + ", p + r = " + std::to_string(length) + ")");
    if (length > S)
        return 0.0;

    std::vector<bool> used(S, false);
    double total = 0.0;

    // Depth-first walk over ordered tuples of distinct indices.
    auto visit = [&](auto&& self, int slot, double product) -> void {
        if (slot == length) {
            total += product;
            return;
        }
        const int exponent = slot < query.num_squared ? 2 : 1;
        for (int j = 0; j < S; ++j) {
            if (used[j])
                continue;
            used[j] = true;
            const double factor = exponent == 2 ? dist[j] * dist[j] : dist[j];
            self(self, slot + 1, product * factor);
            used[j] = false;
        }
    };
    visit(visit, 0, 1.0);
    return total;
}

double omega_from_moments(const MomentVector& moments, const MixedExponentQuery& query)
{
    if (moments.max_order() < query.degree())
        throw InvalidArgument("omega_from_moments: need moments up to order " + std::to_string(query.degree()) +
                              ", have " + std::to_string(moments.max_order()));
    const Eigen::MatrixXd table =
        mixed_elementary_table_from_power_sums(moments.values(), query.num_squared, query.num_linear);
    return factorial(query.num_squared) * factorial(query.num_linear) * table(query.num_squared, query.num_linear);
}

double chi_ratio(const SchmidtDistribution& dist, int n)
{
    if (n < 1)
        throw InvalidArgument("chi_ratio: N must be positive");
    if (n > dist.size())
        throw DomainError("chi_ratio: chi_" + std::to_string(n) + " vanishes, the state is Pauli-saturated (" +
                          std::to_string(dist.size()) + " Schmidt modes)");
    const Eigen::VectorXd e = elementary_symmetric(dist.lambdas(), n + 1);
    if (!(e[n] > 0.0))
        throw DomainError("chi_ratio: chi_" + std::to_string(n) + " underflows to zero");
    return static_cast<double>(n + 1) * e[n + 1] / e[n];
}

} // namespace cobosons
