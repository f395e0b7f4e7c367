#include "cobosons/lattice_oracle.hpp"

#include "cobosons/errors.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

namespace cobosons {

namespace {

std::vector<std::uint32_t> subsets_of_size(int sites, int size)
{
    std::vector<std::uint32_t> out;
    const std::uint32_t end = std::uint32_t{1} << sites;
    for (std::uint32_t mask = 0; mask < end; ++mask)
        if (std::popcount(mask) == size)
            out.push_back(mask);
    return out;
}

} // namespace

double LatticeState::norm_squared() const
{
    double total = 0.0;
    for (const auto& [config, amp] : amplitudes)
        total += std::norm(amp);
    return total;
}

LatticeState prepare(const SchmidtDistribution& dist, const FockPair& pair)
{
    const auto sites = static_cast<int>(dist.size());
    if (sites > kOracleMaxSites || pair.total() > kOracleMaxParticles)
        throw ResourceLimit("lattice oracle limited to S <= " + std::to_string(kOracleMaxSites) +
                            " and N1 + N2 <= " + std::to_string(kOracleMaxParticles) + " (got S = " +
                            std::to_string(sites) + ", N1 + N2 = " + std::to_string(pair.total()) + ")");
    if (pair.n1() > sites)
        throw DomainError("lattice oracle: " + std::to_string(pair.n1()) + " cobosons do not fit into " +
                          std::to_string(sites) + " Schmidt modes");

    std::vector<double> root(sites);
    for (int j = 0; j < sites; ++j)
        root[j] = std::sqrt(dist[j]);
    auto product = [&](std::uint32_t mask) {
        double value = 1.0;
        for (int j = 0; j < sites; ++j)
            if (mask & (std::uint32_t{1} << j))
                value *= root[j];
        return value;
    };

    // Every subset appears N! times among the ordered index tuples; the common
    // factor drops out of the normalization below.
    LatticeState state{sites, pair, {}};
    for (std::uint32_t upper : subsets_of_size(sites, pair.upper()))
        for (std::uint32_t lower : subsets_of_size(sites, pair.lower()))
            state.amplitudes[{upper, lower}] = product(upper) * product(lower);

    const double norm = std::sqrt(state.norm_squared());
    if (!(norm > 0.0))
        throw DomainError("lattice oracle: prepared state has zero norm");
    for (auto& [config, amp] : state.amplitudes)
        amp /= norm;
    return state;
}

LatticeState apply_beam_splitter(const LatticeState& state, const BeamSplitter& bs)
{
    const std::complex<double> stay(std::sqrt(bs.reflectivity()), 0.0);
    const std::complex<double> tunnel(0.0, std::sqrt(bs.transmissivity()));

    LatticeState current = state;
    for (int j = 0; j < state.sites; ++j) {
        const std::uint32_t bit = std::uint32_t{1} << j;
        LatticeState next{state.sites, state.pair, {}};
        for (const auto& [config, amp] : current.amplitudes) {
            const bool up = config.upper & bit;
            const bool down = config.lower & bit;
            if (up == down) {
                next.amplitudes[config] += amp;
                continue;
            }
            if (stay != 0.0)
                next.amplitudes[config] += stay * amp;
            if (tunnel != 0.0)
                next.amplitudes[{config.upper ^ bit, config.lower ^ bit}] += tunnel * amp;
        }
        current = std::move(next);
    }
    return current;
}

LatticeState apply_site_energies(const LatticeState& state, std::span<const double> energies, double t)
{
    if (static_cast<int>(energies.size()) != state.sites)
        throw InvalidArgument("one site energy per Schmidt mode required");
    LatticeState out = state;
    for (auto& [config, amp] : out.amplitudes) {
        double energy = 0.0;
        for (int j = 0; j < state.sites; ++j) {
            const std::uint32_t bit = std::uint32_t{1} << j;
            energy += energies[j] * (((config.upper & bit) ? 1 : 0) + ((config.lower & bit) ? 1 : 0));
        }
        amp *= std::polar(1.0, -energy * t);
    }
    return out;
}

CountingDistribution measure_counting(const LatticeState& state, double reflectivity)
{
    Eigen::VectorXd probabilities = Eigen::VectorXd::Zero(state.pair.total() + 1);
    for (const auto& [config, amp] : state.amplitudes)
        probabilities[std::popcount(config.upper)] += std::norm(amp);
    return {std::move(probabilities), state.pair, reflectivity};
}

WeightVector component_weights_exact(const LatticeState& state)
{
    Eigen::VectorXd w = Eigen::VectorXd::Zero(state.pair.n2() + 1);
    for (const auto& [config, amp] : state.amplitudes) {
        const int doubly = std::popcount(config.upper & config.lower);
        if (doubly > state.pair.n2())
            throw InvalidArgument("component_weights_exact expects a freshly prepared state");
        w[doubly] += std::norm(amp);
    }
    return {std::move(w), state.pair};
}

CountingDistribution oracle_counting_statistics(const SchmidtDistribution& dist, const FockPair& pair,
                                                const BeamSplitter& bs)
{
    return measure_counting(apply_beam_splitter(prepare(dist, pair), bs), bs.reflectivity());
}

} // namespace cobosons
