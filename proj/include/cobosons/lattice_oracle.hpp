// lattice_oracle.hpp
// Brute-force reference: hardcore bi-fermions on a 2 x S lattice, prepared as
// coboson Fock states and evolved site by site under vertical tunneling.
// Independent of the symmetric-function and decomposition code.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>

#include "cobosons/decomposition.hpp"
#include "cobosons/interference.hpp"
#include "cobosons/schmidt.hpp"

namespace cobosons {

inline constexpr int kOracleMaxSites = 12;
inline constexpr int kOracleMaxParticles = 8;

/// Occupied sites of each lattice as bit masks (bit j = site j).
struct Configuration {
    std::uint32_t upper = 0;
    std::uint32_t lower = 0;

    auto operator<=>(const Configuration&) const = default;
};

struct LatticeState {
    int sites = 0;
    FockPair pair{0, 0};
    std::map<Configuration, std::complex<double>> amplitudes;

    double norm_squared() const;
};

/// Expands (c_1^dag)^N1 (c_2^dag)^N2 |0> over site configurations and normalizes
/// by the enumerated norm. Guarded to S <= 12 and N1 + N2 <= 8.
LatticeState prepare(const SchmidtDistribution& dist, const FockPair& pair);

/// Each singly occupied site rotates as cos(theta) (stay) + i sin(theta) (tunnel),
/// cos^2(theta) = R. Doubly occupied and empty sites are left unchanged.
LatticeState apply_beam_splitter(const LatticeState& state, const BeamSplitter& bs);

/// Diagonal phases exp(-i t sum_j energy_j n_j) from local site energies.
LatticeState apply_site_energies(const LatticeState& state, std::span<const double> energies, double t);

CountingDistribution measure_counting(const LatticeState& state, double reflectivity);

/// w_p as the squared norm of the part with exactly p doubly occupied sites.
WeightVector component_weights_exact(const LatticeState& state);

/// prepare -> apply_beam_splitter -> measure_counting.
CountingDistribution oracle_counting_statistics(const SchmidtDistribution& dist, const FockPair& pair,
                                                const BeamSplitter& bs);

} // namespace cobosons
