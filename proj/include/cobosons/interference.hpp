// interference.hpp
// Beam-splitter counting statistics of bosonic Fock states, of the boson/fermion
// components, and of the full coboson state.

#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "cobosons/decomposition.hpp"
#include "cobosons/schmidt.hpp"

namespace cobosons {

/// Two-lattice beam splitter with reflectivity R, T = 1 - R.
/// Creation operators map as g_q -> i sqrt(R) g_q + sqrt(T) g_{3-q}.
class BeamSplitter {
public:
    explicit BeamSplitter(double reflectivity);

    /// Vertical tunneling for time t at rate J_v: R = cos^2(t J_v / 2).
    static BeamSplitter from_time(double t, double rate);

    double reflectivity() const noexcept { return reflectivity_; }
    double transmissivity() const noexcept { return 1.0 - reflectivity_; }

    /// Row q holds the image of the creation operator of lattice q.
    Eigen::Matrix2cd matrix() const;

private:
    double reflectivity_;
};

/// P(m): probability of m bi-fermions in the upper lattice.
struct CountingDistribution {
    Eigen::VectorXd probabilities; ///< P(0) .. P(N1 + N2)
    FockPair pair;
    double reflectivity;

    double operator[](Eigen::Index m) const { return probabilities[m]; }
    Eigen::Index size() const noexcept { return probabilities.size(); }
};

/// Output distribution of the boson Fock state |n_upper, n_lower> for an
/// arbitrary single-particle 2x2 transformation.
Eigen::VectorXd boson_output_distribution(int n_upper, int n_lower, const Eigen::Matrix2cd& transform);

CountingDistribution boson_bs_distribution(int n_upper, int n_lower, const BeamSplitter& bs);

/// P(m, p): the N1 - p and N2 - p ideal bosons interfere; each fermion pair
/// leaves exactly one fermion per lattice for every R.
CountingDistribution component_distribution(const FockPair& pair, int p, const BeamSplitter& bs);

/// P_tot(m) = sum_p w_p P(m, p).
CountingDistribution counting_statistics(const SchmidtDistribution& dist, const FockPair& pair,
                                         const BeamSplitter& bs);
CountingDistribution counting_statistics(const WeightVector& weights, const BeamSplitter& bs);

/// Forward map used by the inference module: statistics predicted by power sums.
CountingDistribution counting_statistics_from_moments(const MomentVector& moments, const FockPair& pair,
                                                      const BeamSplitter& bs);

/// N cobosons against a single one, mixed by chi_{N+1}/chi_N.
CountingDistribution n_plus_one_statistics(const SchmidtDistribution& dist, int n, const BeamSplitter& bs);

/// Independently routed, distinguishable particles.
CountingDistribution distinguishable_reference(const FockPair& pair, const BeamSplitter& bs);

enum class DistributionFamily { uniform, peaked };

struct SweepRow {
    double purity;
    std::optional<CountingDistribution> counts;
    std::optional<WeightVector> weights;
    std::string status; ///< "ok" or the reason the point was skipped
};

/// Counting statistics across a purity grid. Rows come back sorted by purity;
/// infeasible points are flagged and the sweep continues. peaked_modes sets S
/// for the peaked family.
std::vector<SweepRow> purity_sweep(DistributionFamily family, const FockPair& pair, const BeamSplitter& bs,
                                   std::vector<double> purity_grid, int peaked_modes = 1000000);

/// The distribution with m -> N - m.
Eigen::VectorXd mirrored(const Eigen::VectorXd& probabilities);

} // namespace cobosons
