// decomposition.hpp
// Weights of the perfect-boson / perfect-fermion components of a two-lattice
// coboson state. Component p holds p fermion pairs (one fermion in each lattice)
// and N1 + N2 - 2p ideal bosons.

#pragma once

#include <Eigen/Dense>

#include "cobosons/schmidt.hpp"

namespace cobosons {

/// Default cap on N1 + N2 for the double-precision DP paths.
inline constexpr int kMaxTotalParticles = 40;

/// Coboson numbers in the two lattices, canonicalized so that n1() >= n2().
/// The orientation as prepared is kept for the counting statistics.
class FockPair {
public:
    FockPair(int upper, int lower);

    int n1() const noexcept { return n1_; }
    int n2() const noexcept { return n2_; }
    int total() const noexcept { return n1_ + n2_; }

    /// True when the lower lattice holds more cobosons than the upper one.
    bool swapped() const noexcept { return swapped_; }
    int upper() const noexcept { return swapped_ ? n2_ : n1_; }
    int lower() const noexcept { return swapped_ ? n1_ : n2_; }

    /// Same counts, with n1() prepared in the upper lattice.
    FockPair canonical() const { return FockPair(n1_, n2_); }

    bool operator==(const FockPair&) const = default;

private:
    int n1_;
    int n2_;
    bool swapped_;
};

struct WeightVector {
    Eigen::VectorXd weights; ///< w_0 .. w_{N2}
    FockPair pair;

    double operator[](Eigen::Index p) const { return weights[p]; }
    Eigen::Index size() const noexcept { return weights.size(); }
};

struct W0Bounds {
    double lower;
    double upper;
};

/// w_p = C(N1,p) C(N2,p) p! Omega({2 x p, 1 x (N1+N2-2p)}) / (chi_N1 chi_N2),
/// all p from one generating-polynomial pass.
WeightVector weights(const SchmidtDistribution& dist, const FockPair& pair);

/// Same contract with every symmetric sum evaluated from power sums up to N1 + N2.
WeightVector weights_from_moments(const MomentVector& moments, const FockPair& pair);

/// Purity bounds on the bosonic weight w_0. The lower bound uses L = floor(1/P)
/// and is reported as 0 when L < N1 + N2.
W0Bounds w0_bounds(double purity, const FockPair& pair);

/// Closed form for S equal coefficients: the hypergeometric law
/// w_p = C(N1,p) C(S-N1, N2-p) / C(S,N2). Valid for large N as well.
WeightVector weights_uniform_closed(int modes, const FockPair& pair);

} // namespace cobosons
