// macroscopic.hpp
// Large-N limit: random-phase macroscopic wavefunction densities for the
// intensity fraction I found in the upper lattice, for ideal bosons and for
// uniform cobosons with rho bi-fermions per Schmidt mode.

#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "cobosons/decomposition.hpp"
#include "cobosons/interference.hpp"

namespace cobosons {

/// Input fractions I1 + I2 = 1 and density rho = N/S with 0 <= rho <= 1/max(I1, I2).
class MacroscopicSetup {
public:
    MacroscopicSetup(double upper_fraction, double lower_fraction, double rho, BeamSplitter bs);

    double i1() const noexcept { return i1_; }
    double i2() const noexcept { return i2_; }
    double rho() const noexcept { return rho_; }
    const BeamSplitter& beam_splitter() const noexcept { return bs_; }

private:
    double i1_;
    double i2_;
    double rho_;
    BeamSplitter bs_;
};

/// Arcsine support center +- half_width; degenerate when half_width == 0.
struct Support {
    double center;
    double half_width;

    bool degenerate() const noexcept { return half_width <= 0.0; }
    double lower() const noexcept { return center - half_width; }
    double upper() const noexcept { return center + half_width; }
};

Support mwf_support(double i1, double i2, const BeamSplitter& bs);

/// 1 / (pi sqrt(4 R T I1 I2 - (I - R I1 - T I2)^2)) inside the support, zero
/// outside, +infinity exactly at the endpoints.
double mwf_density(double intensity, double i1, double i2, const BeamSplitter& bs);

/// Location rho I1 I2 of the delta-distributed fermion fraction.
double fermion_fraction_distribution_uniform(const MacroscopicSetup& setup);

struct FermionFractionDiagnostic {
    double mean;    ///< E[p] / N
    double std_dev; ///< sd[p] / N
    double mode;    ///< argmax_p w_p / N
};

/// Statistics of p/N under the finite-N uniform weights; converges to the delta location.
FermionFractionDiagnostic fermion_fraction_diagnostic(int modes, const FockPair& pair);

Support coboson_support(const MacroscopicSetup& setup);

/// P_MWF(I - rho I1 I2; I1 (1 - rho I2), I2 (1 - rho I1)).
double coboson_macro_density(double intensity, const MacroscopicSetup& setup);

/// W = 4 sqrt(R T I1 I2 (1 - rho I1)(1 - rho I2)).
double width(const MacroscopicSetup& setup);

/// Integral of density over [a, b] clipped to the support, with the substitution
/// I = center + half_width cos(phi) that removes the inverse-square-root endpoints.
double integrate_over_support(const std::function<double(double)>& density, const Support& support, double a,
                              double b, int nodes = 512);

/// Draws I = center + half_width cos(phi) with phi uniform on [0, 2 pi).
template <typename URBG>
std::vector<double> sample_intensity(const Support& support, URBG& rng, std::size_t count)
{
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> samples(count);
    for (auto& s : samples)
        s = support.center + support.half_width * std::cos(phase(rng));
    return samples;
}

} // namespace cobosons
