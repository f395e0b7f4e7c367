#include "cobosons/macroscopic.hpp"

#include "cobosons/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace cobosons {

MacroscopicSetup::MacroscopicSetup(double upper_fraction, double lower_fraction, double rho, BeamSplitter bs)
    : i1_(upper_fraction), i2_(lower_fraction), rho_(rho), bs_(bs)
{
    if (!(i1_ >= 0.0) || !(i2_ >= 0.0))
        throw InvalidArgument("intensity fractions must be non-negative");
    if (std::abs(i1_ + i2_ - 1.0) > 1e-12)
        throw InvalidArgument("intensity fractions must sum to 1");
    if (!std::isfinite(rho_) || rho_ < 0.0)
        throw InvalidArgument("rho must be a non-negative number");
    const double limit = 1.0 / std::max(i1_, i2_);
    if (rho_ > limit * (1.0 + 1e-12))
        throw DomainError("rho = " + std::to_string(rho_) + " exceeds 1/max(I1, I2) = " + std::to_string(limit) +
                          ": a lattice would hold more bi-fermions than Schmidt modes");
}

Support mwf_support(double i1, double i2, const BeamSplitter& bs)
{
    const double R = bs.reflectivity();
    const double T = bs.transmissivity();
    return {R * i1 + T * i2, 2.0 * std::sqrt(std::max(0.0, R * T * i1 * i2))};
}

double mwf_density(double intensity, double i1, double i2, const BeamSplitter& bs)
{
    const Support support = mwf_support(i1, i2, bs);
    if (support.degenerate())
        return 0.0;
    const double offset = intensity - support.center;
    const double gap = support.half_width * support.half_width - offset * offset;
    if (gap < 0.0)
        return 0.0;
    if (gap == 0.0)
        return std::numeric_limits<double>::infinity();
    return 1.0 / (std::numbers::pi * std::sqrt(gap));
}

double fermion_fraction_distribution_uniform(const MacroscopicSetup& setup)
{
    return setup.rho() * setup.i1() * setup.i2();
}

FermionFractionDiagnostic fermion_fraction_diagnostic(int modes, const FockPair& pair)
{
    const WeightVector w = weights_uniform_closed(modes, pair);
    const double n = pair.total();
    const Eigen::ArrayXd p = Eigen::ArrayXd::LinSpaced(w.size(), 0.0, static_cast<double>(w.size() - 1));
    const double mean = (p * w.weights.array()).sum();
    const double variance = ((p - mean).square() * w.weights.array()).sum();
    Eigen::Index mode = 0;
    w.weights.maxCoeff(&mode);
    return {mean / n, std::sqrt(variance) / n, static_cast<double>(mode) / n};
}

Support coboson_support(const MacroscopicSetup& setup)
{
    const double shift = fermion_fraction_distribution_uniform(setup);
    const double i1 = setup.i1() * std::max(0.0, 1.0 - setup.rho() * setup.i2());
    const double i2 = setup.i2() * std::max(0.0, 1.0 - setup.rho() * setup.i1());
    const Support inner = mwf_support(i1, i2, setup.beam_splitter());
    return {shift + inner.center, inner.half_width};
}

double coboson_macro_density(double intensity, const MacroscopicSetup& setup)
{
    const double shift = fermion_fraction_distribution_uniform(setup);
    const double i1 = setup.i1() * std::max(0.0, 1.0 - setup.rho() * setup.i2());
    const double i2 = setup.i2() * std::max(0.0, 1.0 - setup.rho() * setup.i1());
    return mwf_density(intensity - shift, i1, i2, setup.beam_splitter());
}

double width(const MacroscopicSetup& setup)
{
    const double R = setup.beam_splitter().reflectivity();
    const double T = setup.beam_splitter().transmissivity();
    const double a = std::max(0.0, 1.0 - setup.rho() * setup.i1());
    const double b = std::max(0.0, 1.0 - setup.rho() * setup.i2());
    return 4.0 * std::sqrt(R * T * setup.i1() * setup.i2() * a * b);
}

double integrate_over_support(const std::function<double(double)>& density, const Support& support, double a,
                              double b, int nodes)
{
    if (support.degenerate() || b <= a)
        return 0.0;
    auto angle = [&](double x) { return std::acos(std::clamp((x - support.center) / support.half_width, -1.0, 1.0)); };
    const double phi_low = angle(b);
    const double phi_high = angle(a);
    if (phi_high <= phi_low)
        return 0.0;

    // Midpoint rule in phi; the transformed integrand is smooth.
    const double step = (phi_high - phi_low) / nodes;
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double phi = phi_low + (k + 0.5) * step;
        total += density(support.center + support.half_width * std::cos(phi)) * support.half_width * std::sin(phi);
    }
    return total * step;
}

} // namespace cobosons
