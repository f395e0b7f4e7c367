// schmidt.hpp
// Schmidt-coefficient distributions of a single coboson and their power sums.

#pragma once

#include <Eigen/Dense>

#include <span>

namespace cobosons {

inline constexpr double kNormalizationTolerance = 1e-12;
inline constexpr double kRenormalizationLimit = 1e-9;

/// Schmidt coefficients lambda_1 >= lambda_2 >= ... > 0 summing to one.
///
/// Construction sorts into non-increasing order and drops zero entries, so
/// size() is the number of nonzero coefficients. Inputs whose sum deviates
/// from one by less than 1e-9 are rescaled; larger deviations are rejected.
class SchmidtDistribution {
public:
    explicit SchmidtDistribution(std::span<const double> lambdas);
    explicit SchmidtDistribution(const Eigen::Ref<const Eigen::VectorXd>& lambdas);

    const Eigen::VectorXd& lambdas() const noexcept { return lambdas_; }
    Eigen::Index size() const noexcept { return lambdas_.size(); }
    double operator[](Eigen::Index j) const noexcept { return lambdas_[j]; }

private:
    Eigen::VectorXd lambdas_;
};

/// Power sums M(1)..M(K). Index with at(m), m starting at 1.
class MomentVector {
public:
    /// Validates normalization, monotonicity and the Jensen/Hoelder chain.
    explicit MomentVector(Eigen::VectorXd moments);

    /// Skips validation; used for trial values inside the inference solve.
    static MomentVector unchecked(Eigen::VectorXd moments);

    double at(int m) const;
    int max_order() const noexcept { return static_cast<int>(moments_.size()); }
    const Eigen::VectorXd& values() const noexcept { return moments_; }
    double purity() const { return at(2); }

    /// Effective number of modes ceil(1/M(2)).
    int effective_modes() const;

private:
    struct NoCheck {};
    MomentVector(Eigen::VectorXd moments, NoCheck) : moments_(std::move(moments)) {}

    Eigen::VectorXd moments_;
};

/// ceil(1/P) with a relative guard against 1/P landing one ulp above an integer.
int modes_for_purity(double purity);

SchmidtDistribution make_uniform(int modes);

/// Uniform family at arbitrary purity: ceil(1/P) entries, all equal except
/// a smaller first one, fixed by an exact quadratic solve.
SchmidtDistribution make_uniform_purity(double purity);

/// Peaked family: one large coefficient a and S-1 equal small ones.
SchmidtDistribution make_peaked(double purity, int modes);

MomentVector moments(const SchmidtDistribution& dist, int max_order);

double purity(const SchmidtDistribution& dist);

} // namespace cobosons
