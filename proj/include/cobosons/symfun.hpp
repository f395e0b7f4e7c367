// symfun.hpp
// Coboson normalization factors chi_N and the symmetric sums
//
//   Omega({2 x p, 1 x r}) = sum over ordered tuples of p + r distinct indices
//                           of lambda^2 (first p slots) times lambda (last r slots)
//
// Three routes are provided: a generating-polynomial DP over the coefficients
// (production), an exponential power-sum series (needed when only moments are
// known), and explicit enumeration (test oracle).

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <limits>

#include "cobosons/combinatorics.hpp"
#include "cobosons/errors.hpp"
#include "cobosons/schmidt.hpp"

namespace cobosons {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Table e(a, b) of the coefficients of u^a v^b in prod_j (1 + u lambda_j^2 + v lambda_j)
/// for a <= max_squared, b <= max_linear.
///
/// Runs of equal adjacent coefficients are folded in one multinomial step,
/// so a uniform block of any length costs a single convolution.
template <typename Derived>
Matrix<typename Derived::Scalar> mixed_elementary_table(const Eigen::MatrixBase<Derived>& lambdas,
                                                        Eigen::Index max_squared, Eigen::Index max_linear)
{
    using Scalar = typename Derived::Scalar;
    using Eigen::Index;

    Matrix<Scalar> table = Matrix<Scalar>::Zero(max_squared + 1, max_linear + 1);
    table(0, 0) = Scalar(1);

    const Index n = lambdas.size();
    Index j = 0;
    while (j < n) {
        const Scalar value = lambdas(j);
        Index run = 1;
        while (j + run < n && lambdas(j + run) == value)
            ++run;
        j += run;
        if (value == Scalar(0))
            continue;

        if (run == 1) {
            const Scalar square = value * value;
            for (Index a = max_squared; a >= 0; --a) {
                for (Index b = max_linear; b >= 0; --b) {
                    Scalar acc = table(a, b);
                    if (a > 0)
                        acc += square * table(a - 1, b);
                    if (b > 0)
                        acc += value * table(a, b - 1);
                    table(a, b) = acc;
                }
            }
            continue;
        }

        // (1 + u x^2 + v x)^k = sum_{a,b} C(k,a) C(k-a,b) x^{2a+b} u^a v^b
        const Index top_a = std::min<Index>(max_squared, run);
        Matrix<Scalar> factor = Matrix<Scalar>::Zero(top_a + 1, max_linear + 1);
        Scalar row_head = Scalar(1);
        for (Index a = 0; a <= top_a; ++a) {
            if (a > 0)
                row_head *= Scalar(run - a + 1) * value * value / Scalar(a);
            Scalar term = row_head;
            const Index top_b = std::min<Index>(max_linear, run - a);
            for (Index b = 0; b <= top_b; ++b) {
                if (b > 0)
                    term *= Scalar(run - a - b + 1) * value / Scalar(b);
                factor(a, b) = term;
            }
        }

        Matrix<Scalar> next = Matrix<Scalar>::Zero(max_squared + 1, max_linear + 1);
        for (Index a = 0; a <= max_squared; ++a)
            for (Index b = 0; b <= max_linear; ++b) {
                Scalar acc = Scalar(0);
                for (Index i = 0; i <= std::min(a, top_a); ++i)
                    for (Index k = 0; k <= b; ++k)
                        acc += factor(i, k) * table(a - i, b - k);
                next(a, b) = acc;
            }
        table = std::move(next);
    }
    return table;
}

/// Same table as mixed_elementary_table, rebuilt from power sums M(1)..M(K)
/// through exp(sum_n (-1)^{n+1}/n sum_{a+b=n} C(n,a) u^a v^b M(2a+b)).
/// Entry (a, b) needs 2a + b <= K; entries beyond the available order are NaN.
template <typename Derived>
Matrix<typename Derived::Scalar> mixed_elementary_table_from_power_sums(const Eigen::MatrixBase<Derived>& power_sums,
                                                                        Eigen::Index max_squared,
                                                                        Eigen::Index max_linear)
{
    using Scalar = typename Derived::Scalar;
    using Eigen::Index;
    const Index available = power_sums.size();
    if (available < 1)
        throw InvalidArgument("power-sum series needs at least M(1)");
    Matrix<Scalar> log_series = Matrix<Scalar>::Zero(max_squared + 1, max_linear + 1);
    for (Index a = 0; a <= max_squared; ++a)
        for (Index b = 0; b <= max_linear; ++b) {
            const Index n = a + b;
            if (n == 0 || 2 * a + b > available)
                continue;
            const Scalar sign = (n % 2 == 1) ? Scalar(1) : Scalar(-1);
            log_series(a, b) = sign / Scalar(n) * Scalar(binomial(static_cast<int>(n), static_cast<int>(a))) *
                               power_sums(2 * a + b - 1);
        }
    // F = exp(G): (a+b) F(a,b) = sum (i+j) G(i,j) F(a-i, b-j), in increasing total degree.
    // F(a,b) only draws on G(i,k) with 2i + k <= 2a + b.
    Matrix<Scalar> table = Matrix<Scalar>::Constant(max_squared + 1, max_linear + 1,
                                                    std::numeric_limits<Scalar>::quiet_NaN());
    table(0, 0) = Scalar(1);
    for (Index degree = 1; degree <= max_squared + max_linear; ++degree) {
        for (Index a = std::max<Index>(0, degree - max_linear); a <= std::min(degree, max_squared); ++a) {
            const Index b = degree - a;
            if (2 * a + b > available)
                continue;
            Scalar acc = Scalar(0);
            for (Index i = 0; i <= a; ++i)
                for (Index k = 0; k <= b; ++k) {
                    if (i + k == 0)
                        continue;
                    acc += Scalar(i + k) * log_series(i, k) * table(a - i, b - k);
                }
            table(a, b) = acc / Scalar(degree);
        }
    }
    return table;
}

/// Elementary symmetric polynomials e_0..e_{max_degree}.
template <typename Derived>
Vector<typename Derived::Scalar> elementary_symmetric(const Eigen::MatrixBase<Derived>& lambdas, Eigen::Index max_degree)
{
    using Scalar = typename Derived::Scalar;
    Vector<Scalar> e = Vector<Scalar>::Zero(max_degree + 1);
    e(0) = Scalar(1);
    for (Eigen::Index j = 0; j < lambdas.size(); ++j)
        for (Eigen::Index k = max_degree; k >= 1; --k)
            e(k) += lambdas(j) * e(k - 1);
    return e;
}

struct NormalizationTable {
    Eigen::VectorXd chi; ///< chi_0 .. chi_Nmax

    double operator[](Eigen::Index n) const { return chi[n]; }
    Eigen::Index max_n() const noexcept { return chi.size() - 1; }
};

/// Exponent multiset {2 x num_squared, 1 x num_linear}.
struct MixedExponentQuery {
    int num_squared = 0;
    int num_linear = 0;

    MixedExponentQuery(int squared, int linear);
    int length() const noexcept { return num_squared + num_linear; }
    int degree() const noexcept { return 2 * num_squared + num_linear; }
};

double chi(const SchmidtDistribution& dist, int n);

NormalizationTable chi_table(const SchmidtDistribution& dist, int max_n);

double omega_mixed(const SchmidtDistribution& dist, const MixedExponentQuery& query);

/// Explicit enumeration; guarded to S <= 10 and p + r <= 6.
double omega_brute_force(const SchmidtDistribution& dist, const MixedExponentQuery& query);

double omega_from_moments(const MomentVector& moments, const MixedExponentQuery& query);

/// chi_{N+1} / chi_N. Throws DomainError when chi_N vanishes.
double chi_ratio(const SchmidtDistribution& dist, int n);

} // namespace cobosons
