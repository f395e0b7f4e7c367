#include "cobosons/errors.hpp"
#include "cobosons/interference.hpp"
#include "cobosons/lattice_oracle.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <complex>
#include <numbers>

using namespace cobosons;
using testing::vec;

namespace {

// Independent reference values from a dense hardcore-boson propagation.
struct Frozen {
    Eigen::VectorXd lambda;
    int n_upper;
    int n_lower;
    double R;
    Eigen::VectorXd expected;
};

std::vector<Frozen> frozen_cases()
{
    return {
        {vec({0.25, 0.25, 0.25, 0.25}), 2, 2, 0.5,
         vec({0.0625, 1.0 / 3.0, 0.20833333333333331, 1.0 / 3.0, 0.0625})},
        {vec({0.6, 0.3, 0.1}), 2, 1, 0.3, vec({0.0882, 0.5614, 0.3126, 0.0378})},
        {vec({0.5, 0.3, 0.2}), 2, 2, 0.7,
         vec({0.0, 0.26222684703433913, 0.4755463059313213, 0.26222684703433913, 0.0})},
        {vec({0.4, 0.3, 0.2, 0.1}), 3, 2, 0.5,
         vec({0.0, 0.15428571428571428, 0.34571428571428575, 0.3457142857142857, 0.15428571428571425, 0.0})},
    };
}

Eigen::VectorXd binomial_row(int n, double q)
{
    Eigen::VectorXd row(n + 1);
    for (int k = 0; k <= n; ++k)
        row[k] = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0)) * std::pow(q, k) *
                 std::pow(1 - q, n - k);
    return row;
}

} // namespace

TEST_CASE("beam splitter")
{
    const BeamSplitter bs(0.3);
    CHECK(bs.transmissivity() == doctest::Approx(0.7));
    const Eigen::Matrix2cd U = bs.matrix();
    CHECK((U.adjoint() * U - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK_THROWS_AS(BeamSplitter(-0.1), InvalidArgument);
    CHECK_THROWS_AS(BeamSplitter(1.1), InvalidArgument);
    CHECK(BeamSplitter::from_time(std::numbers::pi / 2.0, 1.0).reflectivity() == 0.5);
    CHECK(BeamSplitter::from_time(std::numbers::pi / 4.0, 2.0).reflectivity() == 0.5);
    CHECK_CLOSE(BeamSplitter::from_time(0.0, 3.0).reflectivity(), 1.0, 0.0);
    CHECK_CLOSE(BeamSplitter::from_time(1.0, 0.8).reflectivity(), std::pow(std::cos(0.4), 2), 1e-15);
    CHECK_THROWS_AS(BeamSplitter::from_time(INFINITY, 1.0), InvalidArgument);
}

TEST_CASE("boson Fock states")
{
    const BeamSplitter half(0.5);
    CHECK_VEC_CLOSE(boson_bs_distribution(1, 1, half).probabilities, vec({0.5, 0.0, 0.5}), 1e-15);
    CHECK_VEC_CLOSE(boson_bs_distribution(2, 2, half).probabilities, vec({0.375, 0.0, 0.25, 0.0, 0.375}), 1e-15);
    CHECK_VEC_CLOSE(boson_bs_distribution(1, 0, BeamSplitter(0.3)).probabilities, vec({0.7, 0.3}), 1e-15);
    CHECK_VEC_CLOSE(boson_bs_distribution(0, 1, BeamSplitter(0.3)).probabilities, vec({0.3, 0.7}), 1e-15);
    CHECK_VEC_CLOSE(boson_bs_distribution(3, 0, BeamSplitter(1.0)).probabilities, vec({0, 0, 0, 1}), 1e-15);
    CHECK_THROWS_AS(boson_output_distribution(-1, 1, half.matrix()), InvalidArgument);

    auto gen = testing::rng(51);
    for (int trial = 0; trial < 200; ++trial) {
        const int a = testing::uniform_int(gen, 0, 10);
        const int b = testing::uniform_int(gen, 0, 10);
        const BeamSplitter bs(testing::uniform_real(gen, 0.0, 1.0));
        const auto p = boson_bs_distribution(a, b, bs).probabilities;
        CHECK_CLOSE(p.sum(), 1.0, 1e-12);
        CHECK((p.array() >= 0.0).all());

        // real-orthogonal convention gives the same probabilities
        const double r = std::sqrt(bs.reflectivity());
        const double t = std::sqrt(bs.transmissivity());
        Eigen::Matrix2cd other;
        other << r, -t, t, r;
        CHECK_VEC_CLOSE(boson_output_distribution(a, b, other), p, 1e-12);
    }
}

TEST_CASE("component distributions")
{
    for (double R : {0.0, 0.3, 0.5, 1.0}) {
        const auto fermions = component_distribution({2, 2}, 2, BeamSplitter(R));
        CHECK_VEC_CLOSE(fermions.probabilities, vec({0, 0, 1, 0, 0}), 1e-15);
        CHECK_VEC_CLOSE(component_distribution({1, 1}, 1, BeamSplitter(R)).probabilities, vec({0, 1, 0}), 1e-15);
    }
    CHECK_VEC_CLOSE(component_distribution({2, 2}, 1, BeamSplitter(0.5)).probabilities, vec({0, 0.5, 0, 0.5, 0}),
                    1e-15);
    CHECK_THROWS_AS(component_distribution({2, 1}, 2, BeamSplitter(0.5)), InvalidArgument);
}

TEST_CASE("coboson counting: exact cases")
{
    const BeamSplitter half(0.5);
    const auto c = counting_statistics(make_uniform(4), {2, 2}, half);
    CHECK_VEC_CLOSE(c.probabilities, vec({1.0 / 16, 1.0 / 3, 5.0 / 24, 1.0 / 3, 1.0 / 16}), 1e-12);

    auto gen = testing::rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = testing::random_distribution(gen, testing::uniform_int(gen, 1, 10));
        const double P = purity(d);
        CHECK_VEC_CLOSE(counting_statistics(d, {1, 1}, half).probabilities, vec({(1 - P) / 2, P, (1 - P) / 2}),
                        1e-12);
    }

    CHECK_VEC_CLOSE(counting_statistics(make_uniform(6), {6, 6}, BeamSplitter(0.2)).probabilities,
                    vec({0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0}), 1e-12);
}

TEST_CASE("coboson counting: frozen reference values")
{
    for (const auto& f : frozen_cases()) {
        const SchmidtDistribution d(f.lambda);
        const BeamSplitter bs(f.R);
        CHECK_VEC_CLOSE(counting_statistics(d, {f.n_upper, f.n_lower}, bs).probabilities, f.expected, 1e-12);
        CHECK_VEC_CLOSE(oracle_counting_statistics(d, {f.n_upper, f.n_lower}, bs).probabilities, f.expected, 1e-12);
    }
}

TEST_CASE("N + 1 statistics")
{
    const BeamSplitter half(0.5);
    const auto u4 = make_uniform(4);
    const auto special = n_plus_one_statistics(u4, 2, half);
    CHECK_VEC_CLOSE(special.probabilities, counting_statistics(u4, {2, 1}, half).probabilities, 1e-12);
    CHECK_VEC_CLOSE(n_plus_one_statistics(SchmidtDistribution(vec({1.0})), 1, half).probabilities,
                    vec({0, 1, 0}), 1e-15);

    auto gen = testing::rng(57);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testing::uniform_int(gen, 1, 6);
        const auto d = testing::random_distribution(gen, testing::uniform_int(gen, n + 1, n + 8));
        const BeamSplitter bs(testing::uniform_real(gen, 0.0, 1.0));
        CHECK_VEC_CLOSE(n_plus_one_statistics(d, n, bs).probabilities, counting_statistics(d, {n, 1}, bs).probabilities,
                        1e-12);
    }
}

TEST_CASE("distinguishable reference")
{
    const BeamSplitter half(0.5);
    CHECK_VEC_CLOSE(distinguishable_reference({1, 0}, half).probabilities, vec({0.5, 0.5}), 1e-15);
    CHECK_VEC_CLOSE(distinguishable_reference({1, 1}, half).probabilities, vec({0.25, 0.5, 0.25}), 1e-15);
    CHECK_VEC_CLOSE(distinguishable_reference({6, 6}, half).probabilities, binomial_row(12, 0.5), 1e-14);
    // all upper particles stay at R = 1, lower ones stay below
    CHECK_VEC_CLOSE(distinguishable_reference({2, 1}, BeamSplitter(1.0)).probabilities, vec({0, 0, 1, 0}), 1e-15);
}

TEST_CASE("mirror symmetry at a balanced splitter")
{
    auto gen = testing::rng(59);
    const BeamSplitter half(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = testing::uniform_int(gen, 1, 5);
        const auto d = testing::random_distribution(gen, testing::uniform_int(gen, n, n + 6));
        const auto p = counting_statistics(d, {n, n}, half).probabilities;
        CHECK_VEC_CLOSE(p, mirrored(p), 1e-10);
    }
}

TEST_CASE("swapping the lattices")
{
    auto gen = testing::rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        const int n1 = testing::uniform_int(gen, 1, 5);
        const int n2 = testing::uniform_int(gen, 0, n1);
        const auto d = testing::random_distribution(gen, testing::uniform_int(gen, n1, n1 + 5));
        const double R = testing::uniform_real(gen, 0.0, 1.0);
        const auto forward = counting_statistics(d, {n1, n2}, BeamSplitter(R)).probabilities;
        const auto swapped = counting_statistics(d, {n2, n1}, BeamSplitter(R)).probabilities;
        CHECK_VEC_CLOSE(swapped, mirrored(forward), 1e-10);
        const auto flipped = counting_statistics(d, {n1, n2}, BeamSplitter(1.0 - R)).probabilities;
        CHECK_VEC_CLOSE(swapped, flipped, 1e-10);
    }
}

TEST_CASE("fermion pairs are deterministic")
{
    auto gen = testing::rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        const BeamSplitter bs(testing::uniform_real(gen, 0.0, 1.0));
        const auto p = oracle_counting_statistics(SchmidtDistribution(vec({1.0})), {1, 1}, bs).probabilities;
        CHECK_VEC_CLOSE(p, vec({0, 1, 0}), 1e-12);
    }
}

TEST_CASE("purity sweep")
{
    const BeamSplitter half(0.5);
    const FockPair pair(6, 6);

    const auto uniform_rows = purity_sweep(DistributionFamily::uniform, pair, half, {1.0 / 6.0, 1e-4, 0.5});
    REQUIRE(uniform_rows.size() == 3);
    CHECK(uniform_rows[0].purity == 1e-4);
    CHECK(uniform_rows[2].purity == 0.5);
    CHECK_FALSE(uniform_rows[2].counts.has_value());
    CHECK(uniform_rows[2].status.rfind("infeasible", 0) == 0);

    REQUIRE(uniform_rows[1].counts.has_value());
    CHECK_CLOSE((*uniform_rows[1].counts)[6], 1.0, 1e-12);
    REQUIRE(uniform_rows[0].counts.has_value());
    CHECK(testing::total_variation(uniform_rows[0].counts->probabilities,
                                   boson_bs_distribution(6, 6, half).probabilities) <= 1e-2);

    const auto peaked_rows = purity_sweep(DistributionFamily::peaked, pair, half, {0.01, 0.05});
    for (const auto& row : peaked_rows) {
        REQUIRE(row.weights.has_value());
        CHECK(row.weights->weights.tail(5).maxCoeff() < 1e-3);
        CHECK(row.status == "ok");
    }
}

TEST_CASE("counting statistics match the lattice oracle")
{
    auto gen = testing::rng(71);
    for (int trial = 0; trial < 60; ++trial) {
        const int S = testing::uniform_int(gen, 2, 8);
        const int n1 = testing::uniform_int(gen, 1, std::min(S, 4));
        const int n2 = testing::uniform_int(gen, 0, std::min(n1, 6 - n1));
        const auto d = testing::random_distribution(gen, S);
        const BeamSplitter bs(testing::uniform_real(gen, 0.0, 1.0));
        const bool swap = testing::uniform_int(gen, 0, 1) == 1;
        const FockPair pair = swap ? FockPair(n2, n1) : FockPair(n1, n2);
        CHECK_VEC_CLOSE(counting_statistics(d, pair, bs).probabilities,
                        oracle_counting_statistics(d, pair, bs).probabilities, 1e-10);
    }
}
