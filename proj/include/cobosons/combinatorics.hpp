// combinatorics.hpp
// Exact binomial coefficients and cached factorials.

#pragma once

#include <array>
#include <cstdint>

#include "cobosons/errors.hpp"

namespace cobosons {

inline constexpr int kMaxFactorial = 60;

namespace detail {

constexpr std::array<std::array<std::uint64_t, kMaxFactorial + 1>, kMaxFactorial + 1> make_pascal()
{
    std::array<std::array<std::uint64_t, kMaxFactorial + 1>, kMaxFactorial + 1> table{};
    for (int n = 0; n <= kMaxFactorial; ++n) {
        table[n][0] = 1;
        for (int k = 1; k <= n; ++k)
            table[n][k] = table[n - 1][k - 1] + (k <= n - 1 ? table[n - 1][k] : 0);
    }
    return table;
}

constexpr std::array<double, kMaxFactorial + 1> make_factorials()
{
    std::array<double, kMaxFactorial + 1> f{};
    f[0] = 1.0;
    for (int n = 1; n <= kMaxFactorial; ++n)
        f[n] = f[n - 1] * n;
    return f;
}

inline constexpr auto kPascal = make_pascal();
inline constexpr auto kFactorials = make_factorials();

} // namespace detail

/// Binomial coefficient C(n, k) as a double; exact for n <= 60.
inline double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0.0;
    if (n > kMaxFactorial)
        throw ResourceLimit("binomial: n exceeds cached table");
    return static_cast<double>(detail::kPascal[n][k]);
}

inline double factorial(int n)
{
    if (n < 0 || n > kMaxFactorial)
        throw ResourceLimit("factorial: argument outside cached range");
    return detail::kFactorials[n];
}

} // namespace cobosons
