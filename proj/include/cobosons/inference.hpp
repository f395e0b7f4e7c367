// inference.hpp
// Power sums recovered from measured counting statistics, and the
// Jensen/Hoelder envelopes that bound the orders not yet measured.

#pragma once

#include <vector>

#include "cobosons/interference.hpp"
#include "cobosons/schmidt.hpp"

namespace cobosons {

/// Interval for M(order), chained from the measured M(source_order).
struct MomentEnvelope {
    int order;
    double lower;
    double upper;
    int source_order;
};

/// Envelope divided by P^{m/2}, which keeps the upper edge constant.
struct NormalizedEnvelope {
    int order;
    double lower;
    double upper;
};

struct MomentEstimate {
    int order;
    double value;
    double residual;        ///< max_m |forward(value) - observed|
    bool exceeds_tolerance; ///< residual above the noise threshold
};

inline constexpr double kExactResidual = 1e-8;
inline constexpr double kNoiseResidual = 1e-6;
inline constexpr double kEnvelopeTolerance = 1e-6;
inline constexpr double kMinSensitivity = 1e-14;

/// Admissible interval for M(order) given M(order - 1); (0, 1] for order 2.
MomentEnvelope envelope_for_next(double previous, int order);

/// Envelopes for orders max_order + 1 .. target_order, iterated from the highest known moment.
std::vector<MomentEnvelope> jensen_envelopes(const MomentVector& known, int target_order);

NormalizedEnvelope normalize_envelope(const MomentEnvelope& envelope, double purity);

/// Solves for M(N1 + N2) given the lower orders. The predicted statistics are
/// affine in the top moment; the direction is fixed from two trial values and
/// the observed distribution is projected onto it by least squares.
MomentEstimate infer_moment(const CountingDistribution& observed, const MomentVector& known);

/// Threads infer_moment through observations whose totals N1 + N2 run 2, 3, 4, ...
/// (any input order). Returns M(1)..M(max total).
MomentVector infer_sequence(const std::vector<CountingDistribution>& observations);

} // namespace cobosons
