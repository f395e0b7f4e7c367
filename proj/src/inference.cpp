#include "cobosons/inference.hpp"

#include "cobosons/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cobosons {

MomentEnvelope envelope_for_next(double previous, int order)
{
    if (order < 2)
        throw InvalidArgument("envelopes start at order 2");
    if (order == 2)
        return {2, 0.0, 1.0, 1};
    const double m = order;
    return {order, std::pow(previous, (m - 1.0) / (m - 2.0)), std::pow(previous, m / (m - 1.0)), order - 1};
}

std::vector<MomentEnvelope> jensen_envelopes(const MomentVector& known, int target_order)
{
    const int top = known.max_order();
    if (top < 2)
        throw InvalidArgument("envelopes need at least M(2)");
    if (target_order <= top)
        throw InvalidArgument("target order must exceed the highest known order " + std::to_string(top));

    std::vector<MomentEnvelope> out;
    double lower = known.at(top);
    double upper = lower;
    for (int m = top + 1; m <= target_order; ++m) {
        const double md = m;
        lower = std::pow(lower, (md - 1.0) / (md - 2.0));
        upper = std::pow(upper, md / (md - 1.0));
        out.push_back({m, lower, upper, top});
    }
    return out;
}

NormalizedEnvelope normalize_envelope(const MomentEnvelope& envelope, double purity)
{
    const double scale = std::pow(purity, 0.5 * envelope.order);
    return {envelope.order, envelope.lower / scale, envelope.upper / scale};
}

MomentEstimate infer_moment(const CountingDistribution& observed, const MomentVector& known)
{
    const FockPair& pair = observed.pair;
    const int order = pair.total();
    if (order < 2)
        throw InvalidArgument("inference needs at least two cobosons");
    if (known.max_order() < order - 1)
        throw InvalidArgument("inferring M(" + std::to_string(order) + ") needs moments up to order " +
                              std::to_string(order - 1));
    if (observed.size() != order + 1)
        throw InvalidArgument("observed distribution has " + std::to_string(observed.size()) + " bins, expected " +
                              std::to_string(order + 1));

    if (pair.n2() == 0)
        throw IllConditioned("the (" + std::to_string(pair.upper()) + "," + std::to_string(pair.lower()) +
                             ") statistics are pure boson interference and carry no moment information");

    const BeamSplitter bs(observed.reflectivity);
    Eigen::VectorXd trial(order);
    trial.head(order - 1) = known.values().head(order - 1);
    auto forward = [&](double top) {
        trial[order - 1] = top;
        return counting_statistics_from_moments(MomentVector::unchecked(trial), pair, bs).probabilities;
    };

    const MomentEnvelope envelope = envelope_for_next(known.at(order - 1), order);
    double t0 = envelope.lower;
    double t1 = envelope.upper;
    if (t1 - t0 < 1e-8)
        t1 = t0 + 1.0;

    const Eigen::VectorXd f0 = forward(t0);
    const Eigen::VectorXd direction = (forward(t1) - f0) / (t1 - t0);
    if (direction.norm() < kMinSensitivity)
        throw IllConditioned("the (" + std::to_string(pair.upper()) + "," + std::to_string(pair.lower()) +
                             ") statistics do not depend on M(" + std::to_string(order) + ")");
    const Eigen::VectorXd offset = f0 - direction * t0;
    const double value = direction.dot(observed.probabilities - offset) / direction.squaredNorm();

    if (value < envelope.lower - kEnvelopeTolerance || value > envelope.upper + kEnvelopeTolerance)
        throw InconsistentData("inferred M(" + std::to_string(order) + ") = " + std::to_string(value) +
                               " lies outside the admissible interval [" + std::to_string(envelope.lower) + ", " +
                               std::to_string(envelope.upper) + "]");

    const double residual = (forward(value) - observed.probabilities).cwiseAbs().maxCoeff();
    return {order, value, residual, residual > kNoiseResidual};
}

namespace {

template <typename E>
[[noreturn]] void rethrow_annotated(const E& e, const FockPair& pair)
{
    throw E("observation (" + std::to_string(pair.upper()) + "," + std::to_string(pair.lower()) + "): " + e.what());
}

} // namespace

MomentVector infer_sequence(const std::vector<CountingDistribution>& observations)
{
    if (observations.empty())
        throw InvalidArgument("no observations given");

    std::vector<const CountingDistribution*> ordered;
    for (const auto& obs : observations)
        ordered.push_back(&obs);
    std::stable_sort(ordered.begin(), ordered.end(),
                     [](const auto* a, const auto* b) { return a->pair.total() < b->pair.total(); });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        const int expected = static_cast<int>(i) + 2;
        if (ordered[i]->pair.total() != expected)
            throw InvalidArgument("observation totals must run 2, 3, ... without gaps or repeats; missing total " +
                                  std::to_string(expected));
    }

    std::vector<double> values{1.0};
    for (const auto* obs : ordered) {
        const Eigen::Map<const Eigen::VectorXd> known_map(values.data(), static_cast<Eigen::Index>(values.size()));
        MomentEstimate estimate{};
        try {
            estimate = infer_moment(*obs, MomentVector::unchecked(known_map));
        } catch (const InvalidArgument& e) {
            rethrow_annotated(e, obs->pair);
        } catch (const DomainError& e) {
            rethrow_annotated(e, obs->pair);
        } catch (const IllConditioned& e) {
            rethrow_annotated(e, obs->pair);
        } catch (const InconsistentData& e) {
            rethrow_annotated(e, obs->pair);
        }
        // Keep noisy estimates inside the admissible interval so the next order stays well-posed.
        const MomentEnvelope envelope = envelope_for_next(values.back(), estimate.order);
        const double floor = std::max(envelope.lower, std::numeric_limits<double>::min());
        values.push_back(std::clamp(estimate.value, floor, envelope.upper));
    }

    try {
        return MomentVector(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size())));
    } catch (const InvalidArgument& e) {
        throw InconsistentData(std::string("recovered power sums are inconsistent: ") + e.what());
    }
}

} // namespace cobosons
