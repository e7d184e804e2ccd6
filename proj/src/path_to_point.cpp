#include "lpplab/path_to_point.hpp"

#include <algorithm>
#include <cmath>

namespace lpp {

namespace {

// Direction forced on the first step out of nu_k, if any.
enum class Forced { None, Right, Up };

Forced forced_step(const DownRightPath& nu, std::int64_t k) {
    const std::int64_t b = nu.base_index();
    const auto& steps = nu.steps();
    if (k > b && steps[static_cast<std::size_t>(k - 2)] == Step::Down) return Forced::Right;
    if (k < b && steps[static_cast<std::size_t>(k - 1)] == Step::Right) return Forced::Up;
    return Forced::None;
}

}  // namespace

double restricted_last_passage(const Grid<double>& weights, const DownRightPath& nu,
                               std::int64_t k, Vertex target) {
    const Vertex start = nu.at(k);
    if (!target.dominates(start)) return kNegInf;
    switch (forced_step(nu, k)) {
        case Forced::None:
            return last_passage_value(weights, start, target);
        case Forced::Right: {
            const Vertex next = start.offset(1, 0);
            if (!target.dominates(next)) return kNegInf;
            return weights(start) + last_passage_value(weights, next, target);
        }
        case Forced::Up: {
            const Vertex next = start.offset(0, 1);
            if (!target.dominates(next)) return kNegInf;
            return weights(start) + last_passage_value(weights, next, target);
        }
    }
    return kNegInf;
}

PathToPointResult path_to_point(const Grid<double>& weights, const DownRightPath& nu,
                                Vertex target) {
    bool dominates_some = false;
    for (const Vertex& v : nu.vertices())
        if (target.dominates(v)) {
            dominates_some = true;
            break;
        }
    if (!dominates_some)
        throw std::invalid_argument("path_to_point: target must dominate a vertex of nu");
    const std::int64_t b = nu.base_index();
    const std::int64_t len = nu.length();

    // signed partial sums along nu, exclusive of nu_k itself
    std::vector<double> prefix(static_cast<std::size_t>(len + 1), 0.0);
    auto pre = [&](std::int64_t k) -> double& { return prefix[static_cast<std::size_t>(k)]; };
    pre(b) = 0.0;
    for (std::int64_t k = b + 1; k <= len; ++k) pre(k) = pre(k - 1) + weights(nu.at(k - 1));
    for (std::int64_t k = b - 1; k >= 1; --k) pre(k) = pre(k + 1) + weights(nu.at(k + 1));

    std::vector<double> candidate(static_cast<std::size_t>(len + 1), kNegInf);
    double best = kNegInf;
    for (std::int64_t k = 1; k <= len; ++k) {
        const double r = restricted_last_passage(weights, nu, k, target);
        if (r == kNegInf) continue;
        candidate[static_cast<std::size_t>(k)] = pre(k) + r;
        best = std::max(best, candidate[static_cast<std::size_t>(k)]);
    }
    if (best == kNegInf) throw std::invalid_argument("path_to_point: no admissible exit");

    // The maximum is typically attained along a whole segment of indices
    // (every vertex the maximizing path shares with nu), whose candidate
    // values differ only by summation order; the tolerance keeps those
    // floating-point ties in the argmax set.
    const double tol = 1e-9 * std::max(1.0, std::fabs(best));
    std::int64_t kstar = b;
    bool have = false;
    for (std::int64_t k = 1; k <= len; ++k) {
        if (candidate[static_cast<std::size_t>(k)] < best - tol) continue;
        if (!have || std::llabs(k - b) > std::llabs(kstar - b) ||
            (std::llabs(k - b) == std::llabs(kstar - b) && k > kstar)) {
            kstar = k;
            have = true;
        }
    }

    PathToPointResult out;
    out.value = best;
    out.exit = ExitRecord{kstar, std::max<std::int64_t>(kstar - b, 0),
                          std::max<std::int64_t>(b - kstar, 0)};
    return out;
}

PathToPointResult path_to_point(const WeightField& weights, Vertex target) {
    const auto* recipe = std::get_if<PathInducedRecipe>(&weights.recipe);
    if (!recipe)
        throw std::invalid_argument("path_to_point: weight field must carry a path-induced recipe");
    return path_to_point(weights.values, recipe->nu, target);
}

Grid<double> induce_weights_along_path(const Grid<double>& weights, const LppTable& table,
                                       const DownRightPath& nu) {
    Grid<double> out = weights;
    const std::int64_t b = nu.base_index();
    for (std::int64_t k = 1; k <= nu.length(); ++k) {
        const Vertex v = nu.at(k);
        if (k == b)
            out(v) = 0.0;
        else if (k > b)
            out(v) = table(v) - table(nu.at(k - 1));
        else
            out(v) = table(v) - table(nu.at(k + 1));
    }
    return out;
}

}  // namespace lpp
