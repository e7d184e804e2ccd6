#include "lpplab/weights.hpp"

#include <cmath>
#include <unordered_map>

namespace lpp {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument("recipe: " + msg);
}

}  // namespace

std::string recipe_name(const BoundaryRecipe& recipe) {
    struct V {
        std::string operator()(const TwoParamRecipe&) const { return "two-param"; }
        std::string operator()(const MixedRecipe&) const { return "mixed"; }
        std::string operator()(const NortheastRecipe&) const { return "northeast"; }
        std::string operator()(const PathInducedRecipe&) const { return "path-induced"; }
        std::string operator()(const BulkOnlyRecipe&) const { return "bulk-only"; }
    };
    return std::visit(V{}, recipe);
}

void validate_recipe(const BoundaryRecipe& recipe, const Rect& rect) {
    if (const auto* r = std::get_if<TwoParamRecipe>(&recipe)) {
        require(r->w > 0.0, "two-param requires w > 0");
        require(r->z < 1.0, "two-param requires z < 1");
    } else if (const auto* r = std::get_if<MixedRecipe>(&recipe)) {
        require(r->w > 0.0 && r->w < 1.0, "mixed requires w in (0,1)");
        require(r->z > 0.0 && r->z < 1.0, "mixed requires z in (0,1)");
        require(r->k >= 0, "mixed requires k >= 0");
    } else if (const auto* r = std::get_if<NortheastRecipe>(&recipe)) {
        require(r->w > 0.0, "northeast requires w > 0");
        require(r->z < 1.0, "northeast requires z < 1");
        require(r->m >= 1 && r->n >= 1, "northeast requires m,n >= 1");
        require(Rect({1, 1}, {r->m + 1, r->n + 1}).contains(rect),
                "northeast field must live inside [1,m+1]x[1,n+1]");
    } else if (const auto* r = std::get_if<PathInducedRecipe>(&recipe)) {
        require(r->z > 0.0 && r->z < 1.0, "path-induced requires z in (0,1)");
        require(rect.contains(r->nu.bounding_rect()), "path-induced requires nu inside rect");
    }
}

WeightField build_weights(const NoiseField& noise, const BoundaryRecipe& recipe) {
    const Rect rect = noise.rect();
    validate_recipe(recipe, rect);

    WeightField field{recipe, noise.seed(), noise.replica(), Grid<double>(rect)};
    Grid<double>& w = field.values;

    auto fill_bulk = [&] {
        for (std::int64_t j = rect.lo.j; j <= rect.hi.j; ++j)
            for (std::int64_t i = rect.lo.i; i <= rect.hi.i; ++i) w(i, j) = noise.at({i, j});
    };

    if (std::holds_alternative<BulkOnlyRecipe>(recipe)) {
        fill_bulk();
        return field;
    }

    if (const auto* r = std::get_if<TwoParamRecipe>(&recipe)) {
        for (std::int64_t j = rect.lo.j; j <= rect.hi.j; ++j)
            for (std::int64_t i = rect.lo.i; i <= rect.hi.i; ++i) {
                const double eta = noise.at({i, j});
                if (i > 0 && j > 0)
                    w(i, j) = eta;
                else if (i > 0)
                    w(i, j) = eta / r->w;
                else if (j > 0)
                    w(i, j) = eta / (1.0 - r->z);
                else
                    w(i, j) = 0.0;  // the weight at the origin is irrelevant
            }
        return field;
    }

    if (const auto* r = std::get_if<MixedRecipe>(&recipe)) {
        for (std::int64_t j = rect.lo.j; j <= rect.hi.j; ++j)
            for (std::int64_t i = rect.lo.i; i <= rect.hi.i; ++i) {
                const double eta = noise.at({i, j});
                if (i > 0 && j > 0)
                    w(i, j) = eta;
                else if (i > 0)
                    w(i, j) = (i > r->k) ? eta / r->w : eta / r->z;
                else if (j > 0)
                    w(i, j) = (j > r->k) ? eta / (1.0 - r->w) : eta / (1.0 - r->z);
                else
                    w(i, j) = 0.0;
            }
        return field;
    }

    if (const auto* r = std::get_if<NortheastRecipe>(&recipe)) {
        for (std::int64_t j = rect.lo.j; j <= rect.hi.j; ++j)
            for (std::int64_t i = rect.lo.i; i <= rect.hi.i; ++i) {
                const double eta = noise.at({i, j});
                if (i <= r->m && j <= r->n)
                    w(i, j) = eta;
                else if (i <= r->m)  // j == n+1
                    w(i, j) = eta / r->w;
                else if (j <= r->n)  // i == m+1
                    w(i, j) = eta / (1.0 - r->z);
                else
                    w(i, j) = 0.0;  // (m+1, n+1)
            }
        return field;
    }

    const auto& r = std::get<PathInducedRecipe>(recipe);
    fill_bulk();
    const DownRightPath& nu = r.nu;
    const std::int64_t b = nu.base_index();
    const auto& steps = nu.steps();
    for (std::int64_t k = 1; k <= nu.length(); ++k) {
        const Vertex v = nu.at(k);
        const double eta = noise.at(v);
        if (k == b) {
            w(v) = 0.0;
            continue;
        }
        // step k (1-based) joins nu_k to nu_{k+1}
        if (k > b) {
            const Step into = steps[static_cast<std::size_t>(k - 2)];  // step entering nu_k
            w(v) = (into == Step::Right) ? eta / r.z : -eta / (1.0 - r.z);
        } else {
            const Step out = steps[static_cast<std::size_t>(k - 1)];  // step leaving nu_k
            w(v) = (out == Step::Right) ? -eta / r.z : eta / (1.0 - r.z);
        }
    }
    return field;
}

}  // namespace lpp
