#pragma once

#include <optional>
#include <string>
#include <variant>

#include "lpplab/geometry.hpp"
#include "lpplab/path.hpp"
#include "lpplab/rng.hpp"

namespace lpp {

// Boundary-condition recipes. Rates follow the coupling convention: a
// boundary vertex with rate r carries eta/r, so its weight is Exp(r).

// Bulk Exp(1) everywhere except Exp(w) on the horizontal axis, Exp(1-z) on
// the vertical axis, zero at the origin. w = z is the increment-stationary
// model.
struct TwoParamRecipe {
    double w;
    double z;
};

// Mixed rates: first k boundary sites use z-rates, the rest w-rates.
struct MixedRecipe {
    double w;
    double z;
    std::int64_t k;
};

// Stationary boundary placed northeast of the window [1,m]x[1,n]; weights
// live on [1,m+1]x[1,n+1] with zero at (m+1,n+1).
struct NortheastRecipe {
    double w;
    double z;
    std::int64_t m;
    std::int64_t n;
};

// Signed boundary along a down-right path: traversing nu away from the base,
// a vertex entered by a horizontal step carries +Exp(z), one entered by a
// vertical step carries -Exp(1-z); signs flip on the other side of the base.
struct PathInducedRecipe {
    DownRightPath nu;
    double z;
};

struct BulkOnlyRecipe {};

using BoundaryRecipe =
    std::variant<TwoParamRecipe, MixedRecipe, NortheastRecipe, PathInducedRecipe, BulkOnlyRecipe>;

std::string recipe_name(const BoundaryRecipe& recipe);

// Throws std::invalid_argument when parameters leave the admissible range.
void validate_recipe(const BoundaryRecipe& recipe, const Rect& rect);

struct WeightField {
    BoundaryRecipe recipe;
    std::uint64_t seed = 0;
    std::uint64_t replica = 0;
    Grid<double> values;

    const Rect& rect() const { return values.rect(); }
    double operator()(const Vertex& v) const { return values(v); }
    double operator()(std::int64_t i, std::int64_t j) const { return values(i, j); }
};

// Applies the recipe to one shared exponential noise field. Pure in
// (noise, recipe): repeated calls agree bitwise.
WeightField build_weights(const NoiseField& noise, const BoundaryRecipe& recipe);

}  // namespace lpp
