#pragma once

#include "lpplab/lpp.hpp"

namespace lpp {

// Restricted last-passage value from nu_k to target. The first step is
// forced right when k > b and nu_k is the lower endpoint of a vertical edge
// of nu, and forced up when k < b and nu_k is the left endpoint of a
// horizontal edge; otherwise all up-right paths are admissible. Returns
// -inf when the admissible set is empty.
double restricted_last_passage(const Grid<double>& weights, const DownRightPath& nu,
                               std::int64_t k, Vertex target);

struct PathToPointResult {
    double value = kNegInf;
    ExitRecord exit;
};

// Path-to-point last-passage time from nu with the base vertex nu_b:
//   max_k { signed boundary partial sum from b to k } + restricted LPP from nu_k.
// The exit is the maximizer offset; with several maximizers the one of
// largest |k - b| wins, larger k breaking the remaining tie.
PathToPointResult path_to_point(const Grid<double>& weights, const DownRightPath& nu,
                                Vertex target);
PathToPointResult path_to_point(const WeightField& weights, Vertex target);

// Weights induced by a realized LPP table: increments of G along nu away
// from the base, original weights off nu. Appears in the induced
// path-to-point identity checked by the deterministic lemma suite.
Grid<double> induce_weights_along_path(const Grid<double>& weights, const LppTable& table,
                                       const DownRightPath& nu);

}  // namespace lpp
