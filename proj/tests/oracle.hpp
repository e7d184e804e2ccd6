#pragma once

// Test-only brute-force oracles, independent of the DP implementation:
// exhaustive path enumeration with sums accumulated in path order.

#include <functional>
#include <limits>
#include <vector>

#include "lpplab/geometry.hpp"
#include "lpplab/path.hpp"

namespace oracle {

using lpp::Grid;
using lpp::Vertex;

inline void enumerate_paths(const Grid<double>& w, Vertex from, Vertex to,
                            const std::function<void(const std::vector<Vertex>&, double)>& visit,
                            std::vector<Vertex>& stack, double sum) {
    stack.push_back(from);
    sum += w(from);
    if (from == to) {
        visit(stack, sum);
    } else {
        if (from.i < to.i) enumerate_paths(w, from.offset(1, 0), to, visit, stack, sum);
        if (from.j < to.j) enumerate_paths(w, from.offset(0, 1), to, visit, stack, sum);
    }
    stack.pop_back();
}

// Maximum path sum from `from` to `to`; -inf when to does not dominate from.
inline double best_path_sum(const Grid<double>& w, Vertex from, Vertex to) {
    if (!to.dominates(from)) return -std::numeric_limits<double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Vertex> stack;
    enumerate_paths(
        w, from, to,
        [&](const std::vector<Vertex>&, double sum) {
            if (sum > best) best = sum;
        },
        stack, 0.0);
    return best;
}

// Maximum over admissible paths with a forced first step.
inline double best_path_sum_forced(const Grid<double>& w, Vertex from, Vertex step, Vertex to) {
    if (!to.dominates(step)) return -std::numeric_limits<double>::infinity();
    return w(from) + best_path_sum(w, step, to);
}

// All maximizing paths (within tol of the max).
inline std::vector<std::vector<Vertex>> all_geodesics(const Grid<double>& w, Vertex from,
                                                      Vertex to, double tol = 0.0) {
    const double best = best_path_sum(w, from, to);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> stack;
    enumerate_paths(
        w, from, to,
        [&](const std::vector<Vertex>& path, double sum) {
            if (sum >= best - tol) out.push_back(path);
        },
        stack, 0.0);
    return out;
}

}  // namespace oracle
