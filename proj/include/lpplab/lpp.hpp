#pragma once

#include <limits>

#include "lpplab/path.hpp"
#include "lpplab/weights.hpp"

namespace lpp {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();

// Last-passage values G(v) over a rectangle whose lower-left corner is the
// path origin. G(v) = w(v) + max(G(v - e1), G(v - e2)), G(origin) = w(origin).
struct LppTable {
    Vertex origin;
    Grid<double> values;

    const Rect& rect() const { return values.rect(); }
    double operator()(const Vertex& v) const { return values(v); }
    double operator()(std::int64_t i, std::int64_t j) const { return values(i, j); }
};

// Fills the DP table over rect; requires origin == rect.lo.
LppTable last_passage_table(const WeightField& weights, Vertex origin, Rect rect);
LppTable last_passage_table(const Grid<double>& weights, Vertex origin, Rect rect);

// Value-only query via a rolling row, O(width) memory.
double last_passage_value(const Grid<double>& weights, Vertex origin, Vertex target);

// Reverse table: values(v) = max path weight from v to rect.hi.
LppTable reverse_last_passage_table(const Grid<double>& weights, Rect rect);

// Backtracks the maximizing path from target to the table origin. Chooses
// the predecessor with strictly larger G; an exact floating-point tie goes
// to the horizontal predecessor (ties have probability zero under
// continuous weights, the rule only pins down reproducibility).
UpRightPath geodesic(const LppTable& table, Vertex target);

struct ExitRecord {
    std::int64_t index = 0;   // Z: 1-based index into nu of the last shared vertex
    std::int64_t zplus = 0;   // (Z - b)^+
    std::int64_t zminus = 0;  // (b - Z)^+
};

// Exit point of pi from nu relative to nu's base vertex: the nu-index of the
// last pi-vertex lying on nu. Throws if the paths are disjoint.
ExitRecord exit_record(const UpRightPath& pi, const DownRightPath& nu);

struct AxisExits {
    std::int64_t zhor = 0;
    std::int64_t zver = 0;
};

// Distance the geodesic from (0,0) to (m,n) spends on each axis. At most one
// of the two is positive.
AxisExits axis_exits(const WeightField& weights, std::int64_t m, std::int64_t n);
AxisExits axis_exits_from_table(const LppTable& table, std::int64_t m, std::int64_t n);

struct IncrementPair {
    double hor = 0.0;  // G_{i,j}(target) - G_{i+1,j}(target); +inf at i = target.i
    double ver = 0.0;
};

// Increments of the LPP process with respect to the initial point, computed
// from one reverse table anchored at its top-right corner.
IncrementPair increments(const LppTable& reverse_table, std::int64_t i, std::int64_t j);

}  // namespace lpp
