#include "lpplab/lpp.hpp"

#include <algorithm>
#include <unordered_set>

namespace lpp {

LppTable last_passage_table(const Grid<double>& weights, Vertex origin, Rect rect) {
    if (!rect.contains(origin)) throw std::invalid_argument("last_passage_table: origin outside rect");
    if (!(origin == rect.lo))
        throw std::invalid_argument("last_passage_table: origin must be the lower-left corner");
    if (!weights.rect().contains(rect))
        throw std::invalid_argument("last_passage_table: rect outside weight field");

    LppTable table{origin, Grid<double>(rect)};
    Grid<double>& g = table.values;
    for (std::int64_t j = rect.lo.j; j <= rect.hi.j; ++j) {
        for (std::int64_t i = rect.lo.i; i <= rect.hi.i; ++i) {
            double best = kNegInf;
            if (i > rect.lo.i) best = g(i - 1, j);
            if (j > rect.lo.j) best = std::max(best, g(i, j - 1));
            if (i == rect.lo.i && j == rect.lo.j) best = 0.0;
            g(i, j) = weights(i, j) + best;
        }
    }
    return table;
}

LppTable last_passage_table(const WeightField& weights, Vertex origin, Rect rect) {
    return last_passage_table(weights.values, origin, rect);
}

double last_passage_value(const Grid<double>& weights, Vertex origin, Vertex target) {
    if (!target.dominates(origin))
        throw std::invalid_argument("last_passage_value: target must dominate origin");
    const std::int64_t width = target.i - origin.i + 1;
    std::vector<double> row(static_cast<std::size_t>(width));
    for (std::int64_t j = origin.j; j <= target.j; ++j) {
        for (std::int64_t i = origin.i; i <= target.i; ++i) {
            const std::size_t c = static_cast<std::size_t>(i - origin.i);
            double best = kNegInf;
            if (i > origin.i) best = row[c - 1];
            if (j > origin.j) best = std::max(best, row[c]);
            if (i == origin.i && j == origin.j) best = 0.0;
            row[c] = weights(i, j) + best;
        }
    }
    return row.back();
}

LppTable reverse_last_passage_table(const Grid<double>& weights, Rect rect) {
    if (!weights.rect().contains(rect))
        throw std::invalid_argument("reverse_last_passage_table: rect outside weight field");
    LppTable table{rect.hi, Grid<double>(rect)};
    Grid<double>& g = table.values;
    for (std::int64_t j = rect.hi.j; j >= rect.lo.j; --j) {
        for (std::int64_t i = rect.hi.i; i >= rect.lo.i; --i) {
            double best = kNegInf;
            if (i < rect.hi.i) best = g(i + 1, j);
            if (j < rect.hi.j) best = std::max(best, g(i, j + 1));
            if (i == rect.hi.i && j == rect.hi.j) best = 0.0;
            g(i, j) = weights(i, j) + best;
        }
    }
    return table;
}

UpRightPath geodesic(const LppTable& table, Vertex target) {
    const Rect& rect = table.rect();
    if (!rect.contains(target) || !target.dominates(table.origin))
        throw std::invalid_argument("geodesic: target must lie in the table and dominate origin");
    std::vector<Vertex> rev;
    Vertex v = target;
    while (!(v == table.origin)) {
        rev.push_back(v);
        if (v.i == table.origin.i) {
            v = v.offset(0, -1);
        } else if (v.j == table.origin.j) {
            v = v.offset(-1, 0);
        } else {
            const double left = table(v.i - 1, v.j);
            const double below = table(v.i, v.j - 1);
            v = (left >= below) ? v.offset(-1, 0) : v.offset(0, -1);
        }
    }
    rev.push_back(table.origin);
    std::reverse(rev.begin(), rev.end());
    return UpRightPath{std::move(rev)};
}

ExitRecord exit_record(const UpRightPath& pi, const DownRightPath& nu) {
    std::optional<std::int64_t> z;
    // scan from the end: the first hit is the last pi-vertex on nu
    for (auto it = pi.vertices.rbegin(); it != pi.vertices.rend(); ++it) {
        if (auto k = nu.index_of(*it)) {
            z = *k;
            break;
        }
    }
    if (!z) throw std::invalid_argument("exit_record: paths are disjoint");
    const std::int64_t b = nu.base_index();
    return ExitRecord{*z, std::max<std::int64_t>(*z - b, 0), std::max<std::int64_t>(b - *z, 0)};
}

AxisExits axis_exits_from_table(const LppTable& table, std::int64_t m, std::int64_t n) {
    const UpRightPath pi = geodesic(table, {m, n});
    AxisExits out;
    for (const Vertex& v : pi.vertices) {
        if (v.j == 0) out.zhor = std::max(out.zhor, v.i);
        if (v.i == 0) out.zver = std::max(out.zver, v.j);
    }
    return out;
}

AxisExits axis_exits(const WeightField& weights, std::int64_t m, std::int64_t n) {
    if (m < 0 || n < 0 || (m == 0 && n == 0))
        throw std::invalid_argument("axis_exits: need m,n >= 0, not both zero");
    const LppTable table = last_passage_table(weights, {0, 0}, Rect::corner(m, n));
    return axis_exits_from_table(table, m, n);
}

IncrementPair increments(const LppTable& reverse_table, std::int64_t i, std::int64_t j) {
    const Rect& rect = reverse_table.rect();
    if (!rect.contains({i, j})) throw std::invalid_argument("increments: index outside rect");
    IncrementPair out;
    out.hor = (i == rect.hi.i) ? kPosInf : reverse_table(i, j) - reverse_table(i + 1, j);
    out.ver = (j == rect.hi.j) ? kPosInf : reverse_table(i, j) - reverse_table(i, j + 1);
    return out;
}

}  // namespace lpp
