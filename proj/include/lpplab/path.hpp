#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpplab/geometry.hpp"

namespace lpp {

enum class Step : unsigned char { Right, Down };

// Staircase path with unit right and down steps plus a distinguished base
// vertex nu_b. Vertices are numbered 1..length() to match the usual index
// conventions for exit points.
class DownRightPath {
  public:
    DownRightPath(Vertex start, std::vector<Step> steps, std::int64_t base_index = 1)
        : start_(start), steps_(std::move(steps)), base_(base_index) {
        if (start.i < 0 || start.j < 0)
            throw std::invalid_argument("DownRightPath: start outside quadrant");
        if (base_ < 1 || base_ > length())
            throw std::invalid_argument("DownRightPath: base index out of range");
        vertices_.reserve(static_cast<std::size_t>(length()));
        Vertex v = start_;
        vertices_.push_back(v);
        for (Step s : steps_) {
            v = (s == Step::Right) ? v.offset(1, 0) : v.offset(0, -1);
            if (v.j < 0) throw std::invalid_argument("DownRightPath: leaves the quadrant");
            vertices_.push_back(v);
        }
    }

    std::int64_t length() const { return static_cast<std::int64_t>(steps_.size()) + 1; }
    std::int64_t base_index() const { return base_; }
    Vertex base_vertex() const { return at(base_); }
    const std::vector<Step>& steps() const { return steps_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }

    // 1-based
    Vertex at(std::int64_t k) const {
        if (k < 1 || k > length()) throw std::out_of_range("DownRightPath: index");
        return vertices_[static_cast<std::size_t>(k - 1)];
    }

    DownRightPath with_base(std::int64_t b) const { return DownRightPath(start_, steps_, b); }

    // Bounding rectangle of the path's vertices.
    Rect bounding_rect() const {
        Vertex last = vertices_.back();
        return Rect({start_.i, last.j}, {last.i, start_.j});
    }

    // 1-based index of v on the path, if present.
    std::optional<std::int64_t> index_of(const Vertex& v) const {
        // down-right: column determines the candidate range
        if (v.i < start_.i || v.i > vertices_.back().i) return std::nullopt;
        for (std::int64_t k = 1; k <= length(); ++k)
            if (at(k) == v) return k;
        return std::nullopt;
    }

    friend bool operator==(const DownRightPath& a, const DownRightPath& b) {
        return a.start_ == b.start_ && a.steps_ == b.steps_ && a.base_ == b.base_;
    }

  private:
    Vertex start_;
    std::vector<Step> steps_;
    std::int64_t base_;
    std::vector<Vertex> vertices_;
};

struct StepSets {
    std::vector<std::int64_t> right;  // R_nu: left endpoints of horizontal edges
    std::vector<std::int64_t> down;   // D_nu: lower endpoints of vertical edges
};

// R_nu = { k in [len-1] : step k is Right }, D_nu = { k in [len]\{1} : step k-1 is Down }.
inline StepSets path_steps(const DownRightPath& nu) {
    StepSets out;
    const auto& steps = nu.steps();
    for (std::int64_t k = 1; k <= static_cast<std::int64_t>(steps.size()); ++k) {
        if (steps[static_cast<std::size_t>(k - 1)] == Step::Right)
            out.right.push_back(k);
        else
            out.down.push_back(k + 1);
    }
    return out;
}

// Membership test for V_nu: vertices inside the path's frame that dominate
// some vertex of nu. Geodesics from the frame origin to V_nu must cross nu.
inline bool reachable_contains(const DownRightPath& nu, const Vertex& v) {
    const Vertex first = nu.vertices().front();
    const Vertex last = nu.vertices().back();
    if (v.i > last.i || v.j > first.j) return false;
    for (const Vertex& u : nu.vertices())
        if (v.dominates(u)) return true;
    return false;
}

// L-shaped path from (p,n) to (m,q) through the corner (p,q).
inline DownRightPath l_shaped(std::int64_t p, std::int64_t q, std::int64_t m, std::int64_t n) {
    if (p > m || q > n) throw std::invalid_argument("l_shaped: requires p <= m and q <= n");
    std::vector<Step> steps;
    steps.reserve(static_cast<std::size_t>((n - q) + (m - p)));
    for (std::int64_t k = 0; k < n - q; ++k) steps.push_back(Step::Down);
    for (std::int64_t k = 0; k < m - p; ++k) steps.push_back(Step::Right);
    // corner (p,q) sits at index n-q+1
    return DownRightPath({p, n}, std::move(steps), n - q + 1);
}

// Path grammar "i,j:SSSS@b" with S in {R,D}; "@b" optional (default 1).
// Example: "0,3:DRRD@2".
DownRightPath parse_path(const std::string& text);
std::string format_path(const DownRightPath& nu);

// Up-right path as a plain vertex sequence; consecutive vertices differ by
// (1,0) or (0,1).
struct UpRightPath {
    std::vector<Vertex> vertices;

    std::int64_t length() const { return static_cast<std::int64_t>(vertices.size()); }
    bool valid() const {
        for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
            const Vertex d{vertices[k + 1].i - vertices[k].i, vertices[k + 1].j - vertices[k].j};
            if (!((d.i == 1 && d.j == 0) || (d.i == 0 && d.j == 1))) return false;
        }
        return true;
    }
};

}  // namespace lpp
