#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpp {

// Lattice vertex on the nonnegative quadrant. Comparisons are componentwise
// (partial order), so only ==, != and dominates() are provided.
struct Vertex {
    std::int64_t i = 0;  // column
    std::int64_t j = 0;  // row

    friend bool operator==(const Vertex& a, const Vertex& b) { return a.i == b.i && a.j == b.j; }
    friend bool operator!=(const Vertex& a, const Vertex& b) { return !(a == b); }

    bool dominates(const Vertex& o) const { return i >= o.i && j >= o.j; }

    Vertex offset(std::int64_t di, std::int64_t dj) const { return {i + di, j + dj}; }

    std::string str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

// Inclusive axis-aligned rectangle of lattice vertices.
struct Rect {
    Vertex lo;
    Vertex hi;

    Rect() = default;
    Rect(Vertex lo_, Vertex hi_) : lo(lo_), hi(hi_) {
        if (hi.i < lo.i || hi.j < lo.j) throw std::invalid_argument("Rect: empty rectangle");
    }
    static Rect corner(std::int64_t m, std::int64_t n) { return Rect({0, 0}, {m, n}); }

    std::int64_t width() const { return hi.i - lo.i + 1; }
    std::int64_t height() const { return hi.j - lo.j + 1; }
    std::int64_t cells() const { return width() * height(); }

    bool contains(const Vertex& v) const {
        return v.i >= lo.i && v.i <= hi.i && v.j >= lo.j && v.j <= hi.j;
    }
    bool contains(const Rect& r) const { return contains(r.lo) && contains(r.hi); }

    // Row-major site index within this rectangle; the canonical RNG site key.
    std::int64_t index_of(const Vertex& v) const {
        return (v.j - lo.j) * width() + (v.i - lo.i);
    }

    friend bool operator==(const Rect& a, const Rect& b) { return a.lo == b.lo && a.hi == b.hi; }
};

// Dense row-major storage over a Rect.
template <class T>
class Grid {
  public:
    Grid() = default;
    explicit Grid(Rect r, T fill = T{}) : rect_(r), width_(r.width()) {
        const std::int64_t n = r.cells();
        if (n > (std::int64_t(1) << 34))
            throw std::length_error("Grid: rectangle exceeds addressable size");
        data_.assign(static_cast<std::size_t>(n), fill);
    }

    const Rect& rect() const { return rect_; }

    T& operator()(const Vertex& v) { return data_[idx(v)]; }
    const T& operator()(const Vertex& v) const { return data_[idx(v)]; }
    T& operator()(std::int64_t i, std::int64_t j) { return (*this)(Vertex{i, j}); }
    const T& operator()(std::int64_t i, std::int64_t j) const { return (*this)(Vertex{i, j}); }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.rect_ == b.rect_ && a.data_ == b.data_;
    }

  private:
    std::size_t idx(const Vertex& v) const {
#ifndef NDEBUG
        if (!rect_.contains(v)) throw std::out_of_range("Grid: vertex outside rectangle " + v.str());
#endif
        return static_cast<std::size_t>((v.j - rect_.lo.j) * width_ + (v.i - rect_.lo.i));
    }

    Rect rect_{};
    std::int64_t width_ = 1;
    std::vector<T> data_;
};

}  // namespace lpp
