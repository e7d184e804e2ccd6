#pragma once

#include <bit>
#include <cstdint>

#include "lpplab/geometry.hpp"

namespace lpp {

// Counter-based noise: every site value is a pure function of
// (seed, replica, row-major site index), so any sub-rectangle can be
// regenerated bit-identically and replicas can run in parallel with no
// stored generator state.

namespace rng {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

// Per-(seed, replica) base so the per-site key is a single splitmix64 step.
inline std::uint64_t stream_base(std::uint64_t seed, std::uint64_t replica) {
    return mix64(seed + kGolden + mix64(replica + kGolden));
}

inline std::uint64_t site_bits(std::uint64_t base, std::uint64_t site_index) {
    return mix64(base + site_index * kGolden);
}

// 52 random bits -> (0,1); both u and 1-u are exact doubles.
inline double u01_from_bits(std::uint64_t h) {
    return (static_cast<double>(h >> 12) + 0.5) * 0x1p-52;
}

namespace detail {

constexpr double kLn2Hi = 6.93147180369123816490e-01;  // low word zeroed
constexpr double kLn2Lo = 1.90821492927058770002e-10;
constexpr double kSqrt2 = 1.41421356237309514547e+00;

// -ln(t) for t in (0, 1]. Branchless and built from +,-,*,/ only, so noise
// fields are bit-identical across toolchains (unlike std::log) and the
// batched samplers vectorize it.
inline double neg_log(double t) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(t);
    const double eraw = static_cast<double>(static_cast<std::int64_t>(bits >> 52)) - 1023.0;
    double m = std::bit_cast<double>((bits & 0xfffffffffffffULL) | 0x3ff0000000000000ULL);
    const double big = (m > kSqrt2) ? 1.0 : 0.0;
    m *= 1.0 - 0.5 * big;  // exact halving when selected
    const double de = eraw + big;
    // ln m = 2 atanh(s) with s in [-0.1716, 0.1716]
    const double s = (m - 1.0) / (m + 1.0);
    const double s2 = s * s;
    double p = 1.0 / 19.0;
    p = p * s2 + 1.0 / 17.0;
    p = p * s2 + 1.0 / 15.0;
    p = p * s2 + 1.0 / 13.0;
    p = p * s2 + 1.0 / 11.0;
    p = p * s2 + 1.0 / 9.0;
    p = p * s2 + 1.0 / 7.0;
    p = p * s2 + 1.0 / 5.0;
    p = p * s2 + 1.0 / 3.0;
    const double lnm = 2.0 * s + 2.0 * s * s2 * p;
    return -(de * kLn2Hi + (de * kLn2Lo + lnm));
}

}  // namespace detail

// Inverse-CDF map U -> -ln(1-U). Strictly positive for U in [0,1) as long
// as 1-U underflows nowhere, which holds for the 52-bit lattice used here.
inline double exponential_from_u01(double u) { return detail::neg_log(1.0 - u); }

inline double exponential_from_bits(std::uint64_t h) {
    const double u = u01_from_bits(h);
    return detail::neg_log(1.0 - u);
}

}  // namespace rng

// I.i.d. standard exponential field over a rectangle.
class NoiseField {
  public:
    NoiseField(std::uint64_t seed, std::uint64_t replica, Rect rect)
        : seed_(seed), replica_(replica), rect_(rect), base_(rng::stream_base(seed, replica)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t replica() const { return replica_; }
    const Rect& rect() const { return rect_; }
    std::uint64_t stream() const { return base_; }

    double at(const Vertex& v) const {
        return rng::exponential_from_bits(
            rng::site_bits(base_, static_cast<std::uint64_t>(rect_.index_of(v))));
    }

    double uniform_at(const Vertex& v) const {
        return rng::u01_from_bits(
            rng::site_bits(base_, static_cast<std::uint64_t>(rect_.index_of(v))));
    }

  private:
    std::uint64_t seed_;
    std::uint64_t replica_;
    Rect rect_;
    std::uint64_t base_;
};

// Derived seed for auxiliary draws (initial conditions, perturbations) that
// must not collide with the primary noise stream.
inline std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t tag) {
    return rng::mix64(seed ^ rng::mix64(tag + 0x5851f42d4c957f2dULL));
}

}  // namespace lpp
