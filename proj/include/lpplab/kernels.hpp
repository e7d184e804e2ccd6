#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpplab/geometry.hpp"
#include "lpplab/rng.hpp"

namespace lpp::kernels {

// Batched replica samplers for the Monte Carlo experiments. Each one runs a
// dynamic program by antidiagonals with rolling buffers, generating noise on
// the fly from the counter stream, so memory stays O(m+n) per replica and
// the inner loops vectorize. Every kernel reproduces the reference
// table-based computation bit-for-bit in distributional content (same noise
// indexing, same tie conventions); the unit tests compare them directly.

// out[k] = standard exponential at site index idx0 + k*stride (mod 2^64).
void fill_exponentials(std::uint64_t stream, std::uint64_t idx0, std::uint64_t stride,
                       std::int64_t len, double* out);

struct ExitSample {
    std::int64_t zhor = 0;
    std::int64_t zver = 0;
    double boundary_weight_sum = 0.0;  // sum of Exp(w) boundary weights up to the exit
    double ghat = 0.0;                 // stationary last-passage value Ghat^{w,z}(m,n)
};

// Axis exits of the geodesic from (0,0) to (m,n) in the two-parameter
// boundary model, via the exit decomposition
//   Ghat = max( max_k Shor(k)/w + R(k), max_l Sver(l)/(1-z) + C(l) )
// where R, C are bulk LPP values to the target from just above/right of the
// axes. One prepare() serves any number of (w, z) pairs on the same noise.
class StationaryAxisExitKernel {
  public:
    StationaryAxisExitKernel(std::int64_t m, std::int64_t n);

    void prepare(std::uint64_t seed, std::uint64_t replica);
    ExitSample exits(double w, double z) const;

    std::int64_t m() const { return m_; }
    std::int64_t n() const { return n_; }

  private:
    std::int64_t m_, n_;
    std::vector<double> row_to_target_;  // R[k], k in [1,m]
    std::vector<double> col_to_target_;  // C[l], l in [1,n]
    std::vector<double> shor_, sver_;    // raw-noise partial sums along the axes
    std::vector<double> cur_, nxt_, eta_;
};

// Crossing column of the bulk geodesic (1,1) -> (N,N) on the middle
// antidiagonal i + j = N + 1, via forward and backward half tables.
class MidpointKernel {
  public:
    explicit MidpointKernel(std::int64_t n);
    std::int64_t crossing_column(std::uint64_t seed, std::uint64_t replica);

  private:
    std::int64_t n_;
    std::vector<double> fwd_, cur_, bwd_, eta_;
};

// Competition interface of the bulk model: phi_1 = (1,1), each step moves
// toward the smaller of G(phi + e1), G(phi + e2); exact ties go horizontal.
// Writes phi_n^hor for n = 1..n_max into out (1-based slot n-1).
class BulkCifKernel {
  public:
    explicit BulkCifKernel(std::int64_t n_max);
    void run(std::uint64_t seed, std::uint64_t replica, std::span<std::int64_t> out_phi_hor);

  private:
    std::int64_t n_max_;
    std::vector<double> cur_, nxt_, eta_;
};

// Competition interface of the boundary model with rates (w, z):
// phihat_0 = (0,0), steps decided by the increments of Ghat^{w,z}.
class StationaryCifKernel {
  public:
    explicit StationaryCifKernel(std::int64_t n_max);
    void run(std::uint64_t seed, std::uint64_t replica, double w, double z,
             std::span<std::int64_t> out_phi_hor);

  private:
    std::int64_t n_max_;
    std::vector<double> cur_, nxt_, eta_;
};

// Reverse bulk LPP values G_v(m,n) for v in the window [1,k]x[1,k], from a
// single backward sweep. Feeds the pre-limit Busemann increment CDFs.
class BusemannWindowKernel {
  public:
    BusemannWindowKernel(std::int64_t m, std::int64_t n, std::int64_t window);
    // window grid over [1,window]x[1,window]
    void run(std::uint64_t seed, std::uint64_t replica, Grid<double>& out);

  private:
    std::int64_t m_, n_, window_;
    std::vector<double> cur_, nxt_, eta_;
};

// Lane-blocked variant of the axis-exit sampler: runs kLanes replicas in
// lockstep so the row-scan recursion vectorizes across replicas instead of
// across antidiagonals. Produces exactly the same exits as the scalar
// kernel on each (seed, replica).
class StationaryAxisExitKernelBatch {
  public:
    static constexpr int kLanes = 8;

    StationaryAxisExitKernelBatch(std::int64_t m, std::int64_t n);
    // replicas r0 .. r0 + kLanes - 1
    void prepare(std::uint64_t seed, std::uint64_t replica0);
    ExitSample exits(int lane, double w, double z) const;

  private:
    std::int64_t m_, n_;
    std::vector<double> row_;     // [ (m+2) * kLanes ], reverse DP rows in place
    std::vector<double> row_r_;   // R[k][lane]
    std::vector<double> col_c_;   // C[l][lane]
    std::vector<double> shor_;    // [ (m+1) * kLanes ]
    std::vector<double> sver_;
    std::uint64_t base_[kLanes] = {};
};

// Ghat^{w,z}(m,n) by a rolling forward row; no allocation beyond scratch.
class StationaryValueKernel {
  public:
    StationaryValueKernel(std::int64_t m, std::int64_t n);
    double value(std::uint64_t seed, std::uint64_t replica, double w, double z);

  private:
    std::int64_t m_, n_;
    std::vector<double> row_, eta_;
};

}  // namespace lpp::kernels
