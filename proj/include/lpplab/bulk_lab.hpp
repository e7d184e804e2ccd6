#pragma once

#include <span>
#include <utility>

#include "lpplab/analytic.hpp"
#include "lpplab/lpp.hpp"
#include "lpplab/report.hpp"
#include "lpplab/stationary_lab.hpp"

namespace lpp {

// Competition interface realized on a weight field: phi_1 = (1,1), each step
// moves toward the smaller of G(phi + e1), G(phi + e2) for the bulk LPP from
// (1,1). Exact floating-point ties move horizontally (probability zero).
struct CifPath {
    std::vector<Vertex> points;  // phi_1 .. phi_N
};

CifPath cif_simulate(const WeightField& weights, std::int64_t n_steps);

// Exit tails of the w=1, z=0 boundary model (equivalently bulk LPP shifted
// by (1,1)): transversal fluctuations of bulk geodesics across nu. The
// colinearity gap |zeta(m+i0+1, n+j0+1) - zeta(m,n)| is reported in params,
// not enforced.
TailCurve transversal_fluct(const DownRightPath& nu, std::int64_t m, std::int64_t n,
                            std::vector<double> s_grid, bool minus_side, const LabConfig& cfg);

// Standard deviation of the geodesic midpoint displacement across a grid of
// sizes; the log-log slope targets the transversal exponent 2/3.
McReport midpoint_fluctuation(std::span<const std::int64_t> n_grid, const LabConfig& cfg,
                              double slope_lo = 0.57, double slope_hi = 0.77);

// Pre-limit Busemann CDFs F_nu^{m,n} estimated across a ladder of sizes and
// compared against the limit busemann_cdf at z = zeta(m,n).
ConvergenceReport busemann_experiment(const DownRightPath& nu, IncrementKind kind,
                                      std::span<const double> s, std::span<const double> t,
                                      std::span<const std::pair<std::int64_t, std::int64_t>> sizes,
                                      const LabConfig& cfg, double box_eps = 0.5);

// Distributional convergence of the bulk competition interface direction:
// P{phi_n^hor <= n x} against zeta(x, 1-x), sup distance per n and the
// log-log decay slope (target -1/3 up to logs).
ConvergenceReport cif_experiment(std::span<const std::int64_t> n_grid,
                                 std::span<const double> x_grid, const LabConfig& cfg);

// Same for the stationary interface phihat^{w,z} against its limit law.
ConvergenceReport stationary_cif(double w, double z, std::span<const std::int64_t> n_grid,
                                 std::span<const double> x_grid, const LabConfig& cfg);

// Per-realization equivalences between the stationary interface position and
// the axis exit points:
//   phihat_n^hor < k  iff  Zhor(k, n-k+1) > 0,
//   phihat_n^hor > k  iff  Zver(k+1, n-k) > 0,
// together with the geodesic-tree membership of the interface neighbors.
McReport stationary_cif_equivalences(double w, double z, std::int64_t n,
                                     std::uint64_t realizations, std::uint64_t seed);

}  // namespace lpp
