#pragma once

#include <span>
#include <utility>

#include "lpplab/lpp.hpp"
#include "lpplab/path_to_point.hpp"
#include "lpplab/report.hpp"

namespace lpp {

struct LabConfig {
    std::uint64_t reps = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;  // 0 = hardware
};

// Burke property: along a down-right path the increments of Ghat^z are
// jointly independent with Exp(z) / Exp(1-z) marginals on right / down
// edges. KS per edge plus all pairwise correlations.
McReport verify_burke(const DownRightPath& nu, double z, const LabConfig& cfg,
                      double alpha = 0.01);

// Exponential moment identity: E[exp{(w-z) Ghat^{w,z}(m,n)}] = exp{L^{w,z}(m,n)}.
// Refuses parameter combinations whose estimator variance is uncontrolled:
// |w-z| (m/min(w,z) + n/(1-max(w,z))) must stay <= 8.
McReport verify_rains(double w, double z, std::int64_t m, std::int64_t n, const LabConfig& cfg);

// Variance identity in the boundary-weight-sum form:
//   Var[Ghat^z(m,n)] = -m/z^2 + n/(1-z)^2 + (2/z) E[sum of Exp(z) boundary
//   weights along the geodesic's horizontal-axis portion].
// The literal exit-count substitute (2/z) E[Zhor] is reported but not
// asserted; it fails the (1,1) desk check while the weight-sum form is exact.
McReport verify_variance(double z, std::int64_t m, std::int64_t n, const LabConfig& cfg);

struct ExitTailOptions {
    BoundaryRecipe recipe;  // two-param or path-induced
    DownRightPath nu;       // base vertex inside
    std::int64_t m = 0;     // target = base + (m, n)
    std::int64_t n = 0;
    std::vector<double> s_grid;
    bool minus_side = false;    // measure Z^- instead of Z^+
    bool strict_regime = false;  // require the theorem's parameter window
    double wilson_z = 3.0;

    ExitTailOptions(BoundaryRecipe r, DownRightPath path, std::int64_t m_, std::int64_t n_,
                    std::vector<double> grid)
        : recipe(std::move(r)), nu(std::move(path)), m(m_), n(n_), s_grid(std::move(grid)) {}
};

// Convenience: stationary model, axes L-path, base at the origin.
ExitTailOptions axes_exit_tail(double w, double z, std::int64_t m, std::int64_t n,
                               std::vector<double> s_grid);

// Exceedance curve of the exit point: p_hat(s) = P{Z > floor(s (m+n)^{2/3})},
// Wilson intervals, and the weighted fit of -ln p_hat on s^3.
TailCurve exit_tail(const ExitTailOptions& options, const LabConfig& cfg);

// First-step probabilities P{Zhor > 0}, P{Zver > 0} with the refined rate
// -ln p ~ s^3/6 at z = zeta + s/sigma reported alongside.
McReport first_step_prob(double z, std::int64_t m, std::int64_t n, const LabConfig& cfg);

// Same, for several z on one shared noise stream per replica (common random
// numbers; each estimate has the same marginal law as a standalone run).
std::vector<McReport> first_step_prob_multi(std::span<const double> zs, std::int64_t m,
                                            std::int64_t n, const LabConfig& cfg);

// Distributional identity for exit points of path-to-point LPP from the
// shifted L-path against the axis exits of the boundary model; two-sample
// KS for both the plus/hor and minus/ver pairs.
McReport verify_exit_identity(double z, std::int64_t p, std::int64_t q, std::int64_t m,
                              std::int64_t n, const LabConfig& cfg, double alpha = 0.01);

// Deterministic lemma suite on random small instances: exit-point
// monotonicity under boundary perturbations (maximal exits via full geodesic
// enumeration), the four crossing inequalities, the induced path-to-point
// identity, and the antidiagonal line-to-point reduction.
McReport check_deterministic_lemmas(std::uint64_t trials, std::uint64_t seed);

// Increment stationarity: Ghat^z(m+p, n+q) - Ghat^z(p, q) against an
// independent sample of Ghat^z(m, n), two-sample KS per shift.
McReport verify_stationarity(double z, std::int64_t m, std::int64_t n,
                             std::span<const std::pair<std::int64_t, std::int64_t>> shifts,
                             const LabConfig& cfg, double alpha = 0.01);

}  // namespace lpp
