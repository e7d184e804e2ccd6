#include "lpplab/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace lpp::kernels {

void fill_exponentials(std::uint64_t stream, std::uint64_t idx0, std::uint64_t stride,
                       std::int64_t len, double* out) {
    const std::uint64_t key_a = stream + idx0 * rng::kGolden;
    const std::uint64_t key_b = stride * rng::kGolden;
#pragma omp simd
    for (std::int64_t k = 0; k < len; ++k) {
        const std::uint64_t x = key_a + key_b * static_cast<std::uint64_t>(k);
        out[k] = rng::exponential_from_bits(rng::mix64(x));
    }
}

namespace {

// max-of-neighbors helpers shared by the sweeps; slots outside the valid
// range hold 0, which never wins against genuine nonnegative LPP values.
inline void reverse_step(const double* eta, const double* prev, double* cur, std::int64_t ilo,
                         std::int64_t ihi) {
#pragma omp simd
    for (std::int64_t i = ilo; i <= ihi; ++i) {
        const double up = prev[i];      // (i, j+1)
        const double right = prev[i + 1];  // (i+1, j)
        cur[i] = eta[i - ilo] + (up > right ? up : right);
    }
}

inline void forward_step(const double* eta, const double* prev, double* cur, std::int64_t ilo,
                         std::int64_t ihi) {
#pragma omp simd
    for (std::int64_t i = ilo; i <= ihi; ++i) {
        const double below = prev[i];     // (i, j-1)
        const double left = prev[i - 1];  // (i-1, j)
        cur[i] = eta[i - ilo] + (below > left ? below : left);
    }
}

}  // namespace

StationaryAxisExitKernel::StationaryAxisExitKernel(std::int64_t m, std::int64_t n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw std::invalid_argument("StationaryAxisExitKernel: need m,n >= 1");
    row_to_target_.assign(static_cast<std::size_t>(m + 1), 0.0);
    col_to_target_.assign(static_cast<std::size_t>(n + 1), 0.0);
    shor_.assign(static_cast<std::size_t>(m + 1), 0.0);
    sver_.assign(static_cast<std::size_t>(n + 1), 0.0);
    cur_.assign(static_cast<std::size_t>(m + 3), 0.0);
    nxt_.assign(static_cast<std::size_t>(m + 3), 0.0);
    eta_.assign(static_cast<std::size_t>(std::max(m, n) + 2), 0.0);
}

void StationaryAxisExitKernel::prepare(std::uint64_t seed, std::uint64_t replica) {
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::uint64_t W = static_cast<std::uint64_t>(m_ + 1);  // frame [0,m]x[0,n]

    // raw-noise partial sums along the axes: site (i,0) has index i,
    // site (0,j) has index j*W
    fill_exponentials(stream, 1, 1, m_, eta_.data());
    for (std::int64_t k = 1; k <= m_; ++k)
        shor_[static_cast<std::size_t>(k)] = shor_[static_cast<std::size_t>(k - 1)] +
                                             eta_[static_cast<std::size_t>(k - 1)];
    fill_exponentials(stream, W, W, n_, eta_.data());
    for (std::int64_t l = 1; l <= n_; ++l)
        sver_[static_cast<std::size_t>(l)] = sver_[static_cast<std::size_t>(l - 1)] +
                                             eta_[static_cast<std::size_t>(l - 1)];

    // reverse bulk DP over [1,m]x[1,n] toward (m,n)
    std::fill(cur_.begin(), cur_.end(), 0.0);
    std::fill(nxt_.begin(), nxt_.end(), 0.0);
    double* cur = cur_.data();
    double* nxt = nxt_.data();
    for (std::int64_t d = m_ + n_; d >= 2; --d) {
        const std::int64_t ilo = std::max<std::int64_t>(1, d - n_);
        const std::int64_t ihi = std::min<std::int64_t>(m_, d - 1);
        const std::uint64_t idx0 =
            static_cast<std::uint64_t>(d - ilo) * W + static_cast<std::uint64_t>(ilo);
        fill_exponentials(stream, idx0, 1 - W, ihi - ilo + 1, eta_.data());
        reverse_step(eta_.data(), nxt, cur, ilo, ihi);
        cur[ilo - 1] = 0.0;
        cur[ihi + 1] = 0.0;
        if (ihi == d - 1) row_to_target_[static_cast<std::size_t>(d - 1)] = cur[d - 1];  // (d-1, 1)
        if (ilo == 1 && d - 1 <= n_) col_to_target_[static_cast<std::size_t>(d - 1)] = cur[1];
        std::swap(cur, nxt);
    }
}

ExitSample StationaryAxisExitKernel::exits(double w, double z) const {
    double hbest = -std::numeric_limits<double>::infinity();
    double vbest = hbest;
    std::int64_t hk = 0, vl = 0;
    const double invw = 1.0 / w;
    const double invz1 = 1.0 / (1.0 - z);
    for (std::int64_t k = 1; k <= m_; ++k) {
        const double v = shor_[static_cast<std::size_t>(k)] * invw +
                         row_to_target_[static_cast<std::size_t>(k)];
        if (v >= hbest) {
            hbest = v;
            hk = k;
        }
    }
    for (std::int64_t l = 1; l <= n_; ++l) {
        const double v = sver_[static_cast<std::size_t>(l)] * invz1 +
                         col_to_target_[static_cast<std::size_t>(l)];
        if (v >= vbest) {
            vbest = v;
            vl = l;
        }
    }
    ExitSample out;
    out.ghat = std::max(hbest, vbest);
    if (hbest >= vbest) {  // ties go to the horizontal side, cf. geodesic()
        out.zhor = hk;
        out.boundary_weight_sum = shor_[static_cast<std::size_t>(hk)] * invw;
    } else {
        out.zver = vl;
    }
    return out;
}

MidpointKernel::MidpointKernel(std::int64_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("MidpointKernel: need N >= 2");
    fwd_.assign(static_cast<std::size_t>(n + 3), 0.0);
    cur_.assign(static_cast<std::size_t>(n + 3), 0.0);
    bwd_.assign(static_cast<std::size_t>(n + 3), 0.0);
    eta_.assign(static_cast<std::size_t>(n + 2), 0.0);
}

std::int64_t MidpointKernel::crossing_column(std::uint64_t seed, std::uint64_t replica) {
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::uint64_t W = static_cast<std::uint64_t>(n_);  // frame [1,n]x[1,n]
    auto site = [&](std::int64_t i, std::int64_t j) {
        return static_cast<std::uint64_t>(j - 1) * W + static_cast<std::uint64_t>(i - 1);
    };
    const std::int64_t mid = n_ + 1;

    // forward to the middle antidiagonal
    std::fill(fwd_.begin(), fwd_.end(), 0.0);
    std::fill(cur_.begin(), cur_.end(), 0.0);
    double* prev = fwd_.data();
    double* cur = cur_.data();
    for (std::int64_t d = 2; d <= mid; ++d) {
        const std::int64_t ilo = 1;
        const std::int64_t ihi = d - 1;
        fill_exponentials(stream, site(ilo, d - ilo), 1 - W, ihi - ilo + 1, eta_.data());
        forward_step(eta_.data(), prev, cur, ilo, ihi);
        std::swap(prev, cur);
    }
    double* fwd_mid = prev;

    // backward to the middle antidiagonal
    std::fill(bwd_.begin(), bwd_.end(), 0.0);
    double* bprev = bwd_.data();
    double* bcur = cur;
    std::fill(bcur, bcur + n_ + 3, 0.0);
    for (std::int64_t d = 2 * n_; d >= mid; --d) {
        const std::int64_t ilo = d - n_;
        const std::int64_t ihi = n_;
        fill_exponentials(stream, site(ilo, d - ilo), 1 - W, ihi - ilo + 1, eta_.data());
        reverse_step(eta_.data(), bprev, bcur, ilo, ihi);
        std::swap(bprev, bcur);
    }

    // value through (i, mid - i) counts eta there twice
    fill_exponentials(stream, site(1, mid - 1), 1 - W, n_, eta_.data());
    double best = -1e300;
    std::int64_t ibest = 1;
    for (std::int64_t i = 1; i <= n_; ++i) {
        const double v = fwd_mid[i] + bprev[i] - eta_[static_cast<std::size_t>(i - 1)];
        if (v >= best) {
            best = v;
            ibest = i;
        }
    }
    return ibest;
}

BulkCifKernel::BulkCifKernel(std::int64_t n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("BulkCifKernel: need n_max >= 1");
    cur_.assign(static_cast<std::size_t>(n_max + 4), 0.0);
    nxt_.assign(static_cast<std::size_t>(n_max + 4), 0.0);
    eta_.assign(static_cast<std::size_t>(n_max + 3), 0.0);
}

void BulkCifKernel::run(std::uint64_t seed, std::uint64_t replica,
                        std::span<std::int64_t> out_phi_hor) {
    assert(static_cast<std::int64_t>(out_phi_hor.size()) >= n_max_);
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::int64_t M = n_max_ + 1;  // frame [1,M]x[1,M]
    const std::uint64_t W = static_cast<std::uint64_t>(M);
    auto site = [&](std::int64_t i, std::int64_t j) {
        return static_cast<std::uint64_t>(j - 1) * W + static_cast<std::uint64_t>(i - 1);
    };
    std::fill(cur_.begin(), cur_.end(), 0.0);
    std::fill(nxt_.begin(), nxt_.end(), 0.0);
    double* prev = nxt_.data();
    double* cur = cur_.data();
    std::int64_t phi_h = 1, phi_v = 1;
    out_phi_hor[0] = 1;  // phi_1 = (1,1)
    for (std::int64_t d = 2; d <= n_max_ + 1; ++d) {
        const std::int64_t ilo = std::max<std::int64_t>(1, d - M);
        const std::int64_t ihi = std::min<std::int64_t>(M, d - 1);
        fill_exponentials(stream, site(ilo, d - ilo), 1 - W, ihi - ilo + 1, eta_.data());
        forward_step(eta_.data(), prev, cur, ilo, ihi);
        if (d >= 3) {
            // the move from phi_{d-2} to phi_{d-1} compares level-d values
            const double hor_candidate = cur[phi_h + 1];  // G(phi_h+1, phi_v)
            const double ver_candidate = cur[phi_h];      // G(phi_h, phi_v+1)
            if (hor_candidate <= ver_candidate)
                ++phi_h;
            else
                ++phi_v;
            out_phi_hor[static_cast<std::size_t>(d - 2)] = phi_h;
        }
        std::swap(prev, cur);
    }
}

StationaryCifKernel::StationaryCifKernel(std::int64_t n_max) : n_max_(n_max) {
    if (n_max < 1) throw std::invalid_argument("StationaryCifKernel: need n_max >= 1");
    cur_.assign(static_cast<std::size_t>(n_max + 5), 0.0);
    nxt_.assign(static_cast<std::size_t>(n_max + 5), 0.0);
    eta_.assign(static_cast<std::size_t>(n_max + 4), 0.0);
}

void StationaryCifKernel::run(std::uint64_t seed, std::uint64_t replica, double w, double z,
                              std::span<std::int64_t> out_phi_hor) {
    assert(static_cast<std::int64_t>(out_phi_hor.size()) >= n_max_);
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::int64_t M = n_max_ + 1;  // frame [0,M]x[0,M]
    const std::uint64_t W = static_cast<std::uint64_t>(M + 1);
    auto site = [&](std::int64_t i, std::int64_t j) {
        return static_cast<std::uint64_t>(j) * W + static_cast<std::uint64_t>(i);
    };
    const double invw = 1.0 / w;
    const double invz1 = 1.0 / (1.0 - z);

    // buffers indexed with offset +1 so slot for i = -1 exists and stays 0
    std::fill(cur_.begin(), cur_.end(), 0.0);
    std::fill(nxt_.begin(), nxt_.end(), 0.0);
    double* prev = nxt_.data() + 1;
    double* cur = cur_.data() + 1;
    std::int64_t phi_h = 0, phi_v = 0;
    // d = 0: Ghat(0,0) = 0 already in place (prev[0] = 0)
    for (std::int64_t d = 1; d <= n_max_ + 1; ++d) {
        const std::int64_t ilo = std::max<std::int64_t>(0, d - M);
        const std::int64_t ihi = std::min<std::int64_t>(M, d);
        fill_exponentials(stream, site(ilo, d - ilo), 1 - W, ihi - ilo + 1, eta_.data());
        forward_step(eta_.data(), prev, cur, ilo, ihi);
        // boundary rates on the axes; origin handled by d >= 1
        if (ilo == 0) cur[0] = prev[0] + eta_[0] * invz1;            // (0, d)
        if (ihi == d) cur[d] = prev[d - 1] + eta_[ihi - ilo] * invw;  // (d, 0)
        // phihat at step n = d-1 moves toward the smaller increment
        const double hor_candidate = cur[phi_h + 1];
        const double ver_candidate = cur[phi_h];
        if (hor_candidate <= ver_candidate)
            ++phi_h;
        else
            ++phi_v;
        out_phi_hor[static_cast<std::size_t>(d - 1)] = phi_h;
        std::swap(prev, cur);
    }
}

BusemannWindowKernel::BusemannWindowKernel(std::int64_t m, std::int64_t n, std::int64_t window)
    : m_(m), n_(n), window_(window) {
    if (m < 2 || n < 2) throw std::invalid_argument("BusemannWindowKernel: need m,n >= 2");
    if (window < 1 || window > std::min(m, n) - 1)
        throw std::invalid_argument("BusemannWindowKernel: window out of range");
    cur_.assign(static_cast<std::size_t>(m + 3), 0.0);
    nxt_.assign(static_cast<std::size_t>(m + 3), 0.0);
    eta_.assign(static_cast<std::size_t>(m + 2), 0.0);
}

void BusemannWindowKernel::run(std::uint64_t seed, std::uint64_t replica, Grid<double>& out) {
    const Rect want({1, 1}, {window_ + 1, window_ + 1});
    if (!(out.rect() == want)) out = Grid<double>(want);
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::uint64_t W = static_cast<std::uint64_t>(m_);  // frame [1,m]x[1,n]
    auto site = [&](std::int64_t i, std::int64_t j) {
        return static_cast<std::uint64_t>(j - 1) * W + static_cast<std::uint64_t>(i - 1);
    };
    std::fill(cur_.begin(), cur_.end(), 0.0);
    std::fill(nxt_.begin(), nxt_.end(), 0.0);
    double* cur = cur_.data();
    double* prev = nxt_.data();
    for (std::int64_t d = m_ + n_; d >= 2; --d) {
        const std::int64_t ilo = std::max<std::int64_t>(1, d - n_);
        const std::int64_t ihi = std::min<std::int64_t>(m_, d - 1);
        fill_exponentials(stream, site(ilo, d - ilo), 1 - W, ihi - ilo + 1, eta_.data());
        reverse_step(eta_.data(), prev, cur, ilo, ihi);
        cur[ilo - 1] = 0.0;
        cur[ihi + 1] = 0.0;
        const std::int64_t wlo = std::max(ilo, d - (window_ + 1));
        const std::int64_t whi = std::min(ihi, window_ + 1);
        for (std::int64_t i = wlo; i <= whi; ++i)
            if (d - i <= window_ + 1) out(i, d - i) = cur[i];
        std::swap(cur, prev);
    }
}


StationaryAxisExitKernelBatch::StationaryAxisExitKernelBatch(std::int64_t m, std::int64_t n)
    : m_(m), n_(n) {
    if (m < 1 || n < 1) throw std::invalid_argument("StationaryAxisExitKernelBatch: need m,n >= 1");
    row_.assign(static_cast<std::size_t>((m + 2) * kLanes), 0.0);
    row_r_.assign(static_cast<std::size_t>((m + 1) * kLanes), 0.0);
    col_c_.assign(static_cast<std::size_t>((n + 1) * kLanes), 0.0);
    shor_.assign(static_cast<std::size_t>((m + 1) * kLanes), 0.0);
    sver_.assign(static_cast<std::size_t>((n + 1) * kLanes), 0.0);
}

void StationaryAxisExitKernelBatch::prepare(std::uint64_t seed, std::uint64_t replica0) {
    const std::uint64_t W = static_cast<std::uint64_t>(m_ + 1);
    for (int l = 0; l < kLanes; ++l) base_[l] = rng::stream_base(seed, replica0 + l);

    // axis partial sums of raw noise
    double acc[kLanes] = {};
    for (std::int64_t i = 1; i <= m_; ++i) {
        const std::uint64_t step = static_cast<std::uint64_t>(i) * rng::kGolden;
#pragma omp simd
        for (int l = 0; l < kLanes; ++l) {
            acc[l] += rng::exponential_from_bits(rng::mix64(base_[l] + step));
            shor_[static_cast<std::size_t>(i) * kLanes + l] = acc[l];
        }
    }
    for (int l = 0; l < kLanes; ++l) acc[l] = 0.0;
    for (std::int64_t j = 1; j <= n_; ++j) {
        const std::uint64_t step = static_cast<std::uint64_t>(j) * W * rng::kGolden;
#pragma omp simd
        for (int l = 0; l < kLanes; ++l) {
            acc[l] += rng::exponential_from_bits(rng::mix64(base_[l] + step));
            sver_[static_cast<std::size_t>(j) * kLanes + l] = acc[l];
        }
    }

    // reverse bulk DP row by row, in place: after processing row j, row_[i]
    // holds the bulk LPP value from (i, j) to (m, n)
    std::fill(row_.begin(), row_.end(), 0.0);
    double* row = row_.data();
    for (std::int64_t j = n_; j >= 1; --j) {
        const std::uint64_t row_key = static_cast<std::uint64_t>(j) * W * rng::kGolden;
        for (std::int64_t i = m_; i >= 1; --i) {
            const std::uint64_t key = row_key + static_cast<std::uint64_t>(i) * rng::kGolden;
            double* cur = row + static_cast<std::size_t>(i) * kLanes;
            const double* right = cur + kLanes;
#pragma omp simd
            for (int l = 0; l < kLanes; ++l) {
                const double eta = rng::exponential_from_bits(rng::mix64(base_[l] + key));
                const double up = cur[l];       // (i, j+1), previous row value
                const double rt = right[l];     // (i+1, j), already updated
                cur[l] = eta + (up > rt ? up : rt);
            }
        }
        // C(j) = value at (1, j), fresh after this row's sweep
        for (int l = 0; l < kLanes; ++l)
            col_c_[static_cast<std::size_t>(j) * kLanes + l] = row[kLanes + l];
    }
    // R(k) = value at (k, 1): the final state of the rolling row
    for (std::int64_t k = 1; k <= m_; ++k)
        for (int l = 0; l < kLanes; ++l)
            row_r_[static_cast<std::size_t>(k) * kLanes + l] =
                row_[static_cast<std::size_t>(k) * kLanes + l];
}

ExitSample StationaryAxisExitKernelBatch::exits(int lane, double w, double z) const {
    const double invw = 1.0 / w;
    const double invz1 = 1.0 / (1.0 - z);
    double hbest = -std::numeric_limits<double>::infinity();
    double vbest = hbest;
    std::int64_t hk = 0, vl = 0;
    for (std::int64_t k = 1; k <= m_; ++k) {
        const double v = shor_[static_cast<std::size_t>(k) * kLanes + lane] * invw +
                         row_r_[static_cast<std::size_t>(k) * kLanes + lane];
        if (v >= hbest) {
            hbest = v;
            hk = k;
        }
    }
    for (std::int64_t l = 1; l <= n_; ++l) {
        const double v = sver_[static_cast<std::size_t>(l) * kLanes + lane] * invz1 +
                         col_c_[static_cast<std::size_t>(l) * kLanes + lane];
        if (v >= vbest) {
            vbest = v;
            vl = l;
        }
    }
    ExitSample out;
    out.ghat = std::max(hbest, vbest);
    if (hbest >= vbest) {
        out.zhor = hk;
        out.boundary_weight_sum = shor_[static_cast<std::size_t>(hk) * kLanes + lane] * invw;
    } else {
        out.zver = vl;
    }
    return out;
}

StationaryValueKernel::StationaryValueKernel(std::int64_t m, std::int64_t n) : m_(m), n_(n) {
    if (m < 0 || n < 0) throw std::invalid_argument("StationaryValueKernel: need m,n >= 0");
    row_.assign(static_cast<std::size_t>(m + 1), 0.0);
    eta_.assign(static_cast<std::size_t>(m + 1), 0.0);
}

double StationaryValueKernel::value(std::uint64_t seed, std::uint64_t replica, double w,
                                    double z) {
    const std::uint64_t stream = rng::stream_base(seed, replica);
    const std::uint64_t W = static_cast<std::uint64_t>(m_ + 1);
    const double invw = 1.0 / w;
    const double invz1 = 1.0 / (1.0 - z);
    // row j = 0: prefix sums of Exp(w) boundary weights, zero at origin
    fill_exponentials(stream, 1, 1, m_, eta_.data());
    row_[0] = 0.0;
    for (std::int64_t i = 1; i <= m_; ++i)
        row_[static_cast<std::size_t>(i)] =
            row_[static_cast<std::size_t>(i - 1)] + eta_[static_cast<std::size_t>(i - 1)] * invw;
    for (std::int64_t j = 1; j <= n_; ++j) {
        fill_exponentials(stream, static_cast<std::uint64_t>(j) * W, 1, m_ + 1, eta_.data());
        row_[0] += eta_[0] * invz1;
        for (std::int64_t i = 1; i <= m_; ++i)
            row_[static_cast<std::size_t>(i)] =
                eta_[static_cast<std::size_t>(i)] +
                std::max(row_[static_cast<std::size_t>(i)], row_[static_cast<std::size_t>(i - 1)]);
    }
    return row_[static_cast<std::size_t>(m_)];
}

}  // namespace lpp::kernels
