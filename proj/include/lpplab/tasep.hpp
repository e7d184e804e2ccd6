#pragma once

#include <cstdint>
#include <vector>

#include "lpplab/lpp.hpp"
#include "lpplab/report.hpp"

namespace lpp {

// Event-driven TASEP coupled to the LPP weight field. The swap of particle i
// (labels right-to-left, P_0(0) = 1) and hole j (labels left-to-right,
// H_0(0) = 0) consumes the exponential clock what^{w,z}(i,j) once its DP
// predecessors (i-1,j) and (i,j-1) have fired, so the recorded swap times
// reproduce the last-passage recursion exactly, realization by realization.
//
// Positions are tracked in the coupled (collapsed) representation in which
// the initial inter-particle gaps absorbed by the Exp(w)/Exp(1-z) boundary
// clocks are contracted to one site: P_i(0) = 1 - i for i >= 1, H_j(0) =
// j + 1 for j >= 1. For the step initial condition (w,z) = (1,0) this is the
// literal site dynamics. The two-sided Bernoulli occupation of the original
// lattice is drawn separately and reported with the run.

enum class SiteState : unsigned char { Empty, FirstClass, SecondClass };

struct TasepState {
    double clock = 0.0;
    std::vector<std::int64_t> particle_pos;  // index = particle label 0..m
    std::vector<std::int64_t> hole_pos;      // index = hole label 0..n
    std::int64_t left_moves = 0;             // I_t
    std::int64_t right_moves = 0;            // J_t

    std::int64_t second_class_position() const { return right_moves - left_moves; }
};

struct TasepEvent {
    double t = 0.0;
    std::int64_t particle = 0;
    std::int64_t hole = 0;
    std::int64_t site = 0;  // position of the particle before the jump
};

struct SecondClassMove {
    double t = 0.0;
    bool left = false;      // a first-class particle overtook the pair
    std::int64_t i_after = 0;
    std::int64_t j_after = 0;
};

struct TasepRun {
    Grid<double> swap_times;  // [0,m]x[0,n]
    std::vector<TasepEvent> events;
    std::vector<SecondClassMove> second_class;
    TasepState initial;
    TasepState final_state;
    std::vector<int> initial_occupation;  // original lattice, sites -span..span
    std::int64_t occupation_span = 0;
};

// Ghat^{w,z}(i,j) over [0,m]x[0,n]: the time particle i and hole j swap.
Grid<double> swap_times_from_lpp(double w, double z, std::int64_t m, std::int64_t n,
                                 std::uint64_t seed, std::uint64_t replica = 0);

TasepRun simulate_tasep(double w, double z, std::int64_t m, std::int64_t n, std::uint64_t seed,
                        std::uint64_t replica = 0);

// Compares the (I_t, J_t) trace of the tagged pair from the event-driven run
// against the competition-interface route: moves at times Ghat(phihat_k)
// along the interface of the same field. Exact agreement required.
McReport second_class_vs_cif(double w, double z, std::int64_t n, std::uint64_t seed);

// JSON event-list export: [{"t": ..., "site": ..., "kind": ...}, ...]
std::string trace_to_json(const TasepRun& run);

}  // namespace lpp
