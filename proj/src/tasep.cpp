#include "lpplab/tasep.hpp"

#include <chrono>
#include <cmath>
#include <queue>

#include <json.hpp>

namespace lpp {

namespace {

void check_rates(double w, double z) {
    if (!(w > 0.0 && w <= 1.0) || !(z >= 0.0 && z < 1.0))
        throw std::invalid_argument("tasep: need w in (0,1], z in [0,1)");
}

}  // namespace

Grid<double> swap_times_from_lpp(double w, double z, std::int64_t m, std::int64_t n,
                                 std::uint64_t seed, std::uint64_t replica) {
    check_rates(w, z);
    const Rect rect({0, 0}, {m, n});
    const NoiseField noise(seed, replica, rect);
    const WeightField field = build_weights(noise, TwoParamRecipe{w, z});
    return last_passage_table(field, {0, 0}, rect).values;
}

TasepRun simulate_tasep(double w, double z, std::int64_t m, std::int64_t n, std::uint64_t seed,
                        std::uint64_t replica) {
    check_rates(w, z);
    if (m < 1 || n < 1) throw std::invalid_argument("simulate_tasep: need m,n >= 1");
    const Rect rect({0, 0}, {m, n});
    const NoiseField noise(seed, replica, rect);
    const WeightField field = build_weights(noise, TwoParamRecipe{w, z});

    TasepRun run;
    run.swap_times = Grid<double>(rect, kNegInf);

    // collapsed initial positions (step-like; see header)
    run.initial.clock = 0.0;
    run.initial.particle_pos.resize(static_cast<std::size_t>(m + 1));
    run.initial.hole_pos.resize(static_cast<std::size_t>(n + 1));
    for (std::int64_t i = 0; i <= m; ++i)
        run.initial.particle_pos[static_cast<std::size_t>(i)] = (i == 0) ? 1 : -i;
    for (std::int64_t j = 0; j <= n; ++j)
        run.initial.hole_pos[static_cast<std::size_t>(j)] = (j == 0) ? 0 : j + 1;

    // two-sided Bernoulli occupation of the original lattice, drawn from an
    // auxiliary stream; reported, not consumed by the collapsed dynamics
    const std::int64_t span = m + n + 2;
    run.occupation_span = span;
    {
        const NoiseField aux(derived_seed(seed, 9000), replica, Rect({0, 0}, {2 * span, 1}));
        for (std::int64_t x = -span; x <= span; ++x) {
            int occ;
            if (x == 0)
                occ = 2;  // second-class particle
            else if (x < 0)
                occ = aux.uniform_at({x + span, 0}) < w ? 1 : 0;
            else
                occ = aux.uniform_at({x + span, 0}) < z ? 1 : 0;
            run.initial_occupation.push_back(occ);
        }
    }

    struct Pending {
        double t;
        std::int64_t i, j;
        bool operator>(const Pending& o) const { return t > o.t; }
    };
    std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>> queue;
    Grid<unsigned char> done(rect, 0);

    TasepState state = run.initial;
    run.swap_times(0, 0) = 0.0;  // particle 0 already sits right of hole 0
    done({0, 0}) = 1;

    auto enable_if_ready = [&](std::int64_t i, std::int64_t j) {
        if (i > m || j > n) return;
        if (i > 0 && !done({i - 1, j})) return;
        if (j > 0 && !done({i, j - 1})) return;
        double pred = 0.0;
        if (i > 0 && j > 0)
            pred = std::max(run.swap_times(i - 1, j), run.swap_times(i, j - 1));
        else if (i > 0)
            pred = run.swap_times(i - 1, j);
        else if (j > 0)
            pred = run.swap_times(i, j - 1);
        // weight-first addition order matches the DP table evaluation
        queue.push({field(i, j) + pred, i, j});
    };
    enable_if_ready(1, 0);
    enable_if_ready(0, 1);

    while (!queue.empty()) {
        const Pending ev = queue.top();
        queue.pop();
        run.swap_times(ev.i, ev.j) = ev.t;
        done({ev.i, ev.j}) = 1;
        state.clock = ev.t;

        // particle ev.i jumps right over hole ev.j
        auto& p = state.particle_pos[static_cast<std::size_t>(ev.i)];
        auto& h = state.hole_pos[static_cast<std::size_t>(ev.j)];
        run.events.push_back({ev.t, ev.i, ev.j, p});
        p += 1;
        h -= 1;

        // tagged pair bookkeeping: (I+1, J) swap = overtaken (move left),
        // (I, J+1) swap = the pair's own right move
        if (ev.i == state.left_moves + 1 && ev.j == state.right_moves) {
            state.left_moves += 1;
            run.second_class.push_back({ev.t, true, state.left_moves, state.right_moves});
        } else if (ev.i == state.left_moves && ev.j == state.right_moves + 1) {
            state.right_moves += 1;
            run.second_class.push_back({ev.t, false, state.left_moves, state.right_moves});
        }

        enable_if_ready(ev.i + 1, ev.j);
        enable_if_ready(ev.i, ev.j + 1);
    }

    run.final_state = state;
    return run;
}

McReport second_class_vs_cif(double w, double z, std::int64_t n, std::uint64_t seed) {
    check_rates(w, z);
    const auto t0 = std::chrono::steady_clock::now();
    const std::int64_t m = n + 1;
    const TasepRun run = simulate_tasep(w, z, m, m, seed);

    // independent route: interface of the swap-time table with Ghat times
    const Grid<double>& g = run.swap_times;
    std::vector<SecondClassMove> expected;
    Vertex phi{0, 0};
    for (;;) {
        if (phi.i + 1 > m || phi.j + 1 > m) break;
        const double hor = g(phi.i + 1, phi.j);
        const double ver = g(phi.i, phi.j + 1);
        if (hor <= ver) {
            phi = phi.offset(1, 0);
            expected.push_back({hor, true, phi.i, phi.j});
        } else {
            phi = phi.offset(0, 1);
            expected.push_back({ver, false, phi.i, phi.j});
        }
    }

    McReport rep;
    rep.experiment = "verify-tasep-second-class";
    rep.reps = 1;
    rep.seed = seed;
    rep.params = {{"w", format_double(w)}, {"z", format_double(z)}, {"n", std::to_string(n)}};

    const std::size_t len = std::min(expected.size(), run.second_class.size());
    bool agree = expected.size() <= run.second_class.size();
    std::string detail = "compared " + std::to_string(len) + " moves";
    for (std::size_t k = 0; k < len && agree; ++k) {
        const SecondClassMove& a = run.second_class[k];
        const SecondClassMove& b = expected[k];
        if (a.t != b.t || a.left != b.left || a.i_after != b.i_after || a.j_after != b.j_after) {
            agree = false;
            detail = "first mismatch at move " + std::to_string(k) + ": sim t=" +
                     format_double(a.t) + " cif t=" + format_double(b.t);
        }
    }
    rep.checks.push_back({"trace_agreement", agree, detail});

    bool monotone = true;
    for (std::size_t k = 1; k < run.second_class.size(); ++k)
        if (run.second_class[k].t < run.second_class[k - 1].t ||
            run.second_class[k].i_after < run.second_class[k - 1].i_after ||
            run.second_class[k].j_after < run.second_class[k - 1].j_after)
            monotone = false;
    rep.checks.push_back({"monotone_IJ", monotone, "I_t, J_t nondecreasing"});

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string trace_to_json(const TasepRun& run) {
    nlohmann::json events = nlohmann::json::array();
    for (const TasepEvent& e : run.events)
        events.push_back({{"t", e.t}, {"site", e.site}, {"kind", "swap"},
                          {"particle", e.particle}, {"hole", e.hole}});
    for (const SecondClassMove& mv : run.second_class)
        events.push_back({{"t", mv.t},
                          {"site", mv.j_after - mv.i_after},
                          {"kind", mv.left ? "second-left" : "second-right"}});
    std::sort(events.begin(), events.end(), [](const nlohmann::json& a, const nlohmann::json& b) {
        return a.at("t").get<double>() < b.at("t").get<double>();
    });
    nlohmann::json j;
    j["events"] = events;
    nlohmann::json occ = nlohmann::json::array();
    for (int v : run.initial_occupation) occ.push_back(v);
    j["initial_occupation"] = occ;
    j["occupation_span"] = run.occupation_span;
    return j.dump(2) + "\n";
}

}  // namespace lpp
