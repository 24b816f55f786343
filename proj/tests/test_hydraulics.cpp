#include <doctest.h>

#include <cmath>
#include <random>

#include "pond/errors.hpp"
#include "pond/hydraulics.hpp"

using namespace pond;

namespace {

PondParams small_pond() { return PondParams{100.0, 2.0, 10.0, 300.0, 4}; }

// storage change minus net inflow over one step (m3)
double step_imbalance(const PondParams& p, const PondState& before, const RouteResult& r, double i_prev,
                      double i_now, double q_prev) {
    const double dv = p.area * (r.state.depth - before.depth);
    const double net = 0.5 * p.dt * (i_prev + i_now) - 0.5 * p.dt * (q_prev + r.realized_outflow) - r.overflow_step;
    return dv - net;
}

}  // namespace

TEST_CASE("zero flux keeps the depth") {
    PondState s;
    s.depth = 0.5;
    const auto r = route_step(s, small_pond(), 0.0, 0.0, 0.0, 0.0);
    CHECK(r.state.depth == 0.5);
    CHECK(r.overflow_step == 0.0);
    CHECK(r.realized_outflow == 0.0);
    CHECK(r.state.step == 1);
}

TEST_CASE("half-step inflow fills 150 m3") {
    // A dH = 300 * (0 + 1) / 2 = 150 m3 -> 1.5 m on 100 m2
    const auto r = route_step(PondState{}, small_pond(), 0.0, 1.0, 0.0, 0.0);
    CHECK(r.state.depth == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(r.overflow_step == 0.0);
}

TEST_CASE("depth above h_max spills") {
    PondState s;
    s.depth = 1.9;
    // unclamped 1.9 + 300 * 1 / 100 = 4.9 m; 2.9 m over the rim on 100 m2
    const auto r = route_step(s, small_pond(), 1.0, 1.0, 0.0, 0.0);
    CHECK(r.state.depth == 2.0);
    CHECK(r.overflow_step == doctest::Approx(290.0).epsilon(1e-12));
    CHECK(r.state.overflow_total == doctest::Approx(290.0).epsilon(1e-12));
}

TEST_CASE("stored volume") {
    PondState s;
    CHECK(stored_volume(s, small_pond()) == 0.0);
    s.depth = 0.25;
    CHECK(stored_volume(s, small_pond()) == doctest::Approx(25.0));
    const PondParams ref_pond{51245.833, 1.2, 2.54, 300.0, 720};
    s.depth = 1.2;
    CHECK(stored_volume(s, ref_pond) == doctest::Approx(61495.0).epsilon(1e-7));
}

TEST_CASE("precondition violations") {
    const PondParams p = small_pond();
    PondState s;
    CHECK_THROWS_AS(route_step(s, p, -1.0, 0.0, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(route_step(s, p, 0.0, -0.1, 0.0, 0.0), PreconditionError);
    CHECK_THROWS_AS(route_step(s, p, 0.0, 0.0, 0.0, -1.0), PreconditionError);
    CHECK_THROWS_AS(route_step(s, p, 0.0, 0.0, 0.0, 10.5), PreconditionError);
    CHECK_THROWS_AS(route_step(s, p, 0.0, 0.0, 0.0, std::nan("")), PreconditionError);
    // an outflow the stored volume could not have supplied
    CHECK_THROWS_AS(route_step(s, p, 0.0, 0.0, 1.0, 0.0), PreconditionError);
    s.depth = 2.5;
    CHECK_THROWS_AS(route_step(s, p, 0.0, 0.0, 0.0, 0.0), PreconditionError);
    CHECK_NOTHROW(route_step_uncapped(PondState{}, p, 0.0, 0.0, 0.0, 50.0));
}

TEST_CASE("params validation") {
    CHECK_NOTHROW(small_pond().validate());
    for (auto bad : {PondParams{0, 1, 1, 1, 1}, PondParams{1, -1, 1, 1, 1}, PondParams{1, 1, 0, 1, 1},
                     PondParams{1, 1, 1, 0, 1}, PondParams{1, 1, 1, 1, 0}, PondParams{INFINITY, 1, 1, 1, 1}})
        CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("draining an almost empty pond lowers the realized outflow") {
    const PondParams p = small_pond();
    PondState s;
    s.depth = 0.01;  // 1 m3
    const auto r = route_step(s, p, 0.0, 0.0, 0.0, 10.0);
    CHECK(r.realized_outflow < 10.0);
    CHECK(r.state.depth >= 0.0);
    // the gate can still close on the next step without going negative
    const auto next = route_step(r.state, p, 0.0, 0.0, r.realized_outflow, 0.0);
    CHECK(next.state.depth >= 0.0);
    CHECK(std::abs(step_imbalance(p, s, r, 0.0, 0.0, 0.0)) < 1e-12);
    CHECK(std::abs(step_imbalance(p, r.state, next, 0.0, 0.0, r.realized_outflow)) < 1e-12);
    // the clamp lands exactly on Q = 2 A H_new / dt + I_now
    CHECK(r.realized_outflow == doctest::Approx(2.0 * p.area * r.state.depth / p.dt).epsilon(1e-12));
}

TEST_CASE("random trajectories conserve mass and stay physical") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int run = 0; run < 50; ++run) {
        const PondParams p{50.0 + 1000.0 * u(rng), 0.5 + 2.0 * u(rng), 0.1 + 2.0 * u(rng), 60.0 + 600.0 * u(rng), 1};
        PondState s;
        s.depth = p.h_max * u(rng);
        const double v0 = stored_volume(s, p);
        double i_prev = 0.0, in_vol = 0.0, out_vol = 0.0, last_overflow = 0.0;
        for (int k = 0; k < 300; ++k) {
            const double i_now = u(rng) < 0.4 ? 0.0 : 3.0 * u(rng);
            const double cmd = p.q_max * u(rng);
            const double q_prev = s.outflow;
            const auto r = route_step(s, p, i_prev, i_now, q_prev, cmd);
            REQUIRE(r.realized_outflow <= cmd);
            REQUIRE(r.state.depth >= 0.0);
            REQUIRE(r.state.depth <= p.h_max);
            REQUIRE(r.state.overflow_total >= last_overflow);
            if (r.overflow_step > 0.0) REQUIRE(r.state.depth == p.h_max);
            in_vol += trapezoid_volume(i_prev, i_now, p.dt);
            out_vol += trapezoid_volume(q_prev, r.realized_outflow, p.dt);
            last_overflow = r.state.overflow_total;
            s = r.state;
            i_prev = i_now;
        }
        const double err = stored_volume(s, p) - v0 - (in_vol - out_vol - s.overflow_total);
        CHECK(std::abs(err) <= 1e-9 * std::max(1.0, in_vol));
    }
}

TEST_CASE("routing is deterministic") {
    const PondParams p = small_pond();
    PondState a, b;
    a.depth = b.depth = 0.3;
    double i_prev = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double in = 0.1 * (k % 5);
        const auto ra = route_step(a, p, i_prev, in, a.outflow, std::fmod(0.05 * k, 1.0));
        const auto rb = route_step(b, p, i_prev, in, b.outflow, std::fmod(0.05 * k, 1.0));
        i_prev = in;
        a = ra.state;
        b = rb.state;
        REQUIRE(a.depth == b.depth);
        REQUIRE(a.outflow == b.outflow);
    }
}
