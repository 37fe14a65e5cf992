#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "pidlab/classic.hpp"
#include "pidlab/errors.hpp"

using namespace pidlab;

TEST_CASE("pi: zero error from rest gives zero control") {
    ClassicState s;
    const ClassicGains g{12.0, 34.0, 0.0, 0.0};
    CHECK(step_pi(s, 0.0, g, 0.01) == 0.0);
}

TEST_CASE("pi: constant error isolates the integral term") {
    ClassicState s;
    s.e_prev = 1.0;  // same as the incoming error: difference term vanishes
    const ClassicGains g{77.7, 600.0, 0.0, 0.0};
    CHECK(step_pi(s, 1.0, g, 0.01) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("pi: hand-computed step with the study gains") {
    ClassicState s;
    s.u_prev = 1.0;
    s.e_prev = 0.2;
    const ClassicGains g{6.350, 15.817, 0.0, 0.0};
    // 1 + 6.350*0.3 + 15.817*0.01*0.5
    CHECK(step_pi(s, 0.5, g, 0.01) == doctest::Approx(2.98409).epsilon(1e-5));
    CHECK(s.u_prev == doctest::Approx(2.98409).epsilon(1e-5));
    CHECK(s.e_prev == 0.5);
    CHECK(s.e_prev2 == 0.2);
}

TEST_CASE("pid: zero error leaves the control at its previous value") {
    ClassicState s;
    s.u_prev = 0.7;
    const ClassicGains g{2.0, 3.0, 0.0, 0.5};
    CHECK(step_pid(s, 0.0, g, 0.1) == 0.7);
}

TEST_CASE("pid: constant error isolates the integral term") {
    ClassicState s;
    s.e_prev = 2.5;
    s.e_prev2 = 2.5;
    const ClassicGains g{0.0, 10.0, 0.0, 0.0};
    CHECK(step_pid(s, 2.5, g, 0.1) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("pid: hand-computed step mixing all three terms") {
    ClassicState s;
    const ClassicGains g{2.0, 3.0, 0.0, 0.5};
    // kp*(e-e1) + ki*h*e + kd*(e-2e1+e2)/h = 2*1 + 3*0.1*1 + 0.5*1/0.1 = 7.3
    CHECK(step_pid(s, 1.0, g, 0.1) == doctest::Approx(7.3).epsilon(1e-12));
}

TEST_CASE("pii2d: zero state gives u = u_prev") {
    ClassicState s;
    s.u_prev = -3.25;
    const ClassicGains g{1.0, 2.0, 3.0, 4.0};
    CHECK(step_pii2d(s, 0.0, g, 0.01) == -3.25);
}

TEST_CASE("pii2d: double integral accumulates the Riemann sum of the sum") {
    ClassicState s;
    const ClassicGains g{0.0, 0.0, 1.0, 0.0};
    // I after each step: 0.1, 0.2, 0.3; u increments kii*h*I = 0.01, 0.02, 0.03
    double u = 0.0;
    u = step_pii2d(s, 1.0, g, 0.1);
    CHECK(u == doctest::Approx(0.01).epsilon(1e-12));
    u = step_pii2d(s, 1.0, g, 0.1);
    CHECK(u == doctest::Approx(0.03).epsilon(1e-12));
    u = step_pii2d(s, 1.0, g, 0.1);
    CHECK(u == doctest::Approx(0.06).epsilon(1e-12));
    CHECK(s.i_prev == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("pid with kd=0 reproduces pi bit-for-bit") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    ClassicState spi, spid;
    const ClassicGains g{6.350, 15.817, 0.0, 0.0};
    for (int k = 0; k < 1000; ++k) {
        const double e = dist(rng);
        CHECK(step_pi(spi, e, g, 0.01) == step_pid(spid, e, g, 0.01));
    }
}

TEST_CASE("pii2d with kii=kd=0 reproduces pi bit-for-bit") {
    std::mt19937 rng(6);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    ClassicState spi, spii;
    const ClassicGains g{-100.0, 600.0, 0.0, 0.0};
    for (int k = 0; k < 1000; ++k) {
        const double e = dist(rng);
        CHECK(step_pi(spi, e, g, 0.01) == step_pii2d(spii, e, g, 0.01));
    }
}

TEST_CASE("velocity form: shifting u_prev shifts every output by the same constant") {
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> errors;
    for (int k = 0; k < 200; ++k) errors.push_back(dist(rng));

    const ClassicGains g{3.0, 10.0, 2.0, 0.4};
    const double c = 5.75;
    ClassicState base, shifted;
    shifted.u_prev = c;
    for (double e : errors) {
        const double ub = step_pii2d(base, e, g, 0.01);
        const double us = step_pii2d(shifted, e, g, 0.01);
        CHECK(us - ub == doctest::Approx(c).epsilon(1e-12));
    }
}

TEST_CASE("each step is linear in state and input") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    const ClassicGains g{4.0, 7.0, 1.5, 0.3};
    const double h = 0.02;
    const double a = 1.7, b = -0.6;

    for (int trial = 0; trial < 100; ++trial) {
        ClassicState x1{dist(rng), dist(rng), dist(rng), dist(rng)};
        ClassicState x2{dist(rng), dist(rng), dist(rng), dist(rng)};
        const double e1 = dist(rng), e2 = dist(rng);

        ClassicState combo{a * x1.u_prev + b * x2.u_prev, a * x1.e_prev + b * x2.e_prev,
                           a * x1.e_prev2 + b * x2.e_prev2, a * x1.i_prev + b * x2.i_prev};
        const double u1 = step_pii2d(x1, e1, g, h);
        const double u2 = step_pii2d(x2, e2, g, h);
        const double uc = step_pii2d(combo, a * e1 + b * e2, g, h);
        CHECK(uc == doctest::Approx(a * u1 + b * u2).epsilon(1e-12));
    }
}

TEST_CASE("steppers reject non-positive h") {
    ClassicState s;
    const ClassicGains g{1.0, 1.0, 0.0, 0.0};
    CHECK_THROWS_AS(step_pi(s, 1.0, g, 0.0), DomainError);
    CHECK_THROWS_AS(step_pid(s, 1.0, g, -0.01), DomainError);
    CHECK_THROWS_AS(step_pii2d(s, 1.0, g, 0.0), DomainError);
}
