#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carleson/harmonic.hpp"

using namespace carleson;

namespace {

std::mt19937_64 rng(0x0a1cu);
double uniform(double lo, double hi) { return lo + (hi - lo) * ((rng() >> 11) * 0x1p-53); }

// Closed-form antiderivative of the Poisson kernel: the oracle route; the
// implementation integrates numerically.
double H(double r, double t) {
    double k = std::floor((t + kPi) / kTwoPi);
    double tt = t - kTwoPi * k;
    return k + std::atan(((1.0 + r) / (1.0 - r)) * std::tan(0.5 * tt)) / kPi;
}

double closed_form(Complex z0, double alpha, double width) {
    double r = std::abs(z0);
    double phi = std::arg(z0);
    return H(r, alpha + width - phi) - H(r, alpha - phi);
}

}  // namespace

TEST_CASE("disk harmonic measure at the center is normalized arclength") {
    CHECK(harmonic_measure_disk(Complex(0, 0), 0.7, kPi) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(harmonic_measure_disk(Complex(0, 0), 0.0, kTwoPi) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pinned arc value at z0 = 0.5") {
    double v = harmonic_measure_disk(Complex(0.5, 0), -kPi / 2, kPi);
    CHECK(v == doctest::Approx(0.7951672353008665).epsilon(1e-10));
    CHECK(v > 0.5);
    CHECK(v < 1.0);
}

TEST_CASE("quadrature matches the closed-form antiderivative") {
    for (int trial = 0; trial < 60; ++trial) {
        Complex z0 = std::polar(uniform(0.0, 0.99), uniform(0, kTwoPi));
        double alpha = uniform(0, kTwoPi);
        double width = uniform(1e-3, kTwoPi);
        double quad = harmonic_measure_disk(z0, alpha, width);
        CHECK(std::abs(quad - closed_form(z0, alpha, width)) < 1e-10);
    }
}

TEST_CASE("full-circle probability is 1 up to 1e-10 for |z0| <= 0.99") {
    for (int trial = 0; trial < 30; ++trial) {
        Complex z0 = std::polar(uniform(0.0, 0.99), uniform(0, kTwoPi));
        CHECK(std::abs(harmonic_measure_disk(z0, uniform(0, kTwoPi), kTwoPi) - 1.0) < 1e-10);
    }
}

TEST_CASE("boundary evaluation point is rejected") {
    CHECK_THROWS_AS(harmonic_measure_disk(Complex(1.0, 0), 0, 1.0), EvaluationPointOnBoundary);
    CHECK_THROWS_AS(harmonic_measure_disk(Complex(1.5, 0), 0, 1.0), EvaluationPointOnBoundary);
}

TEST_CASE("partition construction") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CHECK(BoundaryPartition::full(ann).size() == 2);
    CHECK(BoundaryPartition::uniform(ann, 4).size() == 8);
    CHECK_THROWS_AS(BoundaryPartition({Arc(0, 0.0, 1.0), Arc(0, 0.5, 1.0)}), InvalidPartition);
    BoundaryPartition ok({Arc(0, 0.0, 1.0), Arc(0, 1.0, 1.0), Arc(1, 0.5, kTwoPi)});
    CHECK(ok.find(0, 0.5).value() == 0);
    CHECK(ok.find(0, 1.5).value() == 1);
    CHECK_FALSE(ok.find(0, 2.5).has_value());
    CHECK(ok.find(1, 6.0).value() == 2);
}

TEST_CASE("walk-on-spheres on the disk splits symmetric arcs evenly") {
    CircularDomain disk = CircularDomain::unit_disk();
    BoundaryPartition halves({Arc(0, 0.0, kPi), Arc(0, kPi, kPi)});
    HarmonicEstimate est = harmonic_measure_mc(disk, Complex(0, 0), halves, 10000, 7);
    REQUIRE(est.arcs.size() == 2);
    for (const ArcEstimate& a : est.arcs) CHECK(std::abs(a.probability - 0.5) < 0.02);
    CHECK(est.capped_walks == 0);
    CHECK(est.unattributed == 0);
    CHECK(est.arcs[0].probability + est.arcs[1].probability == doctest::Approx(1.0));
}

TEST_CASE("walk-on-spheres agrees with the Poisson integral within 3 sigma") {
    CircularDomain disk = CircularDomain::unit_disk();
    int within = 0;
    const int trials = 20;
    for (int t = 0; t < trials; ++t) {
        Complex z0 = std::polar(uniform(0.0, 0.7), uniform(0, kTwoPi));
        double alpha = uniform(0, kTwoPi), width = uniform(0.5, kPi);
        BoundaryPartition part({Arc(0, alpha, width)});
        HarmonicEstimate est =
            harmonic_measure_mc(disk, z0, part, 10000, 1000 + (std::uint64_t)t);
        double exact = harmonic_measure_disk(z0, alpha, width);
        double sigma = std::max(est.arcs[0].std_error, 1e-6);
        if (std::abs(est.arcs[0].probability - exact) <= 3.0 * sigma) ++within;
    }
    CHECK(within >= 19);
}

TEST_CASE("annulus radial solution: inner circle mass at rho = 0.5") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    BoundaryPartition full = BoundaryPartition::full(ann);
    HarmonicEstimate est = harmonic_measure_mc(ann, Complex(0.5, 0), full, 10000, 42);
    // u = log|z|/log(0.25) solves the 1-on-inner / 0-on-outer problem
    double target = std::log(0.5) / std::log(0.25);
    double sigma = est.arcs[1].std_error;
    CHECK(std::abs(est.arcs[1].probability - target) < 3.0 * sigma + 2e-3);
    CHECK(est.arcs[0].probability + est.arcs[1].probability == doctest::Approx(1.0));
}

TEST_CASE("covering partitions attribute every walk") {
    CircularDomain ann = CircularDomain::annulus(0.3, 1.2);
    BoundaryPartition part = BoundaryPartition::uniform(ann, 8);
    HarmonicEstimate est = harmonic_measure_mc(ann, Complex(0.7, 0.1), part, 5000, 9);
    double total = 0;
    for (const ArcEstimate& a : est.arcs) total += a.probability;
    CHECK(est.unattributed == 0);
    CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("partial partitions leave walks unattributed") {
    CircularDomain disk = CircularDomain::unit_disk();
    BoundaryPartition half({Arc(0, 0.0, kPi)});
    HarmonicEstimate est = harmonic_measure_mc(disk, Complex(0, 0), half, 2000, 3);
    CHECK(est.unattributed > 0);
    CHECK(est.arcs[0].probability < 1.0);
}

TEST_CASE("fixed seeds reproduce and thread count does not matter") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    BoundaryPartition part = BoundaryPartition::uniform(ann, 4);
    WosOptions serial;
    serial.threads = 1;
    WosOptions parallel;
    parallel.threads = 4;
    HarmonicEstimate a = harmonic_measure_mc(ann, Complex(0.6, 0), part, 20000, 77, serial);
    HarmonicEstimate b = harmonic_measure_mc(ann, Complex(0.6, 0), part, 20000, 77, parallel);
    HarmonicEstimate c = harmonic_measure_mc(ann, Complex(0.6, 0), part, 20000, 77, serial);
    REQUIRE(a.arcs.size() == b.arcs.size());
    for (std::size_t i = 0; i < a.arcs.size(); ++i) {
        CHECK(a.arcs[i].probability == b.arcs[i].probability);
        CHECK(a.arcs[i].probability == c.arcs[i].probability);
    }
    HarmonicEstimate d = harmonic_measure_mc(ann, Complex(0.6, 0), part, 20000, 78, serial);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.arcs.size(); ++i)
        any_diff |= (a.arcs[i].probability != d.arcs[i].probability);
    CHECK(any_diff);
}

TEST_CASE("evaluation point outside the domain is rejected") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    BoundaryPartition part = BoundaryPartition::full(ann);
    CHECK_THROWS_AS(harmonic_measure_mc(ann, Complex(0.1, 0), part, 10, 1),
                    EvaluationPointOutsideDomain);
    CHECK_THROWS_AS(harmonic_measure_mc(ann, Complex(2.0, 0), part, 10, 1),
                    EvaluationPointOutsideDomain);
}

TEST_CASE("moving the evaluation point changes arc mass continuously") {
    double alpha = 0.2, width = 1.0;
    for (Complex z0 : {Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(0.0, 0.0)}) {
        double delta = 1e-4;
        double base = harmonic_measure_disk(z0, alpha, width);
        double moved = harmonic_measure_disk(z0 + Complex(delta, 0), alpha, width);
        double r = std::abs(z0) + delta;
        double lipschitz = (2.0 + 4.0 * r) / ((1.0 - r) * (1.0 - r)) * (width / kTwoPi);
        CHECK(std::abs(moved - base) <= lipschitz * delta + 1e-9);
    }
}

TEST_CASE("default evaluation point") {
    CHECK(default_evaluation_point(CircularDomain::unit_disk()) == Complex(0, 0));
    // center blocked by the inner hole: falls back to an interior grid point
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    Complex p = default_evaluation_point(ann);
    CHECK(ann.contains(p));
    // off-center hole: the centroid works
    CircularDomain shifted(Circle(Complex(0, 0), 1.0), {Circle(Complex(0.4, 0), 0.2)});
    Complex q = default_evaluation_point(shifted);
    CHECK(shifted.contains(q));
}
