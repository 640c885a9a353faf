#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carleson/plane_geometry.hpp"

using namespace carleson;

namespace {

std::mt19937_64 rng(0x9e3779b9u);

double uniform(double lo, double hi) {
    return lo + (hi - lo) * ((rng() >> 11) * 0x1p-53);
}

MobiusMap random_mobius() {
    for (;;) {
        Complex a(uniform(-1, 1), uniform(-1, 1));
        Complex b(uniform(-1, 1), uniform(-1, 1));
        Complex c(uniform(-1, 1), uniform(-1, 1));
        Complex d(uniform(-1, 1), uniform(-1, 1));
        if (std::abs(a * d - b * c) > 0.1) return MobiusMap(a, b, c, d);
    }
}

CircularDomain two_hole_domain() {
    return CircularDomain(Circle(Complex(0, 0), 2.0),
                          {Circle(Complex(-0.8, 0.1), 0.3), Circle(Complex(0.9, -0.4), 0.25)});
}

// Independent membership check: evaluate f_i by its closed form (not via
// mobius_apply) and test the disk square directly.
bool geometric_membership(const CircularDomain& dom, const CarlesonSquare& sq, Complex z) {
    Complex w;
    if (sq.boundary_index == 0)
        w = (z - dom.outer().center) / dom.outer().radius;
    else {
        const Circle& c = dom.component_circle(sq.boundary_index);
        w = c.radius / (z - c.center);
    }
    double r = std::abs(w);
    if (r >= 1.0 || r < 1.0 - sq.depth) return false;
    if (r == 0.0) return true;
    double t = std::arg(w);
    if (t < 0) t += kTwoPi;
    double delta = t - sq.anchor;
    if (delta < 0) delta += kTwoPi;
    return delta < sq.depth;
}

// Arclength of the preimage arc by direct quadrature of |(f_i^{-1})'| along
// the unit circle (Simpson, fixed fine grid).
double arc_integral(const CircularDomain& dom, const CarlesonSquare& sq) {
    MobiusMap finv = mobius_inverse(boundary_maps(dom)[(std::size_t)sq.boundary_index]);
    auto speed = [&](double t) {
        Complex w = std::polar(1.0, t);
        return std::abs(mobius_derivative(finv, w));
    };
    const int panels = 2000;
    double h = sq.depth / (2 * panels), s = 0.0;
    for (int k = 0; k < panels; ++k) {
        double t0 = sq.anchor + 2 * k * h;
        s += h / 3.0 * (speed(t0) + 4.0 * speed(t0 + h) + speed(t0 + 2 * h));
    }
    return s;
}

}  // namespace

TEST_CASE("boundary maps match the component formulas") {
    CircularDomain big(Circle(Complex(0, 0), 2.0));
    Complex img = mobius_apply(boundary_maps(big)[0], Complex(1, 1));
    CHECK(std::abs(img - Complex(0.5, 0.5)) < 1e-15);

    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CHECK(std::abs(mobius_apply(boundary_maps(ann)[1], Complex(0.5, 0)) - Complex(0.5, 0)) <
          1e-15);
}

TEST_CASE("boundary maps send C_i to the unit circle and G into the disk") {
    for (const CircularDomain& dom : {two_hole_domain(), CircularDomain::annulus(0.25, 1.0)}) {
        auto maps = boundary_maps(dom);
        for (int i = 0; i < dom.connectivity(); ++i) {
            const Circle& c = dom.component_circle(i);
            for (int k = 0; k < 64; ++k) {
                double t = kTwoPi * k / 64.0;
                CHECK(std::abs(std::abs(mobius_apply(maps[(std::size_t)i], c.point(t))) - 1.0) <
                      1e-12);
            }
        }
        for (int k = 0; k < 200; ++k) {
            Complex z(uniform(-2, 2), uniform(-2, 2));
            if (!dom.contains(z)) continue;
            for (int i = 0; i < dom.connectivity(); ++i)
                CHECK(std::abs(mobius_apply(maps[(std::size_t)i], z)) < 1.0);
        }
    }
}

TEST_CASE("mobius apply basics") {
    CHECK(mobius_apply(MobiusMap(), Complex(3, 4)) == Complex(3, 4));
    MobiusMap recip(Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0));
    CHECK(std::abs(mobius_apply(recip, Complex(2, 0)) - Complex(0.5, 0)) < 1e-15);
    CHECK_THROWS_AS(mobius_apply(recip, Complex(0, 0)), PoleHit);
}

TEST_CASE("mobius group laws") {
    for (int trial = 0; trial < 50; ++trial) {
        MobiusMap m1 = random_mobius(), m2 = random_mobius();
        MobiusMap both = mobius_compose(m1, m2);
        Complex z(uniform(-0.9, 0.9), uniform(-0.9, 0.9));
        Complex inner = mobius_apply(m2, z);
        CHECK(std::abs(mobius_apply(both, z) - mobius_apply(m1, inner)) < 1e-12);
        CHECK(std::abs(mobius_apply(mobius_inverse(m1), mobius_apply(m1, z)) - z) < 1e-12);
    }
    for (int trial = 0; trial < 10; ++trial) {
        MobiusMap a = random_mobius(), b = random_mobius(), c = random_mobius();
        MobiusMap left = mobius_compose(mobius_compose(a, b), c);
        MobiusMap right = mobius_compose(a, mobius_compose(b, c));
        for (int k = 0; k < 10; ++k) {
            Complex z(uniform(-0.5, 0.5), uniform(-0.5, 0.5));
            CHECK(std::abs(mobius_apply(left, z) - mobius_apply(right, z)) < 1e-12);
        }
    }
}

TEST_CASE("inverse of the outer map is the dilation back") {
    CircularDomain big(Circle(Complex(0, 0), 2.0));
    MobiusMap inv = mobius_inverse(boundary_maps(big)[0]);
    CHECK(std::abs(mobius_apply(inv, Complex(0.5, 0.25)) - Complex(1.0, 0.5)) < 1e-14);
    MobiusMap id = mobius_compose(boundary_maps(big)[0], inv);
    // identity up to the normalizing scalar
    CHECK(std::abs(id.a() - id.d()) < 1e-14);
    CHECK(std::abs(id.b()) < 1e-14);
    CHECK(std::abs(id.c()) < 1e-14);
}

TEST_CASE("square membership on the disk and the annulus") {
    CircularDomain disk = CircularDomain::unit_disk();
    CarlesonSquare sq(0, 0.5, 0.0);
    CHECK(square_contains(disk, sq, Complex(0.75, 0)));
    CHECK_FALSE(square_contains(disk, sq, Complex(0.25, 0)));

    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CHECK(square_contains(ann, CarlesonSquare(1, 0.5, 0.0), Complex(0.3, 0)));
}

TEST_CASE("center membership needs full depth") {
    CircularDomain disk = CircularDomain::unit_disk();
    CHECK(square_contains(disk, CarlesonSquare(0, 1.0, 1.0), Complex(0, 0)));
    CHECK_FALSE(square_contains(disk, CarlesonSquare(0, 0.999, 1.0), Complex(0, 0)));
}

TEST_CASE("admissible depth") {
    CHECK(admissible_depth(CircularDomain::unit_disk(), 0) == doctest::Approx(1.0));
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CHECK(admissible_depth(ann, 0) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(admissible_depth(ann, 1) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("admissible depth is sharp under preimage sampling") {
    CircularDomain dom = two_hole_domain();
    for (int i = 0; i < dom.connectivity(); ++i) {
        double cap = admissible_depth(dom, i);
        MobiusMap finv = mobius_inverse(boundary_maps(dom)[(std::size_t)i]);
        bool exited_above = false;
        for (int k = 0; k < 256; ++k) {
            double t = kTwoPi * k / 256.0;
            // Just inside the cap: the deep edge of the square stays in G.
            Complex deep_in = mobius_apply(finv, std::polar(1.0 - 0.999 * cap, t));
            CHECK(dom.contains(deep_in));
            // Just beyond the cap (when available): some anchor exits G.
            if (cap < 0.999) {
                Complex deep_out = mobius_apply(finv, std::polar(1.0 - 1.01 * cap, t));
                if (!dom.contains(deep_out)) exited_above = true;
            }
        }
        if (cap < 0.999) CHECK(exited_above);
    }
}

TEST_CASE("square arclength values and quadrature audit") {
    CircularDomain disk = CircularDomain::unit_disk();
    CHECK(square_arclength(disk, CarlesonSquare(0, 0.5, 0.3)) == doctest::Approx(0.5));

    CircularDomain big(Circle(Complex(0, 0), 2.0));
    CarlesonSquare sq0(0, 0.5, 1.2);
    CHECK(square_arclength(big, sq0) == doctest::Approx(1.0));
    CHECK(std::abs(square_arclength(big, sq0) - arc_integral(big, sq0)) < 1e-9);

    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CarlesonSquare sq1(1, 0.4, 2.0);
    CHECK(square_arclength(ann, sq1) == doctest::Approx(0.1));
    CHECK(std::abs(square_arclength(ann, sq1) - arc_integral(ann, sq1)) < 1e-9);

    for (int trial = 0; trial < 20; ++trial) {
        CircularDomain dom = two_hole_domain();
        int i = (int)(rng() % 3);
        double cap = admissible_depth(dom, i);
        CarlesonSquare sq(i, uniform(0.05, cap), uniform(0, kTwoPi));
        CHECK(std::abs(square_arclength(dom, sq) - arc_integral(dom, sq)) < 1e-9);
    }
}

TEST_CASE("square membership agrees with the geometric preimage") {
    for (const CircularDomain& dom : {CircularDomain::unit_disk(),
                                      CircularDomain::annulus(0.25, 1.0), two_hole_domain()}) {
        for (int trial = 0; trial < 400; ++trial) {
            int i = (int)(rng() % (std::size_t)dom.connectivity());
            CarlesonSquare sq(i, uniform(0.01, admissible_depth(dom, i)), uniform(0, kTwoPi));
            double R = dom.outer().radius;
            Complex z = dom.outer().center + Complex(uniform(-R, R), uniform(-R, R));
            if (!dom.contains(z)) continue;
            CHECK(square_contains(dom, sq, z) == geometric_membership(dom, sq, z));
        }
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(Circle(Complex(0, 0), 0.0), InvalidDomain);
    CHECK_THROWS_AS(Circle(Complex(0, 0), -1.0), InvalidDomain);
    // inner disk touching the outer circle
    CHECK_THROWS_AS(CircularDomain(Circle(Complex(0, 0), 1.0), {Circle(Complex(0.5, 0), 0.5)}),
                    InvalidDomain);
    // overlapping inner disks
    CHECK_THROWS_AS(CircularDomain(Circle(Complex(0, 0), 2.0),
                                   {Circle(Complex(0, 0), 0.4), Circle(Complex(0.5, 0), 0.2)}),
                    InvalidDomain);
    CHECK_THROWS_AS(MobiusMap(Complex(1, 0), Complex(0, 0), Complex(1, 0), Complex(0, 0)),
                    InvalidMap);
    CHECK_THROWS_AS(CarlesonSquare(0, 0.0, 0.0), InvalidSquare);
    CHECK_THROWS_AS(CarlesonSquare(0, 1.5, 0.0), InvalidSquare);
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    CHECK_THROWS_AS(validate_square(ann, CarlesonSquare(1, 0.9, 0.0)), InvalidSquare);
    CHECK_THROWS_AS(validate_square(ann, CarlesonSquare(2, 0.1, 0.0)), InvalidSquare);
}
