#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carleson/box_tester.hpp"
#include "carleson/measures.hpp"

using namespace carleson;

namespace {

std::mt19937_64 rng(0x51a7eu);
double uniform(double lo, double hi) { return lo + (hi - lo) * ((rng() >> 11) * 0x1p-53); }

AtomicMeasure random_disk_measure(int n) {
    std::vector<std::pair<Complex, double>> atoms;
    for (int i = 0; i < n; ++i)
        atoms.emplace_back(std::polar(uniform(0.05, 0.95), uniform(0, kTwoPi)),
                           uniform(0.1, 1.0));
    return AtomicMeasure::from_atoms(atoms);
}

}  // namespace

TEST_CASE("total mass") {
    CHECK(AtomicMeasure().total_mass() == 0.0);
    auto mu = AtomicMeasure::from_atoms({{Complex(0.5, 0), 1.0}, {Complex(0.2, 0), 0.5}});
    CHECK(mu.total_mass() == doctest::Approx(1.5));
}

TEST_CASE("pushforward moves atoms and preserves mass") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    auto mu = AtomicMeasure::from_atoms({{Complex(0.5, 0), 1.0}});
    AtomicMeasure nu = pushforward(mu, boundary_maps(ann)[1]);
    CHECK(std::abs(nu.point(0) - Complex(0.5, 0)) < 1e-15);
    CHECK(nu.total_mass() == mu.total_mass());

    AtomicMeasure same = pushforward(mu, MobiusMap());
    CHECK(same.point(0) == mu.point(0));

    for (int trial = 0; trial < 20; ++trial) {
        AtomicMeasure m = random_disk_measure(8);
        MobiusMap f(Complex(1, 0), Complex(-0.3, 0), Complex(-0.3, 0), Complex(1, 0));
        AtomicMeasure round = pushforward(pushforward(m, f), mobius_inverse(f));
        CHECK(round.total_mass() == m.total_mass());
        for (Eigen::Index i = 0; i < m.size(); ++i)
            CHECK(std::abs(round.point(i) - m.point(i)) < 1e-12);
    }
}

TEST_CASE("pushforward through a pole is rejected") {
    MobiusMap recip(Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0));
    auto mu = AtomicMeasure::from_atoms({{Complex(0, 0), 1.0}});
    CHECK_THROWS_AS(pushforward(mu, recip), PoleHit);
}

TEST_CASE("restriction") {
    AtomicMeasure mu = random_disk_measure(10);
    AtomicMeasure all = restrict(mu, [](Complex) { return true; });
    CHECK(all.size() == mu.size());
    CHECK(restrict(mu, [](Complex) { return false; }).empty());

    auto in_right = [](Complex z) { return z.real() > 0; };
    auto in_left = [](Complex z) { return !(z.real() > 0); };
    double split = restrict(mu, in_right).total_mass() + restrict(mu, in_left).total_mass();
    CHECK(split == doctest::Approx(mu.total_mass()).epsilon(1e-15));

    AtomicMeasure once = restrict(mu, in_right);
    AtomicMeasure twice = restrict(once, in_right);
    CHECK(once.size() == twice.size());
}

TEST_CASE("sum and scale") {
    AtomicMeasure mu = random_disk_measure(5);
    std::vector<AtomicMeasure> parts{mu, AtomicMeasure()};
    AtomicMeasure s = sum(parts);
    CHECK(s.size() == mu.size());
    CHECK(scale(mu, 2.0).total_mass() == doctest::Approx(2.0 * mu.total_mass()));
    CHECK_THROWS_AS(scale(mu, 0.0), InvalidMeasure);
    CHECK_THROWS_AS(scale(mu, -1.0), InvalidMeasure);

    // partition restrictions recombine to the original as integrals
    auto in_right = [](Complex z) { return z.real() > 0; };
    auto in_left = [](Complex z) { return !(z.real() > 0); };
    std::vector<AtomicMeasure> split{restrict(mu, in_right), restrict(mu, in_left)};
    AtomicMeasure merged = sum(split);
    auto integral = [](const AtomicMeasure& m, auto f) {
        double v = 0;
        for (Eigen::Index i = 0; i < m.size(); ++i) v += m.weight(i) * f(m.point(i));
        return v;
    };
    auto probe = [](Complex z) { return std::abs(z) + z.real() * z.real(); };
    CHECK(integral(merged, probe) == doctest::Approx(integral(mu, probe)).epsilon(1e-15));
}

TEST_CASE("weights must be positive, locations on the boundary rejected") {
    CHECK_THROWS_AS(AtomicMeasure::from_atoms({{Complex(0.5, 0), 0.0}}), InvalidMeasure);
    CHECK_THROWS_AS(AtomicMeasure::from_atoms({{Complex(0.5, 0), -2.0}}), InvalidMeasure);
    CircularDomain disk = CircularDomain::unit_disk();
    auto boundary = AtomicMeasure::from_atoms({{Complex(1.0, 0), 1.0}});
    CHECK_THROWS_AS(validate_on(disk, boundary), AtomOutsideDomain);
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    auto inner_rim = AtomicMeasure::from_atoms({{Complex(0.25, 0), 1.0}});
    CHECK_THROWS_AS(validate_on(ann, inner_rim), AtomOutsideDomain);
    validate_on(ann, AtomicMeasure::from_atoms({{Complex(0.5, 0), 1.0}}));
}

TEST_CASE("restriction mass equals the box numerator") {
    for (const CircularDomain& dom :
         {CircularDomain::unit_disk(), CircularDomain::annulus(0.25, 1.0)}) {
        for (int trial = 0; trial < 50; ++trial) {
            AtomicMeasure mu = restrict(random_disk_measure(8),
                                        [&](Complex z) { return dom.contains(z); });
            int i = (int)(rng() % (std::size_t)dom.connectivity());
            CarlesonSquare sq(i, uniform(0.01, admissible_depth(dom, i)), uniform(0, kTwoPi));
            double direct = square_mass(dom, mu, sq);
            double via_restrict =
                restrict(mu, [&](Complex z) { return square_contains(dom, sq, z); }).total_mass();
            CHECK(direct == via_restrict);
        }
    }
}

TEST_CASE("qmc atomization lands in the domain with the advertised mass scale") {
    CircularDomain ann = CircularDomain::annulus(0.25, 1.0);
    AtomicMeasure mu = qmc_atomize(ann, [](Complex) { return 1.0; }, 4000);
    validate_on(ann, mu);
    // area of the annulus = pi (1 - 0.25^2)
    CHECK(mu.total_mass() == doctest::Approx(kPi * (1.0 - 0.0625)).epsilon(0.02));
}
