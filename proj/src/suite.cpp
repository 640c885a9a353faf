#include "carleson/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "carleson/analytic_norms.hpp"
#include "carleson/box_tester.hpp"
#include "carleson/conformal.hpp"
#include "carleson/harmonic.hpp"
#include "carleson/open_sets.hpp"

namespace carleson {

namespace {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * ((gen_() >> 11) * 0x1p-53); }
    int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % (std::uint64_t)(hi - lo + 1)); }

  private:
    std::mt19937_64 gen_;
};

AtomicMeasure random_disk_measure(Rng& rng, int max_atoms) {
    int n = rng.integer(1, max_atoms);
    std::vector<std::pair<Complex, double>> atoms;
    for (int i = 0; i < n; ++i)
        atoms.emplace_back(std::polar(rng.uniform(0.05, 0.95), rng.uniform(0, kTwoPi)),
                           rng.uniform(0.1, 1.0));
    return AtomicMeasure::from_atoms(atoms);
}

/// Cumulative uniform layers at radii 1 - 2^{-j}: a bounded-box family.
std::vector<AtomicMeasure> carleson_layer_family(int depth) {
    std::vector<AtomicMeasure> family;
    std::vector<std::pair<Complex, double>> atoms;
    for (int k = 1; k <= depth; ++k) {
        int count = std::min(1 << k, 64);
        for (int j = 0; j < count; ++j)
            atoms.emplace_back(std::polar(1.0 - std::exp2(-k), kTwoPi * j / count),
                               std::exp2(-k) / count);
        family.push_back(AtomicMeasure::from_atoms(atoms));
    }
    return family;
}

/// Cumulative escaping atoms (1 - 2^{-j}, 2^{-j/2}), j = 1..k.
AtomicMeasure escaping_cumulative(int k, double angle = 0.0, double weight_rate = 0.5) {
    std::vector<std::pair<Complex, double>> atoms;
    for (int j = 1; j <= k; ++j)
        atoms.emplace_back(std::polar(1.0 - std::exp2(-j), angle),
                           std::exp2(-weight_rate * j));
    return AtomicMeasure::from_atoms(atoms);
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

using Body = std::function<bool(std::ostringstream&)>;

CriterionResult run_criterion(int id, const std::string& name, double time_limit,
                              const Body& body) {
    CriterionResult result;
    result.id = id;
    result.name = name;
    result.time_limit = time_limit;
    Timer timer;
    std::ostringstream detail;
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& err) {
        detail << " exception: " << err.what();
    }
    result.seconds = timer.seconds();
    if (result.seconds >= time_limit) {
        ok = false;
        detail << " [time limit " << time_limit << "s exceeded]";
    }
    result.pass = ok;
    result.detail = detail.str();
    return result;
}

TrendClass chat_trend(const CircularDomain& domain, const std::vector<AtomicMeasure>& family,
                      int level) {
    std::vector<double> values;
    values.reserve(family.size());
    for (const AtomicMeasure& mu : family)
        values.push_back(estimate_constant(domain, mu, 2.0, level).c_hat);
    return classify_trend(values).classification;
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& options) {
    std::vector<CriterionResult> results;
    const CircularDomain disk = CircularDomain::unit_disk();
    const CircularDomain annulus = CircularDomain::annulus(0.25, 1.0);

    // 1 -- oracle equivalence on seeded random measures
    results.push_back(run_criterion(1, "oracle equivalence (100 random disk measures)", 10.0,
                                    [&](std::ostringstream& detail) {
        const double tol = options.inject_failure ? -1.0 : 1e-9;
        Rng rng(20260810);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            AtomicMeasure mu = random_disk_measure(rng, 10);
            double fast = box_ratio_disk(mu).kappa;
            double slow = box_ratio_disk_oracle(mu).kappa;
            worst = std::max(worst, std::abs(fast - slow));
        }
        detail << "max |delta kappa| = " << worst << " (tol " << tol << ")";
        return worst < tol;
    }));

    // 2 -- Theorem 0.3 square correspondence on the annulus
    results.push_back(run_criterion(2, "square correspondence mu(S)/s = (1/r_i) push ratio",
                                    5.0, [&](std::ostringstream& detail) {
        Rng rng(77001);
        std::vector<std::pair<Complex, double>> atoms;
        for (int i = 0; i < 12; ++i) {
            Complex z = std::polar(rng.uniform(0.26, 0.99), rng.uniform(0, kTwoPi));
            atoms.emplace_back(z, rng.uniform(0.1, 1.0));
        }
        AtomicMeasure mu = AtomicMeasure::from_atoms(atoms);
        auto maps = boundary_maps(annulus);
        const CircularDomain unit = CircularDomain::unit_disk();
        double worst = 0.0;
        for (int trial = 0; trial < 500; ++trial) {
            int i = rng.integer(0, 1);
            CarlesonSquare sq(i, rng.uniform(0.01, admissible_depth(annulus, i)),
                              rng.uniform(0, kTwoPi));
            double lhs = square_mass(annulus, mu, sq) / square_arclength(annulus, sq);
            AtomicMeasure pushed = pushforward(mu, maps[static_cast<std::size_t>(i)]);
            double mass = 0.0;
            CarlesonSquare disk_sq(0, sq.depth, sq.anchor);
            for (Eigen::Index j = 0; j < pushed.size(); ++j)
                if (square_contains(unit, disk_sq, pushed.point(j))) mass += pushed.weight(j);
            double rhs = (mass / sq.depth) / annulus.component_circle(i).radius;
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
        detail << "max relative mismatch = " << worst;
        return worst < 1e-12;
    }));

    // 3 -- Theorem 1.6 = Theorem 0.3 on circular domains
    results.push_back(run_criterion(3, "hull Riemann maps match boundary maps and pipelines agree",
                                    10.0, [&](std::ostringstream& detail) {
        CircularDomain two_holes(Circle(Complex(0, 0), 2.0),
                                 {Circle(Complex(-0.8, 0.1), 0.3),
                                  Circle(Complex(0.9, -0.4), 0.25)});
        for (const CircularDomain& dom : {annulus, two_holes}) {
            auto hulls = hull_riemann_maps(dom);
            auto bmaps = boundary_maps(dom);
            for (std::size_t i = 0; i < hulls.size(); ++i) {
                double diff = (std::get<MobiusMap>(hulls[i].node).coeffs() -
                               bmaps[i].coeffs()).cwiseAbs().maxCoeff();
                if (diff != 0.0) {
                    detail << "coefficient mismatch on component " << i;
                    return false;
                }
            }
        }
        Rng rng(5150);
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::pair<Complex, double>> atoms;
            int n = rng.integer(2, 8);
            for (int k = 0; k < n; ++k)
                atoms.emplace_back(std::polar(rng.uniform(0.27, 0.98), rng.uniform(0, kTwoPi)),
                                   rng.uniform(0.1, 1.0));
            AtomicMeasure mu = AtomicMeasure::from_atoms(atoms);
            BoxReport direct = box_ratio_circular(annulus, mu);
            auto hulls = hull_riemann_maps(annulus);
            for (int i = 0; i <= 1; ++i) {
                AtomicMeasure image =
                    pushforward(mu, [&](Complex z) { return hulls[(std::size_t)i](z); });
                double via_hull =
                    box_ratio_disk(image, admissible_depth(annulus, i)).kappa /
                    annulus.component_circle(i).radius;
                double direct_i = direct.per_component[static_cast<std::size_t>(i)].kappa;
                worst = std::max(worst,
                                 std::abs(via_hull - direct_i) / std::max(1.0, direct_i));
            }
        }
        detail << "20-measure corpus, max per-component mismatch = " << worst;
        if (worst >= 1e-12) return false;
        // trend classification through both pipelines
        std::vector<std::vector<AtomicMeasure>> families;
        families.push_back({});
        for (int k = 1; k <= 6; ++k)
            families.back().push_back(AtomicMeasure::from_atoms(
                {{std::polar(1.0 - std::exp2(-k), 0.0), std::exp2(-k / 2.0)},
                 {Complex(0.5, 0), 0.3}}));
        families.push_back({});
        for (int k = 1; k <= 6; ++k)
            families.back().push_back(
                AtomicMeasure::from_atoms({{Complex(0.5, 0.2), 1.0}, {Complex(-0.4, 0.1), 0.5}}));
        for (const auto& family : families) {
            std::vector<double> via_direct, via_hull;
            for (const AtomicMeasure& mu : family) {
                AtomicMeasure inside = restrict(mu, [&](Complex z) { return annulus.contains(z); });
                via_direct.push_back(box_ratio_circular(annulus, inside).kappa);
                auto hulls = hull_riemann_maps(annulus);
                double best = 0.0;
                for (int i = 0; i <= 1; ++i) {
                    AtomicMeasure image =
                        pushforward(inside, [&](Complex z) { return hulls[(std::size_t)i](z); });
                    best = std::max(best,
                                    box_ratio_disk(image, admissible_depth(annulus, i)).kappa /
                                        annulus.component_circle(i).radius);
                }
                via_hull.push_back(best);
            }
            if (classify_trend(via_direct).classification !=
                classify_trend(via_hull).classification) {
                detail << " trend classification disagreement";
                return false;
            }
        }
        return true;
    }));

    // 4 -- Monte Carlo harmonic-measure calibration
    results.push_back(run_criterion(4, "walk-on-spheres calibration (disk and annulus)", 30.0,
                                    [&](std::ostringstream& detail) {
        BoundaryPartition halves({Arc(0, 0.0, kPi), Arc(0, kPi, kPi)});
        HarmonicEstimate disk_est =
            harmonic_measure_mc(disk, Complex(0, 0), halves, 10000, 4);
        double disk_err = std::abs(disk_est.arcs[0].probability - 0.5);
        double disk_sigma = disk_est.arcs[0].std_error;

        HarmonicEstimate ann_est = harmonic_measure_mc(
            annulus, Complex(0.5, 0), BoundaryPartition::full(annulus), 10000, 4);
        double target = std::log(0.5) / std::log(0.25);
        double ann_err = std::abs(ann_est.arcs[1].probability - target);
        double ann_sigma = ann_est.arcs[1].std_error;
        detail << "disk |p-0.5| = " << disk_err << " (3 sigma " << 3 * disk_sigma
               << "), annulus |p-0.5| = " << ann_err << " (3 sigma " << 3 * ann_sigma << ")";
        return disk_err <= 3 * disk_sigma && ann_err <= 3 * ann_sigma;
    }));

    // 5 -- point-mass sharpness
    results.push_back(run_criterion(5, "estimate_constant(delta_0) = 1 for q in {1,2,4}", 5.0,
                                    [&](std::ostringstream& detail) {
        auto delta = AtomicMeasure::from_atoms({{Complex(0, 0), 1.0}});
        NormOptions at_zero;
        at_zero.evaluation_point = Complex(0, 0);
        double worst = 0.0;
        for (double q : {1.0, 2.0, 4.0}) {
            ConstantEstimate est = estimate_constant(disk, delta, q, 3, at_zero);
            worst = std::max(worst, std::abs(est.c_hat - 1.0));
        }
        detail << "max |c_hat - 1| = " << worst;
        return worst < 1e-9;
    }));

    // 6 -- embedding-direction audit and divergence detection
    results.push_back(run_criterion(6, "embedding audit (kappa <= 1 corpus, escaping family)",
                                    60.0, [&](std::ostringstream& detail) {
        Rng rng(60601);
        double worst_chat = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            AtomicMeasure mu = random_disk_measure(rng, 10);
            double kappa = box_ratio_disk(mu).kappa;
            AtomicMeasure normalized = scale(mu, (1.0 - 1e-12) / kappa);
            if (box_ratio_disk(normalized).kappa > 1.0) {
                detail << "normalization failed";
                return false;
            }
            worst_chat =
                std::max(worst_chat, estimate_constant(disk, normalized, 2.0, 3).c_hat);
        }
        detail << "max c_hat over kappa<=1 corpus = " << worst_chat << "; ";
        if (worst_chat > 40.0) return false;

        // single escaping atoms: kappa_k = 2^{k/2} exactly
        for (int k = 6; k <= 12; ++k) {
            auto single = AtomicMeasure::from_atoms(
                {{Complex(1.0 - std::exp2(-k), 0), std::exp2(-k / 2.0)}});
            double kappa = box_ratio_disk(single).kappa;
            double expected = std::exp2(k / 2.0);
            if (std::abs(kappa - expected) > 1e-13 * expected) {
                detail << "kappa_" << k << " = " << kappa << " != " << expected;
                return false;
            }
        }
        // cumulative c_hat: strictly increasing, factor >= 1.15 per doubling
        std::vector<double> chat;
        for (int k = 6; k <= 12; ++k)
            chat.push_back(estimate_constant(disk, escaping_cumulative(k), 2.0, 3).c_hat);
        detail << "c_hat(k=6..12) steps:";
        bool increasing = true;
        for (std::size_t j = 1; j < chat.size(); ++j) {
            detail << " " << chat[j] / chat[j - 1];
            increasing = increasing && chat[j] > chat[j - 1];
        }
        double doubling = chat.back() / chat.front();
        detail << "; doubling factor c_12/c_6 = " << doubling;
        return increasing && doubling >= 1.15;
    }));

    // 7 -- Theorem 1.2 desk form: classification invariant under pushforward
    results.push_back(run_criterion(7, "trend classification invariant under conformal charts",
                                    60.0, [&](std::ostringstream& detail) {
        std::vector<std::vector<AtomicMeasure>> families;
        std::vector<TrendClass> expected;
        // bounded families
        families.push_back(carleson_layer_family(6));
        expected.push_back(TrendClass::Bounded);
        families.push_back(std::vector<AtomicMeasure>(
            6, AtomicMeasure::from_atoms({{Complex(0.5, 0), 1.0}})));
        expected.push_back(TrendClass::Bounded);
        {
            std::vector<AtomicMeasure> ring;
            for (int k = 1; k <= 6; ++k) {
                std::vector<std::pair<Complex, double>> atoms;
                for (int j = 0; j < k; ++j)
                    atoms.emplace_back(std::polar(0.6, kTwoPi * j / k), 1.0 / k);
                ring.push_back(AtomicMeasure::from_atoms(atoms));
            }
            families.push_back(ring);
            expected.push_back(TrendClass::Bounded);
        }
        {
            std::vector<AtomicMeasure> shrinking;
            for (int k = 1; k <= 6; ++k)
                shrinking.push_back(
                    AtomicMeasure::from_atoms({{Complex(0.3, 0.1), std::exp2(-k)}}));
            families.push_back(shrinking);
            expected.push_back(TrendClass::Bounded);
        }
        {
            std::vector<AtomicMeasure> pair;
            for (int k = 1; k <= 6; ++k)
                pair.push_back(AtomicMeasure::from_atoms(
                    {{Complex(0.4, 0.0), 0.7}, {Complex(-0.3, 0.25), 0.4}}));
            families.push_back(pair);
            expected.push_back(TrendClass::Bounded);
        }
        // divergent families
        for (double rate : {0.5, 0.25}) {
            std::vector<AtomicMeasure> esc;
            for (int k = 1; k <= 6; ++k) esc.push_back(escaping_cumulative(k, 0.0, rate));
            families.push_back(esc);
            expected.push_back(TrendClass::Divergent);
        }
        {
            std::vector<AtomicMeasure> single;
            for (int k = 1; k <= 6; ++k)
                single.push_back(AtomicMeasure::from_atoms(
                    {{Complex(1.0 - std::exp2(-k), 0), 1.0}}));
            families.push_back(single);
            expected.push_back(TrendClass::Divergent);
        }
        {
            std::vector<AtomicMeasure> two_sided;
            for (int k = 1; k <= 6; ++k) {
                AtomicMeasure a = escaping_cumulative(k, 0.0);
                AtomicMeasure b = escaping_cumulative(k, kPi);
                std::vector<AtomicMeasure> parts{a, b};
                two_sided.push_back(sum(parts));
            }
            families.push_back(two_sided);
            expected.push_back(TrendClass::Divergent);
        }
        {
            std::vector<AtomicMeasure> esc;
            for (int k = 1; k <= 6; ++k) esc.push_back(escaping_cumulative(k, kPi / 2, 0.4));
            families.push_back(esc);
            expected.push_back(TrendClass::Divergent);
        }

        PresentedDomain bent(disk, ConformalMap::quad(Complex(0.3, 0)));
        MobiusMap automorphism(Complex(1, 0), Complex(-0.3, 0), Complex(-0.3, 0),
                               Complex(1, 0));
        PresentedDomain composed_chart = PresentedDomain(
            disk, ConformalMap::compose({ConformalMap::quad(Complex(0.2, 0.1)),
                                         ConformalMap::mobius(automorphism)}));
        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            TrendClass base_class = chat_trend(disk, families[fi], 3);
            if (base_class != expected[fi]) {
                detail << "family " << fi << " base classification off";
                return false;
            }
            // through the quadratic chart and back (Theorem 1.2)
            std::vector<AtomicMeasure> back;
            for (const AtomicMeasure& mu : families[fi]) {
                AtomicMeasure image =
                    pushforward(mu, [&](Complex z) { return bent.chart()(z); });
                back.push_back(pushforward_measure(bent, image));
            }
            if (chat_trend(disk, back, 3) != base_class) {
                detail << "family " << fi << " changed class through the quadratic chart";
                return false;
            }
            // through a disk automorphism, classified directly (Theorem 1.2)
            std::vector<AtomicMeasure> rotated;
            for (const AtomicMeasure& mu : families[fi])
                rotated.push_back(pushforward(mu, automorphism));
            if (chat_trend(disk, rotated, 3) != base_class) {
                detail << "family " << fi << " changed class under an automorphism";
                return false;
            }
            // composed charts (Corollary 1.3)
            std::vector<AtomicMeasure> composed_back;
            for (const AtomicMeasure& mu : families[fi]) {
                AtomicMeasure image =
                    pushforward(mu, [&](Complex z) { return composed_chart.chart()(z); });
                composed_back.push_back(pushforward_measure(composed_chart, image));
            }
            if (chat_trend(disk, composed_back, 3) != base_class) {
                detail << "family " << fi << " changed class through composed charts";
                return false;
            }
        }
        detail << families.size() << " families, all classifications invariant";
        return true;
    }));

    // 8 -- Theorem 2.2 weighted criterion
    results.push_back(run_criterion(8, "weighted criterion C* and composite bound", 30.0,
                                    [&](std::ostringstream& detail) {
        auto translate = [](Complex offset) {
            return ConformalMap::mobius(
                MobiusMap(Complex(1, 0), offset, Complex(0, 0), Complex(1, 0)));
        };
        std::vector<PresentedDomain> comps;
        for (int n = 0; n < 3; ++n)
            comps.emplace_back(CircularDomain::unit_disk(), translate(Complex(3.0 * n, 0)));
        OpenSetDomain openset(comps);
        auto mu = AtomicMeasure::from_atoms({{Complex(0, 0), 0.25},
                                             {Complex(3, 0), 0.0625},
                                             {Complex(6, 0), 0.015625}});
        WeightedCriterionReport report = weighted_criterion(openset, mu, 1, 1);
        detail << "C* = " << report.c_star;
        if (std::abs(report.c_star - 0.5) > 1e-9) return false;
        if (!report.composite_within) return false;

        Rng rng(88088);
        OpenSetDomain two({comps[0], comps[1]});
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<std::pair<Complex, double>> atoms;
            for (int k = 0; k < rng.integer(1, 4); ++k)
                atoms.emplace_back(std::polar(rng.uniform(0, 0.8), rng.uniform(0, kTwoPi)),
                                   rng.uniform(0.05, 0.5));
            for (int k = 0; k < rng.integer(1, 4); ++k)
                atoms.emplace_back(
                    Complex(3, 0) + std::polar(rng.uniform(0, 0.8), rng.uniform(0, kTwoPi)),
                    rng.uniform(0.05, 0.5));
            WeightedCriterionReport r =
                weighted_criterion(two, AtomicMeasure::from_atoms(atoms),
                                   (trial % 2) ? 1.0 : 2.0, 1);
            if (!r.composite_within) {
                detail << "; composite exceeded C* on trial " << trial;
                return false;
            }
        }

        // the Remark's weights recompute C*
        ComponentReport base = component_constants(two, restrict(mu, [&](Complex z) {
                                                       return std::abs(z) < 1.0 ||
                                                              std::abs(z - Complex(3, 0)) < 1.0;
                                                   }),
                                                   1, 1);
        double c1 = base.per_component[0].c_hat, c2 = base.per_component[1].c_hat;
        OpenSetDomain reweighted = remark_weights(two, {0.9, 0.1});
        ComponentReport skew = component_constants(reweighted, restrict(mu, [&](Complex z) {
                                                       return std::abs(z) < 1.0 ||
                                                              std::abs(z - Complex(3, 0)) < 1.0;
                                                   }),
                                                   1, 1);
        double expected = std::max(c1 / 0.9, c2 / 0.1);
        detail << "; remark C* = " << skew.c_star << " (expected " << expected << ")";
        return std::abs(skew.c_star - expected) <= 1e-9 * std::max(1.0, expected);
    }));

    // 9 -- exact homogeneity and monotonicity properties
    results.push_back(run_criterion(9, "homogeneity and monotonicity (1e-12 arithmetic)", 10.0,
                                    [&](std::ostringstream& detail) {
        Rng rng(90909);
        for (int trial = 0; trial < 10; ++trial) {
            AtomicMeasure mu = random_disk_measure(rng, 8);
            double kappa = box_ratio_disk(mu).kappa;
            double doubled = box_ratio_disk(scale(mu, 2.0)).kappa;
            if (std::abs(doubled - 2.0 * kappa) > 1e-12 * std::max(1.0, 2.0 * kappa)) {
                detail << "kappa scaling failed";
                return false;
            }
            AtomicMeasure part = restrict(mu, [](Complex z) { return z.real() > 0; });
            if (!part.empty() && box_ratio_disk(part).kappa > kappa * (1 + 1e-12)) {
                detail << "restriction monotonicity failed";
                return false;
            }
            for (double q : {1.0, 2.0, 4.0}) {
                double base = estimate_constant(disk, mu, q, 1).c_hat;
                double scaled = estimate_constant(disk, scale(mu, 4.0), q, 1).c_hat;
                if (std::abs(scaled - qth_root(4.0, q) * base) > 1e-12 * std::max(1.0, scaled)) {
                    detail << "c_hat homogeneity failed at q=" << q;
                    return false;
                }
            }
            double l1 = estimate_constant(disk, mu, 2.0, 1).c_hat;
            double l2 = estimate_constant(disk, mu, 2.0, 2).c_hat;
            double l3 = estimate_constant(disk, mu, 2.0, 3).c_hat;
            if (!(l2 >= l1 && l3 >= l2)) {
                detail << "family-level monotonicity failed";
                return false;
            }
        }
        detail << "10 randomized rounds clean";
        return true;
    }));

    return results;
}

std::string format_suite_table(const std::vector<CriterionResult>& results) {
    std::ostringstream out;
    for (const CriterionResult& r : results) {
        out << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << ": " << r.name
            << " (" << r.seconds << "s";
        if (!r.detail.empty()) out << "; " << r.detail;
        out << ")\n";
    }
    return out.str();
}

}  // namespace carleson
