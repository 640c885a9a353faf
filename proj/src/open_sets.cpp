#include "carleson/open_sets.hpp"

#include <algorithm>
#include <limits>

#include "carleson/box_tester.hpp"

namespace carleson {

namespace {

std::vector<Complex> boundary_mesh(const PresentedDomain& component, int mesh) {
    std::vector<Complex> points;
    const CircularDomain& base = component.base();
    points.reserve(static_cast<std::size_t>(mesh) * (std::size_t)base.connectivity());
    for (int i = 0; i < base.connectivity(); ++i) {
        const Circle& c = base.component_circle(i);
        for (int k = 0; k < mesh; ++k)
            points.push_back(component.chart()(c.point(kTwoPi * k / mesh)));
    }
    return points;
}

double winding_number(const PresentedDomain& component, Complex z, int mesh) {
    const CircularDomain& base = component.base();
    double total = 0.0;
    for (int i = 0; i < base.connectivity(); ++i) {
        const Circle& c = base.component_circle(i);
        double angle = 0.0;
        Complex prev = component.chart()(c.point(0.0)) - z;
        for (int k = 1; k <= mesh; ++k) {
            Complex cur = component.chart()(c.point(kTwoPi * k / mesh)) - z;
            angle += std::arg(cur / prev);
            prev = cur;
        }
        // base orientation: outer circle counterclockwise, holes clockwise
        total += (i == 0 ? angle : -angle) / kTwoPi;
    }
    return total;
}

}  // namespace

bool point_in_component(const PresentedDomain& component, Complex z, int mesh) {
    return std::abs(winding_number(component, z, mesh) - 1.0) < 0.5;
}

SingularityCertificate mutually_singular_check(const std::vector<PresentedDomain>& components,
                                               int mesh) {
    SingularityCertificate cert;
    cert.min_boundary_gap = std::numeric_limits<double>::infinity();
    if (components.size() < 2) return cert;
    std::vector<std::vector<Complex>> meshes;
    meshes.reserve(components.size());
    for (const PresentedDomain& c : components) meshes.push_back(boundary_mesh(c, mesh));
    for (std::size_t a = 0; a < components.size(); ++a)
        for (std::size_t b = a + 1; b < components.size(); ++b)
            for (Complex u : meshes[a])
                for (Complex v : meshes[b]) {
                    double d = std::abs(u - v);
                    if (d < cert.min_boundary_gap) {
                        cert.min_boundary_gap = d;
                        cert.closest_pair = {static_cast<int>(a), static_cast<int>(b)};
                    }
                }
    if (!(cert.min_boundary_gap > 1e-9)) cert.status = SingularityCertificate::Status::Indeterminate;
    return cert;
}

OpenSetDomain::OpenSetDomain(std::vector<PresentedDomain> components,
                             std::vector<double> weights)
    : components_(std::move(components)), weights_(std::move(weights)) {
    if (components_.empty()) throw InvalidDomain("open set needs at least one component");
    if (weights_.empty()) weights_ = default_weights(components_.size());
    if (weights_.size() != components_.size())
        throw InvalidWeights("weight count must match the component count");
    double total = 0.0;
    for (double w : weights_) {
        if (!(w > 0.0)) throw InvalidWeights("weights must be positive");
        total += w;
    }
    if (total > 1.0 + 1e-12) throw InvalidWeights("weights must sum to at most 1");

    SingularityCertificate cert = mutually_singular_check(components_, 128);
    if (!cert.verdict())
        throw InvalidDomain("component boundary closures are not pairwise disjoint");
    // no component may sit inside another
    for (std::size_t a = 0; a < components_.size(); ++a)
        for (std::size_t b = 0; b < components_.size(); ++b) {
            if (a == b) continue;
            Complex probe = components_[b].chart()(
                components_[b].base().outer().point(0.0));
            if (point_in_component(components_[a], probe, 128))
                throw InvalidDomain("component closures are nested");
        }
}

std::vector<double> OpenSetDomain::default_weights(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = std::exp2(-static_cast<double>(k + 1));
    return w;
}

OpenSetDomain remark_weights(const OpenSetDomain& openset, const std::vector<double>& b) {
    if (b.size() != openset.size())
        throw InvalidWeights("weight count must match the component count");
    return OpenSetDomain(openset.components(), b);
}

std::vector<OpenSetArcMass> open_set_harmonic(
    const OpenSetDomain& openset,
    const std::vector<std::pair<int, BoundaryPartition>>& queries,
    const OpenSetHarmonicOptions& options) {
    std::vector<OpenSetArcMass> result;
    for (const auto& [index, partition] : queries) {
        if (index < 0 || index >= static_cast<int>(openset.size()))
            throw InvalidDomain("open set component index out of range");
        const PresentedDomain& component = openset.components()[(std::size_t)index];
        const CircularDomain& base = component.base();
        double weight = openset.weights()[(std::size_t)index];
        Complex eval;
        if (auto it = options.evaluation_points.find(index);
            it != options.evaluation_points.end())
            eval = it->second;
        else
            eval = default_evaluation_point(base);
        if (base.inner().empty()) {
            const Circle& circle = base.outer();
            Complex rel = (eval - circle.center) / circle.radius;
            for (const Arc& arc : partition.arcs()) {
                double p = harmonic_measure_disk(rel, arc.alpha, arc.width);
                result.push_back({index, arc, weight * p, 0.0});
            }
        } else {
            std::uint64_t seed = options.seed ^ (0x9e3779b97f4a7c15ULL *
                                                 static_cast<std::uint64_t>(index + 1));
            HarmonicEstimate est =
                harmonic_measure_mc(base, eval, partition, options.walks, seed);
            for (const ArcEstimate& a : est.arcs)
                result.push_back({index, a.arc, weight * a.probability,
                                  weight * a.std_error});
        }
    }
    return result;
}

namespace {

std::vector<AtomicMeasure> split_by_component(const OpenSetDomain& openset,
                                              const AtomicMeasure& mu) {
    std::vector<std::vector<std::pair<Complex, double>>> buckets(openset.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        bool placed = false;
        for (std::size_t n = 0; n < openset.size(); ++n)
            if (point_in_component(openset.components()[n], mu.point(i))) {
                buckets[n].emplace_back(mu.point(i), mu.weight(i));
                placed = true;
                break;
            }
        if (!placed) throw AtomInNoComponent("atom lies in no component of the open set");
    }
    std::vector<AtomicMeasure> parts;
    parts.reserve(openset.size());
    for (auto& bucket : buckets) parts.push_back(AtomicMeasure::from_atoms(bucket));
    return parts;
}

}  // namespace

ComponentReport component_constants(const OpenSetDomain& openset, const AtomicMeasure& mu,
                                    double q, int level, const NormOptions& options) {
    ComponentReport report;
    std::vector<AtomicMeasure> parts = split_by_component(openset, mu);
    for (std::size_t n = 0; n < openset.size(); ++n) {
        const PresentedDomain& component = openset.components()[n];
        ComponentEntry entry;
        entry.component = static_cast<int>(n);
        entry.mass = parts[n].total_mass();
        if (!parts[n].empty()) {
            AtomicMeasure pushed = pushforward_measure(component, parts[n]);
            entry.kappa = box_ratio_circular(component.base(), pushed).kappa;
            ConstantEstimate est =
                estimate_constant(component.base(), pushed, q, level, options);
            entry.c_hat = est.c_hat;
            entry.c_hat_stderr = est.c_hat_stderr;
        }
        double ratio = entry.c_hat / openset.weights()[n];
        if (ratio > report.c_star) {
            report.c_star = ratio;
            report.c_star_component = static_cast<int>(n);
        }
        report.fitted_c.push_back(entry.c_hat);
        report.per_component.push_back(entry);
    }
    return report;
}

WeightedCriterionReport weighted_criterion(const OpenSetDomain& openset,
                                           const AtomicMeasure& mu, double q, int level,
                                           const NormOptions& options) {
    WeightedCriterionReport report;
    report.components = component_constants(openset, mu, q, level, options);
    report.c_star = report.components.c_star;

    // Composite constant over the per-component families extended by zero:
    // for f supported on component n, ||f||_{L^q(omega)} picks up the factor
    // weight_n^{1/q} (the proof's omega|F_n = omega_n / 2^n step).
    std::vector<AtomicMeasure> parts = split_by_component(openset, mu);
    for (std::size_t n = 0; n < openset.size(); ++n) {
        if (parts[n].empty()) continue;
        const PresentedDomain& component = openset.components()[n];
        AtomicMeasure pushed = pushforward_measure(component, parts[n]);
        Complex eval =
            options.evaluation_point.value_or(default_evaluation_point(component.base()));
        auto fam = cached_family_norms(component.base(), eval, q, level, options.nodes);
        double weight_root = qth_root(openset.weights()[n], q);
        for (std::size_t j = 0; j < fam->family.size(); ++j) {
            if (!(fam->norms[j].value > 0.0)) continue;
            double ratio = lq_norm_measure(fam->family[j], pushed, q) /
                           (weight_root * fam->norms[j].value);
            if (ratio > report.composite_c_hat) {
                report.composite_c_hat = ratio;
                report.composite_sigma =
                    ratio * fam->norms[j].std_error / fam->norms[j].value;
            }
        }
    }
    report.composite_within =
        report.composite_c_hat <=
        report.c_star * (1.0 + 1e-9) + 3.0 * report.composite_sigma + 1e-12;
    report.verdict = report.composite_within ? "PASS" : "COMPOSITE_EXCEEDS";
    return report;
}

}  // namespace carleson
