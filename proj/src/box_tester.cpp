#include "carleson/box_tester.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace carleson {

namespace {

struct PolarAtom {
    double radius = 0.0;
    double angle = 0.0;
    double weight = 0.0;
};

std::vector<PolarAtom> to_polar_sorted(const AtomicMeasure& mu) {
    std::vector<PolarAtom> atoms(static_cast<std::size_t>(mu.size()));
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        Complex z = mu.point(i);
        double r = std::abs(z);
        if (r >= 1.0) throw AtomOutsideDomain("atom not strictly inside the unit disk");
        atoms[static_cast<std::size_t>(i)] = {r, r == 0.0 ? 0.0 : wrap_angle(std::arg(z)),
                                              mu.weight(i)};
    }
    std::sort(atoms.begin(), atoms.end(),
              [](const PolarAtom& a, const PolarAtom& b) { return a.angle < b.angle; });
    return atoms;
}

/// Shared search core: maximum over candidate depths h of the best closed
/// window [t0, t0 + h] anchored at an atom angle, restricted to atoms with
/// 1 - r <= h. This equals the subset supremum (see header).
BoxReport disk_search(const std::vector<PolarAtom>& atoms, double depth_cap) {
    BoxReport report;
    const std::size_t n = atoms.size();
    if (n == 0) return report;

    std::vector<double> candidates;
    candidates.reserve(n * n);
    for (const PolarAtom& a : atoms) {
        double h = 1.0 - a.radius;
        if (h > 0.0 && h <= depth_cap) candidates.push_back(h);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            double h = ccw_distance(atoms[i].angle, atoms[j].angle);
            if (h > 0.0 && h <= depth_cap) candidates.push_back(h);
        }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<double> active(n), prefix(2 * n + 1);
    for (double h : candidates) {
        for (std::size_t j = 0; j < n; ++j)
            active[j] = (1.0 - atoms[j].radius <= h) ? atoms[j].weight : 0.0;
        prefix[0] = 0.0;
        for (std::size_t j = 0; j < 2 * n; ++j) prefix[j + 1] = prefix[j] + active[j % n];

        std::size_t end = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (end < i) end = i;
            while (end < i + n && ccw_distance(atoms[i].angle, atoms[end % n].angle) <= h) ++end;
            double mass = prefix[end] - prefix[i];
            if (mass <= 0.0) continue;
            double ratio = mass / h;
            if (ratio > report.kappa) {
                report.kappa = ratio;
                report.witness = CarlesonSquare(0, h, atoms[i].angle);
            }
        }
    }
    return report;
}

}  // namespace

BoxReport box_ratio_disk(const AtomicMeasure& mu, double depth_cap) {
    BoxReport report = disk_search(to_polar_sorted(mu), depth_cap);
    report.per_component = {{0, report.kappa, report.witness}};
    return report;
}

BoxReport box_ratio_disk_oracle(const AtomicMeasure& mu, double depth_cap) {
    if (mu.size() > 14) throw TooManyAtoms("subset oracle is limited to 14 atoms");
    std::vector<PolarAtom> atoms = to_polar_sorted(mu);
    const std::size_t n = atoms.size();
    BoxReport report;
    std::vector<std::size_t> members;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        members.clear();
        double minr = 1.0, weight = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1) {
                members.push_back(j);  // already in angular order
                minr = std::min(minr, atoms[j].radius);
                weight += atoms[j].weight;
            }
        // Minimal covering arc: the anchor follows the largest angular gap.
        double span = 0.0, anchor = atoms[members[0]].angle;
        if (members.size() > 1) {
            double max_gap = -1.0;
            std::size_t anchor_idx = 0;
            for (std::size_t k = 0; k < members.size(); ++k) {
                std::size_t next = (k + 1) % members.size();
                double gap = ccw_distance(atoms[members[k]].angle, atoms[members[next]].angle);
                if (gap > max_gap) {
                    max_gap = gap;
                    anchor_idx = next;
                }
            }
            anchor = atoms[members[anchor_idx]].angle;
            std::size_t far = (anchor_idx + members.size() - 1) % members.size();
            span = ccw_distance(anchor, atoms[members[far]].angle);
        }
        double h = std::max(1.0 - minr, span);
        if (h <= 0.0 || h > depth_cap) continue;
        double ratio = weight / h;
        if (ratio > report.kappa) {
            report.kappa = ratio;
            report.witness = CarlesonSquare(0, h, anchor);
        }
    }
    report.per_component = {{0, report.kappa, report.witness}};
    return report;
}

BoxReport box_ratio_circular(const CircularDomain& domain, const AtomicMeasure& mu) {
    validate_on(domain, mu);
    const std::vector<MobiusMap> maps = boundary_maps(domain);
    BoxReport report;
    for (int i = 0; i < domain.connectivity(); ++i) {
        AtomicMeasure pushed = pushforward(mu, maps[static_cast<std::size_t>(i)]);
        double cap = admissible_depth(domain, i);
        BoxReport disk = mu.empty() ? BoxReport{} : disk_search(to_polar_sorted(pushed), cap);
        double arc_factor = domain.component_circle(i).radius;
        ComponentRatio entry{i, disk.kappa / arc_factor, std::nullopt};
        if (disk.witness)
            entry.witness = CarlesonSquare(i, disk.witness->depth, disk.witness->anchor);
        if (entry.kappa > report.kappa) {
            report.kappa = entry.kappa;
            report.witness = entry.witness;
        }
        report.per_component.push_back(std::move(entry));
    }
    return report;
}

double square_mass(const CircularDomain& domain, const AtomicMeasure& mu,
                   const CarlesonSquare& square) {
    double mass = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (square_contains(domain, square, mu.point(i))) mass += mu.weight(i);
    return mass;
}

TrendReport classify_trend(const std::vector<double>& values, double divergence_slope) {
    TrendReport trend;
    trend.values = values;
    if (values.size() < 2) return trend;
    // Least squares of log2(v_k) against k, ignoring empty entries.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] <= 0.0) continue;
        double x = static_cast<double>(k);
        double y = std::log2(values[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        double denom = count * sxx - sx * sx;
        if (denom > 0.0) trend.log2_slope = (count * sxy - sx * sy) / denom;
    }
    trend.classification =
        trend.log2_slope > divergence_slope ? TrendClass::Divergent : TrendClass::Bounded;
    return trend;
}

TrendReport trend_analysis(const CircularDomain& domain,
                           const std::vector<AtomicMeasure>& family) {
    std::vector<double> kappas;
    kappas.reserve(family.size());
    for (const AtomicMeasure& mu : family)
        kappas.push_back(box_ratio_circular(domain, mu).kappa);
    return classify_trend(kappas);
}

}  // namespace carleson
