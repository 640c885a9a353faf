#include "carleson/conformal.hpp"

#include <algorithm>

namespace carleson {

QuadPoly::QuadPoly(Complex b) : beta(b) {
    if (!(std::abs(b) < 0.5))
        throw InvalidMap("quadratic polynomial needs |beta| < 1/2 for univalence");
}

ConformalMap ConformalMap::compose(std::vector<ConformalMap> maps) {
    if (maps.empty()) throw InvalidMap("composition must not be empty");
    return ConformalMap{Composition{std::move(maps)}};
}

Complex ConformalMap::operator()(Complex z) const {
    if (const auto* m = std::get_if<MobiusMap>(&node)) return mobius_apply(*m, z);
    if (const auto* p = std::get_if<QuadPoly>(&node)) return z + p->beta * z * z;
    const Composition& chain = std::get<Composition>(node);
    Complex w = z;
    for (auto it = chain.maps.rbegin(); it != chain.maps.rend(); ++it) w = (*it)(w);
    return w;
}

Complex ConformalMap::derivative(Complex z) const {
    if (const auto* m = std::get_if<MobiusMap>(&node)) return mobius_derivative(*m, z);
    if (const auto* p = std::get_if<QuadPoly>(&node)) return 1.0 + 2.0 * p->beta * z;
    const Composition& chain = std::get<Composition>(node);
    Complex value = z, deriv = 1.0;
    for (auto it = chain.maps.rbegin(); it != chain.maps.rend(); ++it) {
        deriv *= it->derivative(value);
        value = (*it)(value);
    }
    return deriv;
}

namespace {

Complex invert_quad(const QuadPoly& p, Complex w, const Complex* guess) {
    Complex z;
    if (std::abs(p.beta) < 1e-15) {
        z = w;
    } else {
        // roots of beta z^2 + z - w = 0; the stable form 2w/(1 + sqrt(..))
        // is the branch inside the disk
        Complex s = std::sqrt(1.0 + 4.0 * p.beta * w);
        Complex root_in = 2.0 * w / (1.0 + s);
        if (guess) {
            Complex root_out = -(1.0 + s) / (2.0 * p.beta);
            z = std::abs(root_in - *guess) <= std::abs(root_out - *guess) ? root_in : root_out;
        } else {
            z = root_in;
        }
    }
    for (int it = 0; it < 100; ++it) {
        Complex residual = z + p.beta * z * z - w;
        if (std::abs(residual) <= 1e-12) return z;
        Complex d = 1.0 + 2.0 * p.beta * z;
        if (std::abs(d) < 1e-14) break;
        z -= residual / d;
    }
    if (std::abs(z + p.beta * z * z - w) <= 1e-12) return z;
    throw NoConvergence("quadratic chart inversion did not reach the residual target");
}

Complex invert_impl(const ConformalMap& map, Complex w, const Complex* guess) {
    if (const auto* m = std::get_if<MobiusMap>(&map.node))
        return mobius_apply(mobius_inverse(*m), w);
    if (const auto* p = std::get_if<QuadPoly>(&map.node)) return invert_quad(*p, w, guess);
    const Composition& chain = std::get<Composition>(map.node);
    Complex z = w;
    for (const ConformalMap& layer : chain.maps) z = invert_impl(layer, z, guess);
    return z;
}

}  // namespace

Complex invert(const ConformalMap& map, Complex w) { return invert_impl(map, w, nullptr); }

Complex invert(const ConformalMap& map, Complex w, Complex guess) {
    return invert_impl(map, w, &guess);
}

PresentedDomain::PresentedDomain(CircularDomain base, ConformalMap chart)
    : base_(std::move(base)), chart_(std::move(chart)) {
    UnivalenceReport report = univalence_audit(base_, [this](Complex z) {
        return chart_(z);
    }, 256);
    if (!report.pass)
        throw InvalidMap("chart fails the boundary univalence audit on its base domain");
    // 32x32 polar preimage table over the outer disk, kept for Newton seeds
    const Circle& outer = base_.outer();
    table_.reserve(32 * 32);
    for (int ir = 0; ir < 32; ++ir)
        for (int it = 0; it < 32; ++it) {
            Complex z = outer.center + std::polar(outer.radius * (ir + 0.5) / 32.0,
                                                  kTwoPi * it / 32.0);
            if (!base_.contains(z)) continue;
            table_.emplace_back(chart_(z), z);
        }
}

Complex PresentedDomain::preimage_guess(Complex w) const {
    Complex best = base_.outer().center;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& [image, source] : table_) {
        double d = std::abs(image - w);
        if (d < best_dist) {
            best_dist = d;
            best = source;
        }
    }
    return best;
}

PresentedDomain PresentedDomain::identity_disk() {
    return PresentedDomain(CircularDomain::unit_disk(), ConformalMap());
}

AtomicMeasure pushforward_measure(const PresentedDomain& presented, const AtomicMeasure& mu) {
    Eigen::ArrayXcd pts(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) {
        Complex z = invert(presented.chart(), mu.point(i), presented.preimage_guess(mu.point(i)));
        if (!presented.base().contains(z))
            throw AtomOutsideDomain("atom is not in the chart image of the base domain");
        pts[i] = z;
    }
    return AtomicMeasure(std::move(pts), mu.weights());
}

std::vector<ConformalMap> hull_riemann_maps(const CircularDomain& domain) {
    std::vector<ConformalMap> maps;
    for (const MobiusMap& m : boundary_maps(domain)) maps.push_back(ConformalMap::mobius(m));
    return maps;
}

UnivalenceReport univalence_audit(const CircularDomain& base,
                                  const std::function<Complex(Complex)>& boundary_map,
                                  int mesh, double tolerance) {
    if (mesh < 64) throw InvalidMap("univalence audit needs a mesh of at least 64");
    struct Sample {
        int component;
        double angle;
        Complex point;
        Complex image;
    };
    std::vector<Sample> samples;
    samples.reserve(static_cast<std::size_t>(mesh) * (std::size_t)base.connectivity());
    for (int i = 0; i < base.connectivity(); ++i) {
        const Circle& c = base.component_circle(i);
        for (int k = 0; k < mesh; ++k) {
            double t = kTwoPi * k / mesh;
            Complex z = c.point(t);
            samples.push_back({i, t, z, boundary_map(z)});
        }
    }
    UnivalenceReport report;
    report.min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < samples.size(); ++a)
        for (std::size_t b = a + 1; b < samples.size(); ++b) {
            double separation;
            if (samples[a].component == samples[b].component) {
                double d = ccw_distance(samples[a].angle, samples[b].angle);
                d = std::min(d, kTwoPi - d);
                separation =
                    base.component_circle(samples[a].component).radius * d;
            } else {
                separation = std::abs(samples[a].point - samples[b].point);
            }
            double ratio = std::abs(samples[a].image - samples[b].image) / separation;
            if (ratio < report.min_ratio) {
                report.min_ratio = ratio;
                report.worst = {a, b};
            }
        }
    report.pass = report.min_ratio >= tolerance;
    return report;
}

UnivalenceReport univalence_audit(const PresentedDomain& presented, int mesh,
                                  double tolerance) {
    return univalence_audit(presented.base(), [&](Complex z) {
        return presented.chart()(z);
    }, mesh, tolerance);
}

}  // namespace carleson
