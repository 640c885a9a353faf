#include "carleson/plane_geometry.hpp"

#include <algorithm>
#include <limits>

namespace carleson {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Circle::Circle(Complex c, double r) : center(c), radius(r) {
    if (!finite(c) || !std::isfinite(r)) throw InvalidDomain("circle has non-finite data");
    if (r <= 0.0) throw InvalidDomain("circle radius must be positive");
}

CircularDomain::CircularDomain(Circle outer, std::vector<Circle> inner)
    : outer_(outer), inner_(std::move(inner)) {
    for (std::size_t i = 0; i < inner_.size(); ++i) {
        const Circle& ci = inner_[i];
        if (std::abs(ci.center - outer_.center) + ci.radius >= outer_.radius)
            throw InvalidDomain("inner disk not strictly inside the outer disk");
        for (std::size_t j = i + 1; j < inner_.size(); ++j) {
            const Circle& cj = inner_[j];
            if (std::abs(ci.center - cj.center) <= ci.radius + cj.radius)
                throw InvalidDomain("inner disks are not pairwise disjoint");
        }
    }
}

const Circle& CircularDomain::component_circle(int i) const {
    if (i == 0) return outer_;
    if (i < 0 || i > static_cast<int>(inner_.size()))
        throw InvalidDomain("boundary component index out of range");
    return inner_[static_cast<std::size_t>(i - 1)];
}

bool CircularDomain::contains(Complex z) const {
    if (std::abs(z - outer_.center) >= outer_.radius) return false;
    for (const Circle& c : inner_)
        if (std::abs(z - c.center) <= c.radius) return false;
    return true;
}

double CircularDomain::boundary_distance(Complex z) const {
    double d = outer_.radius - std::abs(z - outer_.center);
    for (const Circle& c : inner_) d = std::min(d, std::abs(z - c.center) - c.radius);
    return d;
}

MobiusMap::MobiusMap() : m_(Eigen::Matrix2cd::Identity()) {}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) {
    Eigen::Matrix2cd m;
    m << a, b, c, d;
    *this = MobiusMap(m);
}

MobiusMap::MobiusMap(const Eigen::Matrix2cd& coeffs) : m_(coeffs) {
    double scale = m_.cwiseAbs().maxCoeff();
    if (!std::isfinite(scale) || scale == 0.0) throw InvalidMap("mobius coefficients degenerate");
    m_ /= scale;
    if (std::abs(m_.determinant()) <= 1e-14)
        throw InvalidMap("mobius determinant vanishes after normalization");
}

Complex mobius_apply(const MobiusMap& m, Complex z) {
    Complex den = m.c() * z + m.d();
    if (std::abs(den) < 1e-14) throw PoleHit("mobius map evaluated at its pole");
    return (m.a() * z + m.b()) / den;
}

MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2) {
    return MobiusMap(Eigen::Matrix2cd(m1.coeffs() * m2.coeffs()));
}

MobiusMap mobius_inverse(const MobiusMap& m) {
    Eigen::Matrix2cd adj;
    adj << m.d(), -m.b(), -m.c(), m.a();
    return MobiusMap(adj);
}

Complex mobius_derivative(const MobiusMap& m, Complex z) {
    Complex den = m.c() * z + m.d();
    if (std::abs(den) < 1e-14) throw PoleHit("mobius derivative evaluated at the pole");
    return m.coeffs().determinant() / (den * den);
}

std::vector<MobiusMap> boundary_maps(const CircularDomain& domain) {
    std::vector<MobiusMap> maps;
    maps.reserve(static_cast<std::size_t>(domain.connectivity()));
    const Circle& outer = domain.outer();
    maps.emplace_back(Complex(1, 0), -outer.center, Complex(0, 0), Complex(outer.radius, 0));
    for (const Circle& c : domain.inner())
        maps.emplace_back(Complex(0, 0), Complex(c.radius, 0), Complex(1, 0), -c.center);
    return maps;
}

CarlesonSquare::CarlesonSquare(int i, double h, double t0)
    : boundary_index(i), depth(h), anchor(wrap_angle(t0)) {
    if (!(h > 0.0) || h > 1.0) throw InvalidSquare("square depth must lie in (0, 1]");
    if (i < 0) throw InvalidSquare("boundary index must be nonnegative");
}

double admissible_depth(const CircularDomain& domain, int i) {
    const Circle& outer = domain.outer();
    double h = 1.0;
    if (i == 0) {
        // The depth-h squares on the outer circle sweep the ring
        // {r0 (1-h) <= |z - a0| < r0}; it must clear every inner disk.
        for (const Circle& c : domain.inner()) {
            double clearance = (outer.radius - std::abs(c.center - outer.center) - c.radius) /
                               outer.radius;
            h = std::min(h, clearance);
        }
        return h;
    }
    const Circle& ci = domain.component_circle(i);
    // f_i-preimage of the ring is {r_i < |z - a_i| <= r_i/(1-h)}; its outer
    // radius must stay within the gap to every other boundary circle.
    double gap_to_outer = outer.radius - std::abs(ci.center - outer.center);
    h = std::min(h, 1.0 - ci.radius / gap_to_outer);
    for (int j = 1; j <= static_cast<int>(domain.inner().size()); ++j) {
        if (j == i) continue;
        const Circle& cj = domain.component_circle(j);
        double gap = std::abs(ci.center - cj.center) - cj.radius;
        h = std::min(h, 1.0 - ci.radius / gap);
    }
    return h;
}

void validate_square(const CircularDomain& domain, const CarlesonSquare& square) {
    if (square.boundary_index < 0 || square.boundary_index >= domain.connectivity())
        throw InvalidSquare("square refers to a missing boundary component");
    if (!(square.depth > 0.0) || square.depth > 1.0)
        throw InvalidSquare("square depth must lie in (0, 1]");
    double cap = admissible_depth(domain, square.boundary_index);
    if (square.depth > cap + 1e-15)
        throw InvalidSquare("square depth exceeds the admissible depth of its component");
}

bool square_contains(const CircularDomain& domain, const CarlesonSquare& square, Complex z) {
    const MobiusMap f = boundary_maps(domain)[static_cast<std::size_t>(square.boundary_index)];
    Complex w = mobius_apply(f, z);
    double r = std::abs(w);
    if (r >= 1.0) return false;
    if (r < 1.0 - square.depth) return false;
    if (r == 0.0) return true;  // angle defaults to the anchor; radial test passed
    double t = wrap_angle(std::arg(w));
    return ccw_distance(square.anchor, t) < square.depth;
}

double square_arclength(const CircularDomain& domain, const CarlesonSquare& square) {
    validate_square(domain, square);
    return domain.component_circle(square.boundary_index).radius * square.depth;
}

}  // namespace carleson
