#pragma once

#include <Eigen/Dense>
#include <vector>

#include "carleson/common.hpp"

namespace carleson {

struct Circle {
    Complex center;
    double radius = 1.0;

    Circle() = default;
    Circle(Complex c, double r);

    /// Point a + r e^{it} on the circle.
    Complex point(double t) const { return center + radius * Complex(std::cos(t), std::sin(t)); }
};

/// Connected open set bounded by finitely many disjoint circles: the open
/// outer disk minus the closed inner disks.
class CircularDomain {
  public:
    explicit CircularDomain(Circle outer, std::vector<Circle> inner = {});

    static CircularDomain unit_disk() { return CircularDomain(Circle(Complex(0, 0), 1.0)); }
    static CircularDomain annulus(double inner_radius, double outer_radius) {
        return CircularDomain(Circle(Complex(0, 0), outer_radius),
                              {Circle(Complex(0, 0), inner_radius)});
    }

    const Circle& outer() const { return outer_; }
    const std::vector<Circle>& inner() const { return inner_; }
    int connectivity() const { return static_cast<int>(inner_.size()) + 1; }

    /// Circle of boundary component i (0 = outer).
    const Circle& component_circle(int i) const;

    /// Strict membership in the open set G.
    bool contains(Complex z) const;

    /// Signed distance to the boundary; positive inside G.
    double boundary_distance(Complex z) const;

  private:
    Circle outer_;
    std::vector<Circle> inner_;
};

/// z -> (az + b)/(cz + d), stored as the Eigen coefficient matrix
/// [[a, b], [c, d]], normalized so the largest coefficient has modulus 1.
class MobiusMap {
  public:
    MobiusMap();  // identity
    MobiusMap(Complex a, Complex b, Complex c, Complex d);
    explicit MobiusMap(const Eigen::Matrix2cd& coeffs);

    Complex a() const { return m_(0, 0); }
    Complex b() const { return m_(0, 1); }
    Complex c() const { return m_(1, 0); }
    Complex d() const { return m_(1, 1); }
    const Eigen::Matrix2cd& coeffs() const { return m_; }

  private:
    Eigen::Matrix2cd m_;
};

Complex mobius_apply(const MobiusMap& m, Complex z);
MobiusMap mobius_compose(const MobiusMap& m1, const MobiusMap& m2);  // m1 after m2
MobiusMap mobius_inverse(const MobiusMap& m);
Complex mobius_derivative(const MobiusMap& m, Complex z);

/// The component maps of Theorem-0.3 type: f_0 = (z - a_0)/r_0 for the outer
/// circle and f_i = r_i/(z - a_i) for each inner circle. f_i maps C_i onto
/// the unit circle and G into the open unit disk.
std::vector<MobiusMap> boundary_maps(const CircularDomain& domain);

/// A Carleson square on component i: the f_i-preimage of
/// {r e^{it}: 1 - depth <= r < 1, anchor <= t < anchor + depth}.
struct CarlesonSquare {
    int boundary_index = 0;
    double depth = 1.0;       // in (0, 1]
    double anchor = 0.0;      // in [0, 2*pi)

    CarlesonSquare() = default;
    CarlesonSquare(int i, double h, double t0);
};

/// Largest depth h* such that every square of depth <= h* on component i
/// stays inside G and meets only boundary component i (conservative annular
/// bound, independent of the anchor).
double admissible_depth(const CircularDomain& domain, int i);

/// Throws InvalidSquare unless depth is in (0, 1], not above the component's
/// admissible depth, and the component index exists.
void validate_square(const CircularDomain& domain, const CarlesonSquare& square);

/// Half-open membership: f_i(z) in {1 - h <= r < 1, anchor <= t < anchor + h}.
/// A point mapping to the disk center (r = 0) is assigned angle `anchor`, so
/// it belongs to a square iff depth = 1.
bool square_contains(const CircularDomain& domain, const CarlesonSquare& square, Complex z);

/// Arclength of the boundary trace s(closure(S) on dG) = r_i * depth.
double square_arclength(const CircularDomain& domain, const CarlesonSquare& square);

}  // namespace carleson
