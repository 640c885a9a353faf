#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/plane_geometry.hpp"

namespace carleson {

/// z -> z + beta z^2; univalent on the closed unit disk when |beta| < 1/2
/// (the derivative 1 + 2 beta z cannot vanish there).
struct QuadPoly {
    Complex beta;

    QuadPoly() = default;
    explicit QuadPoly(Complex b);
};

struct ConformalMap;

/// Function composition in listed order: maps[0] is applied last.
struct Composition {
    std::vector<ConformalMap> maps;
};

/// Closed algebra of exactly representable conformal maps.
struct ConformalMap {
    std::variant<MobiusMap, QuadPoly, Composition> node;

    ConformalMap() : node(MobiusMap()) {}

    static ConformalMap mobius(MobiusMap m) { return ConformalMap{std::move(m)}; }
    static ConformalMap quad(Complex beta) { return ConformalMap{QuadPoly(beta)}; }
    static ConformalMap compose(std::vector<ConformalMap> maps);

    Complex operator()(Complex z) const;
    Complex derivative(Complex z) const;

  private:
    explicit ConformalMap(std::variant<MobiusMap, QuadPoly, Composition> n)
        : node(std::move(n)) {}
};

/// Preimage of w: Mobius layers invert exactly, QuadPoly uses the stable
/// quadratic branch polished by Newton to |apply(z) - w| <= 1e-12, and
/// compositions invert layer by layer. The guess selects the quadratic
/// branch when supplied.
Complex invert(const ConformalMap& map, Complex w);
Complex invert(const ConformalMap& map, Complex w, Complex guess);

/// A domain presented as the chart image of a circular base domain. The
/// chart is audited for boundary univalence at construction and a coarse
/// polar preimage table is kept for inversion guesses.
class PresentedDomain {
  public:
    PresentedDomain(CircularDomain base, ConformalMap chart);

    const CircularDomain& base() const { return base_; }
    const ConformalMap& chart() const { return chart_; }

    /// Nearest preimage-table guess for inverting the chart at w.
    Complex preimage_guess(Complex w) const;

    static PresentedDomain identity_disk();

  private:
    CircularDomain base_;
    ConformalMap chart_;
    std::vector<std::pair<Complex, Complex>> table_;  // (image, base point)
};

/// mu o alpha for alpha = chart: every atom moves to its chart preimage.
AtomicMeasure pushforward_measure(const PresentedDomain& presented, const AtomicMeasure& mu);

/// Riemann maps of the hull domains of a circular domain: the outer hull is
/// the outer disk with map (z - a_0)/r_0, the hull of inner component i is
/// the disk exterior (plus infinity) with map r_i/(z - a_i) -- exactly the
/// component boundary maps.
std::vector<ConformalMap> hull_riemann_maps(const CircularDomain& domain);

struct UnivalenceReport {
    bool pass = false;
    double min_ratio = 0.0;  // image separation / arc separation, minimized
    std::pair<std::size_t, std::size_t> worst{0, 0};
};

/// Mesh proxy for "almost 1-1 on the boundary": samples every base boundary
/// circle and requires image separation >= tolerance * arc separation for
/// all sample pairs. A numeric certificate, not a proof.
UnivalenceReport univalence_audit(const CircularDomain& base,
                                  const std::function<Complex(Complex)>& boundary_map,
                                  int mesh, double tolerance = 1e-3);
UnivalenceReport univalence_audit(const PresentedDomain& presented, int mesh,
                                  double tolerance = 1e-3);

}  // namespace carleson
