#pragma once

#include <optional>
#include <vector>

#include "carleson/measures.hpp"
#include "carleson/plane_geometry.hpp"

namespace carleson {

struct ComponentRatio {
    int component = 0;
    double kappa = 0.0;
    std::optional<CarlesonSquare> witness;
};

/// kappa(mu) = sup_S mu(S) / s(closure(S) on dG) over Carleson squares.
///
/// For an atomic measure the supremum equals the maximum over atom subsets A
/// of weight(A) / max(1 - min |f_i(z)|, angular span of f_i(A)), the depth of
/// the minimal enclosing square of A. The witness records that square; when
/// the angular span is the binding constraint the supremum is approached as
/// the half-open window closes on its trailing edge.
struct BoxReport {
    double kappa = 0.0;
    std::optional<CarlesonSquare> witness;
    std::vector<ComponentRatio> per_component;
};

/// Exact supremum on the unit disk, searched over the finite candidate set
/// {1 - |z_j|} and the pairwise counterclockwise angular spans, sliding a
/// window anchored at atom angles for each candidate depth. Depths above
/// `depth_cap` are excluded (used for admissibility on circular domains).
BoxReport box_ratio_disk(const AtomicMeasure& mu, double depth_cap = 1.0);

/// Independent oracle: exhaustive search over all atom subsets (n <= 14),
/// each subset scored by its minimal enclosing square.
BoxReport box_ratio_disk_oracle(const AtomicMeasure& mu, double depth_cap = 1.0);

/// Per boundary component i: push mu forward under f_i, run the disk search
/// with depth capped at admissible_depth(domain, i), and divide by the
/// arclength factor r_i. kappa is the maximum over components.
BoxReport box_ratio_circular(const CircularDomain& domain, const AtomicMeasure& mu);

/// mu(S) under the half-open membership convention; the numerator audited
/// against any given square.
double square_mass(const CircularDomain& domain, const AtomicMeasure& mu,
                   const CarlesonSquare& square);

enum class TrendClass { Bounded, Divergent };

struct TrendReport {
    std::vector<double> values;
    double log2_slope = 0.0;
    TrendClass classification = TrendClass::Bounded;
};

/// Least-squares slope of log2(values) against the index; slopes above
/// `divergence_slope` classify as Divergent.
TrendReport classify_trend(const std::vector<double>& values, double divergence_slope = 0.1);

/// kappa per family member plus the log-slope summary.
TrendReport trend_analysis(const CircularDomain& domain,
                           const std::vector<AtomicMeasure>& family);

}  // namespace carleson
