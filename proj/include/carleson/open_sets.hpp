#pragma once

#include <map>
#include <string>
#include <vector>

#include "carleson/analytic_norms.hpp"
#include "carleson/conformal.hpp"
#include "carleson/harmonic.hpp"

namespace carleson {

/// Whether z lies in the chart image of the component, decided by the
/// winding number of the meshed image boundary (outer circle positively,
/// inner circles negatively oriented). Reliable away from the boundary.
bool point_in_component(const PresentedDomain& component, Complex z, int mesh = 256);

struct SingularityCertificate {
    enum class Status { MutuallySingular, Indeterminate };
    Status status = Status::MutuallySingular;
    double min_boundary_gap = 0.0;     // infinity for a single component
    std::pair<int, int> closest_pair{-1, -1};

    bool verdict() const { return status == Status::MutuallySingular; }
};

/// Sufficient condition for mutual singularity of the component harmonic
/// measures: pairwise disjoint boundary closures, certified by the minimal
/// gap between boundary meshes. Touching boundaries give Indeterminate.
SingularityCertificate mutually_singular_check(const std::vector<PresentedDomain>& components,
                                               int mesh = 256);

/// Finitely many multi-nicely connected components with weights (default
/// 2^{-n} in the user-supplied order). Component closures must be pairwise
/// disjoint, which guarantees the mutual-singularity hypothesis.
class OpenSetDomain {
  public:
    explicit OpenSetDomain(std::vector<PresentedDomain> components,
                           std::vector<double> weights = {});

    const std::vector<PresentedDomain>& components() const { return components_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return components_.size(); }

    static std::vector<double> default_weights(std::size_t n);

  private:
    std::vector<PresentedDomain> components_;
    std::vector<double> weights_;
};

/// Same open set with the Remark's weights b_n (positive, summing to <= 1).
OpenSetDomain remark_weights(const OpenSetDomain& openset, const std::vector<double>& b);

struct OpenSetArcMass {
    int component = 0;
    Arc arc;                 // on the component's base boundary
    double omega = 0.0;      // weight_n * omega_{G_n}(arc)
    double std_error = 0.0;  // 0 for exact (disk-base) components
};

struct OpenSetHarmonicOptions {
    long walks = 100000;
    std::uint64_t seed = 1;
    std::map<int, Complex> evaluation_points;  // per-component override (base coords)
};

/// The composite measure omega = sum weight_n omega_{G_n} evaluated on arcs
/// of the queried components. Arcs are given on the base circles; the chart
/// transports them to the presented boundary.
std::vector<OpenSetArcMass> open_set_harmonic(
    const OpenSetDomain& openset,
    const std::vector<std::pair<int, BoundaryPartition>>& queries,
    const OpenSetHarmonicOptions& options = {});

struct ComponentEntry {
    int component = 0;
    double mass = 0.0;
    double kappa = 0.0;
    double c_hat = 0.0;
    double c_hat_stderr = 0.0;
};

struct ComponentReport {
    std::vector<ComponentEntry> per_component;
    std::vector<double> fitted_c;  // c_n = c_hat_n
    double c_star = 0.0;           // least C with c_n <= C * weight_n
    int c_star_component = -1;
};

/// Restrict mu to each component, push it onto the component's base through
/// the chart, and measure both the box ratio and the inequality constant
/// against the component's own harmonic measure.
ComponentReport component_constants(const OpenSetDomain& openset, const AtomicMeasure& mu,
                                    double q, int level = 3, const NormOptions& options = {});

struct WeightedCriterionReport {
    ComponentReport components;
    double c_star = 0.0;
    double composite_c_hat = 0.0;
    double composite_sigma = 0.0;
    bool composite_within = false;
    std::string verdict;  // "PASS" or "COMPOSITE_EXCEEDS"
};

/// C* = max_n c_hat_n / weight_n, plus the sufficiency cross-check: the
/// constant estimated against the composite omega (per-component family
/// members extended by zero across the other components) must stay within
/// C* up to 3 sigma of the density calibration.
WeightedCriterionReport weighted_criterion(const OpenSetDomain& openset,
                                           const AtomicMeasure& mu, double q, int level = 3,
                                           const NormOptions& options = {});

}  // namespace carleson
