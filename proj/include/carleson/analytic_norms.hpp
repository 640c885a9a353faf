#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carleson/harmonic.hpp"
#include "carleson/measures.hpp"
#include "carleson/plane_geometry.hpp"

namespace carleson {

/// Rational function given by numerator/denominator coefficients (ascending
/// degree) with its pole list. Functions built by test_family carry exact
/// poles; make_rational derives them from the companion matrix.
struct RationalFunction {
    Eigen::VectorXcd num;
    Eigen::VectorXcd den;
    std::vector<Complex> poles;
    std::string label;

    Complex operator()(Complex z) const;
};

RationalFunction make_rational(Eigen::VectorXcd num, Eigen::VectorXcd den,
                               std::string label = {});

/// Distance from a point to the closure of G (0 when the point is in it).
double distance_to_closure(const CircularDomain& domain, Complex z);

/// True when every pole keeps at least `margin` distance from the closure.
bool poles_clear_of(const CircularDomain& domain, const RationalFunction& f,
                    double margin = 1e-6);

/// Deterministic analytic test family on the domain:
///  (a) monomials z^k, k <= 8;
///  (b) kernel peaks 1/(1 - conj(w) f_i(z))^m, m in {1, 2}, adapted to each
///      boundary component, with |w| in {0.5} / {0.5, 0.9} /
///      {0.5, 0.9, 0.99, 0.999} and 4 / 8 / 16 angles at levels 1 / 2 / 3
///      (nested, so the estimate is monotone in the level);
///  (c) pole powers (r_i/(z - a_i))^k, k <= 4, at complement-disk centers.
/// Members whose poles come closer than 1e-6 to the closure are dropped.
std::vector<RationalFunction> test_family(const CircularDomain& domain, int level);

/// (sum_j w_j |f(z_j)|^q)^{1/q}
double lq_norm_measure(const RationalFunction& f, const AtomicMeasure& mu, double q);

/// Harmonic-measure density with respect to arclength for a fixed evaluation
/// point: the exact Poisson density on a disk domain, and a piecewise
/// constant density calibrated by walk-on-spheres (64 arcs per circle,
/// 1e5 walks, fixed seed) on multiply connected domains.
class BoundaryDensity {
  public:
    BoundaryDensity(const CircularDomain& domain, Complex evaluation_point);

    double value(int component, double t) const;
    double std_error(int component, double t) const;
    bool exact() const { return exact_; }
    Complex evaluation_point() const { return evaluation_point_; }
    const CircularDomain& domain() const { return domain_; }

    static constexpr int kArcsPerCircle = 64;

    /// Process-wide cache keyed by the domain geometry and evaluation point.
    static std::shared_ptr<const BoundaryDensity> cached(const CircularDomain& domain,
                                                         Complex evaluation_point);

  private:
    CircularDomain domain_;
    Complex evaluation_point_;
    bool exact_ = false;
    // per component, per arc bin: probability and its standard error
    std::vector<std::vector<double>> bin_prob_;
    std::vector<std::vector<double>> bin_se_;
};

struct BoundaryNorm {
    double value = 0.0;
    double std_error = 0.0;  // from the Monte Carlo density; 0 when exact
};

BoundaryNorm lq_norm_boundary(const RationalFunction& f, const BoundaryDensity& density,
                              double q, int nodes);

/// Convenience overload using the default evaluation point (cached density).
double lq_norm_boundary(const RationalFunction& f, const CircularDomain& domain, double q,
                        int nodes);

/// Test family together with its boundary norms for one (domain, evaluation
/// point, q, level, nodes) configuration; cached process-wide.
struct FamilyNorms {
    std::vector<RationalFunction> family;
    std::vector<BoundaryNorm> norms;
};

std::shared_ptr<const FamilyNorms> cached_family_norms(const CircularDomain& domain,
                                                       Complex evaluation_point, double q,
                                                       int level, int nodes);

struct ConstantEstimate {
    double q = 2.0;
    double c_hat = 0.0;
    int witness_index = -1;
    std::string witness_label;
    std::size_t family_size = 0;
    double c_hat_stderr = 0.0;  // propagated from the density calibration
};

struct NormOptions {
    std::optional<Complex> evaluation_point;  // default: default_evaluation_point
    int nodes = 65536;
};

/// c_hat = max over the test family of ||f||_{L^q(mu)} / ||f||_{L^q(omega)};
/// a lower bound for the Carleson inequality constant, with the witness
/// recorded (lowest index on ties).
ConstantEstimate estimate_constant(const CircularDomain& domain, const AtomicMeasure& mu,
                                   double q, int level, const NormOptions& options = {});

}  // namespace carleson
