#pragma once

#include <optional>
#include <vector>

#include "carleson/common.hpp"
#include "carleson/plane_geometry.hpp"

namespace carleson {

/// Angular arc [alpha, alpha + width) on boundary circle `component`.
struct Arc {
    int component = 0;
    double alpha = 0.0;   // in [0, 2*pi)
    double width = kTwoPi;  // in (0, 2*pi]

    Arc() = default;
    Arc(int i, double a, double w);

    bool contains(double angle) const {
        return width >= kTwoPi || ccw_distance(alpha, angle) < width;
    }
};

/// Pairwise-disjoint arcs; the union may cover only part of the boundary.
class BoundaryPartition {
  public:
    BoundaryPartition() = default;
    explicit BoundaryPartition(std::vector<Arc> arcs);

    const std::vector<Arc>& arcs() const { return arcs_; }
    std::size_t size() const { return arcs_.size(); }

    /// Index of the arc containing (component, angle), if any.
    std::optional<std::size_t> find(int component, double angle) const;

    static BoundaryPartition full(const CircularDomain& domain);
    static BoundaryPartition uniform(const CircularDomain& domain, int arcs_per_circle);

  private:
    std::vector<Arc> arcs_;
};

/// Exact harmonic measure of the unit-disk arc [alpha, alpha + width) at z0,
/// by adaptive quadrature of the Poisson kernel (absolute error <= 1e-10).
double harmonic_measure_disk(Complex z0, double alpha, double width);

/// Harmonic-measure density with respect to arclength on circle `circle`
/// (a disk domain) at boundary angle t, evaluated for z0 inside the disk.
double poisson_density(const Circle& circle, Complex z0, double t);

struct ArcEstimate {
    Arc arc;
    double probability = 0.0;
    double std_error = 0.0;
};

struct HarmonicEstimate {
    Complex evaluation_point;
    long walks = 0;
    long capped_walks = 0;       // walks stopped by the step cap
    long unattributed = 0;       // absorbed outside every partition arc
    std::vector<ArcEstimate> arcs;
};

struct WosOptions {
    double absorb_eps = -1.0;    // < 0: defaults to 1e-3 * outer radius
    long max_steps = 100000;
    int threads = 0;             // 0: honor CARLESON_THREADS, else 1
};

/// Walk-on-spheres Monte Carlo estimate of the harmonic measure at z0 of
/// every partition arc. Deterministic for a fixed seed regardless of the
/// thread count (fixed chunk-to-seed assignment).
HarmonicEstimate harmonic_measure_mc(const CircularDomain& domain, Complex z0,
                                     const BoundaryPartition& partition, long walks,
                                     std::uint64_t seed, const WosOptions& options = {});

/// Default evaluation point: the outer center when it lies in G, else the
/// area centroid of G, else the best point of a coarse polar grid.
Complex default_evaluation_point(const CircularDomain& domain);

}  // namespace carleson
