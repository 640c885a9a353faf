#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "carleson/common.hpp"
#include "carleson/plane_geometry.hpp"

namespace carleson {

/// Finite positive measure given by a list of atoms. Locations and weights
/// are stored as parallel Eigen arrays; every integral is a finite sum.
class AtomicMeasure {
  public:
    AtomicMeasure() = default;
    AtomicMeasure(Eigen::ArrayXcd points, Eigen::ArrayXd weights);

    static AtomicMeasure from_atoms(const std::vector<std::pair<Complex, double>>& atoms);

    Eigen::Index size() const { return points_.size(); }
    bool empty() const { return points_.size() == 0; }
    Complex point(Eigen::Index i) const { return points_[i]; }
    double weight(Eigen::Index i) const { return weights_[i]; }
    const Eigen::ArrayXcd& points() const { return points_; }
    const Eigen::ArrayXd& weights() const { return weights_; }

    double total_mass() const { return weights_.size() ? weights_.sum() : 0.0; }

  private:
    Eigen::ArrayXcd points_;
    Eigen::ArrayXd weights_;
};

/// mu o f^{-1}: every atom moves to f(location), weights unchanged.
AtomicMeasure pushforward(const AtomicMeasure& mu, const MobiusMap& map);
AtomicMeasure pushforward(const AtomicMeasure& mu, const std::function<Complex(Complex)>& map);

/// Keeps the atoms satisfying the predicate.
AtomicMeasure restrict(const AtomicMeasure& mu, const std::function<bool(Complex)>& keep);

AtomicMeasure sum(std::span<const AtomicMeasure> parts);
AtomicMeasure scale(const AtomicMeasure& mu, double factor);

/// Throws AtomOutsideDomain unless every atom lies strictly inside G
/// (locations exactly on the boundary are rejected).
void validate_on(const CircularDomain& domain, const AtomicMeasure& mu);

/// Quasi-Monte Carlo atomization of an area density over G: Halton points in
/// the outer bounding square, kept when they land in G with positive density;
/// each kept point carries density(z) * box_area / n.
AtomicMeasure qmc_atomize(const CircularDomain& domain,
                          const std::function<double(Complex)>& density, int n);

}  // namespace carleson
