#include "carleson/measures.hpp"

namespace carleson {

AtomicMeasure::AtomicMeasure(Eigen::ArrayXcd points, Eigen::ArrayXd weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
    if (points_.size() != weights_.size())
        throw InvalidMeasure("atom locations and weights differ in length");
    for (Eigen::Index i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].real()) || !std::isfinite(points_[i].imag()))
            throw InvalidMeasure("atom location is not finite");
        if (!std::isfinite(weights_[i]) || weights_[i] <= 0.0)
            throw InvalidMeasure("atom weights must be positive and finite");
    }
}

AtomicMeasure AtomicMeasure::from_atoms(const std::vector<std::pair<Complex, double>>& atoms) {
    Eigen::ArrayXcd pts(static_cast<Eigen::Index>(atoms.size()));
    Eigen::ArrayXd ws(static_cast<Eigen::Index>(atoms.size()));
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        pts[static_cast<Eigen::Index>(i)] = atoms[i].first;
        ws[static_cast<Eigen::Index>(i)] = atoms[i].second;
    }
    return AtomicMeasure(std::move(pts), std::move(ws));
}

AtomicMeasure pushforward(const AtomicMeasure& mu, const MobiusMap& map) {
    Eigen::ArrayXcd pts(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) pts[i] = mobius_apply(map, mu.point(i));
    return AtomicMeasure(std::move(pts), mu.weights());
}

AtomicMeasure pushforward(const AtomicMeasure& mu, const std::function<Complex(Complex)>& map) {
    Eigen::ArrayXcd pts(mu.size());
    for (Eigen::Index i = 0; i < mu.size(); ++i) pts[i] = map(mu.point(i));
    return AtomicMeasure(std::move(pts), mu.weights());
}

AtomicMeasure restrict(const AtomicMeasure& mu, const std::function<bool(Complex)>& keep) {
    std::vector<std::pair<Complex, double>> kept;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (keep(mu.point(i))) kept.emplace_back(mu.point(i), mu.weight(i));
    return AtomicMeasure::from_atoms(kept);
}

AtomicMeasure sum(std::span<const AtomicMeasure> parts) {
    Eigen::Index total = 0;
    for (const AtomicMeasure& m : parts) total += m.size();
    Eigen::ArrayXcd pts(total);
    Eigen::ArrayXd ws(total);
    Eigen::Index at = 0;
    for (const AtomicMeasure& m : parts) {
        for (Eigen::Index i = 0; i < m.size(); ++i, ++at) {
            pts[at] = m.point(i);
            ws[at] = m.weight(i);
        }
    }
    return AtomicMeasure(std::move(pts), std::move(ws));
}

AtomicMeasure scale(const AtomicMeasure& mu, double factor) {
    if (!std::isfinite(factor) || factor <= 0.0)
        throw InvalidMeasure("scale factor must be positive");
    return AtomicMeasure(mu.points(), mu.weights() * factor);
}

void validate_on(const CircularDomain& domain, const AtomicMeasure& mu) {
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        if (!domain.contains(mu.point(i)))
            throw AtomOutsideDomain("atom does not lie strictly inside the domain");
}

namespace {

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

}  // namespace

AtomicMeasure qmc_atomize(const CircularDomain& domain,
                          const std::function<double(Complex)>& density, int n) {
    if (n <= 0) throw InvalidMeasure("atomization needs a positive sample count");
    const Circle& outer = domain.outer();
    const double side = 2.0 * outer.radius;
    const double cell_mass = side * side / n;
    std::vector<std::pair<Complex, double>> atoms;
    for (int i = 1; i <= n; ++i) {
        Complex z = outer.center + Complex(side * (halton(i, 2) - 0.5), side * (halton(i, 3) - 0.5));
        if (!domain.contains(z)) continue;
        double d = density(z);
        if (d > 0.0) atoms.emplace_back(z, d * cell_mass);
    }
    return AtomicMeasure::from_atoms(atoms);
}

}  // namespace carleson
