#include "carleson/analytic_norms.hpp"

#include <Eigen/Eigenvalues>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>

namespace carleson {

namespace {

Complex horner(const Eigen::VectorXcd& coeffs, Complex z) {
    if (coeffs.size() == 0) return Complex(0, 0);
    Complex acc = coeffs[coeffs.size() - 1];
    for (Eigen::Index k = coeffs.size() - 2; k >= 0; --k) acc = acc * z + coeffs[k];
    return acc;
}

Complex ipow(Complex base, int e) {
    Complex out(1, 0);
    for (int k = 0; k < e; ++k) out *= base;
    return out;
}

Eigen::VectorXcd linear_power(Complex c0, Complex c1, int m) {
    // binomial expansion of (c0 + c1 z)^m
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(m + 1);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        out[j] = binom * ipow(c0, m - j) * ipow(c1, j);
        binom = binom * (m - j) / (j + 1.0);
    }
    return out;
}

void append_bytes(std::string& key, double v) {
    char buf[sizeof(double)];
    std::memcpy(buf, &v, sizeof(double));
    key.append(buf, sizeof(double));
}

std::string domain_fingerprint(const CircularDomain& domain) {
    std::string key;
    append_bytes(key, domain.outer().center.real());
    append_bytes(key, domain.outer().center.imag());
    append_bytes(key, domain.outer().radius);
    for (const Circle& c : domain.inner()) {
        append_bytes(key, c.center.real());
        append_bytes(key, c.center.imag());
        append_bytes(key, c.radius);
    }
    return key;
}

constexpr std::uint64_t kDensitySeed = 0xca51e50ULL;
constexpr long kDensityWalks = 100000;

/// Compensated accumulator; the boundary quadrature adds ~1e5 same-sign
/// terms and plain summation noise would show up in the exactness checks.
struct KahanSum {
    double sum = 0.0, carry = 0.0;
    void add(double v) {
        double y = v - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

Complex RationalFunction::operator()(Complex z) const {
    Complex d = horner(den, z);
    return horner(num, z) / d;
}

RationalFunction make_rational(Eigen::VectorXcd num, Eigen::VectorXcd den, std::string label) {
    Eigen::Index deg = den.size();
    while (deg > 0 && den[deg - 1] == Complex(0, 0)) --deg;
    if (deg == 0) throw InvalidMap("rational function needs a nonzero denominator");
    RationalFunction f{std::move(num), std::move(den), {}, std::move(label)};
    if (deg > 1) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg - 1, deg - 1);
        for (Eigen::Index r = 1; r < deg - 1; ++r) companion(r, r - 1) = 1.0;
        for (Eigen::Index r = 0; r < deg - 1; ++r)
            companion(r, deg - 2) = -f.den[r] / f.den[deg - 1];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
            f.poles.push_back(solver.eigenvalues()[k]);
    }
    return f;
}

double distance_to_closure(const CircularDomain& domain, Complex z) {
    for (const Circle& c : domain.inner()) {
        double inside = c.radius - std::abs(z - c.center);
        if (inside > 0.0) return inside;
    }
    double outside = std::abs(z - domain.outer().center) - domain.outer().radius;
    return outside > 0.0 ? outside : 0.0;
}

bool poles_clear_of(const CircularDomain& domain, const RationalFunction& f, double margin) {
    for (Complex p : f.poles)
        if (distance_to_closure(domain, p) < margin) return false;
    return true;
}

std::vector<RationalFunction> test_family(const CircularDomain& domain, int level) {
    if (level < 1 || level > 3) throw InvalidMap("family level must be 1, 2 or 3");
    std::vector<RationalFunction> family;

    for (int k = 0; k <= 8; ++k) {
        Eigen::VectorXcd num = Eigen::VectorXcd::Zero(k + 1);
        num[k] = 1.0;
        Eigen::VectorXcd den = Eigen::VectorXcd::Ones(1);
        std::ostringstream label;
        label << "z^" << k;
        family.push_back({num, den, {}, label.str()});
    }

    static const std::vector<double> kRadii = {0.5, 0.9, 0.99, 0.999};
    const int radii_count = level == 1 ? 1 : (level == 2 ? 2 : 4);
    const int angles = 4 << (level - 1);
    const std::vector<MobiusMap> maps = boundary_maps(domain);

    for (int i = 0; i < domain.connectivity(); ++i) {
        const MobiusMap& f = maps[static_cast<std::size_t>(i)];
        for (int ir = 0; ir < radii_count; ++ir)
            for (int ia = 0; ia < angles; ++ia) {
                Complex w = std::polar(kRadii[static_cast<std::size_t>(ir)],
                                       kTwoPi * ia / angles);
                Complex wc = std::conj(w);
                for (int m = 1; m <= 2; ++m) {
                    // 1/(1 - conj(w) f_i(z))^m as a rational function in z
                    Complex lead = f.c() - wc * f.a();
                    Complex trail = f.d() - wc * f.b();
                    RationalFunction peak;
                    peak.num = linear_power(f.d(), f.c(), m);
                    peak.den = linear_power(trail, lead, m);
                    Complex pole = -trail / lead;
                    peak.poles.assign(static_cast<std::size_t>(m), pole);
                    std::ostringstream label;
                    label << "peak(i=" << i << ",|w|=" << kRadii[(std::size_t)ir]
                          << ",arg=" << kTwoPi * ia / angles << ",m=" << m << ")";
                    peak.label = label.str();
                    if (poles_clear_of(domain, peak)) family.push_back(std::move(peak));
                }
            }
    }

    for (int i = 1; i <= static_cast<int>(domain.inner().size()); ++i) {
        const Circle& c = domain.component_circle(i);
        for (int k = 1; k <= 4; ++k) {
            RationalFunction pw;
            pw.num = Eigen::VectorXcd::Constant(1, ipow(Complex(c.radius, 0), k));
            pw.den = linear_power(-c.center, Complex(1, 0), k);
            pw.poles.assign(static_cast<std::size_t>(k), c.center);
            std::ostringstream label;
            label << "pole(i=" << i << ")^" << k;
            pw.label = label.str();
            family.push_back(std::move(pw));
        }
    }
    return family;
}

double lq_norm_measure(const RationalFunction& f, const AtomicMeasure& mu, double q) {
    if (q < 1.0) throw InvalidMap("exponent q must be at least 1");
    double total = 0.0;
    for (Eigen::Index i = 0; i < mu.size(); ++i)
        total += mu.weight(i) * std::pow(std::abs(f(mu.point(i))), q);
    return qth_root(total, q);
}

BoundaryDensity::BoundaryDensity(const CircularDomain& domain, Complex evaluation_point)
    : domain_(domain), evaluation_point_(evaluation_point) {
    if (!domain.contains(evaluation_point))
        throw EvaluationPointOutsideDomain("density evaluation point must lie inside G");
    exact_ = domain.inner().empty();
    if (exact_) return;
    BoundaryPartition bins = BoundaryPartition::uniform(domain, kArcsPerCircle);
    HarmonicEstimate est =
        harmonic_measure_mc(domain, evaluation_point, bins, kDensityWalks, kDensitySeed);
    bin_prob_.assign(static_cast<std::size_t>(domain.connectivity()),
                     std::vector<double>(kArcsPerCircle, 0.0));
    bin_se_ = bin_prob_;
    for (const ArcEstimate& a : est.arcs) {
        int bin = static_cast<int>(a.arc.alpha / (kTwoPi / kArcsPerCircle) + 0.5);
        bin = std::min(bin, kArcsPerCircle - 1);
        bin_prob_[static_cast<std::size_t>(a.arc.component)][static_cast<std::size_t>(bin)] =
            a.probability;
        bin_se_[static_cast<std::size_t>(a.arc.component)][static_cast<std::size_t>(bin)] =
            a.std_error;
    }
}

double BoundaryDensity::value(int component, double t) const {
    const Circle& c = domain_.component_circle(component);
    if (exact_) return poisson_density(c, evaluation_point_, t);
    int bin = static_cast<int>(wrap_angle(t) / (kTwoPi / kArcsPerCircle));
    bin = std::min(bin, kArcsPerCircle - 1);
    double arclen = c.radius * kTwoPi / kArcsPerCircle;
    return bin_prob_[static_cast<std::size_t>(component)][static_cast<std::size_t>(bin)] /
           arclen;
}

double BoundaryDensity::std_error(int component, double t) const {
    if (exact_) return 0.0;
    const Circle& c = domain_.component_circle(component);
    int bin = static_cast<int>(wrap_angle(t) / (kTwoPi / kArcsPerCircle));
    bin = std::min(bin, kArcsPerCircle - 1);
    double arclen = c.radius * kTwoPi / kArcsPerCircle;
    return bin_se_[static_cast<std::size_t>(component)][static_cast<std::size_t>(bin)] / arclen;
}

std::shared_ptr<const BoundaryDensity> BoundaryDensity::cached(const CircularDomain& domain,
                                                               Complex evaluation_point) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const BoundaryDensity>> cache;
    std::string key = domain_fingerprint(domain);
    append_bytes(key, evaluation_point.real());
    append_bytes(key, evaluation_point.imag());
    std::scoped_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto density = std::make_shared<const BoundaryDensity>(domain, evaluation_point);
    cache.emplace(std::move(key), density);
    return density;
}

BoundaryNorm lq_norm_boundary(const RationalFunction& f, const BoundaryDensity& density,
                              double q, int nodes) {
    if (q < 1.0) throw InvalidMap("exponent q must be at least 1");
    if (nodes < 128) nodes = 128;
    nodes = (nodes + 127) / 128 * 128;  // keep nodes/2 aligned with the 64 arc bins
    const CircularDomain& domain = density.domain();

    double integral = 0.0, variance = 0.0;
    for (int i = 0; i < domain.connectivity(); ++i) {
        const Circle& circle = domain.component_circle(i);
        const double ds = circle.radius * kTwoPi / nodes;
        KahanSum full_sum, half_sum, weighted_sum;
        // per 64th-of-circle bin partial sums, for the density variance
        std::vector<double> bin_partial(BoundaryDensity::kArcsPerCircle, 0.0);
        for (int j = 0; j < nodes; ++j) {
            double t = kTwoPi * j / nodes;
            double g = std::pow(std::abs(f(circle.point(t))), q);
            full_sum.add(g);
            if ((j & 1) == 0) half_sum.add(g);
            weighted_sum.add(g * density.value(i, t));
            if (!density.exact()) {
                int bin = std::min(static_cast<int>(t / (kTwoPi / 64)), 63);
                bin_partial[static_cast<std::size_t>(bin)] += g * ds;
            }
        }
        double plain_full = full_sum.sum / nodes;
        double plain_half = half_sum.sum / (nodes / 2);
        double weighted = weighted_sum.sum;
        // Density-free periodic trapezoid at nodes vs nodes/2: spectral, so
        // the difference bounds the resolution error of |f|^q itself.
        double err = std::abs(plain_full - plain_half) / std::max(plain_full, 1e-300);
        if (err > q * 1e-6)
            throw PoleTooCloseToBoundary(
                "boundary quadrature cannot resolve |f|^q at this node count");
        integral += weighted * ds;
        if (!density.exact())
            for (int bin = 0; bin < 64; ++bin) {
                double se = density.std_error(i, (bin + 0.5) * (kTwoPi / 64));
                variance += bin_partial[static_cast<std::size_t>(bin)] *
                            bin_partial[static_cast<std::size_t>(bin)] * se * se;
            }
    }
    BoundaryNorm norm;
    norm.value = qth_root(integral, q);
    if (integral > 0.0 && variance > 0.0)
        norm.std_error = norm.value * std::sqrt(variance) / (q * integral);
    return norm;
}

double lq_norm_boundary(const RationalFunction& f, const CircularDomain& domain, double q,
                        int nodes) {
    auto density = BoundaryDensity::cached(domain, default_evaluation_point(domain));
    return lq_norm_boundary(f, *density, q, nodes).value;
}

std::shared_ptr<const FamilyNorms> cached_family_norms(const CircularDomain& domain,
                                                       Complex eval, double q, int level,
                                                       int nodes) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const FamilyNorms>> cache;
    std::string key = domain_fingerprint(domain);
    append_bytes(key, eval.real());
    append_bytes(key, eval.imag());
    append_bytes(key, q);
    append_bytes(key, static_cast<double>(level));
    append_bytes(key, static_cast<double>(nodes));
    {
        std::scoped_lock lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto result = std::make_shared<FamilyNorms>();
    result->family = test_family(domain, level);
    auto density = BoundaryDensity::cached(domain, eval);
    result->norms.reserve(result->family.size());
    for (const RationalFunction& f : result->family)
        result->norms.push_back(lq_norm_boundary(f, *density, q, nodes));
    std::scoped_lock lock(mutex);
    return cache.emplace(std::move(key), std::move(result)).first->second;
}

ConstantEstimate estimate_constant(const CircularDomain& domain, const AtomicMeasure& mu,
                                   double q, int level, const NormOptions& options) {
    validate_on(domain, mu);
    ConstantEstimate estimate;
    estimate.q = q;
    Complex eval = options.evaluation_point.value_or(default_evaluation_point(domain));
    auto fam = cached_family_norms(domain, eval, q, level, options.nodes);
    estimate.family_size = fam->family.size();
    if (mu.empty()) return estimate;
    for (std::size_t j = 0; j < fam->family.size(); ++j) {
        double numerator = lq_norm_measure(fam->family[j], mu, q);
        const BoundaryNorm& denom = fam->norms[j];
        if (!(denom.value > 0.0)) continue;
        double ratio = numerator / denom.value;
        if (ratio > estimate.c_hat) {
            estimate.c_hat = ratio;
            estimate.witness_index = static_cast<int>(j);
            estimate.witness_label = fam->family[j].label;
            estimate.c_hat_stderr = ratio * denom.std_error / denom.value;
        }
    }
    return estimate;
}

}  // namespace carleson
