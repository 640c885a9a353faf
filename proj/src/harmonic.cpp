#include "carleson/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>

namespace carleson {

Arc::Arc(int i, double a, double w) : component(i), alpha(wrap_angle(a)), width(w) {
    if (i < 0) throw InvalidPartition("arc component index must be nonnegative");
    if (!(w > 0.0) || w > kTwoPi) throw InvalidPartition("arc width must lie in (0, 2*pi]");
}

BoundaryPartition::BoundaryPartition(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {
    for (std::size_t i = 0; i < arcs_.size(); ++i)
        for (std::size_t j = i + 1; j < arcs_.size(); ++j) {
            const Arc& a = arcs_[i];
            const Arc& b = arcs_[j];
            if (a.component != b.component) continue;
            bool overlap = a.contains(b.alpha) || b.contains(a.alpha);
            if (overlap) throw InvalidPartition("partition arcs overlap");
        }
}

std::optional<std::size_t> BoundaryPartition::find(int component, double angle) const {
    for (std::size_t i = 0; i < arcs_.size(); ++i)
        if (arcs_[i].component == component && arcs_[i].contains(angle)) return i;
    return std::nullopt;
}

BoundaryPartition BoundaryPartition::full(const CircularDomain& domain) {
    std::vector<Arc> arcs;
    for (int i = 0; i < domain.connectivity(); ++i) arcs.emplace_back(i, 0.0, kTwoPi);
    return BoundaryPartition(std::move(arcs));
}

BoundaryPartition BoundaryPartition::uniform(const CircularDomain& domain, int arcs_per_circle) {
    if (arcs_per_circle <= 0) throw InvalidPartition("need at least one arc per circle");
    std::vector<Arc> arcs;
    // widths are exact differences of the stored edges, so adjacent arcs
    // cannot overlap under the ccw comparison
    std::vector<double> edges(static_cast<std::size_t>(arcs_per_circle) + 1);
    for (int k = 0; k <= arcs_per_circle; ++k)
        edges[static_cast<std::size_t>(k)] = kTwoPi * k / arcs_per_circle;
    for (int i = 0; i < domain.connectivity(); ++i)
        for (int k = 0; k < arcs_per_circle; ++k)
            arcs.emplace_back(i, edges[(std::size_t)k],
                              edges[(std::size_t)k + 1] - edges[(std::size_t)k]);
    return BoundaryPartition(std::move(arcs));
}

namespace {

double poisson_kernel(Complex z0, double t) {
    Complex e = std::polar(1.0, t);
    double num = 1.0 - std::norm(z0);
    return num / std::norm(e - z0) / kTwoPi;
}

double adaptive_simpson(Complex z0, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = poisson_kernel(z0, lm), frm = poisson_kernel(z0, rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(z0, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(z0, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double harmonic_measure_disk(Complex z0, double alpha, double width) {
    if (std::abs(z0) >= 1.0)
        throw EvaluationPointOnBoundary("evaluation point must lie strictly inside the disk");
    if (!(width > 0.0) || width > kTwoPi) throw InvalidPartition("arc width out of range");
    // Split into panels so the adaptive rule starts near the kernel peak.
    const int panels = 16;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        double a = alpha + width * k / panels;
        double b = alpha + width * (k + 1) / panels;
        double m = 0.5 * (a + b);
        double fa = poisson_kernel(z0, a), fm = poisson_kernel(z0, m),
               fb = poisson_kernel(z0, b);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += adaptive_simpson(z0, a, b, fa, fm, fb, whole, 1e-12 / panels, 48);
    }
    return total;
}

double poisson_density(const Circle& circle, Complex z0, double t) {
    Complex rel = (z0 - circle.center) / circle.radius;
    if (std::abs(rel) >= 1.0)
        throw EvaluationPointOnBoundary("evaluation point must lie strictly inside the disk");
    return poisson_kernel(rel, t) / circle.radius;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct ChunkCounts {
    std::vector<long> arc_hits;
    long capped = 0;
    long unattributed = 0;
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CARLESON_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

}  // namespace

HarmonicEstimate harmonic_measure_mc(const CircularDomain& domain, Complex z0,
                                     const BoundaryPartition& partition, long walks,
                                     std::uint64_t seed, const WosOptions& options) {
    if (walks < 1) throw InvalidPartition("walk count must be at least 1");
    if (!domain.contains(z0))
        throw EvaluationPointOutsideDomain("evaluation point must lie inside the domain");

    const double eps =
        options.absorb_eps > 0.0 ? options.absorb_eps : 1e-3 * domain.outer().radius;
    const long chunk_size = 4096;
    const long chunks = (walks + chunk_size - 1) / chunk_size;
    std::vector<ChunkCounts> per_chunk(static_cast<std::size_t>(chunks));

    auto run_chunk = [&](long c) {
        ChunkCounts counts;
        counts.arc_hits.assign(partition.size(), 0);
        std::uint64_t state = seed;
        (void)splitmix64(state);
        state ^= 0x517cc1b727220a95ULL * static_cast<std::uint64_t>(c + 1);
        std::mt19937_64 gen(splitmix64(state));
        auto uniform01 = [&gen]() { return (gen() >> 11) * 0x1p-53; };

        const long lo = c * chunk_size;
        const long hi = std::min(walks, lo + chunk_size);
        for (long w = lo; w < hi; ++w) {
            Complex z = z0;
            bool absorbed = false;
            for (long step = 0; step < options.max_steps; ++step) {
                double d = domain.boundary_distance(z);
                if (d < eps) {
                    absorbed = true;
                    break;
                }
                z += std::polar(d, kTwoPi * uniform01());
            }
            if (!absorbed) {
                ++counts.capped;
                continue;
            }
            // nearest boundary component, ties toward the lower index
            int best = 0;
            double best_d = domain.outer().radius - std::abs(z - domain.outer().center);
            for (int i = 1; i <= static_cast<int>(domain.inner().size()); ++i) {
                const Circle& ci = domain.component_circle(i);
                double di = std::abs(z - ci.center) - ci.radius;
                if (di < best_d) {
                    best_d = di;
                    best = i;
                }
            }
            const Circle& hit_circle = domain.component_circle(best);
            Complex rel = z - hit_circle.center;
            double angle = rel == Complex(0, 0) ? 0.0 : wrap_angle(std::arg(rel));
            if (auto idx = partition.find(best, angle))
                ++counts.arc_hits[*idx];
            else
                ++counts.unattributed;
        }
        return counts;
    };

    const int threads = std::min<long>(resolve_threads(options.threads), chunks);
    if (threads <= 1) {
        for (long c = 0; c < chunks; ++c) per_chunk[static_cast<std::size_t>(c)] = run_chunk(c);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&]() {
                for (long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
                    per_chunk[static_cast<std::size_t>(c)] = run_chunk(c);
            });
        for (std::thread& t : pool) t.join();
    }

    HarmonicEstimate estimate;
    estimate.evaluation_point = z0;
    estimate.walks = walks;
    std::vector<long> hits(partition.size(), 0);
    for (const ChunkCounts& counts : per_chunk) {
        estimate.capped_walks += counts.capped;
        estimate.unattributed += counts.unattributed;
        for (std::size_t i = 0; i < hits.size(); ++i) hits[i] += counts.arc_hits[i];
    }
    estimate.arcs.reserve(partition.size());
    for (std::size_t i = 0; i < partition.size(); ++i) {
        double p = static_cast<double>(hits[i]) / static_cast<double>(walks);
        double se = std::sqrt(p * (1.0 - p) / static_cast<double>(walks));
        estimate.arcs.push_back({partition.arcs()[i], p, se});
    }
    return estimate;
}

Complex default_evaluation_point(const CircularDomain& domain) {
    Complex center = domain.outer().center;
    if (domain.contains(center)) return center;
    // area centroid of G: outer disk minus the inner disks
    double area = kPi * domain.outer().radius * domain.outer().radius;
    Complex moment = area * center;
    for (const Circle& c : domain.inner()) {
        double a = kPi * c.radius * c.radius;
        area -= a;
        moment -= a * c.center;
    }
    Complex centroid = moment / area;
    if (domain.contains(centroid)) return centroid;
    // fall back to the deepest point of a coarse polar grid
    Complex best = centroid;
    double best_depth = -1.0;
    for (int ir = 1; ir < 32; ++ir)
        for (int it = 0; it < 64; ++it) {
            Complex z = center + std::polar(domain.outer().radius * ir / 32.0,
                                            kTwoPi * it / 64.0);
            double d = domain.boundary_distance(z);
            if (d > best_depth) {
                best_depth = d;
                best = z;
            }
        }
    if (best_depth <= 0.0) throw InvalidDomain("no interior evaluation point found");
    return best;
}

}  // namespace carleson
