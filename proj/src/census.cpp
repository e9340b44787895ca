#include "kamforge/census.hpp"

#include "kamforge/common.hpp"
#include "kamforge/errors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace kamforge {

const char* orbit_type_name(OrbitType t) {
    switch (t) {
        case OrbitType::Hyperbolic: return "hyperbolic";
        case OrbitType::Elliptic: return "elliptic";
        case OrbitType::ParabolicAmbiguous: return "parabolic_ambiguous";
    }
    return "?";
}

OrbitType classify(double trace, double tol_h, double tol_e) {
    if (tol_h <= 0.0 || tol_e <= 0.0)
        throw Error(ErrorCode::DomainError, "classification tolerances must be positive");
    const double a = std::fabs(trace);
    if (a > 2.0 + tol_h) return OrbitType::Hyperbolic;
    if (a < 2.0 - tol_e) return OrbitType::Elliptic;
    return OrbitType::ParabolicAmbiguous;
}

namespace {

struct Sigma {
    double smin, smax;
};

Sigma singular_values(const Jacobian2& A) {
    const double a = A.m11 * A.m11 + A.m21 * A.m21;
    const double b = A.m11 * A.m12 + A.m21 * A.m22;
    const double c = A.m12 * A.m12 + A.m22 * A.m22;
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    const double lmax = 0.5 * (tr + disc);
    const double lmin = 0.5 * (tr - disc);
    return {std::sqrt(std::max(0.0, lmin)), std::sqrt(std::max(0.0, lmax))};
}

// displacement of f^n from the target winding, on the lift
struct Displacement {
    double dx, dy;
    Jacobian2 J; // of f^n
};

Displacement displacement(const SymplecticMap& map, const PhasePoint& p, long n, long wx) {
    IterateResult r = map.iterate(p, n);
    Displacement d;
    d.dx = (r.p.x.value() - p.x.value() + static_cast<double>(r.winding.x)) -
           static_cast<double>(wx);
    d.dy = p.space == Space::Torus ? circle_delta(r.p.y, p.y) : r.p.y - p.y;
    d.J = r.jacobian;
    return d;
}

struct SeedOutcome {
    bool converged = false;
    bool degenerate = false;
    PhasePoint point;
    double residual = 0.0;
    long wx = 0;
};

SeedOutcome newton_seed(const SymplecticMap& map, long n, const Region& region,
                        const CensusOptions& opt, PhasePoint z, long wx) {
    SeedOutcome out;
    const double step_cap = 0.5 * std::max(region.width(), region.height());
    double cond_at_root = 0.0;
    for (int it = 0; it < opt.max_newton; ++it) {
        Displacement d;
        try {
            d = displacement(map, z, n, wx);
        } catch (const Error&) {
            return out;
        }
        const double res = std::max(std::fabs(d.dx), std::fabs(d.dy));
        Jacobian2 A = d.J;
        A.m11 -= 1.0;
        A.m22 -= 1.0;
        const Sigma sv = singular_values(A);
        if (res <= opt.newton_tol) {
            cond_at_root = sv.smin > 0.0 ? sv.smax / sv.smin : 1e300;
            out.converged = true;
            // A root is only isolated at the dedup radius if the Newton
            // geometry can localize it that well: position uncertainty is
            // about newton_tol / smin. Unresolvable clusters are reported
            // as degenerate families, never counted.
            const bool resolvable = sv.smin * opt.dedup_radius >= opt.newton_tol;
            out.degenerate = cond_at_root > opt.degenerate_cond || !resolvable;
            out.point = z;
            out.residual = res;
            out.wx = wx;
            return out;
        }
        double sx, sy;
        if (sv.smin > 1e-12 * std::max(1.0, sv.smax)) {
            const double det = A.det();
            sx = (A.m22 * d.dx - A.m12 * d.dy) / det;
            sy = (-A.m21 * d.dx + A.m11 * d.dy) / det;
        } else {
            // Tikhonov step toward the least-squares solution
            const double mu = std::max(1e-12, 1e-8 * sv.smax) * std::max(1e-12, 1e-8 * sv.smax);
            const double a = A.m11 * A.m11 + A.m21 * A.m21 + mu;
            const double b = A.m11 * A.m12 + A.m21 * A.m22;
            const double c = A.m12 * A.m12 + A.m22 * A.m22 + mu;
            const double gx = A.m11 * d.dx + A.m21 * d.dy;
            const double gy = A.m12 * d.dx + A.m22 * d.dy;
            const double det = a * c - b * b;
            sx = (c * gx - b * gy) / det;
            sy = (-b * gx + a * gy) / det;
        }
        const double norm = std::max(std::fabs(sx), std::fabs(sy));
        if (!std::isfinite(norm)) return out;
        if (norm > step_cap) {
            sx *= step_cap / norm;
            sy *= step_cap / norm;
        }
        z = PhasePoint(z.x.value() - sx, z.y - sy, z.space);
        // abandon runaways early
        if (std::fabs(z.y) > std::fabs(region.y0) + std::fabs(region.y1) + 2.0) return out;
    }
    return out;
}

} // namespace

long minimal_period(const SymplecticMap& map, const PhasePoint& p, long n, double tol) {
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        IterateResult r = map.iterate(p, d);
        const double dx = circle_distance(r.p.x.value(), p.x.value());
        const double dy = p.space == Space::Torus ? circle_distance(r.p.y, p.y)
                                                  : std::fabs(r.p.y - p.y);
        if (std::max(dx, dy) <= tol) return d;
    }
    throw Error(ErrorCode::NotPeriodic,
                "point is not periodic with period dividing " + std::to_string(n));
}

CensusCounts Census::counts() const {
    CensusCounts c;
    for (const OrbitRecord& r : records) {
        switch (r.type) {
            case OrbitType::Hyperbolic: ++c.hyperbolic; break;
            case OrbitType::Elliptic: ++c.elliptic; break;
            case OrbitType::ParabolicAmbiguous: ++c.ambiguous; break;
        }
    }
    c.degenerate_families = static_cast<long>(degenerate_families.size());
    return c;
}

long Census::orbit_count(const SymplecticMap& map) const {
    std::vector<bool> used(records.size(), false);
    long orbits = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (used[i]) continue;
        ++orbits;
        used[i] = true;
        PhasePoint z = records[i].point;
        for (long k = 1; k < records[i].minimal_period; ++k) {
            z = map.eval(z);
            for (std::size_t j = 0; j < records.size(); ++j) {
                if (!used[j] && PhasePoint::distance(records[j].point, z) < 1e-6) {
                    used[j] = true;
                    break;
                }
            }
        }
    }
    return orbits;
}

Census find_periodic(const SymplecticMap& map, long n, const Region& region,
                     const CensusOptions& opt) {
    if (n < 1) throw Error(ErrorCode::DomainError, "find_periodic requires n >= 1");
    Census census;
    census.n = n;
    census.region = region;

    // deterministic seed set: grid plus hints, each tried for every winding
    std::vector<PhasePoint> seeds;
    if (opt.grid_seeds) {
        const int nx = std::max(1, opt.seed_density);
        int ny = opt.y_rows;
        if (ny <= 0) {
            ny = static_cast<int>(std::ceil(opt.seed_density * region.height()));
            ny = std::clamp(ny, 3, 48);
        }
        seeds.reserve(static_cast<std::size_t>(nx) * ny + opt.hints.size());
        for (int i = 0; i < nx; ++i) {
            for (int j = 0; j < ny; ++j) {
                const double x = region.x0 + region.width() * (i + 0.5) / nx;
                const double y = region.y0 + region.height() * (j + 0.5) / ny;
                seeds.emplace_back(x, y, opt.space);
            }
        }
    }
    for (const PhasePoint& h : opt.hints) seeds.push_back(h);

    const std::size_t jobs = seeds.size() * opt.windings.size();
    std::vector<SeedOutcome> outcomes(jobs);
    parallel_for(jobs, [&](std::size_t idx) {
        const std::size_t si = idx / opt.windings.size();
        const std::size_t wi = idx % opt.windings.size();
        outcomes[idx] = newton_seed(map, n, region, opt, seeds[si], opt.windings[wi]);
    });

    // deterministic merge: collect, sort, dedupe
    std::vector<SeedOutcome> roots, degens;
    for (const SeedOutcome& o : outcomes) {
        if (!o.converged) {
            ++census.dropped_seeds;
            continue;
        }
        if (!region.contains(o.point)) continue;
        (o.degenerate ? degens : roots).push_back(o);
    }
    auto sort_key = [](const SeedOutcome& a, const SeedOutcome& b) {
        if (a.wx != b.wx) return a.wx < b.wx;
        if (a.point.x.value() != b.point.x.value()) return a.point.x.value() < b.point.x.value();
        return a.point.y < b.point.y;
    };
    std::sort(roots.begin(), roots.end(), sort_key);
    std::sort(degens.begin(), degens.end(), sort_key);

    auto dedupe = [&](const std::vector<SeedOutcome>& in, double radius) {
        std::vector<SeedOutcome> out;
        for (const SeedOutcome& o : in) {
            bool dup = false;
            for (const SeedOutcome& kept : out) {
                if (PhasePoint::distance(kept.point, o.point) < radius) {
                    dup = true;
                    break;
                }
            }
            if (!dup) out.push_back(o);
        }
        return out;
    };
    roots = dedupe(roots, opt.dedup_radius);

    // isolated roots -> records with minimal period, trace, classification
    for (const SeedOutcome& o : roots) {
        long d;
        try {
            d = minimal_period(map, o.point, n, opt.period_tol);
        } catch (const Error&) {
            ++census.dropped_seeds;
            continue;
        }
        IterateResult r = map.iterate(o.point, d);
        const double fresh = std::max(
            circle_distance(r.p.x.value(), o.point.x.value()),
            o.point.space == Space::Torus ? circle_distance(r.p.y, o.point.y)
                                          : std::fabs(r.p.y - o.point.y));
        if (fresh > opt.residual_verify) {
            ++census.dropped_seeds;
            continue;
        }
        OrbitRecord rec;
        rec.point = o.point;
        rec.minimal_period = d;
        rec.winding = r.winding.x;
        rec.trace = r.jacobian.trace();
        rec.type = classify(rec.trace);
        rec.residual = fresh;
        rec.nondegenerate = rec.type != OrbitType::ParabolicAmbiguous;
        (d == n ? census.records : census.lower_period).push_back(rec);
    }

    // cluster degenerate roots into families by chain distance
    const double chain = std::max(0.05, 4.0 / std::max(1, opt.seed_density));
    std::vector<bool> used(degens.size(), false);
    for (std::size_t i = 0; i < degens.size(); ++i) {
        if (used[i]) continue;
        DegenerateFamily fam;
        fam.period = n;
        fam.representative = degens[i].point;
        fam.point_count = 0;
        std::vector<std::size_t> stack{i};
        used[i] = true;
        while (!stack.empty()) {
            std::size_t k = stack.back();
            stack.pop_back();
            ++fam.point_count;
            for (std::size_t j = 0; j < degens.size(); ++j) {
                if (!used[j] &&
                    PhasePoint::distance(degens[k].point, degens[j].point) < chain) {
                    used[j] = true;
                    stack.push_back(j);
                }
            }
        }
        census.degenerate_families.push_back(fam);
    }

    auto rec_key = [](const OrbitRecord& a, const OrbitRecord& b) {
        if (a.minimal_period != b.minimal_period) return a.minimal_period < b.minimal_period;
        if (a.winding != b.winding) return a.winding < b.winding;
        if (a.point.x.value() != b.point.x.value()) return a.point.x.value() < b.point.x.value();
        return a.point.y < b.point.y;
    };
    std::sort(census.records.begin(), census.records.end(), rec_key);
    std::sort(census.lower_period.begin(), census.lower_period.end(), rec_key);
    return census;
}

} // namespace kamforge
