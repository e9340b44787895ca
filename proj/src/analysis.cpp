#include "kamforge/analysis.hpp"

#include "kamforge/errors.hpp"

#include <cmath>

namespace kamforge {

namespace {
// one orbit step staying on the graph within tol
IterateResult graph_step(const SymplecticMap& map, const TrigPoly& graph,
                         const PhasePoint& p, double tol, long step_index) {
    IterateResult r = map.eval_full(p);
    const double gy = graph.eval(r.p.x.value());
    const double dev = r.p.space == Space::Torus ? circle_distance(r.p.y, wrap01(gy))
                                                 : std::fabs(r.p.y - gy);
    if (dev > tol)
        throw Error(ErrorCode::InvarianceViolation,
                    "graph not invariant along orbit: |y - g(x)| = " + fmt17(dev) +
                        " at step " + std::to_string(step_index));
    return r;
}
} // namespace

double twist_entry(const SymplecticMap& map, const TrigPoly& graph, double x, long n,
                   Space space, double invariance_tol) {
    PhasePoint p(x, graph.eval(x), space);
    Jacobian2 J = Jacobian2::identity();
    for (long k = 1; k <= n; ++k) {
        IterateResult r = graph_step(map, graph, p, invariance_tol, k);
        J = r.jacobian * J;
        p = r.p;
    }
    return J.m12;
}

ConeReport cone_check(const SymplecticMap& map, const TrigPoly& graph, long n,
                      int sample_count, Space space, double invariance_tol) {
    ConeReport report;
    report.samples = sample_count;
    for (int i = 0; i < sample_count; ++i) {
        const double x0 = static_cast<double>(i) / sample_count;
        PhasePoint p(x0, graph.eval(x0), space);
        double vs = 0.0, vt = 1.0; // the vertical vector
        for (long k = 1; k <= n; ++k) {
            IterateResult r = graph_step(map, graph, p, invariance_tol, k);
            r.jacobian.apply(vs, vt);
            p = r.p;
            const double slope = graph.eval_d(p.x.value()).second;
            if (!(vs > 0.0) || !(vt > slope * vs)) {
                if (report.passed) {
                    report.passed = false;
                    report.first_violation = ConeViolation{x0, k, vs, vt};
                }
                break;
            }
        }
        if (!report.passed) break;
    }
    return report;
}

double sup_distance(const SymplecticMap& a, const SymplecticMap& b, const Region& region,
                    int nx, int ny, Space space) {
    if (nx < 1 || ny < 1)
        throw Error(ErrorCode::DomainError, "sup_distance requires a nonempty grid");
    double sup = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double x = region.x0 + region.width() * i / nx;
        for (int j = 0; j <= ny; ++j) {
            const double y = region.y0 + region.height() * j / ny;
            const PhasePoint p(x, y, space);
            sup = std::max(sup, PhasePoint::distance(a.eval(p), b.eval(p)));
        }
    }
    return sup;
}

} // namespace kamforge
