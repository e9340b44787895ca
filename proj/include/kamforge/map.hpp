#ifndef KAMFORGE_MAP_HPP
#define KAMFORGE_MAP_HPP

#include "kamforge/hamiltonian_field.hpp"
#include "kamforge/jet.hpp"
#include "kamforge/phase.hpp"
#include "kamforge/trigpoly.hpp"

#include <memory>
#include <variant>
#include <vector>

namespace kamforge {

class SymplecticMap;

namespace node {

/// (x, y) -> (x + theta, y)
struct Translation {
    double theta;
};

/// (x, y) -> (x, y + v(x))
struct VerticalShear {
    TrigPoly v;
};

/// (x, y) -> (x + u(y), y); trig-backed profile
struct HorizontalShear {
    TrigPoly u;
};

/// (x, y) -> (x + u(y), y) with caller-supplied u, u' (not serializable)
struct HorizontalShearFn {
    std::function<double(double)> u;
    std::function<double(double)> du;
    std::string label;
};

/// (x, y) -> (x + slope*y, y)
struct IntegrableTwist {
    double slope;
};

/// Area-preserving chart straightening the graph-parameterized curve
/// z -> (z + xi(z), eta(z)):
///   forward  (z1, z2) -> (phix(z1), z2/phix'(z1) + eta(z1)),
///   inverse  (x, y)   -> (phix^{-1}(x), (y - eta(z1)) * phix'(z1)).
/// On the torus the transverse offset is reduced to (-1/2, 1/2].
struct CurveFrame {
    TrigPoly xi;
    TrigPoly eta;
    bool inverse;
};

/// Time-t map of a Hamiltonian flow, integrated by implicit midpoint with
/// the variational equations alongside.
struct FlowMap {
    HamiltonianField field;
    double t;
    IntegratorConfig config;
};

/// Sequential composition; maps[0] applied first.
struct Composition {
    std::vector<SymplecticMap> maps;
};

using Variant = std::variant<Translation, VerticalShear, HorizontalShear,
                             HorizontalShearFn, IntegrableTwist, CurveFrame,
                             FlowMap, Composition>;

} // namespace node

/// A composition tree of exactly-evaluable area-preserving primitives with
/// exact Jacobians and lift bookkeeping. Immutable value type; cheap to copy.
class SymplecticMap {
public:
    SymplecticMap(); // identity (empty composition)

    static SymplecticMap translation(double theta);
    static SymplecticMap vertical_shear(TrigPoly v);
    static SymplecticMap horizontal_shear(TrigPoly u);
    static SymplecticMap horizontal_shear_fn(std::function<double(double)> u,
                                             std::function<double(double)> du,
                                             std::string label = "callable");
    static SymplecticMap integrable_twist(double slope);
    static SymplecticMap curve_frame(TrigPoly xi, TrigPoly eta);
    static SymplecticMap curve_frame_inverse(TrigPoly xi, TrigPoly eta);
    static SymplecticMap flow_map(HamiltonianField field, double t,
                                  IntegratorConfig config = {});
    static SymplecticMap composition(std::vector<SymplecticMap> maps);
    static SymplecticMap identity();

    /// Compose: this applied first, then after.
    SymplecticMap then(const SymplecticMap& after) const;

    PhasePoint eval(const PhasePoint& p) const;
    LiftedPoint eval_lifted(const PhasePoint& p) const;
    Jacobian2 jacobian(const PhasePoint& p) const;
    /// value + Jacobian + winding of one application
    IterateResult eval_full(const PhasePoint& p) const;
    /// n-th image, chain-rule Jacobian product, accumulated winding
    IterateResult iterate(const PhasePoint& p, long n) const;

    bool complex_evaluable() const;
    ComplexPoint eval_complex(const ComplexPoint& z) const;

    bool jet_evaluable() const;
    Jet2 jet3(const PhasePoint& p) const;

    const node::Variant& node() const { return *node_; }

private:
    explicit SymplecticMap(node::Variant n);
    std::shared_ptr<const node::Variant> node_;
};

} // namespace kamforge

#endif
