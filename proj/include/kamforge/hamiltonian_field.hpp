#ifndef KAMFORGE_HAMILTONIAN_FIELD_HPP
#define KAMFORGE_HAMILTONIAN_FIELD_HPP

#include "kamforge/trigpoly.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace kamforge {

/// Implicit-midpoint stepper parameters.
struct IntegratorConfig {
    double step = 1e-4;       // nominal substep length in time
    double inner_tol = 1e-13; // fixed-point tolerance of the midpoint solve
    int max_inner = 64;
};

/// Scalar Hamiltonian on phase space. The induced vector field is
/// (dH/dy, -dH/dx), divergence-free by construction.
class HamiltonianField {
public:
    struct XProfile {
        TrigPoly H;
    }; // H(x,y) = H(x)
    struct YTrig {
        TrigPoly H;
    }; // H(x,y) = H(y), 1-periodic
    struct YPoly {
        std::vector<double> coeffs;
    }; // H = sum_j coeffs[j] * y^j
    struct CurveFollowing {
        TrigPoly speed; // parameter speed as a function of ambient x
        TrigPoly g;     // graph of the followed curve
    }; // H = (1/2pi) speed(x) sin(2 pi (y - g(x)))
    struct Bump {
        TrigPoly h;
        double delta;
        double width; // 0 < width < delta/2; plateau chi==1 on |y|<=delta/2
    }; // H = -h(x) * chi(y)
    struct Generic {
        std::function<double(double, double)> H, Hx, Hy, Hxx, Hxy, Hyy;
        std::string label;
    };
    using Node = std::variant<XProfile, YTrig, YPoly, CurveFollowing, Bump, Generic>;

    HamiltonianField() : node_(YPoly{{0.0}}) {}
    explicit HamiltonianField(Node n) : node_(std::move(n)) {}

    static HamiltonianField x_profile(TrigPoly H) { return HamiltonianField(XProfile{std::move(H)}); }
    static HamiltonianField y_trig(TrigPoly H) { return HamiltonianField(YTrig{std::move(H)}); }
    static HamiltonianField y_poly(std::vector<double> coeffs) { return HamiltonianField(YPoly{std::move(coeffs)}); }
    static HamiltonianField curve_following(TrigPoly speed, TrigPoly g) {
        return HamiltonianField(CurveFollowing{std::move(speed), std::move(g)});
    }
    static HamiltonianField bump(TrigPoly h, double delta, double width) {
        return HamiltonianField(Bump{std::move(h), delta, width});
    }
    static HamiltonianField generic(Generic g) { return HamiltonianField(std::move(g)); }

    double value(double x, double y) const;
    void gradient(double x, double y, double& hx, double& hy) const;
    void hessian(double x, double y, double& hxx, double& hxy, double& hyy) const;

    bool serializable() const { return !std::holds_alternative<Generic>(node_); }
    const Node& node() const { return node_; }

private:
    Node node_;
};

/// Even C^3 cutoff: 1 on |y| <= delta/2, 0 on |y| >= delta/2 + width.
double bump_cutoff(double y, double delta, double width);
double bump_cutoff_d1(double y, double delta, double width);
double bump_cutoff_d2(double y, double delta, double width);

} // namespace kamforge

#endif
