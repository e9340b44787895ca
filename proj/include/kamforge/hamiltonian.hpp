#ifndef KAMFORGE_HAMILTONIAN_HPP
#define KAMFORGE_HAMILTONIAN_HPP

#include "kamforge/hamiltonian_field.hpp"
#include "kamforge/map.hpp"

namespace kamforge {

/// Time-t map of H(x,y) = -h(x): the exact vertical shear (x, y + t h'(x)).
SymplecticMap shear_flow(const TrigPoly& h, double t);

/// Closed-form flows of cos(2 pi x), sin(2 pi x), cos(2 pi y), sin(2 pi y)
/// (index 1..4).
SymplecticMap transversality_flow(int index, double t);

/// Hamiltonian whose flow transports the graph curve (phix(z), g(phix(z)))
/// with unit parameter speed: H = (1/2pi) w(x) sin(2 pi (y - g(x))) where
/// w = phix' o phix^{-1}. Requires min phix' > 0.
HamiltonianField curve_following_hamiltonian(const TrigPoly& phix_xi, const TrigPoly& g);

/// H(x,y) = -h(x) * chi(y), chi == 1 on |y| <= delta/2 and 0 outside
/// |y| < delta/2 + width. Requires 0 < width < delta/2.
HamiltonianField bump_hamiltonian(const TrigPoly& h, double delta, double cutoff_width);

/// Time-t flow map. Returns the closed-form shear for the straight-circle
/// curve-following case; otherwise an implicit-midpoint FlowMap node.
SymplecticMap integrate_flow(const HamiltonianField& field, double t,
                             IntegratorConfig config = {});

} // namespace kamforge

#endif
