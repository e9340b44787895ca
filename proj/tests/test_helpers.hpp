#ifndef KAMFORGE_TEST_HELPERS_HPP
#define KAMFORGE_TEST_HELPERS_HPP

#include "kamforge/map.hpp"
#include "kamforge/trigpoly.hpp"

#include <random>

namespace kamforge::testing {

inline TrigPoly random_trig(std::mt19937_64& rng, int max_degree, double scale) {
    std::uniform_real_distribution<double> coef(-scale, scale);
    std::uniform_int_distribution<int> deg(1, max_degree);
    std::vector<Harmonic> hs;
    const int d = deg(rng);
    for (int k = 1; k <= d; ++k) hs.push_back(Harmonic{k, coef(rng) / k, coef(rng) / k});
    return TrigPoly(coef(rng), std::move(hs));
}

/// Random composition of closed-form nodes (no flow maps).
inline SymplecticMap random_closed_form_map(std::mt19937_64& rng, int max_nodes = 4,
                                            double scale = 0.3) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_int_distribution<int> count(1, max_nodes);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<SymplecticMap> nodes;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
        switch (kind(rng)) {
            case 0: nodes.push_back(SymplecticMap::translation(uni(rng))); break;
            case 1: nodes.push_back(SymplecticMap::vertical_shear(random_trig(rng, 6, scale))); break;
            case 2: nodes.push_back(SymplecticMap::horizontal_shear(random_trig(rng, 6, scale))); break;
            case 3: nodes.push_back(SymplecticMap::integrable_twist(uni(rng))); break;
            default: {
                TrigPoly xi = random_trig(rng, 4, 0.02);
                xi = xi - TrigPoly(xi.mean());
                TrigPoly eta = random_trig(rng, 4, scale);
                if (i % 2 == 0)
                    nodes.push_back(SymplecticMap::curve_frame(xi, eta));
                else
                    nodes.push_back(SymplecticMap::curve_frame_inverse(xi, eta));
                break;
            }
        }
    }
    return SymplecticMap::composition(std::move(nodes));
}

/// The running example (x, y) -> (x + theta + y, y).
inline SymplecticMap twist_with_rotation(double theta) {
    return SymplecticMap::composition(
        {SymplecticMap::integrable_twist(1.0), SymplecticMap::translation(theta)});
}

/// fbar(x, y) = (x + sin(2 pi y), y)
inline SymplecticMap fbar() {
    return SymplecticMap::horizontal_shear(TrigPoly::sine(1));
}

} // namespace kamforge::testing

#endif
