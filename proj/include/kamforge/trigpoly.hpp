#ifndef KAMFORGE_TRIGPOLY_HPP
#define KAMFORGE_TRIGPOLY_HPP

#include <array>
#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace kamforge {

/// One frequency of a real trigonometric polynomial:
/// c*cos(2*pi*k*x) + s*sin(2*pi*k*x), k >= 1.
struct Harmonic {
    int k = 0;
    double c = 0.0;
    double s = 0.0;
};

/// Real trigonometric polynomial on S^1 = R/Z with exact calculus and
/// complex-strip evaluation. Immutable value type.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(double mean) : mean_(mean) {}
    TrigPoly(double mean, std::vector<Harmonic> harmonics);

    static TrigPoly cosine(int k, double amplitude = 1.0);
    static TrigPoly sine(int k, double amplitude = 1.0);
    /// Trigonometric interpolant through values on the uniform grid
    /// {m/n : 0 <= m < n}; degree <= n/2, Nyquist term cosine-only.
    static TrigPoly interpolate(std::span<const double> values);

    double mean() const { return mean_; }
    const std::vector<Harmonic>& harmonics() const { return harmonics_; }
    int degree() const { return harmonics_.empty() ? 0 : harmonics_.back().k; }
    bool is_constant() const { return harmonics_.empty(); }

    double eval(double x) const;
    /// Value and first derivative in one recurrence pass.
    std::pair<double, double> eval_d(double x) const;
    /// Value, first and second derivative.
    std::array<double, 3> eval_d2(double x) const;
    /// Value and derivatives through third order (for jets).
    std::array<double, 4> eval_d3(double x) const;
    std::complex<double> eval_complex(std::complex<double> z) const;

    TrigPoly derivative() const;
    /// Mean-free antiderivative; throws MeanNotZero unless mean() == 0.
    TrigPoly antiderivative() const;

    TrigPoly operator+(const TrigPoly& o) const;
    TrigPoly operator-(const TrigPoly& o) const;
    TrigPoly scaled(double a) const;
    /// Exact product by coefficient convolution.
    TrigPoly operator*(const TrigPoly& o) const;

    /// Sampled sup-norm estimate (oversample * degree points, min 256).
    double sup_norm(int oversample = 8) const;
    double coeff_abs_sum() const;
    /// Coefficient of cos/sin at frequency k (0 -> mean).
    std::pair<double, double> coeff(int k) const;

private:
    double mean_ = 0.0;
    std::vector<Harmonic> harmonics_; // sorted by k, unique, k >= 1
};

} // namespace kamforge

#endif
