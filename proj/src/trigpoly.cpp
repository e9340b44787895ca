#include "kamforge/trigpoly.hpp"

#include "kamforge/common.hpp"
#include "kamforge/errors.hpp"
#include "kamforge/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace kamforge {

namespace {
constexpr double kDropTol = 0.0; // keep everything except exact zeros

// Rotation recurrence state for cos/sin(2*pi*k*x), resynced periodically so
// rounding does not accumulate across thousands of harmonics.
struct Rotor {
    double x;       // reduced to [0,1)
    double cs, sn;  // cos/sin of 2*pi*x
    double ck, sk;  // cos/sin of 2*pi*k*x
    int k;

    explicit Rotor(double xr) : x(xr), k(0) {
        cs = std::cos(two_pi * xr);
        sn = std::sin(two_pi * xr);
        ck = 1.0;
        sk = 0.0;
    }

    void advance_to(int kt) {
        while (k < kt) {
            ++k;
            if ((k & 511) == 0) {
                resync();
            } else {
                const double c = ck * cs - sk * sn;
                sk = ck * sn + sk * cs;
                ck = c;
            }
        }
    }

    void resync() {
        // reduce k*x mod 1 exactly enough: k*x < 2^31, fits a double exactly
        double kx = static_cast<double>(k) * x;
        kx -= std::floor(kx);
        ck = std::cos(two_pi * kx);
        sk = std::sin(two_pi * kx);
    }
};
} // namespace

TrigPoly::TrigPoly(double mean, std::vector<Harmonic> harmonics) : mean_(mean) {
    std::map<int, Harmonic> merged;
    for (const Harmonic& h : harmonics) {
        if (h.k < 1)
            throw Error(ErrorCode::DomainError, "harmonic frequency must be >= 1");
        auto& slot = merged[h.k];
        slot.k = h.k;
        slot.c += h.c;
        slot.s += h.s;
    }
    harmonics_.reserve(merged.size());
    for (auto& [k, h] : merged) {
        if (h.c != kDropTol || h.s != kDropTol) harmonics_.push_back(h);
    }
}

TrigPoly TrigPoly::cosine(int k, double amplitude) {
    return TrigPoly(0.0, {Harmonic{k, amplitude, 0.0}});
}

TrigPoly TrigPoly::sine(int k, double amplitude) {
    return TrigPoly(0.0, {Harmonic{k, 0.0, amplitude}});
}

TrigPoly TrigPoly::interpolate(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw Error(ErrorCode::InterpolationSingular, "no samples");
    auto coeffs = real_dft_half(values);
    std::vector<Harmonic> hs;
    hs.reserve(coeffs.size());
    for (std::size_t j = 1; j < coeffs.size(); ++j) {
        double c = 2.0 * coeffs[j].real();
        double s = -2.0 * coeffs[j].imag();
        if (2 * j == n) {
            // Nyquist term: cosine-only, no doubling
            c = coeffs[j].real();
            s = 0.0;
        }
        if (c != 0.0 || s != 0.0) hs.push_back(Harmonic{static_cast<int>(j), c, s});
    }
    return TrigPoly(coeffs[0].real(), std::move(hs));
}

double TrigPoly::eval(double x) const {
    double acc = mean_;
    if (harmonics_.empty()) return acc;
    Rotor rot(wrap01(x));
    for (const Harmonic& h : harmonics_) {
        rot.advance_to(h.k);
        acc += h.c * rot.ck + h.s * rot.sk;
    }
    return acc;
}

std::pair<double, double> TrigPoly::eval_d(double x) const {
    double v = mean_, d = 0.0;
    if (harmonics_.empty()) return {v, d};
    Rotor rot(wrap01(x));
    for (const Harmonic& h : harmonics_) {
        rot.advance_to(h.k);
        const double w = two_pi * h.k;
        v += h.c * rot.ck + h.s * rot.sk;
        d += w * (h.s * rot.ck - h.c * rot.sk);
    }
    return {v, d};
}

std::array<double, 3> TrigPoly::eval_d2(double x) const {
    double v = mean_, d = 0.0, dd = 0.0;
    if (harmonics_.empty()) return {v, d, dd};
    Rotor rot(wrap01(x));
    for (const Harmonic& h : harmonics_) {
        rot.advance_to(h.k);
        const double w = two_pi * h.k;
        const double a = h.c * rot.ck + h.s * rot.sk;
        v += a;
        d += w * (h.s * rot.ck - h.c * rot.sk);
        dd -= w * w * a;
    }
    return {v, d, dd};
}

std::array<double, 4> TrigPoly::eval_d3(double x) const {
    double v = mean_, d = 0.0, dd = 0.0, ddd = 0.0;
    if (harmonics_.empty()) return {v, d, dd, ddd};
    Rotor rot(wrap01(x));
    for (const Harmonic& h : harmonics_) {
        rot.advance_to(h.k);
        const double w = two_pi * h.k;
        const double a = h.c * rot.ck + h.s * rot.sk;
        const double b = h.s * rot.ck - h.c * rot.sk;
        v += a;
        d += w * b;
        dd -= w * w * a;
        ddd -= w * w * w * b;
    }
    return {v, d, dd, ddd};
}

std::complex<double> TrigPoly::eval_complex(std::complex<double> z) const {
    using cd = std::complex<double>;
    cd acc(mean_, 0.0);
    if (harmonics_.empty()) return acc;
    const double xr = wrap01(z.real());
    const cd zred(xr, z.imag());
    // w = e^{2 pi i z}, wb = e^{-2 pi i z}; powers by recurrence with resync
    int kprev = 0;
    cd wk(1.0, 0.0), wbk(1.0, 0.0);
    auto direct = [&](int k) {
        const cd arg = two_pi * cd(0.0, 1.0) * (static_cast<double>(k) * zred);
        wk = std::exp(arg);
        wbk = std::exp(-arg);
    };
    const cd w = std::exp(two_pi * cd(0.0, 1.0) * zred);
    const cd wb = std::exp(-two_pi * cd(0.0, 1.0) * zred);
    for (const Harmonic& h : harmonics_) {
        if (h.k - kprev > 64) {
            direct(h.k);
        } else {
            for (int k = kprev; k < h.k; ++k) {
                wk *= w;
                wbk *= wb;
            }
        }
        kprev = h.k;
        const cd cosk = 0.5 * (wk + wbk);
        const cd sink = cd(0.0, -0.5) * (wk - wbk);
        acc += h.c * cosk + h.s * sink;
    }
    return acc;
}

TrigPoly TrigPoly::derivative() const {
    std::vector<Harmonic> hs;
    hs.reserve(harmonics_.size());
    for (const Harmonic& h : harmonics_) {
        const double w = two_pi * h.k;
        hs.push_back(Harmonic{h.k, w * h.s, -w * h.c});
    }
    return TrigPoly(0.0, std::move(hs));
}

TrigPoly TrigPoly::antiderivative() const {
    if (mean_ != 0.0)
        throw Error(ErrorCode::MeanNotZero,
                    "antiderivative requires zero mean, got " + fmt17(mean_));
    std::vector<Harmonic> hs;
    hs.reserve(harmonics_.size());
    for (const Harmonic& h : harmonics_) {
        const double w = two_pi * h.k;
        hs.push_back(Harmonic{h.k, -h.s / w, h.c / w});
    }
    return TrigPoly(0.0, std::move(hs));
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
    std::vector<Harmonic> hs = harmonics_;
    hs.insert(hs.end(), o.harmonics_.begin(), o.harmonics_.end());
    return TrigPoly(mean_ + o.mean_, std::move(hs));
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const {
    return *this + o.scaled(-1.0);
}

TrigPoly TrigPoly::scaled(double a) const {
    std::vector<Harmonic> hs = harmonics_;
    for (Harmonic& h : hs) {
        h.c *= a;
        h.s *= a;
    }
    return TrigPoly(mean_ * a, std::move(hs));
}

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
    // complex coefficient convolution: f = sum_k F_k e^{2 pi i k x},
    // F_k = (c_k - i s_k)/2 for k>0, F_0 = mean, F_{-k} = conj(F_k).
    struct CC {
        int k;
        std::complex<double> v;
    };
    auto expand = [](const TrigPoly& p) {
        std::vector<CC> out;
        out.reserve(2 * p.harmonics().size() + 1);
        for (auto it = p.harmonics().rbegin(); it != p.harmonics().rend(); ++it)
            out.push_back({-it->k, std::complex<double>(it->c / 2.0, it->s / 2.0)});
        out.push_back({0, std::complex<double>(p.mean(), 0.0)});
        for (const Harmonic& h : p.harmonics())
            out.push_back({h.k, std::complex<double>(h.c / 2.0, -h.s / 2.0)});
        return out;
    };
    const auto fa = expand(*this);
    const auto fb = expand(o);
    std::map<int, std::complex<double>> conv;
    for (const CC& a : fa)
        for (const CC& b : fb) conv[a.k + b.k] += a.v * b.v;
    double mean = conv.count(0) ? conv[0].real() : 0.0;
    std::vector<Harmonic> hs;
    for (const auto& [k, v] : conv) {
        if (k <= 0) continue;
        hs.push_back(Harmonic{k, 2.0 * v.real(), -2.0 * v.imag()});
    }
    return TrigPoly(mean, std::move(hs));
}

double TrigPoly::sup_norm(int oversample) const {
    const int n = std::max(256, oversample * std::max(1, degree()));
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
        m = std::max(m, std::fabs(eval(static_cast<double>(i) / n)));
    }
    return m;
}

double TrigPoly::coeff_abs_sum() const {
    double s = std::fabs(mean_);
    for (const Harmonic& h : harmonics_) s += std::fabs(h.c) + std::fabs(h.s);
    return s;
}

std::pair<double, double> TrigPoly::coeff(int k) const {
    if (k == 0) return {mean_, 0.0};
    auto it = std::lower_bound(harmonics_.begin(), harmonics_.end(), k,
                               [](const Harmonic& h, int kk) { return h.k < kk; });
    if (it == harmonics_.end() || it->k != k) return {0.0, 0.0};
    return {it->c, it->s};
}

} // namespace kamforge
