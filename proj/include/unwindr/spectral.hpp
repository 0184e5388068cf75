#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace unwindr {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Relative negative-frequency energy tolerated by to_spectrum before the
/// input is rejected as non-analytic.
inline constexpr double kAnalyticTolerance = 1e-8;

/// Default oversampled grid for a spectrum of length n: max(1024, 8n),
/// rounded up to a power of two.
std::size_t default_grid_size(std::size_t n);

bool is_power_of_two(std::size_t m) noexcept;
std::size_t next_power_of_two(std::size_t m) noexcept;

/// One-sided Fourier coefficients a_0..a_{N-1} of sum a_n e^{int}; the
/// boundary trace of the polynomial sum a_n z^n.
class SpectralSignal {
public:
    SpectralSignal() = default;
    explicit SpectralSignal(std::vector<cplx> coeffs);

    static SpectralSignal zero(std::size_t n);
    static SpectralSignal constant(cplx c);
    /// z^k, padded to length `length` (at least k+1).
    static SpectralSignal monomial(std::size_t k, std::size_t length = 0);

    std::size_t size() const noexcept { return coeffs_.size(); }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    cplx operator[](std::size_t n) const noexcept {
        return n < coeffs_.size() ? coeffs_[n] : cplx{};
    }

    /// Power-series value at a point of the closed disk (Horner).
    cplx evaluate(cplx z) const noexcept;

    /// Index of the last coefficient with modulus above `tol`, or 0.
    std::size_t degree(double tol = 0.0) const noexcept;

    /// Sum of |a_n|^2.
    double energy() const noexcept;

    SpectralSignal resized(std::size_t n) const;

    friend SpectralSignal operator+(const SpectralSignal& a, const SpectralSignal& b);
    friend SpectralSignal operator-(const SpectralSignal& a, const SpectralSignal& b);
    friend SpectralSignal operator*(cplx c, const SpectralSignal& a);

private:
    std::vector<cplx> coeffs_;
};

/// Values on the uniform grid theta_k = 2 pi k / M of the unit circle.
/// M is a power of two and every value is finite.
class BoundarySamples {
public:
    BoundarySamples() = default;
    explicit BoundarySamples(std::vector<cplx> values);

    static BoundarySamples constant(std::size_t m, cplx c);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator[](std::size_t k) const noexcept { return values_[k]; }
    double theta(std::size_t k) const noexcept {
        return kTwoPi * static_cast<double>(k) / static_cast<double>(values_.size());
    }

    double max_abs() const noexcept;
    double min_abs() const noexcept;
    /// Root-mean-square value, equal to the coefficient l2 norm.
    double rms() const noexcept;

    friend BoundarySamples operator+(const BoundarySamples& a, const BoundarySamples& b);
    friend BoundarySamples operator-(const BoundarySamples& a, const BoundarySamples& b);
    friend BoundarySamples operator*(const BoundarySamples& a, const BoundarySamples& b);
    friend BoundarySamples operator*(cplx c, const BoundarySamples& a);
    friend BoundarySamples operator+(const BoundarySamples& a, cplx c);

private:
    std::vector<cplx> values_;
};

/// Nondecreasing weights 0 = gamma_0 <= gamma_1 <= ... defining
/// |f|_X^2 = sum gamma_n |a_n|^2 and |f|_Y^2 = sum (gamma_{n+1} - gamma_n) |a_n|^2.
class GammaWeights {
public:
    enum class Kind { dirichlet, h1, sobolev, explicit_values };

    static GammaWeights dirichlet();
    static GammaWeights h1();
    /// gamma_n = n^{2s}, s > 0.
    static GammaWeights sobolev(double s);
    /// Explicit table; indices past the end repeat the last value, so the
    /// Y-weights vanish there.
    static GammaWeights explicit_values(std::vector<double> values);

    Kind kind() const noexcept { return kind_; }
    double exponent() const noexcept { return exponent_; }

    double operator()(std::size_t n) const noexcept;
    double difference(std::size_t n) const noexcept { return (*this)(n + 1) - (*this)(n); }

private:
    GammaWeights(Kind kind, double exponent, std::vector<double> table);

    Kind kind_ = Kind::dirichlet;
    double exponent_ = 0.5;
    std::vector<double> table_;
};

/// Result of a forward conversion together with what it discarded.
struct SpectrumConversion {
    SpectralSignal signal;
    /// Energy in the negative-frequency half (including Nyquist) over total.
    double negative_fraction = 0.0;
    /// Energy in kept-side bins n >= N that were truncated, over total.
    double tail_fraction = 0.0;
};

/// valuesₖ = sum_n a_n e^{2 pi i n k / M}. Requires M >= N, M a power of two.
BoundarySamples to_samples(const SpectralSignal& f, std::size_t m);

/// Leading N one-sided coefficients. Throws NonAnalyticInputError when the
/// negative-frequency energy fraction exceeds `analytic_tol`.
SpectrumConversion to_spectrum(const BoundarySamples& s, std::size_t n,
                               double analytic_tol = kAnalyticTolerance);

/// Full two-sided DFT normalized by 1/M: bin k holds frequency k for
/// k < M/2 and k - M otherwise.
std::vector<cplx> two_sided_spectrum(const BoundarySamples& s);
BoundarySamples from_two_sided(std::vector<cplx> bins);

double norm_x(const SpectralSignal& f, const GammaWeights& g);
double norm_y(const SpectralSignal& f, const GammaWeights& g);

/// (2 pi / M) sum conj(a_k) b_k: trapezoid rule for the integral of conj(a) b.
cplx inner_product(const BoundarySamples& a, const BoundarySamples& b);

/// pi sum n |a_n|^2, the disk integral of |F'|^2.
double dirichlet_energy(const SpectralSignal& f);

/// d/dtheta via the multiplier (i n) on the two-sided spectrum.
BoundarySamples spectral_derivative(const BoundarySamples& s);

/// Winding-weighted area (1/2) integral of (x y' - x' y) dt.
double winding_area(const BoundarySamples& s);

struct WindingOptions {
    double min_distance = 1e-9;
    double max_residual = 0.1;
};

/// Phase-increment winding number of the sampled closed curve about z0.
int winding_number(const BoundarySamples& s, cplx z0, WindingOptions opts = {});

}  // namespace unwindr
