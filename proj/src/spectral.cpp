#include "unwindr/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fft.hpp"
#include "unwindr/error.hpp"

namespace unwindr {

bool is_power_of_two(std::size_t m) noexcept { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m) noexcept {
    std::size_t p = 1;
    while (p < m) p <<= 1;
    return p;
}

std::size_t default_grid_size(std::size_t n) {
    return next_power_of_two(std::max<std::size_t>(1024, 8 * n));
}

// --- SpectralSignal ---------------------------------------------------------

SpectralSignal::SpectralSignal(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw PreconditionError("spectral signal needs at least one coefficient");
    for (const auto& c : coeffs_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw NonFiniteInputError("spectral coefficient is not finite");
    }
}

SpectralSignal SpectralSignal::zero(std::size_t n) {
    return SpectralSignal(std::vector<cplx>(std::max<std::size_t>(n, 1)));
}

SpectralSignal SpectralSignal::constant(cplx c) { return SpectralSignal(std::vector<cplx>{c}); }

SpectralSignal SpectralSignal::monomial(std::size_t k, std::size_t length) {
    std::vector<cplx> c(std::max(length, k + 1));
    c[k] = 1.0;
    return SpectralSignal(std::move(c));
}

cplx SpectralSignal::evaluate(cplx z) const noexcept {
    cplx acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::size_t SpectralSignal::degree(double tol) const noexcept {
    for (std::size_t n = coeffs_.size(); n-- > 0;) {
        if (std::abs(coeffs_[n]) > tol) return n;
    }
    return 0;
}

double SpectralSignal::energy() const noexcept {
    return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0,
                           [](double acc, cplx c) { return acc + std::norm(c); });
}

SpectralSignal SpectralSignal::resized(std::size_t n) const {
    std::vector<cplx> c(coeffs_);
    c.resize(std::max<std::size_t>(n, 1));
    return SpectralSignal(std::move(c));
}

SpectralSignal operator+(const SpectralSignal& a, const SpectralSignal& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = a[n] + b[n];
    return SpectralSignal(std::move(c));
}

SpectralSignal operator-(const SpectralSignal& a, const SpectralSignal& b) {
    std::vector<cplx> c(std::max(a.size(), b.size()));
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = a[n] - b[n];
    return SpectralSignal(std::move(c));
}

SpectralSignal operator*(cplx s, const SpectralSignal& a) {
    std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
    for (auto& v : c) v *= s;
    return SpectralSignal(std::move(c));
}

// --- BoundarySamples --------------------------------------------------------

BoundarySamples::BoundarySamples(std::vector<cplx> values) : values_(std::move(values)) {
    if (!is_power_of_two(values_.size()))
        throw InvalidGridError("grid size " + std::to_string(values_.size()) +
                               " is not a power of two");
    for (const auto& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteInputError("boundary sample is not finite");
    }
}

BoundarySamples BoundarySamples::constant(std::size_t m, cplx c) {
    return BoundarySamples(std::vector<cplx>(m, c));
}

double BoundarySamples::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double BoundarySamples::min_abs() const noexcept {
    double m = values_.empty() ? 0.0 : std::abs(values_.front());
    for (const auto& v : values_) m = std::min(m, std::abs(v));
    return m;
}

double BoundarySamples::rms() const noexcept {
    if (values_.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& v : values_) acc += std::norm(v);
    return std::sqrt(acc / static_cast<double>(values_.size()));
}

namespace {

void require_same_grid(const BoundarySamples& a, const BoundarySamples& b) {
    if (a.size() != b.size())
        throw LengthMismatchError("grid sizes differ: " + std::to_string(a.size()) + " vs " +
                                  std::to_string(b.size()));
}

template <class Op>
BoundarySamples pointwise(const BoundarySamples& a, const BoundarySamples& b, Op op) {
    require_same_grid(a, b);
    std::vector<cplx> out(a.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = op(a[k], b[k]);
    return BoundarySamples(std::move(out));
}

}  // namespace

BoundarySamples operator+(const BoundarySamples& a, const BoundarySamples& b) {
    return pointwise(a, b, std::plus<>{});
}
BoundarySamples operator-(const BoundarySamples& a, const BoundarySamples& b) {
    return pointwise(a, b, std::minus<>{});
}
BoundarySamples operator*(const BoundarySamples& a, const BoundarySamples& b) {
    return pointwise(a, b, std::multiplies<>{});
}
BoundarySamples operator*(cplx c, const BoundarySamples& a) {
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (auto& v : out) v *= c;
    return BoundarySamples(std::move(out));
}
BoundarySamples operator+(const BoundarySamples& a, cplx c) {
    std::vector<cplx> out(a.values().begin(), a.values().end());
    for (auto& v : out) v += c;
    return BoundarySamples(std::move(out));
}

// --- GammaWeights -----------------------------------------------------------

GammaWeights::GammaWeights(Kind kind, double exponent, std::vector<double> table)
    : kind_(kind), exponent_(exponent), table_(std::move(table)) {}

GammaWeights GammaWeights::dirichlet() { return {Kind::dirichlet, 0.5, {}}; }
GammaWeights GammaWeights::h1() { return {Kind::h1, 1.0, {}}; }

GammaWeights GammaWeights::sobolev(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw InvalidWeightsError("sobolev exponent must be positive");
    return {Kind::sobolev, s, {}};
}

GammaWeights GammaWeights::explicit_values(std::vector<double> values) {
    if (values.empty()) throw InvalidWeightsError("explicit weights must not be empty");
    if (values.front() != 0.0) throw InvalidWeightsError("gamma_0 must be 0");
    for (std::size_t n = 1; n < values.size(); ++n) {
        if (!std::isfinite(values[n]) || values[n] < values[n - 1])
            throw InvalidWeightsError("weights must be finite and nondecreasing (index " +
                                      std::to_string(n) + ")");
    }
    return {Kind::explicit_values, 0.0, std::move(values)};
}

double GammaWeights::operator()(std::size_t n) const noexcept {
    const auto x = static_cast<double>(n);
    switch (kind_) {
        case Kind::dirichlet: return x;
        case Kind::h1: return x * x;
        case Kind::sobolev: return n == 0 ? 0.0 : std::pow(x, 2.0 * exponent_);
        case Kind::explicit_values: return n < table_.size() ? table_[n] : table_.back();
    }
    return 0.0;
}

// --- conversions ------------------------------------------------------------

BoundarySamples to_samples(const SpectralSignal& f, std::size_t m) {
    if (!is_power_of_two(m))
        throw InvalidGridError("grid size " + std::to_string(m) + " is not a power of two");
    if (m < f.size())
        throw AliasingError("grid size " + std::to_string(m) + " is smaller than spectrum length " +
                            std::to_string(f.size()));
    std::vector<cplx> bins(m);
    std::copy(f.coeffs().begin(), f.coeffs().end(), bins.begin());
    return BoundarySamples(detail::fft_inverse(bins));
}

std::vector<cplx> two_sided_spectrum(const BoundarySamples& s) {
    auto bins = detail::fft_forward(s.values());
    const double scale = 1.0 / static_cast<double>(s.size());
    for (auto& b : bins) b *= scale;
    return bins;
}

BoundarySamples from_two_sided(std::vector<cplx> bins) {
    if (!is_power_of_two(bins.size()))
        throw InvalidGridError("grid size " + std::to_string(bins.size()) +
                               " is not a power of two");
    return BoundarySamples(detail::fft_inverse(bins));
}

SpectrumConversion to_spectrum(const BoundarySamples& s, std::size_t n, double analytic_tol) {
    const std::size_t m = s.size();
    if (n == 0) throw PreconditionError("spectrum length must be positive");
    if (n > m)
        throw AliasingError("spectrum length " + std::to_string(n) + " exceeds grid size " +
                            std::to_string(m));
    const auto bins = two_sided_spectrum(s);
    const std::size_t negative_start = std::max(n, m / 2);
    double total = 0.0, negative = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double e = std::norm(bins[k]);
        total += e;
        if (k >= negative_start)
            negative += e;
        else if (k >= n)
            tail += e;
    }
    SpectrumConversion out;
    out.negative_fraction = total > 0.0 ? negative / total : 0.0;
    out.tail_fraction = total > 0.0 ? tail / total : 0.0;
    if (out.negative_fraction > analytic_tol)
        throw NonAnalyticInputError("negative-frequency energy fraction " +
                                    std::to_string(out.negative_fraction) + " exceeds tolerance");
    out.signal = SpectralSignal(std::vector<cplx>(bins.begin(), bins.begin() + static_cast<std::ptrdiff_t>(n)));
    return out;
}

// --- norms and geometry -----------------------------------------------------

double norm_x(const SpectralSignal& f, const GammaWeights& g) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) acc += g(n) * std::norm(f[n]);
    return std::sqrt(acc);
}

double norm_y(const SpectralSignal& f, const GammaWeights& g) {
    double acc = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) acc += g.difference(n) * std::norm(f[n]);
    return std::sqrt(acc);
}

cplx inner_product(const BoundarySamples& a, const BoundarySamples& b) {
    require_same_grid(a, b);
    cplx acc{};
    for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
    return acc * (kTwoPi / static_cast<double>(a.size()));
}

double dirichlet_energy(const SpectralSignal& f) {
    double acc = 0.0;
    for (std::size_t n = 1; n < f.size(); ++n) acc += static_cast<double>(n) * std::norm(f[n]);
    return std::numbers::pi * acc;
}

BoundarySamples spectral_derivative(const BoundarySamples& s) {
    auto bins = two_sided_spectrum(s);
    const std::size_t m = s.size();
    for (std::size_t k = 0; k < m; ++k) {
        if (2 * k == m) {
            bins[k] = 0.0;  // Nyquist has no well-defined derivative
            continue;
        }
        const double freq = k < m / 2 ? static_cast<double>(k)
                                      : static_cast<double>(k) - static_cast<double>(m);
        bins[k] *= cplx(0.0, freq);
    }
    return from_two_sided(std::move(bins));
}

double winding_area(const BoundarySamples& s) {
    const auto ds = spectral_derivative(s);
    double acc = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) acc += (std::conj(s[k]) * ds[k]).imag();
    return 0.5 * acc * kTwoPi / static_cast<double>(s.size());
}

int winding_number(const BoundarySamples& s, cplx z0, WindingOptions opts) {
    const std::size_t m = s.size();
    for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(s[k] - z0) <= opts.min_distance)
            throw PointOnCurveError("curve passes within " + std::to_string(opts.min_distance) +
                                    " of the reference point at sample " + std::to_string(k));
    }
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double step = std::arg((s[(k + 1) % m] - z0) / (s[k] - z0));
        if (std::abs(step) >= std::numbers::pi - 1e-12)
            throw UnderResolvedCurveError("phase step of " + std::to_string(step) +
                                          " rad at sample " + std::to_string(k));
        total += step;
    }
    const double turns = total / kTwoPi;
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) >= opts.max_residual)
        throw UnderResolvedCurveError("winding residual " + std::to_string(turns - rounded) +
                                      " too large");
    return static_cast<int>(rounded);
}

}  // namespace unwindr
