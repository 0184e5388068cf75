#include "unwindr/analytic.hpp"

#include <string>

#include "fft.hpp"
#include "unwindr/error.hpp"

namespace unwindr {
namespace {

std::vector<cplx> analytic_bins(std::span<const double> u) {
    const std::size_t m = u.size();
    if (!is_power_of_two(m))
        throw InvalidGridError("grid size " + std::to_string(m) + " is not a power of two");
    std::vector<cplx> x(u.begin(), u.end());
    auto bins = detail::fft_forward(x);
    const double scale = 1.0 / static_cast<double>(m);
    bins[0] *= scale;
    for (std::size_t k = 1; k < m; ++k) bins[k] = 2 * k < m ? 2.0 * scale * bins[k] : cplx{};
    return bins;
}

}  // namespace

BoundarySamples analytic_signal(std::span<const double> u) {
    return from_two_sided(analytic_bins(u));
}

std::vector<double> hilbert_transform(std::span<const double> u) {
    auto bins = analytic_bins(u);
    bins[0] = 0.0;
    const auto f = from_two_sided(std::move(bins));
    std::vector<double> out(f.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = f[k].imag();
    return out;
}

SpectralSignal holomorphic_project(const BoundarySamples& s) {
    auto bins = two_sided_spectrum(s);
    bins.resize(std::max<std::size_t>(s.size() / 2, 1));
    return SpectralSignal(std::move(bins));
}

BoundarySamples holomorphic_project_samples(const BoundarySamples& s) {
    return to_samples(holomorphic_project(s), s.size());
}

}  // namespace unwindr
