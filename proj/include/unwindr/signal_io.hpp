#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "unwindr/blaschke.hpp"
#include "unwindr/spectral.hpp"

namespace unwindr::io {

/// Malformed input file; the CLI maps it to a usage error.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv };
Format parse_format(std::string_view name);

/// A parsed input. Exactly one of the alternatives is populated, matching
/// the JSON keys "samples", "real", "coeffs" or "blaschke".
struct SignalInput {
    std::optional<BoundarySamples> samples;
    std::optional<std::vector<double>> real;
    std::optional<SpectralSignal> coeffs;
    std::optional<BlaschkeProduct> blaschke;
};

/// JSON: {"m": M, "samples": [[re, im], ...]} | {"real": [...]} |
/// {"coeffs": [[re, im], ...]} | {"blaschke": {"m": k, "roots": [[re, im], ...]}}.
/// CSV: one "re,im" row per sample; a non-numeric first row is a header.
SignalInput read_signal(std::istream& in, Format format);
SignalInput read_signal_file(const std::string& path, Format format);

nlohmann::json complex_to_json(cplx z);
nlohmann::json complex_array(std::span<const cplx> values);
cplx complex_from_json(const nlohmann::json& j);

nlohmann::json samples_to_json(const BoundarySamples& s);
void write_samples_csv(std::ostream& out, const BoundarySamples& s);

/// Rows "curve,theta,re,im,abs,phase" for external plotting.
struct Curve {
    std::string name;
    BoundarySamples values;
};
void write_curves_csv(std::ostream& out, const std::vector<Curve>& curves);

}  // namespace unwindr::io
