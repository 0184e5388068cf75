#include "unwindr/signal_io.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "unwindr/error.hpp"

namespace unwindr::io {

using nlohmann::json;

Format parse_format(std::string_view name) {
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw FormatError("unknown format '" + std::string(name) + "'");
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw FormatError("expected a number or a [re, im] pair, got " + j.dump());
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json complex_array(std::span<const cplx> values) {
    json out = json::array();
    for (const auto& v : values) out.push_back(complex_to_json(v));
    return out;
}

namespace {

std::vector<cplx> complex_list(const json& j, const char* key) {
    if (!j.is_array()) throw FormatError(std::string("\"") + key + "\" must be an array");
    std::vector<cplx> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(complex_from_json(v));
    return out;
}

SignalInput from_json(const json& doc) {
    if (!doc.is_object()) throw FormatError("signal file must hold a JSON object");
    SignalInput in;
    if (doc.contains("samples")) {
        auto values = complex_list(doc["samples"], "samples");
        if (doc.contains("m") && doc["m"].get<std::size_t>() != values.size())
            throw FormatError("\"m\" does not match the number of samples");
        in.samples = BoundarySamples(std::move(values));
    } else if (doc.contains("real")) {
        if (!doc["real"].is_array()) throw FormatError("\"real\" must be an array");
        std::vector<double> u;
        for (const auto& v : doc["real"]) {
            if (!v.is_number()) throw FormatError("\"real\" entries must be numbers");
            u.push_back(v.get<double>());
        }
        if (!is_power_of_two(u.size()))
            throw InvalidGridError("real signal length " + std::to_string(u.size()) +
                                   " is not a power of two");
        in.real = std::move(u);
    } else if (doc.contains("coeffs")) {
        in.coeffs = SpectralSignal(complex_list(doc["coeffs"], "coeffs"));
    } else if (doc.contains("blaschke")) {
        const auto& b = doc["blaschke"];
        const auto m = b.value("m", std::size_t{0});
        auto roots = b.contains("roots") ? complex_list(b["roots"], "roots") : std::vector<cplx>{};
        in.blaschke = BlaschkeProduct(m, std::move(roots));
    } else {
        throw FormatError("signal file needs one of \"samples\", \"real\", \"coeffs\", \"blaschke\"");
    }
    return in;
}

SignalInput from_csv(std::istream& in) {
    std::vector<cplx> values;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double re = 0.0, im = 0.0;
        if (!(row >> re)) {
            if (first) {
                first = false;
                continue;
            }
            throw FormatError("malformed CSV row: " + line);
        }
        first = false;
        if (!(row >> im)) im = 0.0;
        values.emplace_back(re, im);
    }
    if (values.empty()) throw FormatError("CSV input holds no samples");
    SignalInput out;
    out.samples = BoundarySamples(std::move(values));
    return out;
}

}  // namespace

SignalInput read_signal(std::istream& in, Format format) {
    if (format == Format::csv) return from_csv(in);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed JSON: ") + e.what());
    }
    try {
        return from_json(doc);
    } catch (const json::exception& e) {
        throw FormatError(std::string("unexpected JSON content: ") + e.what());
    }
}

SignalInput read_signal_file(const std::string& path, Format format) {
    std::ifstream file(path);
    if (!file) throw FormatError("cannot open " + path);
    return read_signal(file, format);
}

json samples_to_json(const BoundarySamples& s) {
    return json{{"m", s.size()}, {"samples", complex_array(s.values())}};
}

void write_samples_csv(std::ostream& out, const BoundarySamples& s) {
    out << "re,im\n" << std::setprecision(17);
    for (const auto& v : s.values()) out << v.real() << ',' << v.imag() << '\n';
}

void write_curves_csv(std::ostream& out, const std::vector<Curve>& curves) {
    out << "curve,theta,re,im,abs,phase\n" << std::setprecision(17);
    for (const auto& c : curves) {
        for (std::size_t k = 0; k < c.values.size(); ++k) {
            const cplx v = c.values[k];
            out << c.name << ',' << c.values.theta(k) << ',' << v.real() << ',' << v.imag() << ','
                << std::abs(v) << ',' << std::arg(v) << '\n';
        }
    }
}

}  // namespace unwindr::io
