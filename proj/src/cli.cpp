#include "unwindr/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unwindr/analytic.hpp"
#include "unwindr/blaschke.hpp"
#include "unwindr/corpus.hpp"
#include "unwindr/error.hpp"
#include "unwindr/laws.hpp"
#include "unwindr/signal_io.hpp"
#include "unwindr/unwind.hpp"
#include "unwindr/weiss.hpp"

namespace unwindr::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Bad flag values; reported like CLI11 parse errors.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string in = "-";
    std::string out;
    std::string format = "json";
    std::string emit_curves;
    std::string batch;
    std::size_t m = 0;
    std::uint64_t seed = 0;

    std::string gamma = "dirichlet";
    std::size_t steps = 32;
    double tol = 1e-8;
    std::string shift = "origin";
    std::string stabilize = "none";

    int rounds = 2;
    std::string suite = "all";

    std::string kind = "gaussian-chirp";
    double carrier = 10.0;
    double width = 1.0;
    std::size_t degree = 6;
};

struct Outcome {
    json report;
    std::vector<io::Curve> curves;
};

double parse_double(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw UsageError("cannot read " + what + " from '" + text + "'");
    }
}

cplx parse_complex(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_double(text, what), 0.0};
    return {parse_double(text.substr(0, comma), what), parse_double(text.substr(comma + 1), what)};
}

GammaWeights parse_gamma(const std::string& text) {
    if (text == "dirichlet") return GammaWeights::dirichlet();
    if (text == "h1") return GammaWeights::h1();
    if (text.rfind("sobolev:", 0) == 0)
        return GammaWeights::sobolev(parse_double(text.substr(8), "sobolev exponent"));
    throw UsageError("--gamma must be dirichlet, h1 or sobolev:<s>, got '" + text + "'");
}

ShiftStrategy parse_shift(const std::string& text) {
    if (text == "origin") return ShiftStrategy::origin;
    if (text == "maximize") return ShiftStrategy::maximize_selector;
    throw UsageError("--shift must be origin or maximize, got '" + text + "'");
}

std::optional<Stabilizer> parse_stabilizer(const std::string& text) {
    if (text == "none") return std::nullopt;
    if (text.rfind("constant:", 0) == 0)
        return ConstantOffset{parse_complex(text.substr(9), "stabilizer constant")};
    if (text.rfind("shift:", 0) == 0) return DiskShift{parse_complex(text.substr(6), "shift point")};
    throw UsageError("--stabilize must be none, constant:<c> or shift:<re>,<im>, got '" + text + "'");
}

/// --m, then UNWINDR_DEFAULT_M, then the size-based default.
std::size_t resolve_grid(const Options& opt, std::size_t n) {
    std::size_t m = opt.m;
    if (m == 0) {
        if (const char* env = std::getenv("UNWINDR_DEFAULT_M"); env != nullptr && *env != '\0') {
            char* end = nullptr;
            const auto v = std::strtoull(env, &end, 10);
            if (*end != '\0' || v == 0)
                throw InvalidGridError(std::string("UNWINDR_DEFAULT_M='") + env + "' is not a grid size");
            m = static_cast<std::size_t>(v);
        }
    }
    if (m == 0) return default_grid_size(n);
    if (!is_power_of_two(m)) throw InvalidGridError("grid size " + std::to_string(m) + " is not a power of two");
    return m;
}

SpectralSignal trimmed(const SpectralSignal& f) {
    double peak = 0.0;
    for (const auto& c : f.coeffs()) peak = std::max(peak, std::abs(c));
    if (peak == 0.0) return SpectralSignal::zero(1);
    return f.resized(f.degree(1e-15 * peak) + 1);
}

/// One-sided spectrum of whatever the input file carries.
SpectralSignal input_spectrum(const io::SignalInput& in) {
    if (in.coeffs) return *in.coeffs;
    if (in.samples) {
        const auto& s = *in.samples;
        return trimmed(to_spectrum(s, s.size() / 2, kAnalyticTolerance).signal);
    }
    if (in.real) return trimmed(holomorphic_project(analytic_signal(*in.real)));
    throw PreconditionError("this command needs a signal, not a Blaschke product");
}

double max_unimodular_error(const BoundarySamples& b) {
    double worst = 0.0;
    for (const auto& v : b.values()) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
    return worst;
}

json stats(std::span<const double> v) {
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    return json{{"min", lo}, {"max", hi}, {"mean", mean}};
}

// ---------------------------------------------------------------- factorize

Outcome cmd_factorize(const io::SignalInput& in, const Options& opt) {
    const auto stabilizer = parse_stabilizer(opt.stabilize);
    BoundarySamples s;
    std::optional<SpectralSignal> poly;
    if (in.samples) {
        s = *in.samples;
    } else if (in.real) {
        s = analytic_signal(*in.real);
    } else if (in.coeffs) {
        poly = *in.coeffs;
        s = to_samples(*poly, resolve_grid(opt, poly->size()));
    } else {
        throw PreconditionError("factorize needs a signal, not a Blaschke product");
    }
    const std::size_t m = s.size();

    json report{{"command", "factorize"}, {"grid", m}};
    WeissFactorization w;
    if (stabilizer) {
        auto st = stabilized_factorize(s, *stabilizer);
        report["stabilizer"] = json{{"strategy", st.strategy},
                                    {"perturbation", io::complex_to_json(st.perturbation)}};
        w = std::move(st.factorization);
        s = s + st.perturbation;
    } else {
        w = weiss_factorize(s);
    }

    double modulus_error = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        modulus_error = std::max(modulus_error, std::abs(std::abs(w.outer_samples[k]) - std::abs(s[k])));

    report["disk_roots"] = winding_number(w.inner, 0.0);
    report["outer_winding"] = winding_number(w.outer_samples, 0.0);
    report["max_unimodular_error"] = max_unimodular_error(w.inner);
    report["max_modulus_error"] = modulus_error;
    report["min_modulus"] = w.min_modulus;
    report["max_modulus"] = w.max_modulus;
    report["input_negative_fraction"] = w.input_negative_fraction;
    report["outer_tail_fraction"] = w.outer_tail_fraction;
    report["outer_coeffs"] = io::complex_array(trimmed(w.outer).coeffs());

    if (poly && !stabilizer) {
        // Root-based factorization of the same polynomial as a cross-check.
        const auto pf = factor_polynomial(poly->coeffs());
        const auto b_ref = pf.inner_samples(m);
        const auto g_ref = pf.outer_samples(m);
        double inner_gap = 0.0, outer_gap = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            inner_gap = std::max(inner_gap, std::abs(w.inner[k] - b_ref[k]));
            outer_gap = std::max(outer_gap, std::abs(w.outer_samples[k] - g_ref[k]));
        }
        report["reference"] = json{{"inside_roots", io::complex_array(pf.inside_roots)},
                                   {"outside_roots", io::complex_array(pf.outside_roots)},
                                   {"max_inner_gap", inner_gap},
                                   {"max_outer_gap", outer_gap}};
    }

    Outcome o{std::move(report), {}};
    if (!opt.emit_curves.empty())
        o.curves = {{"input", s}, {"inner", w.inner}, {"outer", w.outer_samples}};
    return o;
}

// ------------------------------------------------------------------- unwind

Outcome cmd_unwind(const io::SignalInput& in, const Options& opt) {
    SpectralSignal f = input_spectrum(in);
    UnwindConfig cfg;
    cfg.max_steps = opt.steps;
    cfg.residual_tol = opt.tol;
    cfg.gamma = parse_gamma(opt.gamma);
    cfg.shift = parse_shift(opt.shift);
    cfg.grid = resolve_grid(opt, f.size());

    json report{{"command", "unwind"}};
    if (const auto stabilizer = parse_stabilizer(opt.stabilize)) {
        cplx c;
        std::string strategy;
        if (const auto* off = std::get_if<ConstantOffset>(&*stabilizer)) {
            c = off->c;
            strategy = "constant";
        } else {
            const cplx alpha = std::get<DiskShift>(*stabilizer).alpha;
            if (std::abs(alpha) >= 1.0) throw PreconditionError("shift point must lie in the open disk");
            c = -f.evaluate(alpha);
            strategy = "shift";
        }
        f = f + SpectralSignal::constant(c);
        report["stabilizer"] = json{{"strategy", strategy}, {"perturbation", io::complex_to_json(c)}};
    }

    const auto e = unwind(f, cfg);
    report["grid"] = e.grid;
    report["termination"] = std::string(to_string(e.termination));
    report["steps"] = e.steps();

    json terms = json::array();
    for (std::size_t k = 0; k < e.terms.size(); ++k)
        terms.push_back(json{{"a", io::complex_to_json(e.terms[k].coefficient)},
                             {"step", k + 1},
                             {"shift", io::complex_to_json(e.shifts[k])}});
    report["terms"] = std::move(terms);

    std::vector<double> residuals, sup, xs, ys;
    for (const auto& d : e.diagnostics) {
        residuals.push_back(d.residual_l2);
        sup.push_back(d.residual_sup);
        xs.push_back(d.norm_x);
        ys.push_back(d.norm_y);
    }
    report["residuals"] = residuals;
    report["residual_sup"] = sup;
    report["norms"] = json{{"gamma", opt.gamma},
                           {"input_x", e.input_norm_x},
                           {"input_l2", e.input_l2},
                           {"x", xs},
                           {"y", ys}};

    json checks;
    bool x_monotone = e.input_norm_x >= (xs.empty() ? 0.0 : xs.front()) - 1e-9 * (1.0 + e.input_norm_x);
    for (std::size_t i = 1; i < xs.size(); ++i) x_monotone = x_monotone && xs[i] <= xs[i - 1] + 1e-9 * (1.0 + xs[i - 1]);
    bool residual_monotone = true;
    for (std::size_t i = 1; i < residuals.size(); ++i) residual_monotone = residual_monotone && residuals[i] <= residuals[i - 1];
    checks["x_nonincreasing"] = x_monotone;
    checks["residual_nonincreasing"] = residual_monotone;

    const auto full = reconstruct(e, e.terms.size(), e.grid) + remainder_term(e);
    const auto fs_ = to_samples(f, e.grid);
    checks["reconstruction_error"] = (full - fs_).rms() / std::max(fs_.rms(), 1e-300);

    if (cfg.shift == ShiftStrategy::origin) {
        // With a_n = G_n(0) the terms are orthogonal in L2.
        const auto ts = term_samples(e);
        const auto rem = remainder_term(e);
        double energy = rem.rms() * rem.rms();
        double worst = 0.0;
        for (std::size_t i = 0; i < ts.size(); ++i) {
            energy += std::norm(e.terms[i].coefficient);
            for (std::size_t j = i + 1; j < ts.size(); ++j)
                worst = std::max(worst, std::abs(inner_product(ts[i], ts[j])) / kTwoPi);
            worst = std::max(worst, std::abs(inner_product(ts[i], rem)) / kTwoPi);
        }
        const double total = e.input_l2 * e.input_l2;
        checks["orthogonality_max"] = worst / std::max(total, 1e-300);
        checks["pythagoras_rel_error"] = std::abs(energy - total) / std::max(total, 1e-300);
    }
    report["law_checks"] = std::move(checks);

    Outcome o{std::move(report), {}};
    if (!opt.emit_curves.empty()) {
        o.curves.push_back({"input", fs_});
        for (std::size_t k = 1; k <= e.terms.size(); ++k)
            o.curves.push_back({"partial_" + std::to_string(k), reconstruct(e, k, e.grid)});
        o.curves.push_back({"remainder", remainder_term(e)});
    }
    return o;
}

// ------------------------------------------------------------------ denoise

Outcome cmd_denoise(const io::SignalInput& in, const Options& opt) {
    std::vector<double> u;
    if (in.real) {
        u = *in.real;
    } else if (in.samples) {
        for (const auto& v : in.samples->values()) u.push_back(v.real());
    } else {
        throw PreconditionError("denoise needs a real signal or boundary samples");
    }
    const auto r = denoise(u, opt.rounds);
    const auto spec = two_sided_spectrum(r.output);
    std::size_t dominant = 0;
    for (std::size_t k = 1; k < spec.size() / 2; ++k)
        if (std::abs(spec[k]) > std::abs(spec[dominant])) dominant = k;

    json report{{"command", "denoise"},
                {"rounds", opt.rounds},
                {"modulus_deviation", r.modulus_deviation},
                {"dominant_bin", dominant}};
    report.update(io::samples_to_json(r.output));

    Outcome o{std::move(report), {}};
    if (!opt.emit_curves.empty()) o.curves = {{"input", analytic_signal(u)}, {"output", r.output}};
    return o;
}

// -------------------------------------------------------------------- phase

Outcome cmd_phase(const io::SignalInput& in, const Options& opt) {
    json report{{"command", "phase"}};
    std::vector<double> phi;
    BoundarySamples inner;
    if (in.blaschke || in.coeffs) {
        BlaschkeProduct b;
        std::size_t m = 0;
        if (in.blaschke) {
            b = *in.blaschke;
            m = resolve_grid(opt, b.degree() + 1);
            report["source"] = "blaschke";
        } else {
            b = factor_polynomial(in.coeffs->coeffs()).blaschke;
            m = resolve_grid(opt, in.coeffs->size());
            report["source"] = "polynomial";
        }
        phi = phase_derivative(b, m);
        inner = blaschke_eval(b, m);
        report["degree"] = b.degree();
    } else {
        const BoundarySamples s = in.samples ? *in.samples : analytic_signal(*in.real);
        inner = weiss_factorize(s).inner;
        // phi' = Im(conj(B) B') / |B|^2 with B' the spectral derivative.
        const auto db = spectral_derivative(inner);
        for (std::size_t k = 0; k < inner.size(); ++k)
            phi.push_back(std::imag(std::conj(inner[k]) * db[k]) / std::norm(inner[k]));
        report["source"] = "samples";
        report["degree"] = winding_number(inner, 0.0);
    }
    report["grid"] = phi.size();
    report["phi_prime_stats"] = stats(phi);
    report["phi_prime"] = phi;

    Outcome o{std::move(report), {}};
    if (!opt.emit_curves.empty()) o.curves = {{"inner", inner}};
    return o;
}

// ------------------------------------------------------------------- verify

Outcome cmd_verify(const Options& opt) {
    const auto results = run_law_suite(opt.suite, opt.seed);
    json laws = json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        laws.push_back(json{{"name", r.name},
                            {"passed", r.passed},
                            {"cases", r.cases},
                            {"worst", r.worst},
                            {"tolerance", r.tolerance}});
    }
    return {json{{"command", "verify"}, {"suite", opt.suite}, {"seed", opt.seed}, {"passed", all}, {"laws", laws}},
            {}};
}

// -------------------------------------------------------------------- synth

Outcome cmd_synth(const Options& opt) {
    const std::size_t m = resolve_grid(opt, 1);
    json report{{"kind", opt.kind}};
    corpus::Rng rng(opt.seed);
    std::optional<SpectralSignal> coeffs;
    if (opt.kind == "gaussian-chirp") {
        report["carrier"] = opt.carrier;
        report["width"] = opt.width;
        report.update(io::samples_to_json(to_samples(corpus::gaussian_chirp(m, opt.carrier, opt.width), m)));
    } else if (opt.kind == "multiplicative-noise") {
        report["seed"] = opt.seed;
        report["real"] = corpus::multiplicative_noise(rng, m);
    } else if (opt.kind == "cubic") {
        coeffs = corpus::reference_cubic();
    } else if (opt.kind == "polynomial") {
        report["seed"] = opt.seed;
        corpus::RootSpec spec;
        spec.degree = opt.degree;
        coeffs = corpus::monic_from_roots(corpus::random_roots(rng, spec));
    } else {
        throw UsageError("--kind must be gaussian-chirp, multiplicative-noise, cubic or polynomial, got '" +
                         opt.kind + "'");
    }
    if (coeffs) report["coeffs"] = io::complex_array(coeffs->coeffs());
    return {std::move(report), {}};
}

// ------------------------------------------------------------------ driver

Outcome dispatch(const std::string& command, const io::SignalInput& in, const Options& opt) {
    if (command == "factorize") return cmd_factorize(in, opt);
    if (command == "unwind") return cmd_unwind(in, opt);
    if (command == "denoise") return cmd_denoise(in, opt);
    return cmd_phase(in, opt);
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + path);
    file << text;
}

std::string render_report(const json& report, const Options& opt) {
    if (opt.format == "csv" && report.contains("samples")) {
        std::istringstream is(report.dump());
        std::ostringstream os;
        io::write_samples_csv(os, io::read_signal(is, io::Format::json).samples.value());
        return os.str();
    }
    return report.dump(2) + "\n";
}

json run_batch(const std::string& command, const Options& opt, bool& all_ok) {
    const auto format = io::parse_format(opt.format);
    const std::string ext = format == io::Format::csv ? ".csv" : ".json";
    if (!fs::is_directory(opt.batch)) throw UsageError("--batch needs a directory, got " + opt.batch);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(opt.batch))
        if (entry.is_regular_file() && entry.path().extension() == ext) files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<std::future<json>> jobs;
    for (const auto& path : files) {
        jobs.push_back(std::async(std::launch::async, [&, path] {
            json item{{"file", path.filename().string()}};
            try {
                item["report"] = dispatch(command, io::read_signal_file(path.string(), format), opt).report;
            } catch (const Error& e) {
                item["error"] = e.name();
                item["message"] = e.what();
            } catch (const io::FormatError& e) {
                item["error"] = "malformed-input";
                item["message"] = e.what();
            }
            return item;
        }));
    }
    json out = json::array();
    all_ok = true;
    for (auto& job : jobs) {
        auto item = job.get();
        all_ok = all_ok && !item.contains("error");
        out.push_back(std::move(item));
    }
    return json{{"command", command}, {"batch", out}};
}

void add_io_options(CLI::App* sub, Options& opt, bool input) {
    if (input) {
        sub->add_option("--in", opt.in, "Input signal file, '-' for stdin");
        sub->add_option("--batch", opt.batch, "Process every signal file in a directory");
        sub->add_option("--emit-curves", opt.emit_curves, "Write plot data as CSV to this path");
    }
    sub->add_option("--format", opt.format, "Signal file format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", opt.out, "Write the report here instead of stdout");
    sub->add_option("--m", opt.m, "Sample grid size (power of two)");
    sub->add_option("--seed", opt.seed, "Seed for randomized corpora");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Blaschke factorization and unwinding series for analytic signals", "unwindr"};
    app.require_subcommand(1);
    Options opt;

    auto* factorize = app.add_subcommand("factorize", "Inner-outer factorization by the Weiss construction");
    add_io_options(factorize, opt, true);
    factorize->add_option("--stabilize", opt.stabilize, "none | constant:<c> | shift:<re>,<im>");

    auto* unwind_cmd = app.add_subcommand("unwind", "Unwinding series of an analytic signal");
    add_io_options(unwind_cmd, opt, true);
    unwind_cmd->add_option("--steps", opt.steps, "Maximum number of factorization steps");
    unwind_cmd->add_option("--tol", opt.tol, "Residual L2 tolerance");
    unwind_cmd->add_option("--gamma", opt.gamma, "dirichlet | h1 | sobolev:<s>");
    unwind_cmd->add_option("--shift", opt.shift, "origin | maximize");
    unwind_cmd->add_option("--stabilize", opt.stabilize, "none | constant:<c> | shift:<re>,<im>");

    auto* denoise_cmd = app.add_subcommand("denoise", "Multiplicative-noise removal");
    add_io_options(denoise_cmd, opt, true);
    denoise_cmd->add_option("--rounds", opt.rounds, "Normalize-and-project rounds");

    auto* phase = app.add_subcommand("phase", "Instantaneous frequency of the inner factor");
    add_io_options(phase, opt, true);

    auto* verify = app.add_subcommand("verify", "Run the law suite on seeded corpora");
    add_io_options(verify, opt, false);
    verify->add_option("--suite", opt.suite, "Law name or 'all'");

    auto* synth = app.add_subcommand("synth", "Emit a synthetic signal file");
    add_io_options(synth, opt, false);
    synth->add_option("--kind", opt.kind, "gaussian-chirp | multiplicative-noise | cubic | polynomial");
    synth->add_option("--carrier", opt.carrier, "Chirp carrier frequency");
    synth->add_option("--width", opt.width, "Chirp envelope width");
    synth->add_option("--degree", opt.degree, "Random polynomial degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        Outcome outcome;
        bool ok = true;
        if (command == "verify") {
            outcome = cmd_verify(opt);
            ok = outcome.report["passed"].get<bool>();
        } else if (command == "synth") {
            outcome = cmd_synth(opt);
        } else if (!opt.batch.empty()) {
            outcome.report = run_batch(command, opt, ok);
        } else {
            const auto format = io::parse_format(opt.format);
            const auto input = opt.in == "-" ? io::read_signal(in, format) : io::read_signal_file(opt.in, format);
            outcome = dispatch(command, input, opt);
        }
        if (!opt.emit_curves.empty() && !outcome.curves.empty()) {
            std::ostringstream os;
            io::write_curves_csv(os, outcome.curves);
            write_text(opt.emit_curves, os.str(), err);
        }
        write_text(opt.out, render_report(outcome.report, opt), out);
        if (!ok) {
            err << "error: " << (command == "verify" ? "law-violation" : "batch-failure")
                << ": see report for details\n";
            return kExitDomain;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.name() << ": " << e.what() << '\n';
        return kExitDomain;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const io::FormatError& e) {
        err << "usage error: malformed input: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run(int argc, const char* const* argv) { return run(argc, argv, std::cin, std::cout, std::cerr); }

}  // namespace unwindr::cli
