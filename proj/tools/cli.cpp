#include "cli.hpp"

#include "gkz/parallel.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <numbers>
#include <optional>
#include <sstream>

namespace gkz::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ParseError("field '" + field + "': " + what);
}

std::string position(const std::string& text, std::size_t byte) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < std::min(byte, text.size()); ++k) {
        if (text[k] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double number(const json& v, const std::string& field) {
    if (!v.is_number()) field_error(field, "expected a number");
    return v.get<double>();
}

Rational rational(const json& v, const std::string& field) {
    if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
    if (!v.is_string()) field_error(field, "expected a rational string");
    const auto r = parse_rational(v.get<std::string>());
    if (!r) field_error(field, "'" + v.get<std::string>() + "' is not a rational number");
    return *r;
}

cplx complex_pair(const json& v, const std::string& field) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_array() || v.size() != 2) field_error(field, "expected [re, im]");
    return {number(v[0], field + "[0]"), number(v[1], field + "[1]")};
}

ParameterVector parameters(const json& v, std::size_t n) {
    if (!v.is_array() || v.size() != n) field_error("c", "expected " + std::to_string(n) + " components");
    bool exact = true;
    for (const auto& e : v)
        if (e.is_number_float() || (e.is_array() && e.size() == 2 && (e[0].is_number_float() || e[1].is_number_float())))
            exact = false;
    if (!exact) {
        std::vector<cplx> values;
        for (std::size_t k = 0; k < n; ++k) values.push_back(complex_pair(v[k], "c[" + std::to_string(k) + "]"));
        return ParameterVector::numeric(values);
    }
    std::vector<ExactComplex> values;
    for (std::size_t k = 0; k < n; ++k) {
        const std::string f = "c[" + std::to_string(k) + "]";
        if (v[k].is_array()) {
            if (v[k].size() != 2) field_error(f, "expected [re, im]");
            values.push_back({rational(v[k][0], f + "[0]"), rational(v[k][1], f + "[1]")});
        } else {
            values.push_back({rational(v[k], f), 0});
        }
    }
    return ParameterVector::exact(values);
}

void apply_options(const json& o, AnalysisOptions& options) {
    if (!o.is_object()) field_error("options", "expected an object");
    for (const auto& [key, value] : o.items()) {
        const std::string f = "options." + key;
        if (key == "seed") {
            if (!value.is_number_unsigned()) field_error(f, "expected a non-negative integer");
            options.seed = value.get<std::uint64_t>();
        } else if (key == "tol_quad") {
            options.quadrature.tolerance = number(value, f);
        } else if (key == "tol_morse") {
            options.critical.morse_tolerance = number(value, f);
        } else if (key == "sector_delta") {
            options.asymptotics.sector_delta = number(value, f);
        } else if (key == "force") {
            if (!value.is_boolean()) field_error(f, "expected true or false");
            options.asymptotics.force = value.get<bool>();
        } else if (key == "lambda_ladder") {
            if (!value.is_array()) field_error(f, "expected a list of numbers");
            options.lambda_ladder.clear();
            for (std::size_t k = 0; k < value.size(); ++k)
                options.lambda_ladder.push_back(number(value[k], f + "[" + std::to_string(k) + "]"));
        } else {
            field_error(f, "unknown option");
        }
    }
}

std::vector<double> parse_ladder(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw ParseError("--lambda-ladder: '" + item + "' is not a number");
        out.push_back(v);
    }
    return out;
}

struct Flags {
    std::string path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol_quad, tol_morse, sector_delta;
    std::optional<std::string> ladder;
    bool force = false;
    int indent = 2;
    std::optional<unsigned> threads;
};

void add_flags(CLI::App* cmd, Flags& f, const std::string& out_help) {
    cmd->add_option("instance", f.path, "instance JSON file")->required();
    cmd->add_option("--out", f.out, out_help);
    cmd->add_option("--seed", f.seed, "solver seed");
    cmd->add_option("--tol-quad", f.tol_quad, "relative quadrature tolerance");
    cmd->add_option("--tol-morse", f.tol_morse, "Morse threshold on |H|");
    cmd->add_option("--lambda-ladder", f.ladder, "comma-separated λ values, e.g. \"20,40,80\"");
    cmd->add_option("--sector-delta", f.sector_delta, "admissible |arg λ|");
    cmd->add_flag("--force", f.force, "evaluate λ outside the sector");
    cmd->add_option("--json-indent", f.indent, "JSON indentation, -1 for one line");
    cmd->add_option("--threads", f.threads, "worker threads (overrides THREADS)");
}

Instance load(const Flags& f) {
    Instance inst = load_instance(f.path);
    auto& o = inst.options;
    if (f.seed) o.seed = *f.seed;
    if (f.tol_quad) o.quadrature.tolerance = *f.tol_quad;
    if (f.tol_morse) o.critical.morse_tolerance = *f.tol_morse;
    if (f.sector_delta) o.asymptotics.sector_delta = *f.sector_delta;
    if (f.ladder) o.lambda_ladder = parse_ladder(*f.ladder);
    if (f.force) o.asymptotics.force = true;
    return inst;
}

int exit_code(ReportStatus s) {
    switch (s) {
        case ReportStatus::full: return 0;
        case ReportStatus::partial: return 2;
        case ReportStatus::error: return 1;
    }
    return 1;
}

fs::path out_dir(const Flags& f) {
    fs::path dir = f.out.empty() ? fs::path(".") : fs::path(f.out);
    fs::create_directories(dir);
    return dir;
}

std::ofstream open_csv(const fs::path& p) {
    std::ofstream s(p);
    if (!s) throw Error("IOError", "cannot write " + p.string());
    s << std::setprecision(17);
    return s;
}

void header(std::ostream& s, std::size_t n) {
    s << "s";
    for (std::size_t k = 1; k <= n; ++k) s << ",re_x" << k << ",im_x" << k;
    for (std::size_t k = 1; k <= n; ++k) s << ",re_l" << k << ",im_l" << k;
    s << ",re_h,im_h\n";
}

void row(std::ostream& s, double param, const TorusPoint& p, const LaurentPolynomial& h) {
    s << param;
    for (Eigen::Index k = 0; k < p.coords.size(); ++k) s << ',' << p.coords[k].real() << ',' << p.coords[k].imag();
    for (Eigen::Index k = 0; k < p.logs.size(); ++k) s << ',' << p.logs[k].real() << ',' << p.logs[k].imag();
    const cplx v = h.evaluate_log(p.logs);
    s << ',' << v.real() << ',' << v.imag() << '\n';
}

int cmd_analyze(const Flags& f, std::ostream& out) {
    const Instance inst = load(f);
    const AnalysisReport report = analyze(inst.config, inst.c, inst.z, inst.options);
    const std::string text = to_json(report).dump(f.indent) + "\n";
    if (f.out.empty()) {
        out << text;
    } else {
        std::ofstream file(f.out);
        if (!file) throw Error("IOError", "cannot write " + f.out);
        file << text;
    }
    return exit_code(report.status);
}

int cmd_cycles(const Flags& f, std::ostream& out, std::ostream& err) {
    Instance inst = load(f);
    inst.options.run_periods = false;
    inst.options.run_asymptotics = false;
    const AnalysisReport report = analyze(inst.config, inst.c, inst.z, inst.options);
    const LaurentPolynomial h = from_config(inst.config, inst.z);
    const std::size_t n = inst.config.dim();
    const fs::path dir = out_dir(f);

    auto sectors = open_csv(dir / "sectors.csv");
    sectors << "divisor,index,lo,hi\n";
    if (n == 1)
        for (Divisor d : {Divisor::at_zero, Divisor::at_infinity}) {
            try {
                for (const auto& s : sectors_1d(h, d))
                    sectors << to_string(d) << ',' << s.index << ',' << s.lo << ',' << s.hi << '\n';
            } catch (const NoPole&) {
            }
        }
    out << (dir / "sectors.csv").string() << '\n';

    for (std::size_t k = 0; k < report.cycles.size(); ++k) {
        if (const auto* t = std::get_if<Thimble>(&report.cycles[k])) {
            const fs::path p = dir / ("thimble_" + std::to_string(k) + ".csv");
            auto csv = open_csv(p);
            csv << "ray,phi,";
            header(csv, n);
            for (std::size_t r = 0; r < t->rays.size(); ++r) {
                const auto& ray = t->rays[r];
                const double phi = n == 2 ? std::atan2(ray.direction[1], ray.direction[0])
                                          : (ray.direction[0] > 0 ? 0.0 : std::numbers::pi);
                const auto rhos = ray.rhos();
                const auto samples = ray.samples();
                for (std::size_t s = 0; s < samples.size(); ++s) {
                    csv << r << ',' << phi << ',';
                    row(csv, rhos[s], samples[s], h);
                }
            }
            out << p.string() << '\n';
        } else {
            const auto& cyc = std::get<Cycle1D>(report.cycles[k]);
            const fs::path p = dir / ("cycle_" + std::to_string(k) + ".csv");
            auto csv = open_csv(p);
            header(csv, n);
            double s = 0.0;
            for (std::size_t j = 0; j < cyc.samples.size(); ++j) {
                if (j > 0) s += (cyc.samples[j].coords - cyc.samples[j - 1].coords).norm();
                row(csv, s, cyc.samples[j], h);
            }
            out << p.string() << '\n';
        }
    }
    for (const auto& fail : report.failures)
        err << "stage " << fail.stage << ": " << fail.kind << ": " << fail.message << '\n';
    if (report.status == ReportStatus::error) return 1;
    return report.cycles.empty() ? 2 : 0;
}

int cmd_stokes(const Flags& f, std::ostream& out) {
    const Instance inst = load(f);
    CriticalOptions copts = inst.options.critical;
    copts.solver.seed = inst.options.seed;
    copts.require_complete = false;
    const auto critical = solve_critical(from_config(inst.config, inst.z), copts);
    const StokesTable table = critical.size() >= 2 ? stokes_lines(critical) : StokesTable{};
    const fs::path dir = out_dir(f);

    auto angles = open_csv(dir / "stokes_angles.csv");
    angles << "i,j,angle\n";
    out << std::setprecision(12);
    for (const auto& l : table.lines)
        for (double a : l.angles) {
            angles << l.i << ',' << l.j << ',' << a << '\n';
            out << l.i << ' ' << l.j << ' ' << a << '\n';
        }

    auto sweep = open_csv(dir / "dominance.csv");
    sweep << "step,theta,order,ties\n";
    if (!critical.empty())
        for (int step = 0; step < 360; ++step) {
            const double theta = 2 * std::numbers::pi * step / 360.0;
            const Dominance d = dominance_order(critical, std::polar(1.0, theta));
            sweep << step << ',' << theta << ',';
            for (std::size_t k = 0; k < d.order.size(); ++k) sweep << (k ? " " : "") << d.order[k];
            sweep << ',';
            for (std::size_t k = 0; k < d.ties.size(); ++k)
                sweep << (k ? " " : "") << d.ties[k].first << '-' << d.ties[k].second;
            sweep << '\n';
        }
    return 0;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        if (auto p = what.find("] "); p != std::string::npos) what = what.substr(p + 2);
        throw ParseError(position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + what);
    }
    if (!doc.is_object()) field_error("", "the instance must be a JSON object");
    for (const char* key : {"n", "A", "c", "z"})
        if (!doc.contains(key)) field_error(key, "missing");
    if (!doc["n"].is_number_unsigned() || doc["n"].get<std::size_t>() == 0) field_error("n", "expected a positive integer");
    const std::size_t n = doc["n"].get<std::size_t>();

    const json& a = doc["A"];
    if (!a.is_array() || a.empty()) field_error("A", "expected a non-empty list of integer vectors");
    std::vector<IntVector> points;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const std::string f = "A[" + std::to_string(j) + "]";
        if (!a[j].is_array() || a[j].size() != n) field_error(f, "expected " + std::to_string(n) + " integers");
        IntVector p;
        for (const auto& x : a[j]) {
            if (!x.is_number_integer()) field_error(f, "expected integers");
            p.push_back(BigInt(x.get<std::int64_t>()));
        }
        points.push_back(std::move(p));
    }
    PointConfiguration config = PointConfiguration::create(n, std::move(points));
    ParameterVector c = parameters(doc["c"], n);

    const json& zj = doc["z"];
    if (!zj.is_array() || zj.size() != config.size())
        field_error("z", "expected " + std::to_string(config.size()) + " coefficients");
    std::vector<cplx> z;
    for (std::size_t j = 0; j < zj.size(); ++j) z.push_back(complex_pair(zj[j], "z[" + std::to_string(j) + "]"));

    AnalysisOptions options;
    if (doc.contains("options")) apply_options(doc["options"], options);
    for (const auto& [key, value] : doc.items())
        if (key != "n" && key != "A" && key != "c" && key != "z" && key != "options") field_error(key, "unknown field");
    return {std::move(config), std::move(c), std::move(z), std::move(options)};
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_instance(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"GKZ hypergeometric integrals: cycles, periods and saddle-point asymptotics"};
    app.require_subcommand(1);
    Flags f;
    auto* analyze_cmd = app.add_subcommand("analyze", "write the analysis report as JSON");
    add_flags(analyze_cmd, f, "report file (default stdout)");
    auto* cycles_cmd = app.add_subcommand("cycles", "write cycle polylines as CSV");
    add_flags(cycles_cmd, f, "output directory (default .)");
    auto* stokes_cmd = app.add_subcommand("stokes", "write Stokes angles and the dominance sweep");
    add_flags(stokes_cmd, f, "output directory (default .)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    if (f.threads) {
        set_thread_count(*f.threads);
    } else if (const char* env = std::getenv("THREADS")) {
        set_thread_count(static_cast<unsigned>(std::strtoul(env, nullptr, 10)));
    }

    try {
        if (analyze_cmd->parsed()) return cmd_analyze(f, out);
        if (cycles_cmd->parsed()) return cmd_cycles(f, out, err);
        return cmd_stokes(f, out);
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

}  // namespace gkz::cli
