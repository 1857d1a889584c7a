#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "errors.hpp"
#include "heis.hpp"

namespace legflow {

namespace {

std::string timestamp_line() {
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return std::string("# generated ") + buf + "\n";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    return in;
}

// key=value tokens on a header line.
bool header_value(const std::string& line, const std::string& key, std::string& out) {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos && tok.substr(0, eq) == key) {
            out = tok.substr(eq + 1);
            return true;
        }
    }
    return false;
}

double parse_double(const std::string& s, int line_no, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" + s + "'",
                         line_no);
    }
}

int parse_int(const std::string& s, int line_no, const std::string& what) {
    const double v = parse_double(s, line_no, what);
    const int i = static_cast<int>(std::lround(v));
    if (static_cast<double>(i) != v)
        throw ParseError("line " + std::to_string(line_no) + ": " + what + " must be an integer",
                         line_no);
    return i;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void save_curve(const ClosedCurve& c, const std::string& path) {
    auto out = open_out(path);
    out << "legflow-curve v1\n";
    out << "n=" << c.size() << " holonomy=" << format_double(c.holonomy) << "\n";
    for (int j = 0; j < c.size(); ++j)
        out << format_double(c.u(j)) << " " << format_double(c.x[j]) << " "
            << format_double(c.y[j]) << " " << format_double(c.z[j]) << "\n";
}

void save_planar_curve(const PlanarCurve& c, const std::string& path) {
    auto out = open_out(path);
    out << "legflow-curve v1\n";
    out << "n=" << c.size() << " holonomy=0 planar=true\n";
    for (int j = 0; j < c.size(); ++j)
        out << format_double(c.u(j)) << " " << format_double(c.x[j]) << " "
            << format_double(c.y[j]) << " 0\n";
}

LoadedCurve load_curve(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    int line_no = 1;
    if (!std::getline(in, line) || line != "legflow-curve v1")
        throw ParseError("line 1: expected header 'legflow-curve v1'", 1);

    ++line_no;
    if (!std::getline(in, line))
        throw ParseError("line 2: missing 'n=... holonomy=...' header", 2);
    std::string tok;
    if (!header_value(line, "n", tok)) throw ParseError("line 2: missing n=<int>", 2);
    const int n = parse_int(tok, 2, "sample count");
    if (!header_value(line, "holonomy", tok))
        throw ParseError("line 2: missing holonomy=<float>", 2);
    const double holonomy = parse_double(tok, 2, "holonomy");
    const bool planar = header_value(line, "planar", tok) && tok == "true";

    std::vector<double> x(n), y(n), z(n);
    for (int j = 0; j < n; ++j) {
        ++line_no;
        if (!std::getline(in, line))
            throw ParseError("line " + std::to_string(line_no) + ": truncated file, expected " +
                                 std::to_string(n) + " samples",
                             line_no);
        std::istringstream row(line);
        std::string su, sx, sy, sz;
        if (!(row >> su >> sx >> sy >> sz))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u x y z'",
                             line_no);
        const double u = parse_double(su, line_no, "u");
        if (std::abs(u - static_cast<double>(j) / n) > 1e-12)
            throw ParseError("line " + std::to_string(line_no) + ": u must equal " +
                                 std::to_string(j) + "/" + std::to_string(n),
                             line_no);
        x[j] = parse_double(sx, line_no, "x");
        y[j] = parse_double(sy, line_no, "y");
        z[j] = parse_double(sz, line_no, "z");
    }

    LoadedCurve loaded;
    loaded.planar = planar;
    if (planar) {
        loaded.planar_curve = make_planar_curve(std::move(x), std::move(y));
        return loaded;
    }
    loaded.curve = make_closed_curve(std::move(x), std::move(y), std::move(z), holonomy);
    const double length = curve_length(loaded.curve);
    const double span = *std::max_element(loaded.curve.z.begin(), loaded.curve.z.end()) -
                        *std::min_element(loaded.curve.z.begin(), loaded.curve.z.end());
    const double scale = std::max({length, std::abs(holonomy), span});
    if (wrap_mismatch(loaded.curve) > 1e-3 * scale + 1e-12)
        throw IoError(path + ": holonomy=" + format_double(holonomy) +
                      " is inconsistent with the z samples");
    return loaded;
}

void save_support(const SupportFunction& h, const std::string& path) {
    auto out = open_out(path);
    out << "legflow-support v1\n";
    for (int m = 0; m <= h.max_mode(); ++m)
        out << m << " " << format_double(h.cos_c[m]) << " " << format_double(h.sin_c[m]) << "\n";
}

SupportFunction load_support(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "legflow-support v1")
        throw ParseError("line 1: expected header 'legflow-support v1'", 1);
    SupportFunction h;
    h.cos_c.clear();
    h.sin_c.clear();
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string sm, sa, sb;
        if (!(row >> sm >> sa >> sb))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'n a_n b_n'",
                             line_no);
        const int m = parse_int(sm, line_no, "mode index");
        if (m != static_cast<int>(h.cos_c.size()))
            throw ParseError("line " + std::to_string(line_no) + ": modes must be sequential",
                             line_no);
        h.cos_c.push_back(parse_double(sa, line_no, "a_n"));
        h.sin_c.push_back(parse_double(sb, line_no, "b_n"));
    }
    if (h.cos_c.empty()) throw ParseError("support file has no coefficient rows", line_no);
    return h;
}

void save_field(const CurvatureField& f, double W, const std::string& path) {
    auto out = open_out(path);
    out << "legflow-field v1\n";
    out << "n=" << f.size() << " W=" << format_double(W) << " t=" << format_double(f.t) << "\n";
    for (int j = 0; j < f.size(); ++j)
        out << format_double(static_cast<double>(j) / f.size()) << " " << format_double(f.m0[j])
            << " " << format_double(f.phi[j]) << "\n";
}

LoadedField load_field(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line) || line != "legflow-field v1")
        throw ParseError("line 1: expected header 'legflow-field v1'", 1);
    if (!std::getline(in, line)) throw ParseError("line 2: missing field header", 2);
    std::string tok;
    if (!header_value(line, "n", tok)) throw ParseError("line 2: missing n=<int>", 2);
    const int n = parse_int(tok, 2, "sample count");
    if (!header_value(line, "W", tok)) throw ParseError("line 2: missing W=<float>", 2);
    const double W = parse_double(tok, 2, "W");
    if (!header_value(line, "t", tok)) throw ParseError("line 2: missing t=<float>", 2);
    const double t = parse_double(tok, 2, "t");

    std::vector<double> m0(n), phi(n);
    for (int j = 0; j < n; ++j) {
        const int line_no = 3 + j;
        if (!std::getline(in, line))
            throw ParseError("line " + std::to_string(line_no) + ": truncated field file",
                             line_no);
        std::istringstream row(line);
        std::string su, sm, sp;
        if (!(row >> su >> sm >> sp))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u m0 phi'",
                             line_no);
        parse_double(su, line_no, "u");
        m0[j] = parse_double(sm, line_no, "m0");
        phi[j] = parse_double(sp, line_no, "phi");
    }
    return {make_curvature_field(std::move(phi), std::move(m0), t), W};
}

void write_trajectory(const FlowTrajectory& traj, const std::string& dir, bool timestamp) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "state_%04zu.curve", i);
        save_curve(traj.states[i], (std::filesystem::path(dir) / name).string());
    }
    auto out = open_out((std::filesystem::path(dir) / "diagnostics.csv").string());
    if (timestamp) out << timestamp_line();
    out << "t,length,kmin,kmax,leg_residual,minkowski,total_curvature,holonomy\n";
    for (const auto& d : traj.diagnostics)
        out << format_double(d.t) << "," << format_double(d.length) << ","
            << format_double(d.k_min) << "," << format_double(d.k_max) << ","
            << format_double(d.leg_residual) << "," << format_double(d.minkowski) << ","
            << format_double(d.total_curvature) << "," << format_double(d.holonomy) << "\n";
}

void write_intrinsic_run(const IntrinsicRun& run, const std::string& dir, bool timestamp) {
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "field_%04zu.field", i);
        save_field(run.snapshots[i].field, run.webster.W,
                   (std::filesystem::path(dir) / name).string());
    }
    auto out = open_out((std::filesystem::path(dir) / "diagnostics.csv").string());
    if (timestamp) out << timestamp_line();
    out << "t,phi_min,phi_max,dsphi_max\n";
    for (const auto& s : run.snapshots)
        out << format_double(s.t) << "," << format_double(s.phi_min) << ","
            << format_double(s.phi_max) << "," << format_double(s.dsphi_max) << "\n";
    if (run.singularity.singular) {
        auto rep = open_out((std::filesystem::path(dir) / "singularity.txt").string());
        rep << "singular=true\nt=" << format_double(run.singularity.time)
            << "\nsample=" << run.singularity.sample << "\nmessage=" << run.singularity.message
            << "\n";
    }
}

void write_reports_csv(const std::vector<IdentityReport>& reports, const std::string& path,
                       bool timestamp) {
    auto out = open_out(path);
    if (timestamp) out << timestamp_line();
    out << "name,value,tolerance,pass,t\n";
    for (const auto& r : reports)
        out << r.name << "," << format_double(r.value) << "," << format_double(r.tolerance)
            << "," << (r.pass ? 1 : 0) << "," << format_double(r.t) << "\n";
}

void write_line_samples(const OpenCurve& line, const std::string& path) {
    auto out = open_out(path);
    out << "legflow-line v1\n";
    out << "n=" << line.size() << " smax=" << format_double(line.s_max) << "\n";
    for (int j = 0; j < line.size(); ++j) {
        const double s = line.s_max * j / (line.size() - 1);
        out << format_double(s) << " " << format_double(line.x[j]) << " "
            << format_double(line.y[j]) << " " << format_double(line.z[j]) << "\n";
    }
}

}  // namespace legflow
