#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>

#include "errors.hpp"

namespace legflow {

namespace {

constexpr int kWidth = 840;
constexpr int kHeight = 840;
constexpr double kMargin = 40.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::ofstream open_svg(const std::string& path, bool timestamp) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    if (timestamp) {
        std::time_t now = std::time(nullptr);
        char buf[64];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "<!-- generated " << buf << " -->\n";
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out;
}

}  // namespace

void write_projection_svg(const FlowTrajectory& traj, const std::string& path, bool timestamp) {
    if (traj.states.empty()) throw InvalidArgument("empty trajectory");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : traj.states) {
        for (int j = 0; j < s.size(); ++j) {
            xmin = std::min(xmin, s.x[j]);
            xmax = std::max(xmax, s.x[j]);
            ymin = std::min(ymin, s.y[j]);
            ymax = std::max(ymax, s.y[j]);
        }
    }
    const double span = std::max(xmax - xmin, ymax - ymin) * 1.05 + 1e-30;
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double scale = (kWidth - 2.0 * kMargin) / span;
    auto px = [&](double x) { return kWidth / 2.0 + (x - cx) * scale; };
    auto py = [&](double y) { return kHeight / 2.0 - (y - cy) * scale; };

    auto out = open_svg(path, timestamp);
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % kPaletteSize]
            << "\" stroke-width=\"1.2\" points=\"";
        for (int j = 0; j <= s.size(); ++j) {
            const int jj = j % s.size();
            out << fmt(px(s.x[jj])) << "," << fmt(py(s.y[jj])) << " ";
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_series_svg(const std::vector<SeriesPlot>& series, const std::string& path,
                      bool timestamp) {
    if (series.empty()) throw InvalidArgument("no series to plot");
    double tmin = std::numeric_limits<double>::infinity(), tmax = -tmin;
    double vmin = tmin, vmax = -tmin;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            const double lv = std::log10(std::max(std::abs(s.value[i]), 1e-18));
            tmin = std::min(tmin, s.t[i]);
            tmax = std::max(tmax, s.t[i]);
            vmin = std::min(vmin, lv);
            vmax = std::max(vmax, lv);
        }
    }
    if (vmax - vmin < 1e-12) {
        vmax += 0.5;
        vmin -= 0.5;
    }
    auto px = [&](double t) {
        return kMargin + (t - tmin) / (tmax - tmin + 1e-30) * (kWidth - 2 * kMargin);
    };
    auto py = [&](double lv) {
        return kHeight - kMargin - (lv - vmin) / (vmax - vmin) * (kHeight - 2 * kMargin);
    };

    auto out = open_svg(path, timestamp);
    out << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kHeight - kMargin) << "\" x2=\""
        << fmt(kWidth - kMargin) << "\" y2=\"" << fmt(kHeight - kMargin)
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kMargin) << "\" x2=\""
        << fmt(kMargin) << "\" y2=\"" << fmt(kHeight - kMargin) << "\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % kPaletteSize]
            << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t j = 0; j < s.t.size(); ++j) {
            const double lv = std::log10(std::max(std::abs(s.value[j]), 1e-18));
            out << fmt(px(s.t[j])) << "," << fmt(py(lv)) << " ";
        }
        out << "\"/>\n";
        out << "<text x=\"" << fmt(kMargin + 8) << "\" y=\"" << fmt(kMargin + 18.0 * (i + 1))
            << "\" fill=\"" << kPalette[i % kPaletteSize] << "\" font-size=\"14\">" << s.label
            << " (log10)</text>\n";
    }
    out << "</svg>\n";
}

void write_intrinsic_svg(const IntrinsicRun& run, const std::string& path, bool timestamp) {
    SeriesPlot lo{"phi_min", {}, {}}, hi{"phi_max", {}, {}};
    for (const auto& s : run.snapshots) {
        lo.t.push_back(s.t);
        lo.value.push_back(s.phi_min);
        hi.t.push_back(s.t);
        hi.value.push_back(s.phi_max);
    }
    write_series_svg({lo, hi}, path, timestamp);
}

}  // namespace legflow
