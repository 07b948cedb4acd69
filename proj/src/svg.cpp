#include "linepin/svg.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "linepin/errors.hpp"

namespace linepin::svg {

namespace {

constexpr double kSize = 640.0;
constexpr double kScale = 180.0; // pixels per unit

// math coordinates (y up, origin centered) -> svg pixels
double px(double x) { return kSize / 2 + kScale * x; }
double py(double y) { return kSize / 2 - kScale * y; }

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double deg_of(const Vector2d& v) {
    double a = std::atan2(v.y(), v.x()) * 180.0 / std::numbers::pi;
    return a < 0 ? a + 360.0 : a;
}

void arc_path(std::ostringstream& out, double r, double a_deg, double b_deg,
              const char* color, double width) {
    double sweep = b_deg - a_deg;
    while (sweep <= 0) sweep += 360.0;
    double a = a_deg * std::numbers::pi / 180.0;
    double b = (a_deg + sweep) * std::numbers::pi / 180.0;
    int large = sweep > 180.0 ? 1 : 0;
    out << "<path d=\"M " << px(r * std::cos(a)) << " " << py(r * std::sin(a)) << " A " << r * kScale
        << " " << r * kScale << " 0 " << large << " 0 " << px(r * std::cos(b)) << " "
        << py(r * std::sin(b)) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
        << width << "\"/>\n";
}

void label(std::ostringstream& out, const Vector2d& pos, const std::string& text,
           const char* color = "#000") {
    out << "<text x=\"" << px(pos.x()) << "\" y=\"" << py(pos.y())
        << "\" font-size=\"15\" font-family=\"serif\" fill=\"" << color
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << text << "</text>\n";
}

} // namespace

std::string pattern_figure(const HalfplanePattern& P, const PatternVerdict& verdict) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
        << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // unit circle of directions
    out << "<circle cx=\"" << px(0) << "\" cy=\"" << py(0) << "\" r=\"" << kScale
        << "\" fill=\"none\" stroke=\"#999\" stroke-width=\"1\"/>\n";

    // halfplane boundaries and normals
    for (int i = 0; i < P.size(); ++i) {
        Vector2d n = P.normals[i].normalized();
        Vector2d t(-n.y(), n.x());
        const char* color = kPalette[i % 8];
        out << "<line x1=\"" << px(-1.35 * t.x()) << "\" y1=\"" << py(-1.35 * t.y()) << "\" x2=\""
            << px(1.35 * t.x()) << "\" y2=\"" << py(1.35 * t.y()) << "\" stroke=\"" << color
            << "\" stroke-width=\"1\" stroke-dasharray=\"5 3\"/>\n";
        out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0.92 * n.x())
            << "\" y2=\"" << py(0.92 * n.y()) << "\" stroke=\"" << color
            << "\" stroke-width=\"2.5\"/>\n";
        // outward normal dot on the circle, inward hollow
        out << "<circle cx=\"" << px(n.x()) << "\" cy=\"" << py(n.y())
            << "\" r=\"5\" fill=\"" << color << "\"/>\n";
        out << "<circle cx=\"" << px(-n.x()) << "\" cy=\"" << py(-n.y())
            << "\" r=\"5\" fill=\"white\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        label(out, 1.14 * n, "n" + std::to_string(i + 1), color);
        label(out, -1.14 * n, "-n" + std::to_string(i + 1), color);
    }

    // covering arcs, one ring per spanning triple
    for (size_t c = 0; c < verdict.cover.size(); ++c) {
        const auto& [t, arc] = verdict.cover[c];
        const char* color = kPalette[c % 8];
        double r = 1.24 + 0.07 * static_cast<double>(c);
        arc_path(out, r, deg_of(arc.start), deg_of(arc.end), color, 4.0);
        std::string name = std::to_string(t[0] + 1) + std::to_string(t[1] + 1) +
                           std::to_string(t[2] + 1);
        double mid = deg_of(arc.start);
        double sweep = deg_of(arc.end) - deg_of(arc.start);
        while (sweep <= 0) sweep += 360.0;
        mid += sweep / 2;
        Vector2d mpos((r + 0.06) * std::cos(mid * std::numbers::pi / 180.0),
                      (r + 0.06) * std::sin(mid * std::numbers::pi / 180.0));
        label(out, mpos, name, color);
    }

    if (!verdict.is_pinning && verdict.witness) {
        Vector2d w = verdict.witness->normalized();
        out << "<line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1.2 * w.x())
            << "\" y2=\"" << py(1.2 * w.y())
            << "\" stroke=\"black\" stroke-width=\"3\"/>\n";
        label(out, 1.3 * w, "uncovered u");
    }

    label(out, Vector2d(0, -1.68),
          verdict.is_pinning ? "pinning pattern: arcs cover S1" : "not a pinning pattern");
    out << "</svg>\n";
    return out.str();
}

void write_pattern_figure(const std::string& path, const HalfplanePattern& P,
                          const PatternVerdict& verdict) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << pattern_figure(P, verdict);
}

} // namespace linepin::svg
