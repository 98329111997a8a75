#include "reifflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "reifflow/errors.hpp"

namespace reifflow {

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_curve(const std::filesystem::path& path, const Curve& c) {
    std::ostringstream os;
    os << c.size() << " closed\n";
    for (Vec2 p : c.vertices()) os << format_g17(p.x) << ' ' << format_g17(p.y) << '\n';
    write_text_file(path, os.str());
}

Curve read_curve(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open curve file: " + path.string());
    std::size_t count = 0;
    std::string closed_tag;
    if (!(in >> count >> closed_tag)) throw IoError("bad curve header: " + path.string());
    if (closed_tag != "closed") throw IoError("curve file must be marked 'closed'");
    std::vector<Vec2> pts(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (!(in >> pts[i].x >> pts[i].y))
            throw IoError("truncated curve file: " + path.string());
    }
    return Curve::make(std::move(pts));
}

std::string csv_to_string(const CsvTable& table) {
    std::ostringstream os;
    os << table.header << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << format_g9(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    write_text_file(path, csv_to_string(table));
}

// ---------------------------------------------------------------------------
// SVG log-log plot

namespace {

struct AxisMap {
    double lo, hi;     // log10 range
    double p0, p1;     // pixel range
    double map(double v) const {
        const double t = (std::log10(v) - lo) / (hi - lo);
        return p0 + t * (p1 - p0);
    }
};

}  // namespace

void write_svg_loglog(const std::filesystem::path& path, const PlotSpec& spec) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : spec.series) {
        for (double x : s.xs) { xmin = std::min(xmin, x); xmax = std::max(xmax, x); }
        for (double y : s.ys) { ymin = std::min(ymin, y); ymax = std::max(ymax, y); }
    }
    if (!(xmin > 0.0) || !(ymin > 0.0)) throw DomainError("svg plot needs positive data");
    if (xmax == xmin) { xmax *= 1.5; xmin /= 1.5; }
    if (ymax == ymin) { ymax *= 1.5; ymin /= 1.5; }

    const int W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    const double margin = 0.05;
    auto padlo = [&](double lo, double hi) { return lo - margin * (hi - lo); };
    auto padhi = [&](double lo, double hi) { return hi + margin * (hi - lo); };
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::log10(ymin), ly1 = std::log10(ymax);
    const AxisMap X{padlo(lx0, lx1), padhi(lx0, lx1), double(ml), double(W - mr)};
    const AxisMap Y{padlo(ly0, ly1), padhi(ly0, ly1), double(H - mb), double(mt)};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << spec.title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.x_label << " (log)</text>\n";
    os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
       << "transform=\"rotate(-90 16 " << H / 2 << ")\">" << spec.y_label << " (log)</text>\n";

    // decade ticks
    for (int d = static_cast<int>(std::floor(X.lo)); d <= static_cast<int>(std::ceil(X.hi)); ++d) {
        const double px = X.map(std::pow(10.0, d));
        if (px < ml || px > W - mr) continue;
        os << "<line x1=\"" << format_g9(px) << "\" y1=\"" << H - mb << "\" x2=\""
           << format_g9(px) << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << format_g9(px) << "\" y=\"" << H - mb + 18
           << "\" text-anchor=\"middle\" font-size=\"10\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(std::floor(Y.lo)); d <= static_cast<int>(std::ceil(Y.hi)); ++d) {
        const double py = Y.map(std::pow(10.0, d));
        if (py < mt || py > H - mb) continue;
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << format_g9(py) << "\" x2=\"" << ml
           << "\" y2=\"" << format_g9(py) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << format_g9(py + 3)
           << "\" text-anchor=\"end\" font-size=\"10\">1e" << d << "</text>\n";
    }

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
    int ci = 0;
    for (const auto& s : spec.series) {
        const char* col = colors[ci % 5];
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            os << "<circle cx=\"" << format_g9(X.map(s.xs[i])) << "\" cy=\""
               << format_g9(Y.map(s.ys[i])) << "\" r=\"3.5\" fill=\"" << col << "\"/>\n";
        }
        os << "<text x=\"" << W - mr - 6 << "\" y=\"" << mt + 16 + 14 * ci
           << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << col << "\">" << s.label
           << "</text>\n";
        ++ci;
    }

    if (spec.has_fit && spec.fit_prefactor > 0.0) {
        const double xa = std::pow(10.0, X.lo), xb = std::pow(10.0, X.hi);
        const double ya = spec.fit_prefactor * std::pow(xa, spec.fit_exponent);
        const double yb = spec.fit_prefactor * std::pow(xb, spec.fit_exponent);
        os << "<line x1=\"" << format_g9(X.map(xa)) << "\" y1=\"" << format_g9(Y.map(ya))
           << "\" x2=\"" << format_g9(X.map(xb)) << "\" y2=\"" << format_g9(Y.map(yb))
           << "\" stroke=\"#555\" stroke-dasharray=\"5,4\"/>\n";
        os << "<text x=\"" << W / 2 << "\" y=\"" << mt + 16
           << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#555\">fit exponent "
           << format_g9(spec.fit_exponent) << "</text>\n";
    }
    os << "</svg>\n";
    write_text_file(path, os.str());
}

}  // namespace reifflow
