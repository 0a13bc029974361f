#include "reachkit/svg.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "reachkit/errors.hpp"

namespace reachkit {

namespace {

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* kPartColors[6] = {"#ef4444", "#3b82f6", "#10b981",
                              "#f59e0b", "#8b5cf6", "#ec4899"};

struct Mapper {
    const GridSpec<2>& spec;
    double s;
    // world point to pixel, y up
    double px(double wx) const { return (wx - (spec.origin[0] - 0.5 * spec.h)) / spec.h * s; }
    double py(double wy) const {
        return (static_cast<double>(spec.dims[1]) -
                (wy - (spec.origin[1] - 0.5 * spec.h)) / spec.h) *
               s;
    }
    // cell rect corner (min x, max y side up)
    double cx(std::int64_t ix) const { return static_cast<double>(ix) * s; }
    double cy(std::int64_t iy) const { return static_cast<double>(spec.dims[1] - 1 - iy) * s; }
};

void emit_cells(std::string& out, const GridSet<2>& g, const Mapper& m, const char* fill,
                double opacity) {
    // merged runs along x keep the file small
    out += "<g fill=\"" + std::string(fill) + "\" fill-opacity=\"" + num(opacity) + "\">\n";
    for (std::int64_t y = 0; y < g.spec.dims[1]; ++y) {
        std::int64_t x = 0;
        while (x < g.spec.dims[0]) {
            if (!g.occupied(Index<2>{x, y})) {
                ++x;
                continue;
            }
            std::int64_t x0 = x;
            while (x < g.spec.dims[0] && g.occupied(Index<2>{x, y})) ++x;
            out += "<rect x=\"" + num(m.cx(x0)) + "\" y=\"" + num(m.cy(y)) + "\" width=\"" +
                   num(static_cast<double>(x - x0) * m.s) + "\" height=\"" + num(m.s) +
                   "\"/>\n";
        }
    }
    out += "</g>\n";
}

void emit_spindle_outline(std::string& out, const Mapper& m, const Spindle<2>& sp, double tol) {
    double r = sp.R + tol;
    double su = std::sqrt(std::max(0.0, r * r - sp.hp * sp.hp));
    double alpha = std::atan2(su, sp.hp);
    Vec<2> e = sp.axis;
    Vec<2> n{-e[1], e[0]};
    auto pt = [&](const Vec<2>& c, double phi, double nsign) {
        Vec<2> p = c + (r * std::sin(phi)) * e + (nsign * r * std::cos(phi)) * n;
        return num(m.px(p[0])) + "," + num(m.py(p[1]));
    };
    Vec<2> c1 = sp.mid - sp.hp * n;
    Vec<2> c2 = sp.mid + sp.hp * n;
    std::string pts;
    const int steps = 64;
    for (int i = 0; i <= steps; ++i) {
        double phi = -alpha + 2 * alpha * static_cast<double>(i) / steps;
        pts += pt(c1, phi, +1) + " ";
    }
    for (int i = 0; i <= steps; ++i) {
        double phi = alpha - 2 * alpha * static_cast<double>(i) / steps;
        pts += pt(c2, phi, -1) + " ";
    }
    out += "<polygon points=\"" + pts + "\" fill=\"none\" stroke=\"#dc2626\" stroke-width=\"1.5\"/>\n";
}

}  // namespace

std::string render_svg(const GridSet<2>& g, const SvgOptions& opts) {
    const GridSpec<2>& spec = g.spec;
    Mapper m{spec, opts.cell_px};
    double w = static_cast<double>(spec.dims[0]) * opts.cell_px;
    double h = static_cast<double>(spec.dims[1]) * opts.cell_px;

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(w) + " " + num(h) +
           "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\">\n";
    if (opts.timestamp) {
        char buf[64];
        std::time_t t = std::time(nullptr);
        std::snprintf(buf, sizeof buf, "<!-- generated %lld -->\n",
                      static_cast<long long>(t));
        out += buf;
    }
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    if (opts.underlay) {
        if (!(opts.underlay->spec == spec)) throw DomainError("underlay grid mismatch");
        emit_cells(out, *opts.underlay, m, "#bfdbfe", 1.0);
    }
    emit_cells(out, g, m, "#1f2937", 1.0);

    if (opts.verdict && opts.verdict->witness) {
        const auto& wit = *opts.verdict->witness;
        // section cells tinted by component
        out += "<g fill-opacity=\"0.75\">\n";
        for (std::size_t i = 0; i < wit.section_cells.size(); ++i) {
            Index<2> idx = spec.unlinear(wit.section_cells[i]);
            const char* color =
                kPartColors[static_cast<std::size_t>(wit.section_labels[i]) % 6];
            out += "<rect x=\"" + num(m.cx(idx[0])) + "\" y=\"" + num(m.cy(idx[1])) +
                   "\" width=\"" + num(m.s) + "\" height=\"" + num(m.s) + "\" fill=\"" + color +
                   "\"/>\n";
        }
        out += "</g>\n";
        Spindle<2> sp(wit.b1, wit.b2, opts.verdict->R);
        emit_spindle_outline(out, m, sp, opts.verdict->slack);
        for (const Vec<2>* b : {&wit.b1, &wit.b2})
            out += "<circle cx=\"" + num(m.px((*b)[0])) + "\" cy=\"" + num(m.py((*b)[1])) +
                   "\" r=\"" + num(0.45 * opts.cell_px) +
                   "\" fill=\"none\" stroke=\"#111827\" stroke-width=\"2\"/>\n";
    }

    if (opts.arc && !opts.arc->empty()) {
        std::string pts;
        for (const auto& idx : *opts.arc) {
            Vec<2> c = spec.center(idx);
            pts += num(m.px(c[0])) + "," + num(m.py(c[1])) + " ";
        }
        out += "<polyline points=\"" + pts +
               "\" fill=\"none\" stroke=\"#059669\" stroke-width=\"2\"/>\n";
    }

    out += "</svg>\n";
    return out;
}

void write_svg(const std::string& path, const GridSet<2>& g, const SvgOptions& opts) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot write " + path);
    f << render_svg(g, opts);
    if (!f) throw ParseError("write failed for " + path);
}

}  // namespace reachkit
