#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reachkit/errors.hpp"
#include "reachkit/grid.hpp"
#include "reachkit/vec.hpp"

namespace reachkit {

// Analytic shape tree. One struct carries the parameters for every kind;
// only the fields relevant to `kind` are meaningful. Small and boring by
// design: rasterization is the only consumer.
template <std::size_t D>
struct Shape {
    enum class Kind {
        Ball,        // center, r1 (closed)
        Shell,       // center, r0 <= |x-c| <= r1
        Segment,     // a..b thickened by `thicken`
        Points,      // pts thickened by `thicken`
        Box,         // lo..hi componentwise
        Halfspace,   // dot(normal, x) >= offset
        Polyline,    // pts chained (closed if `closed`), thickened
        Union,
        Intersect,
        Complement,  // single child
    };

    Kind kind = Kind::Points;
    Vec<D> center{};
    double r0 = 0, r1 = 0;
    Vec<D> a{}, b{};
    Vec<D> lo{}, hi{};
    Vec<D> normal{};
    double offset = 0;
    double thicken = 0;
    bool closed = false;
    std::vector<Vec<D>> pts;
    std::vector<Shape> children;
};

template <std::size_t D>
inline double point_segment_dist(const Vec<D>& p, const Vec<D>& a, const Vec<D>& b) {
    Vec<D> ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + t * ab);
}

// Membership of p with boundaries resolved outward by eps (so a cell center
// sitting exactly on an analytic boundary lands inside). Complement flips
// the sign of eps for its child, keeping "outward for the composed set".
template <std::size_t D>
inline bool shape_contains(const Shape<D>& sh, const Vec<D>& p, double eps) {
    using K = typename Shape<D>::Kind;
    switch (sh.kind) {
        case K::Ball:
            return dist(p, sh.center) <= sh.r1 + eps;
        case K::Shell: {
            double d = dist(p, sh.center);
            return d >= sh.r0 - eps && d <= sh.r1 + eps;
        }
        case K::Segment:
            return point_segment_dist(p, sh.a, sh.b) <= sh.thicken + eps;
        case K::Points: {
            for (const auto& q : sh.pts)
                if (dist(p, q) <= sh.thicken + eps) return true;
            return false;
        }
        case K::Box: {
            for (std::size_t k = 0; k < D; ++k)
                if (p[k] < sh.lo[k] - eps || p[k] > sh.hi[k] + eps) return false;
            return true;
        }
        case K::Halfspace:
            return dot(sh.normal, p) >= sh.offset - eps * norm(sh.normal);
        case K::Polyline: {
            if (sh.pts.size() < 2) return false;
            std::size_t n = sh.pts.size();
            std::size_t segs = sh.closed ? n : n - 1;
            for (std::size_t i = 0; i < segs; ++i)
                if (point_segment_dist(p, sh.pts[i], sh.pts[(i + 1) % n]) <= sh.thicken + eps)
                    return true;
            return false;
        }
        case K::Union: {
            for (const auto& c : sh.children)
                if (shape_contains(c, p, eps)) return true;
            return false;
        }
        case K::Intersect: {
            for (const auto& c : sh.children)
                if (!shape_contains(c, p, eps)) return false;
            return !sh.children.empty();
        }
        case K::Complement:
            return !shape_contains(sh.children.at(0), p, -eps);
    }
    return false;
}

// Conservative world-space bounding box; nullopt = unbounded (complements,
// halfspaces, and anything unioned with them).
template <std::size_t D>
inline std::optional<std::pair<Vec<D>, Vec<D>>> shape_bbox(const Shape<D>& sh) {
    using K = typename Shape<D>::Kind;
    auto pad = [](Vec<D> lo, Vec<D> hi, double r) {
        for (std::size_t k = 0; k < D; ++k) {
            lo[k] -= r;
            hi[k] += r;
        }
        return std::make_pair(lo, hi);
    };
    auto of_points = [&](const std::vector<Vec<D>>& pts, double r)
        -> std::optional<std::pair<Vec<D>, Vec<D>>> {
        if (pts.empty()) return std::nullopt;
        Vec<D> lo = pts[0], hi = pts[0];
        for (const auto& q : pts)
            for (std::size_t k = 0; k < D; ++k) {
                lo[k] = std::min(lo[k], q[k]);
                hi[k] = std::max(hi[k], q[k]);
            }
        return pad(lo, hi, r);
    };
    switch (sh.kind) {
        case K::Ball:
            return pad(sh.center, sh.center, sh.r1);
        case K::Shell:
            return pad(sh.center, sh.center, sh.r1);
        case K::Segment:
            return of_points({sh.a, sh.b}, sh.thicken);
        case K::Points:
            return of_points(sh.pts, sh.thicken);
        case K::Box:
            return std::make_pair(sh.lo, sh.hi);
        case K::Halfspace:
            return std::nullopt;
        case K::Polyline:
            return of_points(sh.pts, sh.thicken);
        case K::Union: {
            std::optional<std::pair<Vec<D>, Vec<D>>> acc;
            for (const auto& c : sh.children) {
                auto bb = shape_bbox(c);
                if (!bb) return std::nullopt;
                if (!acc) {
                    acc = bb;
                } else
                    for (std::size_t k = 0; k < D; ++k) {
                        acc->first[k] = std::min(acc->first[k], bb->first[k]);
                        acc->second[k] = std::max(acc->second[k], bb->second[k]);
                    }
            }
            return acc;
        }
        case K::Intersect: {
            // any bounded child bounds the intersection
            for (const auto& c : sh.children) {
                auto bb = shape_bbox(c);
                if (bb) return bb;
            }
            return std::nullopt;
        }
        case K::Complement:
            return std::nullopt;
    }
    return std::nullopt;
}

template <std::size_t D>
inline GridSet<D> rasterize(const Shape<D>& sh, const GridSpec<D>& spec) {
    spec.validate();
    // reject shapes that cannot touch the window at all
    if (auto bb = shape_bbox(sh)) {
        for (std::size_t k = 0; k < D; ++k) {
            double wlo = spec.origin[k];
            double whi = spec.origin[k] + spec.h * static_cast<double>(spec.dims[k] - 1);
            if (bb->second[k] < wlo || bb->first[k] > whi) {
                throw DomainError(
                    "shape outside the grid window: axis " + std::to_string(k) +
                    " shape extent [" + std::to_string(bb->first[k]) + ", " +
                    std::to_string(bb->second[k]) + "] vs window [" +
                    std::to_string(wlo) + ", " + std::to_string(whi) + "]");
            }
        }
    }
    GridSet<D> g(spec);
    double eps = 1e-9 * spec.h;
    for (std::int64_t lin = 0; lin < spec.cell_count(); ++lin) {
        Vec<D> c = spec.center(spec.unlinear(lin));
        if (shape_contains(sh, c, eps)) g.occ[static_cast<std::size_t>(lin)] = 1;
    }
    return g;
}

// A window whose cell lattice passes exactly through `anchor`, extending at
// least `below`/`above` on each side. Keeps analytically placed points (pair
// midpoints, circle centers) on cell centers regardless of margins.
template <std::size_t D>
inline GridSpec<D> make_window(const Vec<D>& anchor, const Vec<D>& below,
                               const Vec<D>& above, double h) {
    GridSpec<D> spec;
    spec.h = h;
    for (std::size_t k = 0; k < D; ++k) {
        auto nlo = static_cast<std::int64_t>(std::ceil(below[k] / h - 1e-9));
        auto nhi = static_cast<std::int64_t>(std::ceil(above[k] / h - 1e-9));
        spec.origin[k] = anchor[k] - h * static_cast<double>(nlo);
        spec.dims[k] = nlo + nhi + 1;
    }
    spec.validate();
    return spec;
}

template <std::size_t D>
inline GridSpec<D> make_window(const Vec<D>& anchor, double halfwidth, double h) {
    Vec<D> hw;
    for (std::size_t k = 0; k < D; ++k) hw[k] = halfwidth;
    return make_window(anchor, hw, hw, h);
}

// Named 2D inputs shared by the CLI and the test suite.
struct BundledShape {
    std::string name;
    Shape<2> shape;
    GridSpec<2> spec;
    double suggested_R;
};

inline std::vector<std::string> bundled_names() {
    return {"disc",           "annulus",        "circle",         "segment",
            "twopoint_quarter", "twopoint_half", "twopoint_double", "twopoint_triple",
            "lshape",         "harmonic_4",     "harmonic_8",     "harmonic_16"};
}

// Windows are sized for the heaviest bundled operation (closing at the
// suggested R needs margin >= 2R + 2h).  h <= 0 picks the shape's own
// default cell size: the thin shapes (point pairs, the unit-circle shell)
// need h = 0.02 for their certification scale; the solid shapes use 0.05.
inline BundledShape bundled_shape(const std::string& name, double h = 0) {
    if (h <= 0) {
        bool fine = name == "circle" || name.rfind("twopoint_", 0) == 0;
        h = fine ? 0.02 : 0.05;
        // keep the quarter pair's +-0.125 endpoints on cell centers
        if (name == "twopoint_quarter") h = 0.025;
    }
    using K = Shape<2>::Kind;
    Vec2 zero{{0, 0}};
    auto two_points = [&](double d) {
        Shape<2> s;
        s.kind = K::Points;
        s.pts = {Vec2{{-d / 2, 0}}, Vec2{{d / 2, 0}}};
        s.thicken = 0;
        return s;
    };
    BundledShape out;
    out.name = name;
    if (name == "disc") {
        out.shape.kind = K::Ball;
        out.shape.center = zero;
        out.shape.r1 = 1.0;
        out.suggested_R = 0.5;
        out.spec = make_window<2>(zero, 1.0 + 2 * out.suggested_R + 4 * h, h);
    } else if (name == "annulus") {
        out.shape.kind = K::Shell;
        out.shape.center = zero;
        out.shape.r0 = 1.0;
        out.shape.r1 = 1.5;
        out.suggested_R = 0.9;
        out.spec = make_window<2>(zero, 1.5 + 2 * out.suggested_R + 4 * h, h);
    } else if (name == "circle") {
        out.shape.kind = K::Shell;
        out.shape.center = zero;
        out.shape.r0 = 1.0 - h;
        out.shape.r1 = 1.0 + h;
        out.suggested_R = 0.9;
        out.spec = make_window<2>(zero, 1.0 + h + 2 * out.suggested_R + 4 * h, h);
    } else if (name == "segment") {
        out.shape.kind = K::Segment;
        out.shape.a = Vec2{{-1, 0}};
        out.shape.b = Vec2{{1, 0}};
        out.shape.thicken = 0;
        out.suggested_R = 0.5;
        out.spec = make_window<2>(zero, 1.0 + 2 * out.suggested_R + 4 * h, h);
    } else if (name == "twopoint_quarter" || name == "twopoint_half" ||
               name == "twopoint_double" || name == "twopoint_triple") {
        double R = 1.0;
        double d = name == "twopoint_quarter" ? R / 4
                 : name == "twopoint_half"    ? R / 2
                 : name == "twopoint_double"  ? 2 * R
                                              : 3 * R;
        out.shape = two_points(d);
        out.suggested_R = R;
        // anchor the lattice at the first point so both endpoints land on
        // cell centers whenever d/h is integral (true for every default h)
        double m = 2 * R + 4 * h;
        out.spec = make_window<2>(Vec2{{-d / 2, 0}}, Vec2{{m, m}},
                                  Vec2{{d + m, m}}, h);
    } else if (name == "lshape") {
        Shape<2> arm1, arm2;
        arm1.kind = K::Box;
        arm1.lo = Vec2{{0, 0}};
        arm1.hi = Vec2{{2, 0.8}};
        arm2.kind = K::Box;
        arm2.lo = Vec2{{0, 0}};
        arm2.hi = Vec2{{0.8, 2}};
        out.shape.kind = K::Union;
        out.shape.children = {arm1, arm2};
        out.suggested_R = 0.5;
        out.spec = make_window<2>(zero, Vec2{{1.0 + 4 * h, 1.0 + 4 * h}},
                                  Vec2{{3.0 + 4 * h, 3.0 + 4 * h}}, h);
    } else if (name == "harmonic_4" || name == "harmonic_8" || name == "harmonic_16") {
        int n = name == "harmonic_4" ? 4 : name == "harmonic_8" ? 8 : 16;
        out.shape.kind = K::Points;
        for (int i = 1; i <= n; ++i)
            out.shape.pts.push_back(Vec2{{1.0 / i, 0}});
        out.shape.thicken = h;
        out.suggested_R = 0.25;
        double m = 2 * out.suggested_R + 4 * h;
        out.spec = make_window<2>(zero, Vec2{{m, h + m}},
                                  Vec2{{1.0 + h + m, h + m}}, h);
    } else {
        throw ParseError("unknown bundled shape: " + name);
    }
    return out;
}

}  // namespace reachkit
