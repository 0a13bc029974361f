#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "reachkit/errors.hpp"
#include "reachkit/vec.hpp"

namespace reachkit {

template <std::size_t D>
struct Ball {
    Vec<D> center;
    double radius = 0;
    bool open = false;

    bool contains(const Vec<D>& p, double tol = 0) const {
        double d = dist(p, center);
        return open ? d < radius + tol : d <= radius + tol;
    }
};

// Spindle(a, b, R): the intersection of all closed balls of radius R that
// contain both a and b. Nonempty lens of revolution with tips at a and b.
// Requires 0 < |a-b| < 2R strictly; the degenerate cases (coincident points,
// diametral pairs) are rejected because the membership formula and the
// downstream connectivity arguments both break there.
template <std::size_t D>
struct Spindle {
    Vec<D> a, b;
    double R;

    // cached frame: midpoint, unit axis a->b, half-chord s, rim offset hp.
    // hp is the distance from the midpoint to the centers of the extreme
    // covering balls; every such center sits at distance R from both tips,
    // so hp = sqrt(R^2 - s^2).
    Vec<D> mid;
    Vec<D> axis;
    double s = 0;
    double hp = 0;

    Spindle(const Vec<D>& a_, const Vec<D>& b_, double R_) : a(a_), b(b_), R(R_) {
        if (!(R > 0)) throw DomainError("spindle radius must be positive");
        double len = dist(a, b);
        if (!(len > 0)) throw DomainError("spindle endpoints must be distinct");
        if (!(len < 2 * R)) throw DomainError("spindle endpoints must be closer than 2R");
        mid = 0.5 * (a + b);
        axis = (b - a) / len;
        s = 0.5 * len;
        hp = std::sqrt(std::max(0.0, R * R - s * s));
    }

    // Signed axial coordinate u (from the midpoint) and radial distance v
    // (from the line ab) of p. v comes from the explicit perpendicular
    // component: sqrt(norm2(r) - u^2) cancels catastrophically near the
    // axis and would inflate v (and the membership excess) to sqrt(eps).
    void frame_coords(const Vec<D>& p, double& u, double& v) const {
        Vec<D> r = p - mid;
        u = dot(r, axis);
        v = norm(r - u * axis);
    }
};

// Membership in the spindle inflated by tol (tol < 0 deflates). In the
// half-plane spanned by the axis and p, the binding constraint is the
// extreme ball whose center lies opposite p at radial offset hp, hence
// the single inequality u^2 + (v + hp)^2 <= (R + tol)^2. The inflated set
// contains the Euclidean tol-neighborhood of the spindle: moving p by at
// most tol changes its distance to any center by at most tol.
template <std::size_t D>
inline bool spindle_contains(const Spindle<D>& sp, const Vec<D>& p, double tol = 0) {
    double u, v;
    sp.frame_coords(p, u, v);
    double rr = sp.R + tol;
    return u * u + (v + sp.hp) * (v + sp.hp) <= rr * rr;
}

// Open circular cone at apex a, oriented toward b, with aperture determined
// by R: directions whose cosine against the axis strictly exceeds |a-b|/(2R).
template <std::size_t D>
struct Cone {
    Vec<D> apex;
    Vec<D> target;
    double R;

    Cone(const Vec<D>& a_, const Vec<D>& b_, double R_) : apex(a_), target(b_), R(R_) {
        if (!(R > 0)) throw DomainError("cone radius must be positive");
        double len = dist(apex, target);
        if (!(len > 0)) throw DomainError("cone apex and target must be distinct");
        if (!(len < 2 * R)) throw DomainError("cone requires |a-b| < 2R");
    }
};

template <std::size_t D>
inline bool cone_contains(const Cone<D>& c, const Vec<D>& v) {
    double n = norm(v);
    if (!(n > 0)) throw DomainError("cone membership undefined for the zero vector");
    Vec<D> ax = c.target - c.apex;
    double len = norm(ax);
    return dot(v, ax) / (n * len) > len / (2 * c.R);
}

// Evaluates (x - foot, foot - b) + |foot - b|^2 * |x - foot| / (2 * reach_at_foot).
// When foot is the unique nearest point of x on a set K and reach(K, foot) >=
// reach_at_foot, this quantity is nonnegative for every b in K. The caller
// interprets the sign; negative values flag a projection inconsistency.
template <std::size_t D>
inline double projection_inequality_slack(const Vec<D>& x, const Vec<D>& foot,
                                       const Vec<D>& b, double reach_at_foot) {
    if (!(reach_at_foot > 0)) throw DomainError("reach_at_foot must be positive");
    Vec<D> xf = x - foot;
    Vec<D> fb = foot - b;
    return dot(xf, fb) + norm2(fb) * norm(xf) / (2 * reach_at_foot);
}

// Radical-inverse (van der Corput) sequence in the given base; bases 2,3,5
// paired across dimensions give a Halton pattern. Deterministic and dense,
// which is what the sampled subset checks need.
inline double radical_inverse(std::uint64_t i, std::uint32_t base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % base);
        i /= base;
    }
    return r;
}

namespace detail {

// Two orthonormal vectors spanning the plane orthogonal to unit axis e.
// For D=2 the second one is unused.
template <std::size_t D>
inline void orthonormal_frame(const Vec<D>& e, Vec<D>& w1, Vec<D>& w2) {
    if constexpr (D == 2) {
        w1 = Vec<2>{{-e[1], e[0]}};
        w2 = Vec<2>{{0, 0}};
    } else {
        // pick the coordinate axis least aligned with e, then Gram-Schmidt
        std::size_t k = 0;
        for (std::size_t i = 1; i < D; ++i)
            if (std::abs(e[i]) < std::abs(e[k])) k = i;
        Vec<D> t{};
        t[k] = 1.0;
        w1 = t - dot(t, e) * e;
        w1 = w1 / norm(w1);
        w2 = Vec<3>{{e[1] * w1[2] - e[2] * w1[1],
                     e[2] * w1[0] - e[0] * w1[2],
                     e[0] * w1[1] - e[1] * w1[0]}};
    }
}

}  // namespace detail

// Deterministic low-discrepancy sample of the spindle body: the tips, the
// waist apex, and Halton-distributed interior points. Every returned point
// satisfies spindle_contains(sp, p, 0) up to roundoff.
template <std::size_t D>
inline std::vector<Vec<D>> spindle_sample(const Spindle<D>& sp, std::size_t count) {
    std::vector<Vec<D>> out;
    out.reserve(count + 3);
    Vec<D> w1, w2;
    detail::orthonormal_frame(sp.axis, w1, w2);

    out.push_back(sp.a);
    out.push_back(sp.b);
    out.push_back(sp.mid + (sp.R - sp.hp) * w1);  // waist apex

    for (std::size_t i = 0; i < count; ++i) {
        double t1 = radical_inverse(i + 1, 2);
        double t2 = radical_inverse(i + 1, 3);
        double u = sp.s * (2 * t1 - 1);
        // radial extent of the body at axial coordinate u
        double vmax = std::sqrt(std::max(0.0, sp.R * sp.R - u * u)) - sp.hp;
        double v = t2 * std::max(0.0, vmax);
        Vec<D> w = w1;
        if constexpr (D == 2) {
            if (i % 2 == 1) w = -1.0 * w1;
        } else {
            double th = 2 * 3.14159265358979323846 * radical_inverse(i + 1, 5);
            w = std::cos(th) * w1 + std::sin(th) * w2;
        }
        out.push_back(sp.mid + u * sp.axis + v * w);
    }
    return out;
}

// Sampled check that Spindle(c, d, outer.R) is contained in outer. Both
// endpoints must already lie in outer within the same tol; the body is then
// probed at `samples` deterministic points. A heuristic, not a proof.
template <std::size_t D>
inline bool spindle_subset_sampled(const Spindle<D>& outer, const Vec<D>& c,
                                   const Vec<D>& d, std::size_t samples,
                                   double tol = 0) {
    if (!spindle_contains(outer, c, tol) || !spindle_contains(outer, d, tol))
        throw DomainError("inner endpoints must lie in the outer spindle");
    Spindle<D> inner(c, d, outer.R);  // validates 0 < |c-d| < 2R
    for (const Vec<D>& p : spindle_sample(inner, samples))
        if (!spindle_contains(outer, p, tol)) return false;
    return true;
}

// Axis-aligned halfwidths (from sp.mid) of a box containing the spindle
// inflated by tol. The body lies in slab |u| <= su within cylinder v <= vmax,
// and a unit w orthogonal to the axis has |w_k| <= sqrt(1 - axis_k^2).
template <std::size_t D>
inline Vec<D> spindle_bbox_halfwidths(const Spindle<D>& sp, double tol) {
    double rr = sp.R + tol;
    double su = std::sqrt(std::max(0.0, rr * rr - sp.hp * sp.hp));
    double vmax = rr - sp.hp;
    Vec<D> hw;
    for (std::size_t k = 0; k < D; ++k) {
        double ek = sp.axis[k];
        hw[k] = su * std::abs(ek) + vmax * std::sqrt(std::max(0.0, 1 - ek * ek));
    }
    return hw;
}

}  // namespace reachkit
