#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace reachkit {

// Fixed-dimension point/vector over double. D is 2 or 3 everywhere in this
// library, but nothing here depends on that.
template <std::size_t D>
struct Vec {
    std::array<double, D> c{};

    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }

    friend Vec operator+(Vec a, const Vec& b) {
        for (std::size_t i = 0; i < D; ++i) a.c[i] += b.c[i];
        return a;
    }
    friend Vec operator-(Vec a, const Vec& b) {
        for (std::size_t i = 0; i < D; ++i) a.c[i] -= b.c[i];
        return a;
    }
    friend Vec operator*(double s, Vec a) {
        for (std::size_t i = 0; i < D; ++i) a.c[i] *= s;
        return a;
    }
    friend Vec operator*(Vec a, double s) { return s * a; }
    friend Vec operator/(Vec a, double s) {
        for (std::size_t i = 0; i < D; ++i) a.c[i] /= s;
        return a;
    }
    Vec& operator+=(const Vec& b) {
        for (std::size_t i = 0; i < D; ++i) c[i] += b.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& b) {
        for (std::size_t i = 0; i < D; ++i) c[i] -= b.c[i];
        return *this;
    }
    friend bool operator==(const Vec& a, const Vec& b) { return a.c == b.c; }
};

template <std::size_t D>
inline double dot(const Vec<D>& a, const Vec<D>& b) {
    double s = 0;
    for (std::size_t i = 0; i < D; ++i) s += a.c[i] * b.c[i];
    return s;
}

template <std::size_t D>
inline double norm2(const Vec<D>& a) { return dot(a, a); }

template <std::size_t D>
inline double norm(const Vec<D>& a) { return std::sqrt(norm2(a)); }

template <std::size_t D>
inline double dist(const Vec<D>& a, const Vec<D>& b) { return norm(a - b); }

template <std::size_t D>
inline double dist2(const Vec<D>& a, const Vec<D>& b) { return norm2(a - b); }

// Strict lexicographic order on coordinates. Used wherever the library must
// pick a canonical representative among geometrically equivalent choices.
template <std::size_t D>
inline bool lex_less(const Vec<D>& a, const Vec<D>& b) {
    for (std::size_t i = 0; i < D; ++i) {
        if (a.c[i] < b.c[i]) return true;
        if (a.c[i] > b.c[i]) return false;
    }
    return false;
}

using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

}  // namespace reachkit
