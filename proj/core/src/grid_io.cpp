#include "reachkit/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "reachkit/errors.hpp"

namespace reachkit {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
    if (!out) throw ParseError("write failed for " + path);
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

template <std::size_t D>
GridSet<D> parse_body(const std::vector<std::string>& lines, std::size_t header_end,
                      double h, const std::array<std::int64_t, 3>& dims3,
                      const std::array<double, 3>& org3) {
    GridSpec<D> spec;
    spec.h = h;
    for (std::size_t k = 0; k < D; ++k) {
        spec.dims[k] = dims3[k];
        spec.origin[k] = org3[k];
    }
    try {
        spec.validate();
    } catch (const DomainError& e) {
        throw ParseError(std::string("bad grid header: ") + e.what());
    }
    GridSet<D> g(spec);
    std::int64_t slices = (D == 3) ? spec.dims[2] : 1;
    std::size_t li = header_end;
    for (std::int64_t z = 0; z < slices; ++z) {
        while (li < lines.size() && lines[li].empty()) ++li;  // blank slice separators
        for (std::int64_t y = 0; y < spec.dims[1]; ++y, ++li) {
            if (li >= lines.size()) throw ParseError("grid body is truncated");
            const std::string& row = lines[li];
            if (static_cast<std::int64_t>(row.size()) != spec.dims[0])
                throw ParseError("grid row has wrong length");
            for (std::int64_t x = 0; x < spec.dims[0]; ++x) {
                char c = row[static_cast<std::size_t>(x)];
                if (c != '0' && c != '1') throw ParseError("grid rows must be '0'/'1'");
                if (c == '1') {
                    Index<D> idx{};
                    idx[0] = x;
                    idx[1] = y;
                    if constexpr (D == 3) idx[2] = z;
                    g.set(idx, true);
                }
            }
        }
    }
    for (; li < lines.size(); ++li)
        if (!lines[li].empty()) throw ParseError("trailing content after grid body");
    return g;
}

}  // namespace

AnyGrid parse_grid(const std::string& text) {
    std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty grid file");
    std::istringstream hs(lines[0]);
    std::string magic;
    int d = 0;
    double h = 0;
    if (!(hs >> magic >> d)) throw ParseError("malformed grid header");
    if (magic != "GRIDSET") throw ParseError("missing GRIDSET magic");
    if (d != 2 && d != 3) throw ParseError("grid dimension must be 2 or 3");
    if (!(hs >> h)) throw ParseError("malformed grid header");
    std::array<std::int64_t, 3> dims3{1, 1, 1};
    std::array<double, 3> org3{0, 0, 0};
    for (int k = 0; k < d; ++k)
        if (!(hs >> dims3[static_cast<std::size_t>(k)]))
            throw ParseError("malformed grid header");
    for (int k = 0; k < d; ++k)
        if (!(hs >> org3[static_cast<std::size_t>(k)]))
            throw ParseError("malformed grid header");
    std::string extra;
    if (hs >> extra) throw ParseError("trailing tokens in grid header");

    if (d == 2) return parse_body<2>(lines, 1, h, dims3, org3);
    return parse_body<3>(lines, 1, h, dims3, org3);
}

AnyGrid read_grid(const std::string& path) { return parse_grid(read_file(path)); }

namespace {

template <std::size_t D>
std::string format_grid_impl(const GridSet<D>& g) {
    const GridSpec<D>& spec = g.spec;
    std::string out = "GRIDSET " + std::to_string(D) + " " + fmt_double(spec.h);
    for (std::size_t k = 0; k < D; ++k) out += " " + std::to_string(spec.dims[k]);
    for (std::size_t k = 0; k < D; ++k) out += " " + fmt_double(spec.origin[k]);
    out += "\n";
    std::int64_t slices = (D == 3) ? spec.dims[D - 1] : 1;
    std::string row(static_cast<std::size_t>(spec.dims[0]), '0');
    for (std::int64_t z = 0; z < slices; ++z) {
        if (z > 0) out += "\n";
        for (std::int64_t y = 0; y < spec.dims[1]; ++y) {
            for (std::int64_t x = 0; x < spec.dims[0]; ++x) {
                Index<D> idx{};
                idx[0] = x;
                idx[1] = y;
                if constexpr (D == 3) idx[2] = z;
                row[static_cast<std::size_t>(x)] = g.occupied(idx) ? '1' : '0';
            }
            out += row;
            out += "\n";
        }
    }
    return out;
}

}  // namespace

std::string format_grid(const GridSet<2>& g) { return format_grid_impl<2>(g); }
std::string format_grid(const GridSet<3>& g) { return format_grid_impl<3>(g); }
void write_grid(const std::string& path, const GridSet<2>& g) { write_file(path, format_grid(g)); }
void write_grid(const std::string& path, const GridSet<3>& g) { write_file(path, format_grid(g)); }

PointList parse_point_list(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad point list JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw ParseError("point list needs a \"points\" array");
    PointList pl;
    pl.thicken = 0;
    if (j.contains("thicken")) {
        if (!j["thicken"].is_number()) throw ParseError("\"thicken\" must be a number");
        pl.thicken = j["thicken"].get<double>();
        if (pl.thicken < 0) throw ParseError("\"thicken\" must be nonnegative");
    }
    int dim = 0;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || (p.size() != 2 && p.size() != 3))
            throw ParseError("each point must be [x,y] or [x,y,z]");
        if (dim == 0)
            dim = static_cast<int>(p.size());
        else if (dim != static_cast<int>(p.size()))
            throw ParseError("points have mixed dimensions");
        std::array<double, 3> q{0, 0, 0};
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (!p[k].is_number()) throw ParseError("point coordinates must be numbers");
            q[k] = p[k].get<double>();
        }
        pl.pts.push_back(q);
    }
    if (pl.pts.empty()) throw ParseError("point list is empty");
    pl.dim = dim;
    return pl;
}

PointList read_point_list(const std::string& path) {
    return parse_point_list(read_file(path));
}

}  // namespace reachkit
