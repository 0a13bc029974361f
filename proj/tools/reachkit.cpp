// Command line front end: rasterization, reach certification, search, and
// R-hull construction over grid sets. See README for the report envelope.

#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "reachkit/errors.hpp"
#include "reachkit/grid_io.hpp"
#include "reachkit/reach.hpp"
#include "reachkit/report_json.hpp"
#include "reachkit/rhull.hpp"
#include "reachkit/shapes.hpp"
#include "reachkit/svg.hpp"

namespace rk = reachkit;
using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonArgs {
    std::string input, output;
    double R = 0, R_lo = 0, R_hi = 0, h = 0;
    std::int64_t iters = 0, pair_budget = 0;
    std::vector<double> window;  // x0 y0 x1 y1
    std::string adjacency = "full";
    std::uint64_t seed = 0;
    bool deterministic = false;
    bool strict = false;
    std::string svg;
};

rk::Adjacency parse_adjacency(const std::string& s) {
    if (s == "full") return rk::Adjacency::Full;
    if (s == "face") return rk::Adjacency::Face;
    throw rk::ParseError("adjacency must be 'face' or 'full'");
}

rk::GridSpec<2> window_spec(const std::vector<double>& w, double h) {
    if (w.size() != 4) throw rk::ParseError("--window needs x0 y0 x1 y1");
    if (!(h > 0)) throw rk::ParseError("--h must be positive");
    if (!(w[2] > w[0]) || !(w[3] > w[1])) throw rk::ParseError("--window extents must be positive");
    rk::GridSpec<2> spec;
    spec.h = h;
    spec.origin = rk::Vec<2>{w[0], w[1]};
    spec.dims[0] = static_cast<std::int64_t>(std::floor((w[2] - w[0]) / h + 1e-9)) + 1;
    spec.dims[1] = static_cast<std::int64_t>(std::floor((w[3] - w[1]) / h + 1e-9)) + 1;
    spec.validate();
    return spec;
}

// Inputs: a grid file, a point-list JSON, or "bundled:<name>" for a built-in
// test shape rasterized at --h (or its suggested default).
rk::AnyGrid load_input(const CommonArgs& a) {
    const std::string& in = a.input;
    if (in.empty()) throw rk::ParseError("--input is required");
    if (in.rfind("bundled:", 0) == 0) {
        std::string name = in.substr(8);
        rk::BundledShape b = a.h > 0 ? rk::bundled_shape(name, a.h) : rk::bundled_shape(name);
        if (!a.window.empty()) b.spec = window_spec(a.window, b.spec.h);
        return rk::rasterize(b.shape, b.spec);
    }
    if (in.size() > 5 && in.substr(in.size() - 5) == ".json") {
        rk::PointList pl = rk::read_point_list(in);
        if (!(a.h > 0)) throw rk::ParseError("--h is required for point list input");
        if (pl.dim == 2) {
            rk::GridSpec<2> spec = a.window.empty() ? rk::point_list_window<2>(pl, a.h)
                                                    : window_spec(a.window, a.h);
            return rk::rasterize(rk::point_list_shape<2>(pl), spec);
        }
        if (!a.window.empty()) throw rk::ParseError("--window applies to plane inputs only");
        return rk::rasterize(rk::point_list_shape<3>(pl), rk::point_list_window<3>(pl, a.h));
    }
    return rk::read_grid(in);
}

ordered_json base_config(const std::string& command, const CommonArgs& a) {
    ordered_json cfg;
    cfg["input"] = a.input;
    cfg["adjacency"] = a.adjacency;
    cfg["seed"] = a.seed;
    cfg["deterministic"] = a.deterministic;
    if (a.h > 0) cfg["h"] = a.h;
    if (a.pair_budget > 0) cfg["pair_budget"] = a.pair_budget;
    if (!a.window.empty()) cfg["window"] = a.window;
    (void)command;
    return cfg;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw rk::ParseError("cannot write " + path);
    f << text;
    if (!f) throw rk::ParseError("write failed for " + path);
}

void emit_report(const CommonArgs& a, const std::string& command, ordered_json cfg,
                 const std::string& report_json) {
    std::string out = rk::wrap_report(command, cfg.dump(), report_json) + "\n";
    if (a.output.empty())
        std::fputs(out.c_str(), stdout);
    else
        write_text(a.output, out);
}

rk::CertifyOptions make_opts(const CommonArgs& a) {
    rk::CertifyOptions opts;
    opts.adj = parse_adjacency(a.adjacency);
    if (a.pair_budget > 0) opts.pair_budget = a.pair_budget;
    opts.seed = a.seed;
    return opts;
}

template <std::size_t D>
void maybe_svg(const CommonArgs& a, const rk::GridSet<D>& g,
               const rk::ReachVerdict<D>* verdict = nullptr,
               const rk::GridSet<D>* underlay = nullptr) {
    if (a.svg.empty()) return;
    if constexpr (D == 2) {
        rk::SvgOptions so;
        so.timestamp = !a.deterministic;
        so.verdict = verdict;
        so.underlay = underlay;
        rk::write_svg(a.svg, g, so);
    } else {
        throw rk::DomainError("svg rendering is plane only");
    }
}

int run_rasterize(const CommonArgs& a) {
    rk::AnyGrid any = load_input(a);
    if (a.output.empty()) throw rk::ParseError("--output is required");
    std::visit(
        [&](const auto& g) {
            rk::write_grid(a.output, g);
            maybe_svg(a, g);
        },
        any);
    return 0;
}

int run_estimate(const CommonArgs& a) {
    if (!(a.R > 0)) throw rk::ParseError("--R (the scan cap) must be positive");
    rk::AnyGrid any = load_input(a);
    std::visit(
        [&](const auto& g) {
            auto rep = rk::unp_reach_estimate(g, a.R);
            ordered_json cfg = base_config("reach-estimate", a);
            cfg["R_max"] = a.R;
            cfg["foot_tol"] = rep.foot_tol;
            cfg["sep_tol"] = rep.sep_tol;
            cfg["min_angle"] = rep.min_angle;
            emit_report(a, "reach-estimate", cfg, rk::unp_report_to_json(rep));
            maybe_svg(a, g);
        },
        any);
    return 0;
}

int run_certify(const CommonArgs& a) {
    if (!(a.R > 0)) throw rk::ParseError("--R must be positive");
    bool violated = false;
    rk::AnyGrid any = load_input(a);
    std::visit(
        [&](const auto& g) {
            auto verdict = rk::certify_reach(g, a.R, make_opts(a));
            violated = !verdict.certified;
            ordered_json cfg = base_config("reach-certify", a);
            cfg["R"] = a.R;
            cfg["slack"] = verdict.slack;
            emit_report(a, "reach-certify", cfg, rk::verdict_to_json(verdict));
            maybe_svg(a, g, &verdict);
        },
        any);
    return (violated && a.strict) ? 1 : 0;
}

int run_search(const CommonArgs& a) {
    if (!(a.R_lo > 0) || !(a.R_hi > a.R_lo)) throw rk::ParseError("need 0 < --R-lo < --R-hi");
    if (a.iters < 1) throw rk::ParseError("--iters must be >= 1");
    rk::AnyGrid any = load_input(a);
    std::visit(
        [&](const auto& g) {
            auto res = rk::reach_search(g, a.R_lo, a.R_hi, a.iters, make_opts(a));
            ordered_json cfg = base_config("reach-search", a);
            cfg["R_lo"] = a.R_lo;
            cfg["R_hi"] = a.R_hi;
            cfg["iters"] = a.iters;
            emit_report(a, "reach-search", cfg, rk::search_result_to_json(res));
            maybe_svg(a, g);
        },
        any);
    return 0;
}

std::string hull_path(const std::string& output) {
    if (output.size() > 5 && output.substr(output.size() - 5) == ".json")
        return output.substr(0, output.size() - 5) + ".hull.grid";
    return output + ".hull.grid";
}

int run_rhull(const CommonArgs& a) {
    if (!(a.R > 0)) throw rk::ParseError("--R must be positive");
    bool rejected = false;
    rk::AnyGrid any = load_input(a);
    std::visit(
        [&](const auto& g) {
            using GS = std::decay_t<decltype(g)>;
            constexpr std::size_t D = std::tuple_size<decltype(GS::spec.dims)>::value;
            auto rep = rk::admits_rhull(g, a.R, make_opts(a));
            rejected = rep.admits != rk::HullReport<D>::Admits::Yes;
            std::optional<std::string> hull_file;
            if (rep.hull && !a.output.empty()) {
                hull_file = hull_path(a.output);
                rk::write_grid(*hull_file, *rep.hull);
            }
            ordered_json cfg = base_config("rhull", a);
            cfg["R"] = a.R;
            emit_report(a, "rhull", cfg,
                        rk::hull_report_to_json(rep, hull_file ? &*hull_file : nullptr));
            maybe_svg(a, g, rep.verdict ? &*rep.verdict : nullptr,
                      rep.hull ? &*rep.hull : nullptr);
        },
        any);
    return (rejected && a.strict) ? 1 : 0;
}

// Ball restriction check. Input: a grid (ball drawn from the seed) or a JSON
// config {"grid": <path-or-bundled>, "ball": {"center": [...], "r": r}}.
int run_check22(CommonArgs a) {
    if (!(a.R > 0)) throw rk::ParseError("--R must be positive");
    std::optional<std::vector<double>> center;
    double r = 0;
    std::string grid_token = a.input;
    if (a.input.size() > 5 && a.input.substr(a.input.size() - 5) == ".json") {
        std::ifstream f(a.input, std::ios::binary);
        if (!f) throw rk::ParseError("cannot open " + a.input);
        ordered_json cfg;
        try {
            cfg = ordered_json::parse(f);
        } catch (const nlohmann::json::exception& e) {
            throw rk::ParseError(std::string("bad config JSON: ") + e.what());
        }
        if (!cfg.contains("grid")) throw rk::ParseError("config needs \"grid\"");
        grid_token = cfg["grid"].get<std::string>();
        if (cfg.contains("ball")) {
            center = cfg["ball"]["center"].get<std::vector<double>>();
            r = cfg["ball"]["r"].get<double>();
        }
    }
    bool violated = false;
    CommonArgs ga = a;
    ga.input = grid_token;
    rk::AnyGrid any = load_input(ga);
    std::visit(
        [&](const auto& g) {
            using GS = std::decay_t<decltype(g)>;
            constexpr std::size_t D = std::tuple_size<decltype(GS::spec.dims)>::value;
            rk::Vec<D> c{};
            double rr = r;
            if (center) {
                if (center->size() != D) throw rk::ParseError("ball center dimension mismatch");
                for (std::size_t k = 0; k < D; ++k) c[k] = (*center)[k];
            } else {
                // seeded ball anchored at a random occupied cell
                std::vector<std::int64_t> occ;
                for (std::int64_t l = 0; l < g.spec.cell_count(); ++l)
                    if (g.occupied(l)) occ.push_back(l);
                if (occ.empty()) throw rk::DomainError("ball does not meet K");
                std::mt19937_64 rng(a.seed);
                c = g.spec.center(g.spec.unlinear(occ[static_cast<std::size_t>(
                    rng() % occ.size())]));
                double u = static_cast<double>(rng() % 1000000) / 1e6;
                rr = a.R * (0.3 + 0.7 * u);
            }
            auto verdict = rk::check_ball_intersection(g, c, rr, a.R, make_opts(a));
            violated = !verdict.certified;
            ordered_json cfg = base_config("check-thm22", a);
            cfg["R"] = a.R;
            cfg["ball_center"] = std::vector<double>(c.c.begin(), c.c.end());
            cfg["ball_r"] = rr;
            emit_report(a, "check-thm22", cfg, rk::verdict_to_json(verdict));
            maybe_svg(a, g, &verdict);
        },
        any);
    return (violated && a.strict) ? 1 : 0;
}

// Sphere trace convexity check. Input: JSON config
// {"grid": <path-or-bundled>, "ball_center": [...], "arc_samples": n}.
int run_check23(const CommonArgs& a) {
    if (!(a.R > 0)) throw rk::ParseError("--R must be positive");
    if (!(a.input.size() > 5 && a.input.substr(a.input.size() - 5) == ".json"))
        throw rk::ParseError("check-thm23 needs a JSON config input");
    std::ifstream f(a.input, std::ios::binary);
    if (!f) throw rk::ParseError("cannot open " + a.input);
    ordered_json cfg;
    try {
        cfg = ordered_json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw rk::ParseError(std::string("bad config JSON: ") + e.what());
    }
    if (!cfg.contains("grid") || !cfg.contains("ball_center"))
        throw rk::ParseError("config needs \"grid\" and \"ball_center\"");
    auto center = cfg["ball_center"].get<std::vector<double>>();
    std::int64_t arc_samples = cfg.value("arc_samples", std::int64_t{64});

    bool holds = true;
    CommonArgs ga = a;
    ga.input = cfg["grid"].get<std::string>();
    rk::AnyGrid any = load_input(ga);
    std::visit(
        [&](const auto& g) {
            using GS = std::decay_t<decltype(g)>;
            constexpr std::size_t D = std::tuple_size<decltype(GS::spec.dims)>::value;
            if (center.size() != D) throw rk::ParseError("ball center dimension mismatch");
            rk::Vec<D> c{};
            for (std::size_t k = 0; k < D; ++k) c[k] = center[k];
            rk::Ball<D> ball{c, a.R, /*open=*/true};
            std::optional<std::int64_t> budget;
            if (a.pair_budget > 0) budget = a.pair_budget;
            holds = rk::check_sphere_convexity(g, ball, a.R, arc_samples, budget, a.seed);
            ordered_json rcfg = base_config("check-thm23", a);
            rcfg["R"] = a.R;
            rcfg["ball_center"] = center;
            rcfg["arc_samples"] = arc_samples;
            ordered_json rep;
            rep["holds"] = holds;
            emit_report(a, "check-thm23", rcfg, rep.dump(2));
            maybe_svg(a, g);
        },
        any);
    return (!holds && a.strict) ? 1 : 0;
}

int run_render(const CommonArgs& a) {
    if (a.output.empty()) throw rk::ParseError("--output is required");
    rk::AnyGrid any = load_input(a);
    std::visit(
        [&](const auto& g) {
            CommonArgs b = a;
            b.svg = a.output;
            maybe_svg(b, g);
        },
        any);
    return 0;
}

void add_common(CLI::App* cmd, CommonArgs& a, bool with_R, bool with_bracket) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--input", a.input, "grid file, point list JSON, or bundled:<name>");
    cmd->add_option("--output", a.output, "output path");
    if (with_R) cmd->add_option("--R", a.R, "radius parameter");
    if (with_bracket) {
        cmd->add_option("--R-lo", a.R_lo, "search bracket low end");
        cmd->add_option("--R-hi", a.R_hi, "search bracket high end");
        cmd->add_option("--iters", a.iters, "bisection iterations");
    }
    cmd->add_option("--h", a.h, "cell size for rasterization");
    cmd->add_option("--window", a.window, "window as x0 y0 x1 y1 (cell centers)")
        ->expected(4);
    cmd->add_option("--adjacency", a.adjacency, "face or full (default full)");
    cmd->add_option("--pair-budget", a.pair_budget, "subsample pair checks beyond this count");
    cmd->add_option("--seed", a.seed, "seed for subsampling and generated inputs");
    cmd->add_flag("--deterministic", a.deterministic, "suppress timestamps in artifacts");
    cmd->add_flag("--strict", a.strict, "exit nonzero on violated/false verdicts");
    cmd->add_option("--svg", a.svg, "also render an SVG to this path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reach certification and R-hulls on grid sets"};
    app.require_subcommand(1);

    CommonArgs a;
    CLI::App* c_rast = app.add_subcommand("rasterize", "rasterize a point list or bundled shape");
    add_common(c_rast, a, false, false);
    CLI::App* c_est = app.add_subcommand("reach-estimate", "medial-based reach upper estimate");
    add_common(c_est, a, true, false);
    CLI::App* c_cert = app.add_subcommand("reach-certify", "certify reach >= R or find a violation");
    add_common(c_cert, a, true, false);
    CLI::App* c_search = app.add_subcommand("reach-search", "bisection bracket on the reach");
    add_common(c_search, a, false, true);
    CLI::App* c_hull = app.add_subcommand("rhull", "test hull admission and build the hull");
    add_common(c_hull, a, true, false);
    CLI::App* c_t22 = app.add_subcommand("check-thm22", "ball restriction keeps reach >= R");
    add_common(c_t22, a, true, false);
    CLI::App* c_t23 = app.add_subcommand("check-thm23", "sphere trace convexity check");
    add_common(c_t23, a, true, false);
    CLI::App* c_render = app.add_subcommand("render", "render a grid to SVG");
    add_common(c_render, a, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_rast->parsed()) return run_rasterize(a);
        if (c_est->parsed()) return run_estimate(a);
        if (c_cert->parsed()) return run_certify(a);
        if (c_search->parsed()) return run_search(a);
        if (c_hull->parsed()) return run_rhull(a);
        if (c_t22->parsed()) return run_check22(a);
        if (c_t23->parsed()) return run_check23(a);
        if (c_render->parsed()) return run_render(a);
    } catch (const rk::ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const rk::WindowError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const rk::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
