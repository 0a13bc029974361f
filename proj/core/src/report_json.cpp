#include "reachkit/report_json.hpp"

#include "json.hpp"

namespace reachkit {

namespace {

using ordered_json = nlohmann::ordered_json;

template <std::size_t D>
ordered_json vec_json(const Vec<D>& v) {
    ordered_json a = ordered_json::array();
    for (std::size_t k = 0; k < D; ++k) a.push_back(v[k]);
    return a;
}

template <std::size_t D>
ordered_json index_json(const Index<D>& idx) {
    ordered_json a = ordered_json::array();
    for (std::size_t k = 0; k < D; ++k) a.push_back(idx[k]);
    return a;
}

template <std::size_t D>
ordered_json verdict_obj(const ReachVerdict<D>& v) {
    ordered_json j;
    j["mode"] = v.certified ? "certified" : "violated";
    j["R"] = v.R;
    j["slack"] = v.slack;
    if (v.witness) {
        ordered_json w;
        w["b1"] = vec_json(v.witness->b1);
        w["b2"] = vec_json(v.witness->b2);
        w["gap"] = v.witness->nearest_gap;
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["pairs_checked"] = v.pairs_checked;
    j["boundary_skipped"] = v.boundary_skipped;
    j["sampled"] = v.sampled;
    return j;
}

}  // namespace

template <std::size_t D>
std::string verdict_to_json(const ReachVerdict<D>& v, int indent) {
    return verdict_obj(v).dump(indent);
}

template <std::size_t D>
std::string hull_report_to_json(const HullReport<D>& rep, const std::string* hull_file,
                                int indent) {
    ordered_json j;
    switch (rep.admits) {
        case HullReport<D>::Admits::Yes: j["admits"] = true; break;
        case HullReport<D>::Admits::No: j["admits"] = false; break;
        case HullReport<D>::Admits::Undetermined: j["admits"] = "undetermined"; break;
    }
    j["R"] = rep.R;
    j["margin"] = rep.margin;
    j["verdict"] = rep.verdict ? verdict_obj(*rep.verdict) : ordered_json(nullptr);
    j["sandwich_ok"] = rep.sandwich_ok;
    j["hull_file"] = hull_file ? ordered_json(*hull_file) : ordered_json(nullptr);
    if (rep.witness_arc) {
        ordered_json arc = ordered_json::array();
        for (const auto& idx : *rep.witness_arc) arc.push_back(index_json(idx));
        j["witness_arc"] = arc;
    } else {
        j["witness_arc"] = nullptr;
    }
    if (rep.escaped) j["escaped"] = true;
    return j.dump(indent);
}

template <std::size_t D>
std::string unp_report_to_json(const UnpReport<D>& rep, std::size_t max_medial,
                               std::size_t max_feet, int indent) {
    ordered_json j;
    j["reach_estimate"] = rep.reach_estimate;
    j["R_max"] = rep.R_max;
    j["foot_tol"] = rep.foot_tol;
    j["sep_tol"] = rep.sep_tol;
    j["min_angle"] = rep.min_angle;
    j["medial_count"] = rep.medial_points.size();
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < rep.medial_points.size() && i < max_medial; ++i) {
        const auto& mp = rep.medial_points[i];
        ordered_json p;
        p["x"] = vec_json(mp.x);
        p["delta"] = mp.delta;
        p["feet_count"] = mp.feet.size();
        ordered_json feet = ordered_json::array();
        for (std::size_t f = 0; f < mp.feet.size() && f < max_feet; ++f) feet.push_back(mp.feet[f]);
        p["feet_cells"] = feet;
        pts.push_back(p);
    }
    j["medial_points"] = pts;
    return j.dump(indent);
}

std::string search_result_to_json(const ReachSearchResult& res, int indent) {
    ordered_json j;
    j["bracket"] = {res.bracket_lo, res.bracket_hi};
    j["estimate"] = res.estimate;
    j["width"] = res.width;
    j["certified_R"] = res.lo;
    j["violated_R"] = res.no_violation ? ordered_json(nullptr) : ordered_json(res.hi);
    j["no_violation"] = res.no_violation;
    j["slack"] = res.slack;
    j["iters"] = res.iters;
    return j.dump(indent);
}

std::string wrap_report(const std::string& command, const std::string& config_json,
                        const std::string& report_json, int indent) {
    ordered_json j;
    j["command"] = command;
    j["config"] = ordered_json::parse(config_json);
    j["report"] = ordered_json::parse(report_json);
    return j.dump(indent);
}

template std::string verdict_to_json<2>(const ReachVerdict<2>&, int);
template std::string verdict_to_json<3>(const ReachVerdict<3>&, int);
template std::string hull_report_to_json<2>(const HullReport<2>&, const std::string*, int);
template std::string hull_report_to_json<3>(const HullReport<3>&, const std::string*, int);
template std::string unp_report_to_json<2>(const UnpReport<2>&, std::size_t, std::size_t, int);
template std::string unp_report_to_json<3>(const UnpReport<3>&, std::size_t, std::size_t, int);

}  // namespace reachkit
