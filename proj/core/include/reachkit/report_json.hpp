#pragma once

#include <cstddef>
#include <string>

#include "reachkit/reach.hpp"
#include "reachkit/rhull.hpp"

namespace reachkit {

// JSON serializers. Key order is fixed and doubles are emitted with enough
// digits to round-trip, so equal inputs give byte-identical output.

template <std::size_t D>
std::string verdict_to_json(const ReachVerdict<D>& v, int indent = 2);

// hull_file: path the hull grid was written to, or nullptr for null.
template <std::size_t D>
std::string hull_report_to_json(const HullReport<D>& rep, const std::string* hull_file,
                                int indent = 2);

// Medial points are ranked by (delta, cell order); at most max_medial of them
// are emitted with at most max_feet feet each, alongside the full counts.
template <std::size_t D>
std::string unp_report_to_json(const UnpReport<D>& rep, std::size_t max_medial = 32,
                               std::size_t max_feet = 8, int indent = 2);

std::string search_result_to_json(const ReachSearchResult& res, int indent = 2);

// Envelope written by the command line tool:
//   {"command": ..., "config": <config>, "report": <report>}
// config and report arrive pre-serialized.
std::string wrap_report(const std::string& command, const std::string& config_json,
                        const std::string& report_json, int indent = 2);

}  // namespace reachkit
