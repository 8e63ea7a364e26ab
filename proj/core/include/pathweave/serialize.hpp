#pragma once

#include <string>

#include <json.hpp>

#include "pathweave/path.hpp"
#include "pathweave/weave.hpp"

namespace pathweave {

// Shortest round-trip decimal form of a double (to_chars); used by every CSV
// writer so that equal values always print identically.
std::string format_double(double v);

// Path JSON schema:
//   {"components": [{"lo": ..., "hi": ...}, ...],
//    "breakpoints": [[t, left, right], ...],
//    "tails": {"<component index>": value},
//    "truncated_at": t}                         (optional)
// +-infinite values are the strings "inf" / "-inf"; finite values are JSON
// numbers and round-trip bit-exactly.
nlohmann::json path_to_json(const CadlagPath& p);
CadlagPath path_from_json(const nlohmann::json& j);

nlohmann::json ensemble_to_json(const PathEnsemble& e);
PathEnsemble ensemble_from_json(const nlohmann::json& j);

// "x,t,r" rows.
std::string events_to_csv(const EventSample& sample);

// All-pairs crossing check rendered as
//   {"noncrossing": bool,
//    "pair": [id1, id2], "witness_time": t, "boundary": bool}   (on failure)
// with witness_time/boundary taken from the collision scan of the offending
// pair when one exists.
nlohmann::json crossing_report_json(const PathEnsemble& e);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

// Parses a path or a whole ensemble from a JSON file; single paths become
// one-element ensembles.
PathEnsemble load_paths_file(const std::string& path);

}  // namespace pathweave
