#pragma once

// JSON action specs, JSON reports and CSV point clouds. Exact values are
// written in the QuadExt text form; measured values as JSON numbers.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schmearlab/actions.hpp"
#include "schmearlab/limsetmap.hpp"
#include "schmearlab/schmear.hpp"
#include "schmearlab/sequences.hpp"

namespace schmearlab {

using json = nlohmann::ordered_json;

// Throws SyntaxError with the line and column of the offending byte.
json parse_json_text(std::string_view text);
std::string read_text_file(const std::string& path);  // throws DomainError

// {"m":2,"d":1,"horizontal":{"type":"tree","edge_lengths":["1","1"]},
//  "vertical_f":[["0"],["1"]],"vertical_z":[["1"]],"name":"twisted"}
ActionSpec action_from_json(const json& j);
json action_to_json(const ActionSpec& a);

// An action file holds either one spec or an array of two specs (a pair
// acting diagonally).
Compactification compactification_from_json(const json& j);
Compactification load_compactification(const std::string& path);
ActionSpec load_action(const std::string& path);  // single spec only

json to_json(const QuadExt& x);
json to_json(const Vec& v);
json to_json(const BigInt& v);  // integer when it fits in int64, else string
json to_json(const Displacement& d);
json to_json(const LimitReport& r);
json to_json(const SameLimitReport& r);
json to_json(const ObstructionSearch& s);
json to_json(const AveragingReport& r);
json to_json(const ConvexityReport& r);
json to_json(const FiberPoint& p);
json to_json(const SlopeBounds& b);
json to_json(const QieBounds& b);

// Header eta_prefix,m1_1..m1_d1,m2_1..m2_d2,nu_inv,M,source.
void write_schmear_csv(std::ostream& out, const std::vector<SchmearPoint>& points);

}  // namespace schmearlab
