#include "schmearlab/io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "schmearlab/error.hpp"

namespace schmearlab {

namespace {

[[noreturn]] void spec_error(const std::string& what) { throw SyntaxError("action spec: " + what, 0, 0); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) spec_error("expected an object");
  auto it = j.find(key);
  if (it == j.end()) spec_error(std::string("missing field '") + key + "'");
  return *it;
}

int small_int(const json& j, const char* key, int lo, int hi) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) spec_error(std::string("'") + key + "' must be an integer");
  const long long x = v.get<long long>();
  if (x < lo || x > hi)
    spec_error(std::string("'") + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

QuadExt quad_field(const json& v, const std::string& where) {
  if (!v.is_string()) spec_error(where + " must be a string such as \"1\" or \"1 + r2\"");
  try {
    return QuadExt::parse(v.get<std::string>());
  } catch (const SyntaxError& e) {
    spec_error(where + ": " + e.what());
  }
}

std::vector<Vec> vectors(const json& j, const char* key, std::size_t count, std::size_t dim) {
  const json& v = field(j, key);
  if (!v.is_array() || v.size() != count)
    spec_error(std::string("'") + key + "' must be an array of " + std::to_string(count) + " vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != dim)
      spec_error(std::string(key) + "[" + std::to_string(i) + "] must have " + std::to_string(dim) + " entries");
    Vec r;
    for (std::size_t k = 0; k < dim; ++k)
      r.push_back(quad_field(row[k], std::string(key) + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    out.push_back(std::move(r));
  }
  return out;
}

HorizontalSpace horizontal_from_json(const json& h, int m) {
  const json& type = field(h, "type");
  if (type == "diamond") return DiamondSpace{};
  if (type != "tree") spec_error("horizontal.type must be \"tree\" or \"diamond\"");
  const json& e = field(h, "edge_lengths");
  if (!e.is_array() || e.size() != static_cast<std::size_t>(m))
    spec_error("horizontal.edge_lengths must list one length per free generator");
  std::vector<QuadExt> lengths;
  for (std::size_t i = 0; i < e.size(); ++i)
    lengths.push_back(quad_field(e[i], "edge_lengths[" + std::to_string(i) + "]"));
  return make_tree(std::move(lengths));
}

double clean(double x) { return x == 0 ? 0.0 : x; }  // no "-0"

json numbers(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(clean(x));
  return out;
}

}  // namespace

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SyntaxError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col), line,
                      col);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ActionSpec action_from_json(const json& j) {
  const int m = small_int(j, "m", 1, 26);
  const int d = small_int(j, "d", 0, 25);
  if (m + d > 26) spec_error("m + d must be at most 26");
  HorizontalSpace y = horizontal_from_json(field(j, "horizontal"), m);
  if (generator_count(y) != m) spec_error("the diamond complex needs m = 2");
  auto vf = vectors(j, "vertical_f", static_cast<std::size_t>(m), static_cast<std::size_t>(d));
  auto vz = vectors(j, "vertical_z", static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  std::string name;
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) spec_error("'name' must be a string");
    name = it->get<std::string>();
  }
  return ActionSpec(std::move(y), m, d, std::move(vf), std::move(vz), std::move(name));
}

json action_to_json(const ActionSpec& a) {
  json j;
  j["name"] = a.name();
  j["m"] = a.m();
  j["d"] = a.d();
  if (const auto* t = std::get_if<TreeSpace>(&a.horizontal())) {
    json lengths = json::array();
    for (const auto& e : t->edge_lengths) lengths.push_back(e.to_string());
    j["horizontal"] = {{"type", "tree"}, {"edge_lengths", lengths}};
  } else {
    j["horizontal"] = {{"type", "diamond"}};
  }
  json vf = json::array(), vz = json::array();
  for (const auto& v : a.vertical_f()) vf.push_back(to_json(v));
  for (const auto& v : a.vertical_z()) vz.push_back(to_json(v));
  j["vertical_f"] = vf;
  j["vertical_z"] = vz;
  return j;
}

Compactification compactification_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) spec_error("an action pair must list exactly two specs");
    return Compactification(action_from_json(j[0]), action_from_json(j[1]));
  }
  return Compactification(action_from_json(j));
}

Compactification load_compactification(const std::string& path) {
  return compactification_from_json(parse_json_text(read_text_file(path)));
}

ActionSpec load_action(const std::string& path) {
  const json j = parse_json_text(read_text_file(path));
  if (j.is_array()) spec_error(path + " holds an action pair where one action is expected");
  return action_from_json(j);
}

json to_json(const QuadExt& x) { return x.to_string(); }

json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

json to_json(const BigInt& v) {
  if (fits_int64(v)) return static_cast<long long>(v.get_si());
  return v.get_str();
}

json to_json(const Displacement& d) {
  return {{"H", to_json(d.H)}, {"T", to_json(d.T)}, {"distance_squared", to_json(d.distance_squared())}};
}

json to_json(const LimitReport& r) {
  json j;
  j["family"] = r.family;
  j["status"] = to_string(r.status);
  j["reason"] = r.reason;
  j["eta_prefix"] = to_string(r.eta_prefix);
  json p = json::array();
  for (const auto& x : r.prefix_lengths) p.push_back(to_json(x));
  j["prefix_lengths"] = p;
  j["m"] = numbers(r.m_limit);
  j["m2"] = numbers(r.m2_limit);
  j["nu"] = clean(r.nu_limit);
  j["M"] = clean(r.M_limit);
  j["M_inverse"] = r.M_limit == 0 ? json(nullptr) : json(1.0 / r.M_limit);
  j["direction"] = numbers(r.direction);
  j["fields"] = r.fields;
  json ev = json::array();
  for (const auto& s : r.evidence) ev.push_back({{"n", s.n}, {"values", numbers(s.values)}});
  j["evidence"] = ev;
  j["estimates"] = numbers(r.estimates);
  return j;
}

json to_json(const SameLimitReport& r) {
  json cross = json::array();
  for (const auto& x : r.cross_prefix) cross.push_back(to_json(x));
  return {{"same", r.same},
          {"reason", r.reason},
          {"first", to_json(r.first)},
          {"second", to_json(r.second)},
          {"cross_prefix", cross}};
}

json to_json(const ObstructionSearch& s) {
  json j;
  j["source"] = s.source;
  j["target"] = s.target;
  j["pairs_checked"] = s.pairs_checked;
  if (s.witness) {
    const auto& w = *s.witness;
    j["witness"] = {{"first", w.first},
                    {"second", w.second},
                    {"family1", w.family1},
                    {"family2", w.family2},
                    {"under_source", to_json(w.under_source)},
                    {"under_target", to_json(w.under_target)}};
  } else {
    j["witness"] = nullptr;
  }
  json src = json::array(), tgt = json::array();
  for (const auto& r : s.source_limits) src.push_back(to_json(r));
  for (const auto& r : s.target_limits) tgt.push_back(to_json(r));
  j["source_limits"] = src;
  j["target_limits"] = tgt;
  return j;
}

json to_json(const AveragingReport& r) {
  json j;
  j["family_a"] = r.family_a;
  j["family_b"] = r.family_b;
  j["n"] = r.n;
  j["tol"] = r.tol;
  j["s_n"] = to_json(r.s_n);
  j["t_n"] = to_json(r.t_n);
  j["limit_a"] = to_json(r.limit_a);
  j["limit_b"] = to_json(r.limit_b);
  json p = json::array();
  for (const auto& x : r.prefix_c) p.push_back(to_json(x));
  j["prefix_c"] = p;
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"index", c.index},
                      {"name", c.name},
                      {"measured", numbers(c.measured)},
                      {"expected", numbers(c.expected)},
                      {"deviation", c.deviation},
                      {"pass", c.pass}});
  j["checks"] = checks;
  j["all_pass"] = r.all_pass;
  return j;
}

json to_json(const FiberPoint& p) {
  json j;
  j["family"] = p.family;
  j["seed_i"] = p.seed_i;
  j["seed_j"] = p.seed_j;
  j["t"] = p.t;
  j["depth"] = p.depth;
  j["status"] = to_string(p.status);
  j["m1"] = numbers(p.m1);
  j["m2"] = numbers(p.m2);
  j["nu_inv"] = clean(p.nu_inv);
  j["expected_m2"] = numbers(p.expected_m2);
  j["expected_nu_inv"] = clean(p.expected_nu_inv);
  j["deviation"] = std::isfinite(p.deviation) ? json(p.deviation) : json(nullptr);
  j["in_fiber"] = p.in_fiber;
  return j;
}

json to_json(const ConvexityReport& r) {
  json seeds = json::array(), points = json::array();
  for (const auto& p : r.seeds) seeds.push_back(to_json(p));
  for (const auto& p : r.points) points.push_back(to_json(p));
  return {{"seeds", seeds},
          {"points", points},
          {"max_deviation", std::isfinite(r.max_deviation) ? json(r.max_deviation) : json(nullptr)},
          {"hull_dimension", r.hull_dimension},
          {"pass", r.pass}};
}

json to_json(const SlopeBounds& b) {
  return {{"lambda_est", b.lambda_est},
          {"M_min", b.M_min},
          {"M_max", b.M_max},
          {"nu_inv_min", b.nu_inv_min},
          {"nu_inv_max", b.nu_inv_max},
          {"nu_min", 1.0 / b.nu_inv_max},
          {"nu_max", 1.0 / b.nu_inv_min}};
}

json to_json(const QieBounds& b) {
  return {{"elements", b.elements},
          {"ratio_sq_low", to_json(b.ratio_sq_low)},
          {"ratio_sq_high", to_json(b.ratio_sq_high)},
          {"lambda_low", b.lambda_low},
          {"lambda_high", b.lambda_high},
          {"witness_low", to_string(b.witness_low)},
          {"witness_high", to_string(b.witness_high)}};
}

void write_schmear_csv(std::ostream& out, const std::vector<SchmearPoint>& points) {
  const std::size_t d1 = points.empty() ? 0 : points[0].m1.size();
  const std::size_t d2 = points.empty() ? 0 : points[0].m2.size();
  out << "eta_prefix";
  for (std::size_t i = 1; i <= d1; ++i) out << ",m1_" << i;
  for (std::size_t i = 1; i <= d2; ++i) out << ",m2_" << i;
  out << ",nu_inv,M,source\n";
  char buf[40];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", clean(x));
    return buf;
  };
  for (const auto& p : points) {
    out << to_string(p.eta_prefix);
    for (double x : p.m1) out << ',' << num(x);
    for (double x : p.m2) out << ',' << num(x);
    out << ',' << num(p.nu_inv);
    out << ',' << num(p.M);
    out << ',' << '"' << to_string(p.source) << '"' << '\n';
  }
}

}  // namespace schmearlab
