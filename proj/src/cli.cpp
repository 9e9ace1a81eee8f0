#include "schmearlab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "schmearlab/error.hpp"
#include "schmearlab/io.hpp"

namespace schmearlab {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::string& require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
  return value;
}

std::string read_input(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw UsageError("cannot open " + path);
  return read_text_file(path);
}

Compactification read_compactification(const std::string& path) {
  return compactification_from_json(parse_json_text(read_input(path)));
}

ActionSpec read_action(const std::string& path) {
  read_input(path);
  return load_action(path);
}

std::vector<long long> schedule_of(const RunConfig& c) {
  if (c.schedule_from < 1 || c.schedule_to > 20 || c.schedule_to - c.schedule_from < 3)
    throw UsageError("schedule exponents must satisfy 1 <= from, to <= 20 and to - from >= 3");
  std::vector<long long> s;
  for (int k = c.schedule_from; k <= c.schedule_to; ++k) s.push_back(1LL << k);
  return s;
}

json header(const RunConfig& c) {
  json j;
  j["tool"] = "schmearlab";
  j["version"] = kVersion;
  j["subcommand"] = c.subcommand;
  return j;
}

json schedule_json(const std::vector<long long>& s) {
  json out = json::array();
  for (long long n : s) out.push_back(n);
  return out;
}

std::vector<SequenceFamily> family_inputs(const RunConfig& c, int m, int d) {
  std::vector<SequenceFamily> out;
  if (!c.family.empty()) out.push_back(parse_family(c.family, m, d));
  if (!c.families.empty())
    for (auto& f : parse_family_list(read_input(c.families), m, d)) out.push_back(std::move(f));
  if (out.empty()) throw UsageError("no families given (use --family or --families)");
  return out;
}

json cmd_slope(const RunConfig& c) {
  const Compactification comp = read_compactification(require(c.action, "--action"));
  const LongElement g = parse_element(require(c.element, "--element"), comp.m(), comp.d());
  json j = header(c);
  j["action"] = comp.name();
  j["element"] = c.element;
  j["reduced"] = g.describe();
  auto slope_of = [](const Displacement& disp) {
    const Vec m = slope_vector(disp);
    json numeric = json::array();
    for (const auto& x : m) numeric.push_back(to_double(x));
    return std::pair{to_json(m), numeric};
  };
  if (!comp.is_pair()) {
    const Displacement disp = displacement(comp.actions()[0], g);
    const auto [exact, numeric] = slope_of(disp);
    j["displacement"] = to_json(disp);
    j["m"] = exact;
    j["m_numeric"] = numeric;
    return j;
  }
  const Displacement d1 = displacement(comp.actions()[0], g);
  const Displacement d2 = displacement(comp.actions()[1], g);
  if (d1.H.is_zero()) throw DomainError("nu undefined: the element has trivial word part");
  const QuadExt nu = d2.H / d1.H;
  const QuadExt M_sq = d2.distance_squared() / d1.distance_squared();
  j["displacement1"] = to_json(d1);
  j["displacement2"] = to_json(d2);
  j["nu"] = to_json(nu);
  j["nu_numeric"] = to_double(nu);
  j["M_sq"] = to_json(M_sq);
  j["M"] = std::sqrt(to_double(M_sq));
  j["M_inverse"] = 1.0 / std::sqrt(to_double(M_sq));
  j["m1"] = slope_of(d1).first;
  j["m1_numeric"] = slope_of(d1).second;
  j["m2"] = slope_of(d2).first;
  j["m2_numeric"] = slope_of(d2).second;
  return j;
}

json cmd_limit(const RunConfig& c) {
  const Compactification comp = read_compactification(require(c.action, "--action"));
  const auto fams = family_inputs(c, comp.m(), comp.d());
  const auto schedule = schedule_of(c);
  const double tol = c.tol.value_or(kDefaultTol);
  std::vector<LimitReport> reports(fams.size());
  parallel_for(fams.size(), [&](std::size_t i) { reports[i] = limit_in_boundary(fams[i], comp, schedule, tol); });
  json j = header(c);
  j["compactification"] = comp.name();
  j["schedule"] = schedule_json(schedule);
  j["tol"] = tol;
  json limits = json::array();
  for (const auto& r : reports) limits.push_back(to_json(r));
  j["limits"] = limits;
  return j;
}

json cmd_witness(const RunConfig& c) {
  const Compactification src = read_compactification(require(c.action1, "--action1"));
  const Compactification tgt = read_compactification(require(c.action2, "--action2"));
  if (src.m() != tgt.m() || src.d() != tgt.d()) throw DomainError("the two actions are of different groups");
  const auto fams = family_inputs(c, src.m(), src.d());
  const auto schedule = schedule_of(c);
  const double tol = c.tol.value_or(kDefaultTol);
  json j = header(c);
  j["schedule"] = schedule_json(schedule);
  j["tol"] = tol;
  j["equator"] = c.equator;
  if (c.equator) {
    const EquatorReport rep = equator_restriction_check(src, tgt, fams, schedule, tol);
    j["search"] = to_json(rep.search);
  } else {
    j["search"] = to_json(find_obstruction(src, tgt, fams, schedule, tol));
  }
  return j;
}

json cmd_schmear(const RunConfig& c, std::ostream& out, bool csv) {
  const ActionSpec a1 = read_action(require(c.action1, "--action1"));
  const ActionSpec a2 = read_action(require(c.action2, "--action2"));
  const auto points = sample_schmear(a1, a2, c.radius);
  if (csv) {
    write_schmear_csv(out, points);
    return nullptr;
  }
  json j = header(c);
  j["radius"] = c.radius;
  j["bounds"] = to_json(slope_bounds(points));
  json pts = json::array();
  for (const auto& p : points) {
    json m1 = json::array(), m2 = json::array();
    for (double x : p.m1) m1.push_back(x == 0 ? 0.0 : x);
    for (double x : p.m2) m2.push_back(x == 0 ? 0.0 : x);
    pts.push_back({{"eta_prefix", to_string(p.eta_prefix)},
                   {"m1", m1},
                   {"m2", m2},
                   {"nu_inv", p.nu_inv},
                   {"M", p.M},
                   {"source", to_string(p.source)}});
  }
  j["points"] = pts;
  return j;
}

json cmd_average(const RunConfig& c) {
  const ActionSpec a1 = read_action(require(c.action1, "--action1"));
  const ActionSpec a2 = read_action(require(c.action2, "--action2"));
  require_compatible(a1, a2);
  const auto fa = parse_family(require(c.family_a, "--family-a"), a1.m(), a1.d());
  const auto fb = parse_family(require(c.family_b, "--family-b"), a1.m(), a1.d());
  const auto result = average_families(fa, fb, a1, a2, schedule_of(c), c.tol.value_or(0.02));
  json j = header(c);
  j["family_c"] = result.fam_c.label();
  j["report"] = to_json(result.report);
  return j;
}

json cmd_convexity(const RunConfig& c) {
  const ActionSpec a1 = read_action(require(c.action1, "--action1"));
  const ActionSpec a2 = read_action(require(c.action2, "--action2"));
  require_compatible(a1, a2);
  const auto seeds = family_inputs(c, a1.m(), a1.d());
  const double tol = c.tol.value_or(1e-2);
  json j = header(c);
  j["rounds"] = c.rounds;
  j["tol"] = tol;
  j["report"] = to_json(fiber_convexity_check(a1, a2, seeds, c.rounds, tol, schedule_of(c)));
  return j;
}

json cmd_oracle(const RunConfig& c) {
  const Word w = parse_word(require(c.word, "--word"), 2);
  const QuadExt exact = diamond_distance(w);
  const double oracle = diamond_distance_oracle(w, c.mesh);
  json j = header(c);
  j["word"] = to_string(w);
  j["mesh"] = c.mesh;
  j["closed_form"] = to_json(exact);
  j["closed_form_numeric"] = to_double(exact);
  j["oracle"] = oracle;
  j["delta"] = oracle - to_double(exact);
  return j;
}

int dispatch(const RunConfig& c, std::ostream& out) {
  const OutputFormat fmt = c.format.value_or(c.subcommand == "schmear" ? OutputFormat::csv : OutputFormat::json);
  if (fmt == OutputFormat::csv && c.subcommand != "schmear") throw UsageError("csv output is only available for schmear");

  std::ofstream file;
  if (!c.output.empty()) {
    file.open(c.output, std::ios::binary);
    if (!file) throw UsageError("cannot write " + c.output);
  }
  std::ostream& sink = c.output.empty() ? out : file;

  json j;
  if (c.subcommand == "slope") j = cmd_slope(c);
  else if (c.subcommand == "limit") j = cmd_limit(c);
  else if (c.subcommand == "witness") j = cmd_witness(c);
  else if (c.subcommand == "schmear") j = cmd_schmear(c, sink, fmt == OutputFormat::csv);
  else if (c.subcommand == "average") j = cmd_average(c);
  else if (c.subcommand == "convexity") j = cmd_convexity(c);
  else if (c.subcommand == "oracle") j = cmd_oracle(c);
  else throw UsageError("unknown subcommand '" + c.subcommand + "'");
  if (!j.is_null()) sink << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Boundaries, limsets and schmears of F_m x Z^d actions", "schmearlab"};
  app.set_version_flag("--version", std::string("schmearlab ") + kVersion);
  app.require_subcommand(1);
  RunConfig c;
  double tol = 0;
  std::string format;

  auto common = [&](CLI::App* s) {
    s->add_option("--schedule-from", c.schedule_from, "first schedule point is 2^k")->capture_default_str();
    s->add_option("--schedule-to", c.schedule_to, "last schedule point is 2^k")->capture_default_str();
    s->add_option("--tol", tol, "tolerance");
    s->add_option("-o,--output", c.output, "output file (default stdout)");
    s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* slope = app.add_subcommand("slope", "displacement, slope vector and pair functionals of an element");
  slope->add_option("--action", c.action, "action spec file (one spec or a pair)")->required();
  slope->add_option("--element", c.element, "element such as \"a^4 b^16\"")->required();
  common(slope);

  auto* limit = app.add_subcommand("limit", "limits of sequence families in a boundary or schmear");
  limit->add_option("--action", c.action, "action spec file (one spec or a pair)")->required();
  limit->add_option("--family", c.family, "one family such as \"a^n b^{n^2}\"");
  limit->add_option("--families", c.families, "file with one family per line");
  common(limit);

  auto* witness = app.add_subcommand("witness", "search for a pair of families obstructing a limset map");
  witness->add_option("--action1", c.action1, "source action file")->required();
  witness->add_option("--action2", c.action2, "target action file")->required();
  witness->add_option("--families", c.families, "candidate families file")->required();
  witness->add_flag("--equator", c.equator, "compare the horizontal projections only");
  common(witness);

  auto* schmear = app.add_subcommand("schmear", "sample schmear points over a word-metric ball");
  schmear->add_option("--action1", c.action1, "first action file")->required();
  schmear->add_option("--action2", c.action2, "second action file")->required();
  schmear->add_option("--radius", c.radius, "ball radius (<= 12)")->capture_default_str();
  common(schmear);

  auto* average = app.add_subcommand("average", "sequence averaging of two families in one fiber");
  average->add_option("--action1", c.action1, "first action file")->required();
  average->add_option("--action2", c.action2, "second action file")->required();
  average->add_option("--family-a", c.family_a, "first family")->required();
  average->add_option("--family-b", c.family_b, "second family")->required();
  common(average);

  auto* convexity = app.add_subcommand("convexity", "dyadic averaging between seed families");
  convexity->add_option("--action1", c.action1, "first action file")->required();
  convexity->add_option("--action2", c.action2, "second action file")->required();
  convexity->add_option("--families", c.families, "seed families file")->required();
  convexity->add_option("--rounds", c.rounds, "subdivision depth")->capture_default_str();
  common(convexity);

  auto* oracle = app.add_subcommand("oracle", "compare the diamond closed form with the mesh oracle");
  oracle->add_option("--word", c.word, "reduced word over a, b (A, B inverses)")->required();
  oracle->add_option("--mesh", c.mesh, "grid resolution per diamond")->capture_default_str();
  common(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  for (auto* s : app.get_subcommands()) c.subcommand = s->get_name();
  for (auto* s : app.get_subcommands())
    if (s->count("--tol")) c.tol = tol;
  if (!format.empty()) c.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;
  return run(c, out, err);
}

}  // namespace schmearlab
