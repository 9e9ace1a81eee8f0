#include "schmearlab/schmear.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "schmearlab/error.hpp"

namespace schmearlab {

namespace {

std::vector<double> to_doubles(const Vec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(to_double(x));
  return out;
}

double rel_dev(const std::vector<double>& measured, const std::vector<double>& expected) {
  double dev = 0;
  for (std::size_t i = 0; i < measured.size(); ++i)
    dev = std::max(dev, std::fabs(measured[i] - expected[i]) / std::max(1.0, std::fabs(expected[i])));
  return dev;
}

void for_each_z(int d, long long budget, std::vector<long long>& buf,
                const std::function<void(const std::vector<long long>&)>& visit) {
  if (static_cast<int>(buf.size()) == d) {
    visit(buf);
    return;
  }
  for (long long c = -budget; c <= budget; ++c) {
    buf.push_back(c);
    for_each_z(d, budget - (c < 0 ? -c : c), buf, visit);
    buf.pop_back();
  }
}

struct Parts {
  LongElement g, h;  // straightened family elements
  BigInt s, t;
  LongElement a, b, c;
};

class AveragedFamily final : public FamilyImpl {
 public:
  AveragedFamily(SequenceFamily fa, SequenceFamily fb, ActionSpec a2)
      : fa_(std::move(fa)), fb_(std::move(fb)), a2_(std::move(a2)) {
    if (fa_.m() != fb_.m() || fa_.d() != fb_.d()) throw DomainError("averaged families must share the group");
    if (fa_.m() != a2_.m() || fa_.d() != a2_.d()) throw DomainError("averaging action acts on a different group");
    if (fa_.m() < 2) throw DomainError("averaging needs m >= 2 to straighten patterns");
  }

  int m() const override { return fa_.m(); }
  int d() const override { return fa_.d(); }
  long long n0() const override { return std::max(fa_.n0(), fb_.n0()); }
  std::string label() const override { return "avg(" + fa_.label() + ", " + fb_.label() + ")"; }
  bool has_vertical_part() const override { return fa_.has_vertical_part() || fb_.has_vertical_part(); }

  Parts parts(long long n) const {
    Parts p;
    p.g = straighten(fa_.evaluate(n));
    p.h = straighten(fb_.evaluate(n));
    // Cross assignment: g is raised to the H2-size of h and vice versa, so
    // both factors travel comparable H2 distances.
    p.s = floor(orbit_distance(a2_.horizontal(), p.h.word.stats()));
    p.t = floor(orbit_distance(a2_.horizontal(), p.g.word.stats()));
    p.a = pow(p.g, p.s);
    p.b = pow(p.h, p.t);
    p.c = compose(p.a, p.b);
    return p;
  }

  LongElement evaluate(long long n) const override { return parts(n).c; }

 private:
  SequenceFamily fa_;
  SequenceFamily fb_;
  ActionSpec a2_;
};

LimitReport schmear_limit(const SequenceFamily& f, const Compactification& pair, const std::vector<long long>& schedule) {
  LimitReport r = limit_in_boundary(f, pair, schedule, kDefaultTol);
  if (r.status != LimitStatus::converged)
    throw DomainError(f.label() + " does not converge to a schmear point (" +
                      (r.reason.empty() ? to_string(r.status) : r.reason) + ")");
  return r;
}

void require_common_fiber(const SequenceFamily& f1, const LimitReport& r1, const SequenceFamily& f2,
                          const LimitReport& r2, const std::vector<long long>& schedule, double tol) {
  std::vector<BigInt> cross(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t k) {
    cross[k] = common_prefix_length(f1.evaluate(schedule[k]).word, f2.evaluate(schedule[k]).word);
  });
  if (!prefix_growth_holds(cross, schedule))
    throw DomainError("not in a common fiber: " + f1.label() + " and " + f2.label() + " have different tree directions");
  if (rel_dev(r1.m_limit, r2.m_limit) >= tol)
    throw DomainError("not in a common fiber: m1 limits of " + f1.label() + " and " + f2.label() + " differ");
}

std::vector<double> fiber_coords(const LimitReport& r) {
  std::vector<double> v = r.m2_limit;
  v.push_back(1.0 / r.nu_limit);
  return v;
}

}  // namespace

std::vector<SchmearPoint> sample_schmear(const ActionSpec& a1, const ActionSpec& a2, int radius) {
  require_compatible(a1, a2);
  if (radius < 1 || radius > 12) throw DomainError("sample_schmear: radius must be in [1, 12]");
  const int m = a1.m();
  const int d = a1.d();
  std::vector<SchmearPoint> out;
  for_each_reduced_word(m, static_cast<std::size_t>(radius), [&](const Word& w) {
    if (w.empty()) return;
    const WordStats stats = stats_of(w, m);
    std::vector<long long> buf;
    for_each_z(d, radius - static_cast<long long>(w.length()), buf, [&](const std::vector<long long>& z) {
      std::vector<BigInt> zb;
      for (long long c : z) zb.emplace_back(static_cast<long>(c));
      const Displacement d1 = displacement(a1, stats, zb);
      const Displacement d2 = displacement(a2, stats, zb);
      SchmearPoint p;
      p.eta_prefix = w;
      p.m1 = to_doubles(slope_vector(d1));
      p.m2 = to_doubles(slope_vector(d2));
      p.nu_inv = to_double(d1.H / d2.H);
      p.M = std::sqrt(to_double(d2.distance_squared() / d1.distance_squared()));
      p.source = GroupElement{m, w, z};
      out.push_back(std::move(p));
    });
  });
  return out;
}

SlopeBounds slope_bounds(const std::vector<SchmearPoint>& points) {
  if (points.empty()) throw DomainError("slope_bounds: empty sample");
  SlopeBounds b;
  b.M_min = b.M_max = points[0].M;
  b.nu_inv_min = b.nu_inv_max = points[0].nu_inv;
  for (const auto& p : points) {
    b.M_min = std::min(b.M_min, p.M);
    b.M_max = std::max(b.M_max, p.M);
    b.nu_inv_min = std::min(b.nu_inv_min, p.nu_inv);
    b.nu_inv_max = std::max(b.nu_inv_max, p.nu_inv);
  }
  b.lambda_est = std::max({b.M_max, 1.0 / b.M_min, b.nu_inv_max, 1.0 / b.nu_inv_min});
  return b;
}

SequenceFamily averaged_family(const SequenceFamily& fam_a, const SequenceFamily& fam_b, const ActionSpec& a2) {
  return SequenceFamily(std::make_shared<AveragedFamily>(fam_a, fam_b, a2));
}

AveragingResult average_families(const SequenceFamily& fam_a, const SequenceFamily& fam_b, const ActionSpec& a1,
                                 const ActionSpec& a2, const std::vector<long long>& schedule, double tol) {
  const Compactification pair(a1, a2);
  AveragingReport rep;
  rep.family_a = fam_a.label();
  rep.family_b = fam_b.label();
  rep.tol = tol;
  rep.limit_a = schmear_limit(fam_a, pair, schedule);
  rep.limit_b = schmear_limit(fam_b, pair, schedule);
  require_common_fiber(fam_a, rep.limit_a, fam_b, rep.limit_b, schedule, tol);

  auto impl = std::make_shared<AveragedFamily>(fam_a, fam_b, a2);
  SequenceFamily fam_c(impl);

  rep.n = schedule.back();
  const Parts p = impl->parts(rep.n);
  rep.s_n = p.s;
  rep.t_n = p.t;
  const Displacement a_1 = displacement(a1, p.a), b_1 = displacement(a1, p.b), c_1 = displacement(a1, p.c);
  const Displacement a_2 = displacement(a2, p.a), b_2 = displacement(a2, p.b), c_2 = displacement(a2, p.c);

  auto ratio_check = [&](int index, std::string name, const QuadExt& num, const QuadExt& den) {
    AveragingCheck c{index, std::move(name), {to_double(num / den)}, {1.0}, 0, false};
    c.deviation = rel_dev(c.measured, c.expected);
    c.pass = c.deviation < tol;
    return c;
  };
  auto coord_check = [&](int index, std::string name, std::vector<double> measured, std::vector<double> expected) {
    AveragingCheck c{index, std::move(name), std::move(measured), std::move(expected), 0, false};
    c.deviation = rel_dev(c.measured, c.expected);
    c.pass = c.deviation < tol;
    return c;
  };

  rep.prefix_c.resize(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t k) {
    const Parts q = impl->parts(schedule[k]);
    rep.prefix_c[k] = common_prefix_length(q.c.word, q.g.word);
  });
  const bool grows = prefix_growth_holds(rep.prefix_c, schedule);
  rep.checks.push_back(AveragingCheck{
      0, "c_n stays in the tree direction of g_n", {to_double(Rational(rep.prefix_c.back()))}, {}, grows ? 0.0 : 1.0,
      grows});
  rep.checks.push_back(ratio_check(1, "(H1(a_n) + H1(b_n)) / H1(c_n)", a_1.H + b_1.H, c_1.H));
  rep.checks.push_back(ratio_check(2, "(H2(a_n) + H2(b_n)) / H2(c_n)", a_2.H + b_2.H, c_2.H));
  rep.checks.push_back(ratio_check(3, "H2(a_n) / H2(b_n)", a_2.H, b_2.H));
  rep.checks.push_back(coord_check(4, "m1(c_n) -> m1(zeta)", to_doubles(slope_vector(c_1)), rep.limit_a.m_limit));
  {
    std::vector<double> mid;
    for (std::size_t i = 0; i < rep.limit_a.m2_limit.size(); ++i)
      mid.push_back((rep.limit_a.m2_limit[i] + rep.limit_b.m2_limit[i]) / 2);
    rep.checks.push_back(coord_check(5, "m2(c_n) -> midpoint of m2", to_doubles(slope_vector(c_2)), mid));
  }
  rep.checks.push_back(coord_check(6, "1/nu(c_n) -> midpoint of 1/nu", {to_double(c_1.H / c_2.H)},
                                   {(1.0 / rep.limit_a.nu_limit + 1.0 / rep.limit_b.nu_limit) / 2}));
  rep.all_pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.pass; });
  return AveragingResult{std::move(fam_c), std::move(rep)};
}

int affine_dimension(const std::vector<std::vector<double>>& points, double eps) {
  if (points.size() < 2) return 0;
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::vector<double> r(points[i].size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = points[i][j] - points[0][j];
    rows.push_back(std::move(r));
  }
  int rank = 0;
  const std::size_t cols = rows[0].size();
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    for (std::size_t r = piv; r < rows.size(); ++r)
      if (std::fabs(rows[r][c]) > std::fabs(rows[piv][c])) piv = r;
    if (std::fabs(rows[piv][c]) < eps) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[piv]);
    const auto& p = rows[static_cast<std::size_t>(rank)];
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows.size(); ++r) {
      const double f = rows[r][c] / p[c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * p[k];
    }
    ++rank;
  }
  return rank;
}

ConvexityReport fiber_convexity_check(const ActionSpec& a1, const ActionSpec& a2,
                                      const std::vector<SequenceFamily>& seeds, int rounds, double tol,
                                      const std::vector<long long>& schedule) {
  if (seeds.empty()) throw DomainError("fiber_convexity_check: no seeds");
  if (rounds < 0) throw DomainError("fiber_convexity_check: rounds must be >= 0");
  const Compactification pair(a1, a2);
  ConvexityReport rep;
  std::vector<LimitReport> limits;
  for (const auto& s : seeds) limits.push_back(schmear_limit(s, pair, schedule));
  for (std::size_t i = 1; i < seeds.size(); ++i)
    require_common_fiber(seeds[0], limits[0], seeds[i], limits[i], schedule, tol);

  std::vector<std::vector<double>> coords;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    FiberPoint p;
    p.family = seeds[i].label();
    p.seed_i = p.seed_j = i;
    p.status = limits[i].status;
    p.m1 = limits[i].m_limit;
    p.m2 = p.expected_m2 = limits[i].m2_limit;
    p.nu_inv = p.expected_nu_inv = 1.0 / limits[i].nu_limit;
    p.in_fiber = true;
    rep.seeds.push_back(p);
    coords.push_back(fiber_coords(limits[i]));
  }
  rep.hull_dimension = affine_dimension(coords);

  std::function<void(const SequenceFamily&, double, const SequenceFamily&, double, std::size_t, std::size_t, int)>
      subdivide = [&](const SequenceFamily& lo, double t_lo, const SequenceFamily& hi, double t_hi, std::size_t i,
                      std::size_t j, int depth) {
        if (depth > rounds) return;
        const SequenceFamily mid = averaged_family(lo, hi, a2);
        FiberPoint p;
        p.family = mid.label();
        p.seed_i = i;
        p.seed_j = j;
        p.t = (t_lo + t_hi) / 2;
        p.depth = depth;
        const LimitReport r = limit_in_boundary(mid, pair, schedule, kDefaultTol);
        p.status = r.status;
        p.m1 = r.m_limit;
        p.m2 = r.m2_limit;
        p.nu_inv = 1.0 / r.nu_limit;
        for (std::size_t k = 0; k < rep.seeds[i].m2.size(); ++k)
          p.expected_m2.push_back((1 - p.t) * rep.seeds[i].m2[k] + p.t * rep.seeds[j].m2[k]);
        p.expected_nu_inv = (1 - p.t) * rep.seeds[i].nu_inv + p.t * rep.seeds[j].nu_inv;
        if (r.status == LimitStatus::converged) {
          p.deviation = std::max({rel_dev(p.m1, rep.seeds[i].m1), rel_dev(p.m2, p.expected_m2),
                                  rel_dev({p.nu_inv}, {p.expected_nu_inv})});
          p.in_fiber = p.deviation < tol;
        } else {
          p.deviation = INFINITY;
        }
        rep.max_deviation = std::max(rep.max_deviation, p.deviation);
        rep.points.push_back(std::move(p));
        const double t = rep.points.back().t;
        subdivide(lo, t_lo, mid, t, i, j, depth + 1);
        subdivide(mid, t, hi, t_hi, i, j, depth + 1);
      };
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j) subdivide(seeds[i], 0.0, seeds[j], 1.0, i, j, 1);

  rep.pass = std::all_of(rep.points.begin(), rep.points.end(), [](const auto& p) { return p.in_fiber; });
  return rep;
}

}  // namespace schmearlab
