#pragma once

// The diagonal action of G on X1 x X2: sampled schmear points in
// (m1, m2, 1/nu) coordinates, sequence averaging, and convexity of fibers
// of the schmear map to the first boundary.

#include <string>
#include <vector>

#include "schmearlab/actions.hpp"
#include "schmearlab/sequences.hpp"

namespace schmearlab {

struct SchmearPoint {
  Word eta_prefix;  // the approximant's word
  std::vector<double> m1;
  std::vector<double> m2;
  double nu_inv = 1.0;  // H1 / H2
  double M = 1.0;       // d2 / d1
  GroupElement source;
};

// Every <w, c> with 1 <= l(w) and l(w) + |c|_1 <= radius, words in shortlex
// order and c in lexicographic order. Requires radius <= 12.
std::vector<SchmearPoint> sample_schmear(const ActionSpec& a1, const ActionSpec& a2, int radius);

struct SlopeBounds {
  double lambda_est = 1.0;  // max of M, 1/M, nu, 1/nu over the sample
  double M_min = 0, M_max = 0;
  double nu_inv_min = 0, nu_inv_max = 0;
};

SlopeBounds slope_bounds(const std::vector<SchmearPoint>& points);

struct AveragingCheck {
  int index = 0;  // 0..6
  std::string name;
  std::vector<double> measured;
  std::vector<double> expected;
  double deviation = 0;  // relative, with denominators floored at 1
  bool pass = false;
};

struct AveragingReport {
  std::string family_a;
  std::string family_b;
  long long n = 0;  // final schedule point
  double tol = 0;
  BigInt s_n;
  BigInt t_n;
  LimitReport limit_a;
  LimitReport limit_b;
  std::vector<BigInt> prefix_c;  // LCP(c_n, g_n) along the schedule
  std::vector<AveragingCheck> checks;
  bool all_pass = false;
};

struct AveragingResult {
  SequenceFamily fam_c;
  AveragingReport report;
};

// c_n = g_n^{s_n} h_n^{t_n} where g_n = <v_n, rho_n> and h_n = <w_n, sigma_n>
// are the straightened family elements, s_n = floor H2(w_n) and
// t_n = floor H2(v_n).
SequenceFamily averaged_family(const SequenceFamily& fam_a, const SequenceFamily& fam_b, const ActionSpec& a2);

// Requires both families to converge in schmear coordinates to points of
// one fiber (same tree direction, m1 limits within tol); throws
// DomainError("not in a common fiber") otherwise. Checks pass when their
// relative deviation at the last schedule point is below tol.
AveragingResult average_families(const SequenceFamily& fam_a, const SequenceFamily& fam_b, const ActionSpec& a1,
                                 const ActionSpec& a2, const std::vector<long long>& schedule = default_schedule(),
                                 double tol = 0.02);

struct FiberPoint {
  std::string family;
  std::size_t seed_i = 0;
  std::size_t seed_j = 0;
  double t = 0;  // position on the segment [seed_i, seed_j]
  int depth = 0;
  LimitStatus status = LimitStatus::not_cauchy;
  std::vector<double> m1;
  std::vector<double> m2;
  double nu_inv = 0;
  std::vector<double> expected_m2;
  double expected_nu_inv = 0;
  double deviation = 0;
  bool in_fiber = false;
};

struct ConvexityReport {
  std::vector<FiberPoint> seeds;
  std::vector<FiberPoint> points;  // dyadic points of every seed segment
  double max_deviation = 0;
  int hull_dimension = 0;  // affine dimension of the seeds in (m2, 1/nu)
  bool pass = false;
};

// Dyadic subdivision (depth `rounds`) of every segment between two seeds by
// repeated averaging; each produced limit must keep the seeds' m1 and land
// on the expected dyadic combination of (m2, 1/nu) within tol.
ConvexityReport fiber_convexity_check(const ActionSpec& a1, const ActionSpec& a2,
                                      const std::vector<SequenceFamily>& seeds, int rounds, double tol,
                                      const std::vector<long long>& schedule = default_schedule());

// Affine dimension of a point set, with coordinates treated as equal below eps.
int affine_dimension(const std::vector<std::vector<double>>& points, double eps = 1e-6);

}  // namespace schmearlab
