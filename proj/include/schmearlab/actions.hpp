#pragma once

// Actions of G = F_m x Z^d on X = Y x E^d: F_m acts on Y by left
// translation and on E by per-generator translations; Z^d acts on E only.
// All functionals factor through the horizontal displacement H and the
// vertical translation T of an element.

#include <string>
#include <vector>

#include "schmearlab/exactnum.hpp"
#include "schmearlab/freegroup.hpp"
#include "schmearlab/longword.hpp"
#include "schmearlab/spaces.hpp"

namespace schmearlab {

using Vec = std::vector<QuadExt>;

class ActionSpec {
 public:
  // Validates shapes, that vertical_z has full rank, and that the
  // horizontal space has m generators.
  ActionSpec(HorizontalSpace horizontal, int m, int d, std::vector<Vec> vertical_f,
             std::vector<Vec> vertical_z, std::string name = {});

  const HorizontalSpace& horizontal() const { return horizontal_; }
  int m() const { return m_; }
  int d() const { return d_; }
  const std::vector<Vec>& vertical_f() const { return vertical_f_; }
  const std::vector<Vec>& vertical_z() const { return vertical_z_; }
  const std::string& name() const { return name_; }

  // The same action with the Euclidean factor removed.
  ActionSpec horizontal_projection() const;

  friend bool operator==(const ActionSpec& a, const ActionSpec& b) {
    return a.horizontal_ == b.horizontal_ && a.m_ == b.m_ && a.d_ == b.d_ &&
           a.vertical_f_ == b.vertical_f_ && a.vertical_z_ == b.vertical_z_;
  }

 private:
  HorizontalSpace horizontal_;
  int m_;
  int d_;
  std::vector<Vec> vertical_f_;
  std::vector<Vec> vertical_z_;
  std::string name_;
};

struct Displacement {
  QuadExt H;  // d_Y(y0, w y0)
  Vec T;      // translation of E

  // d(x0, g x0)^2 = H^2 + |T|^2.
  QuadExt distance_squared() const;
};

Displacement displacement(const ActionSpec& action, const GroupElement& g);
Displacement displacement(const ActionSpec& action, const LongElement& g);
Displacement displacement(const ActionSpec& action, const WordStats& w, const std::vector<BigInt>& z);

// T / H componentwise; the zero vector when H = 0.
Vec slope_vector(const ActionSpec& action, const GroupElement& g);
Vec slope_vector(const Displacement& disp);

enum class BallScope {
  full,         // all <w, c> with l(w) + |c|_1 <= radius
  free_factor,  // only <w, 0>
};

struct QieBounds {
  // Extremes of d(x0, g x0) / (l(w) + |c|_1) over the ball, identity skipped.
  QuadExt ratio_sq_low;
  QuadExt ratio_sq_high;
  double lambda_low = 0;
  double lambda_high = 0;
  GroupElement witness_low;
  GroupElement witness_high;
  std::size_t elements = 0;
};

// Requires radius <= 12.
QieBounds qie_bounds_check(const ActionSpec& action, int radius, BallScope scope = BallScope::full);

struct PairFunctionals {
  QuadExt nu;    // H2 / H1
  QuadExt M_sq;  // d2^2 / d1^2
  Vec m1;
  Vec m2;
};

// Requires a nontrivial word part; throws DomainError("nu undefined").
PairFunctionals pair_functionals(const ActionSpec& a1, const ActionSpec& a2, const GroupElement& g);

void require_compatible(const ActionSpec& a1, const ActionSpec& a2);

// The actions used throughout the examples: product, twisted, stretched,
// diamond and star actions of F_2 x Z, and the F_2 actions on Gamma,
// Gamma' and Q.
namespace presets {
ActionSpec product();
ActionSpec twisted();
ActionSpec stretched();
ActionSpec diamond();
ActionSpec star();
ActionSpec gamma();
ActionSpec gamma_prime();
ActionSpec diamond_f2();
}  // namespace presets

}  // namespace schmearlab
