#pragma once

// Horizontal model spaces Y with exact orbit distances d(y0, w y0).

#include <variant>
#include <vector>

#include "schmearlab/exactnum.hpp"
#include "schmearlab/freegroup.hpp"
#include "schmearlab/longword.hpp"

namespace schmearlab {

// Cayley tree of F_m whose edges labelled by generator i have length
// edge_lengths[i-1].
struct TreeSpace {
  std::vector<QuadExt> edge_lengths;

  int m() const { return static_cast<int>(edge_lengths.size()); }
  friend bool operator==(const TreeSpace&, const TreeSpace&) = default;
};

TreeSpace make_tree(std::vector<QuadExt> edge_lengths);  // validates > 0
TreeSpace unit_tree(int m);

// Universal cover of the square with opposite vertices glued; F_2 acts by
// deck transformations and the basepoint is a diamond center.
struct DiamondSpace {
  int m() const { return 2; }
  friend bool operator==(const DiamondSpace&, const DiamondSpace&) = default;
};

using HorizontalSpace = std::variant<TreeSpace, DiamondSpace>;

int generator_count(const HorizontalSpace& y);

QuadExt tree_distance(const TreeSpace& space, const Word& w);
QuadExt tree_distance(const TreeSpace& space, const WordStats& w);

// Exact d(q0, w q0): 2 plus a chord per adjacent letter pair, 2 when both
// letters use the same generator and sqrt(2) otherwise.
QuadExt diamond_distance(const Word& w);
QuadExt diamond_distance(const WordStats& w);

QuadExt orbit_distance(const HorizontalSpace& y, const WordStats& w);
QuadExt orbit_distance(const HorizontalSpace& y, const Word& w);

// Independent numeric check of diamond_distance: builds the chain of
// diamonds visited by w, discretises each as a (mesh+1)^2 grid graph with
// straight-segment edges and runs Dijkstra between the two center lifts.
// Every graph path is a path in Q, so the result never undercuts the exact
// distance. Requires mesh >= 4 and |w| <= 12.
double diamond_distance_oracle(const Word& w, int mesh);

}  // namespace schmearlab
