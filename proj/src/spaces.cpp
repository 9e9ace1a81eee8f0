#include "schmearlab/spaces.hpp"

#include "schmearlab/error.hpp"

namespace schmearlab {

TreeSpace make_tree(std::vector<QuadExt> edge_lengths) {
  if (edge_lengths.empty()) throw DomainError("tree needs at least one generator");
  for (const auto& e : edge_lengths)
    if (e.sign() <= 0) throw DomainError("tree edge lengths must be positive");
  return TreeSpace{std::move(edge_lengths)};
}

TreeSpace unit_tree(int m) { return make_tree(std::vector<QuadExt>(static_cast<std::size_t>(m), QuadExt(1))); }

int generator_count(const HorizontalSpace& y) {
  return std::visit([](const auto& s) { return s.m(); }, y);
}

QuadExt tree_distance(const TreeSpace& space, const WordStats& w) {
  if (w.m > space.m()) throw DomainError("word uses generators outside the tree");
  QuadExt total;
  for (std::size_t g = 0; g < w.abs_count.size(); ++g) {
    if (w.abs_count[g] == 0) continue;
    total += space.edge_lengths[g] * QuadExt(Rational(w.abs_count[g]));
  }
  return total;
}

QuadExt tree_distance(const TreeSpace& space, const Word& w) { return tree_distance(space, stats_of(w, space.m())); }

QuadExt diamond_distance(const WordStats& w) {
  if (w.m > 2) {
    for (std::size_t g = 2; g < w.abs_count.size(); ++g)
      if (w.abs_count[g] != 0) throw DomainError("diamond complex only has generators a and b");
  }
  if (w.length == 0) return {};
  const BigInt cross = w.length - 1 - w.same_pairs;
  return QuadExt(Rational(2 + 2 * w.same_pairs), Rational(cross));
}

QuadExt diamond_distance(const Word& w) {
  for (Letter x : w.letters())
    if (generator_of(x) > 2) throw DomainError("diamond complex only has generators a and b");
  return diamond_distance(stats_of(w, 2));
}

QuadExt orbit_distance(const HorizontalSpace& y, const WordStats& w) {
  if (const auto* t = std::get_if<TreeSpace>(&y)) return tree_distance(*t, w);
  return diamond_distance(w);
}

QuadExt orbit_distance(const HorizontalSpace& y, const Word& w) {
  return orbit_distance(y, stats_of(w, generator_count(y)));
}

}  // namespace schmearlab
