#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "schmearlab/error.hpp"
#include "schmearlab/spaces.hpp"

namespace schmearlab {

namespace {

// Grid coordinates (u, v) in [0, mesh]^2 of the diamond corner through
// which the geodesic loop of letter x leaves the diamond. The square has
// side sqrt(2); opposite corners belong to inverse letters.
std::pair<int, int> exit_corner(Letter x, int mesh) {
  switch (x) {
    case 1: return {mesh, mesh};
    case -1: return {0, 0};
    case 2: return {mesh, 0};
    case -2: return {0, mesh};
    default: throw DomainError("diamond complex only has generators a and b");
  }
}

struct Offset {
  int du, dv;
  double length;
};

std::vector<Offset> stencil(int mesh) {
  std::vector<Offset> out;
  const double h = std::sqrt(2.0) / mesh;
  for (int du = -2; du <= 2; ++du)
    for (int dv = -2; dv <= 2; ++dv) {
      if ((du == 0 && dv == 0) || std::gcd(std::abs(du), std::abs(dv)) != 1) continue;
      out.push_back({du, dv, h * std::sqrt(static_cast<double>(du * du + dv * dv))});
    }
  return out;
}

}  // namespace

double diamond_distance_oracle(const Word& w, int mesh) {
  if (mesh < 4) throw DomainError("oracle mesh must be >= 4");
  if (w.length() > 12) throw DomainError("oracle is limited to words of length <= 12");
  for (Letter x : w.letters())
    if (generator_of(x) > 2) throw DomainError("diamond complex only has generators a and b");
  if (w.empty()) return 0.0;

  const int side = mesh + 1;
  const int per_diamond = side * side;
  const int diamonds = static_cast<int>(w.length()) + 1;
  const bool odd = mesh % 2 != 0;
  const int grid_nodes = diamonds * per_diamond;
  // Odd meshes have no grid node at the center; add one per end diamond.
  const int source = odd ? grid_nodes : mesh / 2 * side + mesh / 2;
  const int target = odd ? grid_nodes + 1 : (diamonds - 1) * per_diamond + mesh / 2 * side + mesh / 2;
  const int total = grid_nodes + (odd ? 2 : 0);

  // Glue: exit corner of diamond i is identified with entry corner of i+1.
  std::vector<int> twin(static_cast<std::size_t>(grid_nodes), -1);
  for (int i = 0; i + 1 < diamonds; ++i) {
    const Letter x = w[static_cast<std::size_t>(i)];
    auto [eu, ev] = exit_corner(x, mesh);
    auto [nu, nv] = exit_corner(-x, mesh);
    const int a = i * per_diamond + ev * side + eu;
    const int b = (i + 1) * per_diamond + nv * side + nu;
    twin[static_cast<std::size_t>(a)] = b;
    twin[static_cast<std::size_t>(b)] = a;
  }

  const auto offsets = stencil(mesh);
  const double half_cell = std::sqrt(2.0) / mesh * std::sqrt(0.5);
  const int lo = mesh / 2;  // central cell is [lo, lo+1]^2 when odd
  auto is_central_corner = [&](int u, int v) {
    return odd && (u == lo || u == lo + 1) && (v == lo || v == lo + 1);
  };

  std::vector<double> dist(static_cast<std::size_t>(total), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  auto relax = [&](int node, double d) {
    auto& cur = dist[static_cast<std::size_t>(node)];
    if (d < cur) {
      cur = d;
      heap.push({d, node});
    }
  };

  relax(source, 0.0);
  while (!heap.empty()) {
    auto [d, node] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(node)]) continue;
    if (node == target) return d;
    if (node >= grid_nodes) {
      // Source center of an odd mesh: connect to the central cell corners.
      for (int v = lo; v <= lo + 1; ++v)
        for (int u = lo; u <= lo + 1; ++u) relax(v * side + u, d + half_cell);
      continue;
    }
    const int diamond = node / per_diamond;
    const int local = node % per_diamond;
    const int u = local % side;
    const int v = local / side;
    for (const auto& o : offsets) {
      const int nu = u + o.du;
      const int nv = v + o.dv;
      if (nu < 0 || nu > mesh || nv < 0 || nv > mesh) continue;
      relax(diamond * per_diamond + nv * side + nu, d + o.length);
    }
    if (const int t = twin[static_cast<std::size_t>(node)]; t >= 0) relax(t, d);
    if (diamond == diamonds - 1 && is_central_corner(u, v)) relax(target, d + half_cell);
  }
  return dist[static_cast<std::size_t>(target)];
}

}  // namespace schmearlab
