#include "schmearlab/actions.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>

#include "schmearlab/error.hpp"

namespace schmearlab {

namespace {

// Rank of a list of vectors over Q(sqrt 2) by Gaussian elimination.
std::size_t rank_of(std::vector<Vec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const QuadExt f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

QuadExt norm_sq(const Vec& v) {
  QuadExt s;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace

ActionSpec::ActionSpec(HorizontalSpace horizontal, int m, int d, std::vector<Vec> vertical_f,
                       std::vector<Vec> vertical_z, std::string name)
    : horizontal_(std::move(horizontal)),
      m_(m),
      d_(d),
      vertical_f_(std::move(vertical_f)),
      vertical_z_(std::move(vertical_z)),
      name_(std::move(name)) {
  if (m_ < 1 || m_ > 26) throw DomainError("action: m must be in [1, 26]");
  if (d_ < 0 || m_ + d_ > 26) throw DomainError("action: d out of range");
  if (generator_count(horizontal_) != m_)
    throw DomainError("action: horizontal space has " + std::to_string(generator_count(horizontal_)) +
                      " generators but m = " + std::to_string(m_));
  if (vertical_f_.size() != static_cast<std::size_t>(m_))
    throw DomainError("action: vertical_f needs one vector per free generator");
  if (vertical_z_.size() != static_cast<std::size_t>(d_))
    throw DomainError("action: vertical_z needs one vector per Z^d generator");
  for (const auto& v : vertical_f_)
    if (v.size() != static_cast<std::size_t>(d_)) throw DomainError("action: vertical_f vectors must have length d");
  for (const auto& v : vertical_z_)
    if (v.size() != static_cast<std::size_t>(d_)) throw DomainError("action: vertical_z vectors must have length d");
  if (rank_of(vertical_z_) != static_cast<std::size_t>(d_))
    throw DomainError("action: vertical_z vectors must be linearly independent");
}

ActionSpec ActionSpec::horizontal_projection() const {
  return ActionSpec(horizontal_, m_, 0, std::vector<Vec>(static_cast<std::size_t>(m_)), {},
                    name_.empty() ? std::string{} : name_ + "/horizontal");
}

QuadExt Displacement::distance_squared() const { return H * H + norm_sq(T); }

Displacement displacement(const ActionSpec& action, const WordStats& w, const std::vector<BigInt>& z) {
  if (w.m != action.m() || z.size() != static_cast<std::size_t>(action.d()))
    throw DomainError("element is not in the acting group F_" + std::to_string(action.m()) + " x Z^" +
                      std::to_string(action.d()));
  Displacement out{orbit_distance(action.horizontal(), w), Vec(static_cast<std::size_t>(action.d()))};
  for (std::size_t g = 0; g < w.signed_count.size(); ++g) {
    if (w.signed_count[g] == 0) continue;
    const QuadExt k{Rational(w.signed_count[g])};
    for (std::size_t i = 0; i < out.T.size(); ++i) out.T[i] += k * action.vertical_f()[g][i];
  }
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (z[j] == 0) continue;
    const QuadExt k{Rational(z[j])};
    for (std::size_t i = 0; i < out.T.size(); ++i) out.T[i] += k * action.vertical_z()[j][i];
  }
  return out;
}

Displacement displacement(const ActionSpec& action, const GroupElement& g) {
  if (g.m != action.m()) throw DomainError("element is not in the acting group");
  std::vector<BigInt> z;
  z.reserve(g.z.size());
  for (long long c : g.z) z.emplace_back(static_cast<long>(c));
  return displacement(action, stats_of(g.word, g.m), z);
}

Displacement displacement(const ActionSpec& action, const LongElement& g) {
  return displacement(action, g.word.stats(), g.z);
}

Vec slope_vector(const Displacement& disp) {
  Vec out(disp.T.size());
  if (disp.H.is_zero()) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = disp.T[i] / disp.H;
  return out;
}

Vec slope_vector(const ActionSpec& action, const GroupElement& g) { return slope_vector(displacement(action, g)); }

namespace {

template <typename F>
void for_each_vector_l1(int d, long long budget, std::vector<long long>& buf, F& visit) {
  if (static_cast<int>(buf.size()) == d) {
    visit(static_cast<const std::vector<long long>&>(buf));
    return;
  }
  for (long long c = -budget; c <= budget; ++c) {
    buf.push_back(c);
    for_each_vector_l1(d, budget - std::llabs(c), buf, visit);
    buf.pop_back();
  }
}

}  // namespace

QieBounds qie_bounds_check(const ActionSpec& action, int radius, BallScope scope) {
  if (radius < 1 || radius > 12) throw DomainError("qie_bounds_check: radius must be in [1, 12]");
  QieBounds out;
  bool have = false;
  const int m = action.m();
  const int d = action.d();
  for_each_reduced_word(m, static_cast<std::size_t>(radius), [&](const Word& w) {
    const WordStats stats = stats_of(w, m);
    const long long budget = scope == BallScope::full ? radius - static_cast<long long>(w.length()) : 0;
    std::vector<long long> buf;
    auto visit = [&](const std::vector<long long>& z) {
      const GroupElement g{m, w, z};
      const long long len = word_metric_length(g);
      if (len == 0) return;
      std::vector<BigInt> zb;
      for (long long c : z) zb.emplace_back(static_cast<long>(c));
      const Displacement disp = displacement(action, stats, zb);
      const QuadExt ratio_sq = disp.distance_squared() / QuadExt(static_cast<long>(len * len));
      ++out.elements;
      if (!have || ratio_sq < out.ratio_sq_low) {
        out.ratio_sq_low = ratio_sq;
        out.witness_low = g;
      }
      if (!have || ratio_sq > out.ratio_sq_high) {
        out.ratio_sq_high = ratio_sq;
        out.witness_high = g;
      }
      have = true;
    };
    for_each_vector_l1(d, budget, buf, visit);
  });
  if (!have) throw DomainError("qie_bounds_check: ball contains no nontrivial element");
  out.lambda_low = std::sqrt(to_double(out.ratio_sq_low));
  out.lambda_high = std::sqrt(to_double(out.ratio_sq_high));
  return out;
}

void require_compatible(const ActionSpec& a1, const ActionSpec& a2) {
  if (a1.m() != a2.m() || a1.d() != a2.d())
    throw DomainError("the two actions must be actions of the same group F_m x Z^d");
}

PairFunctionals pair_functionals(const ActionSpec& a1, const ActionSpec& a2, const GroupElement& g) {
  require_compatible(a1, a2);
  if (g.word.empty()) throw DomainError("nu undefined: the word part of the element is trivial");
  const Displacement d1 = displacement(a1, g);
  const Displacement d2 = displacement(a2, g);
  return PairFunctionals{d2.H / d1.H, d2.distance_squared() / d1.distance_squared(), slope_vector(d1),
                         slope_vector(d2)};
}

namespace presets {

namespace {

Vec scalar(long v) { return Vec{QuadExt(v)}; }

ActionSpec rank_one(HorizontalSpace y, long b_lift, std::string name) {
  return ActionSpec(std::move(y), 2, 1, {scalar(0), scalar(b_lift)}, {scalar(1)}, std::move(name));
}

}  // namespace

ActionSpec product() { return rank_one(unit_tree(2), 0, "product"); }
ActionSpec twisted() { return rank_one(unit_tree(2), 1, "twisted"); }
ActionSpec stretched() { return rank_one(make_tree({QuadExt(1), QuadExt(2)}), 0, "stretched"); }
ActionSpec diamond() { return rank_one(DiamondSpace{}, 0, "diamond"); }
ActionSpec star() { return rank_one(DiamondSpace{}, 1, "star"); }
ActionSpec gamma() { return ActionSpec(unit_tree(2), 2, 0, {{}, {}}, {}, "gamma"); }
ActionSpec gamma_prime() {
  return ActionSpec(make_tree({QuadExt(1), QuadExt(2)}), 2, 0, {{}, {}}, {}, "gamma_prime");
}
ActionSpec diamond_f2() { return ActionSpec(DiamondSpace{}, 2, 0, {{}, {}}, {}, "diamond_f2"); }

}  // namespace presets

}  // namespace schmearlab
