#pragma once

// Independent reference computations used by the tests. None of these call
// into the library: words are plain int vectors (+g for generator g, -g for
// its inverse), exact values are pairs of GMP rationals (a, b) for a + b r2,
// and reals are long doubles or 256-bit GMP floats.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Letters = std::vector<int>;

struct Q2 {
  mpq_class a = 0;
  mpq_class b = 0;
};

inline Q2 add(const Q2& x, const Q2& y) { return {x.a + y.a, x.b + y.b}; }
inline Q2 mul(const Q2& x, const Q2& y) { return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a}; }

// sqrt(2) to 256 bits.
inline mpf_class sqrt2_hp() {
  mpf_class two(2, 256), r(0, 256);
  mpf_sqrt(r.get_mpf_t(), two.get_mpf_t());
  return r;
}

inline mpf_class value_hp(const Q2& x) {
  mpf_class a(x.a, 256), b(x.b, 256);
  return a + b * sqrt2_hp();
}

inline long double value(const Q2& x) {
  return static_cast<long double>(x.a.get_d()) + static_cast<long double>(x.b.get_d()) * std::sqrt(2.0L);
}

// Stack-based free reduction.
inline Letters reduce(const Letters& in) {
  Letters out;
  for (int x : in) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Letters concat(Letters u, const Letters& v) {
  u.insert(u.end(), v.begin(), v.end());
  return reduce(u);
}

inline Letters invert(const Letters& w) {
  Letters out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline Letters power(const Letters& w, long long k) {
  Letters out;
  const Letters base = k < 0 ? invert(w) : w;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) out = concat(out, base);
  return out;
}

inline Letters run(int x, long long k) { return Letters(static_cast<std::size_t>(k), x); }

inline std::size_t lcp(const Letters& u, const Letters& v) {
  std::size_t i = 0;
  while (i < u.size() && i < v.size() && u[i] == v[i]) ++i;
  return i;
}

// Weighted tree length, lengths[g-1] given exactly.
inline Q2 tree_length(const Letters& w, const std::vector<Q2>& lengths) {
  Q2 s;
  for (int x : w) s = add(s, lengths[static_cast<std::size_t>(std::abs(x) - 1)]);
  return s;
}

// Diamond orbit distance, accumulated letter by letter: entering the first
// diamond costs 1, every glue vertex to the next one costs a chord (2 if
// the two letters share a generator, r2 otherwise), leaving costs 1.
inline Q2 diamond_length(const Letters& w) {
  if (w.empty()) return {};
  Q2 s{2, 0};
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (std::abs(w[i]) == std::abs(w[i - 1]))
      s.a += 2;
    else
      s.b += 1;
  }
  return s;
}

// Every reduced word over m generators of length <= L.
inline std::vector<Letters> all_reduced(int m, std::size_t L) {
  std::vector<Letters> out{{}};
  std::vector<Letters> frontier{{}};
  for (std::size_t len = 1; len <= L; ++len) {
    std::vector<Letters> next;
    for (const auto& w : frontier)
      for (int g = 1; g <= m; ++g)
        for (int s : {1, -1}) {
          const int x = s * g;
          if (!w.empty() && w.back() == -x) continue;
          Letters v = w;
          v.push_back(x);
          next.push_back(v);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

inline std::string spell(const Letters& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int x : w) s.push_back(static_cast<char>(x > 0 ? 'a' + x - 1 : 'A' - x - 1));
  return s;
}

// Random reduced word of exact length len.
inline Letters random_word(std::mt19937_64& rng, int m, std::size_t len) {
  std::uniform_int_distribution<int> gen(1, m), sgn(0, 1);
  Letters w;
  while (w.size() < len) {
    const int x = gen(rng) * (sgn(rng) ? 1 : -1);
    if (!w.empty() && w.back() == -x) continue;
    w.push_back(x);
  }
  return w;
}

inline mpq_class random_rational(std::mt19937_64& rng, int range = 20) {
  std::uniform_int_distribution<int> num(-range, range), den(1, range);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

}  // namespace oracle
