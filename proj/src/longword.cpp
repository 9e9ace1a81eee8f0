#include "schmearlab/longword.hpp"

#include <functional>
#include <mutex>
#include <unordered_map>

#include "schmearlab/error.hpp"

namespace schmearlab {

// ---------------------------------------------------------------------------
// WordStats

WordStats stats_of(const Word& w, int m) {
  WordStats s(m);
  s.length = static_cast<unsigned long>(w.length());
  Letter prev = 0;
  for (Letter x : w.letters()) {
    const auto g = static_cast<std::size_t>(generator_of(x) - 1);
    if (g >= s.abs_count.size()) throw DomainError("letter index out of range");
    s.abs_count[g] += 1;
    s.signed_count[g] += x > 0 ? 1 : -1;
    if (prev != 0 && generator_of(prev) == generator_of(x)) s.same_pairs += 1;
    prev = x;
  }
  if (!w.empty()) {
    s.first = w.front();
    s.last = w.back();
  }
  return s;
}

WordStats stats_concat(const WordStats& u, const WordStats& v) {
  if (u.length == 0) return v;
  if (v.length == 0) return u;
  WordStats s = u;
  s.length += v.length;
  for (std::size_t g = 0; g < s.abs_count.size(); ++g) {
    s.abs_count[g] += v.abs_count[g];
    s.signed_count[g] += v.signed_count[g];
  }
  s.same_pairs += v.same_pairs;
  if (generator_of(u.last) == generator_of(v.first)) s.same_pairs += 1;
  s.last = v.last;
  return s;
}

WordStats stats_power(const WordStats& u, const BigInt& k) {
  if (k == 0 || u.length == 0) return WordStats(u.m);
  WordStats s = u;
  s.length *= k;
  for (std::size_t g = 0; g < s.abs_count.size(); ++g) {
    s.abs_count[g] *= k;
    s.signed_count[g] *= k;
  }
  s.same_pairs *= k;
  if (generator_of(u.last) == generator_of(u.first)) s.same_pairs += k - 1;
  return s;
}

// ---------------------------------------------------------------------------
// Polynomial hashing modulo the Mersenne prime 2^61 - 1.

namespace {

using u64 = std::uint64_t;
constexpr u64 kMod = (u64{1} << 61) - 1;
constexpr std::array<u64, 2> kBase = {0x1b873593a2f1c3dULL % kMod, 0x0cc9e2d51f3a9b7ULL % kMod};

u64 mulmod(u64 a, u64 b) {
  const __uint128_t t = static_cast<__uint128_t>(a) * b;
  u64 r = static_cast<u64>(t & kMod) + static_cast<u64>(t >> 61);
  if (r >= kMod) r -= kMod;
  return r;
}

u64 addmod(u64 a, u64 b) {
  u64 r = a + b;
  if (r >= kMod) r -= kMod;
  return r;
}

u64 powmod(u64 b, u64 e) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, b);
    b = mulmod(b, b);
    e >>= 1;
  }
  return r;
}

u64 big_mod(const BigInt& v, u64 mod) { return mpz_fdiv_ui(v.get_mpz_t(), mod); }

// b^e for b != 0 (mod p); exponents reduce modulo p - 1.
u64 powmod_big(u64 b, const BigInt& e) { return powmod(b, big_mod(e, kMod - 1)); }

// 1 + r + ... + r^(k-1)
u64 geometric(u64 r, const BigInt& k) {
  if (r == 1) return big_mod(k, kMod);
  const u64 num = addmod(powmod_big(r, k), kMod - 1);
  const u64 inv = powmod(addmod(r, kMod - 1), kMod - 2);
  return mulmod(num, inv);
}

u64 letter_value(Letter x) { return x > 0 ? 2 * static_cast<u64>(x) : 2 * static_cast<u64>(-x) + 1; }

using Hash2 = std::array<u64, 2>;

}  // namespace

namespace detail {

using NodePtr = std::shared_ptr<const LongNode>;

struct Part {
  NodePtr node;
  BigInt reps;
};

struct LongNode {
  Letter letter = 0;        // nonzero: a run letter^length
  std::vector<Part> parts;  // nonempty: concatenation of node^reps
  WordStats stats;
  Hash2 hash{};
  Hash2 shift{};  // base^length

  const BigInt& length() const { return stats.length; }
  bool is_run() const { return letter != 0; }
};

namespace {

NodePtr make_run(Letter x, const BigInt& count, int m) {
  auto n = std::make_shared<LongNode>();
  n->letter = x;
  n->stats = WordStats(m);
  const auto g = static_cast<std::size_t>(generator_of(x) - 1);
  n->stats.length = count;
  n->stats.abs_count[g] = count;
  n->stats.signed_count[g] = x > 0 ? count : BigInt(-count);
  n->stats.same_pairs = count - 1;
  n->stats.first = n->stats.last = x;
  for (int i = 0; i < 2; ++i) {
    n->shift[i] = powmod_big(kBase[i], count);
    n->hash[i] = mulmod(letter_value(x), geometric(kBase[i], count));
  }
  return n;
}

void push_part(std::vector<Part>& out, const NodePtr& node, const BigInt& reps, int m) {
  if (!node || reps == 0) return;
  if (!node->is_run() && reps == 1) {
    for (const auto& p : node->parts) push_part(out, p.node, p.reps, m);
    return;
  }
  if (node->is_run()) {
    BigInt count = node->length() * reps;
    if (!out.empty() && out.back().node->is_run() && out.back().node->letter == node->letter) {
      count += out.back().node->length() * out.back().reps;
      out.back() = Part{make_run(node->letter, count, m), 1};
      return;
    }
    out.push_back(Part{reps == 1 ? node : make_run(node->letter, count, m), 1});
    return;
  }
  if (!out.empty() && out.back().node == node) {
    out.back().reps += reps;
    return;
  }
  out.push_back(Part{node, reps});
}

NodePtr make_node(const std::vector<Part>& input, int m) {
  std::vector<Part> parts;
  for (const auto& p : input) push_part(parts, p.node, p.reps, m);
  if (parts.empty()) return nullptr;
  if (parts.size() == 1 && parts[0].reps == 1) return parts[0].node;
  auto n = std::make_shared<LongNode>();
  n->stats = WordStats(m);
  n->hash = {0, 0};
  n->shift = {1, 1};
  for (const auto& p : parts) {
    n->stats = stats_concat(n->stats, stats_power(p.node->stats, p.reps));
    for (int i = 0; i < 2; ++i) {
      const u64 pr = powmod_big(p.node->shift[i], p.reps);
      n->hash[i] = addmod(mulmod(n->hash[i], pr), mulmod(p.node->hash[i], geometric(p.node->shift[i], p.reps)));
      n->shift[i] = mulmod(n->shift[i], pr);
    }
  }
  n->parts = std::move(parts);
  return n;
}

Hash2 hash_prefix(const LongNode& node, BigInt len) {
  if (len == 0) return {0, 0};
  if (len == node.length()) return node.hash;
  Hash2 acc{0, 0};
  if (node.is_run()) {
    for (int i = 0; i < 2; ++i) acc[i] = mulmod(letter_value(node.letter), geometric(kBase[i], len));
    return acc;
  }
  for (const auto& p : node.parts) {
    const BigInt& clen = p.node->length();
    const BigInt block = clen * p.reps;
    if (len >= block) {
      for (int i = 0; i < 2; ++i) {
        acc[i] = addmod(mulmod(acc[i], powmod_big(p.node->shift[i], p.reps)),
                        mulmod(p.node->hash[i], geometric(p.node->shift[i], p.reps)));
      }
      len -= block;
      if (len == 0) return acc;
      continue;
    }
    BigInt q = len / clen;
    BigInt rem = len - q * clen;
    if (q > 0) {
      for (int i = 0; i < 2; ++i) {
        acc[i] = addmod(mulmod(acc[i], powmod_big(p.node->shift[i], q)),
                        mulmod(p.node->hash[i], geometric(p.node->shift[i], q)));
      }
    }
    if (rem > 0) {
      const Hash2 tail = hash_prefix(*p.node, rem);
      for (int i = 0; i < 2; ++i) acc[i] = addmod(mulmod(acc[i], powmod_big(kBase[i], rem)), tail[i]);
    }
    return acc;
  }
  return acc;
}

Letter node_letter_at(const LongNode* node, BigInt pos) {
  while (!node->is_run()) {
    const LongNode* next = nullptr;
    for (const auto& p : node->parts) {
      const BigInt block = p.node->length() * p.reps;
      if (pos < block) {
        pos %= p.node->length();
        next = p.node.get();
        break;
      }
      pos -= block;
    }
    if (!next) throw DomainError("letter position out of range");
    node = next;
  }
  return node->letter;
}

NodePtr node_take(const NodePtr& node, const BigInt& k, int m) {
  if (k <= 0) return nullptr;
  if (k >= node->length()) return node;
  if (node->is_run()) return make_run(node->letter, k, m);
  std::vector<Part> out;
  BigInt left = k;
  for (const auto& p : node->parts) {
    const BigInt& clen = p.node->length();
    const BigInt block = clen * p.reps;
    if (left >= block) {
      out.push_back(p);
      left -= block;
      if (left == 0) break;
      continue;
    }
    BigInt q = left / clen;
    BigInt rem = left - q * clen;
    if (q > 0) out.push_back(Part{p.node, q});
    if (rem > 0) out.push_back(Part{node_take(p.node, rem, m), 1});
    break;
  }
  return make_node(out, m);
}

NodePtr node_drop(const NodePtr& node, const BigInt& k, int m) {
  if (k <= 0) return node;
  if (k >= node->length()) return nullptr;
  if (node->is_run()) return make_run(node->letter, node->length() - k, m);
  std::vector<Part> out;
  BigInt skip = k;
  for (const auto& p : node->parts) {
    if (skip == 0) {
      out.push_back(p);
      continue;
    }
    const BigInt& clen = p.node->length();
    const BigInt block = clen * p.reps;
    if (skip >= block) {
      skip -= block;
      continue;
    }
    BigInt q = skip / clen;
    BigInt rem = skip - q * clen;
    BigInt remaining = p.reps - q;
    if (rem > 0) {
      out.push_back(Part{node_drop(p.node, rem, m), 1});
      remaining -= 1;
    }
    if (remaining > 0) out.push_back(Part{p.node, remaining});
    skip = 0;
  }
  return make_node(out, m);
}

NodePtr node_inverse(const NodePtr& node, int m, std::unordered_map<const LongNode*, NodePtr>& memo) {
  if (auto it = memo.find(node.get()); it != memo.end()) return it->second;
  NodePtr out;
  if (node->is_run()) {
    out = make_run(-node->letter, node->length(), m);
  } else {
    std::vector<Part> parts;
    for (auto it = node->parts.rbegin(); it != node->parts.rend(); ++it)
      parts.push_back(Part{node_inverse(it->node, m, memo), it->reps});
    out = make_node(parts, m);
  }
  memo.emplace(node.get(), out);
  return out;
}

void expand(const LongNode& node, std::vector<Letter>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (node.is_run()) {
    const BigInt room = static_cast<unsigned long>(limit - out.size());
    const BigInt take = node.length() < room ? node.length() : room;
    out.insert(out.end(), take.get_ui(), node.letter);
    return;
  }
  for (const auto& p : node.parts) {
    for (BigInt r = 0; r < p.reps; ++r) {
      if (out.size() >= limit) return;
      expand(*p.node, out, limit);
    }
  }
}

void describe_node(const LongNode& node, std::string& out, std::size_t limit) {
  if (out.size() > limit) return;
  if (node.is_run()) {
    out.push_back(letter_char(node.letter));
    if (node.length() != 1) out += "^" + node.length().get_str();
    return;
  }
  bool first = true;
  for (const auto& p : node.parts) {
    if (!first) out.push_back(' ');
    first = false;
    if (p.reps == 1 || p.node->is_run()) {
      describe_node(*p.node, out, limit);
    } else {
      out.push_back('(');
      describe_node(*p.node, out, limit);
      out += ")^" + p.reps.get_str();
    }
    if (out.size() > limit) return;
  }
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// LongWord

namespace {

const WordStats& empty_stats(int m) {
  static const std::vector<WordStats> cache = [] {
    std::vector<WordStats> v;
    for (int i = 0; i <= 26; ++i) v.emplace_back(i);
    return v;
  }();
  if (m < 0 || m > 26) throw DomainError("generator count out of range");
  return cache[static_cast<std::size_t>(m)];
}

void check_same_m(const LongWord& u, const LongWord& v) {
  if (u.m() != v.m()) throw DomainError("mismatched ambient group");
}

}  // namespace

LongWord LongWord::from_word(const Word& w, int m) {
  std::vector<detail::Part> parts;
  for (std::size_t i = 0; i < w.length();) {
    std::size_t j = i;
    while (j < w.length() && w[j] == w[i]) ++j;
    if (generator_of(w[i]) > m) throw DomainError("letter index out of range");
    parts.push_back(detail::Part{detail::make_run(w[i], static_cast<unsigned long>(j - i), m), 1});
    i = j;
  }
  return LongWord(m, detail::make_node(parts, m));
}

LongWord LongWord::run(Letter x, const BigInt& count, int m) {
  if (x == 0 || generator_of(x) > m) throw DomainError("letter index out of range");
  if (count < 0) return run(-x, -count, m);
  if (count == 0) return LongWord(m);
  return LongWord(m, detail::make_run(x, count, m));
}

const BigInt& LongWord::length() const { return stats().length; }

Letter LongWord::front() const { return root_ ? root_->stats.first : 0; }
Letter LongWord::back() const { return root_ ? root_->stats.last : 0; }

const WordStats& LongWord::stats() const { return root_ ? root_->stats : empty_stats(m_); }

Letter LongWord::letter_at(const BigInt& pos) const {
  if (!root_ || pos < 0 || pos >= length()) throw DomainError("letter position out of range");
  return detail::node_letter_at(root_.get(), pos);
}

Word LongWord::prefix_word(std::size_t k) const {
  std::vector<Letter> out;
  if (root_) detail::expand(*root_, out, k);
  return Word::from_reduced(std::move(out));
}

Word LongWord::to_word(std::size_t max_letters) const {
  if (length() > static_cast<unsigned long>(max_letters))
    throw DomainError("word too long to expand (" + length().get_str() + " letters)");
  return prefix_word(max_letters);
}

LongWord LongWord::inverse() const {
  if (!root_) return *this;
  std::unordered_map<const detail::LongNode*, detail::NodePtr> memo;
  return LongWord(m_, detail::node_inverse(root_, m_, memo));
}

LongWord LongWord::take(const BigInt& k) const {
  if (!root_) return *this;
  return LongWord(m_, detail::node_take(root_, k, m_));
}

LongWord LongWord::drop(const BigInt& k) const {
  if (!root_) return *this;
  return LongWord(m_, detail::node_drop(root_, k, m_));
}

bool LongWord::is_straight() const { return root_ && back() != -front(); }

LongWord LongWord::straighten() const {
  if (is_straight()) return *this;
  if (!root_) return run(1, 1, m_);
  if (m_ < 2) throw DomainError("straighten requires m >= 2");
  const int avoid = generator_of(front());
  for (int i = 0; i < 2 * m_; ++i) {
    const Letter eps = detail::nth_letter(m_, i);
    if (generator_of(eps) != avoid) return *this * run(eps, 1, m_);
  }
  throw DomainError("straighten requires m >= 2");
}

LongWord operator*(const LongWord& u, const LongWord& v) {
  if (u.empty()) return v;
  if (v.empty()) return u;
  check_same_m(u, v);
  const int m = u.m_;
  if (u.back() != -v.front())
    return LongWord(m, detail::make_node({{u.root_, 1}, {v.root_, 1}}, m));
  const BigInt k = common_prefix_length(u.inverse(), v);
  const LongWord left = u.take(u.length() - k);
  const LongWord right = v.drop(k);
  if (left.empty()) return right;
  if (right.empty()) return left;
  return LongWord(m, detail::make_node({{left.root_, 1}, {right.root_, 1}}, m));
}

LongWord LongWord::pow(const BigInt& k) const {
  if (k == 0 || !root_) return LongWord(m_);
  if (k < 0) return inverse().pow(-k);
  if (is_straight()) return LongWord(m_, detail::make_node({{root_, k}}, m_));
  // w = u c u^-1 with c cyclically reduced; w^k = u c^k u^-1.
  const BigInt j = common_prefix_length(inverse(), *this);
  const LongWord u = take(j);
  const LongWord core = drop(j).take(length() - 2 * j);
  const LongWord u_inv = drop(length() - j);
  return LongWord(m_, detail::make_node({{u.root_, 1}, {core.root_, k}, {u_inv.root_, 1}}, m_));
}

std::array<std::uint64_t, 2> LongWord::prefix_hash(const BigInt& k) const {
  if (!root_ || k <= 0) return {0, 0};
  if (k > length()) throw DomainError("prefix length out of range");
  return detail::hash_prefix(*root_, k);
}

std::string LongWord::describe() const {
  if (!root_) return "1";
  constexpr std::size_t kLimit = 4096;
  std::string out;
  detail::describe_node(*root_, out, kLimit);
  if (out.size() > kLimit) {
    out.resize(kLimit);
    out += "...";
  }
  return out;
}

BigInt common_prefix_length(const LongWord& u, const LongWord& v) {
  if (u.empty() || v.empty()) return 0;
  check_same_m(u, v);
  if (u.front() != v.front()) return 0;
  const BigInt& lu = u.length();
  const BigInt& lv = v.length();
  const BigInt shorter = lu < lv ? lu : lv;
  constexpr unsigned long kExact = 1u << 12;
  if (shorter <= kExact) {
    const Word a = u.prefix_word(kExact);
    const Word b = v.prefix_word(kExact);
    return static_cast<unsigned long>(common_prefix_length(a, b));
  }
  if (u.root_ == v.root_) return shorter;
  auto equal_prefix = [&](const BigInt& k) { return u.prefix_hash(k) == v.prefix_hash(k); };
  if (equal_prefix(shorter)) return shorter;
  // Gallop to bracket the mismatch, then bisect. Invariant: prefix lo
  // agrees, prefix hi does not.
  BigInt lo = 1;
  BigInt hi = 2;
  while (hi < shorter && equal_prefix(hi)) {
    lo = hi;
    hi *= 2;
  }
  if (hi > shorter) hi = shorter;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (equal_prefix(mid))
      lo = mid;
    else
      hi = mid;
  }
  if (u.letter_at(lo) == v.letter_at(lo))
    throw DomainError("prefix hash collision while comparing compressed words");
  return lo;
}

// ---------------------------------------------------------------------------
// LongElement

std::string LongElement::describe() const {
  std::string s = "<" + word.describe() + ", (";
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (i) s += ",";
    s += z[i].get_str();
  }
  return s + ")>";
}

LongElement to_long(const GroupElement& g) {
  LongElement out{LongWord::from_word(g.word, g.m), {}};
  for (long long c : g.z) out.z.emplace_back(std::to_string(c));
  return out;
}

LongElement compose(const LongElement& g, const LongElement& h) {
  if (g.z.size() != h.z.size()) throw DomainError("compose: mismatched ambient group");
  LongElement out{g.word * h.word, g.z};
  for (std::size_t i = 0; i < out.z.size(); ++i) out.z[i] += h.z[i];
  return out;
}

LongElement pow(const LongElement& g, const BigInt& k) {
  LongElement out{g.word.pow(k), g.z};
  for (auto& c : out.z) c *= k;
  return out;
}

LongElement straighten(const LongElement& g) { return LongElement{g.word.straighten(), g.z}; }

}  // namespace schmearlab
