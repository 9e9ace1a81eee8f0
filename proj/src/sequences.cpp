#include "schmearlab/sequences.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "schmearlab/error.hpp"

namespace schmearlab {

// ---------------------------------------------------------------- polynomials

ExponentPoly ExponentPoly::constant(long long c) { return monomial(c, 0); }

ExponentPoly ExponentPoly::monomial(long long c, int degree) {
  if (degree < 0 || degree > 4) throw DomainError("exponent polynomials have degree <= 4");
  ExponentPoly p;
  p.coeffs[static_cast<std::size_t>(degree)] = c;
  return p;
}

int ExponentPoly::degree() const {
  for (int i = 4; i >= 0; --i)
    if (coeffs[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

long long ExponentPoly::leading() const {
  const int deg = degree();
  return deg < 0 ? 0 : coeffs[static_cast<std::size_t>(deg)];
}

BigInt ExponentPoly::operator()(const BigInt& n) const {
  BigInt acc = 0;
  for (int i = 4; i >= 0; --i) {
    acc *= n;
    acc += BigInt(std::to_string(coeffs[static_cast<std::size_t>(i)]));
  }
  return acc;
}

ExponentPoly ExponentPoly::operator-() const {
  ExponentPoly out = *this;
  for (auto& c : out.coeffs) c = -c;
  return out;
}

ExponentPoly operator+(const ExponentPoly& p, const ExponentPoly& q) {
  ExponentPoly out;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = p.coeffs[i] + q.coeffs[i];
  return out;
}

std::string ExponentPoly::to_string() const {
  if (degree() < 0) return "0";
  std::string out;
  for (int i = 0; i <= 4; ++i) {
    long long c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!out.empty()) {
      out += c < 0 ? " - " : " + ";
      c = std::llabs(c);
    } else if (c < 0 && i > 0) {
      out += "-";
      c = -c;
    }
    if (i == 0 || c != 1) out += std::to_string(c);
    if (i >= 1) out += "n";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

// ------------------------------------------------------------------ families

namespace {

std::string describe_pattern(const GroupElement& g) {
  std::string s;
  for (Letter x : g.word.letters()) s.push_back(letter_char(x));
  for (std::size_t i = 0; i < g.z.size(); ++i) {
    const long long c = g.z[i];
    const char up = static_cast<char>('A' + g.m + static_cast<int>(i));
    const char lo = static_cast<char>('a' + g.m + static_cast<int>(i));
    for (long long k = 0; k < std::llabs(c); ++k) s.push_back(c > 0 ? lo : up);
  }
  if (s.empty()) return "1";
  return s.size() == 1 ? s : "(" + s + ")";
}

class BlockFamily final : public FamilyImpl {
 public:
  BlockFamily(int m, int d, std::vector<Block> blocks, std::string label, std::optional<long long> n0)
      : m_(m), d_(d) {
    for (auto& b : blocks) {
      if (b.pattern.m != m || b.pattern.z.size() != static_cast<std::size_t>(d))
        throw DomainError("family block does not lie in F_" + std::to_string(m) + " x Z^" + std::to_string(d));
      if (b.exponent.degree() < 0) continue;
      if (b.exponent.leading() < 0) {
        b.pattern = inverse(b.pattern);
        b.exponent = -b.exponent;
      }
      blocks_.push_back(std::move(b));
    }
    label_ = label.empty() ? default_label() : std::move(label);
    n0_ = n0 ? *n0 : least_valid_n();
    if (n0_ < 0) throw DomainError("n0 must be nonnegative");
  }

  int m() const override { return m_; }
  int d() const override { return d_; }
  long long n0() const override { return n0_; }
  std::string label() const override { return label_; }
  bool has_vertical_part() const override {
    for (const auto& b : blocks_)
      for (long long c : b.pattern.z)
        if (c != 0) return true;
    return false;
  }

  LongElement evaluate(long long n) const override {
    LongElement out{LongWord(m_), std::vector<BigInt>(static_cast<std::size_t>(d_))};
    const BigInt nn(std::to_string(n));
    for (const auto& b : blocks_) {
      const BigInt k = b.exponent(nn);
      if (k < 0)
        throw DomainError("exponent " + b.exponent.to_string() + " is negative at n = " + std::to_string(n));
      out = compose(out, pow(to_long(b.pattern), k));
    }
    return out;
  }

  const std::vector<Block>& blocks() const { return blocks_; }

 private:
  std::string default_label() const {
    std::string s;
    for (const auto& b : blocks_) {
      if (!s.empty()) s += " ";
      s += describe_pattern(b.pattern);
      const std::string e = b.exponent.to_string();
      if (e == "1") continue;
      s += e.size() == 1 ? "^" + e : "^{" + e + "}";
    }
    return s.empty() ? "1" : s;
  }

  // Least n >= 1 with p(k) >= 0 for every block and every k >= n. Beyond
  // the Cauchy bound the leading (positive) term dominates.
  long long least_valid_n() const {
    long long n0 = 1;
    for (const auto& b : blocks_) {
      const auto& c = b.exponent.coeffs;
      const int deg = b.exponent.degree();
      if (deg <= 0) continue;
      long double bound = 0;
      for (int i = 0; i < deg; ++i)
        bound = std::max(bound, std::fabs(static_cast<long double>(c[static_cast<std::size_t>(i)])) /
                                    static_cast<long double>(c[static_cast<std::size_t>(deg)]));
      const long long top = static_cast<long long>(bound) + 2;
      long long n = top;
      while (n > 1 && b.exponent(BigInt(std::to_string(n - 1))) >= 0) --n;
      n0 = std::max(n0, n);
    }
    return n0;
  }

  int m_;
  int d_;
  std::vector<Block> blocks_;
  std::string label_;
  long long n0_ = 1;
};

}  // namespace

SequenceFamily::SequenceFamily(int m, int d, std::vector<Block> blocks, std::string label,
                               std::optional<long long> n0)
    : impl_(std::make_shared<BlockFamily>(m, d, std::move(blocks), std::move(label), n0)) {}

SequenceFamily::SequenceFamily(std::shared_ptr<const FamilyImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw DomainError("null family");
}

const std::vector<Block>* SequenceFamily::blocks() const {
  const auto* b = dynamic_cast<const BlockFamily*>(impl_.get());
  return b ? &b->blocks() : nullptr;
}

LongElement SequenceFamily::evaluate(long long n) const {
  if (n < impl_->n0())
    throw DomainError("evaluate: n = " + std::to_string(n) + " is below n0 = " + std::to_string(impl_->n0()) +
                      " for " + impl_->label());
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(n); it != cache_->values.end()) return it->second;
  }
  LongElement value = impl_->evaluate(n);
  std::lock_guard lock(cache_->mutex);
  return cache_->values.emplace(n, std::move(value)).first->second;
}

// ------------------------------------------------------------ compactification

Compactification::Compactification(ActionSpec action) { actions_.push_back(std::move(action)); }

Compactification::Compactification(ActionSpec a1, ActionSpec a2) {
  require_compatible(a1, a2);
  actions_.push_back(std::move(a1));
  actions_.push_back(std::move(a2));
}

std::string Compactification::name() const {
  auto nm = [](const ActionSpec& a) { return a.name().empty() ? std::string("action") : a.name(); };
  if (!is_pair()) return nm(actions_[0]);
  return "(" + nm(actions_[0]) + ", " + nm(actions_[1]) + ")";
}

Compactification Compactification::horizontal_projection() const {
  if (!is_pair()) return Compactification(actions_[0].horizontal_projection());
  return Compactification(actions_[0].horizontal_projection(), actions_[1].horizontal_projection());
}

std::vector<long long> default_schedule() {
  std::vector<long long> s;
  for (int k = 4; k <= 12; ++k) s.push_back(1LL << k);
  return s;
}

std::string to_string(LimitStatus s) {
  switch (s) {
    case LimitStatus::converged: return "converged";
    case LimitStatus::diverged_to_dE: return "diverged_to_dE";
    case LimitStatus::not_cauchy: return "not_cauchy";
  }
  return "unknown";
}

// ------------------------------------------------------------------ numerics

double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v) {
  if (h.size() != v.size() || h.empty()) throw DomainError("extrapolate_to_zero: bad input");
  std::vector<double> p = v;
  const std::size_t k = p.size();
  for (std::size_t level = 1; level < k; ++level)
    for (std::size_t i = 0; i + level < k; ++i)
      p[i] = (h[i + level] * p[i] - h[i] * p[i + 1]) / (h[i + level] - h[i]);
  return p[0];
}

bool prefix_growth_holds(const std::vector<BigInt>& prefix, const std::vector<long long>& schedule) {
  if (prefix.size() < 2 || prefix.size() > schedule.size()) return false;
  for (std::size_t j = 1; j < prefix.size(); ++j)
    if (prefix[j] < prefix[j - 1]) return false;
  for (std::size_t j = prefix.size() - 2; j < prefix.size(); ++j)
    if (2 * prefix[j] < BigInt(std::to_string(schedule[j]))) return false;
  return true;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("SCHMEARLAB_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t)
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

// ------------------------------------------------------------------- limits

namespace {

double ratio_sqrt(const QuadExt& num_sq, const QuadExt& den_sq) { return std::sqrt(to_double(num_sq / den_sq)); }

// Growth exponent of a positive quantity x between schedule points.
double growth_exponent(const QuadExt& x_sq_hi, const QuadExt& x_sq_lo, long long n_hi, long long n_lo) {
  return 0.5 * std::log(to_double(x_sq_hi / x_sq_lo)) / std::log(static_cast<double>(n_hi) / n_lo);
}

struct PointData {
  std::vector<Displacement> disp;  // per action
  QuadExt dist_sq;                 // squared distance in the product
  QuadExt vertical_sq;             // |(T_1, ..., T_k)|^2
};

QuadExt vec_norm_sq(const Vec& v) {
  QuadExt s;
  for (const auto& x : v) s += x * x;
  return s;
}

// Neville estimates of each column from the windows ending at the last and
// the second-to-last point.
void window_estimates(const std::vector<long long>& schedule, const std::vector<std::vector<double>>& cols,
                      std::vector<double>& last, std::vector<double>& prev) {
  const std::size_t K = schedule.size();
  auto window = [&](std::size_t end, const std::vector<double>& col) {
    std::vector<double> h, v;
    for (std::size_t i = end - 2; i <= end; ++i) {
      h.push_back(1.0 / static_cast<double>(schedule[i]));
      v.push_back(col[i]);
    }
    return extrapolate_to_zero(h, v);
  };
  last.clear();
  prev.clear();
  for (const auto& col : cols) {
    last.push_back(window(K - 1, col));
    prev.push_back(window(K - 2, col));
  }
}

bool settled(const std::vector<double>& last, const std::vector<double>& prev, double tol, bool relative) {
  for (std::size_t i = 0; i < last.size(); ++i) {
    const double scale = relative ? std::max(1.0, std::fabs(last[i])) : 1.0;
    if (!(std::fabs(last[i] - prev[i]) < tol * scale)) return false;
  }
  return true;
}

void validate_schedule(const std::vector<long long>& schedule, long long n0, double tol) {
  if (schedule.size() < 4) throw DomainError("schedule too short: need at least 4 points");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i] <= schedule[i - 1]) throw DomainError("schedule must be strictly increasing");
  if (schedule.front() < std::max(1LL, n0))
    throw DomainError("schedule starts below the family's validity threshold n0 = " + std::to_string(n0));
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
}

}  // namespace

LimitReport limit_in_boundary(const SequenceFamily& fam, const Compactification& c,
                              const std::vector<long long>& schedule, double tol) {
  validate_schedule(schedule, fam.n0(), tol);
  if (fam.m() != c.m() || fam.d() != c.d())
    throw DomainError("family " + fam.label() + " is not in the group acting on " + c.name());
  const std::size_t K = schedule.size();
  const auto& actions = c.actions();

  LimitReport rep;
  rep.family = fam.label();

  std::vector<LongElement> elems(K);
  std::vector<PointData> pts(K);
  parallel_for(K, [&](std::size_t k) {
    elems[k] = fam.evaluate(schedule[k]);
    PointData p;
    for (const auto& a : actions) {
      p.disp.push_back(displacement(a, elems[k]));
      p.dist_sq += p.disp.back().distance_squared();
      p.vertical_sq += vec_norm_sq(p.disp.back().T);
    }
    pts[k] = std::move(p);
  });

  // Unbounded orbit: distance grows at least like sqrt(n) over the last two
  // steps.
  for (std::size_t k = K - 2; k < K; ++k) {
    if (pts[k - 1].dist_sq.is_zero() || pts[k].dist_sq <= pts[k - 1].dist_sq ||
        growth_exponent(pts[k].dist_sq, pts[k - 1].dist_sq, schedule[k], schedule[k - 1]) < 0.5) {
      rep.reason = "orbit points stay bounded";
      for (std::size_t i = 0; i < K; ++i)
        rep.evidence.push_back({schedule[i], {std::sqrt(to_double(pts[i].dist_sq))}});
      rep.fields = {"d"};
      return rep;
    }
  }

  // Boundary of the Euclidean factor: H1/|T| -> 0.
  bool vertical = true;
  for (std::size_t k = K - 3; k < K; ++k)
    if (pts[k].vertical_sq.is_zero()) vertical = false;
  if (vertical) {
    bool pure = pts[K - 1].disp[0].H.is_zero() && pts[K - 2].disp[0].H.is_zero();
    bool decays = true;
    if (!pure) {
      for (std::size_t k = K - 2; k < K; ++k) {
        const QuadExt hi = pts[k].disp[0].H * pts[k].disp[0].H / pts[k].vertical_sq;
        const QuadExt lo = pts[k - 1].disp[0].H * pts[k - 1].disp[0].H / pts[k - 1].vertical_sq;
        if (lo.is_zero() || hi.is_zero() || -growth_exponent(hi, lo, schedule[k], schedule[k - 1]) < 0.5)
          decays = false;
      }
      // H/|T| shrinking over the schedule is not enough: its extrapolated
      // value has to vanish too (a^{10000n} b^{n^2} c^{n^2} has H/|T| -> 1).
      if (decays) {
        std::vector<double> h, q;
        for (std::size_t i = K - 3; i < K; ++i) {
          h.push_back(1.0 / static_cast<double>(schedule[i]));
          q.push_back(ratio_sqrt(pts[i].disp[0].H * pts[i].disp[0].H, pts[i].vertical_sq));
        }
        if (!(std::fabs(extrapolate_to_zero(h, q)) < tol * std::max(1.0, q.back()))) decays = false;
      }
    }
    if (pure || decays) {
      std::vector<std::vector<double>> cols;
      for (const auto& disp : pts[0].disp)
        for (std::size_t j = 0; j < disp.T.size(); ++j) {
          rep.fields.push_back("u[" + std::to_string(rep.fields.size()) + "]");
          cols.emplace_back();
        }
      rep.fields.push_back("H/|T|");
      cols.emplace_back();
      for (std::size_t k = 0; k < K; ++k) {
        Sample s{schedule[k], {}};
        std::size_t col = 0;
        for (const auto& disp : pts[k].disp)
          for (const auto& t : disp.T) {
            const double u = pts[k].vertical_sq.is_zero()
                                 ? 0.0
                                 : (t.sign() < 0 ? -1.0 : 1.0) * ratio_sqrt(t * t, pts[k].vertical_sq);
            cols[col++].push_back(u);
            s.values.push_back(u);
          }
        const double q = pts[k].vertical_sq.is_zero()
                             ? INFINITY
                             : ratio_sqrt(pts[k].disp[0].H * pts[k].disp[0].H, pts[k].vertical_sq);
        cols[col].push_back(q);
        s.values.push_back(q);
        rep.evidence.push_back(std::move(s));
      }
      std::vector<double> last, prev;
      cols.pop_back();
      window_estimates(schedule, cols, last, prev);
      rep.estimates = last;
      rep.estimates.push_back(0.0);
      if (settled(last, prev, tol, false)) {
        rep.status = LimitStatus::diverged_to_dE;
        double norm = 0;
        for (double x : last) norm += x * x;
        norm = std::sqrt(norm);
        for (double x : last) rep.direction.push_back(norm > 0 ? x / norm : 0.0);
      } else {
        rep.reason = "direction in the Euclidean boundary does not settle";
      }
      return rep;
    }
  }

  // Horizontal limit: tree direction from prefix growth, then slopes.
  rep.prefix_lengths.resize(K - 1);
  parallel_for(K - 1, [&](std::size_t k) {
    rep.prefix_lengths[k] = common_prefix_length(elems[k].word, elems[k + 1].word);
  });
  {
    std::size_t take = 32;
    if (fits_int64(rep.prefix_lengths.back()) && rep.prefix_lengths.back().get_si() < 32)
      take = static_cast<std::size_t>(rep.prefix_lengths.back().get_si());
    rep.eta_prefix = elems[K - 1].word.prefix_word(take);
  }

  std::vector<std::vector<double>> cols;
  for (std::size_t i = 0; i < actions.size(); ++i)
    for (int j = 0; j < actions[i].d(); ++j) {
      rep.fields.push_back((i == 0 ? "m[" : "m2[") + std::to_string(j) + "]");
      cols.emplace_back();
    }
  if (c.is_pair()) {
    rep.fields.push_back("nu");
    cols.emplace_back();
  }
  for (std::size_t k = 0; k < K; ++k) {
    Sample s{schedule[k], {}};
    std::size_t col = 0;
    for (const auto& disp : pts[k].disp)
      for (const auto& x : slope_vector(disp)) {
        const double v = to_double(x);
        cols[col++].push_back(v);
        s.values.push_back(v);
      }
    if (c.is_pair()) {
      const double nu = to_double(pts[k].disp[1].H / pts[k].disp[0].H);
      cols[col].push_back(nu);
      s.values.push_back(nu);
    }
    rep.evidence.push_back(std::move(s));
  }
  std::vector<double> last, prev;
  window_estimates(schedule, cols, last, prev);
  rep.estimates = last;

  std::size_t col = 0;
  for (int j = 0; j < actions[0].d(); ++j) rep.m_limit.push_back(last[col++]);
  if (c.is_pair()) {
    for (int j = 0; j < actions[1].d(); ++j) rep.m2_limit.push_back(last[col++]);
    rep.nu_limit = last[col];
    double n1 = 1, n2 = 1;
    for (double x : rep.m_limit) n1 += x * x;
    for (double x : rep.m2_limit) n2 += x * x;
    rep.M_limit = rep.nu_limit * std::sqrt(n2 / n1);
  } else {
    double n1 = 0;
    for (double x : rep.m_limit) n1 += x * x;
    rep.M_limit = std::sqrt(n1);
  }

  const std::vector<long long> lower(schedule.begin(), schedule.end() - 1);
  if (!prefix_growth_holds(rep.prefix_lengths, lower)) {
    rep.reason = "tree direction does not stabilize (common prefixes do not grow)";
  } else if (!settled(last, prev, tol, true)) {
    rep.reason = "slope coordinates do not settle within the tolerance";
  } else {
    rep.status = LimitStatus::converged;
  }
  return rep;
}

SameLimitReport same_limit(const SequenceFamily& f1, const LimitReport& r1, const SequenceFamily& f2,
                           const LimitReport& r2, const std::vector<long long>& schedule, double tol) {
  for (const auto* p : {&r1, &r2})
    if (p->status == LimitStatus::not_cauchy)
      throw DomainError("inconclusive: " + p->family + " does not converge (" + p->reason + ")");
  SameLimitReport out;
  out.first = r1;
  out.second = r2;
  if (r1.status != r2.status) {
    out.reason = "only one limit lies in the boundary of the Euclidean factor";
    return out;
  }
  if (r1.status == LimitStatus::diverged_to_dE) {
    for (std::size_t i = 0; i < r1.direction.size(); ++i)
      if (!(std::fabs(r1.direction[i] - r2.direction[i]) < tol)) {
        out.reason = "different directions in the Euclidean boundary";
        return out;
      }
    out.same = true;
    return out;
  }
  out.cross_prefix.resize(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t k) {
    out.cross_prefix[k] = common_prefix_length(f1.evaluate(schedule[k]).word, f2.evaluate(schedule[k]).word);
  });
  if (!prefix_growth_holds(out.cross_prefix, schedule)) {
    out.reason = "different tree directions";
    return out;
  }
  for (std::size_t i = 0; i < r1.estimates.size(); ++i) {
    const double x = r1.estimates[i];
    const double y = r2.estimates[i];
    if (!(std::fabs(x - y) < tol * std::max({1.0, std::fabs(x), std::fabs(y)}))) {
      out.reason = "different " + r1.fields[i] + " limits";
      return out;
    }
  }
  out.same = true;
  return out;
}

SameLimitReport same_limit(const SequenceFamily& f1, const SequenceFamily& f2, const Compactification& c,
                           const std::vector<long long>& schedule, double tol) {
  const LimitReport r1 = limit_in_boundary(f1, c, schedule, tol);
  const LimitReport r2 = limit_in_boundary(f2, c, schedule, tol);
  return same_limit(f1, r1, f2, r2, schedule, tol);
}

}  // namespace schmearlab
