#pragma once

// Sequence families g_n in F_m x Z^d, their exact evaluation, and the
// extraction of limits of g_n x0 in visual boundaries.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schmearlab/actions.hpp"
#include "schmearlab/exactnum.hpp"
#include "schmearlab/freegroup.hpp"
#include "schmearlab/longword.hpp"

namespace schmearlab {

// Integer polynomial c0 + c1 n + ... + c4 n^4.
struct ExponentPoly {
  std::array<long long, 5> coeffs{};

  static ExponentPoly constant(long long c);
  static ExponentPoly monomial(long long c, int degree);

  int degree() const;  // -1 for the zero polynomial
  bool is_constant() const { return degree() <= 0; }
  long long leading() const;
  BigInt operator()(const BigInt& n) const;
  ExponentPoly operator-() const;
  friend ExponentPoly operator+(const ExponentPoly& p, const ExponentPoly& q);
  friend bool operator==(const ExponentPoly&, const ExponentPoly&) = default;

  // "n^2", "n + n^2", "-3", "-1 + 2n^2".
  std::string to_string() const;
};

struct Block {
  GroupElement pattern;
  ExponentPoly exponent;
};

// Anything that produces one group element per n >= n0. Polynomial block
// families live in this module; averaged families are built by the schmear
// module.
class FamilyImpl {
 public:
  virtual ~FamilyImpl() = default;
  virtual int m() const = 0;
  virtual int d() const = 0;
  virtual long long n0() const = 0;
  virtual std::string label() const = 0;
  // True when some element of the family may have a nonzero Z^d part.
  virtual bool has_vertical_part() const = 0;
  virtual LongElement evaluate(long long n) const = 0;
};

class SequenceFamily {
 public:
  // Blocks whose exponent has a negative leading coefficient are rewritten
  // as (pattern^-1, -p). When n0 is not given it is the least n >= 1 from
  // which on every exponent is nonnegative.
  SequenceFamily(int m, int d, std::vector<Block> blocks, std::string label = {},
                 std::optional<long long> n0 = std::nullopt);
  explicit SequenceFamily(std::shared_ptr<const FamilyImpl> impl);

  int m() const { return impl_->m(); }
  int d() const { return impl_->d(); }
  long long n0() const { return impl_->n0(); }
  std::string label() const { return impl_->label(); }
  bool has_vertical_part() const { return impl_->has_vertical_part(); }

  // Null for families that are not polynomial block families.
  const std::vector<Block>* blocks() const;

  // Memoized; throws DomainError for n < n0.
  LongElement evaluate(long long n) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<long long, LongElement> values;
  };
  std::shared_ptr<const FamilyImpl> impl_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

inline LongElement evaluate(const SequenceFamily& fam, long long n) { return fam.evaluate(n); }

// Family syntax: juxtaposed terms atom[^exponent]. Atoms are letters (the
// first m lowercase letters generate F_m, the next d generate Z^d, capitals
// are inverses), "1", or parenthesised constant expressions. Exponents are
// integers, "n", or braced integer polynomials in n such as {n+n^2},
// {-n^2}, {2n^2}. Throws SyntaxError with a 1-based column.
SequenceFamily parse_family(std::string_view text, int m, int d);
// A family with only constant exponents, evaluated.
LongElement parse_element(std::string_view text, int m, int d);
// One family per line; blank lines and lines starting with '#' are skipped.
// SyntaxError positions refer to the whole text.
std::vector<SequenceFamily> parse_family_list(std::string_view text, int m, int d);

// The boundary in which limits are taken: either the visual boundary of
// one action, or the limset of the diagonal action on X1 x X2 (schmear
// coordinates).
class Compactification {
 public:
  Compactification(ActionSpec action);  // NOLINT(google-explicit-constructor)
  Compactification(ActionSpec a1, ActionSpec a2);

  bool is_pair() const { return actions_.size() == 2; }
  const std::vector<ActionSpec>& actions() const { return actions_; }
  int m() const { return actions_[0].m(); }
  int d() const { return actions_[0].d(); }
  std::string name() const;
  Compactification horizontal_projection() const;

 private:
  std::vector<ActionSpec> actions_;
};

std::vector<long long> default_schedule();  // 2^4, ..., 2^12
inline constexpr double kDefaultTol = 1e-4;

enum class LimitStatus { converged, diverged_to_dE, not_cauchy };
std::string to_string(LimitStatus s);

struct Sample {
  long long n = 0;
  std::vector<double> values;  // in the order of LimitReport::fields
};

struct LimitReport {
  LimitStatus status = LimitStatus::not_cauchy;
  std::string family;
  std::string reason;  // why the sequence was not classified as converging

  // Horizontal limits: the stabilized tree direction (first letters) and
  // the common-prefix lengths of consecutive schedule words.
  Word eta_prefix;
  std::vector<BigInt> prefix_lengths;

  std::vector<double> m_limit;   // slope vector for the (first) action
  std::vector<double> m2_limit;  // second action, pairs only
  double nu_limit = 1.0;         // H2/H1, pairs only
  double M_limit = 0.0;          // pairs: d2/d1; single action: |m|

  // Limits in the boundary of the Euclidean factor: unit vector of T
  // (of (T1, T2) for pairs).
  std::vector<double> direction;

  std::vector<std::string> fields;
  std::vector<Sample> evidence;
  std::vector<double> estimates;  // extrapolated values of fields
};

// Requires a strictly increasing schedule of length >= 4 with all n >= n0,
// and tol > 0.
LimitReport limit_in_boundary(const SequenceFamily& fam, const Compactification& c,
                              const std::vector<long long>& schedule = default_schedule(),
                              double tol = kDefaultTol);

struct SameLimitReport {
  bool same = false;
  std::string reason;
  LimitReport first;
  LimitReport second;
  std::vector<BigInt> cross_prefix;  // LCP of the two words at each schedule point
};

// Throws DomainError("inconclusive: ...") when either family fails to
// converge.
SameLimitReport same_limit(const SequenceFamily& f1, const SequenceFamily& f2, const Compactification& c,
                           const std::vector<long long>& schedule = default_schedule(), double tol = kDefaultTol);
// Same, reusing already computed reports.
SameLimitReport same_limit(const SequenceFamily& f1, const LimitReport& r1, const SequenceFamily& f2,
                           const LimitReport& r2, const std::vector<long long>& schedule, double tol);

// Value at h = 0 of the polynomial through (h[i], v[i]) (Neville).
double extrapolate_to_zero(const std::vector<double>& h, const std::vector<double>& v);

// Growth rule for tree directions: the prefix lengths p_j (taken at
// schedule points n_j) are nondecreasing, and the last two satisfy
// p_j >= n_j / 2.
bool prefix_growth_holds(const std::vector<BigInt>& prefix, const std::vector<long long>& schedule);

// Runs fn(0..count-1) on up to SCHMEARLAB_THREADS workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);
std::size_t worker_count();

}  // namespace schmearlab
