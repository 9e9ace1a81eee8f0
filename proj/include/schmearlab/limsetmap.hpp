#pragma once

// Witness search against limset maps: a pair of families with the same
// limit in one compactification and different limits in another shows the
// identity of G does not extend continuously between them.

#include <optional>
#include <string>
#include <vector>

#include "schmearlab/sequences.hpp"

namespace schmearlab {

struct ObstructionWitness {
  std::size_t first = 0;   // candidate indices, first < second
  std::size_t second = 0;
  std::string family1;
  std::string family2;
  SameLimitReport under_source;  // same limit
  SameLimitReport under_target;  // different limits
};

struct ObstructionSearch {
  std::string source;
  std::string target;
  std::optional<ObstructionWitness> witness;
  std::vector<LimitReport> source_limits;  // one per candidate
  std::vector<LimitReport> target_limits;
  std::size_t pairs_checked = 0;
};

// Scans candidate pairs (i, j), i < j, in input order and stops at the
// first pair with equal limits in `source` and different limits in
// `target`, i.e. a witness against a limset map from the boundary of
// `source` to that of `target`. Throws DomainError naming the first
// candidate that does not converge in either compactification.
ObstructionSearch find_obstruction(const Compactification& source, const Compactification& target,
                                   const std::vector<SequenceFamily>& candidates,
                                   const std::vector<long long>& schedule = default_schedule(),
                                   double tol = kDefaultTol);

struct EquatorReport {
  bool map_exists = true;  // no witness among the candidates
  ObstructionSearch search;
};

// find_obstruction on the horizontal projections (d = 0). Candidates must
// have trivial Z^d part.
EquatorReport equator_restriction_check(const Compactification& source, const Compactification& target,
                                        const std::vector<SequenceFamily>& candidates,
                                        const std::vector<long long>& schedule = default_schedule(),
                                        double tol = kDefaultTol);

// The family with its Z^d part dropped, as a family in F_m x Z^0.
SequenceFamily horizontal_part(const SequenceFamily& fam);

// a^n, b^n, a^n b^{n^2}, a^n b^{-n^2}, a^n (ab)^{n^2}, a^{n+n^2} b^{n^2},
// then (when with_vertical) the same six times c^n, c^{n^2}, c^{2n^2}.
std::vector<std::string> standard_suite_text(bool with_vertical);
std::vector<SequenceFamily> standard_suite(int d);

}  // namespace schmearlab
