#include "schmearlab/limsetmap.hpp"

#include "schmearlab/error.hpp"

namespace schmearlab {

namespace {

std::vector<LimitReport> limits_in(const Compactification& c, const std::vector<SequenceFamily>& fams,
                                   const std::vector<long long>& schedule, double tol) {
  std::vector<LimitReport> out;
  out.reserve(fams.size());
  for (const auto& f : fams) {
    out.push_back(limit_in_boundary(f, c, schedule, tol));
    if (out.back().status == LimitStatus::not_cauchy)
      throw DomainError("candidate " + f.label() + " does not converge in " + c.name() + ": " + out.back().reason);
  }
  return out;
}

class HorizontalFamily final : public FamilyImpl {
 public:
  explicit HorizontalFamily(SequenceFamily inner) : inner_(std::move(inner)) {}
  int m() const override { return inner_.m(); }
  int d() const override { return 0; }
  long long n0() const override { return inner_.n0(); }
  std::string label() const override { return inner_.label(); }
  bool has_vertical_part() const override { return false; }
  LongElement evaluate(long long n) const override { return LongElement{inner_.evaluate(n).word, {}}; }

 private:
  SequenceFamily inner_;
};

}  // namespace

ObstructionSearch find_obstruction(const Compactification& source, const Compactification& target,
                                   const std::vector<SequenceFamily>& candidates,
                                   const std::vector<long long>& schedule, double tol) {
  ObstructionSearch out;
  out.source = source.name();
  out.target = target.name();
  out.source_limits = limits_in(source, candidates, schedule, tol);
  out.target_limits = limits_in(target, candidates, schedule, tol);
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      ++out.pairs_checked;
      SameLimitReport src =
          same_limit(candidates[i], out.source_limits[i], candidates[j], out.source_limits[j], schedule, tol);
      if (!src.same) continue;
      SameLimitReport tgt =
          same_limit(candidates[i], out.target_limits[i], candidates[j], out.target_limits[j], schedule, tol);
      if (tgt.same) continue;
      out.witness = ObstructionWitness{i, j, candidates[i].label(), candidates[j].label(), std::move(src),
                                       std::move(tgt)};
      return out;
    }
  return out;
}

SequenceFamily horizontal_part(const SequenceFamily& fam) {
  return SequenceFamily(std::make_shared<HorizontalFamily>(fam));
}

EquatorReport equator_restriction_check(const Compactification& source, const Compactification& target,
                                        const std::vector<SequenceFamily>& candidates,
                                        const std::vector<long long>& schedule, double tol) {
  std::vector<SequenceFamily> flat;
  for (const auto& f : candidates) {
    if (f.has_vertical_part())
      throw DomainError("candidate " + f.label() + " has a nonzero Z^d part; equators only see F_m");
    flat.push_back(horizontal_part(f));
  }
  EquatorReport out;
  out.search =
      find_obstruction(source.horizontal_projection(), target.horizontal_projection(), flat, schedule, tol);
  out.map_exists = !out.search.witness.has_value();
  return out;
}

std::vector<std::string> standard_suite_text(bool with_vertical) {
  const std::vector<std::string> base = {"a^n",           "b^n",           "a^n b^{n^2}",
                                         "a^n b^{-n^2}",  "a^n (ab)^{n^2}", "a^{n+n^2} b^{n^2}"};
  std::vector<std::string> out = base;
  if (with_vertical)
    for (const char* tail : {"c^n", "c^{n^2}", "c^{2n^2}"})
      for (const auto& f : base) out.push_back(f + " " + tail);
  return out;
}

std::vector<SequenceFamily> standard_suite(int d) {
  std::vector<SequenceFamily> out;
  for (const auto& text : standard_suite_text(d >= 1)) out.push_back(parse_family(text, 2, d));
  return out;
}

}  // namespace schmearlab
