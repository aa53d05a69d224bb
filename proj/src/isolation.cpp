#include "mbsv/isolation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace mbsv {

namespace {

constexpr std::size_t kCandidateCap = 64;

bool is_subset(const IdSet& a, const IdSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool is_proper_subset(const IdSet& a, const IdSet& b) {
  return a.size() < b.size() && is_subset(a, b);
}

/// Candidate variables for covering S, sorted by id.
std::vector<std::string> cover_candidates(const IdSet& s,
                                          const BlanketSets& table) {
  std::vector<std::string> out;
  for (const auto& id : table.ids())
    if (is_subset(table.at(id).extended, s)) out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

void backtrack(const std::vector<std::uint64_t>& masks,
               const std::vector<std::string>& candidates, std::uint64_t covered,
               std::uint64_t full, std::vector<std::string>& chosen,
               std::vector<IdSet>& covers) {
  if (covered == full) {
    covers.emplace_back(chosen.begin(), chosen.end());
    return;
  }
  // Branch on the lowest uncovered element; every partition is then found
  // exactly once.
  int bit = 0;
  while ((covered >> bit) & 1ull) ++bit;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    if (!((masks[i] >> bit) & 1ull) || (masks[i] & covered)) continue;
    chosen.push_back(candidates[i]);
    backtrack(masks, candidates, covered | masks[i], full, chosen, covers);
    chosen.pop_back();
  }
}

}  // namespace

IdSet candidate_union(const Verdict& verdict) {
  IdSet all = verdict.real_faults;
  all.insert(verdict.ambiguous_group.begin(), verdict.ambiguous_group.end());
  all.insert(verdict.masked_candidates.begin(), verdict.masked_candidates.end());
  for (const auto& cover : verdict.covers) all.insert(cover.begin(), cover.end());
  return all;
}

CoverSearchResult exact_cover_search(const IdSet& s, const BlanketSets& table) {
  CoverSearchResult result;
  if (s.empty()) {
    result.covers.push_back({});
    return result;
  }
  const std::vector<std::string> candidates = cover_candidates(s, table);
  if (s.size() > kCandidateCap || candidates.size() > kCandidateCap) {
    result.truncated = true;
    return result;
  }

  std::map<std::string, int> bit_of;
  int next = 0;
  for (const auto& id : s) bit_of[id] = next++;
  const std::uint64_t full =
      s.size() == 64 ? ~0ull : (1ull << s.size()) - 1ull;

  std::vector<std::uint64_t> masks;
  masks.reserve(candidates.size());
  for (const auto& id : candidates) {
    std::uint64_t m = 0;
    for (const auto& member : table.at(id).extended) m |= 1ull << bit_of[member];
    masks.push_back(m);
  }

  std::vector<std::string> chosen;
  backtrack(masks, candidates, 0, full, chosen, result.covers);
  std::sort(result.covers.begin(), result.covers.end());
  return result;
}

Verdict isolate(const IdSet& s, const BlanketSets& table) {
  for (const auto& id : s)
    if (!table.contains(id)) throw UnknownIdError(id);

  Verdict verdict;
  if (s.empty()) return verdict;  // (a)

  IdSet equal_emb;
  IdSet subset_emb;
  for (const auto& id : table.ids()) {
    const IdSet& emb = table.at(id).extended;
    if (emb == s)
      equal_emb.insert(id);
    else if (is_proper_subset(emb, s))
      subset_emb.insert(id);
  }

  // (b)/(c): S matches a single EMB; subset EMBs are possible hidden faults.
  if (!equal_emb.empty()) {
    if (equal_emb.size() == 1)
      verdict.real_faults = equal_emb;
    else
      verdict.ambiguous_group = equal_emb;
    if (subset_emb.empty()) {
      verdict.kind = VerdictCase::kSingleReal;
    } else {
      verdict.kind = VerdictCase::kSingleRealWithMasked;
      verdict.masked_candidates = subset_emb;
    }
    return verdict;
  }

  // (d): S is a union of >= 2 pairwise-disjoint EMBs.
  CoverSearchResult search = exact_cover_search(s, table);
  if (!search.truncated && !search.covers.empty()) {
    verdict.kind = VerdictCase::kMultipleDisjoint;
    verdict.covers = search.covers;
    IdSet in_all = search.covers.front();
    IdSet in_any;
    for (const auto& cover : search.covers) {
      in_any.insert(cover.begin(), cover.end());
      IdSet kept;
      std::set_intersection(in_all.begin(), in_all.end(), cover.begin(),
                            cover.end(), std::inserter(kept, kept.begin()));
      in_all = std::move(kept);
    }
    verdict.real_faults = std::move(in_all);
    std::set_difference(in_any.begin(), in_any.end(),
                        verdict.real_faults.begin(), verdict.real_faults.end(),
                        std::inserter(verdict.ambiguous_group,
                                      verdict.ambiguous_group.begin()));
    std::set_difference(subset_emb.begin(), subset_emb.end(), in_any.begin(),
                        in_any.end(),
                        std::inserter(verdict.masked_candidates,
                                      verdict.masked_candidates.begin()));
    return verdict;
  }

  // (e): multiple faults that cannot be told apart.
  verdict.kind = VerdictCase::kIndistinguishable;
  verdict.masked_candidates = subset_emb;
  IdSet explained;
  for (const auto& id : subset_emb) {
    const IdSet& emb = table.at(id).extended;
    explained.insert(emb.begin(), emb.end());
  }
  for (const auto& member : s)
    if (!explained.count(member)) {
      verdict.unexplained = true;
      break;
    }
  return verdict;
}

DistinguishabilityReport distinguishability_report(const BlanketSets& table) {
  DistinguishabilityReport report;

  std::map<IdSet, IdSet> by_emb;
  for (const auto& id : table.ids()) by_emb[table.at(id).extended].insert(id);
  for (const auto& [emb, group] : by_emb)
    if (group.size() > 1) report.identical_groups.push_back(group);
  std::sort(report.identical_groups.begin(), report.identical_groups.end());
  report.all_distinct = report.identical_groups.empty();

  std::vector<std::string> ids(table.ids());
  std::sort(ids.begin(), ids.end());
  for (const auto& sub : ids)
    for (const auto& super : ids) {
      if (sub == super) continue;
      if (is_proper_subset(table.at(sub).extended, table.at(super).extended))
        report.subset_pairs.emplace_back(sub, super);
    }
  return report;
}

}  // namespace mbsv
