#ifndef MBSV_ISOLATION_HPP_
#define MBSV_ISOLATION_HPP_

#include <string>
#include <utility>
#include <vector>

#include "mbsv/blankets.hpp"
#include "mbsv/network.hpp"

namespace mbsv {

enum class VerdictCase {
  kNoFault,
  kSingleReal,
  kSingleRealWithMasked,
  kMultipleDisjoint,
  kIndistinguishable,
};

// Classification of an apparent-fault set S against the EMB table.  Pure set
// algebra over the precomputed table; no probabilities are touched here.
struct Verdict {
  VerdictCase kind = VerdictCase::kNoFault;
  IdSet real_faults;        // certainly faulty
  IdSet ambiguous_group;    // exactly one of these is faulty, no way to tell which
  IdSet masked_candidates;  // EMB inside S: possibly also faulty, hidden by the above
  std::vector<IdSet> covers;  // exact disjoint-EMB covers (kMultipleDisjoint)
  bool unexplained = false;   // part of S lies in no candidate EMB

  bool operator==(const Verdict&) const = default;
};

/// Real/ambiguous/masked/cover candidates in one set.
IdSet candidate_union(const Verdict& verdict);

struct CoverSearchResult {
  // Each cover is a set of variables whose EMBs are pairwise disjoint and
  // union to exactly S; covers are lexicographically sorted.
  std::vector<IdSet> covers;
  bool truncated = false;  // candidate cap (64) exceeded, search skipped
};

/// All families of pairwise-disjoint EMBs whose union is exactly S, found by
/// backtracking over {x : EMB(x) subseteq S}.  S = {} yields the empty cover.
CoverSearchResult exact_cover_search(const IdSet& s, const BlanketSets& table);

/// Step-6 cascade: NoFault, SingleReal, SingleRealWithMasked,
/// MultipleDisjoint, Indistinguishable — first case that applies wins.
Verdict isolate(const IdSet& s, const BlanketSets& table);

// Static analysis of which single and double faults the model can tell apart:
// groups of variables sharing one EMB are mutually indistinguishable, and a
// proper-subset pair (y, x) means a fault in x masks any simultaneous fault
// in y.
struct DistinguishabilityReport {
  std::vector<IdSet> identical_groups;
  std::vector<std::pair<std::string, std::string>> subset_pairs;  // (subset, superset)
  bool all_distinct = true;
};

DistinguishabilityReport distinguishability_report(const BlanketSets& table);

}  // namespace mbsv

#endif  // MBSV_ISOLATION_HPP_
