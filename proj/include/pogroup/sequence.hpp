#pragma once

#include "pogroup/atomic.hpp"

namespace pogroup {

enum class HaltReason { Terminated, Stabilized, DepthExhausted, SelfSimilar };

inline std::string halt_name(HaltReason h) {
  switch (h) {
  case HaltReason::Terminated: return "Terminated";
  case HaltReason::Stabilized: return "Stabilized";
  case HaltReason::DepthExhausted: return "DepthExhausted";
  default: return "SelfSimilar";
  }
}

struct SequenceReport {
  std::vector<PoGroup> groups;
  std::vector<GroupHom> projections;
  std::vector<Module> qsubgroups;  // Q(G_n) for each computed stage
  HaltReason haltReason = HaltReason::DepthExhausted;
  size_t depthReached = 0;
  std::string note;
};

struct Classification {
  enum class Kind { NAtomic, NAntimatter, InfiniteAntimatter, Undetermined };
  Kind kind = Kind::Undetermined;
  size_t n = 0;
  std::string certificate;
  std::string str() const {
    switch (kind) {
    case Kind::NAtomic: return "NAtomic(" + std::to_string(n) + ")";
    case Kind::NAntimatter: return "NAntimatter(" + std::to_string(n) + ")";
    case Kind::InfiniteAntimatter: return "InfiniteAntimatter";
    default: return "Undetermined(" + std::to_string(n) + ")";
    }
  }
  bool operator==(const Classification &o) const { return kind == o.kind && n == o.n; }
};

inline bool detect_self_similarity(const PoGroup &Gn, const PoGroup &Gn1) {
  return Gn.presentation() == Gn1.presentation();
}

inline SequenceReport qa_sequence(const PoGroup &G, size_t maxDepth, const Budget &b = {}, bool selfSimilarity = true) {
  if (!G.directed) throw PoError("Unsupported", "the quotient sequence needs a directed group");
  SequenceReport r;
  r.groups.push_back(G);
  for (size_t n = 0;; ++n) {
    const PoGroup &cur = r.groups.back();
    r.depthReached = n;
    if (cur.trivial()) {
      r.haltReason = HaltReason::Terminated;
      return r;
    }
    Module Q;
    try {
      Q = quasi_atomic_subgroup(cur, b);
    } catch (const PoError &e) {
      r.haltReason = HaltReason::DepthExhausted;
      r.note = e.what();
      return r;
    }
    r.qsubgroups.push_back(Q);
    if (Q.is_zero()) {
      r.haltReason = HaltReason::Stabilized;
      return r;
    }
    if (n == maxDepth) {
      r.haltReason = HaltReason::DepthExhausted;
      return r;
    }
    auto q = quotient_unchecked(cur, Q);
    r.groups.push_back(q.group);
    r.projections.push_back(q.projection);
    if (selfSimilarity && detect_self_similarity(r.groups[n], r.groups[n + 1])) {
      r.depthReached = n + 1;
      r.haltReason = HaltReason::SelfSimilar;
      r.note = "stage " + std::to_string(n + 1) + " has the presentation of stage " + std::to_string(n) +
               " after the window shift, and Q is nonzero";
      return r;
    }
  }
}

inline Classification classify(const SequenceReport &r) {
  Classification c;
  c.n = r.depthReached;
  switch (r.haltReason) {
  case HaltReason::Terminated: c.kind = Classification::Kind::NAtomic; break;
  case HaltReason::Stabilized: c.kind = Classification::Kind::NAntimatter; break;
  case HaltReason::SelfSimilar:
    c.kind = Classification::Kind::InfiniteAntimatter;
    c.certificate = r.note;
    break;
  case HaltReason::DepthExhausted: c.kind = Classification::Kind::Undetermined; break;
  }
  return c;
}

}  // namespace pogroup
