#pragma once

#include "enumkg/graph/knowledge_graph.hpp"

namespace enumkg {

// Makes each declared inverse pair hold exactly the reversed pairs of its
// partner:
//   refToCAPEC <-> isRefToATTCK
//   refToCWE   <-> isRefToCAPEC
inline KnowledgeGraph symmetrize_inverses(KnowledgeGraph g) {
  auto unify = [&g](Relation forward, Relation backward) {
    auto merged = unite(g.relation(forward), reverse(g.relation(backward)));
    auto inverse = reverse(merged);
    g.replace_relation(forward, std::move(merged));
    g.replace_relation(backward, std::move(inverse));
  };
  unify(Relation::RefToCapec, Relation::IsRefToAttck);
  unify(Relation::RefToCwe, Relation::IsRefToCapec);
  return g;
}

// Materializes the property chains and the refToEnum super-relation:
//   refToATTCK o refToCAPEC          -> refToCAPECreasoned
//   refToCAPECreasoned o refToCWE    -> refToCWEreasoned
//   refToCWEreasoned o refToCVE      -> refToCVEreasoned
//   refToEnum = refToATTCK u the three reasoned relations
// The chains are non-recursive, so a single pass reaches the fixpoint.
// Expects symmetrize_inverses to have run.
inline KnowledgeGraph apply_chain_closure(KnowledgeGraph g) {
  auto capecs = compose(g.relation(Relation::RefToAttck), g.relation(Relation::RefToCapec));
  auto cwes = compose(capecs, g.relation(Relation::RefToCwe));
  auto cves = compose(cwes, g.relation(Relation::RefToCve));

  PairRelation all = g.relation(Relation::RefToAttck);
  all |= capecs;
  all |= cwes;
  all |= cves;

  g.replace_relation(Relation::RefToCapecReasoned, std::move(capecs));
  g.replace_relation(Relation::RefToCweReasoned, std::move(cwes));
  g.replace_relation(Relation::RefToCveReasoned, std::move(cves));
  g.replace_relation(Relation::RefToEnum, std::move(all));
  g.metadata().closed = true;
  return g;
}

inline KnowledgeGraph close_graph(KnowledgeGraph g) {
  return apply_chain_closure(symmetrize_inverses(std::move(g)));
}

}  // namespace enumkg
