#ifndef IMCAUG_SAT_PROOF_HPP
#define IMCAUG_SAT_PROOF_HPP

#include <cstdint>
#include <vector>

#include "imcaug/encoder/cnf.hpp"

namespace imcaug::sat {

// Resolution refutation DAG. Leaves are input clauses (by index into the
// generating CnfInstance); internal nodes resolve their two antecedents
// on a pivot variable. The designated root derives the empty clause.
// Antecedent indices always precede the node, so a single forward pass
// visits the DAG in topological order.
struct ProofLog {
  struct Node {
    std::vector<enc::Lit> clause;  // sorted, duplicate-free
    int32_t left = -1;             // node index; -1 for leaves
    int32_t right = -1;
    enc::Var pivot = -1;
    int32_t input_index = -1;      // for leaves
    bool is_leaf() const { return left < 0; }
  };

  std::vector<Node> nodes;
  int32_t root = -1;

  bool empty() const { return nodes.empty(); }
};

// Verifies every ProofLog invariant against the generating instance:
// leaves are verbatim input clauses, every internal node is the resolvent
// of its antecedents on its pivot, and the root clause is empty. Linear
// in the proof size.
bool check_proof(const ProofLog& proof, const enc::CnfInstance& cnf);

}  // namespace imcaug::sat

#endif
