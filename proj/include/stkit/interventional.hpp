#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stkit/staged_tree.hpp"

namespace stkit {

// Ordered list of intervention targets; multisets are allowed and the
// empty target is an explicit member when present.
struct TargetCollection {
    std::vector<std::set<int>> targets;

    bool purely_interventional() const;
    // Position of the empty target, or -1.
    int empty_position() const;
    std::string to_string() const;
};

// Partitioned tree with splitting level k*: labels strictly before k* are
// action labels indexed by subsets of V_L \ {r_L}; each subtree rooted at
// level k* is a staged tree over the distributional labels, all subtrees
// are isomorphic, and the sharing rule ties labels across subtrees to the
// action index sets.
struct InterventionalTree {
    Tree tree;
    int split_level = 1;
    std::vector<int> subtree_roots;                  // level-k* vertices, level order
    std::map<uint32_t, std::set<int>> action_sets;   // action label id -> index set
    std::vector<int> tl_id;                          // vertex -> canonical T_L id (0 at subtree roots, -1 above k*)
    std::vector<std::string> tl_name;                // T_L id -> local name (first subtree)
    std::vector<std::vector<int>> tl_vertex;         // subtree -> T_L id -> vertex
    std::vector<std::vector<int>> subtree_leaves;    // per subtree, depth-first
    std::vector<std::vector<int>> stages;            // floret stages at level >= k*
    std::vector<int> stage_of;

    const SymbolTablePtr& table() const { return tree.table; }
    int subtree_of(int v) const;  // -1 above the splitting level
};

// Checks conditions (1)-(4) of the interventional staged tree definition
// plus cross-subtree stage coherence; throws std::invalid_argument naming
// the violated condition and witness edges.
InterventionalTree validate_interventional(const TreeSpec& spec, int k_star,
                                           const std::map<std::string, std::set<int>>& action_index_sets,
                                           SymbolTablePtr table = nullptr);

// The interventional staged tree of (G, I) with respect to a linear
// extension: one action edge per target (label a_S with S the union of the
// targeted levels' vertex ids), one copy of T_G per target, interventional
// labels on edges into targeted levels and shared observational labels
// elsewhere. Splitting level 1.
InterventionalTree from_dag_targets(const Dag& dag, const TargetCollection& targets,
                                    const std::vector<int>& pi);
InterventionalTree from_dag_targets(const Dag& dag, const TargetCollection& targets);

struct CriterionWitness {
    int target_i = -1, target_j = -1;  // positions in the collection
    int offending_node = 0;            // ancestor missing from I cup J
    bool imperfect = false;            // failure is the perfectness conjunct
};

// Graphical toricness criterion: G perfect and every union of two targets
// ancestrally closed.
bool criterion_check(const Dag& dag, const TargetCollection& targets,
                     CriterionWitness* witness = nullptr);

bool is_balanced_interventional(const InterventionalTree& it);
std::optional<BalanceWitness> balanced_counterexample(const InterventionalTree& it);

// Per-subtree leaf vectors; action labels are excluded from the products.
std::vector<std::vector<Rational>> parameterize_interventional(const InterventionalTree& it,
                                                               const Assignment& x);

// Inverse of parameterize via per-subtree mass ratios; shared labels must
// agree across every edge carrying them.
Assignment recover_parameters_interventional(const InterventionalTree& it,
                                             const std::vector<std::vector<Rational>>& leaf_probs);

struct InvariancePair {
    std::set<int> a, c;
    friend bool operator==(const InvariancePair& x, const InvariancePair& y) {
        return x.a == y.a && x.c == y.c;
    }
    friend bool operator<(const InvariancePair& x, const InvariancePair& y) {
        return std::tie(x.a, x.c) < std::tie(y.a, y.c);
    }
};

// For each target position: the invariance pairs (A, C) of the I-Markov
// property, one pair per conditioning set C with A the full set of nodes
// d-separated from w_I given C and the other w-nodes. Empty targets yield
// empty lists. Requires the empty target to be present.
std::vector<std::vector<InvariancePair>> i_markov_invariance_pairs(const Dag& dag,
                                                                   const TargetCollection& targets);

}  // namespace stkit
