#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "stkit/graph.hpp"
#include "stkit/polynomial.hpp"
#include "stkit/symbol.hpp"

namespace stkit {

// Raw description of a rooted edge-labeled tree, as read from JSON or
// built by hand in tests.
struct TreeSpec {
    struct Edge {
        std::string from, to, label;
        int outcome = 0;  // 1-based index within the floret
    };
    std::vector<std::string> vertices;
    std::vector<Edge> edges;
    std::vector<std::vector<std::string>> stages;  // declared non-singleton blocks
};

// Rooted labeled tree with ordered children. Vertices are dense ids in
// construction order; edges carry an interned label and an outcome index.
struct Tree {
    SymbolTablePtr table;
    std::vector<std::string> name;
    std::map<std::string, int> index_of;
    int root = -1;
    std::vector<int> parent;        // -1 at root
    std::vector<Symbol> in_label;   // label on the incoming edge
    std::vector<int> in_outcome;    // outcome index on the incoming edge
    std::vector<std::vector<int>> kids;  // ordered by outcome
    std::vector<int> level;
    std::vector<int> leaves;  // depth-first order
    int depth = 0;            // maximum level

    int vertex(const std::string& nm) const;
    bool is_leaf(int v) const { return kids[v].empty(); }
    // Sorted set of label ids on v's outgoing edges.
    std::vector<uint32_t> floret(int v) const;
    Symbol edge_label(int v, int child) const;
};

// Builds the tree structure and checks it is a single connected rooted
// tree; staged-tree conditions are checked separately.
Tree build_tree(const TreeSpec& spec, SymbolTablePtr table = nullptr);

// A validated staged tree: floret injectivity holds at every vertex, any
// two florets are equal or disjoint, and the stage partition is the one
// derived from floret equality. Stages cover internal vertices; leaves
// form the trivial class and are left out.
struct StagedTree {
    Tree tree;
    std::vector<std::vector<int>> stages;  // sorted blocks, by smallest member
    std::vector<int> stage_of;             // -1 for leaves

    const SymbolTablePtr& table() const { return tree.table; }
};

// Validates the staged-tree conditions; the declared non-singleton stage
// blocks in `spec` must match the derived ones exactly. Throws
// std::invalid_argument with a precise violation report.
StagedTree validate(const TreeSpec& spec, SymbolTablePtr table = nullptr);

// Stage partition over an arbitrary subset of internal vertices, grouped
// by exact floret label sets.
std::pair<std::vector<std::vector<int>>, std::vector<int>> floret_stages(const Tree& tree,
                                                                         const std::vector<int>& verts);

// The staged tree of a DAG model with respect to a linear extension.
// Level k holds outcomes of X_{pi(k)}; edge labels are the conditional
// probability symbols f(j=v|parents=context) with 0-based outcome digits.
StagedTree from_dag(const Dag& dag, const std::vector<int>& pi);
StagedTree from_dag(const Dag& dag);  // identity-compatible extension

struct TreeClassification {
    bool is_stratified = false;
    bool is_uniform = false;
    bool is_compatibly_labeled = false;
    bool is_dag_representable = false;
    // For levels 1..p-1: positions (1-based, within the level ordering)
    // whose contexts index the stage partition of that level. Present only
    // when representable.
    std::vector<std::set<int>> contexts;
};

TreeClassification classify(const StagedTree& st);

// Interpolating polynomials t(v) for every vertex, bottom-up; t(leaf) = 1.
std::vector<Polynomial> interpolating_polynomials(const Tree& tree);
Polynomial interpolating_polynomial(const StagedTree& st, int v);

struct BalanceWitness {
    int v = -1, w = -1;
    Symbol label_i, label_j;
};

// First same-stage pair and matched-child label pair violating
// t(v_i)t(w_j) = t(w_i)t(v_j), if any. Children are matched by label.
std::optional<BalanceWitness> balanced_counterexample(const Tree& tree,
                                                      const std::vector<std::vector<int>>& stages);
bool is_balanced(const StagedTree& st);
std::optional<BalanceWitness> balanced_counterexample(const StagedTree& st);

// psi_T: leaf probabilities from a point of Theta_T. Values must be
// positive with every floret summing to exactly 1.
std::vector<Rational> parameterize(const StagedTree& st, const Assignment& x);

// Inverts parameterize via x = p_[child]/p_[vertex]; reports when a label
// receives inconsistent ratios across its stage (off-model input).
Assignment recover_parameters(const StagedTree& st, const std::vector<Rational>& leaf_probs);

// Chain event graph: vertices in the same stage whose rooted subtrees are
// label-isomorphic merge into one position; leaves collapse into a sink.
struct Ceg {
    struct Edge {
        Symbol label;
        int outcome;
        int to;  // position id
    };
    int root = 0;
    int sink = 0;
    std::vector<int> position_of;           // tree vertex -> position
    std::vector<int> representative;        // position -> tree vertex (sink: -1)
    std::vector<int> stage_of;              // position -> stage id (-1 for sink)
    std::vector<std::vector<Edge>> edges;   // per position, in outcome order
};

Ceg ceg_quotient(const StagedTree& st);

}  // namespace stkit
