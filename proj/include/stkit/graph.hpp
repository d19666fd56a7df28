#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace stkit {

// Labeled DAG on nodes 1..n with per-node outcome cardinalities. Immutable
// after construction; every operation below is pure.
class Dag {
public:
    Dag() = default;
    // Validates: endpoints in range, no self-loops or parallel edges, acyclic,
    // all cardinalities >= 2. Throws std::invalid_argument otherwise.
    Dag(int n, std::vector<std::pair<int, int>> edges, std::vector<int> cards);

    int n() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& cards() const { return cards_; }
    int card(int v) const;
    bool has_edge(int i, int j) const;

    const std::vector<int>& parents(int v) const;
    const std::vector<int>& children(int v) const;

    // Canonical text form used in error messages: "1->2, 2->3".
    std::string to_text() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> cards_;
    std::vector<std::vector<int>> parents_, children_;

    void check_node(int v) const;
};

// Simple loopless undirected graph on nodes 1..n.
class UGraph {
public:
    UGraph() = default;
    UGraph(int n, std::vector<std::pair<int, int>> edges);

    int n() const { return n_; }
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    bool adjacent(int i, int j) const;
    std::vector<int> neighbors(int v) const;

    friend bool operator==(const UGraph& a, const UGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    int n_ = 0;
    std::set<std::pair<int, int>> edges_;  // stored with first < second
};

enum class Relative { parents, children, ancestors, descendants, nondescendants };

// Exact relative sets. Ancestors/descendants exclude v itself; the
// nondescendant set nd(v) = V \ de(v) includes v.
std::set<int> relatives(const Dag& dag, int v, Relative kind);

bool is_linear_extension(const Dag& dag, const std::vector<int>& pi);
// All linear extensions in lexicographic order.
std::vector<std::vector<int>> topological_orders(const Dag& dag);
// The lexicographically least linear extension (identity whenever compatible).
std::vector<int> canonical_linear_extension(const Dag& dag);

// Every node's parent set is complete.
bool is_perfect(const Dag& dag);

UGraph skeleton(const Dag& dag);
// Marries co-parents of every node, then drops orientation.
UGraph moralize(const Dag& dag);

// Chordality via maximum cardinality search; the witness, when requested,
// is an ordering in which each node's preceding neighbors are complete.
bool is_chordal(const UGraph& g, std::vector<int>* peo = nullptr);

// d-separation of A and B given C (reachability formulation).
bool d_separated(const Dag& dag, const std::set<int>& a, const std::set<int>& b, const std::set<int>& c);

// Same skeleton and same v-structures.
bool markov_equivalent(const Dag& d1, const Dag& d2);
// V-structures (i,k,j) with i<j, i->k<-j and i,j nonadjacent.
std::set<std::tuple<int, int, int>> v_structures(const Dag& dag);

std::set<int> ancestral_closure(const Dag& dag, const std::set<int>& s);

// The base DAG augmented with one w-node per nonempty target. W-nodes are
// numbered base.n()+1, ... in target order (empty targets are skipped but
// keep their position in `targets`).
struct IDag {
    Dag graph;
    int base_n = 0;
    std::vector<std::set<int>> targets;
    // w_node[k] = node id of w_{I_k}, or 0 when targets[k] is empty.
    std::vector<int> w_node;
};

IDag i_dag(const Dag& dag, const std::vector<std::set<int>>& targets);

// Every labeled DAG on n nodes exactly once, in lexicographic order of the
// per-pair orientation vector. Guarded at n <= 5.
std::vector<Dag> enumerate_dags(int n, int card = 2);

}  // namespace stkit
