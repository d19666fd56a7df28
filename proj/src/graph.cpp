#include "stkit/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace stkit {

namespace {

// Kahn's algorithm; returns false when a directed cycle exists.
bool acyclic(int n, const std::vector<std::vector<int>>& children, const std::vector<std::vector<int>>& parents) {
    std::vector<int> indeg(n + 1, 0);
    for (int v = 1; v <= n; ++v) indeg[v] = static_cast<int>(parents[v].size());
    std::deque<int> ready;
    for (int v = 1; v <= n; ++v)
        if (indeg[v] == 0) ready.push_back(v);
    int seen = 0;
    while (!ready.empty()) {
        int v = ready.front();
        ready.pop_front();
        ++seen;
        for (int c : children[v])
            if (--indeg[c] == 0) ready.push_back(c);
    }
    return seen == n;
}

}  // namespace

Dag::Dag(int n, std::vector<std::pair<int, int>> edges, std::vector<int> cards)
    : n_(n), edges_(std::move(edges)), cards_(std::move(cards)) {
    if (n_ < 0) throw std::invalid_argument("negative node count");
    if (static_cast<int>(cards_.size()) != n_)
        throw std::invalid_argument("cards size must equal node count");
    for (int d : cards_)
        if (d < 2) throw std::invalid_argument("every cardinality must be at least 2");
    std::sort(edges_.begin(), edges_.end());
    parents_.assign(n_ + 1, {});
    children_.assign(n_ + 1, {});
    for (size_t k = 0; k < edges_.size(); ++k) {
        auto [i, j] = edges_[k];
        if (i < 1 || i > n_ || j < 1 || j > n_)
            throw std::invalid_argument("edge endpoint out of range in " + to_text());
        if (i == j) throw std::invalid_argument("self-loop at node " + std::to_string(i));
        if (k > 0 && edges_[k] == edges_[k - 1])
            throw std::invalid_argument("parallel edge in " + to_text());
        children_[i].push_back(j);
        parents_[j].push_back(i);
    }
    for (size_t k = 0; k < edges_.size(); ++k) {
        auto [i, j] = edges_[k];
        if (std::binary_search(edges_.begin(), edges_.end(), std::make_pair(j, i)))
            throw std::invalid_argument("two-cycle between " + std::to_string(i) + " and " + std::to_string(j));
    }
    for (int v = 1; v <= n_; ++v) {
        std::sort(parents_[v].begin(), parents_[v].end());
        std::sort(children_[v].begin(), children_[v].end());
    }
    if (!acyclic(n_, children_, parents_)) throw std::invalid_argument("directed cycle in " + to_text());
}

void Dag::check_node(int v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("node " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
}

int Dag::card(int v) const {
    check_node(v);
    return cards_[v - 1];
}

bool Dag::has_edge(int i, int j) const {
    return std::binary_search(edges_.begin(), edges_.end(), std::make_pair(i, j));
}

const std::vector<int>& Dag::parents(int v) const {
    check_node(v);
    return parents_[v];
}

const std::vector<int>& Dag::children(int v) const {
    check_node(v);
    return children_[v];
}

std::string Dag::to_text() const {
    std::ostringstream out;
    for (size_t k = 0; k < edges_.size(); ++k) {
        if (k) out << ", ";
        out << edges_[k].first << "->" << edges_[k].second;
    }
    return out.str();
}

UGraph::UGraph(int n, std::vector<std::pair<int, int>> edges) : n_(n) {
    for (auto [i, j] : edges) {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw std::invalid_argument("edge endpoint out of range");
        if (i == j) throw std::invalid_argument("self-loop in undirected graph");
        edges_.emplace(std::min(i, j), std::max(i, j));
    }
}

bool UGraph::adjacent(int i, int j) const {
    return edges_.count({std::min(i, j), std::max(i, j)}) > 0;
}

std::vector<int> UGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 1; u <= n_; ++u)
        if (u != v && adjacent(u, v)) out.push_back(u);
    return out;
}

std::set<int> relatives(const Dag& dag, int v, Relative kind) {
    if (v < 1 || v > dag.n()) throw std::invalid_argument("node " + std::to_string(v) + " out of range");
    switch (kind) {
        case Relative::parents:
            return std::set<int>(dag.parents(v).begin(), dag.parents(v).end());
        case Relative::children:
            return std::set<int>(dag.children(v).begin(), dag.children(v).end());
        default:
            break;
    }
    // reachability sweeps
    auto sweep = [&](bool toward_children) {
        std::set<int> seen;
        std::deque<int> work{v};
        while (!work.empty()) {
            int u = work.front();
            work.pop_front();
            const auto& next = toward_children ? dag.children(u) : dag.parents(u);
            for (int w : next)
                if (seen.insert(w).second) work.push_back(w);
        }
        return seen;
    };
    if (kind == Relative::ancestors) return sweep(false);
    if (kind == Relative::descendants) return sweep(true);
    std::set<int> de = sweep(true);
    std::set<int> nd;
    for (int u = 1; u <= dag.n(); ++u)
        if (!de.count(u)) nd.insert(u);
    return nd;
}

bool is_linear_extension(const Dag& dag, const std::vector<int>& pi) {
    if (static_cast<int>(pi.size()) != dag.n()) throw std::invalid_argument("pi is not a permutation of 1..n");
    std::vector<int> pos(dag.n() + 1, -1);
    for (int k = 0; k < dag.n(); ++k) {
        int v = pi[k];
        if (v < 1 || v > dag.n() || pos[v] != -1) throw std::invalid_argument("pi is not a permutation of 1..n");
        pos[v] = k;
    }
    for (auto [i, j] : dag.edges())
        if (pos[i] > pos[j]) return false;
    return true;
}

namespace {

void extensions_rec(const Dag& dag, std::vector<int>& indeg, std::vector<bool>& used, std::vector<int>& prefix,
                    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(prefix.size()) == dag.n()) {
        out.push_back(prefix);
        return;
    }
    for (int v = 1; v <= dag.n(); ++v) {
        if (used[v] || indeg[v] != 0) continue;
        used[v] = true;
        prefix.push_back(v);
        for (int c : dag.children(v)) --indeg[c];
        extensions_rec(dag, indeg, used, prefix, out);
        for (int c : dag.children(v)) ++indeg[c];
        prefix.pop_back();
        used[v] = false;
    }
}

}  // namespace

std::vector<std::vector<int>> topological_orders(const Dag& dag) {
    std::vector<int> indeg(dag.n() + 1, 0);
    for (int v = 1; v <= dag.n(); ++v) indeg[v] = static_cast<int>(dag.parents(v).size());
    std::vector<bool> used(dag.n() + 1, false);
    std::vector<int> prefix;
    std::vector<std::vector<int>> out;
    extensions_rec(dag, indeg, used, prefix, out);
    return out;
}

std::vector<int> canonical_linear_extension(const Dag& dag) {
    std::vector<int> indeg(dag.n() + 1, 0);
    for (int v = 1; v <= dag.n(); ++v) indeg[v] = static_cast<int>(dag.parents(v).size());
    std::vector<bool> used(dag.n() + 1, false);
    std::vector<int> order;
    for (int step = 0; step < dag.n(); ++step) {
        for (int v = 1; v <= dag.n(); ++v) {
            if (!used[v] && indeg[v] == 0) {
                used[v] = true;
                order.push_back(v);
                for (int c : dag.children(v)) --indeg[c];
                break;
            }
        }
    }
    return order;
}

bool is_perfect(const Dag& dag) {
    for (int v = 1; v <= dag.n(); ++v) {
        const auto& pa = dag.parents(v);
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j)
                if (!dag.has_edge(pa[i], pa[j]) && !dag.has_edge(pa[j], pa[i])) return false;
    }
    return true;
}

UGraph skeleton(const Dag& dag) {
    std::vector<std::pair<int, int>> e(dag.edges().begin(), dag.edges().end());
    return UGraph(dag.n(), std::move(e));
}

UGraph moralize(const Dag& dag) {
    std::vector<std::pair<int, int>> e(dag.edges().begin(), dag.edges().end());
    for (int v = 1; v <= dag.n(); ++v) {
        const auto& pa = dag.parents(v);
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j) e.emplace_back(pa[i], pa[j]);
    }
    return UGraph(dag.n(), std::move(e));
}

bool is_chordal(const UGraph& g, std::vector<int>* peo) {
    int n = g.n();
    // maximum cardinality search; ties break toward the smallest id
    std::vector<int> weight(n + 1, 0), order;
    std::vector<bool> chosen(n + 1, false);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 1; v <= n; ++v)
            if (!chosen[v] && (best == -1 || weight[v] > weight[best])) best = v;
        chosen[best] = true;
        order.push_back(best);
        for (int u : g.neighbors(best))
            if (!chosen[u]) ++weight[u];
    }
    // chordal iff each node's preceding neighbors are complete
    std::vector<int> pos(n + 1, 0);
    for (int k = 0; k < n; ++k) pos[order[k]] = k;
    for (int k = 0; k < n; ++k) {
        std::vector<int> prior;
        for (int u : g.neighbors(order[k]))
            if (pos[u] < k) prior.push_back(u);
        for (size_t i = 0; i < prior.size(); ++i)
            for (size_t j = i + 1; j < prior.size(); ++j)
                if (!g.adjacent(prior[i], prior[j])) return false;
    }
    if (peo) *peo = order;
    return true;
}

bool d_separated(const Dag& dag, const std::set<int>& a, const std::set<int>& b, const std::set<int>& c) {
    if (a.empty() || b.empty()) throw std::invalid_argument("d-separation requires nonempty A and B");
    for (int v : a)
        if (b.count(v) || c.count(v)) throw std::invalid_argument("A, B, C must be pairwise disjoint");
    for (int v : b)
        if (c.count(v)) throw std::invalid_argument("A, B, C must be pairwise disjoint");
    for (int v : c)
        if (v < 1 || v > dag.n()) throw std::invalid_argument("node out of range in C");

    // nodes in C or with a descendant in C (collider openers)
    std::set<int> anc_c;
    {
        std::deque<int> work(c.begin(), c.end());
        anc_c.insert(c.begin(), c.end());
        while (!work.empty()) {
            int v = work.front();
            work.pop_front();
            for (int p : dag.parents(v))
                if (anc_c.insert(p).second) work.push_back(p);
        }
    }

    // reachability over (node, direction) states; direction up = entered
    // from a child, down = entered from a parent
    enum { kUp = 0, kDown = 1 };
    std::vector<std::vector<bool>> visited(2, std::vector<bool>(dag.n() + 1, false));
    std::deque<std::pair<int, int>> work;
    for (int s : a) {
        if (s < 1 || s > dag.n()) throw std::invalid_argument("node out of range in A");
        work.emplace_back(s, kUp);
    }
    while (!work.empty()) {
        auto [v, dir] = work.front();
        work.pop_front();
        if (visited[dir][v]) continue;
        visited[dir][v] = true;
        if (b.count(v)) return false;
        if (dir == kUp && !c.count(v)) {
            for (int p : dag.parents(v)) work.emplace_back(p, kUp);
            for (int ch : dag.children(v)) work.emplace_back(ch, kDown);
        } else if (dir == kDown) {
            if (!c.count(v))
                for (int ch : dag.children(v)) work.emplace_back(ch, kDown);
            if (anc_c.count(v))
                for (int p : dag.parents(v)) work.emplace_back(p, kUp);
        }
    }
    return true;
}

std::set<std::tuple<int, int, int>> v_structures(const Dag& dag) {
    std::set<std::tuple<int, int, int>> out;
    for (int k = 1; k <= dag.n(); ++k) {
        const auto& pa = dag.parents(k);
        for (size_t i = 0; i < pa.size(); ++i)
            for (size_t j = i + 1; j < pa.size(); ++j)
                if (!dag.has_edge(pa[i], pa[j]) && !dag.has_edge(pa[j], pa[i]))
                    out.emplace(pa[i], k, pa[j]);
    }
    return out;
}

bool markov_equivalent(const Dag& d1, const Dag& d2) {
    if (d1.n() != d2.n()) throw std::invalid_argument("markov_equivalent requires equal node counts");
    return skeleton(d1) == skeleton(d2) && v_structures(d1) == v_structures(d2);
}

std::set<int> ancestral_closure(const Dag& dag, const std::set<int>& s) {
    std::set<int> out = s;
    for (int v : s) {
        auto an = relatives(dag, v, Relative::ancestors);
        out.insert(an.begin(), an.end());
    }
    return out;
}

IDag i_dag(const Dag& dag, const std::vector<std::set<int>>& targets) {
    for (const auto& t : targets)
        for (int v : t)
            if (v < 1 || v > dag.n()) throw std::invalid_argument("target node " + std::to_string(v) + " out of range");
    IDag out;
    out.base_n = dag.n();
    out.targets = targets;
    std::vector<std::pair<int, int>> edges(dag.edges().begin(), dag.edges().end());
    std::vector<int> cards = dag.cards();
    int next = dag.n();
    for (const auto& t : targets) {
        if (t.empty()) {
            out.w_node.push_back(0);
            continue;
        }
        ++next;
        out.w_node.push_back(next);
        cards.push_back(2);
        for (int j : t) edges.emplace_back(next, j);
    }
    out.graph = Dag(next, std::move(edges), std::move(cards));
    return out;
}

std::vector<Dag> enumerate_dags(int n, int card) {
    if (n < 1 || n > 5) throw std::invalid_argument("enumerate_dags supports 1 <= n <= 5");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    std::vector<int> cards(n, card);
    std::vector<Dag> out;
    std::vector<int> state(pairs.size(), 0);  // 0 none, 1 i->j, 2 j->i
    while (true) {
        std::vector<std::pair<int, int>> edges;
        for (size_t k = 0; k < pairs.size(); ++k) {
            if (state[k] == 1) edges.push_back(pairs[k]);
            if (state[k] == 2) edges.emplace_back(pairs[k].second, pairs[k].first);
        }
        try {
            out.emplace_back(n, std::move(edges), cards);
        } catch (const std::invalid_argument&) {
            // cyclic orientation, skip
        }
        size_t k = state.size();
        while (k > 0 && state[k - 1] == 2) state[--k] = 0;
        if (k == 0) break;
        ++state[k - 1];
    }
    return out;
}

}  // namespace stkit
