#include "stkit/staged_tree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace stkit {

int Tree::vertex(const std::string& nm) const {
    auto it = index_of.find(nm);
    if (it == index_of.end()) throw std::invalid_argument("unknown vertex: " + nm);
    return it->second;
}

std::vector<uint32_t> Tree::floret(int v) const {
    std::vector<uint32_t> out;
    out.reserve(kids[v].size());
    for (int c : kids[v]) out.push_back(in_label[c].id);
    std::sort(out.begin(), out.end());
    return out;
}

Symbol Tree::edge_label(int v, int child) const {
    if (parent[child] != v) throw std::invalid_argument("no edge " + name[v] + " -> " + name[child]);
    return in_label[child];
}

Tree build_tree(const TreeSpec& spec, SymbolTablePtr table) {
    Tree t;
    t.table = table ? std::move(table) : make_symbol_table();
    for (const auto& nm : spec.vertices) {
        if (t.index_of.count(nm)) throw std::invalid_argument("duplicate vertex name: " + nm);
        t.index_of[nm] = static_cast<int>(t.name.size());
        t.name.push_back(nm);
    }
    int n = static_cast<int>(t.name.size());
    t.parent.assign(n, -1);
    t.in_label.assign(n, Symbol{});
    t.in_outcome.assign(n, 0);
    t.kids.assign(n, {});
    for (const auto& e : spec.edges) {
        int from = t.vertex(e.from), to = t.vertex(e.to);
        if (t.parent[to] != -1 || to == t.root)
            throw std::invalid_argument("vertex " + e.to + " has two incoming edges");
        if (e.outcome < 1) throw std::invalid_argument("outcome index must be >= 1 on edge into " + e.to);
        t.parent[to] = from;
        t.in_label[to] = t.table->intern(e.label);
        t.in_outcome[to] = e.outcome;
        t.kids[from].push_back(to);
    }
    t.root = -1;
    for (int v = 0; v < n; ++v) {
        if (t.parent[v] == -1) {
            if (t.root != -1) throw std::invalid_argument("disconnected input: two roots " + t.name[t.root] + ", " + t.name[v]);
            t.root = v;
        }
    }
    if (t.root == -1) throw std::invalid_argument("no root vertex (cyclic input)");
    for (int v = 0; v < n; ++v) {
        auto& ks = t.kids[v];
        std::sort(ks.begin(), ks.end(), [&](int a, int b) { return t.in_outcome[a] < t.in_outcome[b]; });
        for (size_t i = 1; i < ks.size(); ++i)
            if (t.in_outcome[ks[i]] == t.in_outcome[ks[i - 1]])
                throw std::invalid_argument("duplicate outcome index under vertex " + t.name[v]);
    }
    // levels + reachability (catches cycles among non-root vertices)
    t.level.assign(n, -1);
    t.level[t.root] = 0;
    std::deque<int> work{t.root};
    int seen = 0;
    t.depth = 0;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        ++seen;
        t.depth = std::max(t.depth, t.level[v]);
        for (int c : t.kids[v]) {
            t.level[c] = t.level[v] + 1;
            work.push_back(c);
        }
    }
    if (seen != n) throw std::invalid_argument("disconnected or cyclic input");
    std::function<void(int)> dfs = [&](int v) {
        if (t.kids[v].empty()) {
            t.leaves.push_back(v);
            return;
        }
        for (int c : t.kids[v]) dfs(c);
    };
    dfs(t.root);
    return t;
}

std::pair<std::vector<std::vector<int>>, std::vector<int>> floret_stages(const Tree& tree,
                                                                         const std::vector<int>& verts) {
    std::map<std::vector<uint32_t>, std::vector<int>> groups;
    for (int v : verts)
        if (!tree.is_leaf(v)) groups[tree.floret(v)].push_back(v);
    std::vector<std::vector<int>> stages;
    for (auto& [key, members] : groups) {
        std::sort(members.begin(), members.end());
        stages.push_back(members);
    }
    std::sort(stages.begin(), stages.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    std::vector<int> stage_of(tree.name.size(), -1);
    for (size_t s = 0; s < stages.size(); ++s)
        for (int v : stages[s]) stage_of[v] = static_cast<int>(s);
    return {std::move(stages), std::move(stage_of)};
}

namespace {

void check_staged_conditions(const Tree& t) {
    int n = static_cast<int>(t.name.size());
    // floret injectivity: |theta_v| = |E(v)|
    for (int v = 0; v < n; ++v) {
        auto fl = t.floret(v);
        for (size_t i = 1; i < fl.size(); ++i)
            if (fl[i] == fl[i - 1])
                throw std::invalid_argument("floret injectivity violated at vertex " + t.name[v] +
                                            ": repeated label " + t.table->display(Symbol{fl[i]}));
    }
    // pairwise equal-or-disjoint florets
    std::vector<std::vector<uint32_t>> florets(n);
    for (int v = 0; v < n; ++v) florets[v] = t.floret(v);
    for (int v = 0; v < n; ++v) {
        if (t.is_leaf(v)) continue;
        for (int w = v + 1; w < n; ++w) {
            if (t.is_leaf(w) || florets[v] == florets[w]) continue;
            std::vector<uint32_t> inter;
            std::set_intersection(florets[v].begin(), florets[v].end(), florets[w].begin(), florets[w].end(),
                                  std::back_inserter(inter));
            if (!inter.empty())
                throw std::invalid_argument("florets of " + t.name[v] + " and " + t.name[w] +
                                            " overlap without being equal (label " +
                                            t.table->display(Symbol{inter.front()}) + ")");
        }
    }
}

}  // namespace

StagedTree validate(const TreeSpec& spec, SymbolTablePtr table) {
    Tree t = build_tree(spec, std::move(table));
    check_staged_conditions(t);
    StagedTree st;
    std::vector<int> internal;
    for (int v = 0; v < static_cast<int>(t.name.size()); ++v)
        if (!t.is_leaf(v)) internal.push_back(v);
    auto [stages, stage_of] = floret_stages(t, internal);
    // declared non-singleton blocks must be exactly the derived ones
    std::set<std::vector<int>> declared;
    for (const auto& block : spec.stages) {
        std::vector<int> ids;
        for (const auto& nm : block) {
            int v = t.vertex(nm);
            if (t.is_leaf(v)) throw std::invalid_argument("stage block lists leaf vertex " + nm);
            ids.push_back(v);
        }
        std::sort(ids.begin(), ids.end());
        if (ids.size() > 1) declared.insert(ids);
    }
    std::set<std::vector<int>> derived;
    for (const auto& block : stages)
        if (block.size() > 1) derived.insert(block);
    if (!declared.empty() && declared != derived) {
        std::ostringstream msg;
        msg << "declared stages do not match label structure;";
        for (const auto& block : declared)
            if (!derived.count(block)) {
                msg << " declared block {";
                for (int v : block) msg << ' ' << t.name[v];
                msg << " } is not a stage;";
            }
        for (const auto& block : derived)
            if (!declared.count(block)) {
                msg << " missing block {";
                for (int v : block) msg << ' ' << t.name[v];
                msg << " };";
            }
        throw std::invalid_argument(msg.str());
    }
    st.tree = std::move(t);
    st.stages = std::move(stages);
    st.stage_of = std::move(stage_of);
    return st;
}

namespace {

std::string outcome_digits(const std::vector<int>& values) {
    std::string s;
    for (int v : values) s += static_cast<char>('0' + v);
    return s;
}

}  // namespace

StagedTree from_dag(const Dag& dag, const std::vector<int>& pi) {
    if (!is_linear_extension(dag, pi))
        throw std::invalid_argument("pi is not a linear extension of " + dag.to_text());
    for (int v = 1; v <= dag.n(); ++v)
        if (dag.card(v) > 10) throw std::invalid_argument("outcome naming supports cardinalities up to 10");

    std::vector<int> pos(dag.n() + 1, 0);
    for (int k = 0; k < dag.n(); ++k) pos[pi[k]] = k;

    TreeSpec spec;
    spec.vertices.push_back("r");
    // enumerate level by level; values are 0-based digits in pi order
    std::vector<std::vector<int>> prev{{}};
    for (int k = 0; k < dag.n(); ++k) {
        int var = pi[k];
        std::vector<std::vector<int>> cur;
        for (const auto& prefix : prev) {
            std::string from = prefix.empty() ? "r" : outcome_digits(prefix);
            for (int val = 0; val < dag.card(var); ++val) {
                auto tuple = prefix;
                tuple.push_back(val);
                std::string to = outcome_digits(tuple);
                std::ostringstream label;
                label << "f(" << var << '=' << val;
                bool first = true;
                for (int p : dag.parents(var)) {
                    label << (first ? '|' : ',') << p << '=' << tuple[pos[p]];
                    first = false;
                }
                label << ')';
                spec.vertices.push_back(to);
                spec.edges.push_back({from, to, label.str(), val + 1});
                cur.push_back(std::move(tuple));
            }
        }
        prev = std::move(cur);
    }
    return validate(spec);
}

StagedTree from_dag(const Dag& dag) { return from_dag(dag, canonical_linear_extension(dag)); }

TreeClassification classify(const StagedTree& st) {
    const Tree& t = st.tree;
    TreeClassification out;
    int p = t.depth;
    std::vector<std::vector<int>> levels(p + 1);
    for (int v = 0; v < static_cast<int>(t.name.size()); ++v) levels[t.level[v]].push_back(v);

    out.is_stratified = true;
    for (int leaf : t.leaves)
        if (t.level[leaf] != p) out.is_stratified = false;
    for (const auto& block : st.stages) {
        for (size_t i = 1; i < block.size(); ++i)
            if (t.level[block[i]] != t.level[block[0]]) out.is_stratified = false;
    }

    out.is_uniform = true;
    std::vector<int> outdeg(p + 1, -1);
    for (int k = 0; k <= p && out.is_uniform; ++k) {
        for (int v : levels[k]) {
            int d = static_cast<int>(t.kids[v].size());
            if (outdeg[k] == -1) outdeg[k] = d;
            if (d != outdeg[k]) out.is_uniform = false;
        }
    }

    // compatibly labeled: same-stage vertices carry equal labels matched by
    // outcome index
    out.is_compatibly_labeled = out.is_stratified && out.is_uniform;
    if (out.is_compatibly_labeled) {
        for (const auto& block : st.stages) {
            const auto& kids0 = t.kids[block[0]];
            for (size_t i = 1; i < block.size() && out.is_compatibly_labeled; ++i) {
                const auto& kidsi = t.kids[block[i]];
                if (kidsi.size() != kids0.size()) {
                    out.is_compatibly_labeled = false;
                    break;
                }
                for (size_t c = 0; c < kids0.size(); ++c)
                    if (t.in_label[kids0[c]] != t.in_label[kidsi[c]] ||
                        t.in_outcome[kids0[c]] != t.in_outcome[kidsi[c]])
                        out.is_compatibly_labeled = false;
            }
        }
    }

    if (!out.is_compatibly_labeled) return out;

    // every level 1..p-1 must be partitioned by the context of some subset
    // of earlier positions
    out.is_dag_representable = true;
    // outcome tuple per vertex from the path's outcome indices
    std::vector<std::vector<int>> tuple(t.name.size());
    {
        std::deque<int> work{t.root};
        while (!work.empty()) {
            int v = work.front();
            work.pop_front();
            for (int c : t.kids[v]) {
                tuple[c] = tuple[v];
                tuple[c].push_back(t.in_outcome[c]);
                work.push_back(c);
            }
        }
    }
    out.contexts.assign(std::max(0, p - 1), {});
    for (int k = 1; k <= p - 1 && out.is_dag_representable; ++k) {
        bool found = false;
        for (uint32_t mask = 0; mask < (1u << k) && !found; ++mask) {
            std::map<std::vector<int>, std::set<int>> by_context;
            for (int v : levels[k]) {
                std::vector<int> ctx;
                for (int b = 0; b < k; ++b)
                    if (mask & (1u << b)) ctx.push_back(tuple[v][b]);
                by_context[ctx].insert(st.stage_of[v]);
            }
            bool ok = true;
            std::set<int> used;
            for (const auto& [ctx, stage_ids] : by_context) {
                if (stage_ids.size() != 1 || used.count(*stage_ids.begin())) {
                    ok = false;
                    break;
                }
                used.insert(*stage_ids.begin());
            }
            if (ok) {
                found = true;
                for (int b = 0; b < k; ++b)
                    if (mask & (1u << b)) out.contexts[k - 1].insert(b + 1);
            }
        }
        if (!found) out.is_dag_representable = false;
    }
    if (!out.is_dag_representable) out.contexts.clear();
    return out;
}

std::vector<Polynomial> interpolating_polynomials(const Tree& tree) {
    int n = static_cast<int>(tree.name.size());
    std::vector<Polynomial> t_poly(n);
    // process in decreasing level order
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return tree.level[a] > tree.level[b]; });
    for (int v : order) {
        if (tree.is_leaf(v)) {
            t_poly[v] = Polynomial::constant(tree.table, 1);
            continue;
        }
        Polynomial sum(tree.table);
        for (int c : tree.kids[v])
            sum = sum + Polynomial::variable(tree.table, tree.in_label[c]) * t_poly[c];
        t_poly[v] = std::move(sum);
    }
    return t_poly;
}

Polynomial interpolating_polynomial(const StagedTree& st, int v) {
    return interpolating_polynomials(st.tree)[v];
}

std::optional<BalanceWitness> balanced_counterexample(const Tree& tree,
                                                      const std::vector<std::vector<int>>& stages) {
    auto t_poly = interpolating_polynomials(tree);
    for (const auto& block : stages) {
        for (size_t a = 0; a < block.size(); ++a) {
            for (size_t b = a + 1; b < block.size(); ++b) {
                int v = block[a], w = block[b];
                // match children by label
                std::map<uint32_t, int> w_child;
                for (int c : tree.kids[w]) w_child[tree.in_label[c].id] = c;
                const auto& vk = tree.kids[v];
                for (size_t i = 0; i < vk.size(); ++i) {
                    for (size_t j = i + 1; j < vk.size(); ++j) {
                        int vi = vk[i], vj = vk[j];
                        int wi = w_child.at(tree.in_label[vi].id);
                        int wj = w_child.at(tree.in_label[vj].id);
                        if (t_poly[vi] * t_poly[wj] != t_poly[wi] * t_poly[vj])
                            return BalanceWitness{v, w, tree.in_label[vi], tree.in_label[vj]};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<BalanceWitness> balanced_counterexample(const StagedTree& st) {
    return balanced_counterexample(st.tree, st.stages);
}

bool is_balanced(const StagedTree& st) { return !balanced_counterexample(st).has_value(); }

std::vector<Rational> parameterize(const StagedTree& st, const Assignment& x) {
    const Tree& t = st.tree;
    for (const auto& [sym, val] : x)
        if (!(val > 0)) throw std::invalid_argument("parameter " + t.table->display(sym) + " is not positive");
    for (int v = 0; v < static_cast<int>(t.name.size()); ++v) {
        if (t.is_leaf(v)) continue;
        Rational sum = 0;
        for (int c : t.kids[v]) {
            auto it = x.find(t.in_label[c]);
            if (it == x.end())
                throw std::invalid_argument("no value for label " + t.table->display(t.in_label[c]));
            sum += it->second;
        }
        if (sum != 1)
            throw std::invalid_argument("floret at vertex " + t.name[v] + " does not sum to 1");
    }
    std::vector<Rational> probs(t.name.size(), Rational(1));
    std::deque<int> work{t.root};
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int c : t.kids[v]) {
            probs[c] = probs[v] * x.at(t.in_label[c]);
            work.push_back(c);
        }
    }
    std::vector<Rational> out;
    out.reserve(t.leaves.size());
    for (int leaf : t.leaves) out.push_back(probs[leaf]);
    return out;
}

Assignment recover_parameters(const StagedTree& st, const std::vector<Rational>& leaf_probs) {
    const Tree& t = st.tree;
    if (leaf_probs.size() != t.leaves.size())
        throw std::invalid_argument("leaf vector length mismatch");
    Rational total = 0;
    for (const auto& p : leaf_probs) {
        if (!(p > 0)) throw std::invalid_argument("leaf probabilities must be strictly positive");
        total += p;
    }
    if (total != 1) throw std::invalid_argument("leaf probabilities must sum to exactly 1");
    // p_[v] = sum of leaves under v
    std::vector<Rational> mass(t.name.size(), Rational(0));
    for (size_t i = 0; i < t.leaves.size(); ++i) mass[t.leaves[i]] = leaf_probs[i];
    std::vector<int> order(t.name.size());
    for (size_t v = 0; v < order.size(); ++v) order[v] = static_cast<int>(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.level[a] > t.level[b]; });
    for (int v : order)
        if (!t.is_leaf(v))
            for (int c : t.kids[v]) mass[v] += mass[c];
    Assignment x;
    for (int v = 0; v < static_cast<int>(t.name.size()); ++v) {
        if (v == t.root) continue;
        Rational ratio = mass[v] / mass[t.parent[v]];
        auto [it, inserted] = x.emplace(t.in_label[v], ratio);
        if (!inserted && it->second != ratio) {
            int stage = st.stage_of[t.parent[v]];
            throw std::invalid_argument("inconsistent ratios for label " + t.table->display(t.in_label[v]) +
                                        " across stage " + std::to_string(stage) +
                                        " (vertex " + t.name[t.parent[v]] + ")");
        }
    }
    return x;
}

Ceg ceg_quotient(const StagedTree& st) {
    const Tree& t = st.tree;
    int n = static_cast<int>(t.name.size());
    // bottom-up fingerprints: leaves share one class; internal classes key on
    // the label-sorted list of (label, child class)
    std::vector<int> cls(n, -1);
    std::map<std::vector<std::pair<uint32_t, int>>, int> memo;
    std::vector<int> order(n);
    for (int v = 0; v < n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return t.level[a] > t.level[b]; });
    int next_cls = 1;  // 0 = sink
    std::vector<int> rep{-1};
    for (int v : order) {
        if (t.is_leaf(v)) {
            cls[v] = 0;
            continue;
        }
        std::vector<std::pair<uint32_t, int>> key;
        for (int c : t.kids[v]) key.emplace_back(t.in_label[c].id, cls[c]);
        std::sort(key.begin(), key.end());
        auto [it, inserted] = memo.emplace(std::move(key), next_cls);
        if (inserted) {
            ++next_cls;
            rep.push_back(v);
        }
        cls[v] = it->second;
    }
    // renumber positions in breadth-first order from the root for stable output
    std::vector<int> renum(next_cls, -1);
    std::vector<int> bfs_rep;
    int assigned = 0;
    std::deque<int> work{t.root};
    std::vector<bool> seen_cls(next_cls, false);
    renum[cls[t.root]] = assigned++;
    bfs_rep.push_back(t.root);
    seen_cls[cls[t.root]] = true;
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int c : t.kids[v]) {
            if (!t.is_leaf(c) && !seen_cls[cls[c]]) {
                seen_cls[cls[c]] = true;
                renum[cls[c]] = assigned++;
                bfs_rep.push_back(c);
            }
            if (!t.is_leaf(c)) work.push_back(c);
        }
    }
    int sink = assigned;  // last position
    Ceg ceg;
    ceg.root = 0;
    ceg.sink = sink;
    ceg.position_of.assign(n, -1);
    for (int v = 0; v < n; ++v) ceg.position_of[v] = t.is_leaf(v) ? sink : renum[cls[v]];
    ceg.representative.assign(sink + 1, -1);
    ceg.stage_of.assign(sink + 1, -1);
    ceg.edges.assign(sink + 1, {});
    for (int p = 0; p < sink; ++p) {
        int v = bfs_rep[p];
        ceg.representative[p] = v;
        ceg.stage_of[p] = st.stage_of[v];
        for (int c : t.kids[v])
            ceg.edges[p].push_back({t.in_label[c], t.in_outcome[c], ceg.position_of[c]});
    }
    return ceg;
}

}  // namespace stkit
