#include "snakes/automata.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace snakes {

// ---------------------------------------------------------------------------
// TreeDomain
// ---------------------------------------------------------------------------

TreeDomain TreeDomain::full(std::vector<std::string> directionNames) {
    TreeDomain d;
    d.directions = std::move(directionNames);
    d.delta = {std::vector<int>(d.directions.size(), 0)};
    d.accepting = {true};
    return d;
}

void TreeDomain::validate() const {
    if (directions.empty()) throw instance_error("tree domain: empty direction alphabet");
    const int n = static_cast<int>(delta.size());
    if (static_cast<int>(accepting.size()) != n || start < 0 || start >= n)
        throw instance_error("tree domain: malformed DFA");
    for (const auto& row : delta) {
        if (static_cast<int>(row.size()) != arity())
            throw instance_error("tree domain: ragged transition table");
        for (int v : row)
            if (v < -1 || v >= n) throw instance_error("tree domain: transition out of range");
    }
    if (!accepting[start]) throw instance_error("tree domain: the empty word must be in W");
    // prefix-closure: every reachable state that can reach an accepting state
    // must itself be accepting
    std::vector<bool> reach(n, false);
    std::vector<int> stack{start};
    reach[start] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        for (int v : delta[q])
            if (v >= 0 && !reach[v]) {
                reach[v] = true;
                stack.push_back(v);
            }
    }
    std::vector<bool> coreach(n, false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int q = 0; q < n; ++q) {
            if (coreach[q]) continue;
            bool hit = accepting[q];
            for (int v : delta[q])
                if (v >= 0 && coreach[v]) hit = true;
            if (hit) {
                coreach[q] = true;
                changed = true;
            }
        }
    }
    for (int q = 0; q < n; ++q)
        if (reach[q] && coreach[q] && !accepting[q])
            throw instance_error("tree domain: W is not prefix-closed");
}

int TreeDomain::state_at(const std::vector<int>& word) const {
    int q = start;
    for (int dir : word) {
        if (dir < 0 || dir >= arity()) throw instance_error("tree domain: bad direction");
        q = delta[q][dir];
        if (q < 0 || !accepting[q]) return -1;
    }
    return q;
}

uint32_t TreeDomain::branching(int state) const {
    uint32_t mask = 0;
    for (int dir = 0; dir < arity(); ++dir) {
        int v = delta[state][dir];
        if (v >= 0 && accepting[v]) mask |= (1u << dir);
    }
    return mask;
}

std::set<uint32_t> TreeDomain::branchings() const {
    std::set<uint32_t> out;
    std::vector<bool> reach(delta.size(), false);
    std::vector<int> stack{start};
    reach[start] = true;
    while (!stack.empty()) {
        int q = stack.back();
        stack.pop_back();
        if (accepting[q]) out.insert(branching(q));
        for (int v : delta[q])
            if (v >= 0 && accepting[v] && !reach[v]) {
                reach[v] = true;
                stack.push_back(v);
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// RabinAutomaton
// ---------------------------------------------------------------------------

void RabinAutomaton::validate() const {
    if (!domain) throw instance_error("automaton: missing tree domain");
    domain->validate();
    if (num_states < 1 || start < 0 || start >= num_states)
        throw instance_error("automaton: bad state set");
    auto branchings = domain->branchings();
    for (const auto& p : productions) {
        if (p.state < 0 || p.state >= num_states || p.sigma < 0 ||
            p.sigma >= static_cast<int>(alphabet.size()))
            throw instance_error("automaton: production out of range");
        if (static_cast<int>(p.children.size()) != domain->arity())
            throw instance_error("automaton: production arity mismatch");
        uint32_t mask = 0;
        for (int dir = 0; dir < domain->arity(); ++dir) {
            if (p.children[dir] < -1 || p.children[dir] >= num_states)
                throw instance_error("automaton: production child out of range");
            if (p.children[dir] >= 0) mask |= (1u << dir);
        }
        if (!branchings.count(mask))
            throw instance_error("automaton: dagger pattern matches no domain branching");
    }
    for (const auto& pr : pairs)
        for (int q : pr.forbidden)
            if (q < 0 || q >= num_states) throw instance_error("automaton: acceptance pair out of range");
    for (const auto& pr : pairs)
        for (int q : pr.required)
            if (q < 0 || q >= num_states) throw instance_error("automaton: acceptance pair out of range");
}

// ---------------------------------------------------------------------------
// prefix runs
// ---------------------------------------------------------------------------

bool check_run_prefix(const RabinAutomaton& a, const PrefixRun& run) {
    a.validate();
    const TreeDomain& dom = *a.domain;
    // the labeling must cover exactly W up to the depth
    std::vector<std::vector<int>> level{{}};
    for (int d = 0; d <= run.depth; ++d) {
        std::vector<std::vector<int>> next;
        for (auto& w : level) {
            if (!run.labels.count(w)) return false;
            if (d < run.depth)
                for (int dir = 0; dir < dom.arity(); ++dir) {
                    auto v = w;
                    v.push_back(dir);
                    if (dom.in_domain(v)) next.push_back(std::move(v));
                }
        }
        level = std::move(next);
    }
    for (const auto& [w, lab] : run.labels)
        if (static_cast<int>(w.size()) > run.depth || !dom.in_domain(w)) return false;

    auto rootIt = run.labels.find({});
    if (rootIt == run.labels.end() || rootIt->second.first != a.start) return false;
    for (const auto& [w, lab] : run.labels) {
        if (static_cast<int>(w.size()) >= run.depth) continue; // leaves have no checked production
        RabinAutomaton::Production want;
        want.state = lab.first;
        want.sigma = lab.second;
        want.children.assign(dom.arity(), -1);
        for (int dir = 0; dir < dom.arity(); ++dir) {
            auto v = w;
            v.push_back(dir);
            auto it = run.labels.find(v);
            if (it != run.labels.end()) want.children[dir] = it->second.first;
        }
        bool found = false;
        for (const auto& p : a.productions)
            if (p == want) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// boolean combinations
// ---------------------------------------------------------------------------

RabinAutomaton combine(const RabinAutomaton& a1, const RabinAutomaton& a2, bool intersection) {
    a1.validate();
    a2.validate();
    if (!(*a1.domain == *a2.domain)) throw instance_error("combine: tree domains differ");
    if (a1.alphabet != a2.alphabet) throw instance_error("combine: alphabets differ");
    RabinAutomaton out;
    out.domain = a1.domain;
    out.alphabet = a1.alphabet;
    const int arity = a1.domain->arity();

    if (intersection) {
        const int n2 = a2.num_states;
        out.num_states = a1.num_states * n2;
        out.start = a1.start * n2 + a2.start;
        for (const auto& p1 : a1.productions)
            for (const auto& p2 : a2.productions) {
                if (p1.sigma != p2.sigma) continue;
                bool sameShape = true;
                for (int dir = 0; dir < arity; ++dir)
                    if ((p1.children[dir] < 0) != (p2.children[dir] < 0)) sameShape = false;
                if (!sameShape) continue;
                RabinAutomaton::Production p;
                p.state = p1.state * n2 + p2.state;
                p.sigma = p1.sigma;
                p.children.assign(arity, -1);
                for (int dir = 0; dir < arity; ++dir)
                    if (p1.children[dir] >= 0) p.children[dir] = p1.children[dir] * n2 + p2.children[dir];
                out.productions.push_back(std::move(p));
            }
        // pair product: N lifts componentwise, P requires joint recurrence
        for (const auto& pr1 : a1.pairs)
            for (const auto& pr2 : a2.pairs) {
                RabinAutomaton::AcceptancePair pr;
                for (int q1 : pr1.forbidden)
                    for (int q2 = 0; q2 < n2; ++q2) pr.forbidden.push_back(q1 * n2 + q2);
                for (int q1 = 0; q1 < a1.num_states; ++q1)
                    for (int q2 : pr2.forbidden) pr.forbidden.push_back(q1 * n2 + q2);
                std::sort(pr.forbidden.begin(), pr.forbidden.end());
                pr.forbidden.erase(std::unique(pr.forbidden.begin(), pr.forbidden.end()),
                                   pr.forbidden.end());
                for (int q1 : pr1.required)
                    for (int q2 : pr2.required) pr.required.push_back(q1 * n2 + q2);
                std::sort(pr.required.begin(), pr.required.end());
                out.pairs.push_back(std::move(pr));
            }
        return out;
    }

    // union: fresh start duplicating both start states' productions
    out.num_states = 1 + a1.num_states + a2.num_states;
    out.start = 0;
    auto lift = [&](const RabinAutomaton::Production& p, int offset, bool fromStart) {
        RabinAutomaton::Production q;
        q.state = fromStart ? 0 : p.state + offset;
        q.sigma = p.sigma;
        q.children.assign(arity, -1);
        for (int dir = 0; dir < arity; ++dir)
            if (p.children[dir] >= 0) q.children[dir] = p.children[dir] + offset;
        return q;
    };
    for (const auto& p : a1.productions) {
        out.productions.push_back(lift(p, 1, false));
        if (p.state == a1.start) out.productions.push_back(lift(p, 1, true));
    }
    for (const auto& p : a2.productions) {
        out.productions.push_back(lift(p, 1 + a1.num_states, false));
        if (p.state == a2.start) out.productions.push_back(lift(p, 1 + a1.num_states, true));
    }
    for (const auto& pr : a1.pairs) {
        RabinAutomaton::AcceptancePair q;
        for (int x : pr.forbidden) q.forbidden.push_back(x + 1);
        for (int x : pr.required) q.required.push_back(x + 1);
        out.pairs.push_back(std::move(q));
    }
    for (const auto& pr : a2.pairs) {
        RabinAutomaton::AcceptancePair q;
        for (int x : pr.forbidden) q.forbidden.push_back(x + 1 + a1.num_states);
        for (int x : pr.required) q.required.push_back(x + 1 + a1.num_states);
        out.pairs.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// emptiness
// ---------------------------------------------------------------------------

namespace {

struct StrategySearch {
    const RabinAutomaton& a;
    const TreeDomain& dom;
    int64_t budget;
    int64_t tried = 0;
    bool exceeded = false;

    // game nodes (q, m); discovered in deterministic order
    std::vector<std::pair<int, int>> nodes;
    std::map<std::pair<int, int>, int> nodeIndex;
    std::vector<int> choice; // node -> production index

    std::vector<int> optionsFor(int q, int m) const {
        std::vector<int> out;
        uint32_t need = dom.branching(m);
        for (int pi = 0; pi < static_cast<int>(a.productions.size()); ++pi) {
            const auto& p = a.productions[pi];
            if (p.state != q) continue;
            uint32_t mask = 0;
            for (int dir = 0; dir < dom.arity(); ++dir)
                if (p.children[dir] >= 0) mask |= (1u << dir);
            if (mask == need) out.push_back(pi);
        }
        return out;
    }

    bool accepting_strategy() const {
        // successor graph under the chosen productions
        const int n = static_cast<int>(nodes.size());
        if (n > 20) return false; // guarded by budget outside
        std::vector<std::vector<int>> succ(n);
        for (int i = 0; i < n; ++i) {
            const auto& p = a.productions[choice[i]];
            auto [q, m] = nodes[i];
            (void)q;
            for (int dir = 0; dir < dom.arity(); ++dir) {
                if (p.children[dir] < 0) continue;
                succ[i].push_back(nodeIndex.at({p.children[dir], dom.delta[m][dir]}));
            }
        }
        // every strongly connected recurrence set must satisfy some pair
        for (uint32_t sub = 1; sub < (1u << n); ++sub) {
            // strongly connected with at least one edge, inside `sub`
            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (sub & (1u << i)) members.push_back(i);
            bool connected = true;
            bool hasEdge = false;
            for (int u : members) {
                // reachability within sub from u
                std::vector<bool> seen(n, false);
                std::vector<int> stack{u};
                seen[u] = true;
                while (!stack.empty()) {
                    int x = stack.back();
                    stack.pop_back();
                    for (int v : succ[x]) {
                        if (!(sub & (1u << v))) continue;
                        hasEdge = true;
                        if (!seen[v]) {
                            seen[v] = true;
                            stack.push_back(v);
                        }
                    }
                }
                for (int v : members)
                    if (!seen[v]) connected = false;
                if (!connected) break;
            }
            if (!connected || !hasEdge) continue;
            // self-reachability: members must lie on a closed walk
            bool closedWalk = true;
            for (int u : members) {
                bool back = false;
                for (int v : succ[u])
                    if (sub & (1u << v)) back = true;
                if (!back) closedWalk = false;
            }
            if (!closedWalk) continue;
            std::set<int> qinf;
            for (int i : members) qinf.insert(nodes[i].first);
            bool ok = false;
            for (const auto& pr : a.pairs) {
                bool avoid = true, meet = false;
                for (int q : pr.forbidden)
                    if (qinf.count(q)) avoid = false;
                for (int q : pr.required)
                    if (qinf.count(q)) meet = true;
                if (avoid && meet) {
                    ok = true;
                    break;
                }
            }
            if (!ok) return false;
        }
        return true;
    }

    std::optional<RegularTree> search() {
        nodes.clear();
        nodeIndex.clear();
        choice.clear();
        int m0 = dom.start;
        nodes.push_back({a.start, m0});
        nodeIndex[{a.start, m0}] = 0;
        choice.assign(1, -1);
        if (assign(0)) return build_tree();
        return std::nullopt;
    }

    bool assign(size_t i) {
        if (exceeded) return false;
        if (i == nodes.size()) {
            ++tried;
            if (tried > budget) {
                exceeded = true;
                return false;
            }
            return accepting_strategy();
        }
        auto [q, m] = nodes[i];
        for (int pi : optionsFor(q, m)) {
            choice[i] = pi;
            // discover successors
            size_t added = 0;
            const auto& p = a.productions[pi];
            for (int dir = 0; dir < dom.arity(); ++dir) {
                if (p.children[dir] < 0) continue;
                std::pair<int, int> key{p.children[dir], dom.delta[m][dir]};
                if (!nodeIndex.count(key)) {
                    if (nodes.size() >= 20) { // game graph beyond the emptiness budget
                        exceeded = true;
                        for (; added > 0; --added) {
                            nodeIndex.erase(nodes.back());
                            nodes.pop_back();
                            choice.pop_back();
                        }
                        return false;
                    }
                    nodeIndex[key] = static_cast<int>(nodes.size());
                    nodes.push_back(key);
                    choice.push_back(-1);
                    ++added;
                }
            }
            if (assign(i + 1)) return true;
            for (; added > 0; --added) {
                nodeIndex.erase(nodes.back());
                nodes.pop_back();
                choice.pop_back();
            }
            if (exceeded) return false;
        }
        choice[i] = -1;
        return false;
    }

    RegularTree build_tree() const {
        RegularTree t;
        t.alphabet = a.alphabet;
        t.start = 0;
        const int n = static_cast<int>(nodes.size());
        t.delta.assign(n, std::vector<int>(dom.arity(), -1));
        t.output.assign(n, 0);
        t.run_state.assign(n, 0);
        for (int i = 0; i < n; ++i) {
            const auto& p = a.productions[choice[i]];
            t.output[i] = p.sigma;
            t.run_state[i] = nodes[i].first;
            auto [q, m] = nodes[i];
            (void)q;
            for (int dir = 0; dir < dom.arity(); ++dir)
                if (p.children[dir] >= 0)
                    t.delta[i][dir] = nodeIndex.at({p.children[dir], dom.delta[m][dir]});
        }
        return t;
    }
};

} // namespace

EmptinessResult emptiness(const RabinAutomaton& a, int64_t strategyBudget) {
    a.validate();
    StrategySearch s{a, *a.domain, strategyBudget};
    EmptinessResult out;
    auto tree = s.search();
    out.strategies_tried = s.tried;
    if (tree) {
        out.outcome = EmptinessOutcome::NonEmpty;
        out.witness = std::move(tree);
        return out;
    }
    out.outcome = s.exceeded ? EmptinessOutcome::BudgetExceeded : EmptinessOutcome::Empty;
    return out;
}

PrefixRun expand_witness(const RabinAutomaton& a, const RegularTree& tree, int depth) {
    PrefixRun run;
    run.depth = depth;
    const TreeDomain& dom = *a.domain;
    std::vector<std::pair<std::vector<int>, int>> level{{{}, tree.start}};
    for (int d = 0; d <= depth; ++d) {
        std::vector<std::pair<std::vector<int>, int>> next;
        for (auto& [w, st] : level) {
            run.labels[w] = {tree.run_state[st], tree.output[st]};
            if (d == depth) continue;
            for (int dir = 0; dir < dom.arity(); ++dir) {
                int target = tree.delta[st][dir];
                if (target < 0) continue;
                auto v = w;
                v.push_back(dir);
                next.push_back({std::move(v), target});
            }
        }
        level = std::move(next);
    }
    return run;
}

std::string RegularTree::to_text(const TreeDomain& dom) const {
    std::ostringstream out;
    out << "regular-tree states=" << output.size() << " start=" << start << "\n";
    for (size_t i = 0; i < output.size(); ++i) {
        out << "  m" << i << ": output=" << alphabet.at(output[i]) << " run-state=" << run_state[i];
        for (int dir = 0; dir < dom.arity(); ++dir)
            if (delta[i][dir] >= 0)
                out << " " << dom.directions[dir] << "->m" << delta[i][dir];
        out << "\n";
    }
    return out.str();
}

} // namespace snakes
