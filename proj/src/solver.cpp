#include "snakes/solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace snakes {

void Budget::validate() const {
    if (max_path_length < 1 || max_period < 1 || max_radius < 0 || max_nodes < 1 ||
        max_configs < 1 || wall_ms < 1)
        throw instance_error("budget: all bounds must be positive");
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Yes: return "Yes";
        case Outcome::No: return "No";
        default: return "Unknown";
    }
}

const char* certificate_name(CertificateKind c) {
    switch (c) {
        case CertificateKind::ExhaustedRadius: return "exhausted-radius";
        case CertificateKind::ExhaustedLength: return "exhausted-length";
        case CertificateKind::ClosedConfigurations: return "closed-configurations";
        default: return "none";
    }
}

const char* case_name(CaseResult::Kind k) {
    switch (k) {
        case CaseResult::Case1: return "Case1-unbounded-projection";
        case CaseResult::Case2: return "Case2-bounded-projection";
        case CaseResult::Case3: return "Case3-no-infinite-snake";
        default: return "Unknown";
    }
}

std::string Region::describe() const {
    std::ostringstream out;
    switch (kind) {
        case Fiber: out << "fiber(" << value << ")"; break;
        case OutsideBall: out << "outside-ball(" << value << ")"; break;
        case Elements: out << "elements(" << elems.size() << ")"; break;
    }
    return out.str();
}

namespace {

std::string step_word_text(const DirectedTileset& ts, int step) {
    std::string s;
    for (size_t j = 0; j < ts.steps[step].size(); ++j) s += (j ? " " : "") + ts.steps[step][j];
    return s;
}

} // namespace

std::string Verdict::to_text(const MarkedGroup& g, const DirectedTileset& ts) const {
    std::ostringstream out;
    out << "outcome = " << outcome_name(outcome);
    if (outcome == Outcome::No)
        out << "\ncertificate = " << certificate_name(certificate) << " bound = " << bound;
    if (!note.empty()) out << "\nnote = " << note;
    if (path_witness) {
        out << "\nwitness-path start = \"" << g.generators().format_word(path_witness->start_word)
            << "\" colors = [";
        for (size_t i = 0; i < path_witness->colors.size(); ++i)
            out << (i ? " " : "") << path_witness->colors[i];
        out << "] vertices = [";
        for (size_t i = 0; i < path_witness->vertices.size(); ++i)
            out << (i ? "; " : "") << g.format(path_witness->vertices[i]);
        out << "]";
    }
    if (ouroboros_witness) {
        out << "\nwitness-ouroboros n = " << ouroboros_witness->vertices.size() << " colors = [";
        for (size_t i = 0; i < ouroboros_witness->colors.size(); ++i)
            out << (i ? " " : "") << ouroboros_witness->colors[i];
        out << "] vertices = [";
        for (size_t i = 0; i < ouroboros_witness->vertices.size(); ++i)
            out << (i ? "; " : "") << g.format(ouroboros_witness->vertices[i]);
        out << "]";
    }
    if (periodic_witness) {
        out << "\nwitness-periodic period = " << periodic_witness->period
            << " translation = " << g.format(periodic_witness->translation) << " colors = [";
        for (size_t i = 0; i < periodic_witness->colors.size(); ++i)
            out << (i ? " " : "") << periodic_witness->colors[i];
        out << "] steps = [";
        for (size_t i = 0; i < periodic_witness->colors.size(); ++i)
            out << (i ? "; " : "")
                << "\"" << step_word_text(ts, ts.colors[periodic_witness->colors[i]].step) << "\"";
        out << "]";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Depth-first snake search core
// ---------------------------------------------------------------------------

namespace {

using SteadyClock = std::chrono::steady_clock;

SteadyClock::time_point deadline_of(const Budget& b) {
    return SteadyClock::now() + std::chrono::milliseconds(b.wall_ms);
}

/// Incremental self-avoiding colored path with full validity checking.
/// Invariant: the stored prefix is valid for the requested mode, so search
/// trees are pruned exactly at the first violation.
struct PathSearch {
    const TilesetContext& ctx;
    Strength strength;
    Directedness directedness;
    int64_t nodeBudget;
    SteadyClock::time_point deadline;
    int64_t nodes = 0;
    bool truncated = false;

    PathSearch(const TilesetContext& c, Strength s, Directedness d, const Budget& budget)
        : ctx(c), strength(s), directedness(d), nodeBudget(budget.max_nodes),
          deadline(deadline_of(budget)) {}

    std::vector<Element> verts;
    std::vector<int> colors;
    std::map<Canon, int> at;

    bool budget_ok() {
        if (nodes >= nodeBudget || ((nodes & 4095) == 4095 && SteadyClock::now() > deadline)) {
            truncated = true;
            return false;
        }
        ++nodes;
        return true;
    }

    // adjacency dominoes between the new vertex and the current support
    bool strong_ok(const Element& v, int color) const {
        for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
            auto fwd = at.find(ctx.group.multiply(v, ctx.step_eval[s]).canon);
            if (fwd != at.end() && !ctx.has_domino(color, static_cast<int>(s), colors[fwd->second]))
                return false;
            auto bwd = at.find(ctx.group.multiply(v, ctx.step_eval_inv[s]).canon);
            if (bwd != at.end() && !ctx.has_domino(colors[bwd->second], static_cast<int>(s), color))
                return false;
        }
        return true;
    }

    bool push_root(const Element& v, int color) {
        if (!budget_ok()) return false;
        at.emplace(v.canon, 0);
        verts.push_back(v);
        colors.push_back(color);
        if (strength == Strength::Strong && !strong_ok(v, color)) {
            pop();
            return false;
        }
        return true;
    }

    // extend by a declared domino; the caller chose (step, color) from D
    bool push_step(int step, int color) {
        if (!budget_ok()) return false;
        Element v = ctx.group.multiply(verts.back(), ctx.step_eval[step]);
        if (at.count(v.canon)) return false;
        at.emplace(v.canon, static_cast<int>(verts.size()));
        verts.push_back(v);
        colors.push_back(color);
        if (strength == Strength::Strong && !strong_ok(v, color)) {
            pop();
            return false;
        }
        return true;
    }

    void pop() {
        at.erase(verts.back().canon);
        verts.pop_back();
        colors.pop_back();
    }

    // extension candidates in declaration order: (step, nextColor)
    std::vector<std::pair<int, int>> extensions() const {
        std::vector<std::pair<int, int>> out;
        int c = colors.back();
        for (const auto& d : ctx.from_color(c)) {
            if (directedness == Directedness::Directed && d.step != ctx.direction_of(c)) continue;
            out.push_back({d.step, d.to});
        }
        return out;
    }
};

} // namespace

// ---------------------------------------------------------------------------
// path snake existence
// ---------------------------------------------------------------------------

Verdict path_snake_search(const MarkedGroup& g, const DirectedTileset& ts, Strength strength,
                          Directedness directedness, int minVertices, const Budget& budget) {
    budget.validate();
    TilesetContext ctx(g, ts);
    Verdict v;
    if (ts.colors.empty()) {
        v.outcome = Outcome::No;
        v.certificate = CertificateKind::ExhaustedLength;
        v.bound = 1;
        v.note = "tileset has no colors";
        return v;
    }
    PathSearch search(ctx, strength, directedness, budget);
    std::optional<FinitePathSnake> witness;

    auto dfs = [&](auto&& self) -> bool {
        if (static_cast<int>(search.verts.size()) >= minVertices) {
            witness = FinitePathSnake{search.verts, search.colors, {}};
            return true;
        }
        if (static_cast<int>(search.verts.size()) >= budget.max_path_length) return false;
        for (auto [step, color] : search.extensions()) {
            if (search.push_step(step, color)) {
                if (self(self)) return true;
                search.pop();
            }
            if (search.truncated) return false;
        }
        return false;
    };

    for (int c = 0; c < static_cast<int>(ts.colors.size()) && !witness; ++c) {
        if (search.push_root(g.identity(), c)) {
            dfs(dfs);
            if (!witness) search.pop();
        }
        if (search.truncated) break;
    }
    v.nodes_used = search.nodes;
    if (witness) {
        ValidityMode mode{strength, directedness, Shape::Path};
        if (!validate_snake(g, ts, *witness, mode))
            throw std::logic_error("path_snake_search: witness failed re-validation");
        v.outcome = Outcome::Yes;
        v.path_witness = std::move(witness);
        return v;
    }
    if (search.truncated) {
        v.outcome = Outcome::Unknown;
        v.note = "node budget exhausted";
        return v;
    }
    v.outcome = Outcome::No;
    v.certificate = CertificateKind::ExhaustedLength;
    v.bound = budget.max_path_length;
    return v;
}

// ---------------------------------------------------------------------------
// ouroboros search
// ---------------------------------------------------------------------------

Verdict ouroboros_search(const MarkedGroup& g, const DirectedTileset& ts, Strength strength,
                         Directedness directedness, const Budget& budget) {
    budget.validate();
    TilesetContext ctx(g, ts);
    Verdict v;
    if (ts.colors.empty() || ts.dominoes.empty()) {
        v.outcome = Outcome::No;
        v.certificate = CertificateKind::ExhaustedLength;
        v.bound = 1;
        v.note = "no dominoes";
        return v;
    }
    PathSearch search(ctx, strength, directedness, budget);
    std::optional<Ouroboros> witness;
    ValidityMode mode{strength, directedness, Shape::Ouroboros};

    auto try_close = [&]() -> bool {
        int c = search.colors.back();
        for (const auto& d : ctx.from_color(c)) {
            if (directedness == Directedness::Directed && d.step != ctx.direction_of(c)) continue;
            if (d.to != search.colors[0]) continue;
            Element back = ctx.group.multiply(search.verts.back(), ctx.step_eval[d.step]);
            if (!(back == search.verts[0])) continue;
            Ouroboros cand{search.verts, search.colors};
            if (validate_snake(g, ts, cand, mode)) {
                witness = std::move(cand);
                return true;
            }
        }
        return false;
    };

    auto dfs = [&](auto&& self) -> bool {
        if (try_close()) return true;
        if (static_cast<int>(search.verts.size()) >= budget.max_path_length) return false;
        for (auto [step, color] : search.extensions()) {
            if (search.push_step(step, color)) {
                if (self(self)) return true;
                search.pop();
            }
            if (search.truncated) return false;
        }
        return false;
    };

    for (int c = 0; c < static_cast<int>(ts.colors.size()) && !witness; ++c) {
        if (search.push_root(g.identity(), c)) {
            dfs(dfs);
            if (!witness) search.pop();
        }
        if (search.truncated) break;
    }
    v.nodes_used = search.nodes;
    if (witness) {
        v.outcome = Outcome::Yes;
        v.ouroboros_witness = std::move(witness);
        return v;
    }
    if (search.truncated) {
        v.outcome = Outcome::Unknown;
        v.note = "node budget exhausted";
        return v;
    }
    v.outcome = Outcome::No;
    v.certificate = CertificateKind::ExhaustedLength;
    v.bound = budget.max_path_length;
    return v;
}

// ---------------------------------------------------------------------------
// periodic snakes
// ---------------------------------------------------------------------------

namespace {

Verdict periodic_search_range(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget,
                              bool requireNonzeroPi, int pMin, int pMax) {
    TilesetContext ctx(g, ts);
    if (!ts.directed) throw instance_error("periodic_snake_search: tileset must be directed");
    Verdict v;
    ValidityMode mode = directed_strong(Shape::Infinite);
    PathSearch search(ctx, Strength::Strong, Directedness::Directed, budget);
    std::optional<PeriodicSnake> witness;

    for (int p = pMin; p <= pMax && !witness; ++p) {
        auto dfs = [&](auto&& self) -> bool {
            if (static_cast<int>(search.verts.size()) == p) {
                int c = search.colors.back();
                Element translation =
                    ctx.group.multiply(search.verts.back(), ctx.step_eval[ctx.direction_of(c)]);
                if (requireNonzeroPi && g.has_z_projection() && g.z_projection(translation) == 0)
                    return false;
                PeriodicSnake cand{p, search.verts, translation, search.colors};
                if (validate_snake(g, ts, cand, mode)) {
                    witness = std::move(cand);
                    return true;
                }
                return false;
            }
            for (auto [step, color] : search.extensions()) {
                if (search.push_step(step, color)) {
                    if (self(self)) return true;
                    search.pop();
                }
                if (search.truncated) return false;
            }
            return false;
        };
        for (int c = 0; c < static_cast<int>(ts.colors.size()) && !witness; ++c) {
            if (search.push_root(g.identity(), c)) {
                dfs(dfs);
                if (!witness) search.pop();
            }
            if (search.truncated) break;
        }
        if (search.truncated) break;
    }
    v.nodes_used = search.nodes;
    if (witness) {
        v.outcome = Outcome::Yes;
        v.periodic_witness = std::move(witness);
        return v;
    }
    v.outcome = Outcome::Unknown;
    v.note = search.truncated ? "node budget exhausted" : "no periodic witness within budget";
    v.bound = pMax;
    return v;
}

} // namespace

Verdict periodic_snake_search(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget,
                              bool requireNonzeroPi) {
    budget.validate();
    return periodic_search_range(g, ts, budget, requireNonzeroPi, 1, budget.max_period);
}

// ---------------------------------------------------------------------------
// segment counting and the infinite-snake dual semi-decision
// ---------------------------------------------------------------------------

std::optional<int64_t> count_segments(const MarkedGroup& g, const DirectedTileset& ts, int n,
                                      int64_t nodeBudget) {
    TilesetContext ctx(g, ts);
    if (!ts.directed) throw instance_error("count_segments: tileset must be directed");
    Budget nb;
    nb.max_nodes = nodeBudget;
    PathSearch search(ctx, Strength::Strong, Directedness::Directed, nb);
    int64_t count = 0;
    auto dfs = [&](auto&& self) -> void {
        if (static_cast<int>(search.verts.size()) == n) {
            ++count;
            return;
        }
        for (auto [step, color] : search.extensions()) {
            if (search.push_step(step, color)) {
                self(self);
                search.pop();
            }
            if (search.truncated) return;
        }
    };
    for (int c = 0; c < static_cast<int>(ts.colors.size()); ++c) {
        if (search.push_root(g.identity(), c)) {
            dfs(dfs);
            search.pop();
        }
        if (search.truncated) return std::nullopt;
    }
    return count;
}

Verdict infinite_snake_decide(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget) {
    budget.validate();
    if (!ts.directed) throw instance_error("infinite_snake_decide: tileset must be directed");
    Verdict v;
    bool segmentsAlive = true;
    for (int k = 1; k <= std::max(budget.max_path_length, budget.max_period); ++k) {
        if (segmentsAlive && k <= budget.max_path_length) {
            auto cnt = count_segments(g, ts, k, budget.max_nodes);
            if (!cnt) {
                segmentsAlive = false; // budget: stop the negative side
            } else if (*cnt == 0) {
                v.outcome = Outcome::No;
                v.certificate = CertificateKind::ExhaustedLength;
                v.bound = k;
                v.note = "no valid segment with " + std::to_string(k) + " vertices";
                return v;
            }
        }
        if (k <= budget.max_period) {
            Verdict p = periodic_search_range(g, ts, budget, false, k, k);
            if (p.yes()) return p;
        }
    }
    v.outcome = Outcome::Unknown;
    v.note = "dual semi-decision exhausted its budget";
    return v;
}

// ---------------------------------------------------------------------------
// classifier
// ---------------------------------------------------------------------------

namespace {

/// Range-tracking closure: abstract states are (window of recent relative
/// vertices, color, projection range so far). Sound overapproximation of all
/// strong directed snake prefixes; if it closes with range <= R, every
/// infinite snake has width <= R.
struct WidthClosure {
    static constexpr int kWindow = 6;

    struct Config {
        std::vector<std::pair<Canon, int>> window; // relative canon, color
        int color;
        int64_t lo, hi;
        auto operator<=>(const Config&) const = default;
    };

    const MarkedGroup& g;
    const TilesetContext& ctx;
    int64_t maxConfigs;

    // returns observed width on closure, nullopt on overflow (width > cap) or
    // budget exhaustion (sets budgetHit)
    bool budgetHit = false;
    std::optional<int64_t> run(int64_t cap) {
        std::set<Config> seen;
        std::vector<Config> queue;
        for (int c = 0; c < static_cast<int>(ctx.tileset.colors.size()); ++c) {
            Config cfg{{}, c, 0, 0};
            if (seen.insert(cfg).second) queue.push_back(cfg);
        }
        int64_t width = 0;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            Config cur = queue[qi];
            width = std::max(width, cur.hi - cur.lo);
            int dir = ctx.direction_of(cur.color);
            const Element& e = ctx.step_eval[dir];
            int64_t pd = g.z_projection(e);
            for (const auto& d : ctx.from_color(cur.color)) {
                if (d.step != dir) continue;
                Config next;
                next.color = d.to;
                next.lo = std::min(cur.lo - pd, int64_t(0));
                next.hi = std::max(cur.hi - pd, int64_t(0));
                if (next.hi - next.lo > cap) return std::nullopt;
                // shift the window into the new vertex's coordinates
                bool ok = true;
                const Element einv = ctx.step_eval_inv[dir];
                std::vector<std::pair<Canon, int>> shifted;
                shifted.reserve(cur.window.size() + 1);
                for (const auto& [rel, col] : cur.window)
                    shifted.push_back({g.multiply(einv, Element{&g, rel}).canon, col});
                shifted.push_back({einv.canon, cur.color});
                if (static_cast<int>(shifted.size()) > kWindow)
                    shifted.erase(shifted.begin(), shifted.end() - kWindow);
                for (const auto& [rel, col] : shifted) {
                    if (rel == g.identity().canon) { ok = false; break; } // revisit
                    for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
                        if (ctx.step_eval[s].canon == rel &&
                            !ctx.has_domino(next.color, static_cast<int>(s), col))
                            ok = false;
                        if (ctx.step_eval_inv[s].canon == rel &&
                            !ctx.has_domino(col, static_cast<int>(s), next.color))
                            ok = false;
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                next.window = std::move(shifted);
                if (seen.insert(next).second) {
                    if (static_cast<int64_t>(seen.size()) > maxConfigs) {
                        budgetHit = true;
                        return std::nullopt;
                    }
                    queue.push_back(next);
                }
            }
        }
        return width;
    }
};

} // namespace

CaseResult classify_z(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget) {
    budget.validate();
    if (!g.has_z_projection())
        throw unsupported_capability("classify_z: group has no Z-projection");
    if (!ts.directed) throw instance_error("classify_z: tileset must be directed");
    CaseResult out;

    Verdict inf = infinite_snake_decide(g, ts, budget);
    if (inf.no()) {
        out.kind = CaseResult::Case3;
        out.evidence = std::move(inf);
        return out;
    }

    Verdict p1 = periodic_snake_search(g, ts, budget, /*requireNonzeroPi=*/true);
    if (p1.yes()) {
        out.kind = CaseResult::Case1;
        out.evidence = std::move(p1);
        return out;
    }

    if (inf.yes()) {
        TilesetContext ctx(g, ts);
        WidthClosure closure{g, ctx, budget.max_configs};
        for (int64_t cap = 0; cap <= budget.max_radius; ++cap) {
            auto width = closure.run(cap);
            if (width) {
                out.kind = CaseResult::Case2;
                out.width_bound = *width;
                out.evidence = std::move(inf);
                return out;
            }
            if (closure.budgetHit) break;
        }
        out.note = closure.budgetHit ? "width closure budget exhausted"
                                     : "width closure overflowed all tried bounds";
    } else {
        out.note = "infinite-snake existence undetermined";
    }
    out.kind = CaseResult::Unknown;
    out.evidence = std::move(inf);
    return out;
}

// ---------------------------------------------------------------------------
// reach
// ---------------------------------------------------------------------------

namespace {

struct TargetTest {
    const MarkedGroup& g;
    const Region& region;
    std::set<Canon> ballSet; // for OutsideBall

    TargetTest(const MarkedGroup& gg, const Region& r) : g(gg), region(r) {
        if (region.kind == Region::OutsideBall) {
            LabeledBall b = g.ball(static_cast<int>(region.value));
            for (const auto& v : b.vertices) ballSet.insert(v.canon);
        }
    }
    bool contains(const Element& e) const {
        switch (region.kind) {
            case Region::Fiber: return g.z_projection(e) == region.value;
            case Region::OutsideBall: return !ballSet.count(e.canon);
            case Region::Elements:
                for (const auto& x : region.elems)
                    if (x == e) return true;
                return false;
        }
        return false;
    }
};

} // namespace

Verdict reach(const MarkedGroup& g, const DirectedTileset& ts, const std::vector<Element>& seeds,
              const Region& target, const Budget& budget) {
    budget.validate();
    if (!ts.directed) throw instance_error("reach: tileset must be directed");
    TilesetContext ctx(g, ts);
    TargetTest test(g, target);
    Verdict v;
    if (ts.colors.empty()) {
        v.outcome = Outcome::No;
        v.certificate = CertificateKind::ClosedConfigurations;
        v.bound = 0;
        v.note = "tileset has no colors";
        return v;
    }

    // witness side: concrete self-avoiding search
    PathSearch search(ctx, Strength::Strong, Directedness::Directed, budget);
    std::optional<FinitePathSnake> witness;
    auto dfs = [&](auto&& self) -> bool {
        if (test.contains(search.verts.back())) {
            witness = FinitePathSnake{search.verts, search.colors, {}};
            return true;
        }
        if (static_cast<int>(search.verts.size()) >= budget.max_path_length) return false;
        for (auto [step, color] : search.extensions()) {
            if (search.push_step(step, color)) {
                if (self(self)) return true;
                search.pop();
            }
            if (search.truncated) return false;
        }
        return false;
    };
    for (const auto& seed : seeds) {
        for (int c = 0; c < static_cast<int>(ts.colors.size()) && !witness; ++c) {
            if (search.push_root(seed, c)) {
                dfs(dfs);
                if (!witness) search.pop();
            }
            if (search.truncated) break;
        }
        if (witness || search.truncated) break;
    }
    v.nodes_used = search.nodes;
    if (witness) {
        witness->start_word = {}; // seeds are given elements; words attach at the CLI layer
        v.outcome = Outcome::Yes;
        v.path_witness = std::move(witness);
        return v;
    }

    // closure side: (position, color, suffix window) overapproximation
    struct Config {
        Canon pos;
        int color;
        std::vector<std::pair<Canon, int>> window;
        auto operator<=>(const Config&) const = default;
    };
    constexpr int kWindow = 6;
    std::set<Config> seen;
    std::vector<Config> queue;
    bool hitTarget = false;
    for (const auto& seed : seeds)
        for (int c = 0; c < static_cast<int>(ts.colors.size()); ++c) {
            Config cfg{seed.canon, c, {}};
            if (seen.insert(cfg).second) queue.push_back(cfg);
        }
    bool budgetHit = false;
    for (size_t qi = 0; qi < queue.size() && !budgetHit; ++qi) {
        Config cur = queue[qi];
        Element pos{&g, cur.pos};
        if (test.contains(pos)) {
            hitTarget = true;
            break;
        }
        int dir = ctx.direction_of(cur.color);
        for (const auto& d : ctx.from_color(cur.color)) {
            if (d.step != dir) continue;
            Element next = g.multiply(pos, ctx.step_eval[dir]);
            bool ok = !(next == pos);
            if (next.canon == cur.pos) ok = false;
            for (const auto& [wc, wcol] : cur.window)
                if (wc == next.canon) ok = false;
            if (!ok) continue;
            // adjacency dominoes against the window and the current vertex
            auto checkPair = [&](const Canon& uc, int ucol) {
                Element u{&g, uc};
                for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
                    if (g.multiply(u, ctx.step_eval[s]) == next &&
                        !ctx.has_domino(ucol, static_cast<int>(s), d.to))
                        return false;
                    if (g.multiply(next, ctx.step_eval[s]) == u &&
                        !ctx.has_domino(d.to, static_cast<int>(s), ucol))
                        return false;
                }
                return true;
            };
            if (!checkPair(cur.pos, cur.color)) continue;
            for (const auto& [wc, wcol] : cur.window)
                if (!(ok = checkPair(wc, wcol))) break;
            if (!ok) continue;
            Config nxt;
            nxt.pos = next.canon;
            nxt.color = d.to;
            nxt.window = cur.window;
            nxt.window.push_back({cur.pos, cur.color});
            if (static_cast<int>(nxt.window.size()) > kWindow)
                nxt.window.erase(nxt.window.begin(), nxt.window.end() - kWindow);
            if (seen.insert(nxt).second) {
                if (static_cast<int64_t>(seen.size()) > budget.max_configs) {
                    budgetHit = true;
                    break;
                }
                queue.push_back(nxt);
            }
        }
    }
    if (!budgetHit && !hitTarget) {
        v.outcome = Outcome::No;
        v.certificate = CertificateKind::ClosedConfigurations;
        v.bound = static_cast<int64_t>(seen.size());
        return v;
    }
    v.outcome = Outcome::Unknown;
    v.note = budgetHit ? "configuration budget exhausted" : "closure reached the target region";
    return v;
}

// ---------------------------------------------------------------------------
// no-snake radius
// ---------------------------------------------------------------------------

Verdict no_snake_radius(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget) {
    budget.validate();
    if (!ts.directed) throw instance_error("no_snake_radius: tileset must be directed");
    TilesetContext ctx(g, ts);
    Verdict v;
    if (ts.colors.empty()) {
        v.outcome = Outcome::No;
        v.certificate = CertificateKind::ExhaustedRadius;
        v.bound = 1;
        v.note = "tileset has no colors";
        return v;
    }
    PathSearch search(ctx, Strength::Strong, Directedness::Directed, budget);
    int64_t maxRadius = 0, cumulative = 0;
    bool depthCapped = false;
    auto dfs = [&](auto&& self) -> void {
        maxRadius = std::max(maxRadius, cumulative);
        if (static_cast<int>(search.verts.size()) >= budget.max_path_length) {
            depthCapped = true;
            return;
        }
        for (auto [step, color] : search.extensions()) {
            if (search.push_step(step, color)) {
                cumulative += static_cast<int64_t>(ctx.step_words[step].size());
                self(self);
                cumulative -= static_cast<int64_t>(ctx.step_words[step].size());
                search.pop();
            }
            if (search.truncated) return;
        }
    };
    for (int c = 0; c < static_cast<int>(ts.colors.size()); ++c) {
        if (search.push_root(g.identity(), c)) {
            dfs(dfs);
            search.pop();
        }
        if (search.truncated) break;
    }
    v.nodes_used = search.nodes;
    if (search.truncated || depthCapped) {
        v.outcome = Outcome::Unknown;
        v.note = search.truncated ? "node budget exhausted" : "snakes reach the length cap";
        return v;
    }
    v.outcome = Outcome::No;
    v.certificate = CertificateKind::ExhaustedRadius;
    v.bound = std::max<int64_t>(maxRadius, 1);
    return v;
}

// ---------------------------------------------------------------------------
// lifting
// ---------------------------------------------------------------------------

FinitePathSnake lift_snake(const MarkedGroup& g, const MarkedGroup& h, const DirectedTileset& ts,
                           const FinitePathSnake& snakeH) {
    if (!is_declared_quotient(g, h))
        throw instance_error("lift_snake: target is not a declared quotient of the source");
    ValidityMode mode = directed_strong(Shape::Path);
    if (!validate_snake(h, ts, snakeH, mode))
        throw instance_error("lift_snake: snake fails validation in the quotient");
    if (!(h.evaluate(snakeH.start_word) == snakeH.vertices.front()))
        throw instance_error("lift_snake: start word does not evaluate to the first vertex");
    TilesetContext ctx(g, ts);
    // words carry letter ids of their own group; translate through names
    Word startG;
    for (int id : snakeH.start_word)
        startG.push_back(g.generators().require(h.generators().letter_name(id)));
    FinitePathSnake out;
    out.start_word = startG;
    out.colors = snakeH.colors;
    Element cur = g.evaluate(startG);
    out.vertices.push_back(cur);
    for (size_t i = 0; i + 1 < snakeH.vertices.size(); ++i) {
        int dir = ts.colors[snakeH.colors[i]].step;
        cur = g.multiply(cur, ctx.step_eval[dir]);
        out.vertices.push_back(cur);
    }
    if (!validate_snake(g, ts, out, mode))
        throw instance_error("lift_snake: lifted snake failed validation");
    return out;
}

} // namespace snakes
