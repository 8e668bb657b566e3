#include "snakes/tower.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace snakes {

const char* family_name(TowerFamily f) {
    return f == TowerFamily::Lamplighter ? "lamplighter" : "permutations";
}

std::optional<TowerFamily> family_from_name(const std::string& n) {
    if (n == "lamplighter") return TowerFamily::Lamplighter;
    if (n == "permutations" || n == "permutations-of-z") return TowerFamily::PermutationsOfZ;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// level construction
// ---------------------------------------------------------------------------

namespace {

// (Z/2)^bits with elements as bitmasks; bit i is named by letter 'a'+i
FiniteGroupTable lamp_table(int bits) {
    const int size = 1 << bits;
    std::vector<std::string> names(size);
    for (int m = 0; m < size; ++m) {
        if (m == 0) {
            names[m] = "1";
            continue;
        }
        std::string s;
        for (int i = 0; i < bits; ++i)
            if (m & (1 << i)) s += static_cast<char>('a' + i);
        names[m] = s;
    }
    std::vector<std::vector<int>> table(size, std::vector<int>(size));
    for (int x = 0; x < size; ++x)
        for (int y = 0; y < size; ++y) table[x][y] = x ^ y;
    return FiniteGroupTable(std::move(names), std::move(table));
}

// symmetric group with the identity renamed "1" and (0 1) renamed "s"
FiniteGroupTable sym_table(int n) {
    FiniteGroupTable t = FiniteGroupTable::symmetric(n);
    std::vector<std::string> names = t.names();
    names[0] = "1";
    if (n >= 2) {
        std::vector<int> swap01(n);
        for (int i = 0; i < n; ++i) swap01[i] = i;
        swap01[0] = 1;
        swap01[1] = 0;
        auto idx = t.find_perm(swap01);
        names.at(*idx) = "s";
    }
    // rebuild with the new names, keeping permutation data via symmetric()
    std::vector<std::vector<int>> table;
    for (int a = 0; a < t.order(); ++a) {
        std::vector<int> row;
        for (int b = 0; b < t.order(); ++b) row.push_back(t.mul(a, b));
        table.push_back(std::move(row));
    }
    FiniteGroupTable out(std::move(names), std::move(table));
    return out;
}

} // namespace

TowerLevel build_level(TowerFamily family, int n) {
    if (n < 0) throw instance_error("build_level: negative level");
    TowerLevel lvl;
    lvl.family = family;
    lvl.n = n;
    if (family == TowerFamily::Lamplighter) {
        if (n > 20) throw budget_exceeded("build_level: lamplighter level too large");
        lvl.A = lamp_table(n + 1);
        lvl.Aprev = lamp_table(n);
        std::vector<int> embMinus, embPlus;
        for (int c = 0; c < lvl.Aprev.order(); ++c) {
            embMinus.push_back(c);
            embPlus.push_back(c << 1);
        }
        lvl.embeddingPrev = Homomorphism{&lvl.Aprev, &lvl.A, embMinus};
        lvl.embeddingPrev.require_embedding("tower embeddingPrev");
        for (int c = 0; c < lvl.Aprev.order(); ++c) lvl.alpha.push_back({c, c << 1});
        lvl.presentation = std::make_shared<HnnPresentation>(lvl.A, lvl.Aprev, embMinus, embPlus);
        for (int i = 0; i <= n; ++i) {
            std::string w;
            for (int j = 0; j < i; ++j) w += "t^-1 ";
            w += "a";
            for (int j = 0; j < i; ++j) w += " t";
            lvl.generator_witnesses.push_back({lvl.A.name(1 << i), w});
        }
    } else {
        if (n > 7) throw budget_exceeded("build_level: permutation level too large");
        lvl.A = sym_table(n);
        lvl.Aprev = sym_table(std::max(n - 1, 0));
        const auto full = FiniteGroupTable::symmetric(n);
        const auto prev = FiniteGroupTable::symmetric(std::max(n - 1, 0));
        std::vector<int> embMinus, embPlus;
        for (int c = 0; c < prev.order(); ++c) {
            std::vector<int> p = prev.has_perms() ? prev.perm_of(c) : std::vector<int>{};
            std::vector<int> ext(n), shifted(n);
            for (int i = 0; i < n; ++i) ext[i] = shifted[i] = i;
            for (int i = 0; i < static_cast<int>(p.size()); ++i) {
                ext[i] = p[i];            // fix the last point
                shifted[i + 1] = p[i] + 1; // fix the first point
            }
            embMinus.push_back(n == 0 ? 0 : *full.find_perm(ext));
            embPlus.push_back(n == 0 ? 0 : *full.find_perm(shifted));
        }
        lvl.embeddingPrev = Homomorphism{&lvl.Aprev, &lvl.A, embMinus};
        lvl.embeddingPrev.require_embedding("tower embeddingPrev");
        for (size_t c = 0; c < embMinus.size(); ++c) lvl.alpha.push_back({embMinus[c], embPlus[c]});
        lvl.presentation = std::make_shared<HnnPresentation>(lvl.A, lvl.Aprev, embMinus, embPlus);
        for (int i = 0; i + 1 < n; ++i) {
            std::string w;
            for (int j = 0; j < i; ++j) w += "t^-1 ";
            w += "s";
            for (int j = 0; j < i; ++j) w += " t";
            std::vector<int> adj(n);
            for (int x = 0; x < n; ++x) adj[x] = x;
            adj[i] = i + 1;
            adj[i + 1] = i;
            lvl.generator_witnesses.push_back({lvl.A.name(*full.find_perm(adj)), w});
        }
    }
    // alpha must be an isomorphism between the two embedded copies
    {
        std::map<int, int> a(lvl.alpha.begin(), lvl.alpha.end());
        for (const auto& [x1, y1] : lvl.alpha)
            for (const auto& [x2, y2] : lvl.alpha)
                if (a.at(lvl.A.mul(x1, x2)) != lvl.A.mul(y1, y2))
                    throw instance_error("build_level: alpha is not an isomorphism");
    }
    return lvl;
}

std::unique_ptr<HnnGroup> marked_level(TowerFamily family, int n) {
    TowerLevel lvl = build_level(family, n);
    std::vector<int> letters;
    if (family == TowerFamily::Lamplighter) {
        letters = {1}; // the generator "a" of A_0
    } else if (n >= 2) {
        auto s = lvl.A.find("s");
        letters = {*s};
    }
    auto g = std::make_unique<HnnGroup>(std::string(family_name(family)) + ":G" + std::to_string(n),
                                        *lvl.presentation, letters);
    g->set_quotient_info({QuotientInfo::TowerLevel, family_name(family), n});
    return g;
}

std::unique_ptr<MarkedGroup> limit_group(TowerFamily family) {
    std::unique_ptr<MarkedGroup> g;
    if (family == TowerFamily::Lamplighter)
        g = std::make_unique<LamplighterLimitGroup>();
    else
        g = std::make_unique<PermutationLimitGroup>();
    g->set_quotient_info({QuotientInfo::TowerLimit, family_name(family), -1});
    return g;
}

// ---------------------------------------------------------------------------
// ball agreement
// ---------------------------------------------------------------------------

namespace {
std::vector<Word> words_upto_with_empty(const GeneratingSet& gs, int r) {
    std::vector<Word> words{Word{}};
    auto rest = gs.words_up_to(r);
    words.insert(words.end(), rest.begin(), rest.end());
    return words;
}
} // namespace

std::optional<std::pair<Word, Word>> ball_agreement_witness(const MarkedGroup& g,
                                                            const MarkedGroup& h, int r) {
    if (!g.generators().same_letters(h.generators()))
        throw instance_error("ball_agreement: generating sets differ");
    auto words = words_upto_with_empty(g.generators(), r);
    std::vector<Canon> cg, ch;
    cg.reserve(words.size());
    ch.reserve(words.size());
    for (const auto& w : words) {
        cg.push_back(g.evaluate(w).canon);
        ch.push_back(h.evaluate(w).canon);
    }
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            if ((cg[i] == cg[j]) != (ch[i] == ch[j])) return std::make_pair(words[i], words[j]);
    return std::nullopt;
}

bool ball_agreement(const MarkedGroup& g, const MarkedGroup& h, int r) {
    return !ball_agreement_witness(g, h, r).has_value();
}

// ---------------------------------------------------------------------------
// fiber components
// ---------------------------------------------------------------------------

FiberComponentsReport fiber_components(const MarkedGroup& g, int radius, int64_t iMin, int64_t iMax,
                                       int64_t vertexBudget, std::optional<int64_t> baseOrder) {
    if (!g.has_z_projection())
        throw unsupported_capability("fiber_components: group has no Z-projection");
    FiberComponentsReport rep;
    rep.radius = radius;
    rep.i_min = iMin;
    rep.i_max = iMax;
    if (iMin > iMax) return rep; // empty interval, empty report
    rep.widened_diameter = (iMax - iMin) + 2 * static_cast<int64_t>(radius);
    if (baseOrder) rep.bound = 4 * rep.widened_diameter * rep.widened_diameter * *baseOrder;

    LabeledBall gens = g.ball(radius);
    const int seedRadius = radius + static_cast<int>(std::max(std::abs(iMin), std::abs(iMax))) + 1;
    LabeledBall seedBall = g.ball(seedRadius);

    std::set<Canon> visited;
    int64_t total = 0;
    for (const auto& seed : seedBall.vertices) {
        if (g.z_projection(seed) < iMin || g.z_projection(seed) > iMax) continue;
        if (visited.count(seed.canon)) continue;
        std::vector<Element> comp{seed};
        visited.insert(seed.canon);
        ++total;
        for (size_t qi = 0; qi < comp.size(); ++qi) {
            Element cur = comp[qi];
            for (size_t bi = 1; bi < gens.vertices.size(); ++bi) { // skip the identity generator
                Element next = g.multiply(cur, gens.vertices[bi]);
                int64_t pi = g.z_projection(next);
                if (pi < iMin || pi > iMax) continue;
                if (visited.count(next.canon)) continue;
                if (total >= vertexBudget) {
                    rep.closed = false;
                    rep.frontier = static_cast<int64_t>(comp.size() - qi);
                    rep.components.push_back(std::move(comp));
                    return rep;
                }
                visited.insert(next.canon);
                comp.push_back(next);
                ++total;
            }
        }
        rep.max_component_size = std::max(rep.max_component_size, comp.size());
        rep.components.push_back(std::move(comp));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// supervisor
// ---------------------------------------------------------------------------

namespace {

struct TilesetResolution {
    std::string certificate;
    int64_t radius = 0;
    bool watch = false;
};

// the stage game on one tileset: negative certificate, ouroboros, periodic
// with unbounded projection, or bounded-Z watch
TilesetResolution resolve_tileset(const MarkedGroup& level, const DirectedTileset& ts,
                                  const Budget& budget) {
    TilesetContext ctx(level, ts);
    const int64_t stepLetters = std::max(ctx.max_step_letters, 1);
    Verdict ns = no_snake_radius(level, ts, budget);
    if (ns.no()) return {"no-snake", ns.bound, false};
    Verdict ou = ouroboros_search(level, ts, Strength::Strong, Directedness::Directed, budget);
    if (ou.yes()) {
        int64_t r = static_cast<int64_t>(ou.ouroboros_witness->vertices.size() + 1) * stepLetters;
        return {"ouroboros", r, false};
    }
    Verdict pe = periodic_snake_search(level, ts, budget, /*requireNonzeroPi=*/true);
    if (pe.yes()) {
        int64_t r = static_cast<int64_t>(pe.periodic_witness->period + 1) * stepLetters + stepLetters;
        return {"periodic-unbounded", r, false};
    }
    if (ns.outcome == Outcome::Unknown && ou.outcome == Outcome::Unknown &&
        pe.note == "node budget exhausted")
        return {"aborted-budget", static_cast<int64_t>(budget.max_path_length) * stepLetters, true};
    return {"watch-bounded-z", static_cast<int64_t>(budget.max_path_length) * stepLetters, true};
}

void log_line(SupervisorState& state, uint64_t index, const TilesetResolution& res,
              const char* suffix = "") {
    std::ostringstream out;
    out << "stage=" << state.stage << " tileset=" << index << " certificate=" << res.certificate
        << " radius=" << res.radius << suffix;
    state.log.push_back(out.str());
}

} // namespace

SupervisorOutcome supervisor_step(SupervisorState& state, const MarkedGroup& level,
                                  const TilesetEnumerator& enumerator, const Budget& budget) {
    const uint64_t index = state.cursor++;
    DirectedTileset ts = enumerator.decode(index);
    TilesetResolution res = resolve_tileset(level, ts, budget);
    state.accumulated_radius = std::max(state.accumulated_radius, res.radius);
    if (res.watch) state.watch.push_back({index, ts, res.certificate, res.radius});
    log_line(state, index, res);
    return {res.certificate, res.radius};
}

void supervisor_advance_stage(SupervisorState& state, const MarkedGroup& newLevel,
                              const Budget& budget) {
    ++state.stage;
    std::vector<SupervisorWatchItem> remaining;
    for (const auto& item : state.watch) {
        TilesetResolution res = resolve_tileset(newLevel, item.tileset, budget);
        res.radius = std::max(res.radius, item.radius); // protect what we already kept alive
        state.accumulated_radius = std::max(state.accumulated_radius, res.radius);
        if (res.watch) {
            remaining.push_back({item.index, item.tileset, res.certificate, res.radius});
            log_line(state, item.index, res, " (still-watched)");
        } else {
            log_line(state, item.index, res, " (watch-resolved)");
        }
    }
    state.watch = std::move(remaining);
}

SupervisorState supervise(TowerFamily family, int maxLevel, uint64_t tilesetCount,
                          const Budget& budget) {
    SupervisorState state;
    state.stage = 1;
    auto level1 = marked_level(family, 1);
    TilesetEnumerator enumerator(level1->generators().letter_names());
    for (uint64_t i = 0; i < tilesetCount; ++i) supervisor_step(state, *level1, enumerator, budget);
    for (int lvl = 2; lvl <= maxLevel; ++lvl) {
        auto g = marked_level(family, lvl);
        supervisor_advance_stage(state, *g, budget);
    }
    return state;
}

} // namespace snakes
