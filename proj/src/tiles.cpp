#include "snakes/tiles.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace snakes {

// ---------------------------------------------------------------------------
// DirectedTileset
// ---------------------------------------------------------------------------

void DirectedTileset::validate() const {
    for (const auto& w : steps)
        if (w.empty()) throw instance_error("tileset: empty step word");
    for (const auto& c : colors) {
        if (c.base < 0 || c.base >= static_cast<int>(base_colors.size()))
            throw instance_error("tileset: color references unknown base color");
        if (c.step < -1 || c.step >= static_cast<int>(steps.size()))
            throw instance_error("tileset: color references unknown step");
        if (directed && c.step < 0)
            throw instance_error("tileset: directed tileset has a color without a step");
    }
    for (const auto& d : dominoes) {
        if (d.from < 0 || d.from >= static_cast<int>(colors.size()) || d.to < 0 ||
            d.to >= static_cast<int>(colors.size()))
            throw instance_error("tileset: domino references unknown color");
        if (d.step < 0 || d.step >= static_cast<int>(steps.size()))
            throw instance_error("tileset: domino references unknown step");
    }
}

std::string DirectedTileset::encode_string() const {
    std::ostringstream out;
    out << (directed ? "dir" : "undir") << " S'[";
    for (size_t i = 0; i < steps.size(); ++i) {
        if (i) out << '|';
        for (size_t j = 0; j < steps[i].size(); ++j) out << (j ? " " : "") << steps[i][j];
    }
    out << "] C[";
    for (size_t i = 0; i < colors.size(); ++i) {
        if (i) out << ' ';
        out << base_colors[colors[i].base];
        if (colors[i].step >= 0) out << ':' << colors[i].step;
    }
    out << "] D[";
    for (size_t i = 0; i < dominoes.size(); ++i) {
        if (i) out << ' ';
        out << dominoes[i].from << ',' << dominoes[i].step << ',' << dominoes[i].to;
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------------------------
// TilesetContext
// ---------------------------------------------------------------------------

namespace {
uint64_t domino_key(int from, int step, int to) {
    return (static_cast<uint64_t>(from) << 40) | (static_cast<uint64_t>(step) << 20) |
           static_cast<uint64_t>(to);
}
} // namespace

TilesetContext::TilesetContext(const MarkedGroup& g, const DirectedTileset& ts)
    : group(g), tileset(ts) {
    ts.validate();
    for (const auto& names : ts.steps) {
        Word w;
        for (const auto& n : names) w.push_back(g.generators().require(n));
        max_step_letters = std::max(max_step_letters, static_cast<int>(w.size()));
        Element e = g.evaluate(w);
        if (e == g.identity()) has_identity_step = true;
        step_words.push_back(std::move(w));
        step_eval.push_back(e);
        step_eval_inv.push_back(g.inverse(e));
    }
    byFrom_.resize(ts.colors.size());
    for (const auto& d : ts.dominoes) {
        byFrom_[d.from].push_back(d);
        dominoKeys_.push_back(domino_key(d.from, d.step, d.to));
    }
    std::sort(dominoKeys_.begin(), dominoKeys_.end());
}

bool TilesetContext::has_domino(int from, int step, int to) const {
    return std::binary_search(dominoKeys_.begin(), dominoKeys_.end(), domino_key(from, step, to));
}

const std::vector<DirectedTileset::Domino>& TilesetContext::from_color(int from) const {
    return byFrom_.at(from);
}

// ---------------------------------------------------------------------------
// validate_snake
// ---------------------------------------------------------------------------

namespace {

struct SnakeChecks {
    const TilesetContext& ctx;
    ValidityMode mode;

    bool directed() const { return mode.directedness == Directedness::Directed; }
    bool strong() const { return mode.strength == Strength::Strong; }

    void check_structure(const std::vector<Element>& vs, const std::vector<int>& colors) const {
        if (vs.empty() || vs.size() != colors.size())
            throw instance_error("snake: vertex/color count mismatch");
        for (int c : colors)
            if (c < 0 || c >= static_cast<int>(ctx.tileset.colors.size()))
                throw instance_error("snake: color not in tileset");
        if (directed() && !ctx.tileset.directed)
            throw instance_error("snake: directed mode on an undirected tileset");
    }

    bool injective(const std::vector<Element>& vs) const {
        std::set<Canon> seen;
        for (const auto& v : vs)
            if (!seen.insert(v.canon).second) return false;
        return true;
    }

    // one consecutive edge i -> i+1 with vertices u, v and their colors
    bool edge_ok(const Element& u, int cu, const Element& v, int cv) const {
        Element delta = ctx.group.multiply(ctx.group.inverse(u), v);
        if (directed()) {
            int s = ctx.direction_of(cu);
            if (!(ctx.step_eval[s] == delta)) return false;
            if (!strong() && !ctx.has_domino(cu, s, cv)) return false;
            return true;
        }
        bool stepFound = false, dominoFound = false;
        for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
            if (!(ctx.step_eval[s] == delta)) continue;
            stepFound = true;
            if (ctx.has_domino(cu, static_cast<int>(s), cv)) dominoFound = true;
        }
        if (!stepFound) return false;
        return strong() ? true : dominoFound;
    }

    // all generator adjacencies inside the listed support
    bool strong_pairs(const std::vector<Element>& vs, const std::vector<int>& colors) const {
        std::map<Canon, int> at;
        for (size_t i = 0; i < vs.size(); ++i) at.emplace(vs[i].canon, static_cast<int>(i));
        for (size_t i = 0; i < vs.size(); ++i)
            for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
                Element w = ctx.group.multiply(vs[i], ctx.step_eval[s]);
                auto it = at.find(w.canon);
                if (it == at.end()) continue;
                if (!ctx.has_domino(colors[i], static_cast<int>(s), colors[it->second])) return false;
            }
        return true;
    }
};

} // namespace

bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const FinitePathSnake& s,
                    ValidityMode mode) {
    if (mode.shape != Shape::Path) throw instance_error("validate_snake: path snake requires path shape");
    TilesetContext ctx(g, ts);
    SnakeChecks ck{ctx, mode};
    ck.check_structure(s.vertices, s.colors);
    if (!ck.injective(s.vertices)) return false;
    for (size_t i = 0; i + 1 < s.vertices.size(); ++i)
        if (!ck.edge_ok(s.vertices[i], s.colors[i], s.vertices[i + 1], s.colors[i + 1])) return false;
    if (ck.strong() && !ck.strong_pairs(s.vertices, s.colors)) return false;
    return true;
}

bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const Ouroboros& s,
                    ValidityMode mode) {
    if (mode.shape != Shape::Ouroboros)
        throw instance_error("validate_snake: ouroboros requires ouroboros shape");
    TilesetContext ctx(g, ts);
    SnakeChecks ck{ctx, mode};
    ck.check_structure(s.vertices, s.colors);
    if (!ck.injective(s.vertices)) return false;
    const size_t n = s.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        if (!ck.edge_ok(s.vertices[i], s.colors[i], s.vertices[j], s.colors[j])) return false;
    }
    if (ck.strong() && !ck.strong_pairs(s.vertices, s.colors)) return false;
    return true;
}

bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const PeriodicSnake& s,
                    ValidityMode mode) {
    if (mode.shape != Shape::Infinite)
        throw instance_error("validate_snake: periodic snake requires infinite shape");
    TilesetContext ctx(g, ts);
    SnakeChecks ck{ctx, mode};
    if (s.period < 1 || static_cast<int>(s.fundamental.size()) != s.period)
        throw instance_error("periodic snake: period/vertex mismatch");
    ck.check_structure(s.fundamental, s.colors);
    if (!g.certified_infinite_order(s.translation)) return false;

    // consecutive steps, wrapping to translation * fundamental[0]
    for (int i = 0; i < s.period; ++i) {
        Element next = (i + 1 < s.period) ? s.fundamental[i + 1]
                                          : g.multiply(s.translation, s.fundamental[0]);
        int cn = s.colors[(i + 1) % s.period];
        if (!ck.edge_ok(s.fundamental[i], s.colors[i], next, cn)) return false;
    }

    // collisions and adjacencies across periods via exact power solving:
    // g^e * w(i') meets (g^d * w(i)) * step  iff  g^{e-d} = w(i)*step*w(i')^-1
    for (int i = 0; i < s.period; ++i)
        for (int j = 0; j < s.period; ++j) {
            Element rel = g.multiply(s.fundamental[i], g.inverse(s.fundamental[j]));
            auto d = g.solve_power(rel, s.translation);
            if (d && !(i == j && *d == 0)) return false; // vertex collision
            if (ck.strong()) {
                for (size_t st = 0; st < ctx.step_eval.size(); ++st) {
                    Element h = g.multiply(g.multiply(s.fundamental[i], ctx.step_eval[st]),
                                           g.inverse(s.fundamental[j]));
                    if (g.solve_power(h, s.translation) &&
                        !ctx.has_domino(s.colors[i], static_cast<int>(st), s.colors[j]))
                        return false;
                }
            }
        }
    return true;
}

bool periodic_window_check(const MarkedGroup& g, const DirectedTileset& ts, const PeriodicSnake& s,
                           ValidityMode mode, int numPeriods) {
    TilesetContext ctx(g, ts);
    SnakeChecks ck{ctx, mode};
    if (!g.certified_infinite_order(s.translation)) return false;
    std::vector<Element> vs;
    std::vector<int> colors;
    Element shift = g.identity();
    for (int w = 0; w < numPeriods; ++w) shift = g.multiply(shift, g.inverse(s.translation));
    for (int w = -numPeriods; w <= numPeriods; ++w) {
        for (int i = 0; i < s.period; ++i) {
            vs.push_back(g.multiply(shift, s.fundamental[i]));
            colors.push_back(s.colors[i]);
        }
        shift = g.multiply(s.translation, shift);
    }
    if (!ck.injective(vs)) return false;
    for (size_t i = 0; i + 1 < vs.size(); ++i)
        if (!ck.edge_ok(vs[i], colors[i], vs[i + 1], colors[i + 1])) return false;
    if (ck.strong() && !ck.strong_pairs(vs, colors)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

DirectedTileset to_directed_strong(const DirectedTileset& ts, SourceVariant from) {
    ts.validate();
    DirectedTileset out;
    out.directed = true;
    out.steps = ts.steps;
    out.base_colors = ts.base_colors;
    const int k = static_cast<int>(ts.steps.size());
    if (k == 0) throw instance_error("to_directed_strong: tileset has no steps");

    if (from == SourceVariant::DirectedWeak) {
        if (!ts.directed) throw instance_error("to_directed_strong: directed-weak source must be directed");
        out.colors = ts.colors;
        for (const auto& d : ts.dominoes)
            if (d.step == ts.colors[d.from].step) out.dominoes.push_back(d);
        for (int c = 0; c < static_cast<int>(ts.colors.size()); ++c)
            for (int s = 0; s < k; ++s) {
                if (s == ts.colors[c].step) continue;
                for (int c2 = 0; c2 < static_cast<int>(ts.colors.size()); ++c2)
                    out.dominoes.push_back({c, s, c2});
            }
        return out;
    }

    if (ts.directed) throw instance_error("to_directed_strong: strong/weak source must be undirected");
    const int nc = static_cast<int>(ts.colors.size());
    for (int c = 0; c < nc; ++c)
        for (int s = 0; s < k; ++s) out.colors.push_back({ts.colors[c].base, s});
    auto id = [&](int c, int s) { return c * k + s; };

    if (from == SourceVariant::Strong) {
        for (const auto& d : ts.dominoes)
            for (int s = 0; s < k; ++s)
                for (int s2 = 0; s2 < k; ++s2)
                    out.dominoes.push_back({id(d.from, s), d.step, id(d.to, s2)});
        return out;
    }

    // weak source: direction-annotated dominoes plus all completion dominoes
    for (const auto& d : ts.dominoes)
        for (int s2 = 0; s2 < k; ++s2) out.dominoes.push_back({id(d.from, d.step), d.step, id(d.to, s2)});
    for (int c = 0; c < nc; ++c)
        for (int s = 0; s < k; ++s)
            for (int s2 = 0; s2 < k; ++s2) {
                if (s2 == s) continue;
                for (int c2 = 0; c2 < nc; ++c2)
                    for (int s3 = 0; s3 < k; ++s3)
                        out.dominoes.push_back({id(c, s), s2, id(c2, s3)});
            }
    return out;
}

DirectedTileset extend_generators(const DirectedTileset& ts, const GeneratingSet& s,
                                  const GeneratingSet& t) {
    ts.validate();
    if (!ts.directed) throw instance_error("extend_generators: tileset must be directed");
    if (!t.contains_letters(s))
        throw instance_error("extend_generators: T does not contain S");
    for (const auto& w : ts.steps)
        for (const auto& n : w)
            if (!s.find(n)) throw instance_error("extend_generators: step letter not in S");
    DirectedTileset out = ts;
    for (int i = 0; i < t.size(); ++i) {
        const auto& n = t.letter_name(i);
        if (s.find(n)) continue;
        int newStep = static_cast<int>(out.steps.size());
        out.steps.push_back({n});
        for (int c = 0; c < static_cast<int>(out.colors.size()); ++c)
            for (int c2 = 0; c2 < static_cast<int>(out.colors.size()); ++c2)
                out.dominoes.push_back({c, newStep, c2});
    }
    return out;
}

// ---------------------------------------------------------------------------
// TilesetEnumerator
// ---------------------------------------------------------------------------

namespace {

constexpr uint64_t SAT = uint64_t(1) << 62;

uint64_t sat_add(uint64_t a, uint64_t b) {
    if (a >= SAT || b >= SAT || a + b >= SAT) return SAT;
    return a + b;
}
uint64_t sat_mul(uint64_t a, uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a >= SAT || b >= SAT) return SAT;
    unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    return p >= SAT ? SAT : static_cast<uint64_t>(p);
}
uint64_t binom(uint64_t n, uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 c = 1;
    for (uint64_t i = 1; i <= r; ++i) {
        c = c * (n - r + i) / i;
        if (c >= SAT) return SAT;
    }
    return static_cast<uint64_t>(c);
}

// completions for step combinations: choose `rem` indices from [next, n),
// at least one >= threshold unless already satisfied
uint64_t steps_completions(uint64_t next, uint64_t n, uint64_t rem, bool haveLarge, uint64_t threshold) {
    uint64_t all = binom(n - next, rem);
    if (haveLarge) return all;
    uint64_t smallOnly = threshold > next ? binom(threshold - next, rem) : (rem == 0 ? 1 : 0);
    return all >= SAT ? SAT : all - smallOnly;
}

std::vector<uint64_t> unrank_steps(uint64_t n, int k, uint64_t threshold, uint64_t rank) {
    std::vector<uint64_t> out;
    uint64_t v = 0;
    bool haveLarge = false;
    for (int slot = 0; slot < k; ++slot) {
        for (;; ++v) {
            uint64_t cnt = steps_completions(v + 1, n, static_cast<uint64_t>(k - slot - 1),
                                             haveLarge || v >= threshold, threshold);
            if (rank < cnt) break;
            rank -= cnt;
        }
        out.push_back(v);
        haveLarge = haveLarge || v >= threshold;
        ++v;
    }
    return out;
}

uint64_t rank_steps(uint64_t n, int k, uint64_t threshold, const std::vector<uint64_t>& combo) {
    uint64_t rank = 0;
    uint64_t prev = 0;
    bool haveLarge = false;
    for (int slot = 0; slot < k; ++slot) {
        for (uint64_t v = prev; v < combo[slot]; ++v)
            rank = sat_add(rank, steps_completions(v + 1, n, static_cast<uint64_t>(k - slot - 1),
                                                   haveLarge || v >= threshold, threshold));
        haveLarge = haveLarge || combo[slot] >= threshold;
        prev = combo[slot] + 1;
    }
    return rank;
}

// covering subsets of the m x k grid (row-major positions), every row used
uint64_t grid_avail_in_row(int r, int k, uint64_t from) {
    uint64_t lo = static_cast<uint64_t>(r) * k, hi = lo + k;
    if (from >= hi) return 0;
    return hi - std::max(lo, from);
}

uint64_t covering_completions(int m, int k, uint64_t from, uint64_t rem, uint32_t uncovered) {
    uint64_t avail = static_cast<uint64_t>(m) * k >= from ? static_cast<uint64_t>(m) * k - from : 0;
    std::vector<int> rows;
    for (int r = 0; r < m; ++r)
        if (uncovered & (1u << r)) rows.push_back(r);
    __int128 acc = 0;
    for (uint32_t sub = 0; sub < (1u << rows.size()); ++sub) {
        uint64_t removed = 0;
        int bits = 0;
        for (size_t i = 0; i < rows.size(); ++i)
            if (sub & (1u << i)) {
                removed += grid_avail_in_row(rows[i], k, from);
                ++bits;
            }
        uint64_t b = binom(avail >= removed ? avail - removed : 0, rem);
        if (b >= SAT) return SAT;
        acc += (bits % 2 == 0) ? static_cast<__int128>(b) : -static_cast<__int128>(b);
    }
    if (acc <= 0) return 0;
    return acc >= static_cast<__int128>(SAT) ? SAT : static_cast<uint64_t>(acc);
}

uint64_t covering_count(int m, int k, int c) {
    return covering_completions(m, k, 0, static_cast<uint64_t>(c), (1u << m) - 1);
}

std::vector<uint64_t> unrank_covering(int m, int k, int c, uint64_t rank) {
    std::vector<uint64_t> out;
    uint32_t uncovered = (1u << m) - 1;
    uint64_t v = 0;
    for (int slot = 0; slot < c; ++slot) {
        for (;; ++v) {
            uint32_t nextUncovered = uncovered & ~(1u << (v / k));
            uint64_t cnt = covering_completions(m, k, v + 1, static_cast<uint64_t>(c - slot - 1),
                                                nextUncovered);
            if (rank < cnt) break;
            rank -= cnt;
        }
        out.push_back(v);
        uncovered &= ~(1u << (v / k));
        ++v;
    }
    return out;
}

uint64_t rank_covering(int m, int k, int c, const std::vector<uint64_t>& combo) {
    uint64_t rank = 0;
    uint32_t uncovered = (1u << m) - 1;
    uint64_t prev = 0;
    for (int slot = 0; slot < c; ++slot) {
        for (uint64_t v = prev; v < combo[slot]; ++v) {
            uint32_t nextUncovered = uncovered & ~(1u << (v / k));
            rank = sat_add(rank, covering_completions(m, k, v + 1,
                                                      static_cast<uint64_t>(c - slot - 1), nextUncovered));
        }
        uncovered &= ~(1u << (combo[slot] / k));
        prev = combo[slot] + 1;
    }
    return rank;
}

std::vector<uint64_t> unrank_combination(uint64_t n, uint64_t kk, uint64_t rank) {
    std::vector<uint64_t> out;
    uint64_t v = 0;
    for (uint64_t slot = 0; slot < kk; ++slot) {
        for (;; ++v) {
            uint64_t cnt = binom(n - v - 1, kk - slot - 1);
            if (rank < cnt) break;
            rank -= cnt;
        }
        out.push_back(v);
        ++v;
    }
    return out;
}

uint64_t rank_combination(uint64_t n, const std::vector<uint64_t>& combo) {
    uint64_t rank = 0;
    uint64_t prev = 0;
    const uint64_t kk = combo.size();
    for (uint64_t slot = 0; slot < kk; ++slot) {
        for (uint64_t v = prev; v < combo[slot]; ++v)
            rank = sat_add(rank, binom(n - v - 1, kk - slot - 1));
        prev = combo[slot] + 1;
    }
    return rank;
}

} // namespace

TilesetEnumerator::TilesetEnumerator(std::vector<std::string> letterNames)
    : letters_(std::move(letterNames)) {
    if (letters_.empty()) throw instance_error("tileset enumerator: empty alphabet");
}

uint64_t TilesetEnumerator::words_up_to(int len) const {
    uint64_t total = 0, p = 1;
    for (int l = 1; l <= len; ++l) {
        p = sat_mul(p, letters_.size());
        total = sat_add(total, p);
    }
    return total;
}

std::vector<std::string> TilesetEnumerator::word_at(int maxLen, uint64_t idx) const {
    const uint64_t a = letters_.size();
    uint64_t p = 1;
    for (int l = 1; l <= maxLen; ++l) {
        p = sat_mul(p, a);
        if (idx < p) {
            std::vector<std::string> w(l);
            uint64_t x = idx;
            for (int j = l - 1; j >= 0; --j) {
                w[j] = letters_[x % a];
                x /= a;
            }
            return w;
        }
        idx -= p;
    }
    throw instance_error("word_at: rank out of range");
}

DirectedTileset TilesetEnumerator::decode(uint64_t index) const {
    if (index >= SAT) throw budget_exceeded("tileset enumeration: index too large");
    for (int total = 3; total <= 96; ++total) {
        for (int L = 1; L <= total - 2; ++L) {
            for (int k = 1; k <= total - L - 1; ++k) {
                const uint64_t wl = words_up_to(L), wprev = words_up_to(L - 1);
                uint64_t stepsCnt = binom(wl, k) >= SAT ? SAT : binom(wl, k) - binom(wprev, k);
                if (stepsCnt == 0) continue;
                for (int m = 1; m <= total - L - k; ++m) {
                    const int d = total - L - k - m;
                    if (m > 30) throw budget_exceeded("tileset enumeration: base-color count beyond budget");
                    for (int c = m; c <= m * k; ++c) {
                        uint64_t covCnt = covering_count(m, k, c);
                        uint64_t dCnt = binom(static_cast<uint64_t>(c) * c * k, d);
                        uint64_t sub = sat_mul(stepsCnt, sat_mul(covCnt, dCnt));
                        if (index >= sub) {
                            index -= sub;
                            continue;
                        }
                        uint64_t per = sat_mul(covCnt, dCnt);
                        uint64_t stepRank = index / per;
                        uint64_t r2 = index % per;
                        uint64_t cRank = r2 / dCnt;
                        uint64_t dRank = r2 % dCnt;
                        DirectedTileset ts;
                        ts.directed = true;
                        for (uint64_t wi : unrank_steps(wl, k, wprev, stepRank))
                            ts.steps.push_back(word_at(L, wi));
                        for (int b = 0; b < m; ++b) ts.base_colors.push_back("c" + std::to_string(b));
                        for (uint64_t pos : unrank_covering(m, k, c, cRank))
                            ts.colors.push_back({static_cast<int>(pos / k), static_cast<int>(pos % k)});
                        for (uint64_t u : unrank_combination(static_cast<uint64_t>(c) * c * k,
                                                             static_cast<uint64_t>(d), dRank)) {
                            int from = static_cast<int>(u / (static_cast<uint64_t>(k) * c));
                            int rest = static_cast<int>(u % (static_cast<uint64_t>(k) * c));
                            ts.dominoes.push_back({from, rest / c, rest % c});
                        }
                        return ts;
                    }
                }
            }
        }
    }
    throw budget_exceeded("tileset enumeration: index too large");
}

uint64_t TilesetEnumerator::encode(const DirectedTileset& ts) const {
    ts.validate();
    if (!ts.directed) throw instance_error("encode: enumeration covers directed tilesets only");
    // derive the signature and check canonicity
    int L = 0;
    std::vector<uint64_t> stepIdx;
    for (const auto& w : ts.steps) {
        L = std::max(L, static_cast<int>(w.size()));
        uint64_t digits = 0;
        for (const auto& n : w) {
            auto it = std::find(letters_.begin(), letters_.end(), n);
            if (it == letters_.end()) throw instance_error("encode: step letter not in alphabet");
            digits = digits * letters_.size() + static_cast<uint64_t>(it - letters_.begin());
        }
        stepIdx.push_back(words_up_to(static_cast<int>(w.size()) - 1) + digits);
    }
    if (!std::is_sorted(stepIdx.begin(), stepIdx.end()) ||
        std::adjacent_find(stepIdx.begin(), stepIdx.end()) != stepIdx.end())
        throw instance_error("encode: steps not in canonical order");
    const int k = static_cast<int>(ts.steps.size());
    const int m = static_cast<int>(ts.base_colors.size());
    for (int b = 0; b < m; ++b)
        if (ts.base_colors[b] != "c" + std::to_string(b))
            throw instance_error("encode: base colors not canonical");
    std::vector<uint64_t> cPos;
    std::vector<bool> used(m, false);
    for (const auto& col : ts.colors) {
        if (col.step < 0) throw instance_error("encode: undirected color");
        cPos.push_back(static_cast<uint64_t>(col.base) * k + col.step);
        used[col.base] = true;
    }
    if (!std::is_sorted(cPos.begin(), cPos.end()) ||
        std::adjacent_find(cPos.begin(), cPos.end()) != cPos.end())
        throw instance_error("encode: colors not in canonical order");
    for (bool u : used)
        if (!u) throw instance_error("encode: unused base color");
    const int c = static_cast<int>(ts.colors.size());
    const int d = static_cast<int>(ts.dominoes.size());
    std::vector<uint64_t> dIdx;
    for (const auto& dom : ts.dominoes)
        dIdx.push_back((static_cast<uint64_t>(dom.from) * k + dom.step) * c + dom.to);
    if (!std::is_sorted(dIdx.begin(), dIdx.end()) ||
        std::adjacent_find(dIdx.begin(), dIdx.end()) != dIdx.end())
        throw instance_error("encode: dominoes not in canonical order");

    const int myTotal = L + k + m + d;
    uint64_t rank = 0;
    for (int total = 3; total <= myTotal; ++total) {
        for (int Lx = 1; Lx <= total - 2; ++Lx) {
            for (int kx = 1; kx <= total - Lx - 1; ++kx) {
                const uint64_t wl = words_up_to(Lx), wprev = words_up_to(Lx - 1);
                uint64_t stepsCnt = binom(wl, kx) >= SAT ? SAT : binom(wl, kx) - binom(wprev, kx);
                if (stepsCnt == 0) continue;
                for (int mx = 1; mx <= total - Lx - kx; ++mx) {
                    const int dx = total - Lx - kx - mx;
                    const bool here = (total == myTotal && Lx == L && kx == k && mx == m && dx == d);
                    for (int cx = mx; cx <= mx * kx; ++cx) {
                        uint64_t covCnt = covering_count(mx, kx, cx);
                        uint64_t dCnt = binom(static_cast<uint64_t>(cx) * cx * kx, dx);
                        if (here && cx == c) {
                            uint64_t per = sat_mul(covCnt, dCnt);
                            uint64_t within =
                                sat_add(sat_mul(rank_steps(wl, k, wprev, stepIdx), per),
                                        sat_add(sat_mul(rank_covering(m, k, c, cPos), dCnt),
                                                rank_combination(static_cast<uint64_t>(c) * c * k, dIdx)));
                            rank = sat_add(rank, within);
                            if (rank >= SAT) throw budget_exceeded("encode: rank overflow");
                            return rank;
                        }
                        rank = sat_add(rank, sat_mul(stepsCnt, sat_mul(covCnt, dCnt)));
                        if (rank >= SAT) throw budget_exceeded("encode: rank overflow");
                    }
                    if (here) throw instance_error("encode: inconsistent signature");
                }
            }
        }
    }
    throw instance_error("encode: signature not reachable");
}

} // namespace snakes
