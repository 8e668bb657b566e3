#include "snakes/group.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <sstream>

namespace snakes {

// ---------------------------------------------------------------------------
// MarkedGroup
// ---------------------------------------------------------------------------

void MarkedGroup::check_member(const Element& x, const char* op) const {
    if (x.group != this)
        throw instance_error(std::string(op) + ": operand does not belong to group '" + name_ + "'");
}

Element MarkedGroup::evaluate(const Word& w) const {
    Canon c = identity_canon();
    for (int letter : w) {
        if (letter < 0 || letter >= gens_.size())
            throw instance_error("evaluate: unknown letter id in group '" + name_ + "'");
        c = apply_letter_canon(c, letter);
    }
    return {this, std::move(c)};
}

Element MarkedGroup::multiply(const Element& x, const Element& y) const {
    check_member(x, "multiply");
    check_member(y, "multiply");
    return {this, multiply_canon(x.canon, y.canon)};
}

Element MarkedGroup::inverse(const Element& x) const {
    check_member(x, "inverse");
    return {this, inverse_canon(x.canon)};
}

Element MarkedGroup::apply_letter(const Element& x, int letter) const {
    check_member(x, "apply_letter");
    return {this, apply_letter_canon(x.canon, letter)};
}

int64_t MarkedGroup::z_projection(const Element& x) const {
    if (!hasPi_)
        throw unsupported_capability("group '" + name_ + "' declares no Z-projection");
    check_member(x, "z_projection");
    return z_of(x.canon);
}

bool MarkedGroup::certified_infinite_order(const Element& x) const {
    check_member(x, "certified_infinite_order");
    return infinite_order(x.canon);
}

std::optional<int64_t> MarkedGroup::solve_power(const Element& h, const Element& g) const {
    check_member(h, "solve_power");
    check_member(g, "solve_power");
    return power_solve(h.canon, g.canon);
}

std::string MarkedGroup::format(const Element& x) const {
    check_member(x, "format");
    return format_canon(x.canon);
}

LabeledBall MarkedGroup::ball(int radius, size_t vertexBudget) const {
    if (radius < 0) throw instance_error("ball: negative radius");
    LabeledBall out;
    out.radius = radius;
    std::map<Canon, int> index;
    std::vector<int> depth;
    out.vertices.push_back(identity());
    out.words.push_back({});
    depth.push_back(0);
    index.emplace(out.vertices[0].canon, 0);
    for (size_t i = 0; i < out.vertices.size(); ++i) {
        if (depth[i] >= radius) break; // BFS order: all later vertices are at full depth too
        for (int s = 0; s < gens_.size(); ++s) {
            Canon y = apply_letter_canon(out.vertices[i].canon, s);
            if (index.count(y)) continue;
            if (out.vertices.size() >= vertexBudget) {
                out.complete = false;
                out.completed_radius = depth[i];
                out.edges = {};
                return out;
            }
            index.emplace(y, static_cast<int>(out.vertices.size()));
            Word w = out.words[i];
            w.push_back(s);
            out.vertices.push_back({this, std::move(y)});
            out.words.push_back(std::move(w));
            depth.push_back(depth[i] + 1);
        }
    }
    out.completed_radius = radius;
    for (size_t u = 0; u < out.vertices.size(); ++u)
        for (int s = 0; s < gens_.size(); ++s) {
            Canon y = apply_letter_canon(out.vertices[u].canon, s);
            auto it = index.find(y);
            if (it != index.end())
                out.edges.push_back({static_cast<int>(u), s, it->second});
        }
    return out;
}

bool is_declared_quotient(const MarkedGroup& g, const MarkedGroup& h) {
    if (&g == &h) return true;
    const auto& qg = g.quotient_info();
    const auto& qh = h.quotient_info();
    // a free group maps onto anything it has letters for; tower levels map
    // onto later levels of the same family and onto the limit
    if (qg.kind == QuotientInfo::FreeKind)
        return g.generators().contains_letters(h.generators());
    if (!g.generators().same_letters(h.generators())) return false;
    if (qg.kind == QuotientInfo::TowerLevel && qg.family == qh.family) {
        if (qh.kind == QuotientInfo::TowerLimit) return true;
        if (qh.kind == QuotientInfo::TowerLevel && qg.level <= qh.level) return true;
    }
    return false;
}

std::optional<int> LabeledBall::index_of(const Element& e) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == e) return static_cast<int>(i);
    return std::nullopt;
}

std::string LabeledBall::to_dot(const MarkedGroup& g) const {
    std::ostringstream out;
    out << "digraph ball {\n";
    for (size_t i = 0; i < vertices.size(); ++i)
        out << "  v" << i << " [label=\"" << g.generators().format_word(words[i]) << "\"];\n";
    for (const auto& [u, s, v] : edges)
        out << "  v" << u << " -> v" << v << " [label=\"" << g.generators().letter_name(s) << "\"];\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// FreeGroup
// ---------------------------------------------------------------------------

FreeGroup::FreeGroup(const std::vector<std::string>& names)
    : MarkedGroup("free<" + [&] {
          std::string s;
          for (size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
          return s;
      }() + ">",
                  GeneratingSet::free_pairs(names),
                  [&] {
                      for (const auto& n : names)
                          if (n == "t") return true;
                      return false;
                  }()) {
    set_quotient_info({QuotientInfo::FreeKind, "", -1});
}

Canon FreeGroup::identity_canon() const { return FreeCanon{}; }

Canon FreeGroup::apply_letter_canon(const Canon& x, int letter) const {
    FreeCanon w = std::get<FreeCanon>(x);
    if (!w.empty() && generators().inverse_of(w.back()) == letter)
        w.pop_back();
    else
        w.push_back(letter);
    return w;
}

Canon FreeGroup::multiply_canon(const Canon& x, const Canon& y) const {
    FreeCanon w = std::get<FreeCanon>(x);
    for (int letter : std::get<FreeCanon>(y)) {
        if (!w.empty() && generators().inverse_of(w.back()) == letter)
            w.pop_back();
        else
            w.push_back(letter);
    }
    return w;
}

Canon FreeGroup::inverse_canon(const Canon& x) const {
    const auto& w = std::get<FreeCanon>(x);
    FreeCanon out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(generators().inverse_of(*it));
    return out;
}

int64_t FreeGroup::z_of(const Canon& x) const {
    int64_t s = 0;
    for (int letter : std::get<FreeCanon>(x)) s += generators().z_weight(letter);
    return s;
}

bool FreeGroup::infinite_order(const Canon& x) const { return !std::get<FreeCanon>(x).empty(); }

std::optional<int64_t> FreeGroup::power_solve(const Canon& hc, const Canon& gc) const {
    const auto& h = std::get<FreeCanon>(hc);
    const auto& g = std::get<FreeCanon>(gc);
    if (g.empty()) return h.empty() ? std::optional<int64_t>(0) : std::nullopt;
    if (h.empty()) return 0;
    // cyclically reduce g = w v w^-1; then |g^d| = 2|w| + |d||v| exactly
    int64_t strip = 0;
    const int64_t glen = static_cast<int64_t>(g.size());
    while (glen - 2 * strip >= 2 && generators().inverse_of(g[strip]) == g[glen - 1 - strip])
        ++strip;
    const int64_t coreLen = glen - 2 * strip;
    const int64_t rem = static_cast<int64_t>(h.size()) - 2 * strip;
    if (rem <= 0 || rem % coreLen != 0) return std::nullopt;
    const int64_t mag = rem / coreLen;
    for (int64_t d : {mag, -mag}) {
        Canon acc = identity_canon();
        Canon step = d >= 0 ? gc : inverse_canon(gc);
        for (int64_t i = 0; i < std::abs(d); ++i) acc = multiply_canon(acc, step);
        if (std::get<FreeCanon>(acc) == h) return d;
    }
    return std::nullopt;
}

std::string FreeGroup::format_canon(const Canon& x) const {
    return generators().format_word(Word(std::get<FreeCanon>(x).begin(), std::get<FreeCanon>(x).end()));
}

// ---------------------------------------------------------------------------
// FiniteMarkedGroup
// ---------------------------------------------------------------------------

namespace {
GeneratingSet finite_letters(const FiniteGroupTable& t, std::vector<int>& elems) {
    // close the chosen generator elements under inverse, preserve order
    std::vector<int> closed;
    for (int e : elems) {
        if (e <= 0 || e >= t.order()) throw instance_error("marked finite group: bad generator element");
        if (std::find(closed.begin(), closed.end(), e) == closed.end()) closed.push_back(e);
        int ie = t.inv(e);
        if (std::find(closed.begin(), closed.end(), ie) == closed.end()) closed.push_back(ie);
    }
    elems = closed;
    std::vector<std::string> names;
    std::vector<int> inverse(closed.size());
    std::vector<int64_t> zw(closed.size(), 0);
    for (int e : closed) names.push_back(t.name(e));
    for (size_t i = 0; i < closed.size(); ++i)
        for (size_t j = 0; j < closed.size(); ++j)
            if (closed[j] == t.inv(closed[i])) inverse[i] = static_cast<int>(j);
    return GeneratingSet(std::move(names), std::move(inverse), std::move(zw));
}
} // namespace

FiniteMarkedGroup::FiniteMarkedGroup(std::string name, FiniteGroupTable table,
                                     std::vector<int> generatorElems)
    : MarkedGroup(std::move(name), finite_letters(table, generatorElems), false),
      table_(std::move(table)), letterElem_(std::move(generatorElems)) {}

Canon FiniteMarkedGroup::identity_canon() const { return FiniteCanon{0}; }

Canon FiniteMarkedGroup::apply_letter_canon(const Canon& x, int letter) const {
    return FiniteCanon{table_.mul(std::get<FiniteCanon>(x), letterElem_.at(letter))};
}

Canon FiniteMarkedGroup::multiply_canon(const Canon& x, const Canon& y) const {
    return FiniteCanon{table_.mul(std::get<FiniteCanon>(x), std::get<FiniteCanon>(y))};
}

Canon FiniteMarkedGroup::inverse_canon(const Canon& x) const {
    return FiniteCanon{table_.inv(std::get<FiniteCanon>(x))};
}

int64_t FiniteMarkedGroup::z_of(const Canon&) const { return 0; }

std::optional<int64_t> FiniteMarkedGroup::power_solve(const Canon& hc, const Canon& gc) const {
    int h = std::get<FiniteCanon>(hc), g = std::get<FiniteCanon>(gc);
    int acc = 0;
    for (int d = 0; d < table_.order() + 1; ++d) {
        if (acc == h) return d;
        acc = table_.mul(acc, g);
        if (d > 0 && acc == 0) break;
    }
    return std::nullopt;
}

std::string FiniteMarkedGroup::format_canon(const Canon& x) const {
    return table_.name(std::get<FiniteCanon>(x));
}

// ---------------------------------------------------------------------------
// HnnGroup
// ---------------------------------------------------------------------------

namespace {
GeneratingSet hnn_letters(const HnnPresentation& p, std::vector<int>& elems,
                          std::vector<std::pair<int, int>>& atoms) {
    if (elems.empty())
        for (int e = 1; e < p.A().order(); ++e) elems.push_back(e);
    std::vector<int> closed;
    for (int e : elems) {
        if (e <= 0 || e >= p.A().order()) throw instance_error("hnn group: bad letter element");
        if (std::find(closed.begin(), closed.end(), e) == closed.end()) closed.push_back(e);
        int ie = p.A().inv(e);
        if (std::find(closed.begin(), closed.end(), ie) == closed.end()) closed.push_back(ie);
    }
    elems = closed;
    std::vector<std::string> names;
    std::vector<int> inverse(closed.size() + 2);
    std::vector<int64_t> zw(closed.size() + 2, 0);
    for (int e : closed) {
        names.push_back(p.A().name(e));
        atoms.push_back({0, e});
    }
    for (size_t i = 0; i < closed.size(); ++i)
        for (size_t j = 0; j < closed.size(); ++j)
            if (closed[j] == p.A().inv(closed[i])) inverse[i] = static_cast<int>(j);
    names.push_back(p.stable_letter());
    names.push_back(p.stable_letter() + "^-1");
    atoms.push_back({1, +1});
    atoms.push_back({1, -1});
    int ti = static_cast<int>(closed.size());
    inverse[ti] = ti + 1;
    inverse[ti + 1] = ti;
    zw[ti] = 1;
    zw[ti + 1] = -1;
    return GeneratingSet(std::move(names), std::move(inverse), std::move(zw));
}
} // namespace

HnnGroup::HnnGroup(std::string name, HnnPresentation pres, std::vector<int> letterElems)
    : MarkedGroup(std::move(name),
                  [&] {
                      std::vector<std::pair<int, int>> atoms;
                      auto gs = hnn_letters(pres, letterElems, atoms);
                      return gs;
                  }(),
                  true),
      pres_(std::move(pres)) {
    // rebuild atoms to match the final letter order
    std::vector<int> elems;
    for (int i = 0; i < generators().size(); ++i) {
        const auto& n = generators().letter_name(i);
        if (n == pres_.stable_letter())
            letterAtoms_.push_back({1, +1});
        else if (n == pres_.stable_letter() + "^-1")
            letterAtoms_.push_back({1, -1});
        else {
            auto e = pres_.A().find(n);
            if (!e) throw instance_error("hnn group: letter names an unknown A-element");
            letterAtoms_.push_back({0, *e});
        }
    }
}

Canon HnnGroup::identity_canon() const { return HnnNormalForm{}; }

Canon HnnGroup::apply_letter_canon(const Canon& x, int letter) const {
    const auto& nf = std::get<HnnNormalForm>(x);
    HnnRaw raw;
    raw.head = nf.head;
    for (const auto& s : nf.syllables) raw.parts.push_back({s.sign, s.rep});
    auto [kind, v] = letterAtoms_.at(letter);
    if (kind == 0)
        raw.push_element(pres_.A(), v);
    else
        raw.push_t(v);
    return hnn_normalize(pres_, std::move(raw));
}

Canon HnnGroup::multiply_canon(const Canon& x, const Canon& y) const {
    return hnn_multiply(pres_, std::get<HnnNormalForm>(x), std::get<HnnNormalForm>(y));
}

Canon HnnGroup::inverse_canon(const Canon& x) const {
    return hnn_inverse(pres_, std::get<HnnNormalForm>(x));
}

int64_t HnnGroup::z_of(const Canon& x) const { return std::get<HnnNormalForm>(x).z_sum(); }

bool HnnGroup::infinite_order(const Canon& x) const {
    const auto& nf = std::get<HnnNormalForm>(x);
    if (nf.z_sum() != 0) return true;
    if (nf.t_length() == 0) return false; // element of the finite base group
    // torsion elements are conjugate into A; a cyclically reduced core with
    // t-syllables has strictly growing powers
    return hnn_cyclic_reduce(pres_, nf).core.t_length() > 0;
}

std::optional<int64_t> HnnGroup::power_solve(const Canon& hc, const Canon& gc) const {
    const auto& h = std::get<HnnNormalForm>(hc);
    const auto& g = std::get<HnnNormalForm>(gc);
    auto powerEquals = [&](int64_t d) {
        HnnNormalForm acc;
        HnnNormalForm step = d >= 0 ? g : hnn_inverse(pres_, g);
        for (int64_t i = 0; i < std::abs(d); ++i) acc = hnn_multiply(pres_, acc, step);
        return acc == h;
    };
    if (g.z_sum() != 0) {
        if (h.z_sum() % g.z_sum() != 0) return std::nullopt;
        int64_t d = h.z_sum() / g.z_sum();
        return powerEquals(d) ? std::optional<int64_t>(d) : std::nullopt;
    }
    if (g.t_length() == 0) {
        for (int d = 0; d <= pres_.A().order(); ++d)
            if (powerEquals(d)) return d;
        return std::nullopt;
    }
    auto cyc = hnn_cyclic_reduce(pres_, g);
    int k = cyc.core.t_length();
    if (k == 0) {
        for (int d = 0; d <= pres_.A().order(); ++d)
            if (powerEquals(d)) return d;
        return std::nullopt;
    }
    int64_t bound = (h.t_length() + 2 * cyc.conjugator.t_length()) / k + 1;
    for (int64_t d = 0; d <= bound; ++d) {
        if (powerEquals(d)) return d;
        if (d > 0 && powerEquals(-d)) return -d;
    }
    return std::nullopt;
}

std::string HnnGroup::format_canon(const Canon& x) const {
    return hnn_format(pres_, std::get<HnnNormalForm>(x));
}

// ---------------------------------------------------------------------------
// LamplighterLimitGroup
// ---------------------------------------------------------------------------

LamplighterLimitGroup::LamplighterLimitGroup()
    : MarkedGroup("lamplighter-limit",
                  GeneratingSet({"a", "t", "t^-1"}, {0, 2, 1}, {0, 1, -1}), true) {}

Canon LamplighterLimitGroup::identity_canon() const { return LampCanon{}; }

namespace {
void toggle_lamp(std::vector<int64_t>& lamps, int64_t pos) {
    auto it = std::lower_bound(lamps.begin(), lamps.end(), pos);
    if (it != lamps.end() && *it == pos)
        lamps.erase(it);
    else
        lamps.insert(it, pos);
}
} // namespace

Canon LamplighterLimitGroup::apply_letter_canon(const Canon& x, int letter) const {
    LampCanon c = std::get<LampCanon>(x);
    if (letter == 0)
        toggle_lamp(c.lamps, c.shift);
    else
        c.shift += (letter == 1 ? 1 : -1);
    return c;
}

Canon LamplighterLimitGroup::multiply_canon(const Canon& x, const Canon& y) const {
    const auto& f = std::get<LampCanon>(x);
    const auto& g = std::get<LampCanon>(y);
    LampCanon out;
    out.shift = f.shift + g.shift;
    out.lamps = f.lamps;
    for (int64_t p : g.lamps) toggle_lamp(out.lamps, p + f.shift);
    return out;
}

Canon LamplighterLimitGroup::inverse_canon(const Canon& x) const {
    const auto& f = std::get<LampCanon>(x);
    LampCanon out;
    out.shift = -f.shift;
    for (int64_t p : f.lamps) out.lamps.push_back(p - f.shift);
    std::sort(out.lamps.begin(), out.lamps.end());
    return out;
}

int64_t LamplighterLimitGroup::z_of(const Canon& x) const { return std::get<LampCanon>(x).shift; }

bool LamplighterLimitGroup::infinite_order(const Canon& x) const {
    return std::get<LampCanon>(x).shift != 0;
}

std::optional<int64_t> LamplighterLimitGroup::power_solve(const Canon& hc, const Canon& gc) const {
    const auto& h = std::get<LampCanon>(hc);
    const auto& g = std::get<LampCanon>(gc);
    auto powerEquals = [&](int64_t d) {
        Canon acc = identity_canon();
        Canon step = d >= 0 ? gc : inverse_canon(gc);
        for (int64_t i = 0; i < std::abs(d); ++i) acc = multiply_canon(acc, step);
        return std::get<LampCanon>(acc) == h;
    };
    if (g.shift != 0) {
        if (h.shift % g.shift != 0) return std::nullopt;
        int64_t d = h.shift / g.shift;
        return powerEquals(d) ? std::optional<int64_t>(d) : std::nullopt;
    }
    for (int64_t d : {int64_t(0), int64_t(1)})
        if (powerEquals(d)) return d;
    return std::nullopt;
}

std::string LamplighterLimitGroup::format_canon(const Canon& x) const {
    const auto& f = std::get<LampCanon>(x);
    std::ostringstream out;
    out << "{lamps";
    if (f.lamps.empty()) out << " -";
    for (int64_t p : f.lamps) out << ' ' << p;
    out << " | shift " << f.shift << "}";
    return out.str();
}

// ---------------------------------------------------------------------------
// PermutationLimitGroup
// ---------------------------------------------------------------------------

PermutationLimitGroup::PermutationLimitGroup()
    : MarkedGroup("permutation-limit",
                  GeneratingSet({"s", "t", "t^-1"}, {0, 2, 1}, {0, 1, -1}), true) {}

Canon PermutationLimitGroup::identity_canon() const { return PermCanon{}; }

int64_t PermutationLimitGroup::apply(const PermCanon& x, int64_t p) {
    auto it = std::lower_bound(x.moved.begin(), x.moved.end(), std::make_pair(p, INT64_MIN));
    if (it != x.moved.end() && it->first == p) return it->second;
    return p + x.offset;
}

PermCanon PermutationLimitGroup::compose(const PermCanon& x, const PermCanon& y) {
    PermCanon out;
    out.offset = x.offset + y.offset;
    std::vector<int64_t> points;
    for (const auto& [p, q] : x.moved) points.push_back(p);
    for (const auto& [m, q] : y.moved) {
        // preimage of m under x
        int64_t pre = m - x.offset;
        for (const auto& [p, img] : x.moved)
            if (img == m) pre = p;
        points.push_back(pre);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (int64_t p : points) {
        int64_t img = apply(y, apply(x, p));
        if (img != p + out.offset) out.moved.push_back({p, img});
    }
    return out;
}

PermCanon PermutationLimitGroup::invert(const PermCanon& x) {
    PermCanon out;
    out.offset = -x.offset;
    for (const auto& [p, q] : x.moved) out.moved.push_back({q, p});
    std::sort(out.moved.begin(), out.moved.end());
    return out;
}

Canon PermutationLimitGroup::apply_letter_canon(const Canon& x, int letter) const {
    static const PermCanon s{0, {{0, 1}, {1, 0}}};
    static const PermCanon t{1, {}};
    static const PermCanon ti{-1, {}};
    const auto& c = std::get<PermCanon>(x);
    if (letter == 0) return compose(c, s);
    return compose(c, letter == 1 ? t : ti);
}

Canon PermutationLimitGroup::multiply_canon(const Canon& x, const Canon& y) const {
    return compose(std::get<PermCanon>(x), std::get<PermCanon>(y));
}

Canon PermutationLimitGroup::inverse_canon(const Canon& x) const {
    return invert(std::get<PermCanon>(x));
}

int64_t PermutationLimitGroup::z_of(const Canon& x) const { return std::get<PermCanon>(x).offset; }

bool PermutationLimitGroup::infinite_order(const Canon& x) const {
    return std::get<PermCanon>(x).offset != 0;
}

std::optional<int64_t> PermutationLimitGroup::power_solve(const Canon& hc, const Canon& gc) const {
    const auto& h = std::get<PermCanon>(hc);
    const auto& g = std::get<PermCanon>(gc);
    auto powerEquals = [&](int64_t d) {
        Canon acc = identity_canon();
        Canon step = d >= 0 ? gc : inverse_canon(gc);
        for (int64_t i = 0; i < std::abs(d); ++i) acc = multiply_canon(acc, step);
        return std::get<PermCanon>(acc) == h;
    };
    if (g.offset != 0) {
        if (h.offset % g.offset != 0) return std::nullopt;
        int64_t d = h.offset / g.offset;
        return powerEquals(d) ? std::optional<int64_t>(d) : std::nullopt;
    }
    // finitely supported, hence finite order
    PermCanon acc;
    for (int64_t d = 0; d <= 1 << 16; ++d) {
        if (acc == h) return d;
        acc = compose(acc, g);
        if (d > 0 && acc.moved.empty() && acc.offset == 0) break;
    }
    return std::nullopt;
}

std::string PermutationLimitGroup::format_canon(const Canon& x) const {
    const auto& c = std::get<PermCanon>(x);
    std::ostringstream out;
    out << "{offset " << c.offset;
    for (const auto& [p, q] : c.moved) out << "; " << p << "->" << q;
    out << "}";
    return out.str();
}

} // namespace snakes
