#include "snakes/instance.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace snakes {

namespace {

// --- value tokenizer --------------------------------------------------------

struct Token {
    enum Kind { Atom, Str, Open, Close } kind;
    std::string text;
    int column;
};

std::vector<Token> tokenize_value(const std::string& value, int line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < value.size()) {
        char c = value[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (c == '[') {
            out.push_back({Token::Open, "[", col});
            ++i;
        } else if (c == ']') {
            out.push_back({Token::Close, "]", col});
            ++i;
        } else if (c == '"') {
            size_t j = value.find('"', i + 1);
            if (j == std::string::npos) throw parse_error("unterminated string", line, col);
            out.push_back({Token::Str, value.substr(i + 1, j - i - 1), col});
            i = j + 1;
        } else {
            size_t j = i;
            while (j < value.size() && !std::isspace(static_cast<unsigned char>(value[j])) &&
                   value[j] != '[' && value[j] != ']' && value[j] != '"')
                ++j;
            out.push_back({Token::Atom, value.substr(i, j - i), col});
            i = j;
        }
    }
    return out;
}

/// Nested list value: an item is an atom, a quoted string, or a list.
struct Item {
    enum Kind { Atom, Str, List } kind = Atom;
    std::string text;
    std::vector<Item> items;
};

Item parse_items(const std::vector<Token>& toks, size_t& i, int line) {
    if (i >= toks.size()) throw parse_error("unexpected end of value", line);
    const Token& t = toks[i];
    if (t.kind == Token::Open) {
        Item list;
        list.kind = Item::List;
        ++i;
        while (i < toks.size() && toks[i].kind != Token::Close) list.items.push_back(parse_items(toks, i, line));
        if (i >= toks.size()) throw parse_error("missing ']'", line, t.column);
        ++i;
        return list;
    }
    if (t.kind == Token::Close) throw parse_error("unexpected ']'", line, t.column);
    Item a;
    a.kind = t.kind == Token::Str ? Item::Str : Item::Atom;
    a.text = t.text;
    ++i;
    return a;
}

Item parse_value(const std::string& value, int line) {
    auto toks = tokenize_value(value, line);
    if (toks.empty()) throw parse_error("empty value", line);
    size_t i = 0;
    Item v = parse_items(toks, i, line);
    if (i != toks.size()) throw parse_error("trailing tokens after value", line, toks[i].column);
    return v;
}

int64_t to_int(const Item& it, int line, const std::string& key) {
    if (it.kind != Item::Atom) throw parse_error("expected integer for " + key, line);
    try {
        size_t pos = 0;
        int64_t v = std::stoll(it.text, &pos);
        if (pos != it.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw parse_error("not an integer: '" + it.text + "' for " + key, line);
    }
}

std::vector<std::string> to_name_list(const Item& it, int line, const std::string& key) {
    if (it.kind != Item::List) throw parse_error("expected list for " + key, line);
    std::vector<std::string> out;
    for (const auto& x : it.items) {
        if (x.kind == Item::List) throw parse_error("unexpected nested list in " + key, line);
        out.push_back(x.text);
    }
    return out;
}

std::vector<int> to_int_list(const Item& it, int line, const std::string& key) {
    if (it.kind != Item::List) throw parse_error("expected list for " + key, line);
    std::vector<int> out;
    for (const auto& x : it.items) out.push_back(static_cast<int>(to_int(x, line, key)));
    return out;
}

std::vector<std::string> split_word(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

InstanceFile parse_instance_text(const std::string& text, const std::string& originName) {
    InstanceFile inst;
    std::istringstream in(text);
    std::string rawLine;
    std::string section;
    int lineNo = 0;
    bool sawGroup = false;
    std::map<std::string, std::map<std::string, std::pair<Item, int>>> values;

    while (std::getline(in, rawLine)) {
        ++lineNo;
        std::string line = rawLine;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);
        if (line.front() == '[') {
            if (line.back() != ']') throw parse_error("malformed section header", lineNo);
            section = line.substr(1, line.size() - 2);
            if (section != "group" && section != "tileset" && section != "automaton" &&
                section != "budget")
                throw parse_error("unknown section [" + section + "]", lineNo);
            if (section == "group") sawGroup = true;
            if (section == "tileset") inst.has_tileset = true;
            if (section == "automaton") inst.has_automaton = true;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error("expected 'key = value'", lineNo);
        if (section.empty()) throw parse_error("key outside of any [section]", lineNo);
        std::string key = line.substr(0, eq);
        key = key.substr(0, key.find_last_not_of(" \t") + 1);
        std::string value = line.substr(eq + 1);
        if (!values[section].emplace(key, std::make_pair(parse_value(value, lineNo), lineNo)).second)
            throw parse_error("duplicate key '" + key + "' in [" + section + "]", lineNo);
    }
    if (!sawGroup) throw parse_error("missing [group] section in " + originName, lineNo);

    auto get = [&](const std::string& sec, const std::string& key) -> const Item* {
        auto s = values.find(sec);
        if (s == values.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second.first;
    };
    auto line_of = [&](const std::string& sec, const std::string& key) {
        return values.at(sec).at(key).second;
    };
    auto need = [&](const std::string& sec, const std::string& key) -> const Item& {
        const Item* it = get(sec, key);
        if (!it) throw instance_error("[" + sec + "] missing key '" + key + "'");
        return *it;
    };
    auto atom = [&](const std::string& sec, const std::string& key) {
        const Item& it = need(sec, key);
        if (it.kind == Item::List)
            throw parse_error("expected atom for " + key, line_of(sec, key));
        return it.text;
    };

    // [group]
    inst.group_kind = atom("group", "kind");
    if (inst.group_kind == "free") {
        inst.generators = to_name_list(need("group", "generators"), line_of("group", "generators"),
                                       "[group].generators");
    } else if (inst.group_kind == "tower-level" || inst.group_kind == "tower-limit") {
        inst.family = atom("group", "family");
        if (inst.group_kind == "tower-level")
            inst.level = static_cast<int>(to_int(need("group", "level"), line_of("group", "level"),
                                                 "[group].level"));
    } else if (inst.group_kind == "finite-table" || inst.group_kind == "free-product-z" ||
               inst.group_kind == "hnn") {
        inst.elements = to_name_list(need("group", "elements"), line_of("group", "elements"),
                                     "[group].elements");
        const Item& tab = need("group", "table");
        if (tab.kind != Item::List) throw instance_error("[group].table must be a list of rows");
        for (const auto& row : tab.items)
            inst.table.push_back(to_int_list(row, line_of("group", "table"), "[group].table"));
        if (const Item* m = get("group", "marked"))
            inst.marked = to_name_list(*m, line_of("group", "marked"), "[group].marked");
        if (inst.group_kind == "hnn") {
            inst.c_order = static_cast<int>(to_int(need("group", "c-order"),
                                                   line_of("group", "c-order"), "[group].c-order"));
            inst.emb_minus = to_int_list(need("group", "emb-minus"), line_of("group", "emb-minus"),
                                         "[group].emb-minus");
            inst.emb_plus = to_int_list(need("group", "emb-plus"), line_of("group", "emb-plus"),
                                        "[group].emb-plus");
        }
    } else {
        throw instance_error("[group].kind unknown: '" + inst.group_kind + "'");
    }

    // [tileset]
    if (inst.has_tileset) {
        DirectedTileset& ts = inst.tileset;
        if (const Item* d = get("tileset", "directed"))
            ts.directed = d->text == "true";
        if (const Item* v = get("tileset", "variant")) inst.variant = v->text;
        if (const Item* s = get("tileset", "shape")) inst.shape = s->text;
        const Item& steps = need("tileset", "steps");
        if (steps.kind != Item::List) throw instance_error("[tileset].steps must be a list");
        for (const auto& w : steps.items) {
            if (w.kind != Item::Str)
                throw instance_error("[tileset].steps entries must be quoted words");
            ts.steps.push_back(split_word(w.text));
        }
        ts.base_colors = to_name_list(need("tileset", "base-colors"),
                                      line_of("tileset", "base-colors"), "[tileset].base-colors");
        const Item& colors = need("tileset", "colors");
        if (colors.kind != Item::List) throw instance_error("[tileset].colors must be a list");
        for (const auto& c : colors.items) {
            if (c.kind != Item::List || c.items.size() != 2)
                throw instance_error("[tileset].colors entries must be [base step]");
            auto baseIt = std::find(ts.base_colors.begin(), ts.base_colors.end(), c.items[0].text);
            if (baseIt == ts.base_colors.end())
                throw instance_error("[tileset].colors references undeclared base color '" +
                                     c.items[0].text + "'");
            int step = -1;
            if (c.items[1].text != "-")
                step = static_cast<int>(to_int(c.items[1], line_of("tileset", "colors"),
                                               "[tileset].colors"));
            if (step >= static_cast<int>(ts.steps.size()))
                throw instance_error("[tileset].colors references unknown step index");
            ts.colors.push_back(
                {static_cast<int>(baseIt - ts.base_colors.begin()), step});
        }
        if (const Item* doms = get("tileset", "dominoes")) {
            if (doms->kind != Item::List) throw instance_error("[tileset].dominoes must be a list");
            for (const auto& d : doms->items) {
                auto v = to_int_list(d, line_of("tileset", "dominoes"), "[tileset].dominoes");
                if (v.size() != 3)
                    throw instance_error("[tileset].dominoes entries must be [from step to]");
                if (v[0] < 0 || v[0] >= static_cast<int>(ts.colors.size()) || v[2] < 0 ||
                    v[2] >= static_cast<int>(ts.colors.size()))
                    throw instance_error("[tileset].dominoes references an undeclared color");
                if (v[1] < 0 || v[1] >= static_cast<int>(ts.steps.size()))
                    throw instance_error("[tileset].dominoes references an unknown step");
                ts.dominoes.push_back({v[0], v[1], v[2]});
            }
        }
        ts.validate();
        if (mode_of(inst).directedness == Directedness::Directed && !ts.directed)
            throw instance_error("[tileset].variant asks for directions on an undirected tileset");
    }

    // [automaton]
    if (inst.has_automaton) {
        inst.directions = to_name_list(need("automaton", "directions"),
                                       line_of("automaton", "directions"), "[automaton].directions");
        if (const Item* d = get("automaton", "domain")) inst.domain_full = d->text == "full";
        if (!inst.domain_full) {
            inst.domain_states = static_cast<int>(to_int(need("automaton", "domain-states"),
                                                         line_of("automaton", "domain-states"),
                                                         "[automaton].domain-states"));
            inst.domain_start = static_cast<int>(to_int(need("automaton", "domain-start"),
                                                        line_of("automaton", "domain-start"),
                                                        "[automaton].domain-start"));
            inst.domain_accept = to_int_list(need("automaton", "domain-accept"),
                                             line_of("automaton", "domain-accept"),
                                             "[automaton].domain-accept");
            const Item& edges = need("automaton", "domain-edges");
            if (edges.kind != Item::List)
                throw instance_error("[automaton].domain-edges must be a list");
            for (const auto& e : edges.items) {
                if (e.kind != Item::List || e.items.size() != 3)
                    throw instance_error("[automaton].domain-edges entries must be [state dir state]");
                auto dir = std::find(inst.directions.begin(), inst.directions.end(), e.items[1].text);
                if (dir == inst.directions.end())
                    throw instance_error("[automaton].domain-edges references unknown direction");
                inst.domain_edges.push_back(
                    {static_cast<int>(to_int(e.items[0], 0, "domain-edges")),
                     static_cast<int>(dir - inst.directions.begin()),
                     static_cast<int>(to_int(e.items[2], 0, "domain-edges"))});
            }
        }
        inst.alphabet = to_name_list(need("automaton", "alphabet"), line_of("automaton", "alphabet"),
                                     "[automaton].alphabet");
        inst.states = to_name_list(need("automaton", "states"), line_of("automaton", "states"),
                                   "[automaton].states");
        inst.aut_start = atom("automaton", "start");
        const Item& prods = need("automaton", "productions");
        if (prods.kind != Item::List) throw instance_error("[automaton].productions must be a list");
        for (const auto& p : prods.items) {
            if (p.kind != Item::List || p.items.size() != 2 + inst.directions.size())
                throw instance_error("[automaton].productions entries must be [state sigma child...]");
            std::vector<std::string> row;
            for (const auto& x : p.items) row.push_back(x.text);
            inst.productions.push_back(std::move(row));
        }
        if (const Item* prs = get("automaton", "pairs")) {
            if (prs->kind != Item::List) throw instance_error("[automaton].pairs must be a list");
            for (const auto& pr : prs->items) {
                if (pr.kind != Item::List || pr.items.size() != 2 ||
                    pr.items[0].kind != Item::List || pr.items[1].kind != Item::List)
                    throw instance_error("[automaton].pairs entries must be [[N...] [P...]]");
                std::vector<std::string> nn, pp;
                for (const auto& x : pr.items[0].items) nn.push_back(x.text);
                for (const auto& x : pr.items[1].items) pp.push_back(x.text);
                inst.pairs.push_back({nn, pp});
            }
        }
    }

    // [budget]
    auto budget_int = [&](const char* key, auto& field) {
        if (const Item* it = get("budget", key))
            field = static_cast<std::decay_t<decltype(field)>>(
                to_int(*it, line_of("budget", key), std::string("[budget].") + key));
    };
    budget_int("max-path-length", inst.budget.max_path_length);
    budget_int("max-period", inst.budget.max_period);
    budget_int("max-radius", inst.budget.max_radius);
    budget_int("max-nodes", inst.budget.max_nodes);
    budget_int("max-configs", inst.budget.max_configs);
    budget_int("wall-ms", inst.budget.wall_ms);
    inst.budget.validate();
    return inst;
}

InstanceFile parse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw instance_error("cannot open instance file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {
std::string quote_word(const std::vector<std::string>& w) {
    std::string s = "\"";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + w[i];
    return s + "\"";
}
} // namespace

std::string serialize_instance(const InstanceFile& inst) {
    std::ostringstream out;
    out << "[group]\n";
    out << "kind = " << inst.group_kind << "\n";
    if (inst.group_kind == "free") {
        out << "generators = [";
        for (size_t i = 0; i < inst.generators.size(); ++i)
            out << (i ? " " : "") << inst.generators[i];
        out << "]\n";
    } else if (inst.group_kind == "tower-level") {
        out << "family = " << inst.family << "\nlevel = " << inst.level << "\n";
    } else if (inst.group_kind == "tower-limit") {
        out << "family = " << inst.family << "\n";
    } else {
        out << "elements = [";
        for (size_t i = 0; i < inst.elements.size(); ++i) out << (i ? " " : "") << inst.elements[i];
        out << "]\ntable = [";
        for (size_t r = 0; r < inst.table.size(); ++r) {
            out << (r ? " [" : "[");
            for (size_t c = 0; c < inst.table[r].size(); ++c)
                out << (c ? " " : "") << inst.table[r][c];
            out << "]";
        }
        out << "]\n";
        if (!inst.marked.empty()) {
            out << "marked = [";
            for (size_t i = 0; i < inst.marked.size(); ++i) out << (i ? " " : "") << inst.marked[i];
            out << "]\n";
        }
        if (inst.group_kind == "hnn") {
            out << "c-order = " << inst.c_order << "\nemb-minus = [";
            for (size_t i = 0; i < inst.emb_minus.size(); ++i)
                out << (i ? " " : "") << inst.emb_minus[i];
            out << "]\nemb-plus = [";
            for (size_t i = 0; i < inst.emb_plus.size(); ++i)
                out << (i ? " " : "") << inst.emb_plus[i];
            out << "]\n";
        }
    }
    if (inst.has_tileset) {
        const DirectedTileset& ts = inst.tileset;
        out << "\n[tileset]\n";
        out << "directed = " << (ts.directed ? "true" : "false") << "\n";
        out << "variant = " << inst.variant << "\nshape = " << inst.shape << "\n";
        out << "steps = [";
        for (size_t i = 0; i < ts.steps.size(); ++i) out << (i ? " " : "") << quote_word(ts.steps[i]);
        out << "]\nbase-colors = [";
        for (size_t i = 0; i < ts.base_colors.size(); ++i)
            out << (i ? " " : "") << ts.base_colors[i];
        out << "]\ncolors = [";
        for (size_t i = 0; i < ts.colors.size(); ++i) {
            out << (i ? " [" : "[") << ts.base_colors[ts.colors[i].base] << " ";
            if (ts.colors[i].step < 0)
                out << "-";
            else
                out << ts.colors[i].step;
            out << "]";
        }
        out << "]\ndominoes = [";
        for (size_t i = 0; i < ts.dominoes.size(); ++i)
            out << (i ? " [" : "[") << ts.dominoes[i].from << " " << ts.dominoes[i].step << " "
                << ts.dominoes[i].to << "]";
        out << "]\n";
    }
    if (inst.has_automaton) {
        out << "\n[automaton]\n";
        out << "directions = [";
        for (size_t i = 0; i < inst.directions.size(); ++i)
            out << (i ? " " : "") << inst.directions[i];
        out << "]\n";
        out << "domain = " << (inst.domain_full ? "full" : "dfa") << "\n";
        if (!inst.domain_full) {
            out << "domain-states = " << inst.domain_states << "\n";
            out << "domain-start = " << inst.domain_start << "\n";
            out << "domain-accept = [";
            for (size_t i = 0; i < inst.domain_accept.size(); ++i)
                out << (i ? " " : "") << inst.domain_accept[i];
            out << "]\ndomain-edges = [";
            for (size_t i = 0; i < inst.domain_edges.size(); ++i)
                out << (i ? " [" : "[") << inst.domain_edges[i][0] << " "
                    << inst.directions[inst.domain_edges[i][1]] << " " << inst.domain_edges[i][2]
                    << "]";
            out << "]\n";
        }
        out << "alphabet = [";
        for (size_t i = 0; i < inst.alphabet.size(); ++i) out << (i ? " " : "") << inst.alphabet[i];
        out << "]\nstates = [";
        for (size_t i = 0; i < inst.states.size(); ++i) out << (i ? " " : "") << inst.states[i];
        out << "]\nstart = " << inst.aut_start << "\n";
        out << "productions = [";
        for (size_t i = 0; i < inst.productions.size(); ++i) {
            out << (i ? " [" : "[");
            for (size_t j = 0; j < inst.productions[i].size(); ++j)
                out << (j ? " " : "") << inst.productions[i][j];
            out << "]";
        }
        out << "]\npairs = [";
        for (size_t i = 0; i < inst.pairs.size(); ++i) {
            out << (i ? " [[" : "[[");
            for (size_t j = 0; j < inst.pairs[i].first.size(); ++j)
                out << (j ? " " : "") << inst.pairs[i].first[j];
            out << "] [";
            for (size_t j = 0; j < inst.pairs[i].second.size(); ++j)
                out << (j ? " " : "") << inst.pairs[i].second[j];
            out << "]]";
        }
        out << "]\n";
    }
    out << "\n[budget]\n";
    out << "max-path-length = " << inst.budget.max_path_length << "\n";
    out << "max-period = " << inst.budget.max_period << "\n";
    out << "max-radius = " << inst.budget.max_radius << "\n";
    out << "max-nodes = " << inst.budget.max_nodes << "\n";
    out << "max-configs = " << inst.budget.max_configs << "\n";
    out << "wall-ms = " << inst.budget.wall_ms << "\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// builders
// ---------------------------------------------------------------------------

std::unique_ptr<MarkedGroup> build_group(const InstanceFile& inst) {
    if (inst.group_kind == "free") return std::make_unique<FreeGroup>(inst.generators);
    if (inst.group_kind == "tower-level") {
        auto f = family_from_name(inst.family);
        if (!f) throw instance_error("[group].family unknown: '" + inst.family + "'");
        return marked_level(*f, inst.level);
    }
    if (inst.group_kind == "tower-limit") {
        auto f = family_from_name(inst.family);
        if (!f) throw instance_error("[group].family unknown: '" + inst.family + "'");
        return limit_group(*f);
    }
    FiniteGroupTable table(inst.elements, inst.table);
    auto marked_elems = [&]() {
        std::vector<int> out;
        for (const auto& n : inst.marked) {
            auto e = table.find(n);
            if (!e) throw instance_error("[group].marked names unknown element '" + n + "'");
            out.push_back(*e);
        }
        if (out.empty())
            for (int e = 1; e < table.order(); ++e) out.push_back(e);
        return out;
    };
    if (inst.group_kind == "finite-table")
        return std::make_unique<FiniteMarkedGroup>("finite<" + std::to_string(table.order()) + ">",
                                                   table, marked_elems());
    if (inst.group_kind == "free-product-z") {
        FiniteGroupTable c({"1"}, {{0}});
        HnnPresentation pres(table, c, {0}, {0});
        return std::make_unique<HnnGroup>("free-product-z<" + std::to_string(table.order()) + ">",
                                          pres, marked_elems());
    }
    if (inst.group_kind == "hnn") {
        if (static_cast<int>(inst.emb_minus.size()) != inst.c_order ||
            static_cast<int>(inst.emb_plus.size()) != inst.c_order)
            throw instance_error("[group].emb-minus/emb-plus must list c-order images");
        // derive C's table from the minus image, which must be a subgroup
        std::vector<std::string> cnames;
        for (int i = 0; i < inst.c_order; ++i) cnames.push_back("c" + std::to_string(i));
        std::vector<std::vector<int>> ctab(inst.c_order, std::vector<int>(inst.c_order, -1));
        for (int i = 0; i < inst.c_order; ++i)
            for (int j = 0; j < inst.c_order; ++j) {
                int prod = table.mul(inst.emb_minus[i], inst.emb_minus[j]);
                for (int kk = 0; kk < inst.c_order; ++kk)
                    if (inst.emb_minus[kk] == prod) ctab[i][j] = kk;
                if (ctab[i][j] < 0)
                    throw instance_error("[group].emb-minus image is not closed under products");
            }
        FiniteGroupTable c(cnames, ctab);
        HnnPresentation pres(table, c, inst.emb_minus, inst.emb_plus);
        return std::make_unique<HnnGroup>("hnn<" + std::to_string(table.order()) + ">", pres,
                                          marked_elems());
    }
    throw instance_error("[group].kind unknown: '" + inst.group_kind + "'");
}

RabinAutomaton build_automaton(const InstanceFile& inst) {
    if (!inst.has_automaton) throw instance_error("instance has no [automaton] section");
    auto dom = std::make_shared<TreeDomain>();
    if (inst.domain_full) {
        *dom = TreeDomain::full(inst.directions);
    } else {
        dom->directions = inst.directions;
        dom->start = inst.domain_start;
        dom->accepting.assign(inst.domain_states, false);
        for (int q : inst.domain_accept) {
            if (q < 0 || q >= inst.domain_states)
                throw instance_error("[automaton].domain-accept out of range");
            dom->accepting[q] = true;
        }
        dom->delta.assign(inst.domain_states, std::vector<int>(inst.directions.size(), -1));
        for (const auto& [from, dir, to] : inst.domain_edges) {
            if (from < 0 || from >= inst.domain_states || to < 0 || to >= inst.domain_states)
                throw instance_error("[automaton].domain-edges out of range");
            dom->delta[from][dir] = to;
        }
    }
    dom->validate();

    RabinAutomaton a;
    a.domain = dom;
    a.alphabet = inst.alphabet;
    a.num_states = static_cast<int>(inst.states.size());
    auto state_of = [&](const std::string& n) {
        auto it = std::find(inst.states.begin(), inst.states.end(), n);
        if (it == inst.states.end())
            throw instance_error("[automaton] references unknown state '" + n + "'");
        return static_cast<int>(it - inst.states.begin());
    };
    auto sigma_of = [&](const std::string& n) {
        auto it = std::find(inst.alphabet.begin(), inst.alphabet.end(), n);
        if (it == inst.alphabet.end())
            throw instance_error("[automaton] references unknown symbol '" + n + "'");
        return static_cast<int>(it - inst.alphabet.begin());
    };
    a.start = state_of(inst.aut_start);
    for (const auto& row : inst.productions) {
        RabinAutomaton::Production p;
        p.state = state_of(row[0]);
        p.sigma = sigma_of(row[1]);
        for (size_t i = 2; i < row.size(); ++i)
            p.children.push_back(row[i] == "-" ? -1 : state_of(row[i]));
        a.productions.push_back(std::move(p));
    }
    for (const auto& [nn, pp] : inst.pairs) {
        RabinAutomaton::AcceptancePair pr;
        for (const auto& n : nn) pr.forbidden.push_back(state_of(n));
        for (const auto& n : pp) pr.required.push_back(state_of(n));
        a.pairs.push_back(std::move(pr));
    }
    a.validate();
    return a;
}

ValidityMode mode_of(const InstanceFile& inst) {
    ValidityMode mode;
    if (inst.variant == "weak")
        mode = {Strength::Weak, Directedness::Undirected, Shape::Path};
    else if (inst.variant == "strong")
        mode = {Strength::Strong, Directedness::Undirected, Shape::Path};
    else if (inst.variant == "directed-weak")
        mode = {Strength::Weak, Directedness::Directed, Shape::Path};
    else if (inst.variant == "directed-strong")
        mode = {Strength::Strong, Directedness::Directed, Shape::Path};
    else
        throw instance_error("[tileset].variant unknown: '" + inst.variant + "'");
    if (inst.shape == "path")
        mode.shape = Shape::Path;
    else if (inst.shape == "infinite")
        mode.shape = Shape::Infinite;
    else if (inst.shape == "ouroboros")
        mode.shape = Shape::Ouroboros;
    else
        throw instance_error("[tileset].shape unknown: '" + inst.shape + "'");
    return mode;
}

std::optional<SourceVariant> source_variant_of(const std::string& variant) {
    if (variant == "strong") return SourceVariant::Strong;
    if (variant == "weak") return SourceVariant::Weak;
    if (variant == "directed-weak") return SourceVariant::DirectedWeak;
    return std::nullopt;
}

} // namespace snakes
