#pragma once

#include "snakes/automata.hpp"
#include "snakes/solver.hpp"
#include "snakes/tower.hpp"

namespace snakes {

/// Parse error anchored to a line (and column when known) of the input.
struct parse_error : std::runtime_error {
    parse_error(const std::string& what, int line, int col = -1)
        : std::runtime_error(what + " (line " + std::to_string(line) +
                             (col >= 0 ? ", column " + std::to_string(col) : "") + ")"),
          line(line), column(col) {}
    int line;
    int column;
};

/// Parsed instance file: one group, at most one tileset, at most one
/// automaton, and a budget. Line-oriented `key = value` under `[section]`
/// headers; lists bracketed, words quoted.
struct InstanceFile {
    // [group]
    std::string group_kind; // free | finite-table | free-product-z | hnn | tower-level | tower-limit
    std::vector<std::string> generators;
    std::vector<std::string> elements;
    std::vector<std::vector<int>> table;
    std::vector<std::string> marked;
    int c_order = 1;
    std::vector<int> emb_minus{0}, emb_plus{0};
    std::string family = "lamplighter";
    int level = 0;

    // [tileset]
    bool has_tileset = false;
    DirectedTileset tileset;
    std::string variant = "directed-strong";
    std::string shape = "path";

    // [automaton]
    bool has_automaton = false;
    std::vector<std::string> directions;
    bool domain_full = true;
    int domain_states = 1, domain_start = 0;
    std::vector<int> domain_accept{0};
    std::vector<std::array<int, 3>> domain_edges; // (state, direction, state)
    std::vector<std::string> alphabet;
    std::vector<std::string> states;
    std::string aut_start;
    std::vector<std::vector<std::string>> productions; // [state sigma child...]
    std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>> pairs;

    // [budget]
    Budget budget;
};

InstanceFile parse_instance_text(const std::string& text, const std::string& originName);
InstanceFile parse_instance(const std::string& path);
std::string serialize_instance(const InstanceFile& inst);

std::unique_ptr<MarkedGroup> build_group(const InstanceFile& inst);
RabinAutomaton build_automaton(const InstanceFile& inst);

ValidityMode mode_of(const InstanceFile& inst);
std::optional<SourceVariant> source_variant_of(const std::string& variant);

} // namespace snakes
