#pragma once

#include "snakes/tiles.hpp"

namespace snakes {

/// Resource limits for the decision procedures. Exceeding any bound yields
/// Unknown, never a wrong verdict.
struct Budget {
    int max_path_length = 12;    // vertices in finite searches
    int max_period = 6;
    int max_radius = 8;          // width bound tried by the classifier
    int64_t max_nodes = 200000;  // search-tree nodes
    int64_t max_configs = 100000;
    int64_t wall_ms = 600000;

    void validate() const;
};

enum class Outcome { Yes, No, Unknown };
enum class CertificateKind { None, ExhaustedRadius, ExhaustedLength, ClosedConfigurations };

const char* outcome_name(Outcome o);
const char* certificate_name(CertificateKind c);

/// Three-valued decision result with a re-checkable witness or certificate.
struct Verdict {
    Outcome outcome = Outcome::Unknown;
    CertificateKind certificate = CertificateKind::None;
    int64_t bound = 0;
    std::optional<FinitePathSnake> path_witness;
    std::optional<Ouroboros> ouroboros_witness;
    std::optional<PeriodicSnake> periodic_witness;
    std::string note;
    int64_t nodes_used = 0;

    bool yes() const { return outcome == Outcome::Yes; }
    bool no() const { return outcome == Outcome::No; }
    std::string to_text(const MarkedGroup& g, const DirectedTileset& ts) const;
};

/// Classifier output: Case1 = infinite snake with unbounded Z-projection,
/// Case2 = infinite snakes exist but all have width <= width_bound,
/// Case3 = no infinite snake.
struct CaseResult {
    enum Kind { Case1, Case2, Case3, Unknown } kind = Unknown;
    int64_t width_bound = 0;
    Verdict evidence;
    std::string note;
};

const char* case_name(CaseResult::Kind k);

/// Vertex region for reachability queries.
struct Region {
    enum Kind { Fiber, OutsideBall, Elements } kind = Fiber;
    int64_t value = 0; // fiber value or ball radius
    std::vector<Element> elems;
    std::string describe() const;
};

/// Existence of a valid finite path snake with at least `minVertices`
/// vertices, searched from the identity up to translation.
Verdict path_snake_search(const MarkedGroup& g, const DirectedTileset& ts, Strength strength,
                          Directedness directedness, int minVertices, const Budget& budget);

/// Injective colored cycles (n >= 1 vertices); No is a bounded exclusion.
Verdict ouroboros_search(const MarkedGroup& g, const DirectedTileset& ts, Strength strength,
                         Directedness directedness, const Budget& budget);

/// Positive semi-decider for periodic strong directed infinite snakes;
/// never returns No.
Verdict periodic_snake_search(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget,
                              bool requireNonzeroPi = false);

/// Dual semi-decision for the strong directed infinite snake problem:
/// periodic witnesses against exhausted fixed-length segments.
Verdict infinite_snake_decide(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget);

/// Exact number of valid strong directed n-vertex segments with the start
/// normalized to 1; nullopt when the node budget was exhausted.
std::optional<int64_t> count_segments(const MarkedGroup& g, const DirectedTileset& ts, int n,
                                      int64_t nodeBudget);

/// Decides which of the three Z-projection cases holds, within budget.
CaseResult classify_z(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget);

/// Strong directed reachability from the seed set into the target region.
Verdict reach(const MarkedGroup& g, const DirectedTileset& ts, const std::vector<Element>& seeds,
              const Region& target, const Budget& budget);

/// Certificate radius r such that no strong directed snake from 1 leaves
/// B(r); No carries the radius, Unknown when snakes outgrow the budget.
Verdict no_snake_radius(const MarkedGroup& g, const DirectedTileset& ts, const Budget& budget);

/// Lifts a valid strong directed snake along a declared quotient G ->> H by
/// replaying its direction words from the lifted start.
FinitePathSnake lift_snake(const MarkedGroup& g, const MarkedGroup& h, const DirectedTileset& ts,
                           const FinitePathSnake& snakeH);

} // namespace snakes
