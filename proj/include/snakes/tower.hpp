#pragma once

#include "snakes/solver.hpp"

#include <memory>

namespace snakes {

enum class TowerFamily { Lamplighter, PermutationsOfZ };
const char* family_name(TowerFamily f);
std::optional<TowerFamily> family_from_name(const std::string& n);

/// One level of the HNN tower: the finite base A_n, the embedding of the
/// previous level (left copy), the isomorphism between the two embedded
/// copies, and the presentation of G_n = A_n *_{A_{n-1}}.
struct TowerLevel {
    TowerFamily family{};
    int n = 0;
    FiniteGroupTable A;     // A_n
    FiniteGroupTable Aprev; // A_{n-1}
    Homomorphism embeddingPrev;
    std::vector<std::pair<int, int>> alpha; // (minus-copy element, plus-copy element)
    std::shared_ptr<const HnnPresentation> presentation;
    /// (generator name in A_n, witness word over the marked letters)
    std::vector<std::pair<std::string, std::string>> generator_witnesses;
};

TowerLevel build_level(TowerFamily family, int n);
/// The level's marked group over the family letters (a/s, t, t^-1).
std::unique_ptr<HnnGroup> marked_level(TowerFamily family, int n);
std::unique_ptr<MarkedGroup> limit_group(TowerFamily family);

/// Marked-ball agreement: words of length <= r define the same equality
/// pattern in both groups.
bool ball_agreement(const MarkedGroup& g, const MarkedGroup& h, int r);
/// A distinguishing word pair when agreement fails.
std::optional<std::pair<Word, Word>> ball_agreement_witness(const MarkedGroup& g,
                                                            const MarkedGroup& h, int r);

/// Components of the subgraph induced on the Z-fiber of [iMin, iMax] in the
/// Cayley graph generated by the whole radius-r ball.
struct FiberComponentsReport {
    int radius = 0;
    int64_t i_min = 0, i_max = -1;
    bool closed = true;
    int64_t frontier = 0;
    std::vector<std::vector<Element>> components;
    size_t max_component_size = 0;
    int64_t widened_diameter = 0;
    std::optional<int64_t> bound; // 4 * diam^2 * |A_n| on tower levels
};

FiberComponentsReport fiber_components(const MarkedGroup& g, int radius, int64_t iMin, int64_t iMax,
                                       int64_t vertexBudget = 20000,
                                       std::optional<int64_t> baseOrder = std::nullopt);

// --- supervisor -------------------------------------------------------------

/// The stage game: enumerate directed tilesets, resolve each on the current
/// virtually free level to a persistence certificate or park it on the
/// watch list, and re-examine the watch list whenever the stage advances.
struct SupervisorWatchItem {
    uint64_t index = 0;
    DirectedTileset tileset;
    std::string reason;
    int64_t radius = 0;
};

struct SupervisorState {
    int stage = 0;
    uint64_t cursor = 0;
    int64_t accumulated_radius = 0;
    std::vector<SupervisorWatchItem> watch;
    std::vector<std::string> log;
};

struct SupervisorOutcome {
    std::string certificate;
    int64_t radius = 0;
};

SupervisorOutcome supervisor_step(SupervisorState& state, const MarkedGroup& level,
                                  const TilesetEnumerator& enumerator, const Budget& budget);
void supervisor_advance_stage(SupervisorState& state, const MarkedGroup& newLevel,
                              const Budget& budget);
/// Runs the full smoke harness: all tilesets at the first level, watch-list
/// re-examination on every later level.
SupervisorState supervise(TowerFamily family, int maxLevel, uint64_t tilesetCount,
                          const Budget& budget);

} // namespace snakes
