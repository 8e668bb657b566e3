#pragma once

#include "snakes/group.hpp"

#include <cstdint>

namespace snakes {

/// Tileset data model shared by the directed and undirected variants.
/// Steps are memory-set words over the group letters, colors are pairs
/// (base color, step); undirected colors carry step -1.
struct DirectedTileset {
    std::vector<std::vector<std::string>> steps; // S', nonempty words (letter names)
    std::vector<std::string> base_colors;        // C'
    struct Color {
        int base = 0;
        int step = -1; // -1: undirected
        friend auto operator<=>(const Color&, const Color&) = default;
        friend bool operator==(const Color&, const Color&) = default;
    };
    std::vector<Color> colors;
    struct Domino {
        int from = 0, step = 0, to = 0;
        friend auto operator<=>(const Domino&, const Domino&) = default;
        friend bool operator==(const Domino&, const Domino&) = default;
    };
    std::vector<Domino> dominoes;
    bool directed = true;

    friend bool operator==(const DirectedTileset&, const DirectedTileset&) = default;

    void validate() const;
    /// Canonical encoding string used in logs and hashes.
    std::string encode_string() const;
};

enum class Strength { Weak, Strong };
enum class Directedness { Undirected, Directed };
enum class Shape { Path, Infinite, Ouroboros };

struct ValidityMode {
    Strength strength = Strength::Strong;
    Directedness directedness = Directedness::Directed;
    Shape shape = Shape::Path;
};

inline ValidityMode directed_strong(Shape s) { return {Strength::Strong, Directedness::Directed, s}; }

/// Tileset resolved against a concrete marked group: step words parsed and
/// evaluated once, domino lookups indexed.
class TilesetContext {
public:
    TilesetContext(const MarkedGroup& g, const DirectedTileset& ts);

    const MarkedGroup& group;
    const DirectedTileset& tileset;
    std::vector<Word> step_words;
    std::vector<Element> step_eval;
    std::vector<Element> step_eval_inv;
    int max_step_letters = 0;
    bool has_identity_step = false;

    bool has_domino(int from, int step, int to) const;
    /// Dominoes leaving `from`, in declaration order.
    const std::vector<DirectedTileset::Domino>& from_color(int from) const;
    int direction_of(int color) const { return tileset.colors[color].step; }

private:
    std::vector<std::vector<DirectedTileset::Domino>> byFrom_;
    std::vector<uint64_t> dominoKeys_; // sorted packed (from,step,to)
};

// --- snakes ----------------------------------------------------------------

/// Finite injective colored path; start_word records a representative word
/// for the left endpoint so snakes can be lifted along quotients.
struct FinitePathSnake {
    std::vector<Element> vertices;
    std::vector<int> colors;
    Word start_word;
};

/// Injective colored cycle, n >= 1 vertices.
struct Ouroboros {
    std::vector<Element> vertices;
    std::vector<int> colors;
};

/// Bi-infinite snake invariant under left translation by `translation`:
/// vertex(i + period) = translation * vertex(i), colors repeat with the
/// period. The fundamental domain is vertices[0..period).
struct PeriodicSnake {
    int period = 1;
    std::vector<Element> fundamental;
    Element translation;
    std::vector<int> colors;
};

bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const FinitePathSnake& s,
                    ValidityMode mode);
bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const Ouroboros& s,
                    ValidityMode mode);
bool validate_snake(const MarkedGroup& g, const DirectedTileset& ts, const PeriodicSnake& s,
                    ValidityMode mode);

/// Windowed checker used by the property tests: expands `numPeriods` periods
/// each way and runs the finite pairwise checks on the expansion.
bool periodic_window_check(const MarkedGroup& g, const DirectedTileset& ts, const PeriodicSnake& s,
                           ValidityMode mode, int numPeriods);

// --- reductions ------------------------------------------------------------

enum class SourceVariant { Strong, Weak, DirectedWeak };

/// Reduction to the directed strong problem: attaches directions to colors;
/// weak sources additionally receive all completion dominoes with a middle
/// different from the source color's direction.
DirectedTileset to_directed_strong(const DirectedTileset& ts, SourceVariant from);

/// Extends a directed strong instance from letters S to letters T >= S:
/// new letters become wildcard steps whose constraints are vacuous.
DirectedTileset extend_generators(const DirectedTileset& ts, const GeneratingSet& s,
                                  const GeneratingSet& t);

// --- enumeration -----------------------------------------------------------

/// Total injective enumeration of directed tilesets with step words over a
/// fixed letter alphabet. Ordered by the signature (max step length, |S'|,
/// |C'|, |D|) graded by total size, lexicographic within a grade; exact
/// rank/unrank round-trip.
class TilesetEnumerator {
public:
    explicit TilesetEnumerator(std::vector<std::string> letterNames);

    DirectedTileset decode(uint64_t index) const;
    uint64_t encode(const DirectedTileset& ts) const;

private:
    std::vector<std::string> letters_;
    uint64_t words_up_to(int len) const;
    std::vector<std::string> word_at(int len, uint64_t rank) const;
};

} // namespace snakes
