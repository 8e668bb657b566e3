#pragma once

#include "snakes/words.hpp"

#include <map>
#include <memory>
#include <set>

namespace snakes {

/// A prefix-closed regular tree domain W over a finite direction alphabet,
/// given by a DFA whose trim part is entirely accepting.
struct TreeDomain {
    std::vector<std::string> directions;
    std::vector<std::vector<int>> delta; // state x direction -> state or -1
    std::vector<bool> accepting;
    int start = 0;

    static TreeDomain full(std::vector<std::string> directionNames);
    void validate() const;

    int arity() const { return static_cast<int>(directions.size()); }
    /// -1 when the word leaves W.
    int state_at(const std::vector<int>& word) const;
    bool in_domain(const std::vector<int>& word) const { return state_at(word) >= 0; }
    bool live(int state) const { return state >= 0 && accepting[state]; }
    /// Child-direction bitmask of a live state.
    uint32_t branching(int state) const;
    /// All branching bitmasks realized by reachable live states.
    std::set<uint32_t> branchings() const;

    friend bool operator==(const TreeDomain&, const TreeDomain&) = default;
};

/// Rabin tree automaton with negative/positive acceptance pairs. Production
/// children use -1 for the dagger (direction leaves W).
struct RabinAutomaton {
    std::shared_ptr<const TreeDomain> domain;
    std::vector<std::string> alphabet;
    int num_states = 1;
    int start = 0;
    struct Production {
        int state = 0;
        int sigma = 0;
        std::vector<int> children; // per direction; -1 = dagger
        friend bool operator==(const Production&, const Production&) = default;
    };
    std::vector<Production> productions;
    struct AcceptancePair {
        std::vector<int> forbidden; // N: recurring states must avoid
        std::vector<int> required;  // P: recurring states must meet
        friend bool operator==(const AcceptancePair&, const AcceptancePair&) = default;
    };
    std::vector<AcceptancePair> pairs;

    void validate() const;
};

/// (Q x Sigma)-labeling of W up to a fixed depth.
struct PrefixRun {
    int depth = 0;
    std::map<std::vector<int>, std::pair<int, int>> labels; // word -> (state, sigma)
};

/// Production-consistency of a finite prefix run; acceptance pairs are not
/// evaluable on prefixes and are not checked.
bool check_run_prefix(const RabinAutomaton& a, const PrefixRun& run);

/// Product (intersection) or disjoint-start (union) automaton on the same
/// domain and alphabet.
RabinAutomaton combine(const RabinAutomaton& a1, const RabinAutomaton& a2, bool intersection);

/// A regular labeling of W by a finite-state labeler; carries the automaton
/// states of the witnessed run.
struct RegularTree {
    std::vector<std::string> alphabet;
    int start = 0;
    std::vector<std::vector<int>> delta; // labeler state x direction -> state or -1
    std::vector<int> output;             // labeler state -> sigma
    std::vector<int> run_state;          // labeler state -> automaton state
    std::string to_text(const TreeDomain& dom) const;
};

enum class EmptinessOutcome { Empty, NonEmpty, BudgetExceeded };

struct EmptinessResult {
    EmptinessOutcome outcome = EmptinessOutcome::BudgetExceeded;
    std::optional<RegularTree> witness;
    int64_t strategies_tried = 0;
};

/// Emptiness by exhaustive search over memoryless production-choice
/// strategies on (state, domain-state) game positions; every reachable
/// strongly connected recurrence set must satisfy some acceptance pair.
/// NonEmpty returns the strategy as a regular tree.
EmptinessResult emptiness(const RabinAutomaton& a, int64_t strategyBudget = 1 << 20);

/// Depth-d expansion of a witness together with its run states.
PrefixRun expand_witness(const RabinAutomaton& a, const RegularTree& tree, int depth);

} // namespace snakes
