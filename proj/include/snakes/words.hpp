#pragma once

#include <string>
#include <vector>
#include <map>
#include <optional>
#include <stdexcept>
#include <cstdint>

namespace snakes {

/// A word is a sequence of letter ids relative to some GeneratingSet.
using Word = std::vector<int>;

/// Ordered alphabet of generator letters together with the formal-inverse
/// pairing. The letter order is fixed at construction and used for all
/// shortlex tie-breaking. An involutive generator is its own inverse and
/// occupies a single slot.
class GeneratingSet {
public:
    GeneratingSet() = default;

    /// `letters[i]` pairs with `letters[inverse[i]]`; `zweight` is the
    /// exponent-sum weight used by the Z-projection (t -> +1, t^-1 -> -1).
    GeneratingSet(std::vector<std::string> letters,
                  std::vector<int> inverse,
                  std::vector<int64_t> zweight);

    /// Free-style alphabet: for each name, adds `name` and `name^-1`.
    static GeneratingSet free_pairs(const std::vector<std::string>& names);

    int size() const { return static_cast<int>(letters_.size()); }
    const std::string& letter_name(int id) const { return letters_.at(id); }
    const std::vector<std::string>& letter_names() const { return letters_; }
    int inverse_of(int id) const { return inverse_.at(id); }
    int64_t z_weight(int id) const { return zweight_.at(id); }
    bool has_z_weights() const;

    std::optional<int> find(const std::string& name) const;
    int require(const std::string& name) const;

    bool same_letters(const GeneratingSet& other) const { return letters_ == other.letters_; }
    /// True when every letter of `other` appears here under the same name.
    bool contains_letters(const GeneratingSet& other) const;

    Word parse_word(const std::string& space_separated) const;
    std::string format_word(const Word& w) const;
    Word invert_word(const Word& w) const;

    /// All words of length in [1, maxLen], shortlex order.
    std::vector<Word> words_up_to(int maxLen) const;

private:
    std::vector<std::string> letters_;
    std::vector<int> inverse_;
    std::vector<int64_t> zweight_;
    std::map<std::string, int> index_;
};

/// Error for malformed inputs at the API boundary (unknown letters,
/// mixed-group operands, inconsistent presentations).
struct instance_error : std::runtime_error {
    explicit instance_error(const std::string& what) : std::runtime_error(what) {}
};

/// Error for a capability the group does not declare (e.g. Z-projection).
struct unsupported_capability : std::runtime_error {
    explicit unsupported_capability(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an exploration exceeds its resource budget; carries how far
/// the computation definitely got.
struct budget_exceeded : std::runtime_error {
    explicit budget_exceeded(const std::string& what, int64_t completed = -1)
        : std::runtime_error(what), completed_bound(completed) {}
    int64_t completed_bound;
};

} // namespace snakes
