#include "snakes/words.hpp"

#include <algorithm>
#include <sstream>

namespace snakes {

GeneratingSet::GeneratingSet(std::vector<std::string> letters,
                             std::vector<int> inverse,
                             std::vector<int64_t> zweight)
    : letters_(std::move(letters)), inverse_(std::move(inverse)), zweight_(std::move(zweight)) {
    if (inverse_.size() != letters_.size() || zweight_.size() != letters_.size())
        throw instance_error("generating set: mismatched letter/inverse/zweight sizes");
    for (int i = 0; i < size(); ++i) {
        if (inverse_[i] < 0 || inverse_[i] >= size() || inverse_[inverse_[i]] != i)
            throw instance_error("generating set: involution is not a self-inverse pairing");
        if (!index_.emplace(letters_[i], i).second)
            throw instance_error("generating set: duplicate letter '" + letters_[i] + "'");
    }
    for (int i = 0; i < size(); ++i)
        if (zweight_[inverse_[i]] != -zweight_[i])
            throw instance_error("generating set: z-weights not inverse-compatible");
}

GeneratingSet GeneratingSet::free_pairs(const std::vector<std::string>& names) {
    std::vector<std::string> letters;
    std::vector<int> inverse;
    std::vector<int64_t> zw;
    for (const auto& n : names) {
        int a = static_cast<int>(letters.size());
        letters.push_back(n);
        letters.push_back(n + "^-1");
        inverse.push_back(a + 1);
        inverse.push_back(a);
        int64_t w = (n == "t") ? 1 : 0;
        zw.push_back(w);
        zw.push_back(-w);
    }
    return GeneratingSet(std::move(letters), std::move(inverse), std::move(zw));
}

bool GeneratingSet::has_z_weights() const {
    for (auto w : zweight_)
        if (w != 0) return true;
    return false;
}

std::optional<int> GeneratingSet::find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

int GeneratingSet::require(const std::string& name) const {
    auto id = find(name);
    if (!id) throw instance_error("unknown letter '" + name + "'");
    return *id;
}

bool GeneratingSet::contains_letters(const GeneratingSet& other) const {
    for (const auto& n : other.letters_)
        if (!find(n)) return false;
    return true;
}

Word GeneratingSet::parse_word(const std::string& text) const {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) w.push_back(require(tok));
    return w;
}

std::string GeneratingSet::format_word(const Word& w) const {
    if (w.empty()) return "1";
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += letter_name(w[i]);
    }
    return out;
}

Word GeneratingSet::invert_word(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inverse_of(*it));
    return out;
}

std::vector<Word> GeneratingSet::words_up_to(int maxLen) const {
    std::vector<Word> out;
    std::vector<Word> level{Word{}};
    for (int len = 1; len <= maxLen; ++len) {
        std::vector<Word> next;
        for (const auto& w : level) {
            for (int s = 0; s < size(); ++s) {
                Word v = w;
                v.push_back(s);
                next.push_back(v);
                out.push_back(std::move(v));
            }
        }
        level = std::move(next);
    }
    return out;
}

} // namespace snakes
