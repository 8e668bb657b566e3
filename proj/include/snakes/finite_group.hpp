#pragma once

#include "snakes/words.hpp"

#include <string>
#include <vector>

namespace snakes {

/// A finite group given by its full multiplication table. Element 0 is the
/// identity. Group axioms are verified at construction.
class FiniteGroupTable {
public:
    FiniteGroupTable() = default;
    FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<int>> table);

    int order() const { return static_cast<int>(names_.size()); }
    int identity() const { return 0; }
    int mul(int a, int b) const { return table_[a][b]; }
    int inv(int a) const { return inverse_[a]; }
    const std::string& name(int a) const { return names_.at(a); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> find(const std::string& n) const;

    int element_order(int a) const;

    /// Elementary abelian (Z/2)^n with elements indexed by bitmask.
    static FiniteGroupTable z2_power(int n);
    /// Symmetric group on {0..n-1}; composition acts on the right
    /// (x^(ab) = (x^a)^b). Element 0 is the identity permutation.
    static FiniteGroupTable symmetric(int n);

    /// One-line notation of element `a` of symmetric(n); empty otherwise.
    const std::vector<int>& perm_of(int a) const { return perms_.at(a); }
    bool has_perms() const { return !perms_.empty(); }
    std::optional<int> find_perm(const std::vector<int>& oneline) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    std::vector<std::vector<int>> perms_; // only for symmetric groups
    void validate() const;
};

/// A homomorphism between table groups, stored as the image list.
struct Homomorphism {
    const FiniteGroupTable* domain = nullptr;
    const FiniteGroupTable* codomain = nullptr;
    std::vector<int> image; // image[a] in codomain

    int operator()(int a) const { return image.at(a); }
    bool is_homomorphism() const;
    bool is_injective() const;
    void require_embedding(const std::string& what) const;
};

/// Representatives of the right cosets H\G... more precisely, of the cosets
/// {H*g}: every g factors uniquely as h*rep. The identity coset is listed
/// first; each representative is the least element index in its coset.
std::vector<int> coset_transversal(const FiniteGroupTable& g, const std::vector<int>& subgroupElems);

/// Decompose g = h * rep with h in the subgroup; returns (h, rep index in transversal).
std::pair<int, int> coset_decompose(const FiniteGroupTable& g, const std::vector<int>& subgroupElems,
                                    const std::vector<int>& transversal, int elem);

} // namespace snakes
