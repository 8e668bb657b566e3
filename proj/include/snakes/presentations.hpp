#pragma once

#include "snakes/finite_group.hpp"

#include <compare>
#include <utility>

namespace snakes {

// ---------------------------------------------------------------------------
// Amalgamated free product A *_C B
// ---------------------------------------------------------------------------

/// Presentation of A *_C B with C embedded on both sides. Transversals are
/// chosen as the least element of each coset, identity first.
class AmalgamPresentation {
public:
    AmalgamPresentation(FiniteGroupTable a, FiniteGroupTable b, FiniteGroupTable c,
                        std::vector<int> embAImage, std::vector<int> embBImage);

    const FiniteGroupTable& A() const { return a_; }
    const FiniteGroupTable& B() const { return b_; }
    const FiniteGroupTable& C() const { return c_; }
    const std::vector<int>& transversal(int side) const { return side == 0 ? transA_ : transB_; }
    int emb(int side, int cElem) const { return side == 0 ? embA_.image[cElem] : embB_.image[cElem]; }
    /// C-index of `elem` inside side's embedded copy, or -1.
    int c_index(int side, int elem) const { return side == 0 ? inA_[elem] : inB_[elem]; }
    const FiniteGroupTable& factor(int side) const { return side == 0 ? a_ : b_; }

    /// Letters naming the nonidentity elements of A and B.
    GeneratingSet word_alphabet() const;
    /// (side, element) atom for a letter of word_alphabet().
    std::pair<int, int> atom_of_letter(int letterId) const;

private:
    FiniteGroupTable a_, b_, c_;
    Homomorphism embA_, embB_;
    std::vector<int> transA_, transB_;
    std::vector<int> inA_, inB_;
};

/// Normal form c * tau_1 * ... * tau_k with the tau_i alternating between
/// nonidentity transversal elements of A and B.
struct AmalgamNormalForm {
    int c = 0;                                  // element index in C
    std::vector<std::pair<int, int>> syllables; // (side, element index in that side)
    friend bool operator==(const AmalgamNormalForm&, const AmalgamNormalForm&) = default;
};

AmalgamNormalForm amalgam_normalize(const AmalgamPresentation& p,
                                    const std::vector<std::pair<int, int>>& atoms);
AmalgamNormalForm amalgam_normal_form(const AmalgamPresentation& p, const GeneratingSet& alphabet,
                                      const Word& w);
std::string amalgam_format(const AmalgamPresentation& p, const AmalgamNormalForm& nf);

// ---------------------------------------------------------------------------
// HNN extension A *_C
// ---------------------------------------------------------------------------

/// Presentation of the HNN extension of A over C with stable letter t and
/// the relation  t^-1 * embMinus(c) * t = embPlus(c).
class HnnPresentation {
public:
    HnnPresentation(FiniteGroupTable a, FiniteGroupTable c,
                    std::vector<int> embMinusImage, std::vector<int> embPlusImage,
                    std::string stableLetter = "t");

    const FiniteGroupTable& A() const { return a_; }
    const FiniteGroupTable& C() const { return c_; }
    const std::string& stable_letter() const { return stable_; }
    const std::vector<int>& trans_minus() const { return transMinus_; }
    const std::vector<int>& trans_plus() const { return transPlus_; }
    int emb_minus(int c) const { return embMinus_.image[c]; }
    int emb_plus(int c) const { return embPlus_.image[c]; }
    /// C-index of an A-element inside the minus/plus copy, or -1.
    int in_minus(int a) const { return inMinus_[a]; }
    int in_plus(int a) const { return inPlus_[a]; }
    int phi_minus_to_plus(int a) const { return embPlus_.image[inMinus_[a]]; }
    int phi_plus_to_minus(int a) const { return embMinus_.image[inPlus_[a]]; }

    /// Letters naming all nonidentity elements of A plus the stable letter
    /// and its inverse.
    GeneratingSet word_alphabet() const;
    /// Atom for a letter: (kind, value) with kind 0 = A element, 1 = t^value.
    std::pair<int, int> atom_of_letter(int letterId) const;

private:
    FiniteGroupTable a_, c_;
    Homomorphism embMinus_, embPlus_;
    std::vector<int> transMinus_, transPlus_;
    std::vector<int> inMinus_, inPlus_;
    std::string stable_;
};

struct HnnSyllable {
    int sign = 1; // -1 or +1
    int rep = 0;  // element index in A, constrained to the sign's transversal
    friend auto operator<=>(const HnnSyllable&, const HnnSyllable&) = default;
    friend bool operator==(const HnnSyllable&, const HnnSyllable&) = default;
};

/// Britton-style normal form  g0 t^{e1} g1 ... t^{en} gn  with g0 free in A,
/// gi in the transversal selected by ei, and no pinch t^{±1} 1 t^{∓1}.
struct HnnNormalForm {
    int head = 0;
    std::vector<HnnSyllable> syllables;
    friend auto operator<=>(const HnnNormalForm&, const HnnNormalForm&) = default;
    friend bool operator==(const HnnNormalForm&, const HnnNormalForm&) = default;

    int t_length() const { return static_cast<int>(syllables.size()); }
    int64_t z_sum() const {
        int64_t s = 0;
        for (const auto& x : syllables) s += x.sign;
        return s;
    }
};

/// Unreduced alternating data: head then (sign, element) pairs, elements
/// unconstrained in A.
struct HnnRaw {
    int head = 0;
    std::vector<std::pair<int, int>> parts;
    void push_element(const FiniteGroupTable& a, int elem);
    void push_t(int sign);
};

HnnNormalForm hnn_normalize(const HnnPresentation& p, HnnRaw raw);
HnnNormalForm hnn_multiply(const HnnPresentation& p, const HnnNormalForm& x, const HnnNormalForm& y);
HnnNormalForm hnn_inverse(const HnnPresentation& p, const HnnNormalForm& x);
HnnNormalForm hnn_normal_form(const HnnPresentation& p, const GeneratingSet& alphabet, const Word& w);
/// Word over word_alphabet() that re-evaluates to the normal form.
Word hnn_word_of(const HnnPresentation& p, const GeneratingSet& alphabet, const HnnNormalForm& nf);
std::string hnn_format(const HnnPresentation& p, const HnnNormalForm& nf);

/// g = x * core * x^-1 with core cyclically Britton-reduced (no wrap pinch).
struct HnnCyclicDecomposition {
    HnnNormalForm conjugator;
    HnnNormalForm core;
};
HnnCyclicDecomposition hnn_cyclic_reduce(const HnnPresentation& p, const HnnNormalForm& g);

} // namespace snakes
