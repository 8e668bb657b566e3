#include "snakes/presentations.hpp"

#include <algorithm>
#include <cassert>

namespace snakes {

// ---------------------------------------------------------------------------
// Amalgam
// ---------------------------------------------------------------------------

AmalgamPresentation::AmalgamPresentation(FiniteGroupTable a, FiniteGroupTable b, FiniteGroupTable c,
                                         std::vector<int> embAImage, std::vector<int> embBImage)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    embA_ = Homomorphism{&c_, &a_, std::move(embAImage)};
    embB_ = Homomorphism{&c_, &b_, std::move(embBImage)};
    embA_.require_embedding("amalgam embA");
    embB_.require_embedding("amalgam embB");
    transA_ = coset_transversal(a_, embA_.image);
    transB_ = coset_transversal(b_, embB_.image);
    inA_.assign(a_.order(), -1);
    inB_.assign(b_.order(), -1);
    for (int i = 0; i < c_.order(); ++i) {
        inA_[embA_.image[i]] = i;
        inB_[embB_.image[i]] = i;
    }
}

GeneratingSet AmalgamPresentation::word_alphabet() const {
    std::vector<std::string> letters;
    std::vector<int> inverse;
    std::vector<int64_t> zw;
    std::vector<std::pair<int, int>> atoms;
    for (int side = 0; side < 2; ++side) {
        const auto& f = factor(side);
        for (int e = 1; e < f.order(); ++e) {
            letters.push_back(f.name(e));
            atoms.push_back({side, e});
        }
    }
    inverse.resize(letters.size());
    zw.assign(letters.size(), 0);
    for (size_t i = 0; i < letters.size(); ++i) {
        auto [side, e] = atoms[i];
        int ie = factor(side).inv(e);
        for (size_t j = 0; j < letters.size(); ++j)
            if (atoms[j] == std::make_pair(side, ie)) inverse[i] = static_cast<int>(j);
    }
    return GeneratingSet(std::move(letters), std::move(inverse), std::move(zw));
}

std::pair<int, int> AmalgamPresentation::atom_of_letter(int letterId) const {
    int na = a_.order() - 1;
    if (letterId < na) return {0, letterId + 1};
    return {1, letterId - na + 1};
}

AmalgamNormalForm amalgam_normalize(const AmalgamPresentation& p,
                                    const std::vector<std::pair<int, int>>& atoms) {
    AmalgamNormalForm nf;
    // cached subgroup element lists for coset decomposition
    std::vector<int> subA, subB;
    for (int i = 0; i < p.C().order(); ++i) {
        subA.push_back(p.emb(0, i));
        subB.push_back(p.emb(1, i));
    }
    auto sub = [&](int side) -> const std::vector<int>& { return side == 0 ? subA : subB; };

    // push the C-element `carry` leftwards from just right of syllable `from`
    auto carry_left = [&](int from, int carry) {
        for (int i = from; i >= 0; --i) {
            if (carry == 0) return;
            auto& syl = nf.syllables[i];
            const auto& f = p.factor(syl.first);
            int m = f.mul(syl.second, p.emb(syl.first, carry));
            auto [h, ti] = coset_decompose(f, sub(syl.first), p.transversal(syl.first), m);
            syl.second = p.transversal(syl.first)[ti];
            carry = p.c_index(syl.first, h);
        }
        nf.c = p.C().mul(nf.c, carry);
    };

    std::vector<std::pair<int, int>> queue(atoms.begin(), atoms.end());
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [side, x] = queue[qi];
        const auto& f = p.factor(side);
        if (x == 0) continue;
        int cx = p.c_index(side, x);
        if (!nf.syllables.empty() && nf.syllables.back().first == side) {
            int tail = static_cast<int>(nf.syllables.size()) - 1;
            int m = f.mul(nf.syllables[tail].second, x);
            nf.syllables.pop_back();
            if (m == 0) continue;
            int cm = p.c_index(side, m);
            if (cm >= 0) {
                carry_left(static_cast<int>(nf.syllables.size()) - 1, cm);
            } else {
                auto [h, ti] = coset_decompose(f, sub(side), p.transversal(side), m);
                nf.syllables.push_back({side, p.transversal(side)[ti]});
                carry_left(static_cast<int>(nf.syllables.size()) - 2, p.c_index(side, h));
            }
        } else if (cx >= 0) {
            carry_left(static_cast<int>(nf.syllables.size()) - 1, cx);
        } else {
            auto [h, ti] = coset_decompose(f, sub(side), p.transversal(side), x);
            nf.syllables.push_back({side, p.transversal(side)[ti]});
            carry_left(static_cast<int>(nf.syllables.size()) - 2, p.c_index(side, h));
        }
    }
    return nf;
}

AmalgamNormalForm amalgam_normal_form(const AmalgamPresentation& p, const GeneratingSet& alphabet,
                                      const Word& w) {
    std::vector<std::pair<int, int>> atoms;
    atoms.reserve(w.size());
    for (int id : w) {
        if (id < 0 || id >= alphabet.size()) throw instance_error("amalgam word: bad letter id");
        atoms.push_back(p.atom_of_letter(id));
    }
    return amalgam_normalize(p, atoms);
}

std::string amalgam_format(const AmalgamPresentation& p, const AmalgamNormalForm& nf) {
    std::string out = "(" + p.C().name(nf.c) + ";";
    for (const auto& [side, e] : nf.syllables) out += " " + p.factor(side).name(e);
    return out + ")";
}

// ---------------------------------------------------------------------------
// HNN
// ---------------------------------------------------------------------------

HnnPresentation::HnnPresentation(FiniteGroupTable a, FiniteGroupTable c,
                                 std::vector<int> embMinusImage, std::vector<int> embPlusImage,
                                 std::string stableLetter)
    : a_(std::move(a)), c_(std::move(c)), stable_(std::move(stableLetter)) {
    embMinus_ = Homomorphism{&c_, &a_, std::move(embMinusImage)};
    embPlus_ = Homomorphism{&c_, &a_, std::move(embPlusImage)};
    embMinus_.require_embedding("hnn embMinus");
    embPlus_.require_embedding("hnn embPlus");
    transMinus_ = coset_transversal(a_, embMinus_.image);
    transPlus_ = coset_transversal(a_, embPlus_.image);
    inMinus_.assign(a_.order(), -1);
    inPlus_.assign(a_.order(), -1);
    for (int i = 0; i < c_.order(); ++i) {
        inMinus_[embMinus_.image[i]] = i;
        inPlus_[embPlus_.image[i]] = i;
    }
}

GeneratingSet HnnPresentation::word_alphabet() const {
    std::vector<std::string> letters;
    std::vector<int> inverse;
    std::vector<int64_t> zw;
    for (int e = 1; e < a_.order(); ++e) letters.push_back(a_.name(e));
    letters.push_back(stable_);
    letters.push_back(stable_ + "^-1");
    inverse.resize(letters.size());
    zw.assign(letters.size(), 0);
    for (int e = 1; e < a_.order(); ++e) inverse[e - 1] = a_.inv(e) - 1;
    int ti = a_.order() - 1;
    inverse[ti] = ti + 1;
    inverse[ti + 1] = ti;
    zw[ti] = 1;
    zw[ti + 1] = -1;
    return GeneratingSet(std::move(letters), std::move(inverse), std::move(zw));
}

std::pair<int, int> HnnPresentation::atom_of_letter(int letterId) const {
    int na = a_.order() - 1;
    if (letterId < na) return {0, letterId + 1};
    return {1, letterId == na ? +1 : -1};
}

void HnnRaw::push_element(const FiniteGroupTable& a, int elem) {
    if (parts.empty())
        head = a.mul(head, elem);
    else
        parts.back().second = a.mul(parts.back().second, elem);
}

void HnnRaw::push_t(int sign) { parts.push_back({sign, 0}); }

HnnNormalForm hnn_normalize(const HnnPresentation& p, HnnRaw raw) {
    const auto& A = p.A();
    // innermost pinch elimination: t^-1 c t with c in the minus copy,
    // t c t^-1 with c in the plus copy; each pass removes two t's
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < raw.parts.size(); ++i) {
            auto [e1, a1] = raw.parts[i];
            int e2 = raw.parts[i + 1].first;
            if (e2 != -e1) continue;
            int replaced = -1;
            if (e1 == -1 && p.in_minus(a1) >= 0)
                replaced = p.phi_minus_to_plus(a1);
            else if (e1 == +1 && p.in_plus(a1) >= 0)
                replaced = p.phi_plus_to_minus(a1);
            if (replaced < 0) continue;
            int merged = A.mul(replaced, raw.parts[i + 1].second);
            if (i == 0)
                raw.head = A.mul(raw.head, merged);
            else
                raw.parts[i - 1].second = A.mul(raw.parts[i - 1].second, merged);
            raw.parts.erase(raw.parts.begin() + i, raw.parts.begin() + i + 2);
            changed = true;
            break;
        }
    }
    // right-to-left coset normalization into transversal representatives
    std::vector<int> subMinus, subPlus;
    for (int i = 0; i < p.C().order(); ++i) {
        subMinus.push_back(p.emb_minus(i));
        subPlus.push_back(p.emb_plus(i));
    }
    for (int i = static_cast<int>(raw.parts.size()) - 1; i >= 0; --i) {
        auto& [sign, a] = raw.parts[i];
        int carry;
        if (sign == -1) {
            auto [m, ti] = coset_decompose(A, subMinus, p.trans_minus(), a);
            a = p.trans_minus()[ti];
            carry = p.phi_minus_to_plus(m); // t^-1 m = phi(m) t^-1
        } else {
            auto [q, ti] = coset_decompose(A, subPlus, p.trans_plus(), a);
            a = p.trans_plus()[ti];
            carry = p.phi_plus_to_minus(q); // t q = phi(q) t
        }
        if (i == 0)
            raw.head = A.mul(raw.head, carry);
        else
            raw.parts[i - 1].second = A.mul(raw.parts[i - 1].second, carry);
    }
    HnnNormalForm nf;
    nf.head = raw.head;
    nf.syllables.reserve(raw.parts.size());
    for (auto [sign, a] : raw.parts) nf.syllables.push_back({sign, a});
    for (size_t i = 0; i + 1 < nf.syllables.size(); ++i)
        assert(!(nf.syllables[i].rep == 0 && nf.syllables[i + 1].sign == -nf.syllables[i].sign));
    return nf;
}

namespace {
HnnRaw raw_of(const HnnNormalForm& nf) {
    HnnRaw raw;
    raw.head = nf.head;
    for (const auto& s : nf.syllables) raw.parts.push_back({s.sign, s.rep});
    return raw;
}
} // namespace

HnnNormalForm hnn_multiply(const HnnPresentation& p, const HnnNormalForm& x, const HnnNormalForm& y) {
    HnnRaw raw = raw_of(x);
    raw.push_element(p.A(), y.head);
    for (const auto& s : y.syllables) {
        raw.push_t(s.sign);
        raw.push_element(p.A(), s.rep);
    }
    return hnn_normalize(p, std::move(raw));
}

HnnNormalForm hnn_inverse(const HnnPresentation& p, const HnnNormalForm& x) {
    const auto& A = p.A();
    HnnRaw raw;
    const int n = static_cast<int>(x.syllables.size());
    raw.head = n ? A.inv(x.syllables[n - 1].rep) : A.inv(x.head);
    for (int i = n - 1; i >= 0; --i) {
        raw.push_t(-x.syllables[i].sign);
        raw.push_element(A, i > 0 ? A.inv(x.syllables[i - 1].rep) : A.inv(x.head));
    }
    return hnn_normalize(p, std::move(raw));
}

HnnNormalForm hnn_normal_form(const HnnPresentation& p, const GeneratingSet& alphabet, const Word& w) {
    HnnRaw raw;
    for (int id : w) {
        if (id < 0 || id >= alphabet.size()) throw instance_error("hnn word: bad letter id");
        auto [kind, v] = p.atom_of_letter(id);
        if (kind == 0)
            raw.push_element(p.A(), v);
        else
            raw.push_t(v);
    }
    return hnn_normalize(p, std::move(raw));
}

Word hnn_word_of(const HnnPresentation& p, const GeneratingSet& alphabet, const HnnNormalForm& nf) {
    Word w;
    auto pushElem = [&](int e) {
        if (e != 0) w.push_back(alphabet.require(p.A().name(e)));
    };
    int tPlus = alphabet.require(p.stable_letter());
    int tMinus = alphabet.require(p.stable_letter() + "^-1");
    pushElem(nf.head);
    for (const auto& s : nf.syllables) {
        w.push_back(s.sign > 0 ? tPlus : tMinus);
        pushElem(s.rep);
    }
    return w;
}

std::string hnn_format(const HnnPresentation& p, const HnnNormalForm& nf) {
    std::string out = p.A().name(nf.head);
    for (const auto& s : nf.syllables) {
        out += s.sign > 0 ? " t" : " t^-1";
        if (s.rep != 0) out += " " + p.A().name(s.rep);
    }
    return out;
}

HnnCyclicDecomposition hnn_cyclic_reduce(const HnnPresentation& p, const HnnNormalForm& g) {
    HnnCyclicDecomposition out;
    out.conjugator = HnnNormalForm{};
    out.core = g;
    const auto& A = p.A();
    while (out.core.t_length() >= 2) {
        const auto& syl = out.core.syllables;
        int k = static_cast<int>(syl.size());
        int e1 = syl[0].sign, ek = syl[k - 1].sign;
        if (e1 != -ek) break;
        int wrap = A.mul(syl[k - 1].rep, out.core.head);
        bool pinch = (ek == -1 && p.in_minus(wrap) >= 0) || (ek == +1 && p.in_plus(wrap) >= 0);
        if (!pinch) break;
        // conjugate by u = head t^{e1} g1: core <- u^-1 core u
        HnnRaw u;
        u.head = out.core.head;
        u.push_t(e1);
        u.push_element(A, syl[0].rep);
        HnnNormalForm un = hnn_normalize(p, u);
        out.conjugator = hnn_multiply(p, out.conjugator, un);
        HnnRaw next;
        for (int i = 1; i < k; ++i) {
            next.push_t(syl[i].sign);
            next.push_element(A, syl[i].rep);
        }
        next.push_element(A, out.core.head);
        next.push_t(e1);
        next.push_element(A, syl[0].rep);
        HnnNormalForm reduced = hnn_normalize(p, std::move(next));
        if (reduced.t_length() >= out.core.t_length()) break; // no progress; already cyclic
        out.core = reduced;
    }
    return out;
}

} // namespace snakes
