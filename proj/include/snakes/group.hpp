#pragma once

#include "snakes/presentations.hpp"

#include <memory>
#include <variant>

namespace snakes {

class MarkedGroup;

/// Canonical form payloads, one alternative per implemented group kind.
using FiniteCanon = int32_t;
using FreeCanon = std::vector<int32_t>; // freely reduced letter ids
struct LampCanon {
    std::vector<int64_t> lamps; // sorted positions of lit lamps
    int64_t shift = 0;
    friend auto operator<=>(const LampCanon&, const LampCanon&) = default;
    friend bool operator==(const LampCanon&, const LampCanon&) = default;
};
struct PermCanon {
    int64_t offset = 0;
    std::vector<std::pair<int64_t, int64_t>> moved; // (x, image) where image != x + offset
    friend auto operator<=>(const PermCanon&, const PermCanon&) = default;
    friend bool operator==(const PermCanon&, const PermCanon&) = default;
};
using Canon = std::variant<FiniteCanon, FreeCanon, HnnNormalForm, LampCanon, PermCanon>;

/// A group element in canonical form. Two elements are equal iff they belong
/// to the same group and their canonical forms coincide.
struct Element {
    const MarkedGroup* group = nullptr;
    Canon canon;

    bool operator==(const Element& o) const { return group == o.group && canon == o.canon; }
    bool operator<(const Element& o) const { return canon < o.canon; }
};

/// The exact ball of a marked group: vertices carry shortlex-minimal
/// representative words, edges are all (u, letter, u*letter) with both
/// endpoints inside.
struct LabeledBall {
    int radius = 0;
    bool complete = true;  // false when the vertex budget was exhausted
    int completed_radius = -1;
    std::vector<Element> vertices;
    std::vector<Word> words; // shortlex-minimal word per vertex
    std::vector<std::array<int, 3>> edges; // (vertex, letter, vertex)

    std::optional<int> index_of(const Element& e) const;
    std::string to_dot(const MarkedGroup& g) const;
};

/// Where a group sits in the declared quotient order: free groups map onto
/// everything with the same letters; tower levels map onto later levels and
/// their limit.
struct QuotientInfo {
    enum Kind { FreeKind, TowerLevel, TowerLimit, Other } kind = Other;
    std::string family;
    int level = -1;
};

/// A finitely generated group with a fixed ordered generating set and
/// computable canonical forms. All operations are pure; instances are
/// immutable after construction.
class MarkedGroup {
public:
    virtual ~MarkedGroup() = default;

    const std::string& name() const { return name_; }
    const GeneratingSet& generators() const { return gens_; }
    const QuotientInfo& quotient_info() const { return qinfo_; }
    void set_quotient_info(QuotientInfo q) { qinfo_ = std::move(q); }

    Element identity() const { return {this, identity_canon()}; }
    Element evaluate(const Word& w) const;
    Element evaluate(const std::string& text) const { return evaluate(gens_.parse_word(text)); }
    Element multiply(const Element& x, const Element& y) const;
    Element inverse(const Element& x) const;
    Element apply_letter(const Element& x, int letter) const;

    bool has_z_projection() const { return hasPi_; }
    int64_t z_projection(const Element& x) const;

    /// True when x provably has infinite order (exact for every implemented
    /// group kind).
    bool certified_infinite_order(const Element& x) const;
    /// Solves g^d = h for infinite-order g; empty when no power matches.
    std::optional<int64_t> solve_power(const Element& h, const Element& g) const;

    LabeledBall ball(int radius, size_t vertexBudget = 1u << 20) const;

    std::string format(const Element& x) const;

protected:
    MarkedGroup(std::string name, GeneratingSet gens, bool hasPi)
        : name_(std::move(name)), gens_(std::move(gens)), hasPi_(hasPi) {}

    virtual Canon identity_canon() const = 0;
    virtual Canon apply_letter_canon(const Canon& x, int letter) const = 0;
    virtual Canon multiply_canon(const Canon& x, const Canon& y) const = 0;
    virtual Canon inverse_canon(const Canon& x) const = 0;
    virtual int64_t z_of(const Canon& x) const = 0;
    virtual bool infinite_order(const Canon& x) const = 0;
    virtual std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const = 0;
    virtual std::string format_canon(const Canon& x) const = 0;

    void check_member(const Element& x, const char* op) const;

private:
    std::string name_;
    GeneratingSet gens_;
    bool hasPi_;
    QuotientInfo qinfo_;
};

/// True when evaluation in `h` factors through `g` over the same marking.
bool is_declared_quotient(const MarkedGroup& g, const MarkedGroup& h);

/// Free group on the given generator names (formal inverses added).
class FreeGroup : public MarkedGroup {
public:
    explicit FreeGroup(const std::vector<std::string>& names);

protected:
    Canon identity_canon() const override;
    Canon apply_letter_canon(const Canon& x, int letter) const override;
    Canon multiply_canon(const Canon& x, const Canon& y) const override;
    Canon inverse_canon(const Canon& x) const override;
    int64_t z_of(const Canon& x) const override;
    bool infinite_order(const Canon& x) const override;
    std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const override;
    std::string format_canon(const Canon& x) const override;
};

/// A finite table group marked by a chosen set of generator elements.
class FiniteMarkedGroup : public MarkedGroup {
public:
    FiniteMarkedGroup(std::string name, FiniteGroupTable table, std::vector<int> generatorElems);
    const FiniteGroupTable& table() const { return table_; }

protected:
    Canon identity_canon() const override;
    Canon apply_letter_canon(const Canon& x, int letter) const override;
    Canon multiply_canon(const Canon& x, const Canon& y) const override;
    Canon inverse_canon(const Canon& x) const override;
    int64_t z_of(const Canon&) const override;
    bool infinite_order(const Canon&) const override { return false; }
    std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const override;
    std::string format_canon(const Canon& x) const override;

private:
    FiniteGroupTable table_;
    std::vector<int> letterElem_; // letter id -> element index
};

/// HNN extension of a finite group, marked by a chosen subset of A-elements
/// plus the stable letter. Tower levels and free products A * Z live here.
class HnnGroup : public MarkedGroup {
public:
    /// `letterElems`: A-elements used as marked letters (empty = all
    /// nonidentity elements of A).
    HnnGroup(std::string name, HnnPresentation pres, std::vector<int> letterElems = {});

    const HnnPresentation& presentation() const { return pres_; }
    const HnnNormalForm& canon_of(const Element& x) const { return std::get<HnnNormalForm>(x.canon); }
    Element from_normal_form(HnnNormalForm nf) const { return {this, Canon(std::move(nf))}; }

protected:
    Canon identity_canon() const override;
    Canon apply_letter_canon(const Canon& x, int letter) const override;
    Canon multiply_canon(const Canon& x, const Canon& y) const override;
    Canon inverse_canon(const Canon& x) const override;
    int64_t z_of(const Canon& x) const override;
    bool infinite_order(const Canon& x) const override;
    std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const override;
    std::string format_canon(const Canon& x) const override;

private:
    HnnPresentation pres_;
    std::vector<std::pair<int, int>> letterAtoms_; // (kind 0=A elem,1=t^sign, value)
};

/// The lamplighter group Z/2 wr Z: pairs (finite lamp set, shift), letters
/// a (lamp at 0), t, t^-1.
class LamplighterLimitGroup : public MarkedGroup {
public:
    LamplighterLimitGroup();

protected:
    Canon identity_canon() const override;
    Canon apply_letter_canon(const Canon& x, int letter) const override;
    Canon multiply_canon(const Canon& x, const Canon& y) const override;
    Canon inverse_canon(const Canon& x) const override;
    int64_t z_of(const Canon& x) const override;
    bool infinite_order(const Canon& x) const override;
    std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const override;
    std::string format_canon(const Canon& x) const override;
};

/// Permutations of Z acting as a translation away from a finite set;
/// letters s = (0 1), t = x -> x+1, t^-1. Permutations act on the right.
class PermutationLimitGroup : public MarkedGroup {
public:
    PermutationLimitGroup();

    static PermCanon compose(const PermCanon& x, const PermCanon& y);
    static PermCanon invert(const PermCanon& x);
    static int64_t apply(const PermCanon& x, int64_t point);

protected:
    Canon identity_canon() const override;
    Canon apply_letter_canon(const Canon& x, int letter) const override;
    Canon multiply_canon(const Canon& x, const Canon& y) const override;
    Canon inverse_canon(const Canon& x) const override;
    int64_t z_of(const Canon& x) const override;
    bool infinite_order(const Canon& x) const override;
    std::optional<int64_t> power_solve(const Canon& h, const Canon& g) const override;
    std::string format_canon(const Canon& x) const override;
};

} // namespace snakes
