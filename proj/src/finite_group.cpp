#include "snakes/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace snakes {

FiniteGroupTable::FiniteGroupTable(std::vector<std::string> names, std::vector<std::vector<int>> table)
    : names_(std::move(names)), table_(std::move(table)) {
    validate();
    inverse_.assign(order(), -1);
    for (int a = 0; a < order(); ++a)
        for (int b = 0; b < order(); ++b)
            if (table_[a][b] == 0) inverse_[a] = b;
    for (int a = 0; a < order(); ++a)
        if (inverse_[a] < 0 || table_[inverse_[a]][a] != 0)
            throw instance_error("finite group: missing two-sided inverse for '" + names_[a] + "'");
}

void FiniteGroupTable::validate() const {
    const int n = order();
    if (n == 0) throw instance_error("finite group: empty table");
    if (static_cast<int>(table_.size()) != n)
        throw instance_error("finite group: table row count != order");
    for (const auto& row : table_) {
        if (static_cast<int>(row.size()) != n)
            throw instance_error("finite group: ragged table");
        for (int v : row)
            if (v < 0 || v >= n) throw instance_error("finite group: table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        if (table_[0][a] != a || table_[a][0] != a)
            throw instance_error("finite group: element 0 is not the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                    throw instance_error("finite group: table is not associative");
}

std::optional<int> FiniteGroupTable::find(const std::string& n) const {
    for (int i = 0; i < order(); ++i)
        if (names_[i] == n) return i;
    return std::nullopt;
}

int FiniteGroupTable::element_order(int a) const {
    int x = a, k = 1;
    while (x != 0) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

FiniteGroupTable FiniteGroupTable::z2_power(int n) {
    const int size = 1 << n;
    std::vector<std::string> names(size);
    for (int m = 0; m < size; ++m) {
        if (m == 0) {
            names[m] = "1";
            continue;
        }
        std::string s;
        for (int i = 0; i < n; ++i)
            if (m & (1 << i)) s += "e" + std::to_string(i);
        names[m] = s;
    }
    std::vector<std::vector<int>> table(size, std::vector<int>(size));
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) table[a][b] = a ^ b;
    return FiniteGroupTable(std::move(names), std::move(table));
}

namespace {
std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}
std::string perm_name(const std::vector<int>& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(p[i]);
    }
    return s + "]";
}
} // namespace

FiniteGroupTable FiniteGroupTable::symmetric(int n) {
    auto perms = all_perms(std::max(n, 0));
    if (n <= 0) perms = {std::vector<int>{}};
    const int size = static_cast<int>(perms.size());
    std::vector<std::string> names(size);
    for (int i = 0; i < size; ++i) names[i] = perm_name(perms[i]);
    std::map<std::vector<int>, int> idx;
    for (int i = 0; i < size; ++i) idx[perms[i]] = i;
    std::vector<std::vector<int>> table(size, std::vector<int>(size));
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) {
            std::vector<int> c(perms[a].size());
            for (size_t x = 0; x < c.size(); ++x) c[x] = perms[b][perms[a][x]];
            table[a][b] = idx.at(c);
        }
    FiniteGroupTable g(std::move(names), std::move(table));
    g.perms_ = std::move(perms);
    return g;
}

std::optional<int> FiniteGroupTable::find_perm(const std::vector<int>& oneline) const {
    for (int i = 0; i < order(); ++i)
        if (perms_[i] == oneline) return i;
    return std::nullopt;
}

bool Homomorphism::is_homomorphism() const {
    if (!domain || !codomain) return false;
    if (static_cast<int>(image.size()) != domain->order()) return false;
    if (image[0] != 0) return false;
    for (int a = 0; a < domain->order(); ++a)
        for (int b = 0; b < domain->order(); ++b)
            if (codomain->mul(image[a], image[b]) != image[domain->mul(a, b)]) return false;
    return true;
}

bool Homomorphism::is_injective() const {
    std::set<int> seen(image.begin(), image.end());
    return seen.size() == image.size();
}

void Homomorphism::require_embedding(const std::string& what) const {
    if (!is_homomorphism()) throw instance_error(what + ": not a homomorphism");
    if (!is_injective()) throw instance_error(what + ": not injective");
}

std::vector<int> coset_transversal(const FiniteGroupTable& g, const std::vector<int>& sub) {
    std::vector<int> repOf(g.order(), -1);
    for (int x = 0; x < g.order(); ++x) {
        if (repOf[x] >= 0) continue;
        int least = x;
        std::vector<int> coset;
        for (int h : sub) coset.push_back(g.mul(h, x));
        for (int y : coset) least = std::min(least, y);
        for (int y : coset) repOf[y] = least;
    }
    std::vector<int> trans;
    trans.push_back(repOf[0]); // identity coset first; its least element is 0
    for (int x = 0; x < g.order(); ++x)
        if (repOf[x] == x && x != repOf[0]) trans.push_back(x);
    if (trans[0] != 0)
        throw instance_error("transversal: identity is not its own coset representative");
    return trans;
}

std::pair<int, int> coset_decompose(const FiniteGroupTable& g, const std::vector<int>& sub,
                                    const std::vector<int>& transversal, int elem) {
    for (int ti = 0; ti < static_cast<int>(transversal.size()); ++ti) {
        int rep = transversal[ti];
        // elem = h * rep  =>  h = elem * rep^-1
        int h = g.mul(elem, g.inv(rep));
        for (int s : sub)
            if (s == h) return {h, ti};
    }
    throw instance_error("coset decomposition failed (subgroup not closed?)");
}

} // namespace snakes
