#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "snakes/tower.hpp"

using namespace snakes;

TEST_CASE("generating set invariants") {
    GeneratingSet gs({"a", "t", "t^-1"}, {0, 2, 1}, {0, 1, -1});
    CHECK(gs.size() == 3);
    CHECK(gs.inverse_of(0) == 0);
    CHECK(gs.inverse_of(1) == 2);
    CHECK(gs.require("t") == 1);
    CHECK(!gs.find("x"));
    CHECK(gs.format_word(gs.parse_word("a t t^-1")) == "a t t^-1");
    CHECK(gs.format_word({}) == "1");
    CHECK(gs.invert_word(gs.parse_word("a t")) == gs.parse_word("t^-1 a"));
    CHECK_THROWS_AS(GeneratingSet({"a", "a"}, {0, 1}, {0, 0}), instance_error);
    CHECK_THROWS_AS(GeneratingSet({"a", "b"}, {1, 0}, {1, 1}), instance_error); // bad z-weights
}

TEST_CASE("finite table groups verify their axioms") {
    auto z4 = FiniteGroupTable({"1", "a", "a2", "a3"},
                               {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
    CHECK(z4.order() == 4);
    CHECK(z4.inv(1) == 3);
    CHECK(z4.element_order(1) == 4);
    CHECK(z4.element_order(2) == 2);
    // non-associative table rejected
    CHECK_THROWS_AS(FiniteGroupTable({"1", "x", "y"},
                                     {{0, 1, 2}, {1, 0, 0}, {2, 0, 1}}),
                    instance_error);
    auto s3 = FiniteGroupTable::symmetric(3);
    CHECK(s3.order() == 6);
    auto z8 = FiniteGroupTable::z2_power(3);
    CHECK(z8.order() == 8);
    for (int x = 0; x < 8; ++x) CHECK(z8.mul(x, x) == 0);
}

TEST_CASE("free group evaluation and reduction") {
    FreeGroup fr({"a", "t"});
    CHECK(fr.format(fr.evaluate("a t t^-1 a")) == "a a");
    CHECK(fr.multiply(fr.evaluate("a t"), fr.evaluate("t^-1 a")) == fr.evaluate("a a"));
    CHECK(fr.evaluate("") == fr.identity());
    CHECK(fr.inverse(fr.evaluate("a t")) == fr.evaluate("t^-1 a^-1"));
    CHECK(fr.z_projection(fr.evaluate("t a t")) == 2);
    CHECK_THROWS_AS(fr.evaluate(Word{99}), instance_error);

    SUBCASE("balls") {
        CHECK(fr.ball(0).vertices.size() == 1);
        CHECK(fr.ball(0).edges.empty());
        CHECK(fr.ball(2).vertices.size() == 17); // 1 + 4 + 12 reduced words
    }
    SUBCASE("mixed-group operands rejected") {
        FreeGroup other({"a", "t"});
        CHECK_THROWS_AS(fr.multiply(fr.identity(), other.identity()), instance_error);
    }
}

TEST_CASE("lamplighter limit matches the wreath oracle on all short words") {
    LamplighterLimitGroup lamp;
    const auto& gs = lamp.generators();
    CHECK(lamp.evaluate("") == lamp.identity());
    CHECK(std::get<LampCanon>(lamp.evaluate("t a t^-1").canon) == LampCanon{{1}, 0});
    CHECK(lamp.multiply(lamp.evaluate("a"), lamp.evaluate("a")) == lamp.identity());
    CHECK(lamp.z_projection(lamp.evaluate("t a t a t")) == 3);

    auto words = gs.words_up_to(4);
    words.push_back({});
    std::vector<Canon> mine;
    std::vector<oracles::Wreath> oracle;
    for (const auto& w : words) {
        mine.push_back(lamp.evaluate(w).canon);
        oracle.push_back(oracles::Wreath::eval(gs, w));
    }
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            CHECK((mine[i] == mine[j]) == (oracle[i] == oracle[j]));
}

TEST_CASE("permutation limit matches the table oracle on all short words") {
    PermutationLimitGroup perm;
    const auto& gs = perm.generators();
    CHECK(std::get<PermCanon>(perm.evaluate("t").canon).offset == 1);
    CHECK(perm.evaluate("t t^-1") == perm.identity());
    CHECK(perm.evaluate("s s") == perm.identity());

    auto words = gs.words_up_to(4);
    words.push_back({});
    std::vector<Canon> mine;
    std::vector<oracles::PermTable> oracle;
    for (const auto& w : words) {
        mine.push_back(perm.evaluate(w).canon);
        oracle.push_back(oracles::PermTable::eval(gs, w));
    }
    for (size_t i = 0; i < words.size(); ++i)
        for (size_t j = i + 1; j < words.size(); ++j)
            CHECK((mine[i] == mine[j]) == (oracle[i] == oracle[j]));
}

TEST_CASE("hnn normal forms: pinned examples") {
    auto g1 = marked_level(TowerFamily::Lamplighter, 1);
    const auto& pres = g1->presentation();
    GeneratingSet full = pres.word_alphabet();

    HnnNormalForm nf = hnn_normal_form(pres, full, full.parse_word("t^-1 a t"));
    CHECK(nf.syllables.empty());
    CHECK(pres.A().name(nf.head) == "b");
    CHECK(hnn_normal_form(pres, full, full.parse_word("t t^-1")) == HnnNormalForm{});
    CHECK(hnn_normal_form(pres, full, full.parse_word("a t b t^-1")) == HnnNormalForm{});
}

TEST_CASE("hnn normal forms agree with the pinch oracle on short words") {
    auto g1 = marked_level(TowerFamily::Lamplighter, 1);
    const auto& pres = g1->presentation();
    GeneratingSet full = pres.word_alphabet();
    auto words = full.words_up_to(4);
    words.push_back({});
    std::vector<HnnNormalForm> nfs;
    std::vector<oracles::Atoms> atoms;
    for (const auto& w : words) {
        nfs.push_back(hnn_normal_form(pres, full, w));
        atoms.push_back(oracles::atoms_of_word(pres, full, w));
    }
    // group words into canonical classes, then verify equality both ways by
    // the independent rewriting oracle
    std::map<HnnNormalForm, std::vector<size_t>> classes;
    for (size_t i = 0; i < words.size(); ++i) classes[nfs[i]].push_back(i);
    for (const auto& [rep, members] : classes)
        for (size_t i : members) CHECK(oracles::pinch_equal(pres, atoms[members[0]], atoms[i]));
    std::vector<size_t> reps;
    for (const auto& [rep, members] : classes) reps.push_back(members[0]);
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            CHECK(!oracles::pinch_equal(pres, atoms[reps[i]], atoms[reps[j]]));
}

TEST_CASE("hnn normal form uniqueness under re-evaluation") {
    auto g2 = marked_level(TowerFamily::Lamplighter, 2);
    const auto& pres = g2->presentation();
    GeneratingSet full = pres.word_alphabet();
    auto words = full.words_up_to(3);
    // deterministic sample of word pairs
    for (size_t i = 0; i < words.size(); i += 7)
        for (size_t j = 0; j < words.size(); j += 11) {
            Word uv = words[i];
            uv.insert(uv.end(), words[j].begin(), words[j].end());
            HnnNormalForm direct = hnn_normal_form(pres, full, uv);
            Word wu = hnn_word_of(pres, full, hnn_normal_form(pres, full, words[i]));
            Word wv = hnn_word_of(pres, full, hnn_normal_form(pres, full, words[j]));
            Word recombined = wu;
            recombined.insert(recombined.end(), wv.begin(), wv.end());
            CHECK(hnn_normal_form(pres, full, recombined) == direct);
        }
}

TEST_CASE("hnn normal form shape invariants") {
    auto g2 = marked_level(TowerFamily::Lamplighter, 2);
    const auto& pres = g2->presentation();
    GeneratingSet full = pres.word_alphabet();
    for (const auto& w : full.words_up_to(4)) {
        HnnNormalForm nf = hnn_normal_form(pres, full, w);
        for (size_t i = 0; i < nf.syllables.size(); ++i) {
            const auto& trans =
                nf.syllables[i].sign < 0 ? pres.trans_minus() : pres.trans_plus();
            CHECK(std::find(trans.begin(), trans.end(), nf.syllables[i].rep) != trans.end());
            if (i + 1 < nf.syllables.size())
                CHECK(!(nf.syllables[i].rep == 0 &&
                        nf.syllables[i + 1].sign == -nf.syllables[i].sign));
        }
    }
}

TEST_CASE("amalgam normal forms") {
    SUBCASE("Z/2 * Z/2") {
        FiniteGroupTable z2a({"1", "a"}, {{0, 1}, {1, 0}});
        FiniteGroupTable z2b({"1", "b"}, {{0, 1}, {1, 0}});
        FiniteGroupTable triv({"1"}, {{0}});
        AmalgamPresentation p(z2a, z2b, triv, {0}, {0});
        GeneratingSet ab = p.word_alphabet();
        AmalgamNormalForm nf = amalgam_normal_form(p, ab, ab.parse_word("a b a"));
        CHECK(nf.c == 0);
        REQUIRE(nf.syllables.size() == 3);
        CHECK(nf.syllables[0] == std::make_pair(0, 1));
        CHECK(nf.syllables[1] == std::make_pair(1, 1));
        CHECK(nf.syllables[2] == std::make_pair(0, 1));
        CHECK(amalgam_normal_form(p, ab, ab.parse_word("a a")) == AmalgamNormalForm{});
    }
    SUBCASE("Z/4 amalgamated over Z/2") {
        FiniteGroupTable z4a({"1", "a", "a2", "a3"},
                             {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
        FiniteGroupTable z4b({"1", "b", "b2", "b3"},
                             {{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
        FiniteGroupTable z2({"1", "c"}, {{0, 1}, {1, 0}});
        AmalgamPresentation p(z4a, z4b, z2, {0, 2}, {0, 2}); // c -> a^2, c -> b^2
        GeneratingSet ab = p.word_alphabet();
        AmalgamNormalForm nf = amalgam_normal_form(p, ab, ab.parse_word("a2 b"));
        CHECK(nf.c == 1); // the nontrivial element of C
        REQUIRE(nf.syllables.size() == 1);
        CHECK(nf.syllables[0].first == 1);              // B side
        CHECK(z4b.name(nf.syllables[0].second) == "b"); // least element of {b, b^3}
        // worked example: a b a^2 b = a
        AmalgamNormalForm e = amalgam_normal_form(p, ab, ab.parse_word("a b a2 b"));
        CHECK(e.c == 0);
        REQUIRE(e.syllables.size() == 1);
        CHECK(z4a.name(e.syllables[0].second) == "a");
        SUBCASE("appending g then g^-1 is the identity operation") {
            auto words = ab.words_up_to(2);
            for (const auto& w : words)
                for (int g = 0; g < ab.size(); ++g) {
                    Word wg = w;
                    wg.push_back(g);
                    wg.push_back(ab.inverse_of(g));
                    CHECK(amalgam_normal_form(p, ab, wg) == amalgam_normal_form(p, ab, w));
                }
        }
        SUBCASE("syllables alternate and avoid the subgroup") {
            for (const auto& w : ab.words_up_to(4)) {
                AmalgamNormalForm x = amalgam_normal_form(p, ab, w);
                for (size_t i = 0; i < x.syllables.size(); ++i) {
                    CHECK(x.syllables[i].second != 0);
                    CHECK(p.c_index(x.syllables[i].first, x.syllables[i].second) < 0);
                    if (i + 1 < x.syllables.size())
                        CHECK(x.syllables[i].first != x.syllables[i + 1].first);
                }
            }
        }
    }
}

TEST_CASE("balls: pinned counts, monotonicity, projection additivity") {
    LamplighterLimitGroup lamp;
    LabeledBall b1 = lamp.ball(1);
    CHECK(b1.vertices.size() == 4); // 1, a, t, t^-1
    LabeledBall b0 = lamp.ball(0);
    CHECK(b0.vertices.size() == 1);
    CHECK(b0.edges.empty());

    auto g1 = marked_level(TowerFamily::Lamplighter, 1);
    for (const MarkedGroup* g : {static_cast<const MarkedGroup*>(&lamp),
                                 static_cast<const MarkedGroup*>(g1.get())}) {
        LabeledBall small = g->ball(2), big = g->ball(3);
        for (const auto& v : small.vertices) CHECK(big.index_of(v).has_value());
        // edge endpoints consistent with multiplication
        for (const auto& [u, s, v] : small.edges)
            CHECK(g->apply_letter(small.vertices[u], s) == small.vertices[v]);
        // pi additivity on ball elements
        for (const auto& v : small.vertices)
            for (int s = 0; s < g->generators().size(); ++s)
                CHECK(g->z_projection(g->apply_letter(v, s)) ==
                      g->z_projection(v) + g->generators().z_weight(s));
    }

    SUBCASE("budget exhaustion reports the completed radius") {
        FreeGroup fr({"a", "t"});
        LabeledBall b = fr.ball(6, 10);
        CHECK(!b.complete);
        CHECK(b.completed_radius >= 0);
        CHECK(b.completed_radius < 6);
    }
    SUBCASE("dot export labels vertices by shortlex words") {
        std::string dot = b1.to_dot(lamp);
        CHECK(dot.find("label=\"a\"") != std::string::npos);
        CHECK(dot.find("label=\"t^-1\"") != std::string::npos);
    }
}

TEST_CASE("z projection requires a declared projection") {
    FiniteMarkedGroup g("z2", FiniteGroupTable::z2_power(1), {1});
    CHECK_THROWS_AS(g.z_projection(g.identity()), unsupported_capability);
    CHECK(g.multiply(g.evaluate("e0"), g.evaluate("e0")) == g.identity());
}

TEST_CASE("infinite order certification and power solving") {
    LamplighterLimitGroup lamp;
    CHECK(lamp.certified_infinite_order(lamp.evaluate("t")));
    CHECK(!lamp.certified_infinite_order(lamp.evaluate("a")));
    CHECK(!lamp.certified_infinite_order(lamp.evaluate("a t a t^-1")));
    CHECK(lamp.solve_power(lamp.evaluate("t t t"), lamp.evaluate("t")) == 3);
    CHECK(!lamp.solve_power(lamp.evaluate("a"), lamp.evaluate("t")));

    FreeGroup fr({"a", "t"});
    Element g = fr.evaluate("t a t^-1"); // conjugate: the cyclic core is a
    CHECK(fr.certified_infinite_order(g));
    Element h = fr.evaluate("t a a a t^-1");
    CHECK(fr.solve_power(h, g) == 3);
    CHECK(fr.solve_power(fr.inverse(h), g) == -3);
    CHECK(!fr.solve_power(fr.evaluate("a"), g));

    auto g2 = marked_level(TowerFamily::Lamplighter, 2);
    // a * a^{t^-2} collapses into A_2 at level 2 (two pinches), so it is torsion
    CHECK(!g2->certified_infinite_order(g2->evaluate("a t t a t^-1 t^-1")));
    // a * a^{t^-3} escapes A_2: an infinite-order element with zero projection
    Element u = g2->evaluate("a t t t a t^-1 t^-1 t^-1");
    CHECK(g2->z_projection(u) == 0);
    CHECK(g2->certified_infinite_order(u));
    Element u3 = g2->multiply(g2->multiply(u, u), u);
    CHECK(g2->solve_power(u3, u) == 3);
    Element tor = g2->evaluate("t a t^-1"); // conjugate of an involution
    CHECK(!g2->certified_infinite_order(tor));

    PermutationLimitGroup perm;
    CHECK(perm.certified_infinite_order(perm.evaluate("t")));
    CHECK(!perm.certified_infinite_order(perm.evaluate("s")));
    CHECK(perm.solve_power(perm.evaluate("t t"), perm.evaluate("t")) == 2);
}
