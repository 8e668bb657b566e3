#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "snakes/tower.hpp"

using namespace snakes;

namespace {
DirectedTileset one_color(const std::vector<std::string>& stepWord, bool withDomino = true) {
    DirectedTileset ts;
    ts.directed = true;
    ts.steps = {stepWord};
    ts.base_colors = {"c0"};
    ts.colors = {{0, 0}};
    if (withDomino) ts.dominoes = {{0, 0, 0}};
    return ts;
}
} // namespace

TEST_CASE("build_level: pinned examples") {
    TowerLevel l1 = build_level(TowerFamily::Lamplighter, 1);
    CHECK(l1.A.order() == 4); // (Z/2)^2
    CHECK(l1.Aprev.order() == 2);
    REQUIRE(l1.alpha.size() == 2);
    CHECK(l1.alpha[1] == std::make_pair(1, 2)); // a -> b, the left copy onto the right copy

    TowerLevel l0 = build_level(TowerFamily::Lamplighter, 0);
    CHECK(l0.A.order() == 2);
    CHECK(l0.Aprev.order() == 1); // A_{-1} = 1

    TowerLevel p3 = build_level(TowerFamily::PermutationsOfZ, 3);
    CHECK(p3.A.order() == 6); // S_3
    CHECK(p3.Aprev.order() == 2);
    // alpha maps the copy fixing the last point onto the copy fixing the first
    auto s3 = FiniteGroupTable::symmetric(3);
    for (auto [minus, plus] : p3.alpha) {
        CHECK(s3.perm_of(minus)[2] == 2);
        CHECK(s3.perm_of(plus)[0] == 0);
    }
    CHECK_THROWS_AS(build_level(TowerFamily::Lamplighter, -1), instance_error);
}

TEST_CASE("tower nesting: the previous level embeds") {
    for (int n = 1; n <= 5; ++n) {
        TowerLevel lvl = build_level(TowerFamily::Lamplighter, n);
        CHECK(lvl.embeddingPrev.is_homomorphism());
        CHECK(lvl.embeddingPrev.is_injective());
        CHECK(lvl.Aprev.order() * 2 == lvl.A.order());
    }
    for (int n = 2; n <= 4; ++n) {
        TowerLevel lvl = build_level(TowerFamily::PermutationsOfZ, n);
        CHECK(lvl.embeddingPrev.is_homomorphism());
        CHECK(lvl.embeddingPrev.is_injective());
    }
}

TEST_CASE("generation witnesses evaluate to their generators") {
    for (int n = 0; n <= 5; ++n) {
        TowerLevel lvl = build_level(TowerFamily::Lamplighter, n);
        auto g = marked_level(TowerFamily::Lamplighter, n);
        for (const auto& [gen, word] : lvl.generator_witnesses) {
            Element e = g->evaluate(word);
            const auto& nf = std::get<HnnNormalForm>(e.canon);
            CHECK(nf.syllables.empty());
            CHECK(lvl.A.name(nf.head) == gen);
        }
        CHECK(lvl.generator_witnesses.size() == static_cast<size_t>(n + 1));
    }
    for (int n = 2; n <= 4; ++n) {
        TowerLevel lvl = build_level(TowerFamily::PermutationsOfZ, n);
        auto g = marked_level(TowerFamily::PermutationsOfZ, n);
        CHECK(lvl.generator_witnesses.size() == static_cast<size_t>(n - 1));
        for (const auto& [gen, word] : lvl.generator_witnesses) {
            Element e = g->evaluate(word);
            const auto& nf = std::get<HnnNormalForm>(e.canon);
            CHECK(nf.syllables.empty());
            CHECK(lvl.A.name(nf.head) == gen);
        }
    }
}

TEST_CASE("limit groups: pinned examples") {
    auto lamp = limit_group(TowerFamily::Lamplighter);
    CHECK(std::get<LampCanon>(lamp->evaluate("a t a t^-1").canon) == LampCanon{{0, 1}, 0});
    CHECK(lamp->evaluate("t t^-1") == lamp->identity());
    auto perm = limit_group(TowerFamily::PermutationsOfZ);
    CHECK(std::get<PermCanon>(perm->evaluate("t").canon) == PermCanon{1, {}});
}

TEST_CASE("convergence of levels to the limit") {
    auto lamp = limit_group(TowerFamily::Lamplighter);
    for (int n = 2; n <= 6; ++n) {
        auto gn = marked_level(TowerFamily::Lamplighter, n);
        CHECK(ball_agreement(*gn, *lamp, n / 2));
        auto gn1 = marked_level(TowerFamily::Lamplighter, n + 1);
        CHECK(ball_agreement(*gn, *gn1, n / 2));
    }
    auto perm = limit_group(TowerFamily::PermutationsOfZ);
    for (int n = 2; n <= 4; ++n) {
        auto gn = marked_level(TowerFamily::PermutationsOfZ, n);
        CHECK(ball_agreement(*gn, *perm, n / 2));
        auto gn1 = marked_level(TowerFamily::PermutationsOfZ, n + 1);
        CHECK(ball_agreement(*gn, *gn1, n / 2));
    }

    SUBCASE("a group agrees with itself at any radius") {
        auto g3 = marked_level(TowerFamily::Lamplighter, 3);
        CHECK(ball_agreement(*g3, *g3, 4));
    }
    SUBCASE("G0 disagrees with the limit at radius 4, with a witness") {
        auto g0 = marked_level(TowerFamily::Lamplighter, 0);
        CHECK(!ball_agreement(*g0, *lamp, 4));
        auto wit = ball_agreement_witness(*g0, *lamp, 4);
        REQUIRE(wit);
        Element u0 = g0->evaluate(wit->first), v0 = g0->evaluate(wit->second);
        Element ul = lamp->evaluate(wit->first), vl = lamp->evaluate(wit->second);
        CHECK((u0 == v0) != (ul == vl));
    }
    SUBCASE("mismatched generating sets are rejected") {
        FreeGroup fr({"a", "t"});
        CHECK_THROWS_AS(ball_agreement(fr, *lamp, 1), instance_error);
    }
}

TEST_CASE("fiber components") {
    SUBCASE("level 1, radius 1, fiber {0}: tiny closed components") {
        auto g1 = marked_level(TowerFamily::Lamplighter, 1);
        FiberComponentsReport rep = fiber_components(*g1, 1, 0, 0, 20000,
                                                     g1->presentation().A().order());
        CHECK(rep.closed);
        CHECK(rep.max_component_size <= 8); // hand bound for this instance
        REQUIRE(rep.bound);
        CHECK(static_cast<int64_t>(rep.max_component_size) <= *rep.bound);
        CHECK(rep.widened_diameter == 2);

        // components partition the explored set and edges stay inside
        std::set<Canon> seen;
        for (const auto& comp : rep.components)
            for (const auto& v : comp) CHECK(seen.insert(v.canon).second);
        LabeledBall gens = g1->ball(1);
        for (const auto& comp : rep.components) {
            std::set<Canon> inComp;
            for (const auto& v : comp) inComp.insert(v.canon);
            for (const auto& v : comp)
                for (size_t bi = 1; bi < gens.vertices.size(); ++bi) {
                    Element w = g1->multiply(v, gens.vertices[bi]);
                    if (g1->z_projection(w) == 0 && seen.count(w.canon))
                        CHECK(inComp.count(w.canon)); // no cross-component edges
                }
        }
    }
    SUBCASE("empty interval gives an empty report") {
        auto g1 = marked_level(TowerFamily::Lamplighter, 1);
        FiberComponentsReport rep = fiber_components(*g1, 1, 1, 0);
        CHECK(rep.components.empty());
        CHECK(rep.closed);
    }
    SUBCASE("free group: the identity component does not close") {
        FreeGroup fr({"a", "t"});
        FiberComponentsReport rep = fiber_components(fr, 1, 0, 0, 500);
        CHECK(!rep.closed);
        CHECK(rep.frontier > 0);
    }
    SUBCASE("group without a projection is rejected") {
        FiniteMarkedGroup g("z2", FiniteGroupTable::z2_power(1), {1});
        CHECK_THROWS_AS(fiber_components(g, 1, 0, 0), unsupported_capability);
    }
}

TEST_CASE("supervisor steps classify the pinned tilesets") {
    auto g1 = marked_level(TowerFamily::Lamplighter, 1);
    Budget budget;
    budget.max_path_length = 8;
    budget.max_period = 4;
    budget.max_nodes = 20000;
    TilesetEnumerator en(g1->generators().letter_names());

    SUBCASE("translation tileset: periodic with unbounded projection") {
        DirectedTileset tt = one_color({"t"});
        uint64_t idx = en.encode(tt);
        SupervisorState state;
        state.stage = 1;
        state.cursor = idx;
        SupervisorOutcome out = supervisor_step(state, *g1, en, budget);
        CHECK(out.certificate == "periodic-unbounded");
        CHECK(out.radius >= 2);
    }
    SUBCASE("no dominoes: negative certificate with radius 1") {
        DirectedTileset ts = one_color({"t"}, /*withDomino=*/false);
        uint64_t idx = en.encode(ts);
        SupervisorState state;
        state.stage = 1;
        state.cursor = idx;
        SupervisorOutcome out = supervisor_step(state, *g1, en, budget);
        CHECK(out.certificate == "no-snake");
        CHECK(out.radius == 1);
    }
    SUBCASE("involution loop: negative certificate with a small radius") {
        DirectedTileset ta = one_color({"a"});
        uint64_t idx = en.encode(ta);
        SupervisorState state;
        state.stage = 1;
        state.cursor = idx;
        SupervisorOutcome out = supervisor_step(state, *g1, en, budget);
        CHECK(out.certificate == "no-snake");
        CHECK(out.radius <= 4);
    }
}

TEST_CASE("supervise: deterministic replay and monotone radius") {
    Budget budget;
    budget.max_path_length = 6;
    budget.max_period = 3;
    budget.max_nodes = 5000;
    SupervisorState first = supervise(TowerFamily::Lamplighter, 2, 12, budget);
    SupervisorState second = supervise(TowerFamily::Lamplighter, 2, 12, budget);
    CHECK(first.log == second.log);
    CHECK(first.accumulated_radius == second.accumulated_radius);
    CHECK(first.log.size() >= 12);

    // the accumulated radius never decreases along the log
    int64_t acc = 0;
    for (const auto& line : first.log) {
        auto pos = line.rfind("radius=");
        REQUIRE(pos != std::string::npos);
        int64_t r = std::stoll(line.substr(pos + 7));
        acc = std::max(acc, r);
    }
    CHECK(acc == first.accumulated_radius);
}
