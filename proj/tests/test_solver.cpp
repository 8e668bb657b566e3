#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "snakes/tower.hpp"

#include <random>

using namespace snakes;

namespace {

DirectedTileset one_color(const std::vector<std::string>& stepWord) {
    DirectedTileset ts;
    ts.directed = true;
    ts.steps = {stepWord};
    ts.base_colors = {"c0"};
    ts.colors = {{0, 0}};
    ts.dominoes = {{0, 0, 0}};
    return ts;
}

std::vector<DirectedTileset> directed_family(const std::vector<std::vector<std::string>>& steps,
                                             int maxDominoes) {
    // single base color, every directed color attached, domino subsets up to
    // the given size
    std::vector<DirectedTileset> out;
    const int k = static_cast<int>(steps.size());
    const int universe = k * k * k;
    for (uint32_t mask = 0; mask < (1u << universe); ++mask) {
        if (__builtin_popcount(mask) > maxDominoes) continue;
        DirectedTileset ts;
        ts.directed = true;
        ts.steps = steps;
        ts.base_colors = {"c0"};
        for (int s = 0; s < k; ++s) ts.colors.push_back({0, s});
        for (int u = 0; u < universe; ++u)
            if (mask & (1u << u)) ts.dominoes.push_back({u / (k * k), (u / k) % k, u % k});
        out.push_back(std::move(ts));
    }
    return out;
}

} // namespace

TEST_CASE("reach: pinned examples with re-validated witnesses") {
    LamplighterLimitGroup lamp;
    Budget budget;
    DirectedTileset tt = one_color({"t"});
    DirectedTileset ta = one_color({"a"});

    SUBCASE("coinciding endpoints give the zero-length snake") {
        Verdict v = reach(lamp, tt, {lamp.identity()}, {Region::Elements, 0, {lamp.identity()}},
                          budget);
        REQUIRE(v.yes());
        CHECK(v.path_witness->vertices.size() == 1);
        CHECK(validate_snake(lamp, tt, *v.path_witness, directed_strong(Shape::Path)));
    }
    SUBCASE("translation tileset reaches fiber 3") {
        Verdict v = reach(lamp, tt, {lamp.identity()}, {Region::Fiber, 3, {}}, budget);
        REQUIRE(v.yes());
        CHECK(v.path_witness->vertices.size() == 4);
        CHECK(lamp.z_projection(v.path_witness->vertices.back()) == 3);
        CHECK(validate_snake(lamp, tt, *v.path_witness, directed_strong(Shape::Path)));
    }
    SUBCASE("the involution loop cannot leave fiber 0") {
        Verdict v = reach(lamp, ta, {lamp.identity()}, {Region::Fiber, 1, {}}, budget);
        CHECK(v.no());
        CHECK(v.certificate == CertificateKind::ClosedConfigurations);
        CHECK(v.bound == 2); // configurations {1, a} with one color
    }
    SUBCASE("outside-ball targets") {
        Verdict v = reach(lamp, tt, {lamp.identity()}, {Region::OutsideBall, 2, {}}, budget);
        REQUIRE(v.yes());
        CHECK(v.path_witness->vertices.size() == 4);
    }
}

TEST_CASE("ouroboros search") {
    Budget budget;
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    DirectedTileset taU;
    taU.directed = false;
    taU.steps = {{"a"}};
    taU.base_colors = {"c0"};
    taU.colors = {{0, -1}};
    taU.dominoes = {{0, 0, 0}};

    SUBCASE("the involution gives a two-vertex cycle on G0") {
        Verdict v = ouroboros_search(*g0, taU, Strength::Strong, Directedness::Undirected, budget);
        REQUIRE(v.yes());
        CHECK(v.ouroboros_witness->vertices.size() == 2);
        CHECK(validate_snake(*g0, taU, *v.ouroboros_witness,
                             {Strength::Strong, Directedness::Undirected, Shape::Ouroboros}));
    }
    SUBCASE("the free group has no cycles") {
        FreeGroup fr({"a", "t"});
        Verdict v = ouroboros_search(fr, taU, Strength::Strong, Directedness::Undirected, budget);
        CHECK(v.no());
        CHECK(v.certificate == CertificateKind::ExhaustedLength);
        // cross-check at the certified bound by the naive oracle
        CHECK(!oracles::naive_ouroboros_exists(
            fr, taU, {Strength::Strong, Directedness::Undirected, Shape::Ouroboros},
            static_cast<int>(v.bound)));
    }
    SUBCASE("no dominoes, bound 1") {
        DirectedTileset empty = taU;
        empty.dominoes.clear();
        Verdict v = ouroboros_search(*g0, empty, Strength::Strong, Directedness::Undirected, budget);
        CHECK(v.no());
        CHECK(v.bound == 1);
    }
}

TEST_CASE("periodic snake search") {
    Budget budget;
    LamplighterLimitGroup lamp;
    FreeGroup fr({"a", "t"});

    SUBCASE("translation snake, period 1") {
        Verdict v = periodic_snake_search(lamp, one_color({"t"}), budget);
        REQUIRE(v.yes());
        CHECK(v.periodic_witness->period == 1);
        CHECK(lamp.z_projection(v.periodic_witness->translation) == 1);
    }
    SUBCASE("projection-free periodic snake on the free group") {
        Verdict v = periodic_snake_search(fr, one_color({"a"}), budget);
        REQUIRE(v.yes());
        CHECK(v.periodic_witness->period == 1);
        CHECK(fr.z_projection(v.periodic_witness->translation) == 0);
        CHECK(validate_snake(fr, one_color({"a"}), *v.periodic_witness,
                             directed_strong(Shape::Infinite)));
    }
    SUBCASE("no candidates means Unknown, never No") {
        DirectedTileset empty = one_color({"t"});
        empty.dominoes.clear();
        Verdict v = periodic_snake_search(lamp, empty, budget);
        CHECK(v.outcome == Outcome::Unknown);
    }
    SUBCASE("the nonzero-projection filter skips projection-free witnesses") {
        Verdict v = periodic_snake_search(fr, one_color({"a"}), budget, true);
        CHECK(v.outcome == Outcome::Unknown);
    }
}

TEST_CASE("infinite snake dual semi-decision") {
    Budget budget;
    LamplighterLimitGroup lamp;
    FreeGroup fr({"a", "t"});

    SUBCASE("involution loop dies at three vertices on the lamplighter") {
        Verdict v = infinite_snake_decide(lamp, one_color({"a"}), budget);
        CHECK(v.no());
        CHECK(v.bound == 3);
        CHECK(oracles::naive_segment_count(lamp, one_color({"a"}), 3) == 0);
        CHECK(oracles::naive_segment_count(lamp, one_color({"a"}), 2) > 0);
    }
    SUBCASE("translation snake lives forever") {
        Verdict v = infinite_snake_decide(lamp, one_color({"t"}), budget);
        CHECK(v.yes());
    }
    SUBCASE("the free group keeps the involution loop alive") {
        Verdict v = infinite_snake_decide(fr, one_color({"a"}), budget);
        CHECK(v.yes());
    }
    SUBCASE("segment counts match the naive oracle on a family") {
        for (const auto& ts : directed_family({{"a"}, {"t"}}, 2))
            for (int n = 2; n <= 4; ++n) {
                auto mine = count_segments(lamp, ts, n, 100000);
                REQUIRE(mine);
                CHECK(*mine == oracles::naive_segment_count(lamp, ts, n));
            }
    }
}

TEST_CASE("classifier: hand instances and consistency") {
    Budget budget;
    LamplighterLimitGroup lamp;
    FreeGroup fr({"a", "t"});

    CaseResult c1 = classify_z(lamp, one_color({"t"}), budget);
    CHECK(c1.kind == CaseResult::Case1);
    CHECK(c1.evidence.periodic_witness);
    CHECK(lamp.z_projection(c1.evidence.periodic_witness->translation) != 0);

    CaseResult c2 = classify_z(fr, one_color({"a"}), budget);
    CHECK(c2.kind == CaseResult::Case2);
    CHECK(c2.width_bound == 0);

    CaseResult c3 = classify_z(lamp, one_color({"a"}), budget);
    CHECK(c3.kind == CaseResult::Case3);

    SUBCASE("labels are stable under budget growth") {
        Budget big = budget;
        big.max_path_length = 16;
        big.max_period = 8;
        big.max_nodes = 500000;
        CHECK(classify_z(lamp, one_color({"t"}), big).kind == CaseResult::Case1);
        CaseResult c2big = classify_z(fr, one_color({"a"}), big);
        CHECK(c2big.kind == CaseResult::Case2);
        CHECK(c2big.width_bound == c2.width_bound);
        CHECK(classify_z(lamp, one_color({"a"}), big).kind == CaseResult::Case3);
    }
    SUBCASE("groups without a projection are rejected") {
        FiniteMarkedGroup g("z2", FiniteGroupTable::z2_power(1), {1});
        CHECK_THROWS_AS(classify_z(g, one_color({"e0"}), budget), unsupported_capability);
    }
}

TEST_CASE("no_snake_radius certificates re-verify") {
    Budget budget;
    LamplighterLimitGroup lamp;
    Verdict v = no_snake_radius(lamp, one_color({"a"}), budget);
    CHECK(v.no());
    CHECK(v.certificate == CertificateKind::ExhaustedRadius);
    CHECK(v.bound >= 1);
    // the oracle finds no segment longer than the snake tree depth
    CHECK(oracles::naive_segment_count(lamp, one_color({"a"}), 3) == 0);
    Verdict unknown = no_snake_radius(lamp, one_color({"t"}), budget);
    CHECK(unknown.outcome == Outcome::Unknown); // the translation snake never dies
}

TEST_CASE("lift: pinned examples and endpoint projections") {
    FreeGroup fr({"a", "t"});
    LamplighterLimitGroup lamp;
    DirectedTileset tt = one_color({"t"});

    SUBCASE("translation path lifts verbatim") {
        FinitePathSnake snake{{lamp.identity(), lamp.evaluate("t"), lamp.evaluate("t t")},
                              {0, 0, 0},
                              {}};
        FinitePathSnake lifted = lift_snake(fr, lamp, tt, snake);
        CHECK(lifted.vertices.size() == 3);
        CHECK(fr.format(lifted.vertices[2]) == "t t");
    }
    SUBCASE("paths with lamp letters lift injectively") {
        DirectedTileset mix;
        mix.directed = true;
        mix.steps = {{"a"}, {"t"}};
        mix.base_colors = {"c0"};
        mix.colors = {{0, 0}, {0, 1}};
        mix.dominoes = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}, {1, 1, 1}, {1, 1, 0}, {0, 1, 1}};
        FinitePathSnake snake{{lamp.identity(), lamp.evaluate("a"), lamp.evaluate("a t")},
                              {0, 1, 0},
                              {}};
        REQUIRE(validate_snake(lamp, mix, snake, directed_strong(Shape::Path)));
        FinitePathSnake lifted = lift_snake(fr, lamp, mix, snake);
        CHECK(validate_snake(fr, mix, lifted, directed_strong(Shape::Path)));
    }
    SUBCASE("invalid snakes in the quotient are rejected") {
        FinitePathSnake bogus{{lamp.identity(), lamp.evaluate("a")}, {0, 0}, {}};
        CHECK_THROWS_AS(lift_snake(fr, lamp, tt, bogus), instance_error);
    }
    SUBCASE("undeclared quotient pairs are rejected") {
        FreeGroup other({"x"});
        FinitePathSnake snake{{lamp.identity()}, {0}, {}};
        CHECK_THROWS_AS(lift_snake(other, lamp, tt, snake), instance_error);
    }
    SUBCASE("randomized snakes lift with identical endpoint projections") {
        std::mt19937_64 rng(20240817);
        int lifts = 0;
        for (int trial = 0; trial < 40; ++trial) {
            // random walk in the lamplighter, then a tileset that validates it
            int len = 2 + static_cast<int>(rng() % 5);
            std::vector<Element> verts{lamp.identity()};
            std::vector<int> colors;
            std::vector<int> stepTaken;
            DirectedTileset ts;
            ts.directed = true;
            ts.steps = {{"a"}, {"t"}, {"t^-1"}};
            ts.base_colors = {"c0"};
            ts.colors = {{0, 0}, {0, 1}, {0, 2}};
            bool ok = true;
            for (int i = 0; i < len; ++i) {
                int s = static_cast<int>(rng() % 3);
                Element next = lamp.multiply(verts.back(), lamp.evaluate(ts.steps[s][0]));
                bool repeat = false;
                for (const auto& v : verts) repeat = repeat || v == next;
                if (repeat) {
                    ok = false;
                    break;
                }
                colors.push_back(s);
                stepTaken.push_back(s);
                verts.push_back(next);
            }
            if (!ok) continue;
            colors.push_back(0); // last color; its direction is unused
            // dominoes: every adjacency observed on the walk
            std::set<std::array<int, 3>> doms;
            TilesetContext ctx(lamp, ts);
            for (size_t i = 0; i < verts.size(); ++i)
                for (size_t s = 0; s < ctx.step_eval.size(); ++s) {
                    Element w = lamp.multiply(verts[i], ctx.step_eval[s]);
                    for (size_t j = 0; j < verts.size(); ++j)
                        if (w == verts[j])
                            doms.insert({colors[i], static_cast<int>(s), colors[j]});
                }
            for (const auto& d : doms) ts.dominoes.push_back({d[0], d[1], d[2]});
            FinitePathSnake snake{verts, colors, {}};
            REQUIRE(validate_snake(lamp, ts, snake, directed_strong(Shape::Path)));
            FinitePathSnake lifted = lift_snake(fr, lamp, ts, snake);
            CHECK(fr.z_projection(lifted.vertices.back()) ==
                  lamp.z_projection(snake.vertices.back()));
            ++lifts;
        }
        CHECK(lifts >= 20);
    }
}

TEST_CASE("quotient monotonicity: reach lifts along free -> lamplighter") {
    FreeGroup fr({"a", "t"});
    LamplighterLimitGroup lamp;
    Budget budget;
    for (const auto& ts : directed_family({{"a"}, {"t"}}, 2)) {
        Verdict inH = reach(lamp, ts, {lamp.identity()}, {Region::Fiber, 1, {}}, budget);
        if (!inH.yes()) continue;
        Verdict inG = reach(fr, ts, {fr.identity()}, {Region::Fiber, 1, {}}, budget);
        CHECK(inG.yes());
    }
}

TEST_CASE("solver budgets yield Unknown instead of wrong answers") {
    LamplighterLimitGroup lamp;
    Budget tiny;
    tiny.max_nodes = 1;
    Verdict v = infinite_snake_decide(lamp, one_color({"t"}), tiny);
    CHECK(v.outcome == Outcome::Unknown);
    CHECK_THROWS_AS([&] {
        Budget bad;
        bad.max_nodes = 0;
        bad.validate();
    }(), instance_error);
}

TEST_CASE("path search existence agrees with the naive oracle on a family") {
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    Budget budget;
    budget.max_path_length = 4;
    for (const auto& ts : directed_family({{"a"}, {"t"}}, 2)) {
        Verdict mine = path_snake_search(*g0, ts, Strength::Strong, Directedness::Directed, 2, budget);
        bool oracle = oracles::naive_path_exists(*g0, ts, directed_strong(Shape::Path), 2, 4);
        if (mine.yes()) CHECK(oracle);
        if (mine.no()) CHECK(!oracle);
        CHECK(mine.outcome != Outcome::Unknown);
    }
}
