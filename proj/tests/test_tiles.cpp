#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "snakes/tower.hpp"

#include <set>

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

// all undirected tilesets with the given steps, m base colors and every
// domino subset, in a fixed order
std::vector<DirectedTileset> undirected_family(const std::vector<std::vector<std::string>>& steps,
                                               int m) {
    std::vector<DirectedTileset> out;
    const int k = static_cast<int>(steps.size());
    const int universe = m * k * m;
    for (uint32_t mask = 0; mask < (1u << universe); ++mask) {
        DirectedTileset ts;
        ts.directed = false;
        ts.steps = steps;
        for (int b = 0; b < m; ++b) {
            ts.base_colors.push_back("c" + std::to_string(b));
            ts.colors.push_back({b, -1});
        }
        for (int u = 0; u < universe; ++u)
            if (mask & (1u << u)) ts.dominoes.push_back({u / (k * m), (u / m) % k, u % m});
        out.push_back(std::move(ts));
    }
    return out;
}

} // namespace

TEST_CASE("validate_snake: weak/strong discriminator and single vertices") {
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    DirectedTileset disc;
    disc.directed = false;
    disc.steps = {{"a"}};
    disc.base_colors = {"c0", "c1"};
    disc.colors = {{0, -1}, {1, -1}};
    disc.dominoes = {{0, 0, 1}};

    FinitePathSnake path{{g0->identity(), g0->evaluate("a")}, {0, 1}, {}};
    CHECK(validate_snake(*g0, disc, path, {Strength::Weak, Directedness::Undirected, Shape::Path}));
    CHECK(!validate_snake(*g0, disc, path,
                          {Strength::Strong, Directedness::Undirected, Shape::Path}));

    SUBCASE("single vertex is valid in both strengths when steps leave the support") {
        FinitePathSnake v{{g0->identity()}, {0}, {}};
        CHECK(validate_snake(*g0, disc, v, {Strength::Weak, Directedness::Undirected, Shape::Path}));
        CHECK(
            validate_snake(*g0, disc, v, {Strength::Strong, Directedness::Undirected, Shape::Path}));
    }
    SUBCASE("structural errors are reported, not silently false") {
        FinitePathSnake bad{{g0->identity()}, {7}, {}};
        CHECK_THROWS_AS(validate_snake(*g0, disc, bad,
                                       {Strength::Weak, Directedness::Undirected, Shape::Path}),
                        instance_error);
        FinitePathSnake v{{g0->identity()}, {0}, {}};
        CHECK_THROWS_AS(
            validate_snake(*g0, disc, v, {Strength::Weak, Directedness::Directed, Shape::Path}),
            instance_error); // directed mode on an undirected tileset
    }
}

TEST_CASE("validate_snake: periodic translation snake in every mode") {
    LamplighterLimitGroup lamp;
    DirectedTileset tt = one_color({"t"});
    PeriodicSnake snake{1, {lamp.identity()}, lamp.evaluate("t"), {0}};
    CHECK(validate_snake(lamp, tt, snake, directed_strong(Shape::Infinite)));
    CHECK(validate_snake(lamp, tt, snake, {Strength::Weak, Directedness::Directed, Shape::Infinite}));

    SUBCASE("finite-order translations are rejected") {
        DirectedTileset ta = one_color({"a"});
        PeriodicSnake bad{1, {lamp.identity()}, lamp.evaluate("a"), {0}};
        CHECK(!validate_snake(lamp, ta, bad, directed_strong(Shape::Infinite)));
    }
    SUBCASE("missing cross-period adjacency domino is rejected") {
        FreeGroup fr({"a", "t"});
        DirectedTileset ta = one_color({"a"});
        PeriodicSnake ok{1, {fr.identity()}, fr.evaluate("a"), {0}};
        CHECK(validate_snake(fr, ta, ok, directed_strong(Shape::Infinite)));
        DirectedTileset noLoop = ta;
        noLoop.base_colors = {"c0", "c1"};
        noLoop.colors = {{0, 0}, {1, 0}};
        noLoop.dominoes = {{0, 0, 1}, {1, 0, 0}};
        // period 1 with color c0 misses the adjacency (c0, a, c0)
        PeriodicSnake bad{1, {fr.identity()}, fr.evaluate("a"), {0}};
        CHECK(!validate_snake(fr, noLoop, bad, directed_strong(Shape::Infinite)));
        PeriodicSnake alt{2, {fr.identity(), fr.evaluate("a")}, fr.evaluate("a a"), {0, 1}};
        CHECK(validate_snake(fr, noLoop, alt, directed_strong(Shape::Infinite)));
    }
}

TEST_CASE("periodic window checks stabilize once the window is large enough") {
    FreeGroup fr({"a", "t"});
    LamplighterLimitGroup lamp;
    DirectedTileset tt = one_color({"t"});
    DirectedTileset ta = one_color({"a"});
    PeriodicSnake st{1, {lamp.identity()}, lamp.evaluate("t"), {0}};
    PeriodicSnake sa{1, {fr.identity()}, fr.evaluate("a"), {0}};
    ValidityMode mode = directed_strong(Shape::Infinite);
    for (int w = 2; w <= 4; ++w) {
        CHECK(periodic_window_check(lamp, tt, st, mode, w) ==
              periodic_window_check(lamp, tt, st, mode, 2 * w));
        CHECK(periodic_window_check(fr, ta, sa, mode, w) ==
              periodic_window_check(fr, ta, sa, mode, 2 * w));
    }
    CHECK(periodic_window_check(lamp, tt, st, mode, 3) == validate_snake(lamp, tt, st, mode));
}

TEST_CASE("strong validity implies weak validity") {
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    for (const auto& ts : undirected_family({{"a"}, {"t"}}, 2)) {
        std::vector<FinitePathSnake> snakes;
        snakes.push_back({{g0->identity()}, {0}, {}});
        snakes.push_back({{g0->identity(), g0->evaluate("a")}, {0, 1}, {}});
        snakes.push_back({{g0->identity(), g0->evaluate("t")}, {1, 0}, {}});
        for (const auto& s : snakes)
            if (validate_snake(*g0, ts, s, {Strength::Strong, Directedness::Undirected, Shape::Path}))
                CHECK(validate_snake(*g0, ts, s,
                                     {Strength::Weak, Directedness::Undirected, Shape::Path}));
    }
}

TEST_CASE("to_directed_strong: construction counts") {
    SUBCASE("weak source: |C|=1, |S'|=2, |D|=1 gives 2 colors and 2+4 dominoes") {
        DirectedTileset wk;
        wk.directed = false;
        wk.steps = {{"t"}, {"a"}};
        wk.base_colors = {"c0"};
        wk.colors = {{0, -1}};
        wk.dominoes = {{0, 0, 0}};
        DirectedTileset red = to_directed_strong(wk, SourceVariant::Weak);
        CHECK(red.directed);
        CHECK(red.colors.size() == 2);
        CHECK(red.dominoes.size() == 6);
    }
    SUBCASE("strong source: dominoes only get direction annotations") {
        DirectedTileset st;
        st.directed = false;
        st.steps = {{"a"}};
        st.base_colors = {"c0"};
        st.colors = {{0, -1}};
        st.dominoes = {{0, 0, 0}};
        DirectedTileset red = to_directed_strong(st, SourceVariant::Strong);
        CHECK(red.colors.size() == 1);
        CHECK(red.dominoes.size() == 1);
    }
    SUBCASE("empty domino set stays snake-free after reduction") {
        auto g0 = marked_level(TowerFamily::Lamplighter, 0);
        DirectedTileset empty;
        empty.directed = false;
        empty.steps = {{"a"}, {"t"}};
        empty.base_colors = {"c0"};
        empty.colors = {{0, -1}};
        DirectedTileset red = to_directed_strong(empty, SourceVariant::Weak);
        Budget budget;
        Verdict v = path_snake_search(*g0, red, Strength::Strong, Directedness::Directed, 2, budget);
        CHECK(v.no());
    }
    SUBCASE("source shape errors") {
        DirectedTileset dir = one_color({"t"});
        CHECK_THROWS_AS(to_directed_strong(dir, SourceVariant::Weak), instance_error);
        DirectedTileset und;
        und.directed = false;
        und.steps = {{"t"}};
        und.base_colors = {"c0"};
        und.colors = {{0, -1}};
        CHECK_THROWS_AS(to_directed_strong(und, SourceVariant::DirectedWeak), instance_error);
    }
}

TEST_CASE("reduction preserves existence on a small exhaustive family") {
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    int checked = 0;
    std::vector<std::vector<DirectedTileset>> families{
        undirected_family({{"a"}, {"t"}}, 1), undirected_family({{"a"}}, 2)};
    for (const auto& family : families)
        for (const auto& ts : family) {
            for (SourceVariant sv : {SourceVariant::Weak, SourceVariant::Strong}) {
                ValidityMode srcMode{sv == SourceVariant::Weak ? Strength::Weak : Strength::Strong,
                                     Directedness::Undirected, Shape::Ouroboros};
                DirectedTileset red = to_directed_strong(ts, sv);
                bool src = oracles::naive_ouroboros_exists(*g0, ts, srcMode, 5);
                bool dst =
                    oracles::naive_ouroboros_exists(*g0, red, directed_strong(Shape::Ouroboros), 5);
                CHECK(src == dst);
                ValidityMode srcPath = srcMode;
                srcPath.shape = Shape::Path;
                bool srcP = oracles::naive_path_exists(*g0, ts, srcPath, 1, 4);
                bool dstP = oracles::naive_path_exists(*g0, red, directed_strong(Shape::Path), 1, 4);
                CHECK(srcP == dstP);
                ++checked;
            }
        }
    CHECK(checked == 2 * (4 + 16));
}

TEST_CASE("extend_generators") {
    GeneratingSet S({"a", "t", "t^-1"}, {0, 2, 1}, {0, 1, -1});
    GeneratingSet T({"a", "t", "t^-1", "u", "u^-1"}, {0, 2, 1, 4, 3}, {0, 1, -1, 0, 0});
    DirectedTileset base = one_color({"t"});

    SUBCASE("T = S leaves the tileset unchanged") {
        CHECK(extend_generators(base, S, S) == base);
    }
    SUBCASE("each new letter adds |C|^2 wildcard dominoes") {
        DirectedTileset ext = extend_generators(base, S, T);
        CHECK(ext.steps.size() == 3);    // t, then u and u^-1 as wildcard steps
        CHECK(ext.dominoes.size() == 3); // original + 1 wildcard per new letter
        CHECK(ext.colors == base.colors);
    }
    SUBCASE("witnesses validate verbatim over the larger alphabet") {
        FreeGroup small({"t"});
        FreeGroup big({"t", "u"});
        DirectedTileset ts = one_color({"t"});
        DirectedTileset ext = extend_generators(ts, small.generators(), big.generators());
        FinitePathSnake snake{{big.identity(), big.evaluate("t"), big.evaluate("t t")},
                              {0, 0, 0},
                              {}};
        CHECK(validate_snake(big, ext, snake, directed_strong(Shape::Path)));
    }
    SUBCASE("T must contain S") {
        GeneratingSet U({"x", "x^-1"}, {1, 0}, {0, 0});
        CHECK_THROWS_AS(extend_generators(base, S, U), instance_error);
    }
}

TEST_CASE("tileset enumeration") {
    TilesetEnumerator en({"a", "t", "t^-1"});

    SUBCASE("index 0 is the minimal tileset") {
        DirectedTileset t0 = en.decode(0);
        CHECK(t0.steps == std::vector<std::vector<std::string>>{{"a"}});
        CHECK(t0.base_colors.size() == 1);
        CHECK(t0.colors.size() == 1);
        CHECK(t0.dominoes.empty());
    }
    SUBCASE("injective on a long prefix") {
        std::set<std::string> seen;
        for (uint64_t i = 0; i < 10000; ++i) CHECK(seen.insert(en.decode(i).encode_string()).second);
    }
    SUBCASE("exact round-trips") {
        for (uint64_t i : {0ull, 3ull, 17ull, 555ull, 10001ull, 123456ull, 9999999ull})
            CHECK(en.encode(en.decode(i)) == i);
    }
    SUBCASE("encode rejects non-canonical forms") {
        DirectedTileset bad = en.decode(5);
        bad.base_colors = {"x"};
        CHECK_THROWS_AS(en.encode(bad), instance_error);
    }
}

TEST_CASE("tileset context flags identity steps") {
    auto g0 = marked_level(TowerFamily::Lamplighter, 0);
    DirectedTileset ts = one_color({"a", "a"}); // evaluates to 1
    TilesetContext ctx(*g0, ts);
    CHECK(ctx.has_identity_step);
    DirectedTileset ok = one_color({"a"});
    CHECK(!TilesetContext(*g0, ok).has_identity_step);
}
