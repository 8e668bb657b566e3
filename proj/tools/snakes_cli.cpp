#include "snakes/instance.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>

using namespace snakes;

namespace {

// exit codes: 0 definite verdict, 2 Unknown, 1 error
enum ExitCode { kDefinite = 0, kError = 1, kUnknown = 2 };

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void print_header(const std::string& command, const InstanceFile* inst,
                  const MarkedGroup* g) {
    std::cout << "command = " << command << "\n";
    if (g) std::cout << "group = " << g->name() << "\n";
    if (inst && inst->has_tileset)
        std::cout << "tileset = " << inst->tileset.encode_string() << "\n";
}

int finish(const Timer& t, int code) {
    std::cout << "# time-ms = " << t.ms() << "\n";
    return code;
}

int verdict_code(Outcome o) { return o == Outcome::Unknown ? kUnknown : kDefinite; }

DirectedTileset reduced_for(const InstanceFile& inst) {
    if (inst.variant == "directed-strong") return inst.tileset;
    auto sv = source_variant_of(inst.variant);
    if (!sv) throw instance_error("variant not reducible: " + inst.variant);
    return to_directed_strong(inst.tileset, *sv);
}

int cmd_solve(const std::string& path, const std::string& variantOverride,
              const std::string& shapeOverride, int minVertices) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    if (!variantOverride.empty()) inst.variant = variantOverride;
    if (!shapeOverride.empty()) inst.shape = shapeOverride;
    if (!inst.has_tileset) throw instance_error("solve: instance has no [tileset]");
    auto g = build_group(inst);
    ValidityMode mode = mode_of(inst);
    print_header("solve variant=" + inst.variant + " shape=" + inst.shape, &inst, g.get());
    TilesetContext ctx(*g, inst.tileset);
    if (ctx.has_identity_step)
        std::cout << "flag = tileset-has-identity-step\n";

    Verdict v;
    if (mode.shape == Shape::Path) {
        v = path_snake_search(*g, inst.tileset, mode.strength, mode.directedness, minVertices,
                              inst.budget);
    } else if (mode.shape == Shape::Ouroboros) {
        v = ouroboros_search(*g, inst.tileset, mode.strength, mode.directedness, inst.budget);
    } else {
        DirectedTileset reduced = reduced_for(inst);
        if (!(reduced == inst.tileset))
            std::cout << "reduced = " << reduced.encode_string() << "\n";
        v = infinite_snake_decide(*g, reduced, inst.budget);
        std::cout << v.to_text(*g, reduced) << "\n";
        std::cout << "nodes-used = " << v.nodes_used << "\n";
        return finish(t, verdict_code(v.outcome));
    }
    std::cout << v.to_text(*g, inst.tileset) << "\n";
    std::cout << "nodes-used = " << v.nodes_used << "\n";
    return finish(t, verdict_code(v.outcome));
}

int cmd_classify(const std::string& path) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    if (!inst.has_tileset) throw instance_error("classify: instance has no [tileset]");
    auto g = build_group(inst);
    print_header("classify", &inst, g.get());
    DirectedTileset reduced = reduced_for(inst);
    if (!(reduced == inst.tileset)) std::cout << "reduced = " << reduced.encode_string() << "\n";
    CaseResult r = classify_z(*g, reduced, inst.budget);
    std::cout << "case = " << case_name(r.kind) << "\n";
    if (r.kind == CaseResult::Case2) std::cout << "width-bound = " << r.width_bound << "\n";
    if (!r.note.empty()) std::cout << "note = " << r.note << "\n";
    std::cout << "evidence:\n" << r.evidence.to_text(*g, reduced) << "\n";
    return finish(t, r.kind == CaseResult::Unknown ? kUnknown : kDefinite);
}

int cmd_reduce(const std::string& path) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    if (!inst.has_tileset) throw instance_error("reduce: instance has no [tileset]");
    print_header("reduce from=" + inst.variant, &inst, nullptr);
    DirectedTileset reduced = reduced_for(inst);
    std::cout << "reduced = " << reduced.encode_string() << "\n";
    InstanceFile outInst = inst;
    outInst.tileset = reduced;
    outInst.variant = "directed-strong";
    std::cout << "instance:\n" << serialize_instance(outInst);
    return finish(t, kDefinite);
}

int cmd_reach(const std::string& path, int64_t fromFiber, std::optional<int64_t> toFiber,
              std::optional<int64_t> outsideBall) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    if (!inst.has_tileset) throw instance_error("reach: instance has no [tileset]");
    auto g = build_group(inst);
    DirectedTileset reduced = reduced_for(inst);
    Region target;
    if (toFiber) {
        target.kind = Region::Fiber;
        target.value = *toFiber - fromFiber; // normalize the start to the identity
    } else if (outsideBall) {
        target.kind = Region::OutsideBall;
        target.value = *outsideBall;
    } else {
        throw instance_error("reach: need --to-fiber or --to-outside-ball");
    }
    print_header("reach from-fiber=" + std::to_string(fromFiber) + " to=" + target.describe(),
                 &inst, g.get());
    Verdict v = reach(*g, reduced, {g->identity()}, target, inst.budget);
    std::cout << v.to_text(*g, reduced) << "\n";
    std::cout << "nodes-used = " << v.nodes_used << "\n";
    return finish(t, verdict_code(v.outcome));
}

int cmd_tower_build(const std::string& familyName, int level) {
    Timer t;
    auto f = family_from_name(familyName);
    if (!f) throw instance_error("unknown family: " + familyName);
    TowerLevel lvl = build_level(*f, level);
    print_header("tower build family=" + familyName + " level=" + std::to_string(level), nullptr,
                 nullptr);
    std::cout << "A-order = " << lvl.A.order() << "\n";
    std::cout << "Aprev-order = " << lvl.Aprev.order() << "\n";
    std::cout << "trans-minus = " << lvl.presentation->trans_minus().size()
              << " trans-plus = " << lvl.presentation->trans_plus().size() << "\n";
    for (const auto& [gen, word] : lvl.generator_witnesses)
        std::cout << "witness " << gen << " = \"" << word << "\"\n";
    return finish(t, kDefinite);
}

int cmd_tower_verify(const std::string& familyName, int level, int radius) {
    Timer t;
    auto f = family_from_name(familyName);
    if (!f) throw instance_error("unknown family: " + familyName);
    print_header("tower verify family=" + familyName + " level=" + std::to_string(level) +
                     " radius=" + std::to_string(radius),
                 nullptr, nullptr);
    TowerLevel lvl = build_level(*f, level);
    auto g = marked_level(*f, level);
    auto lim = limit_group(*f);
    bool ok = true;

    for (const auto& [gen, word] : lvl.generator_witnesses) {
        Element got = g->evaluate(word);
        HnnNormalForm want;
        want.head = *lvl.A.find(gen);
        bool pass = std::get<HnnNormalForm>(got.canon) == want;
        std::cout << "generation " << gen << " = " << (pass ? "ok" : "FAIL") << "\n";
        ok = ok && pass;
    }
    bool agree = ball_agreement(*g, *lim, radius);
    std::cout << "ball-agreement radius=" << radius << " = " << (agree ? "true" : "false") << "\n";
    ok = ok && agree;
    FiberComponentsReport rep =
        fiber_components(*g, radius, 0, 0, 20000, lvl.A.order());
    std::cout << "fiber I=[0,0] closed=" << (rep.closed ? "true" : "false")
              << " max-component=" << rep.max_component_size << " bound=" << *rep.bound << "\n";
    if (rep.closed && rep.bound && static_cast<int64_t>(rep.max_component_size) > *rep.bound)
        ok = false;
    std::cout << "verify = " << (ok ? "pass" : "fail") << "\n";
    return finish(t, ok ? kDefinite : kError);
}

int cmd_tower_supervise(const std::string& familyName, int maxLevel, int64_t tilesets) {
    Timer t;
    auto f = family_from_name(familyName);
    if (!f) throw instance_error("unknown family: " + familyName);
    print_header("tower supervise family=" + familyName + " max-level=" + std::to_string(maxLevel) +
                     " tilesets=" + std::to_string(tilesets),
                 nullptr, nullptr);
    Budget budget;
    budget.max_path_length = 8;
    budget.max_period = 4;
    budget.max_nodes = 20000;
    SupervisorState state = supervise(*f, maxLevel, static_cast<uint64_t>(tilesets), budget);
    for (const auto& line : state.log) std::cout << line << "\n";
    std::cout << "accumulated-radius = " << state.accumulated_radius << "\n";
    std::cout << "watch-list = " << state.watch.size() << "\n";
    return finish(t, kDefinite);
}

int cmd_automaton_emptiness(const std::string& path) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    RabinAutomaton a = build_automaton(inst);
    print_header("automaton emptiness", &inst, nullptr);
    EmptinessResult r = emptiness(a);
    switch (r.outcome) {
        case EmptinessOutcome::Empty: std::cout << "emptiness = empty\n"; break;
        case EmptinessOutcome::NonEmpty: std::cout << "emptiness = non-empty\n"; break;
        case EmptinessOutcome::BudgetExceeded: std::cout << "emptiness = budget-exceeded\n"; break;
    }
    std::cout << "strategies-tried = " << r.strategies_tried << "\n";
    if (r.witness) std::cout << r.witness->to_text(*a.domain);
    return finish(t, r.outcome == EmptinessOutcome::BudgetExceeded ? kUnknown : kDefinite);
}

int cmd_automaton_combine(const std::string& path1, const std::string& path2,
                          const std::string& op) {
    Timer t;
    InstanceFile i1 = parse_instance(path1);
    InstanceFile i2 = parse_instance(path2);
    RabinAutomaton a1 = build_automaton(i1);
    RabinAutomaton a2 = build_automaton(i2);
    if (op != "intersection" && op != "union")
        throw instance_error("combine: op must be intersection or union");
    print_header("automaton combine op=" + op, nullptr, nullptr);
    RabinAutomaton c = combine(a1, a2, op == "intersection");
    std::cout << "states = " << c.num_states << "\n";
    std::cout << "productions = " << c.productions.size() << "\n";
    std::cout << "pairs = " << c.pairs.size() << "\n";
    EmptinessResult r = emptiness(c);
    std::cout << "emptiness = "
              << (r.outcome == EmptinessOutcome::Empty
                      ? "empty"
                      : r.outcome == EmptinessOutcome::NonEmpty ? "non-empty" : "budget-exceeded")
              << "\n";
    return finish(t, r.outcome == EmptinessOutcome::BudgetExceeded ? kUnknown : kDefinite);
}

int cmd_ball(const std::string& path, int radius, bool dot) {
    Timer t;
    InstanceFile inst = parse_instance(path);
    auto g = build_group(inst);
    print_header("ball radius=" + std::to_string(radius), &inst, g.get());
    LabeledBall b = g->ball(radius);
    std::cout << "vertices = " << b.vertices.size() << "\n";
    std::cout << "edges = " << b.edges.size() << "\n";
    std::cout << "complete = " << (b.complete ? "true" : "false") << "\n";
    if (dot) std::cout << b.to_dot(*g);
    return finish(t, kDefinite);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"snake tiling workbench"};
    app.require_subcommand(1);

    std::string instance, instance2, variant, shape, op = "intersection";
    std::string family = "lamplighter";
    int level = 1, radius = 1, minVertices = 2, maxLevel = 3;
    int64_t tilesets = 50, fromFiber = 0;
    std::optional<int64_t> toFiber, outsideBall;
    bool dot = false;

    auto* solve = app.add_subcommand("solve", "decide a snake problem variant");
    solve->add_option("--instance", instance)->required();
    solve->add_option("--variant", variant);
    solve->add_option("--shape", shape);
    solve->add_option("--min-vertices", minVertices);

    auto* classify = app.add_subcommand("classify", "classify the Z-projection behaviour");
    classify->add_option("--instance", instance)->required();

    auto* reduce = app.add_subcommand("reduce", "reduce to the directed strong problem");
    reduce->add_option("--instance", instance)->required();

    auto* reachCmd = app.add_subcommand("reach", "fiber-to-fiber reachability");
    reachCmd->add_option("--instance", instance)->required();
    reachCmd->add_option("--from-fiber", fromFiber);
    reachCmd->add_option("--to-fiber", [&toFiber](const std::vector<std::string>& v) {
        toFiber = std::stoll(v[0]);
        return true;
    }, "target fiber");
    reachCmd->add_option("--to-outside-ball", [&outsideBall](const std::vector<std::string>& v) {
        outsideBall = std::stoll(v[0]);
        return true;
    }, "target outside ball");

    auto* tower = app.add_subcommand("tower", "tower levels and supervisor");
    tower->require_subcommand(1);
    auto* tbuild = tower->add_subcommand("build", "build a tower level");
    tbuild->add_option("--family", family);
    tbuild->add_option("--level", level);
    auto* tverify = tower->add_subcommand("verify", "verify level invariants");
    tverify->add_option("--family", family);
    tverify->add_option("--level", level);
    tverify->add_option("--radius", radius);
    auto* tsup = tower->add_subcommand("supervise", "run the supervisor smoke harness");
    tsup->add_option("--family", family);
    tsup->add_option("--max-level", maxLevel);
    tsup->add_option("--tilesets", tilesets);

    auto* aut = app.add_subcommand("automaton", "Rabin automaton operations");
    aut->require_subcommand(1);
    auto* aempt = aut->add_subcommand("emptiness", "decide emptiness");
    aempt->add_option("--instance", instance)->required();
    auto* acomb = aut->add_subcommand("combine", "intersection/union product");
    acomb->add_option("--instance", instance)->required();
    acomb->add_option("--instance2", instance2)->required();
    acomb->add_option("--op", op);

    auto* ball = app.add_subcommand("ball", "enumerate a Cayley ball");
    ball->add_option("--instance", instance)->required();
    ball->add_option("--radius", radius);
    ball->add_flag("--dot", dot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return cmd_solve(instance, variant, shape, minVertices);
        if (classify->parsed()) return cmd_classify(instance);
        if (reduce->parsed()) return cmd_reduce(instance);
        if (reachCmd->parsed()) return cmd_reach(instance, fromFiber, toFiber, outsideBall);
        if (tower->parsed()) {
            if (tbuild->parsed()) return cmd_tower_build(family, level);
            if (tverify->parsed()) return cmd_tower_verify(family, level, radius);
            if (tsup->parsed()) return cmd_tower_supervise(family, maxLevel, tilesets);
        }
        if (aut->parsed()) {
            if (aempt->parsed()) return cmd_automaton_emptiness(instance);
            if (acomb->parsed()) return cmd_automaton_combine(instance, instance2, op);
        }
        if (ball->parsed()) return cmd_ball(instance, radius, dot);
    } catch (const std::exception& e) {
        std::cerr << "error = " << e.what() << "\n";
        return kError;
    }
    std::cerr << "error = no subcommand\n";
    return kError;
}
