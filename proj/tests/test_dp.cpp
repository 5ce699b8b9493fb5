#include <set>
#include "doctest.h"
#include "misr/dp.hpp"

using namespace misr;

namespace {

Instance small(std::uint64_t seed, int n) {
    return generate(seed % 3 == 0 ? GenKind::nested_stacks : GenKind::uniform_random, n, seed);
}

}  // namespace

TEST_CASE("dp with tau at least OPT is exact") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto inst = small(seed, 8);
        int opt = exact_mis(inst).value();
        DPConfig cfg;
        cfg.tau = opt;
        auto r = dp_solve(inst, cfg);
        CHECK(r.value() == opt);
        CHECK(r.stats.states == 1);
    }
}

TEST_CASE("dp at eps = 0.5 with L* = 3") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto inst = small(100 + seed, 8);
        int opt = exact_mis(inst).value();
        DPConfig cfg;
        auto r = dp_solve(inst, cfg);
        CHECK(is_independent(inst.rects, r.solution.indices));
        CHECK(r.value() <= opt);
        CHECK(2 * r.value() >= opt);
    }
}

TEST_CASE("dp value is monotone in the family and in tau") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto inst = small(200 + seed, 8);
        DPConfig a;
        a.l_star = 2;
        a.tau = 1;
        DPConfig b = a;
        b.l_star = 3;
        DPConfig c = b;
        c.tau = 2;
        int va = dp_solve(inst, a).value(), vb = dp_solve(inst, b).value(), vc = dp_solve(inst, c).value();
        CHECK(va <= vb);
        CHECK(vb <= vc);
        DPConfig none = c;
        none.cuts = false;
        CHECK(dp_solve(inst, none).value() <= vc);
    }
}

TEST_CASE("is_basic") {
    auto inst = small(7, 8);
    OptOracle orc(inst);
    DPConfig cfg;
    cfg.tau = 0;
    CHECK(is_basic(inst, FakeSet::whole(inst.box), cfg, orc));
    int opt = orc.value(FakeSet{});
    cfg.tau = opt - 1;
    CHECK_FALSE(is_basic(inst, FakeSet{}, cfg, orc));
    cfg.tau = opt;
    CHECK(is_basic(inst, FakeSet{}, cfg, orc));
    cfg.basic = BasicVariant::approx;
    cfg.tau = 1;
    if (is_basic(inst, FakeSet{}, cfg, orc)) CHECK(opt <= approx_factor(static_cast<int>(inst.rects.size())));
}

TEST_CASE("family enumeration") {
    auto inst = generate(GenKind::uniform_random, 1, 1);
    auto f0 = enumerate_family_section5(inst, 0, CoordMode::relevant);
    REQUIRE(f0.size() == 1);
    CHECK(f0[0].rects.empty());
    auto k = static_cast<std::int64_t>(family_coords(inst, CoordMode::relevant).size());
    auto f1 = enumerate_family_section5(inst, 1, CoordMode::relevant);
    std::int64_t pairs = k * (k - 1) / 2;
    CHECK(static_cast<std::int64_t>(f1.size()) == pairs * pairs + 1);
    auto f2 = enumerate_family_section5(inst, 2, CoordMode::relevant);
    std::set<std::string> seen;
    for (const auto& f : f2) {
        CHECK(is_valid_fake_set(f, inst.box));
        CHECK(seen.insert(encoding(f)).second);
    }
    CHECK_THROWS_AS(enumerate_family_section5(inst, 2, CoordMode::relevant, 10), DPFailure);
}

TEST_CASE("dp output dominates mu of a single-level tree") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        auto inst = small(300 + seed, 9);
        OptOracle orc(inst);
        Section5Config tc;
        tc.seed = seed;
        PartitionTree t;
        try {
            t = build_section5_tree(inst, tc, orc);
        } catch (const DecompositionFailure& e) {
            MESSAGE(std::string(e.what()));
            continue;
        }
        DPConfig cfg;
        cfg.l_star = tc.l_star;
        cfg.tau = tc.tau;
        cfg.seeds = seeds_from_tree(t);
        auto r = dp_solve(inst, cfg);
        CHECK(t.nodes[0].mu <= r.value());
        CHECK(is_independent(inst.rects, r.solution.indices));
        ++checked;
    }
    CHECK(checked >= 6);
}

TEST_CASE("induced keys share entries") {
    auto inst = small(11, 8);
    DPConfig a, b;
    b.key = StateKey::induced;
    auto ra = dp_solve(inst, a), rb = dp_solve(inst, b);
    CHECK(rb.stats.states <= ra.stats.states);
    CHECK(is_independent(inst.rects, rb.solution.indices));
}
