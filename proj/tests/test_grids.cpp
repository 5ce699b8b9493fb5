#include "doctest.h"
#include "gen.hpp"
#include "misr/grids.hpp"
#include "oracles.hpp"

using namespace misr;

namespace {

// Rectangles of the instance inside S(F), by half-integer sampling.
std::vector<Rect> region_rects(const Instance& inst, const FakeSet& f) {
    std::vector<Rect> out;
    for (const auto& r : inst.rects) {
        bool ok = true;
        for (const auto& q : f.rects) ok = ok && !oracle::open_rects_meet_sampled(r, q);
        if (ok) out.push_back(r);
    }
    return out;
}

// Independent accuracy check: brute force per strip.
bool brute_accurate(const Grid& g, const Instance& inst, const FakeSet& f, std::int64_t num, std::int64_t den) {
    auto rs = region_rects(inst, f);
    std::int64_t opt = oracle::brute_mis(rs);
    std::int64_t limit = (opt * den + num - 1) / num;
    for (const auto& q : f.rects)
        for (Coord x : {q.x1, q.x2})
            if (std::find(g.vlines.begin(), g.vlines.end(), x) == g.vlines.end()) return false;
    for (const auto& q : f.rects)
        for (Coord y : {q.y1, q.y2})
            if (std::find(g.hlines.begin(), g.hlines.end(), y) == g.hlines.end()) return false;
    for (int pass = 0; pass < 2; ++pass) {
        const auto& l = pass == 0 ? g.vlines : g.hlines;
        for (std::size_t k = 0; k + 1 < l.size(); ++k) {
            std::vector<Rect> strip;
            for (const auto& r : rs) {
                Coord a = pass == 0 ? r.x1 : r.y1, b = pass == 0 ? r.x2 : r.y2;
                if (l[k] <= a && b <= l[k + 1]) strip.push_back(r);
            }
            if (oracle::brute_mis(strip) > limit) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("rational and ceil_div") {
    auto r = Rational::of(6, 4);
    CHECK(r.num == 3);
    CHECK(r.den == 2);
    CHECK(r.str() == "3/2");
    CHECK(ceil_div(7, Rational::of(2)) == 4);
    CHECK(ceil_div(6, Rational::of(3, 2)) == 4);
    CHECK(ceil_div(0, Rational::of(5)) == 0);
    CHECK(Rational::of(1, 2) < Rational::of(2, 3));
}

TEST_CASE("boundary grid with rho 1 is accurate") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto inst = generate(GenKind::uniform_random, 8, seed);
        CHECK(is_rho_accurate(Grid::boundary(inst.box), inst, FakeSet{}, Rational::of(1)));
        auto g = build_rho_accurate_grid(inst, FakeSet{}, Rational::of(1));
        CHECK(is_rho_accurate(g, inst, FakeSet{}, Rational::of(1)));
    }
}

TEST_CASE("missing fake corner breaks alignment") {
    auto inst = generate(GenKind::uniform_random, 6, 3);
    FakeSet f;
    f.rects = {closed_rect(1, 1, 3, 3)};
    auto g = Grid::boundary(inst.box);
    OptOracle orc(inst);
    auto rep = check_rho_accurate(g, inst, f, Rational::of(1), orc);
    CHECK_FALSE(rep.aligned);
    g.vlines = {inst.box.x1, 1, 3, inst.box.x2};
    g.hlines = {inst.box.y1, 1, 3, inst.box.y2};
    CHECK(check_rho_accurate(g, inst, f, Rational::of(1), orc).aligned);
}

TEST_CASE("built grids pass the brute-force strip check") {
    Rng rng(5);
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        auto inst = generate(seed % 2 ? GenKind::uniform_random : GenKind::disjoint_grid, 10, seed);
        auto f = gen::random_fakes(rng, inst.box, static_cast<int>(seed % 3));
        int opt = exact_mis(subinstance(inst, f).inst).value();
        for (auto rho : {Rational::of(1), Rational::of(2), Rational::of(std::max(opt, 2), 2), Rational::of(std::max(opt, 1))}) {
            GridBuildStats st;
            auto g = build_rho_accurate_grid(inst, f, rho, {}, &st);
            CHECK(brute_accurate(g, inst, f, rho.num, rho.den));
            CHECK(is_rho_accurate(g, inst, f, rho));
            CHECK(st.z <= st.z_bound);
            // non-boundary lines sit on a rectangle or fake side
            for (Coord x : g.vlines) {
                bool touch = x == inst.box.x1 || x == inst.box.x2;
                for (const auto& r : inst.rects) touch = touch || r.x1 == x || r.x2 == x;
                for (const auto& q : f.rects) touch = touch || q.x1 == x || q.x2 == x;
                CHECK(touch);
            }
        }
    }
}

TEST_CASE("rho equal to the optimum leaves one rectangle per strip") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = generate(GenKind::uniform_random, 9, seed);
        int opt = exact_mis(inst).value();
        auto g = build_rho_accurate_grid(inst, FakeSet{}, Rational::of(opt));
        OptOracle orc(inst);
        auto rep = check_rho_accurate(g, inst, FakeSet{}, Rational::of(opt), orc);
        CHECK(rep.ok());
        CHECK(rep.worst_strip <= 1);
    }
}

TEST_CASE("accuracy is monotone in rho") {
    Rng rng(11);
    for (int t = 0; t < 50; ++t) {
        auto inst = generate(GenKind::uniform_random, 8, 300 + t);
        Grid g = Grid::boundary(inst.box);
        // random extra lines
        for (int k = 0; k < 3; ++k) {
            g.vlines.push_back(rng.uniform(inst.box.x1 + 1, inst.box.x2 - 1));
            g.hlines.push_back(rng.uniform(inst.box.y1 + 1, inst.box.y2 - 1));
        }
        g.vlines = sorted_unique(g.vlines);
        g.hlines = sorted_unique(g.hlines);
        auto rho = Rational::of(rng.uniform(1, 8), rng.uniform(1, 2));
        if (rho.num < rho.den) continue;
        auto lower = Rational::of(rng.uniform(rho.den, rho.num), rho.den);
        if (is_rho_accurate(g, inst, FakeSet{}, rho)) CHECK(is_rho_accurate(g, inst, FakeSet{}, lower));
    }
}

TEST_CASE("refined grids are aligned subsets and accurate") {
    Rng rng(23);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto inst = generate(GenKind::uniform_random, 10, 40 + seed);
        auto f = gen::random_fakes(rng, inst.box, 1);
        auto rho = Rational::of(4);
        auto g = build_rho_accurate_grid(inst, f, rho);
        for (auto rp : {Rational::of(4), Rational::of(2), Rational::of(3, 2)}) {
            Grid fresh = build_rho_accurate_grid(inst, f, rp);
            int fresh_size = 0;
            auto h = refine_aligned_grid(g, inst, f, rp, {}, &fresh_size);
            for (Coord x : h.vlines) CHECK(std::binary_search(g.vlines.begin(), g.vlines.end(), x));
            for (Coord y : h.hlines) CHECK(std::binary_search(g.hlines.begin(), g.hlines.end(), y));
            if (rp == rho) {
                CHECK(h.vlines.size() <= g.vlines.size());
            }
            CHECK(h.size() <= 2 * fresh_size);
            CHECK(is_rho_accurate(h, inst, f, rp));
            // every strip sits inside a fresh strip or a g strip
            for (std::size_t k = 0; k + 1 < h.vlines.size(); ++k)
                CHECK((fresh.vstrip_of(h.vlines[k], h.vlines[k + 1]) >= 0 || g.vstrip_of(h.vlines[k], h.vlines[k + 1]) >= 0));
        }
        CHECK_THROWS(refine_aligned_grid(g, inst, f, Rational::of(5)));
    }
}

TEST_CASE("grid accuracy carries over to big aligned sub-regions") {
    Rng rng(31);
    int checked = 0;
    for (int t = 0; t < 60; ++t) {
        auto inst = generate(GenKind::uniform_random, 10, 500 + t);
        auto rho = Rational::of(3);
        auto g = build_rho_accurate_grid(inst, FakeSet{}, rho);
        // F' = one grid-aligned fake rectangle
        if (g.vlines.size() < 3 && g.hlines.size() < 3) continue;
        std::size_t a = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.vlines.size()) - 2));
        std::size_t b = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.hlines.size()) - 2));
        FakeSet f2;
        f2.rects = {closed_rect(g.vlines[a], g.hlines[b], g.vlines[a + 1], g.hlines[b + 1])};
        int opt = exact_mis(inst).value(), opt2 = exact_mis(subinstance(inst, f2).inst).value();
        if (opt2 == 0) continue;
        // alpha = opt2 / opt, grid is (alpha rho)-accurate for F'
        auto arho = Rational::of(opt2 * rho.num, opt * rho.den);
        if (arho < Rational::of(1)) arho = Rational::of(1);
        CHECK(is_rho_accurate(g, inst, f2, arho));
        ++checked;
    }
    CHECK(checked > 10);
}

TEST_CASE("grid construction is deterministic") {
    auto inst = generate(GenKind::adversarial_strips, 12, 9);
    auto a = build_rho_accurate_grid(inst, FakeSet{}, Rational::of(3));
    auto b = build_rho_accurate_grid(inst, FakeSet{}, Rational::of(3));
    CHECK(a.vlines == b.vlines);
    CHECK(a.hlines == b.hlines);
}

TEST_CASE("serial and parallel strip checks agree") {
    auto inst = generate(GenKind::uniform_random, 14, 2);
    auto g = build_rho_accurate_grid(inst, FakeSet{}, Rational::of(2));
    OptOracle o1(inst), o2(inst);
    auto a = check_rho_accurate(g, inst, FakeSet{}, Rational::of(2), o1, false);
    auto b = check_rho_accurate(g, inst, FakeSet{}, Rational::of(2), o2, true);
    CHECK(a.ok() == b.ok());
    CHECK(a.worst_strip == b.worst_strip);
}
