#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace misr::suites {

namespace {

const GenKind kKinds[] = {GenKind::uniform_random, GenKind::nested_stacks, GenKind::adversarial_strips,
                          GenKind::disjoint_grid};

Instance instance_for(const SuiteConfig& cfg, const std::string& tag, int t, int n) {
    auto s = derive_seed(cfg.seed, tag, t);
    return generate(kKinds[t % 4], n, s);
}

SuiteResult named(const char* n) {
    SuiteResult r;
    r.name = n;
    return r;
}

void fail(SuiteResult& r, const std::string& what) {
    ++r.failures;
    if (r.notes.size() < 5) r.notes.push_back(what);
}

FakeSet random_fakes(Rng& rng, const Rect& box, int k) {
    FakeSet f;
    for (int t = 0; t < 4 * k && f.size() < k; ++t) {
        Coord w = rng.uniform(1, 3), h = rng.uniform(1, 3);
        Coord x = rng.uniform(box.x1, box.x2 - w), y = rng.uniform(box.y1, box.y2 - h);
        Rect q = closed_rect(x, y, x + w, y + h);
        if (std::none_of(f.rects.begin(), f.rects.end(), [&](const Rect& p) { return interiors_overlap(p, q); }))
            f.rects.push_back(q);
    }
    f.provenance = "random";
    return normalized(f);
}

bool raw_meet(const RawRect& a, const RawRect& b) {
    return a.x1 < b.x2 && b.x1 < a.x2 && a.y1 < b.y2 && b.y1 < a.y2;
}

SuiteResult oracle(const SuiteConfig& cfg) {
    SuiteResult r = named("oracle");
    int n = std::min(cfg.n, 16);
    double worst = 1;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-oracle", t, n);
        auto ex = exact_mis(inst);
        int naive = naive_mis_value(inst.rects);
        if (ex.value() != naive || !is_independent(inst.rects, ex.indices))
            fail(r, "trial " + std::to_string(t) + ": exact " + std::to_string(ex.value()) + " naive " +
                        std::to_string(naive));
        auto ap = approx_divide(inst);
        if (!is_independent(inst.rects, ap.indices) || ap.value() * approx_factor(inst.n()) < ex.value())
            fail(r, "trial " + std::to_string(t) + ": approx_divide below its factor");
        if (ex.value() > 0) worst = std::min(worst, double(ap.value()) / ex.value());
    }
    r.measured["approx_worst_ratio"] = worst;
    return r;
}

SuiteResult canon(const SuiteConfig& cfg) {
    SuiteResult r = named("canon");
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        Rng rng(derive_seed(cfg.seed, "verify-canon", t));
        std::vector<RawRect> raw;
        // half-unit lattice with few values, so ties are common
        for (int i = 0; i < cfg.n; ++i) {
            double x = rng.uniform(0, 8) * 0.5, y = rng.uniform(0, 8) * 0.5;
            raw.push_back({x, y, x + rng.uniform(1, 6) * 0.5, y + rng.uniform(1, 6) * 0.5});
        }
        auto [inst, lift] = canonicalize(raw);
        auto adj = adjacency_matrix(inst.rects);
        bool same = inst.n() == cfg.n;
        for (int i = 0; i < cfg.n && same; ++i)
            for (int j = 0; j < cfg.n && same; ++j)
                if (i != j && bool(adj[i * cfg.n + j]) != raw_meet(raw[i], raw[j])) same = false;
        if (!same) fail(r, "trial " + std::to_string(t) + ": adjacency changed");
        if (!is_canonical(inst)) fail(r, "trial " + std::to_string(t) + ": output not canonical");
    }
    return r;
}

SuiteResult tiling(const SuiteConfig& cfg) {
    SuiteResult r = named("tiling");
    int max_inner = 0, max_outer = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        Rng rng(derive_seed(cfg.seed, "verify-tiling", t));
        auto p = random_rectilinear_polygon(rng, 20);
        int l = p.size();
        Coord lo = 1 << 30, hi = -(1 << 30);
        for (auto c : p.corners) {
            lo = std::min({lo, c.x, c.y});
            hi = std::max({hi, c.x, c.y});
        }
        Rect box = closed_rect(lo - 1, lo - 1, hi + 1, hi + 1);
        auto in = tile_polygon(p);
        auto out = tile_complement(p, box);
        max_inner = std::max(max_inner, static_cast<int>(in.size()) - (l - 3));
        max_outer = std::max(max_outer, static_cast<int>(out.size()) - (l + 2));
        if (static_cast<int>(in.size()) > l - 3 || static_cast<int>(out.size()) > l + 2)
            fail(r, "trial " + std::to_string(t) + ": tile count above bound");
        auto z = AlignmentPointSet::from_points(p.corners);
        z.add_rect(box);
        z.normalize();
        for (const auto& q : in)
            if (!is_aligned(q, z)) fail(r, "trial " + std::to_string(t) + ": unaligned tile");
        std::vector<Rect> all = in;
        all.insert(all.end(), out.begin(), out.end());
        if (!tiles_box(all, box)) fail(r, "trial " + std::to_string(t) + ": tiles do not cover the box exactly");
        Coord a = 0;
        for (const auto& q : in) a += q.area();
        if (2 * a != std::abs(signed_area2(p))) fail(r, "trial " + std::to_string(t) + ": inner area mismatch");
    }
    r.measured["max_inner_minus_bound"] = max_inner;
    r.measured["max_outer_minus_bound"] = max_outer;
    return r;
}

SuiteResult kernel(const SuiteConfig& cfg) {
    SuiteResult r = named("kernel");
    int n = std::min(cfg.n, 14), kept = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-kernel", t, n);
        auto [k, lift] = kernelize(inst);
        int w = exact_mis(inst).value();
        auto sol = exact_mis(k);
        for (int q = 0; q < k.n(); ++q)
            for (int s : lift.sources[q]) {
                const auto& a = inst.rects[s];
                if (!k.rects[q].contains(open_rect(2 * a.x1, 2 * a.y1, 2 * a.x2, 2 * a.y2)))
                    fail(r, "trial " + std::to_string(t) + ": kernel rect does not contain its source");
            }
        auto lifted = lift.lift(sol.indices);
        if (!is_independent(inst.rects, lifted) || static_cast<int>(lifted.size()) != sol.value())
            fail(r, "trial " + std::to_string(t) + ": lift infeasible");
        if (sol.value() * 6561 < w) fail(r, "trial " + std::to_string(t) + ": kernel optimum too small");
        double b = 5.0 * w + 2;
        if (k.n() > b * b * b * b) fail(r, "trial " + std::to_string(t) + ": too many distinct rectangles");
        kept += sol.value() == w;
    }
    r.measured["kernel_opt_equal"] = kept;
    return r;
}

SuiteResult partition(const SuiteConfig& cfg) {
    SuiteResult r = named("partition");
    PartitionConfig pc;
    pc.strict = cfg.strict;
    int max_cells = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-partition", t, std::min(cfg.n, 16));
        Rng rng(derive_seed(cfg.seed, "verify-partition-fakes", t));
        auto f = random_fakes(rng, inst.box, t % 3);
        OptOracle orc(inst);
        auto opt = orc.solve(f);
        int rr = 4 << (t % 3);
        try {
            auto p = build_r_good_partition(inst, f, opt, rr, derive_seed(cfg.seed, "verify-partition-build", t), pc);
            auto rep = check_r_good(p, inst, f, opt, rr, pc.c_star);
            if (!rep.ok()) fail(r, "trial " + std::to_string(t) + ": " + rep.detail);
            max_cells = std::max(max_cells, p.size());
        } catch (const PartitionFailure& e) {
            fail(r, "trial " + std::to_string(t) + ": " + e.what());
        } catch (const std::invalid_argument& e) {
            ++r.skipped;  // strict preconditions
        }
    }
    r.measured["max_cells"] = max_cells;
    return r;
}

SuiteResult separator(const SuiteConfig& cfg) {
    SuiteResult r = named("separator");
    int biggest = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-separator", t, std::min(cfg.n, 16));
        OptOracle orc(inst);
        auto opt = orc.solve(FakeSet{});
        if (opt.value() < 2) continue;
        auto p = build_r_good_partition(inst, FakeSet{}, opt, 4, derive_seed(cfg.seed, "verify-separator-build", t));
        auto g = build_dual(p);
        g.weight = upper_left_weights(p, inst, opt);
        biggest = std::max(biggest, g.n());
        try {
            auto c = cycle_separator(g);
            if (!is_feasible_separator(g, c)) fail(r, "trial " + std::to_string(t) + ": infeasible cycle returned");
        } catch (const SeparatorFailure& e) {
            // a failure is only wrong when some candidate cycle is feasible
            bool any = false;
            for (const auto& cyc : candidate_cycles(g)) any = any || is_feasible_separator(g, classify_cycle(g, cyc));
            if (any) fail(r, "trial " + std::to_string(t) + ": missed a feasible cycle");
            else ++r.skipped;
        }
    }
    r.measured["largest_dual"] = biggest;
    return r;
}

SuiteResult split(const SuiteConfig& cfg) {
    SuiteResult r = named("split");
    SplitConfig sc;
    sc.strict = cfg.strict;
    int l_star = 8;
    double worst_loss = 0;
    int shrink = 0, pairs = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-split", t, std::min(cfg.n, 14));
        Rng rng(derive_seed(cfg.seed, "verify-split-fakes", t));
        auto f = random_fakes(rng, inst.box, 1 + t % 3);
        OptOracle orc(inst);
        int opt = orc.value(f);
        if (opt < 2) continue;
        auto seed = derive_seed(cfg.seed, "verify-split-build", t);
        std::string id = "trial " + std::to_string(t) + ": ";
        try {
            auto d = decompose_triple(inst, f, l_star, seed, orc, sc);
            if (!is_decomposition_triple(f, d.f1, d.f2, d.f3, inst.box)) fail(r, id + "triple predicate");
            for (const auto* k : {&d.f1, &d.f2, &d.f3})
                if (k->size() > l_star) fail(r, id + "triple child above L*");
            double loss = double(opt - d.opt1 - d.opt2 - d.opt3) / opt;
            worst_loss = std::max(worst_loss, loss);
            if (loss > sc.c3 / l_star) fail(r, id + "triple loss above c3/L*");
            if (d.balance_applies && 4 * std::max({d.opt1, d.opt2, d.opt3}) > 3 * opt) fail(r, id + "3/4 balance");

            auto g = build_rho_accurate_grid(inst, f, Rational::of(2));
            auto z = g.points();
            auto dg = decompose_triple_grid(inst, f, l_star, g, seed, orc, sc);
            if (!is_decomposition_triple(f, dg.f1, dg.f2, dg.f3, inst.box)) fail(r, id + "grid triple predicate");
            for (const auto* k : {&dg.f1, &dg.f2, &dg.f3})
                if (!is_aligned(*k, z)) fail(r, id + "grid triple not aligned");
            auto pr = decompose_pair_grid(inst, f, g, seed, orc, sc);
            if (!is_decomposition_pair(f, pr.f1, pr.f2, inst.box)) fail(r, id + "pair predicate");
            if (!is_aligned(pr.f1, z) || !is_aligned(pr.f2, z)) fail(r, id + "pair not aligned");
            ++pairs;
            shrink += 4 * std::max(pr.f1.size(), pr.f2.size()) <= 3 * f.size() + 3;
        } catch (const DecompositionFailure& e) {
            ++r.skipped;
        }
    }
    r.measured["worst_triple_loss"] = worst_loss;
    r.measured["pairs_within_3L_over_4"] = shrink;
    r.measured["pairs"] = pairs;
    return r;
}

SuiteResult grid(const SuiteConfig& cfg) {
    SuiteResult r = named("grid");
    int largest = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-grid", t, std::min(cfg.n, 12));
        Rng rng(derive_seed(cfg.seed, "verify-grid-fakes", t));
        auto f = random_fakes(rng, inst.box, t % 3);
        OptOracle orc(inst);
        int opt = std::max(1, orc.value(f));
        // rho' = rho/2 keeps the refined grid inside g's lines; both stay >= 1
        auto clamp = [](std::int64_t a, std::int64_t b) { return Rational::of(std::max(a, b), b); };
        for (auto rho : {Rational::of(1), Rational::of(2), clamp(opt, 2), Rational::of(opt)}) {
            auto g = build_rho_accurate_grid(inst, f, rho);
            largest = std::max(largest, g.size());
            auto rep = check_rho_accurate(g, inst, f, rho, orc, false);
            if (!rep.ok()) fail(r, "trial " + std::to_string(t) + " rho " + rho.str() + ": " + rep.detail);
            auto fine = clamp(rho.num, rho.den * 2);
            auto h = refine_aligned_grid(g, inst, f, fine);
            bool subset = std::includes(g.vlines.begin(), g.vlines.end(), h.vlines.begin(), h.vlines.end()) &&
                          std::includes(g.hlines.begin(), g.hlines.end(), h.hlines.begin(), h.hlines.end());
            if (!subset || !check_rho_accurate(h, inst, f, fine, orc, false).ok())
                fail(r, "trial " + std::to_string(t) + " rho " + fine.str() + ": refined grid");
        }
    }
    r.measured["largest_grid"] = largest;
    return r;
}

SuiteResult tree(const SuiteConfig& cfg) {
    SuiteResult r = named("tree");
    std::int64_t worst = 0;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-tree", t, std::min(cfg.n, 12));
        OptOracle orc(inst);
        std::string id = "trial " + std::to_string(t) + ": ";
        Section5Config sc;
        sc.seed = derive_seed(cfg.seed, "verify-tree-s5", t);
        sc.split.strict = cfg.strict;
        try {
            auto tr = build_section5_tree(inst, sc, orc);
            auto rep = verify_tree(tr, inst, [&](const FakeSet&, int o) { return o <= sc.tau; }, 0.5, orc);
            if (!rep.ok()) fail(r, id + "section5 " + (rep.failures.empty() ? "" : rep.failures[0]));
            worst = std::max(worst, rep.loss);
        } catch (const DecompositionFailure&) {
            ++r.skipped;
        }
        Rng rng(derive_seed(cfg.seed, "verify-tree-fakes", t));
        auto f = random_fakes(rng, inst.box, 5);
        if (f.size() < 3 || orc.value(f) < 2) continue;
        auto g = build_rho_accurate_grid(inst, f, Rational::of(2));
        CleanupConfig cc;
        cc.seed = derive_seed(cfg.seed, "verify-tree-cleanup", t);
        CleanupStats st;
        int l2 = 2;
        try {
            auto tr = build_cleanup_tree(inst, f, g, f.size(), l2, cc, orc, &st);
            for (int v : tr.leaves()) {
                const auto& nd = tr.nodes[v];
                if (nd.label.size() > l2 && region_area(nd.label, inst.box) != 0) fail(r, id + "cleanup leaf clause");
            }
            if (static_cast<double>(st.loss) > st.loss_bound) fail(r, id + "cleanup loss bound");
        } catch (const DecompositionFailure&) {
            ++r.skipped;
        }
    }
    r.measured["worst_section5_loss"] = worst;
    return r;
}

SuiteResult dp(const SuiteConfig& cfg) {
    SuiteResult r = named("dp");
    int n = std::min(cfg.n, 8);
    double worst = 1;
    for (int t = 0; t < cfg.trials; ++t, ++r.trials) {
        auto inst = instance_for(cfg, "verify-dp", t, n);
        int opt = exact_mis(inst).value();
        std::string id = "trial " + std::to_string(t) + ": ";
        DPConfig big;
        big.tau = opt;
        auto a = dp_solve(inst, big);
        if (a.value() != opt) fail(r, id + "tau >= OPT not exact");
        DPConfig small;
        auto b = dp_solve(inst, small);
        if (!is_independent(inst.rects, b.solution.indices)) fail(r, id + "dp solution infeasible");
        if (2 * b.value() < opt) fail(r, id + "dp below OPT/2");
        if (opt > 0) worst = std::min(worst, double(b.value()) / opt);
    }
    r.measured["worst_ratio"] = worst;
    return r;
}

const std::map<std::string, std::function<SuiteResult(const SuiteConfig&)>>& table() {
    static const std::map<std::string, std::function<SuiteResult(const SuiteConfig&)>> t = {
        {"oracle", oracle}, {"canon", canon},         {"tiling", tiling}, {"kernel", kernel},
        {"partition", partition}, {"separator", separator}, {"split", split}, {"grid", grid},
        {"tree", tree},     {"dp", dp}};
    return t;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"oracle", "canon", "tiling", "kernel", "partition", "separator", "split", "grid", "tree", "dp"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
    auto it = table().find(name);
    if (it == table().end()) throw std::invalid_argument("unknown suite: " + name);
    return it->second(cfg);
}

}  // namespace misr::suites
