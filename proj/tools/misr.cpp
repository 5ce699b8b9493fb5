// misr: command-line front end for the MISR library.
//
// Exit codes: 0 ok, 1 failed verification (or a construction that could not
// meet its guarantees), 2 bad flags or I/O.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "suites.hpp"

using namespace misr;

namespace {

struct Global {
    bool strict = false;
    std::uint64_t seed = 1;
    std::string out = "-";
};

// Instance source shared by most subcommands: a file, or a generated one.
struct Source {
    std::string in;
    std::string kind = "uniform-random";
    int n = 10;
    std::string fakes;

    void add(CLI::App* c) {
        c->add_option("--in", in, "instance JSON file");
        c->add_option("--kind", kind, "generator when --in is absent")
            ->check(CLI::IsMember({"uniform-random", "disjoint-grid", "nested-stacks", "adversarial-strips"}));
        c->add_option("--n", n, "generated instance size")->check(CLI::Range(0, 100000));
    }
    void add_fakes(CLI::App* c) { c->add_option("--fakes", fakes, "fake set JSON (list of closed rects)"); }

    Instance load(std::uint64_t seed) const {
        if (!in.empty()) return instance_from_json(read_json(in));
        return generate(parse_gen_kind(kind), n, seed);
    }
    FakeSet load_fakes(const Instance& inst) const {
        if (fakes.empty()) return FakeSet{};
        auto f = fakes_from_json(read_json(fakes));
        if (!is_valid_fake_set(f, inst.box)) throw IoError(fakes + ": not a valid fake set for the instance box");
        return f;
    }
};

// "3", "3/2", "opt", "opt/2"
Rational parse_rho(const std::string& s, int opt) {
    auto slash = s.find('/');
    std::string a = s.substr(0, slash), b = slash == std::string::npos ? "1" : s.substr(slash + 1);
    std::int64_t num = a == "opt" ? std::max(opt, 1) : std::stoll(a);
    std::int64_t den = std::stoll(b);
    if (num <= 0 || den <= 0) throw std::invalid_argument("rho must be positive: " + s);
    return Rational::of(num, den);
}

std::uint64_t env_seed() {
    const char* e = std::getenv("MISR_SEED");
    if (!e || !*e) return 1;
    char* end = nullptr;
    auto v = std::strtoull(e, &end, 10);
    if (*end) throw std::invalid_argument(std::string("MISR_SEED is not an integer: ") + e);
    return v;
}

json report_json(const TreeReport& r) {
    return {{"ok", r.ok()},           {"decompositions", r.decompositions}, {"opts_match", r.opts_match},
            {"lambda_nonneg", r.lambda_nonneg}, {"loss_consistent", r.loss_consistent},
            {"antichains", r.antichains}, {"leaves_basic", r.leaves_basic}, {"mu_sums", r.mu_sums},
            {"final_bound", r.final_bound}, {"loss", r.loss},            {"failures", r.failures}};
}

// DP parameters: test mode uses L* = 3 and tau = ceil(1/eps); strict mode the
// full-scale L* = 2 c3 log(OPT)/eps and tau = 64 L*^2 with OPT estimated by approx_divide.
DPConfig dp_config(const Instance& inst, double eps, int lstar, int tau, bool strict) {
    DPConfig c;
    c.epsilon = eps;
    if (strict) {
        Parameters p;
        p.epsilon = eps;
        double est = std::max(2, approx_divide(inst).value() * approx_factor(inst.n()));
        c.l_star = static_cast<int>(std::ceil(p.section5_l_star(est)));
        c.tau = static_cast<int>(std::min(p.section5_tau(est), 1e9));
    } else {
        c.l_star = 3;
        c.tau = static_cast<int>(std::ceil(1.0 / eps));
    }
    if (lstar > 0) c.l_star = lstar;
    if (tau >= 0) c.tau = tau;
    return c;
}

std::string stats_csv(const DPStats& s) {
    std::ostringstream o;
    o << "states,basic_states,pair_candidates,triple_candidates,seeded_used,rejected_family\n"
      << s.states << ',' << s.basic_states << ',' << s.pair_candidates << ',' << s.triple_candidates << ','
      << s.seeded_used << ',' << s.rejected_family << '\n';
    return o.str();
}

std::string fmt_ratio(double v) {
    std::ostringstream o;
    o.setf(std::ios::fixed);
    o.precision(4);
    o << v;
    return o.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maximum independent set of rectangles: solvers, constructions and checks"};
    app.require_subcommand(1);
    Global g;
    try {
        g.seed = env_seed();
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    app.add_flag("--strict", g.strict, "full-scale constants and preconditions");
    app.add_option("--seed", g.seed, "base seed (default: $MISR_SEED or 1)");
    app.add_option("-o,--out", g.out, "output file, - for stdout");
    // subcommand flags may also be given after the subcommand name
    auto common = [&](CLI::App* c) {
        c->fallthrough();
        return c;
    };

    Source src;
    auto* gen = common(app.add_subcommand("gen", "generate an instance"));
    src.add(gen);

    std::string solver = "exact";
    auto* solve = common(app.add_subcommand("solve", "solve an instance"));
    src.add(solve);
    solve->add_option("--solver", solver)->check(CLI::IsMember({"exact", "approx", "wrapped"}));

    std::string lift_out;
    auto* canon = common(app.add_subcommand("canon", "canonicalize an instance"));
    src.add(canon);
    canon->add_option("--lift", lift_out, "write the index map here");

    auto* kernel = common(app.add_subcommand("kernel", "kernelize an instance"));
    src.add(kernel);

    int r = 4;
    bool aligned = false;
    std::string rho_s = "2";
    auto* part = common(app.add_subcommand("partition", "build an r-good partition"));
    src.add(part);
    src.add_fakes(part);
    part->add_option("--r", r)->check(CLI::PositiveNumber);
    part->add_flag("--aligned", aligned, "grid-aligned variant (grid from --rho)");
    part->add_option("--rho", rho_s, "grid accuracy: int, a/b, opt or opt/k");

    std::string mode = "balanced";
    auto* split = common(app.add_subcommand("split", "split a sub-instance along a cycle separator"));
    src.add(split);
    src.add_fakes(split);
    split->add_option("--r", r)->check(CLI::PositiveNumber);
    split->add_option("--mode", mode)->check(CLI::IsMember({"balanced", "boundary"}));

    std::string refine_s;
    auto* grid = common(app.add_subcommand("grid", "build a rho-accurate grid"));
    src.add(grid);
    src.add_fakes(grid);
    grid->add_option("--rho", rho_s, "int, a/b, opt or opt/k");
    grid->add_option("--refine", refine_s, "also refine to this accuracy");
    bool serial = false;
    grid->add_flag("--serial", serial, "check strips without OpenMP");

    std::string tree_kind = "section5";
    int lstar = -1, tau = -1, l1 = -1, l2 = -1;
    double drop = 2, eps = 0.5;
    auto* tree = common(app.add_subcommand("tree", "build and verify a partitioning tree"));
    src.add(tree);
    src.add_fakes(tree);
    tree->add_option("type", tree_kind, "section5, cleanup or phase")->check(CLI::IsMember({"section5", "cleanup", "phase"}));
    tree->add_option("--lstar", lstar);
    tree->add_option("--tau", tau);
    tree->add_option("--l1", l1);
    tree->add_option("--l2", l2);
    tree->add_option("--drop", drop);
    tree->add_option("--rho", rho_s);
    tree->add_option("--epsilon", eps)->check(CLI::Range(1e-6, 1.0));

    std::string coord = "relevant", csv_out;
    std::int64_t max_states = 200000;
    bool seeded = false;
    auto* dp = common(app.add_subcommand("dp", "dynamic program over fake sets"));
    src.add(dp);
    dp->add_option("--epsilon", eps)->check(CLI::Range(1e-6, 1.0));
    dp->add_option("--lstar", lstar);
    dp->add_option("--tau", tau);
    dp->add_option("--coord-mode", coord)->check(CLI::IsMember({"relevant", "full"}));
    dp->add_option("--max-states", max_states)->check(CLI::PositiveNumber);
    dp->add_option("--csv", csv_out, "state-count CSV file (default: stderr)");
    dp->add_flag("--seed-tree", seeded, "add the decompositions of a single-level (section5) tree as candidates");

    std::string suite = "all";
    int trials = 20;
    bool timing = false;
    auto* verify = common(app.add_subcommand("verify", "run invariant suites"));
    verify->add_option("--suite", suite);
    verify->add_option("--n", src.n)->check(CLI::Range(1, 64));
    verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify->add_flag("--timing", timing, "include wall time in the report");

    std::string bench_solver = "dp";
    auto* bench = common(app.add_subcommand("bench", "ratio CSV against the exact optimum"));
    bench->add_option("--solver", bench_solver)->check(CLI::IsMember({"dp", "approx", "exact"}));
    bench->add_option("--epsilon", eps)->check(CLI::Range(1e-6, 1.0));
    bench->add_option("--n", src.n)->check(CLI::Range(1, 40));
    bench->add_option("--trials", trials)->check(CLI::PositiveNumber);
    bench->add_option("--kind", src.kind)
        ->check(CLI::IsMember({"uniform-random", "disjoint-grid", "nested-stacks", "adversarial-strips", "mixed"}));
    bool no_timing = false;
    bench->add_flag("--no-timing", no_timing, "write 0 in wall_ms so output is reproducible");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) {
            write_json(g.out, instance_json(src.load(g.seed)));
        } else if (*solve) {
            auto inst = src.load(g.seed);
            IndependentSet s = solver == "exact"    ? exact_mis(inst)
                               : solver == "approx" ? approx_divide(inst)
                                                    : approx_wrapped(inst);
            write_json(g.out, solution_json(s));
        } else if (*canon) {
            if (src.in.empty()) throw IoError("canon needs --in");
            auto raw = raw_from_json(read_json(src.in));
            for (const auto& q : raw)
                if (!(q.x1 < q.x2 && q.y1 < q.y2)) throw IoError("zero-area rectangle in " + src.in);
            auto [inst, lift] = canonicalize(raw);
            write_json(g.out, instance_json(inst));
            if (!lift_out.empty()) write_json(lift_out, json{{"sources", lift.sources}});
        } else if (*kernel) {
            auto inst = src.load(g.seed);
            KernelStats st;
            auto [k, lift] = kernelize(inst, &st);
            json j = instance_json(k);
            j["sources"] = lift.sources;
            j["stats"] = {{"interval_mis_x", st.interval_mis_x}, {"interval_mis_y", st.interval_mis_y},
                          {"vlines", st.vlines}, {"hlines", st.hlines}, {"distinct", st.distinct}};
            write_json(g.out, j);
        } else if (*part || *split) {
            auto inst = src.load(g.seed);
            auto f = src.load_fakes(inst);
            OptOracle orc(inst);
            auto opt = orc.solve(f);
            PartitionConfig pc;
            pc.strict = g.strict;
            auto ps = derive_seed(g.seed, "partition", 0);
            if (*part) {
                CellPartition p;
                json extra;
                int c_star = pc.c_star;
                if (aligned) {
                    auto gr = build_rho_accurate_grid(inst, f, parse_rho(rho_s, opt.value()));
                    AlignedStats st;
                    p = build_grid_aligned_r_good(inst, f, opt, r, gr, ps, pc, &st);
                    extra = {{"grid", grid_json(gr)}, {"bound", st.bound}};
                    c_star = static_cast<int>(st.bound / r);
                } else {
                    p = build_r_good_partition(inst, f, opt, r, ps, pc);
                }
                auto rep = check_r_good(p, inst, f, opt, r, c_star);
                json j = partition_json(p);
                j["check"] = {{"ok", rep.ok()}, {"tiles", rep.tiles}, {"np_bound", rep.np_bound},
                              {"fakes_are_cells", rep.fakes_are_cells}, {"count_bound", rep.count_bound},
                              {"detail", rep.detail}};
                if (!extra.is_null()) j["aligned"] = extra;
                write_json(g.out, j);
                if (!rep.ok()) return 1;
            } else {
                auto p = build_r_good_partition(inst, f, opt, r, ps, pc);
                SplitConfig sc;
                sc.strict = g.strict;
                auto s = mode == "balanced" ? split_balanced(inst, f, opt, p, orc, sc)
                                            : split_reduce_boundary(inst, f, opt, p, orc, sc);
                json j = split_json(s);
                j["partition"] = partition_json(p);
                j["valid_pair"] = is_decomposition_pair(f, s.f1, s.f2, inst.box);
                write_json(g.out, j);
            }
        } else if (*grid) {
            auto inst = src.load(g.seed);
            auto f = src.load_fakes(inst);
            OptOracle orc(inst);
            int opt = orc.value(f);
            auto rho = parse_rho(rho_s, opt);
            GridConfig gc;
            gc.parallel = !serial;
            GridBuildStats st;
            auto gr = build_rho_accurate_grid(inst, f, rho, gc, &st);
            auto rep = check_rho_accurate(gr, inst, f, rho, orc, !serial);
            json j = grid_json(gr);
            j["check"] = {{"ok", rep.ok()}, {"opt", rep.opt}, {"limit", rep.limit}, {"worst_strip", rep.worst_strip}};
            bool ok = rep.ok();
            if (!refine_s.empty()) {
                auto rho2 = parse_rho(refine_s, opt);
                auto h = refine_aligned_grid(gr, inst, f, rho2, gc);
                auto rep2 = check_rho_accurate(h, inst, f, rho2, orc, !serial);
                j["refined"] = grid_json(h);
                j["refined"]["check"] = {{"ok", rep2.ok()}, {"limit", rep2.limit}, {"worst_strip", rep2.worst_strip}};
                ok = ok && rep2.ok();
            }
            write_json(g.out, j);
            if (!ok) return 1;
        } else if (*tree) {
            auto inst = src.load(g.seed);
            auto f = src.load_fakes(inst);
            OptOracle orc(inst);
            PartitionTree t;
            BasicPredicate basic;
            json stats;
            if (tree_kind == "section5") {
                if (!f.rects.empty()) throw IoError("section5 trees start from the empty fake set");
                Section5Config c;
                c.seed = derive_seed(g.seed, "tree", 0);
                c.split.strict = g.strict;
                if (g.strict) {
                    Parameters p;
                    p.epsilon = eps;
                    double o = std::max(2, orc.value(FakeSet{}));
                    c.l_star = static_cast<int>(std::ceil(p.section5_l_star(o)));
                    c.tau = static_cast<int>(std::min(p.section5_tau(o), 1e9));
                }
                if (lstar > 0) c.l_star = lstar;
                if (tau >= 0) c.tau = tau;
                Section5Stats st;
                t = build_section5_tree(inst, c, orc, &st);
                basic = [tau = c.tau](const FakeSet&, int o) { return o <= tau; };
                stats = {{"l_star", c.l_star}, {"tau", c.tau}, {"levels", st.levels}, {"level_loss", st.level_loss},
                         {"seed_retries", st.seed_retries}, {"max_label", st.max_label}};
            } else {
                int opt = orc.value(f);
                auto gr = build_rho_accurate_grid(inst, f, parse_rho(rho_s, opt));
                if (tree_kind == "cleanup") {
                    CleanupConfig c;
                    c.seed = derive_seed(g.seed, "tree", 0);
                    c.split.strict = g.strict;
                    int a = l1 > 0 ? l1 : std::max(f.size(), 2), b = l2 > 0 ? l2 : std::max(1, a / 2);
                    CleanupStats st;
                    t = build_cleanup_tree(inst, f, gr, a, b, c, orc, &st);
                    basic = [&, b](const FakeSet& s, int) { return s.size() <= b || region_area(s, inst.box) == 0; };
                    stats = {{"l1", a}, {"l2", b}, {"delta", st.delta}, {"pairs", st.pairs},
                             {"discarded", st.discarded}, {"grid_cuts", st.grid_cuts}, {"loss", st.loss},
                             {"loss_bound", st.loss_bound}};
                } else {
                    PhaseConfig c;
                    c.seed = derive_seed(g.seed, "tree", 0);
                    c.split.strict = g.strict;
                    if (l1 > 0) c.l1 = l1;
                    if (l2 > 0) c.l2 = l2;
                    c.drop_factor = drop;
                    PhaseStats st;
                    t = build_phase_tree(inst, f, gr, c, orc, &st);
                    basic = [](const FakeSet&, int) { return true; };
                    stats = {{"l1", c.l1}, {"l2", c.l2}, {"triples", st.triples}, {"discarded", st.discarded},
                             {"middle_misses", st.middle_misses}, {"cleanups", st.cleanups},
                             {"stage1_height", st.stage1_height}, {"stage1_loss", st.stage1_loss},
                             {"cleanup_loss", st.cleanup_loss}, {"loss_bound", st.loss_bound}};
                }
                stats["grid"] = grid_json(gr);
            }
            auto rep = verify_tree(t, inst, basic, eps, orc);
            json j = tree_json(t);
            j["type"] = tree_kind;
            j["stats"] = stats;
            j["report"] = report_json(rep);
            write_json(g.out, j);
            if (!rep.ok()) return 1;
        } else if (*dp) {
            auto inst = src.load(g.seed);
            auto c = dp_config(inst, eps, lstar, tau, g.strict);
            c.coord_mode = parse_coord_mode(coord);
            c.max_states = max_states;
            if (seeded) {
                OptOracle orc(inst);
                Section5Config sc;
                sc.seed = derive_seed(g.seed, "dp-tree", 0);
                c.seeds = seeds_from_tree(build_section5_tree(inst, sc, orc));
            }
            auto res = dp_solve(inst, c);
            write_json(g.out, solution_json(res.solution));
            if (csv_out.empty()) std::cerr << stats_csv(res.stats);
            else write_text(csv_out, stats_csv(res.stats));
        } else if (*verify) {
            suites::SuiteConfig sc{src.n, trials, g.seed, g.strict};
            std::vector<std::string> names = suite == "all" ? suites::suite_names() : std::vector<std::string>{suite};
            json checks = json::array();
            bool all = true;
            auto t0 = std::chrono::steady_clock::now();
            for (const auto& name : names) {
                auto t1 = std::chrono::steady_clock::now();
                auto res = suites::run_suite(name, sc);
                all = all && res.pass();
                json c = {{"suite", name},          {"pass", res.pass()}, {"trials", res.trials},
                          {"failures", res.failures}, {"skipped", res.skipped}, {"measured", res.measured},
                          {"notes", res.notes}};
                if (timing)
                    c["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t1).count();
                checks.push_back(c);
                std::cerr << (res.pass() ? "PASS " : "FAIL ") << name << " trials=" << res.trials
                          << " failures=" << res.failures << " skipped=" << res.skipped << "\n";
            }
            json rep = {{"command", "verify"},
                        {"parameters", {{"suite", suite}, {"n", src.n}, {"trials", trials}, {"strict", g.strict}}},
                        {"seed", g.seed},
                        {"pass", all},
                        {"checks", checks}};
            if (timing)
                rep["wall_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            write_json(g.out, rep);
            return all ? 0 : 1;
        } else if (*bench) {
            static const GenKind kinds[] = {GenKind::uniform_random, GenKind::nested_stacks,
                                            GenKind::adversarial_strips, GenKind::disjoint_grid};
            std::vector<std::string> rows(trials);
            std::vector<std::string> errors(trials);
#pragma omp parallel for schedule(dynamic)
            for (int t = 0; t < trials; ++t) {
                try {
                    auto s = derive_seed(g.seed, "bench", t);
                    GenKind k = src.kind == "mixed" ? kinds[t % 4] : parse_gen_kind(src.kind);
                    auto inst = generate(k, src.n, s);
                    int ex = exact_mis(inst).value();
                    int ap = approx_divide(inst).value();
                    auto t0 = std::chrono::steady_clock::now();
                    int val = 0, dpv = 0;
                    if (bench_solver == "dp") {
                        dpv = dp_solve(inst, dp_config(inst, eps, lstar, tau, g.strict)).value();
                        val = dpv;
                    } else {
                        if (bench_solver == "exact") val = exact_mis(inst).value();
                        else val = approx_divide(inst).value();
                        dpv = -1;
                    }
                    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
                    double ratio = ex > 0 ? double(val) / ex : 1.0;
                    std::ostringstream o;
                    o << s << ',' << src.n << ',' << gen_kind_name(k) << ',' << ex << ',' << ap << ',' << dpv << ','
                      << fmt_ratio(ratio) << ',' << (no_timing ? std::string("0") : fmt_ratio(ms)) << '\n';
                    rows[t] = o.str();
                } catch (const std::exception& e) {
                    errors[t] = e.what();
                }
            }
            for (int t = 0; t < trials; ++t)
                if (!errors[t].empty()) throw std::runtime_error("bench trial " + std::to_string(t) + ": " + errors[t]);
            std::string text = "seed,n,kind,exact,approx_divide,dp_value,ratio,wall_ms\n";
            for (const auto& row : rows) text += row;
            write_text(g.out, text);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
