#include "misr/trees.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace misr {

int PartitionTree::add(FakeSet label, int parent, int opt) {
    TreeNode n;
    n.label = std::move(label);
    n.parent = parent;
    n.opt = opt;
    n.depth = parent < 0 ? 0 : nodes[parent].depth + 1;
    nodes.push_back(std::move(n));
    int id = static_cast<int>(nodes.size()) - 1;
    if (parent >= 0) nodes[parent].children.push_back(id);
    return id;
}

std::vector<int> PartitionTree::leaves() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
        if (is_leaf(v)) out.push_back(v);
    return out;
}

std::vector<int> PartitionTree::inner() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(nodes.size()); ++v)
        if (!is_leaf(v)) out.push_back(v);
    return out;
}

int PartitionTree::height() const {
    int h = 0;
    for (const auto& n : nodes) h = std::max(h, n.depth);
    return h;
}

void PartitionTree::fill_mu(const std::function<int(int)>& leaf_value) {
    // children always have larger ids than their parent
    for (int v = static_cast<int>(nodes.size()) - 1; v >= 0; --v) {
        if (is_leaf(v)) {
            nodes[v].mu = leaf_value(v);
        } else {
            nodes[v].mu = 0;
            for (int c : nodes[v].children) nodes[v].mu += nodes[c].mu;
        }
    }
}

LossBreakdown loss_breakdown(const PartitionTree& t) {
    LossBreakdown b;
    if (t.nodes.empty()) return b;
    b.by_leaves = t.nodes[0].opt;
    for (int v : t.leaves()) b.by_leaves -= t.nodes[v].opt;
    for (int v : t.inner()) b.by_lambda += t.nodes[v].lambda;
    return b;
}

std::int64_t tree_loss(const PartitionTree& t) {
    auto b = loss_breakdown(t);
    if (b.by_leaves != b.by_lambda)
        throw std::logic_error("tree_loss: leaf formula " + std::to_string(b.by_leaves) + " != lambda sum " +
                               std::to_string(b.by_lambda));
    return b.by_leaves;
}

namespace {

void fail(TreeReport& r, bool& flag, std::string msg) {
    flag = false;
    if (r.failures.size() < 50) r.failures.push_back(std::move(msg));
}

void check_antichain(TreeReport& rep, const PartitionTree& t, const std::vector<int>& group, const std::string& name) {
    std::int64_t sum = 0;
    for (int v : group) sum += t.nodes[v].opt;
    if (sum > t.nodes[0].opt)
        fail(rep, rep.antichains, name + ": optima sum " + std::to_string(sum) + " exceeds the root");
    for (std::size_t a = 0; a < group.size(); ++a)
        for (std::size_t b = a + 1; b < group.size(); ++b)
            if (!compare_regions(t.nodes[group[a]].label, t.nodes[group[b]].label, t.box).disjoint) {
                fail(rep, rep.antichains,
                     name + ": nodes " + std::to_string(group[a]) + " and " + std::to_string(group[b]) + " overlap");
                return;
            }
}

// Child order: region area, then encoding.
void sort_kids(std::vector<FakeSet>& kids, const Rect& box) {
    std::vector<std::pair<std::pair<Coord, std::string>, FakeSet>> tmp;
    for (auto& k : kids) {
        auto n = normalized(std::move(k));
        tmp.push_back({{region_area(n, box), encoding(n)}, std::move(n)});
    }
    std::stable_sort(tmp.begin(), tmp.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    kids.clear();
    for (auto& p : tmp) kids.push_back(std::move(p.second));
}

void attach(PartitionTree& t, int v, std::vector<FakeSet> kids, OptOracle& orc, const std::string& stage) {
    sort_kids(kids, t.box);
    std::int64_t sum = 0;
    for (auto& k : kids) {
        int o = orc.value(k);
        sum += o;
        t.add(std::move(k), v, o);
    }
    t.nodes[v].lambda = t.nodes[v].opt - sum;
    t.nodes[v].stage = stage;
}

bool empty_region(const FakeSet& f, const Rect& box) { return region_area(f, box) == 0; }

// Replaces v's subtree (a leaf) with sub, whose root carries the same label.
void graft(PartitionTree& t, int v, const PartitionTree& sub) {
    std::vector<int> map(sub.nodes.size(), -1);
    map[0] = v;
    t.nodes[v].lambda = sub.nodes[0].lambda;
    t.nodes[v].stage = sub.nodes[0].stage;
    for (std::size_t s = 1; s < sub.nodes.size(); ++s) {
        const auto& n = sub.nodes[s];
        int id = t.add(n.label, map[n.parent], n.opt);
        t.nodes[id].lambda = n.lambda;
        t.nodes[id].discarded = n.discarded;
        t.nodes[id].stage = n.stage;
        map[s] = id;
    }
}

struct CutChoice {
    FakeSet f1, f2;
    int o1 = 0, o2 = 0;
    bool found = false, three_q = false;
};

// Best pair obtained by cutting S(F) along one grid line, optionally dropping
// one side. Both children must have fewer fakes than F.
CutChoice grid_cut_pair(const Instance& inst, const FakeSet& f, const Grid& g, OptOracle& orc) {
    CutChoice best;
    const Rect& box = inst.box;
    auto consider = [&](FakeSet a, FakeSet b) {
        int mx = std::max(a.size(), b.size());
        if (mx >= f.size()) return;
        if (!is_decomposition_pair(f, a, b, box)) return;
        int oa = orc.value(a), ob = orc.value(b);
        bool q = 4 * mx <= 3 * f.size();
        bool better = !best.found || (q && !best.three_q) || (q == best.three_q && oa + ob > best.o1 + best.o2);
        if (!better) return;
        best.f1 = std::move(a);
        best.f2 = std::move(b);
        best.o1 = oa;
        best.o2 = ob;
        best.found = true;
        best.three_q = q;
    };
    for (int vert = 1; vert >= 0; --vert) {
        const auto& lines = vert ? g.vlines : g.hlines;
        for (std::size_t k = 1; k + 1 < lines.size(); ++k) {
            auto lo = cut_side(f, box, lines[k], vert, true);
            auto hi = cut_side(f, box, lines[k], vert, false);
            consider(lo, hi);
            consider(FakeSet::whole(box), lo);
            consider(FakeSet::whole(box), hi);
        }
    }
    return best;
}

}  // namespace

TreeReport verify_tree(const PartitionTree& t, const Instance& inst, const BasicPredicate& basic, double epsilon,
                       OptOracle& orc) {
    TreeReport rep;
    if (t.nodes.empty()) {
        fail(rep, rep.decompositions, "empty tree");
        return rep;
    }
    int n = static_cast<int>(t.nodes.size());
    for (int v = 0; v < n; ++v) {
        const auto& nd = t.nodes[v];
        int o = orc.value(nd.label);
        if (o != nd.opt) fail(rep, rep.opts_match, "node " + std::to_string(v) + ": stored optimum differs");
        if (t.is_leaf(v)) {
            if (!basic(nd.label, o)) fail(rep, rep.leaves_basic, "leaf " + std::to_string(v) + " is not basic");
            if (nd.mu > o) fail(rep, rep.mu_sums, "leaf " + std::to_string(v) + ": mu exceeds the optimum");
            continue;
        }
        std::vector<FakeSet> kids;
        std::int64_t sum = 0, mu = 0;
        for (int c : nd.children) {
            kids.push_back(t.nodes[c].label);
            sum += t.nodes[c].opt;
            mu += t.nodes[c].mu;
        }
        if (nd.children.size() < 2 || nd.children.size() > 3 || !is_decomposition(nd.label, kids, inst.box))
            fail(rep, rep.decompositions, "node " + std::to_string(v) + ": children are not a valid decomposition");
        if (nd.lambda != nd.opt - sum)
            fail(rep, rep.loss_consistent, "node " + std::to_string(v) + ": lambda does not match the optima");
        if (nd.opt - sum < 0) fail(rep, rep.lambda_nonneg, "node " + std::to_string(v) + ": negative loss");
        if (mu != nd.mu) fail(rep, rep.mu_sums, "node " + std::to_string(v) + ": mu is not the sum of its children");
    }
    auto b = loss_breakdown(t);
    rep.loss = b.by_leaves;
    if (b.by_leaves != b.by_lambda) fail(rep, rep.loss_consistent, "leaf and lambda loss formulas disagree");

    std::vector<std::vector<int>> by_depth(t.height() + 1);
    for (int v = 0; v < n; ++v) by_depth[t.nodes[v].depth].push_back(v);
    for (std::size_t d = 0; d < by_depth.size(); ++d) check_antichain(rep, t, by_depth[d], "depth " + std::to_string(d));
    check_antichain(rep, t, t.leaves(), "leaves");

    double need = (1.0 - epsilon / 2) * static_cast<double>(t.nodes[0].opt - rep.loss);
    if (static_cast<double>(t.nodes[0].mu) + 1e-9 < need)
        fail(rep, rep.final_bound, "mu(root) " + std::to_string(t.nodes[0].mu) + " below (1-eps/2)(OPT-loss)");
    return rep;
}

namespace {
double log43(double x) { return std::log(x) / std::log(4.0 / 3.0); }
}  // namespace

double Parameters::section5_l_star(double opt) const { return 2 * c3 * log43(opt) / epsilon; }

double Parameters::section5_tau(double opt) const {
    double l = section5_l_star(opt);
    return 64 * l * l;
}

Parameters::Schedule Parameters::schedule(double log2_n) const {
    Schedule s;
    s.log2_n = log2_n;
    double ll = std::log2(std::max(2.0, log2_n));
    s.h_star = std::max(1, static_cast<int>(std::floor(ll)));
    for (int i = 1; i <= s.h_star; ++i) {
        s.l.push_back(c_tilde * ll * ll * ll * std::pow(2.0, i) / epsilon);
        s.log2_rho.push_back(log2_n / std::pow(2.0, i));
    }
    auto log2_pow_term = [&](double l) { return 5 + (2 * s.delta + 4) * std::log2(l); };  // 32 L^{2d+4}
    s.log2_eta = log2_pow_term(s.l.back());
    s.h = 0;
    for (int i = 1; i <= s.h_star; ++i)
        if (s.log2_rho[i - 1] > 320 * s.log2_eta) s.h = i;
    auto rho = [&](int i) { return i == 0 ? log2_n : s.log2_rho[i - 1]; };
    if (s.h >= 1) {
        s.log2_tau_star = 3 * rho(s.h - 1);
        s.rho_bound = true;
        for (int i = 1; i < s.h; ++i)
            for (int j = 1; j <= s.h; ++j)
                if (rho(i) < 320 * log2_pow_term(s.l[j - 1])) s.rho_bound = false;
        s.opt_bound = true;
        for (int j = 1; j <= s.h; ++j)
            if (rho(s.h - 1) < 9 + (2 * s.delta + 4) * std::log2(s.l[j - 1])) s.opt_bound = false;
    }
    return s;
}

double smallest_valid_log2_n(const Parameters& p, double limit) {
    for (double x = 2; x <= limit; x *= 2) {
        auto s = p.schedule(x);
        if (s.h >= 2 && s.rho_bound && s.opt_bound) return x;
    }
    return -1;
}

PartitionTree build_section5_tree(const Instance& inst, const Section5Config& cfg, OptOracle& orc,
                                  Section5Stats* stats) {
    PartitionTree t;
    t.box = inst.box;
    t.add(FakeSet{}, -1, orc.value(FakeSet{}));
    Section5Stats st;
    for (int v = 0; v < static_cast<int>(t.nodes.size()); ++v) {
        if (t.nodes[v].opt <= cfg.tau) continue;
        FakeSet label = t.nodes[v].label;
        bool done = false;
        std::string last = "no attempt";
        for (int a = 0; a < cfg.seed_tries && !done; ++a) {
            TripleResult tr;
            try {
                tr = decompose_triple(inst, label, cfg.l_star,
                                      derive_seed(cfg.seed, "section5-node", static_cast<std::uint64_t>(v) * 1000 + a),
                                      orc, cfg.split);
            } catch (const DecompositionFailure& e) {
                last = e.what();
                continue;
            }
            if (std::max({tr.f1.size(), tr.f2.size(), tr.f3.size()}) > cfg.l_star) {
                last = "child exceeds L*";
                ++st.seed_retries;
                continue;
            }
            if (!is_decomposition_triple(label, tr.f1, tr.f2, tr.f3, inst.box)) {
                last = "invalid triple";
                continue;
            }
            attach(t, v, {tr.f1, tr.f2, tr.f3}, orc, "triple");
            done = true;
        }
        if (!done)
            throw DecompositionFailure("build_section5_tree: node " + std::to_string(v) + " (OPT " +
                                       std::to_string(t.nodes[v].opt) + ", |F| " + std::to_string(label.size()) +
                                       "): " + last);
    }
    t.fill_mu([&](int v) { return t.nodes[v].opt; });
    st.nodes = static_cast<int>(t.nodes.size());
    st.levels = t.height();
    st.level_loss.assign(st.levels + 1, 0);
    for (int v : t.inner()) st.level_loss[t.nodes[v].depth] += t.nodes[v].lambda;
    for (const auto& n : t.nodes) st.max_label = std::max(st.max_label, n.label.size());
    if (stats) *stats = st;
    return t;
}

PartitionTree build_cleanup_tree(const Instance& inst, const FakeSet& f, const Grid& g, int l1, int l2,
                                 const CleanupConfig& cfg, OptOracle& orc, CleanupStats* stats) {
    if (!(l2 < l1) || l2 < 1) throw std::invalid_argument("build_cleanup_tree: need 1 <= L2 < L1");
    if (f.size() > l1) throw std::invalid_argument("build_cleanup_tree: |F| exceeds L1");
    CleanupStats st;
    st.delta = static_cast<int>(std::ceil(log43(static_cast<double>(l1) / l2) - 1e-12));
    PartitionTree t;
    t.box = inst.box;
    t.add(normalized(f), -1, orc.value(f));
    for (int v = 0; v < static_cast<int>(t.nodes.size()); ++v) {
        FakeSet label = t.nodes[v].label;
        int ov = t.nodes[v].opt;
        if (label.size() <= l2 || empty_region(label, inst.box)) continue;
        if (ov == 0) {
            // nothing to keep: both children are {B}
            attach(t, v, {FakeSet::whole(inst.box), FakeSet::whole(inst.box)}, orc, "empty");
            continue;
        }
        PairResult best;
        bool have = false, three_q = false;
        std::string last = "no attempt";
        for (int a = 0; a < cfg.seed_tries && !three_q; ++a) {
            PairResult pr;
            try {
                pr = decompose_pair_grid(inst, label, g,
                                         derive_seed(cfg.seed, "cleanup-node", static_cast<std::uint64_t>(v) * 1000 + a),
                                         orc, cfg.split);
            } catch (const DecompositionFailure& e) {
                last = e.what();
                continue;
            } catch (const SeparatorFailure& e) {
                last = e.what();
                continue;
            }
            int mx = std::max(pr.f1.size(), pr.f2.size());
            if (mx >= label.size()) {
                last = "children no smaller than the parent";
                continue;
            }
            if (!is_decomposition_pair(label, pr.f1, pr.f2, inst.box)) {
                last = "invalid pair";
                continue;
            }
            bool q = 4 * mx <= 3 * label.size();
            if (!have || q) {
                best = pr;
                have = true;
                three_q = q;
            }
        }
        if (!three_q) {
            // separator route did not shrink F enough at this scale
            auto cut = grid_cut_pair(inst, label, g, orc);
            if (cut.found && (!have || cut.three_q)) {
                best.f1 = cut.f1;
                best.f2 = cut.f2;
                best.opt1 = cut.o1;
                best.opt2 = cut.o2;
                have = true;
                three_q = cut.three_q;
                ++st.grid_cuts;
            }
        }
        if (!have)
            throw DecompositionFailure("build_cleanup_tree: cannot reduce |F| = " + std::to_string(label.size()) +
                                       " at node " + std::to_string(v) + ": " + last);
        if (!three_q) ++st.three_quarter_misses;
        ++st.pairs;
        FakeSet f1 = best.f1, f2 = best.f2;
        int o1 = best.opt1, o2 = best.opt2;
        if (o1 > o2) {
            std::swap(f1, f2);
            std::swap(o1, o2);
        }
        bool drop = static_cast<std::int64_t>(o1) * l1 < ov;
        if (drop) {
            f1 = FakeSet::whole(inst.box);
            ++st.discarded;
        }
        attach(t, v, {f1, f2}, orc, "cleanup");
        if (drop)
            for (int c : t.nodes[v].children)
                if (t.nodes[c].label.size() == 1 && t.nodes[c].label.rects[0].same_box(inst.box))
                    t.nodes[c].discarded = true;
    }
    t.fill_mu([&](int v) { return t.nodes[v].opt; });
    st.loss = tree_loss(t);
    st.loss_bound = 12 * cfg.c_tilde * t.nodes[0].opt / l2;
    if (stats) *stats = st;
    return t;
}

PartitionTree build_phase_tree(const Instance& inst, const FakeSet& f, const Grid& g, const PhaseConfig& cfg,
                               OptOracle& orc, PhaseStats* stats) {
    if (!(cfg.l1 < cfg.l2)) throw std::invalid_argument("build_phase_tree: need L1 < L2");
    if (f.size() > cfg.l1) throw std::invalid_argument("build_phase_tree: |F| exceeds L1");
    PhaseStats st;
    PartitionTree t;
    t.box = inst.box;
    int opt_f = orc.value(f);
    t.add(normalized(f), -1, opt_f);
    auto above = [&](int o) { return static_cast<double>(o) * cfg.drop_factor > opt_f; };

    std::vector<int> stage1_leaves;
    for (int v = 0; v < static_cast<int>(t.nodes.size()); ++v) {
        FakeSet label = t.nodes[v].label;
        int ov = t.nodes[v].opt;
        if (empty_region(label, inst.box) || !above(ov)) {
            stage1_leaves.push_back(v);
            continue;
        }
        bool done = false;
        std::string last = "no attempt";
        for (int a = 0; a < cfg.seed_tries && !done; ++a) {
            TripleResult tr;
            try {
                tr = decompose_triple_grid(inst, label, cfg.l2, g,
                                           derive_seed(cfg.seed, "phase-node", static_cast<std::uint64_t>(v) * 1000 + a),
                                           orc, cfg.split);
            } catch (const DecompositionFailure& e) {
                last = e.what();
                continue;
            }
            if (std::max({tr.f1.size(), tr.f2.size(), tr.f3.size()}) > cfg.l2) {
                last = "child exceeds L2";
                continue;
            }
            if (!is_decomposition_triple(label, tr.f1, tr.f2, tr.f3, inst.box)) {
                last = "invalid triple";
                continue;
            }
            std::vector<std::pair<int, FakeSet>> kids{{tr.opt1, tr.f1}, {tr.opt2, tr.f2}, {tr.opt3, tr.f3}};
            std::stable_sort(kids.begin(), kids.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            if (16LL * kids[1].first < ov) ++st.middle_misses;
            if (static_cast<std::int64_t>(kids[0].first) * cfg.l2 < ov) {
                kids[0].second = FakeSet::whole(inst.box);
                ++st.discarded;
            }
            attach(t, v, {kids[0].second, kids[1].second, kids[2].second}, orc, "phase");
            ++st.triples;
            done = true;
        }
        if (!done)
            throw DecompositionFailure("build_phase_tree: node " + std::to_string(v) + " (OPT " + std::to_string(ov) +
                                       "): " + last);
    }
    for (int v : t.inner()) {
        st.stage1_loss += t.nodes[v].lambda;
        st.stage1_height = std::max(st.stage1_height, t.nodes[v].depth + 1);
    }

    CleanupConfig cc;
    cc.c_tilde = cfg.c_tilde;
    cc.seed = derive_seed(cfg.seed, "phase-cleanup", 0);
    cc.seed_tries = cfg.seed_tries;
    cc.split = cfg.split;
    for (int v : stage1_leaves) {
        const FakeSet& label = t.nodes[v].label;
        if (label.size() <= cfg.l1 || empty_region(label, inst.box)) continue;
        CleanupStats cs;
        auto sub = build_cleanup_tree(inst, label, g, cfg.l2, cfg.l1, cc, orc, &cs);
        st.cleanup_loss += cs.loss;
        ++st.cleanups;
        graft(t, v, sub);
    }
    t.fill_mu([&](int v) { return t.nodes[v].opt; });
    st.loss_bound = 24 * cfg.c_tilde * opt_f / cfg.l1;
    if (stats) *stats = st;
    return t;
}

}  // namespace misr
