#include "misr/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace misr {

json rect_json(const Rect& r) { return {{"x1", r.x1}, {"y1", r.y1}, {"x2", r.x2}, {"y2", r.y2}}; }

json instance_json(const Instance& inst) {
    json rs = json::array();
    for (const auto& r : inst.rects) rs.push_back(rect_json(r));
    return {{"n", inst.n()}, {"rects", rs}};
}

json raw_json(const std::vector<RawRect>& raw) {
    json rs = json::array();
    for (const auto& r : raw) rs.push_back({{"x1", r.x1}, {"y1", r.y1}, {"x2", r.x2}, {"y2", r.y2}});
    return {{"n", raw.size()}, {"rects", rs}};
}

json solution_json(const IndependentSet& s) { return {{"indices", s.indices}}; }

json fakes_json(const FakeSet& f) {
    json rs = json::array();
    for (const auto& r : f.rects) rs.push_back(rect_json(r));
    return rs;
}

json grid_json(const Grid& g) {
    auto v = sorted_unique(g.vlines), h = sorted_unique(g.hlines);
    return {{"rho", g.declared_rho.str()}, {"vlines", v}, {"hlines", h}};
}

json partition_json(const CellPartition& p) {
    json cells = json::array();
    for (int k = 0; k < p.size(); ++k) {
        json c = rect_json(p.cells[k]);
        c["fake"] = p.fake_of[k];
        c["n_p"] = k < static_cast<int>(p.n_p.size()) ? p.n_p[k] : 0;
        c["excess"] = k < static_cast<int>(p.excess.size()) ? p.excess[k] : 0;
        cells.push_back(c);
    }
    return {{"box", rect_json(p.box)},     {"r", p.r},
            {"opt", p.opt_size},           {"seed", p.seed},
            {"attempts", p.attempts},      {"initial_cells", p.initial_cells},
            {"subdivided", p.subdivided_cells}, {"sampled", p.sampled},
            {"cells", cells}};
}

json split_json(const SplitResult& s) {
    return {{"f1", fakes_json(s.f1)},     {"f2", fakes_json(s.f2)},       {"cycle", s.cycle},
            {"j_cells", s.j_cells},       {"outer_on_cycle", s.outer_on_cycle},
            {"opt1", s.opt1},             {"opt2", s.opt2},               {"lost", s.lost},
            {"a_np", s.a_np},             {"balance_applies", s.balance_applies},
            {"candidates", s.candidates}};
}

json tree_json(const PartitionTree& t) {
    json nodes = json::array();
    for (std::size_t v = 0; v < t.nodes.size(); ++v) {
        const auto& n = t.nodes[v];
        json j = {{"id", v},         {"parent", n.parent}, {"children", n.children},
                  {"depth", n.depth}, {"opt", n.opt},      {"mu", n.mu},
                  {"lambda", n.lambda}, {"discarded", n.discarded}, {"stage", n.stage},
                  {"label", fakes_json(n.label)}};
        nodes.push_back(j);
    }
    auto lb = loss_breakdown(t);
    return {{"box", rect_json(t.box)}, {"height", t.height()}, {"Lambda", lb.by_lambda}, {"nodes", nodes}};
}

namespace {

double num(const json& r, const char* k) {
    if (!r.contains(k) || !r[k].is_number()) throw IoError(std::string("rect missing numeric field ") + k);
    return r[k].get<double>();
}

Coord integer(const json& r, const char* k) {
    double v = num(r, k);
    if (v != std::floor(v)) throw IoError(std::string("non-integer coordinate in ") + k);
    return static_cast<Coord>(v);
}

}  // namespace

std::vector<RawRect> raw_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rects") || !j["rects"].is_array()) throw IoError("instance: expected {\"rects\": [...]}");
    std::vector<RawRect> out;
    for (const auto& r : j["rects"]) out.push_back({num(r, "x1"), num(r, "y1"), num(r, "x2"), num(r, "y2")});
    if (j.contains("n") && j["n"].get<std::size_t>() != out.size()) throw IoError("instance: n does not match rects");
    return out;
}

Instance instance_from_json(const json& j) {
    auto raw = raw_from_json(j);
    bool ints = true;
    std::vector<Rect> rs;
    for (const auto& r : raw) {
        for (double v : {r.x1, r.y1, r.x2, r.y2}) ints = ints && v == std::floor(v);
        rs.push_back(open_rect(static_cast<Coord>(r.x1), static_cast<Coord>(r.y1), static_cast<Coord>(r.x2),
                               static_cast<Coord>(r.y2)));
    }
    if (ints) {
        auto inst = Instance::canonical_box(rs);
        if (is_canonical(inst)) return inst;
    }
    for (const auto& r : raw)
        if (!(r.x1 < r.x2 && r.y1 < r.y2)) throw IoError("instance: zero-area rectangle");
    return canonicalize(raw).first;
}

IndependentSet solution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("indices")) throw IoError("solution: expected {\"indices\": [...]}");
    IndependentSet s;
    s.indices = j["indices"].get<std::vector<int>>();
    std::sort(s.indices.begin(), s.indices.end());
    return s;
}

FakeSet fakes_from_json(const json& j) {
    const json& a = j.is_object() && j.contains("fakes") ? j["fakes"] : j;
    if (!a.is_array()) throw IoError("fakes: expected a list of rectangles");
    FakeSet f;
    for (const auto& r : a) f.rects.push_back(closed_rect(integer(r, "x1"), integer(r, "y1"), integer(r, "x2"), integer(r, "y2")));
    f.provenance = "file";
    return normalized(f);
}

Grid grid_from_json(const json& j) {
    Grid g;
    g.vlines = sorted_unique(j.at("vlines").get<std::vector<Coord>>());
    g.hlines = sorted_unique(j.at("hlines").get<std::vector<Coord>>());
    return g;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed: " + path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace misr
