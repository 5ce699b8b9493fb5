#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "misr/dp.hpp"

namespace misr {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json rect_json(const Rect& r);
json instance_json(const Instance& inst);
json raw_json(const std::vector<RawRect>& raw);
json solution_json(const IndependentSet& s);
json fakes_json(const FakeSet& f);
json grid_json(const Grid& g);
json partition_json(const CellPartition& p);
json split_json(const SplitResult& s);
json tree_json(const PartitionTree& t);

// Accepts {"n", "rects": [{x1, y1, x2, y2}]} with integer or fractional values.
std::vector<RawRect> raw_from_json(const json& j);
// Canonical instances load as is; anything else goes through canonicalize.
Instance instance_from_json(const json& j);
IndependentSet solution_from_json(const json& j);
FakeSet fakes_from_json(const json& j);
Grid grid_from_json(const json& j);

json read_json(const std::string& path);
// "-" or empty writes to stdout. Output ends with a newline.
void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const json& j);

}  // namespace misr
