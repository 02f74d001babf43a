#pragma once

// JSON formats for every artifact. Writers emit compact, key-sorted JSON;
// readers validate structure and reject anything malformed with an
// InvalidInput error.

#include "carver/assembly.h"
#include "carver/cantor.h"
#include "carver/curve_cover.h"
#include "carver/dimension.h"
#include "carver/subdivision.h"

#include <json.hpp>

#include <string>
#include <vector>

namespace carver {

using Json = nlohmann::json;

Json to_json(const DiscreteContinuum& K);
DiscreteContinuum continuum_from_json(const Json& j);

Json to_json(const CubeRegion& cube, int d);
CubeRegion cube_from_json(const Json& j, int d);

Json pieces_to_json(const std::vector<SpanningPiece>& pieces, int d);
std::vector<SpanningPiece> pieces_from_json(const Json& j);

Json to_json(const CantorTree& tree);
CantorTree tree_from_json(const Json& j);

Json to_json(const Polyline& p);
Polyline polyline_from_json(const Json& j);

Json to_json(const CoverBudget& b);
CoverBudget budget_from_json(const Json& j);

Json to_json(const BoxCountSeries& s);
BoxCountSeries series_from_json(const Json& j);

Json to_json(const DimensionEstimate& e);
DimensionEstimate estimate_from_json(const Json& j);

Json report_to_json(const AssemblyResult& result, int d);

/// Compact serialization followed by a newline.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace carver
