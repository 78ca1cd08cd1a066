#ifndef filling_io_hpp_
#define filling_io_hpp_

#include "filling/continuum.hpp"
#include "filling/coverage.hpp"

#include <json.hpp>

#include <string>

namespace filling {

using json = nlohmann::json;

// {"vertices": [[x, y], ...]}; any orientation. Throws ValidationError.
Polygon polygon_from_json(const json &j);
json    polygon_to_json(const Polygon &p);
Polygon read_polygon(const std::string &path);

json            solution_to_json(const FillingSolution &s, const Polygon &p);
FillingSolution solution_from_json(const json &j);

json axis_to_json(const MedialAxis &m);
json plan_to_json(const AllocationPlan &plan);

// Polygon outline, dashed axis, junction dots and translucent discs.
std::string render_svg(const Polygon &p, const MedialAxis *axis, const std::vector<Disc> &discs);

std::string way_string(const Way &w);

void write_text(const std::string &path, const std::string &text);

} // namespace filling

#endif
