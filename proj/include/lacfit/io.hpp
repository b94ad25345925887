#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lacfit/fit.hpp"
#include "lacfit/geometry.hpp"

namespace lacfit {

/// One `x,y` pair per line, decimal point, no header.
std::vector<Vec2> read_points_csv(const std::filesystem::path& path);
std::string format_points_csv(const std::vector<Vec2>& points);

/// Write via a temporary file and rename, so failed runs leave no partial output.
void write_text_file(const std::filesystem::path& path, const std::string& content);

nlohmann::ordered_json theta_to_json(const ThetaParams& theta);
nlohmann::ordered_json segment_params_to_json(const LacSegmentParams& p);
nlohmann::ordered_json recover_to_json(const RecoverResult& r);
nlohmann::ordered_json fit_to_json(const FitOutcome& outcome);

struct SvgPolyline {
  const std::vector<Vec2>* points;
  std::string color;
};

/// Fixed-palette overlay plot; y axis flipped into screen coordinates.
std::string render_svg(const std::vector<SvgPolyline>& polylines);

}  // namespace lacfit
