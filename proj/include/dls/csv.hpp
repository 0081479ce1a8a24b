#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dls/geometry.hpp"

namespace dls {

// Point files: one point per line, comma-separated decimal reals, no
// header. Blank lines are ignored and lines starting with '#' are
// comments. Center files use the same layout.
std::vector<Point> read_points(std::istream& in, const std::string& context);
std::vector<Point> read_points_file(const std::string& path);

Dataset load_dataset(const std::string& path);
CenterSet load_centers(const std::string& path);

void write_points(std::ostream& out, const std::vector<Point>& pts);
void write_points_file(const std::string& path, const std::vector<Point>& pts);

// shortest decimal form that round-trips a double exactly
std::string format_double(double v);

}  // namespace dls
