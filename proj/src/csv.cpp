#include "dls/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace dls {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& field, const std::string& context, std::size_t line_no) {
    const std::string f = trim(field);
    double value = 0.0;
    const auto* first = f.data();
    const auto* last = f.data() + f.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        std::ostringstream msg;
        msg << context << ": line " << line_no << ": cannot parse '" << field << "' as a real";
        throw std::runtime_error(msg.str());
    }
    return value;
}

}  // namespace

std::vector<Point> read_points(std::istream& in, const std::string& context) {
    std::vector<Point> pts;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        Point p;
        std::stringstream fields(stripped);
        std::string field;
        while (std::getline(fields, field, ',')) p.push_back(parse_real(field, context, line_no));
        if (!pts.empty() && p.size() != pts.front().size()) {
            std::ostringstream msg;
            msg << context << ": line " << line_no << ": expected " << pts.front().size()
                << " coordinates, got " << p.size();
            throw std::runtime_error(msg.str());
        }
        pts.push_back(std::move(p));
    }
    return pts;
}

std::vector<Point> read_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_points(in, path);
}

Dataset load_dataset(const std::string& path) {
    auto pts = read_points_file(path);
    if (pts.empty()) throw std::runtime_error(path + ": no points found");
    return Dataset(std::move(pts));
}

CenterSet load_centers(const std::string& path) {
    CenterSet cs;
    for (auto& p : read_points_file(path)) cs.add(std::move(p));
    return cs;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

void write_points(std::ostream& out, const std::vector<Point>& pts) {
    for (const auto& p : pts) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) out << ',';
            out << format_double(p[i]);
        }
        out << '\n';
    }
}

void write_points_file(const std::string& path, const std::vector<Point>& pts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_points(out, pts);
    if (!out.flush()) throw std::runtime_error("write failed: " + path);
}

}  // namespace dls
