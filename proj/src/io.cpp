#include "spheretps/io.hpp"
#include "spheretps/errors.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace stps {

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    for (auto& f : fields) {
        const auto a = f.find_first_not_of(" \t");
        const auto b = f.find_last_not_of(" \t");
        f = (a == std::string::npos) ? std::string() : f.substr(a, b - a + 1);
    }
    return fields;
}

double parse_field(const std::string& s, const std::string& path, size_t line_no)
{
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(path + ":" + std::to_string(line_no) + ": not a number: '" + s + "'");
    if (!std::isfinite(v))
        throw ParseError(path + ":" + std::to_string(line_no) + ": non-finite value");
    return v;
}

// Rows of `width` numeric fields, header skipped; line numbers are 1-based.
std::vector<std::vector<double>> read_rows(const std::string& path, size_t width)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file, header row required");
    if (split_csv(line).size() != width)
        throw ParseError(path + ":1: header has " + std::to_string(split_csv(line).size())
                         + " columns, expected " + std::to_string(width));

    std::vector<std::vector<double>> rows;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto fields = split_csv(line);
        if (fields.size() != width)
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected "
                             + std::to_string(width) + " columns, got "
                             + std::to_string(fields.size()));
        std::vector<double> row;
        row.reserve(width);
        for (const auto& f : fields) row.push_back(parse_field(f, path, line_no));
        rows.push_back(std::move(row));
    }
    return rows;
}

size_t point_width(DataFormat fmt, int d, const std::string& where)
{
    if (fmt == DataFormat::GeoLonLat) {
        if (d != 3) throw ParseError(where + ": lon/lat format requires d = 3");
        return 2;
    }
    if (d < 2) throw DomainError(where + ": requires d >= 2");
    return static_cast<size_t>(d);
}

std::vector<double> row_to_point(const std::vector<double>& row, DataFormat fmt, size_t width)
{
    if (fmt == DataFormat::GeoLonLat) return geo_to_unit(row[0], row[1]);
    return std::vector<double>(row.begin(), row.begin() + static_cast<long>(width));
}

} // namespace

std::vector<double> geo_to_unit(double lon_deg, double lat_deg)
{
    const double lon = lon_deg * std::numbers::pi / 180.0;
    const double lat = lat_deg * std::numbers::pi / 180.0;
    return {std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat)};
}

DataSet read_data(const std::string& path, DataFormat fmt, int d)
{
    const size_t w = point_width(fmt, d, path);
    const auto rows = read_rows(path, w + 1);
    std::vector<std::vector<double>> pts;
    std::vector<double> y;
    pts.reserve(rows.size());
    y.reserve(rows.size());
    for (const auto& row : rows) {
        pts.push_back(row_to_point(row, fmt, w));
        y.push_back(row.back());
    }
    return DataSet{make_point_set(d, std::move(pts)), std::move(y)};
}

std::vector<std::vector<double>> read_matrix(const std::string& path, std::size_t cols)
{
    return read_rows(path, cols);
}

PointSet read_points(const std::string& path, DataFormat fmt, int d)
{
    const size_t w = point_width(fmt, d, path);
    const auto rows = read_rows(path, w);
    std::vector<std::vector<double>> pts;
    pts.reserve(rows.size());
    for (const auto& row : rows) pts.push_back(row_to_point(row, fmt, w));
    return make_point_set(d, std::move(pts));
}

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string method_name(KernelMethod m)
{
    switch (m) {
    case KernelMethod::ClosedForm: return "closed";
    case KernelMethod::Series: return "series";
    default: return "auto";
    }
}

KernelMethod method_from_name(const std::string& name)
{
    if (name == "closed") return KernelMethod::ClosedForm;
    if (name == "series") return KernelMethod::Series;
    if (name == "auto") return KernelMethod::Auto;
    throw ParseError("unknown method '" + name + "' (expected closed, series, or auto)");
}

void write_model(const std::string& path, const SplineModel& model)
{
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["spec"] = {{"d", model.spec.d},
                 {"m", model.spec.m},
                 {"ell", model.spec.ell},
                 {"method", method_name(model.spec.method)}};
    j["basis_id"] = model.basis_id;
    j["centers"] = model.centers.points;
    j["a"] = model.a;
    j["b"] = model.b;

    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError(path + ": write failed");
}

SplineModel read_model(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    SplineModel model;
    try {
        if (j.at("format_version").get<int>() != 1)
            throw ParseError(path + ": unsupported format_version");
        const auto& spec = j.at("spec");
        model.spec.d = spec.at("d").get<int>();
        model.spec.m = spec.at("m").get<int>();
        model.spec.ell = spec.at("ell").get<int>();
        model.spec.method = method_from_name(spec.at("method").get<std::string>());
        model.basis_id = j.at("basis_id").get<std::string>();
        auto centers = j.at("centers").get<std::vector<std::vector<double>>>();
        model.centers = make_point_set(model.spec.d, std::move(centers));
        model.a = j.at("a").get<std::vector<double>>();
        model.b = j.at("b").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }

    if (model.a.size() != model.centers.points.size())
        throw ParseError(path + ": coefficient count does not match centers");
    const TrendBasis tb = trend_basis(model.spec.d, model.spec.ell);
    if (model.basis_id != tb.basis_id)
        throw ParseError(path + ": basis_id '" + model.basis_id + "' does not match the spec");
    if (model.b.size() != static_cast<size_t>(tb.q))
        throw ParseError(path + ": trend coefficient count does not match the basis");
    for (double v : model.a)
        if (!std::isfinite(v)) throw ParseError(path + ": non-finite coefficient");
    for (double v : model.b)
        if (!std::isfinite(v)) throw ParseError(path + ": non-finite coefficient");
    return model;
}

void write_predictions(std::ostream& os, const std::vector<double>& values)
{
    os << "prediction\n";
    for (double v : values) os << format_double(v) << '\n';
}

} // namespace stps
