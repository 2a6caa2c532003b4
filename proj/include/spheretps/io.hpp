#pragma once

#include "spheretps/fit.hpp"
#include "spheretps/kernel.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace stps {

// Cartesian: header + rows of d coordinates (and a value column for fit
// data). GeoLonLat: header + rows of longitude/latitude in degrees
// (value column likewise), d = 3 only.
enum class DataFormat { Cartesian, GeoLonLat };

struct DataSet {
    PointSet pts;
    std::vector<double> y;
};

// Fit data: point columns plus one value column.
DataSet read_data(const std::string& path, DataFormat fmt, int d);

// Query points only (no value column).
PointSet read_points(const std::string& path, DataFormat fmt, int d);

// Bare numeric CSV (header line first, like every other input) with exactly
// `cols` fields per row.  Used for the residual weight matrix in fitting.
std::vector<std::vector<double>> read_matrix(const std::string& path, std::size_t cols);

std::vector<double> geo_to_unit(double lon_deg, double lat_deg);

void write_model(const std::string& path, const SplineModel& model);
SplineModel read_model(const std::string& path);

// Shortest decimal that parses back to the same double.
std::string format_double(double v);

std::string method_name(KernelMethod m);
KernelMethod method_from_name(const std::string& name);

void write_predictions(std::ostream& os, const std::vector<double>& values);

} // namespace stps
