#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sliceq/aut.hpp"
#include "sliceq/deform.hpp"
#include "sliceq/hopf.hpp"
#include "sliceq/series.hpp"
#include "sliceq/stem.hpp"

namespace sliceq {

using json = nlohmann::json;

// Quaternions serialize as [w, x, y, z].
json to_json(const Quaternion& q);
Quaternion quaternion_from_json(const json& j);

// {p, alpha, beta, lambda}
json to_json(const HopfParams& params);
HopfParams hopf_params_from_json(const json& j);

// {degree, first: [{h,k,coeff}...], second: [...]}
json to_json(const SeriesMap& m);
SeriesMap series_map_from_json(const json& j);

// [{h,k,coeff}...]
json to_json(const PolyStem& stem);
PolyStem poly_stem_from_json(const json& j);

// {params, case, method, degree, samples, seed, singular_values, nullity,
//  expected, pass}
json to_json(const AutReport& report);

// case,alpha,beta,lambda,p,nullity,expected,pass
std::string aut_csv_header();
std::string aut_csv_row(const AutReport& report);

// lambda,case,nullity,expected,pass,slice_regular_family
std::string scan_csv_header();
std::string scan_csv_row(const ScanRow& row);

// 17 significant digits, deterministic.
std::string format_double(double v);
std::string format_quaternion_csv(const Quaternion& q); // semicolon-joined 4-tuple
std::string format_expected(const std::set<int>& expected);

// "0.5" (real) or "0,0,1,0" (full 4-tuple).
Quaternion parse_quaternion(const std::string& text);

} // namespace sliceq
