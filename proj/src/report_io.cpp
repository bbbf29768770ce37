#include "sliceq/report_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace sliceq {

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

Quaternion quaternion_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("quaternion JSON must be a 4-array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

json to_json(const HopfParams& params) {
    return {{"p", params.p},
            {"alpha", to_json(params.alpha)},
            {"beta", to_json(params.beta)},
            {"lambda", to_json(params.lambda)}};
}

HopfParams hopf_params_from_json(const json& j) {
    HopfParams p;
    p.p = j.at("p").get<int>();
    p.alpha = quaternion_from_json(j.at("alpha"));
    p.beta = quaternion_from_json(j.at("beta"));
    p.lambda = quaternion_from_json(j.at("lambda"));
    return p;
}

namespace {

json series_terms(const OrderedSeries& s) {
    json arr = json::array();
    for (const auto& [key, coeff] : s.coeffs())
        arr.push_back({{"h", key.first}, {"k", key.second}, {"coeff", to_json(coeff)}});
    return arr;
}

void load_terms(OrderedSeries& s, const json& arr) {
    for (const auto& t : arr)
        s.set(t.at("h").get<int>(), t.at("k").get<int>(),
              quaternion_from_json(t.at("coeff")));
}

} // namespace

json to_json(const SeriesMap& m) {
    return {{"degree", m.degree_bound()},
            {"first", series_terms(m.first)},
            {"second", series_terms(m.second)}};
}

SeriesMap series_map_from_json(const json& j) {
    SeriesMap m(j.at("degree").get<int>());
    load_terms(m.first, j.at("first"));
    load_terms(m.second, j.at("second"));
    return m;
}

json to_json(const PolyStem& stem) {
    json arr = json::array();
    for (const auto& t : stem.terms)
        arr.push_back({{"h", t.h}, {"k", t.k}, {"coeff", to_json(t.coeff)}});
    return arr;
}

PolyStem poly_stem_from_json(const json& j) {
    PolyStem stem;
    for (const auto& t : j)
        stem.terms.push_back(
            {t.at("h").get<int>(), t.at("k").get<int>(), quaternion_from_json(t.at("coeff"))});
    return stem;
}

json to_json(const AutReport& report) {
    json expected = json::array();
    for (int e : report.expected) expected.push_back(e);
    json sv = json::array();
    for (double s : report.singular_values) sv.push_back(s);
    return {{"params", to_json(report.params)},
            {"case", to_string(report.kase)},
            {"method", report.method},
            {"degree", report.degree},
            {"samples", report.samples},
            {"seed", report.seed},
            {"singular_values", sv},
            {"nullity", report.nullity},
            {"expected", expected},
            {"pass", report.pass}};
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_quaternion_csv(const Quaternion& q) {
    return format_double(q.w) + ";" + format_double(q.x) + ";" + format_double(q.y) + ";" +
           format_double(q.z);
}

std::string format_expected(const std::set<int>& expected) {
    std::string out = "{";
    bool first = true;
    for (int e : expected) {
        if (!first) out += "|";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

std::string aut_csv_header() { return "case,alpha,beta,lambda,p,nullity,expected,pass"; }

std::string aut_csv_row(const AutReport& r) {
    std::ostringstream os;
    os << to_string(r.kase) << "," << format_quaternion_csv(r.params.alpha) << ","
       << format_quaternion_csv(r.params.beta) << ","
       << format_quaternion_csv(r.params.lambda) << "," << r.params.p << "," << r.nullity
       << "," << format_expected(r.expected) << "," << (r.pass ? "true" : "false");
    return os.str();
}

std::string scan_csv_header() {
    return "lambda,case,nullity,expected,pass,slice_regular_family";
}

std::string scan_csv_row(const ScanRow& row) {
    std::ostringstream os;
    os << format_quaternion_csv(row.lambda) << "," << to_string(row.kase) << ","
       << row.report.nullity << "," << format_expected(row.report.expected) << ","
       << (row.report.pass ? "true" : "false") << ","
       << (row.slice_regular_family ? "true" : "false");
    return os.str();
}

Quaternion parse_quaternion(const std::string& text) {
    std::vector<double> parts;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ',')) {
        size_t used = 0;
        const double v = std::stod(token, &used);
        while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
            ++used;
        if (used != token.size())
            throw std::invalid_argument("bad quaternion component: '" + token + "'");
        parts.push_back(v);
    }
    if (parts.size() == 1) return {parts[0], 0, 0, 0};
    if (parts.size() == 4) return {parts[0], parts[1], parts[2], parts[3]};
    throw std::invalid_argument("quaternion must have 1 or 4 comma-separated components");
}

} // namespace sliceq
