#pragma once

/// Deterministic text and JSON rendering.  All arbitrary-precision integers
/// are emitted as decimal strings so consumers never lose precision.

#include <sstream>
#include <string>

#include <json.hpp>

#include "msx/bundlemaps.hpp"

namespace msx {

using Json = nlohmann::ordered_json;

inline Json json_rational(const Rational& r) {
    return Json{{"num", boost::multiprecision::numerator(r).str()},
                {"den", boost::multiprecision::denominator(r).str()}};
}

inline Json json_scalar(const Scalar& s) {
    return Json{{"num", s.num().str()}, {"den", s.den().str()}};
}

inline Json json_vform(const VForm& f) {
    Json terms = Json::array();
    const Chart& chart = *f.chart();
    for (const auto& [key, c] : f.terms()) {
        Json form = Json::array();
        for (int idx : key.first) form.push_back(chart.coord_name(idx));
        Json value = Json::array();
        for (int idx : key.second) value.push_back(idx);
        terms.push_back(Json{{"form", form}, {"value", value}, {"coeff", json_scalar(c)}});
    }
    return Json{{"chart", chart.name()},
                {"degree", f.form_degree()},
                {"value_degree", f.value_degree()},
                {"terms", terms}};
}

inline Json json_vfield(const VField& x) {
    Json comps = Json::object();
    for (const auto& [coord, s] : x.components()) comps[coord] = json_scalar(s);
    return Json{{"chart", x.chart()->name()}, {"components", comps}};
}

inline std::string text_vform(const VForm& f) {
    if (f.is_zero()) return "0";
    const Chart& chart = *f.chart();
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (size_t i = 0; i < key.first.size(); ++i)
            os << (i == 0 ? " d" : "^d") << chart.coord_name(key.first[i]);
        if (!key.second.empty()) {
            os << " [";
            for (size_t i = 0; i < key.second.size(); ++i) {
                if (i > 0) os << ",";
                int mu = key.second[i];
                if (mu <= chart.n()) os << "r" << mu;
                else os << "s" << (mu - chart.n());
            }
            os << "]";
        }
    }
    return os.str();
}

inline std::string text_vfield(const VField& x) {
    if (x.components().empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [coord, s] : x.components()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << s.str() << ") d/d" << coord;
    }
    return os.str();
}

}  // namespace msx
