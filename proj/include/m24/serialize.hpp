#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "m24/cusps.hpp"
#include "m24/jacseries.hpp"
#include "m24/poincare.hpp"

namespace m24 {

using json = nlohmann::ordered_json;

// fixed-precision float rendering so reports are byte-stable across runs
inline std::string fxd(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.15e", (double)v);
    return buf;
}

inline json qseries_json(const RatSeries& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back(json::array({k, rat_str(c.re), rat_str(c.im)}));
    return json{{"denom", s.denom()}, {"trunc", rat_str(s.trunc())}, {"terms", terms}};
}

inline json jacobi_json(const JacobiSeries& s) {
    json rows = json::array();
    for (const auto& [qk, row] : s.rows()) {
        json zr = json::array();
        for (const auto& [zk, c] : row)
            zr.push_back(json::array({zk, rat_str(c.re), rat_str(c.im)}));
        rows.push_back(json::array({qk, zr}));
    }
    json out{{"qdenom", s.qdenom()}, {"zdenom", s.zdenom()}, {"trunc", rat_str(s.trunc())},
             {"rows", rows}};
    if (s.band()) out["zband"] = *s.band() / s.zdenom();
    return out;
}

// matrix layout: header row of zeta exponents, one line per q exponent
inline std::string jacobi_csv(const JacobiSeries& s) {
    long zmin = 0, zmax = 0;
    for (const auto& [qk, row] : s.rows()) {
        if (row.empty()) continue;
        zmin = std::min(zmin, row.begin()->first);
        zmax = std::max(zmax, row.rbegin()->first);
    }
    std::string out = "q\\zeta";
    for (long z = zmin; z <= zmax; ++z) out += "," + rat_str(rq(z, s.zdenom()));
    out += "\n";
    for (const auto& [qk, row] : s.rows()) {
        out += rat_str(rq(qk, s.qdenom()));
        for (long z = zmin; z <= zmax; ++z) {
            auto it = row.find(z);
            out += ",";
            if (it != row.end()) {
                out += rat_str(it->second.re);
                if (it->second.im != 0) out += "+" + rat_str(it->second.im) + "i";
            }
        }
        out += "\n";
    }
    return out;
}

inline std::string qseries_csv(const RatSeries& s) {
    std::string out = "exponent,re,im\n";
    for (const auto& [k, c] : s.terms())
        out += rat_str(rq(k, s.denom())) + "," + rat_str(c.re) + "," + rat_str(c.im) + "\n";
    return out;
}

inline json complex_json(const CV& v) {
    return json::array({fxd(v.real()), fxd(v.imag())});
}

inline json trace_json(const ConvergenceTrace& tr, bool full = false) {
    json out;
    out["final"] = complex_json(tr.final);
    out["stabilization"] = fxd(tr.stabilization);
    out["count"] = tr.partials.size();
    if (full) {
        json p = json::array();
        for (const auto& [c, v] : tr.partials) p.push_back(json::array({c, complex_json(v)}));
        out["partials"] = p;
    } else if (!tr.partials.empty()) {
        json p = json::array();
        size_t step = std::max<size_t>(1, tr.partials.size() / 16);
        for (size_t i = 0; i < tr.partials.size(); i += step)
            p.push_back(json::array({tr.partials[i].first, complex_json(tr.partials[i].second)}));
        out["partials"] = p;
    }
    return out;
}

inline json class_json(const ConjugacyClassData& c) {
    return json{{"label", c.label}, {"chi", c.chi}, {"n", c.n}, {"h", c.h},
                {"level", c.level()}};
}

inline json cusp_check_json(const CuspCheck& chk) {
    json out;
    out["cusp"] = chk.row.cusp_c == 0 ? "oo"
                                      : (chk.row.cusp_a == 0
                                             ? "0"
                                             : std::to_string(chk.row.cusp_a) + "/" +
                                                   std::to_string(chk.row.cusp_c));
    out["width"] = chk.width;
    out["constant"] = rat_str(chk.computed_constant);
    out["claimed_constant"] = rat_str(chk.row.constant);
    out["valuation"] =
        chk.computed_valuation ? rat_str(*chk.computed_valuation) : std::string("oo");
    out["claimed_exponent"] = rat_str(chk.row.exponent);
    out["pass"] = chk.pass();
    return out;
}

// uniform verification record: {op, params, ref, values, pass}
inline json record(const std::string& op, json params, const std::string& ref, json values,
                   bool pass) {
    return json{{"op", op}, {"params", std::move(params)}, {"ref", ref},
                {"values", std::move(values)}, {"pass", pass}};
}

} // namespace m24
