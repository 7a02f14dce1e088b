#ifndef DDS_IO_HPP
#define DDS_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dds/deviation.hpp"
#include "dds/grid.hpp"
#include "dds/oracle.hpp"

namespace dds {

using json = nlohmann::json;

/// 17 significant digits, fixed formatting, so identical configs produce
/// byte-identical files.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline void write_field_csv(const std::string& path, const VectorXd& z, const VectorXcd& v) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
    os << "z,re,im\n";
    for (int i = 0; i < z.size(); ++i)
        os << fmt17(z[i]) << ',' << fmt17(v[i].real()) << ',' << fmt17(v[i].imag()) << '\n';
}

struct SpectrumRow {
    int n;
    cplx e2;
    cplx e;
    std::string source;  // analytic14 | analytic38 | oracle
};

inline void write_spectrum_csv(const std::string& path, const std::vector<SpectrumRow>& rows) {
    std::ofstream os(path);
    if (!os) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
    os << "n,re_E2,im_E2,re_E,im_E,source\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt17(r.e2.real()) << ',' << fmt17(r.e2.imag()) << ','
           << fmt17(r.e.real()) << ',' << fmt17(r.e.imag()) << ',' << r.source << '\n';
}

inline json to_json(const DeviationEntry& d) {
    return json{{"equation", d.equation},   {"description", d.description},
                {"printed", d.printed},     {"computed", d.computed},
                {"magnitude", d.magnitude}, {"consistent", d.consistent}};
}

inline json to_json(const DeviationLedger& led) {
    json arr = json::array();
    for (const auto& d : led) arr.push_back(to_json(d));
    return arr;
}

inline json cplx_json(cplx v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

inline json to_json(const SpectrumReport& rep) {
    json out;
    out["analytic"] = json::array();
    for (const auto& a : rep.analytic)
        out["analytic"].push_back({{"n", a.n}, {"E2", cplx_json(a.e_squared)}, {"E", cplx_json(a.e)}});
    out["numeric"] = json::array();
    for (const auto& m : rep.numeric)
        out["numeric"].push_back({{"eigenvalue", cplx_json(m.value)},
                                  {"localization", m.localization},
                                  {"boundary_leak", m.boundary_leak},
                                  {"defective_cluster", m.defective_cluster}});
    out["matches"] = json::array();
    for (const auto& m : rep.matches)
        out["matches"].push_back({{"n", m.n},
                                  {"numeric_index", m.numeric_index},
                                  {"rel_residual", m.rel_residual},
                                  {"richardson", cplx_json(m.richardson)},
                                  {"improvement", m.improvement}});
    out["all_matched"] = rep.all_matched;
    out["rel_tol"] = rep.rel_tol;
    return out;
}

}  // namespace dds

#endif
