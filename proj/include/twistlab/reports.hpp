#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "twistlab/ci_catalog.hpp"
#include "twistlab/lattice.hpp"
#include "twistlab/local_model.hpp"
#include "twistlab/monodromy.hpp"
#include "twistlab/quantum.hpp"
#include "twistlab/weyl.hpp"

namespace twistlab::reports {

using json = nlohmann::ordered_json;

inline json class_json(const HomologyClass& h) { return json(h.coords); }

inline json to_json(const ClassSet& s) {
    json classes = json::array();
    for (const auto& m : s.members) classes.push_back(class_json(m));
    return json{{"k", s.k},
                {"predicate", s.predicate},
                {"count", s.members.size()},
                {"classes", classes}};
}

inline std::string to_csv(const ClassSet& s) {
    std::string out = "# k=" + std::to_string(s.k) + " predicate=" + s.predicate +
                      " count=" + std::to_string(s.members.size()) + "\n";
    out += "L";
    for (int i = 1; i <= s.k; ++i) out += ",E" + std::to_string(i);
    out += "\n";
    for (const auto& m : s.members) {
        for (std::size_t i = 0; i < m.coords.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(m.coords[i]);
        }
        out += "\n";
    }
    return out;
}

inline json to_json(const ClosureResult& r, std::uint64_t cap) {
    return json{{"cap", cap}, {"cap_exceeded", r.cap_exceeded}, {"count", r.count}};
}

inline json to_json(const quantum::Star1Raw& r) {
    return json{{"value", class_json(r.value)},
                {"formula_valid", r.formula_valid},
                {"validity_note",
                 "sum over exceptional classes equals the first-order product "
                 "only for 5 <= k <= 8"}};
}

inline json to_json(const quantum::ObstructionReport& r) {
    json witnesses = json::array();
    for (const auto& [x, y] : r.witnesses)
        witnesses.push_back(json::array({class_json(x), class_json(y)}));
    json alpha2 = json::array();
    for (const auto& v : r.alpha2_substitutions) alpha2.push_back(v.num());
    return json{
        {"k", r.k},
        {"l", class_json(r.l)},
        {"c_k", r.c_k},
        {"invariant_form_dim", r.invariant_form_dim},
        {"dim_total", r.dim_total},
        {"dim_ideal", r.dim_ideal},
        {"dim_quotient", r.dim_quotient},
        {"dim_isotropic", r.dim_isotropic},
        {"violated", r.violated},
        {"witness_w", class_json(r.witness_w)},
        {"isotropy_witness_pairs", witnesses},
        {"alpha2_substitutions_checked", alpha2},
        {"provenance",
         json{{"computed",
               json::array({"c_k from K-perp proportionality over spanning pairs",
                            "invariant symmetric form dimension on K-perp",
                            "quotient and isotropic dimensions by exact rank over "
                            "the scalar field",
                            "isotropy identity x*y = -(x.y)/2 l*l on spanning pairs",
                            "independence of all dimensions from alpha2"})},
              {"assumed_inputs",
               json::array({"ideal dimension 2, realized as span{l, l*l}",
                            "first-order product formula valid for 5 <= k <= 8"})}}}};
}

inline json to_json(const quantum::GeneralTypeReport& r) {
    return json{
        {"b2", r.b2},
        {"dim_quotient", r.dim_quotient},
        {"dim_isotropic", r.dim_isotropic},
        {"violated", r.violated},
        {"provenance",
         json{{"computed", json::array({"dimension arithmetic of the quotient by "
                                        "span{l, [point]}",
                                        "isotropic bound comparison"})},
              {"assumed_inputs",
               json::array({"quantum product equals the intersection product on "
                            "minimal non-rational manifolds"})}}}};
}

inline json to_json(const quantum::EquivarianceReport& r) {
    json j{{"pass", r.pass}, {"checked", r.checked}};
    if (!r.pass) {
        j["failing_root"] = class_json(r.root);
        j["failing_x"] = class_json(r.x);
        j["failing_y"] = class_json(r.y);
    }
    return j;
}

inline json to_json(const quantum::ModuleIdentityReport& r) {
    json j{{"pass", r.pass},
           {"checked", r.checked},
           {"witness_w", class_json(r.witness_w)}};
    if (!r.pass) j["failure"] = r.failure;
    return j;
}

inline json to_json(const monodromy::VanishingTuple& t) {
    json cycles = json::array();
    for (const auto& c : t.cycles) cycles.push_back(class_json(c));
    return json{{"mode", monodromy::mode_name(t.lattice.mode())},
                {"rank", t.lattice.rank()},
                {"cycles", cycles}};
}

inline json to_json(const IntMat& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline json to_json(const ci::SurfaceVerdict& v) {
    json j{{"degrees", v.d.degrees.empty() ? std::vector<int>{1} : v.d.degrees},
           {"chi", v.chi},
           {"c1_coefficient", v.c1_coeff},
           {"b2", v.b2},
           {"category", ci::category_name(v.category)},
           {"tau_squared_nontrivial", v.tau_squared_nontrivial}};
    if (v.category == ci::SurfaceCategory::DelPezzoObstruction)
        j["del_pezzo_rank"] = v.del_pezzo_rank;
    return j;
}

inline std::string sweep_csv(const std::vector<ci::SurfaceVerdict>& rows) {
    std::string out =
        "degrees,chi,c1_coefficient,b2,category,tau_squared_nontrivial\n";
    for (const auto& v : rows) {
        std::string deg;
        for (std::size_t i = 0; i < v.d.degrees.size(); ++i) {
            if (i) deg += "|";
            deg += std::to_string(v.d.degrees[i]);
        }
        if (deg.empty()) deg = "1";
        out += deg + "," + std::to_string(v.chi) + "," + std::to_string(v.c1_coeff) +
               "," + std::to_string(v.b2) + "," + ci::category_name(v.category) +
               "," + (v.tau_squared_nontrivial ? "true" : "false") + "\n";
    }
    return out;
}

inline json verification_json(const std::string& check, std::size_t samples,
                              double max_residual, double tolerance, bool pass) {
    return json{{"check", check},
                {"samples", samples},
                {"max_residual", max_residual},
                {"tolerance", tolerance},
                {"pass", pass}};
}

} // namespace twistlab::reports
