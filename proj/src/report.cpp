#include "clausen/report.hpp"

#include <sstream>

#include <json.hpp>

namespace clausen::report {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1";

json cx_json(numerics::Cx z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json case_obj(const ident::IdentityReport& rep) {
    json inputs = json::object();
    for (const auto& [k, v] : rep.inputs) inputs[k] = cx_json(v);
    return json{{"name", rep.name},
                {"inputs", inputs},
                {"lhs", cx_json(rep.lhs)},
                {"rhs", cx_json(rep.rhs)},
                {"abs_residual", rep.abs_residual},
                {"rel_residual", rep.rel_residual},
                {"tolerance", rep.tolerance},
                {"passed", rep.passed}};
}

} // namespace

std::string case_json(const ident::IdentityReport& rep) { return case_obj(rep).dump(2); }

std::string suite_json(const std::string& suite, const std::vector<ident::IdentityReport>& cases) {
    json j;
    j["suite"] = suite;
    j["version"] = kVersion;
    j["cases"] = json::array();
    size_t passed = 0;
    for (const auto& c : cases) {
        j["cases"].push_back(case_obj(c));
        if (c.passed) passed++;
    }
    j["summary"] = json{{"total", cases.size()}, {"passed", passed}};
    return j.dump(2) + "\n";
}

std::string csv_header() { return "name,inputs,lhs_re,lhs_im,rhs_re,rhs_im,rel_residual,result"; }

std::string csv_row(const ident::IdentityReport& rep) {
    std::ostringstream os;
    os.precision(15);
    os << rep.name << ",\"";
    bool first = true;
    for (const auto& [k, v] : rep.inputs) {
        if (!first) os << "; ";
        first = false;
        os << k << "=" << v.real();
        if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    }
    os << "\"," << rep.lhs.real() << "," << rep.lhs.imag() << "," << rep.rhs.real() << ","
       << rep.rhs.imag() << "," << rep.rel_residual << "," << (rep.passed ? "pass" : "FAIL");
    return os.str();
}

std::string csv_table(const std::vector<ident::IdentityReport>& cases, bool footer) {
    std::ostringstream os;
    os << csv_header() << "\n";
    size_t passed = 0;
    for (const auto& c : cases) {
        os << csv_row(c) << "\n";
        if (c.passed) passed++;
    }
    if (footer)
        os << "summary,\"total=" << cases.size() << "; passed=" << passed << "\",,,,,,"
           << (passed == cases.size() ? "pass" : "FAIL") << "\n";
    return os.str();
}

std::vector<ident::IdentityReport> parse_suite_json(const std::string& text) {
    json j = json::parse(text);
    std::vector<ident::IdentityReport> out;
    for (const auto& c : j.at("cases")) {
        ident::IdentityReport rep;
        rep.name = c.at("name").get<std::string>();
        for (auto it = c.at("inputs").begin(); it != c.at("inputs").end(); ++it)
            rep.inputs.emplace_back(it.key(), numerics::Cx(it.value().at("re").get<double>(),
                                                           it.value().at("im").get<double>()));
        rep.lhs = numerics::Cx(c.at("lhs").at("re").get<double>(), c.at("lhs").at("im").get<double>());
        rep.rhs = numerics::Cx(c.at("rhs").at("re").get<double>(), c.at("rhs").at("im").get<double>());
        rep.abs_residual = c.at("abs_residual").get<double>();
        rep.rel_residual = c.at("rel_residual").get<double>();
        rep.tolerance = c.at("tolerance").get<double>();
        rep.passed = c.at("passed").get<bool>();
        out.push_back(std::move(rep));
    }
    return out;
}

} // namespace clausen::report
