#pragma once

#include <string>
#include <vector>

#include "clausen/identities.hpp"

namespace clausen::report {

// JSON report schema:
// {suite, version, cases:[{name, inputs, lhs, rhs, abs_residual,
//  rel_residual, tolerance, passed}], summary:{total, passed}}
// complex numbers serialize as {re, im}; key order is fixed so identical
// runs produce byte-identical files.

std::string case_json(const ident::IdentityReport& rep);
std::string suite_json(const std::string& suite, const std::vector<ident::IdentityReport>& cases);

// one CSV row per case: name, inputs, residual, pass/fail (stable columns);
// summarize() appends pass/fail counts as a footer row
std::string csv_header();
std::string csv_row(const ident::IdentityReport& rep);
std::string csv_table(const std::vector<ident::IdentityReport>& cases, bool footer);

// parse a suite JSON back into reports (for the report subcommand)
std::vector<ident::IdentityReport> parse_suite_json(const std::string& text);

} // namespace clausen::report
