#pragma once

#include <string>

#include "pcp/algebra.hpp"
#include "pcp/group_consistency.hpp"
#include "pcp/oracle.hpp"

namespace pcp {

enum class ReportFormat { Text, Json };

/// Text: one `FAIL <id>: lhs <nf> != rhs <nf>` line per failure followed by a
/// verdict line. JSON: a single object with a top-level `"schema": 1`.
/// Both renderings end in a newline and depend only on the report.
std::string render_report(const ConsistencyReport& report, ReportFormat format);
std::string render_report(const AlgebraConsistencyReport& report, ReportFormat format);
std::string render_report(const OracleReport& report, ReportFormat format);

}  // namespace pcp
