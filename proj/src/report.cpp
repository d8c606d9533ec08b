#include "pcp/report.hpp"

#include <json.hpp>

namespace pcp {

namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string verdict_line(bool consistent, std::size_t failed, std::size_t checked) {
  if (consistent) return "CONSISTENT (" + std::to_string(checked) + " equations checked)\n";
  return "INCONSISTENT (" + std::to_string(failed) + " of " + std::to_string(checked) + " equations failed)\n";
}

std::string order_text(const BigInt& order) { return order == 0 ? "inf" : order.get_str(); }

ordered_json counts_json(const EquationCounts& c) {
  ordered_json j;
  j["enumerated"] = c.enumerated;
  j["evaluated"] = c.evaluated;
  j["skipped_by_weight"] = c.skipped_by_weight;
  return j;
}

template <typename Report, typename FailureFn>
std::string render(const Report& report, ReportFormat format, std::string_view kind, FailureFn failure_json) {
  if (format == ReportFormat::Text) {
    std::string out;
    for (const auto& f : report.failures) {
      auto j = failure_json(f);
      out += "FAIL " + to_string(f.id) + ": lhs " + j["lhs_nf"].template get<std::string>() + " != rhs " +
             j["rhs_nf"].template get<std::string>() + "\n";
    }
    return out + verdict_line(report.verdict, report.failures.size(), report.counts.evaluated);
  }
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["kind"] = kind;
  doc["mode"] = to_string(report.mode);
  doc["consistent"] = report.verdict;
  doc["failures"] = ordered_json::array();
  for (const auto& f : report.failures) doc["failures"].push_back(failure_json(f));
  doc["counts"] = counts_json(report.counts);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string render_report(const ConsistencyReport& report, ReportFormat format) {
  return render(report, format, "group", [](const EquationResult& r) {
    ordered_json j;
    j["tag"] = to_string(r.id.tag);
    j["indices"] = r.id.indices();
    j["lhs"] = to_string(r.lhs_word);
    j["rhs"] = to_string(r.rhs_word);
    j["lhs_nf"] = to_string(r.lhs_nf);
    j["rhs_nf"] = to_string(r.rhs_nf);
    return j;
  });
}

std::string render_report(const AlgebraConsistencyReport& report, ReportFormat format) {
  return render(report, format, "algebra", [](const AlgebraEquationResult& r) {
    ordered_json j;
    j["tag"] = to_string(r.id.tag);
    j["indices"] = r.id.indices();
    j["lhs"] = r.lhs_expr;
    j["rhs"] = r.rhs_expr;
    j["lhs_nf"] = to_string(r.lhs_nf);
    j["rhs_nf"] = to_string(r.rhs_nf);
    return j;
  });
}

std::string render_report(const OracleReport& report, ReportFormat format) {
  if (format == ReportFormat::Text) {
    std::string out;
    if (report.witness) {
      const auto& w = *report.witness;
      out += "WITNESS " + w.kind + " (";
      for (std::size_t i = 0; i < w.elements.size(); ++i) out += (i ? ", " : "") + w.elements[i];
      out += "): " + w.lhs + " != " + w.rhs + "\n";
    }
    out += std::string(report.verdict ? "CONSISTENT" : "INCONSISTENT") + " (order " + order_text(report.order) + ")\n";
    return out;
  }
  ordered_json doc;
  doc["schema"] = kSchemaVersion;
  doc["verdict"] = report.verdict;
  // Orders can exceed 64 bits in principle; keep them exact as strings only
  // when they do.
  if (report.order == 0)
    doc["order"] = "inf";
  else if (report.order.fits_slong_p())
    doc["order"] = report.order.get_si();
  else
    doc["order"] = report.order.get_str();
  if (report.witness) {
    ordered_json w;
    w["kind"] = report.witness->kind;
    w["elements"] = report.witness->elements;
    w["lhs"] = report.witness->lhs;
    w["rhs"] = report.witness->rhs;
    doc["witness"] = w;
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

}  // namespace pcp
