// pcpcheck: consistency checks for polycyclic group and nilpotent algebra
// presentations stored in .pcp files.
//
// Exit codes: 0 consistent or success, 1 inconsistent, 2 input error,
// 3 step budget or size cap exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "pcp/algebra.hpp"
#include "pcp/collector.hpp"
#include "pcp/error.hpp"
#include "pcp/group_consistency.hpp"
#include "pcp/oracle.hpp"
#include "pcp/presentation.hpp"
#include "pcp/report.hpp"
#include "pcp/text_format.hpp"

namespace {

using namespace pcp;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kInconsistent = 1, kInputError = 2, kLimitExceeded = 3 };

struct Settings {
  std::string in;
  std::string mode;  // empty: full for groups, nilpotent for algebras
  std::string format = "text";
  std::uint64_t budget = kDefaultStepBudget;
  bool fail_fast = false;
  bool serial = false;
  std::size_t cap = kDefaultGroupCap;
  int algebra_cap = kDefaultAlgebraCap;
  bool trace = false;
  std::string argument;  // word for collect, expression for normalize
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PresentationDocument load(const Settings& s) {
  std::string text;
  if (s.in.empty() || s.in == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream file(s.in, std::ios::binary);
    if (!file) throw InputError("cannot open " + s.in);
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  return parse_document(text);
}

ReportFormat format_of(const Settings& s) { return s.format == "json" ? ReportFormat::Json : ReportFormat::Text; }

CheckMode mode_of(const Settings& s, CheckMode fallback) {
  if (s.mode.empty()) return fallback;
  return s.mode == "nilpotent" ? CheckMode::NilpotentFiltered : CheckMode::Full;
}

GroupPresentation group_of(const PresentationDocument& doc, const Settings& s) {
  if (doc.kind != DocumentKind::Group) throw InputError("this command needs a group presentation");
  return prepare(to_group_raw(doc), s.budget);
}

AlgebraPresentation algebra_of(const PresentationDocument& doc) {
  if (doc.kind != DocumentKind::Algebra) throw InputError("this command needs an algebra presentation");
  return validate_algebra(to_algebra_raw(doc));
}

int run_check(const Settings& s) {
  auto doc = load(s);
  if (doc.kind == DocumentKind::Group) {
    CheckOptions opt;
    opt.mode = mode_of(s, CheckMode::Full);
    opt.fail_fast = s.fail_fast;
    opt.budget = s.budget;
    opt.parallel = !s.serial;
    auto report = check_consistency(group_of(doc, s), opt);
    std::cout << render_report(report, format_of(s));
    return report.verdict ? kOk : kInconsistent;
  }
  AlgebraCheckOptions opt;
  opt.mode = mode_of(s, CheckMode::NilpotentFiltered);
  opt.fail_fast = s.fail_fast;
  opt.parallel = !s.serial;
  auto report = check_algebra_consistency(algebra_of(doc), opt);
  std::cout << render_report(report, format_of(s));
  return report.verdict ? kOk : kInconsistent;
}

int run_collect(const Settings& s) {
  auto p = group_of(load(s), s);
  CollectOptions opt;
  opt.budget = s.budget;
  opt.record_trace = s.trace;
  const Word w = parse_word(s.argument, p.size());
  auto result = collect(p, w, opt);
  if (s.format == "json") {
    ordered_json doc;
    doc["schema"] = 1;
    doc["word"] = to_string(w);
    doc["normal_form"] = to_string(result.normal);
    doc["steps"] = result.steps;
    if (s.trace) {
      doc["trace"] = ordered_json::array();
      for (const auto& st : result.trace.steps) {
        ordered_json j;
        j["position"] = st.position.get_str();
        j["rule"] = to_string(st.rule);
        j["i"] = st.i;
        j["j"] = st.j;
        j["repeat"] = st.repeat.get_str();
        doc["trace"].push_back(j);
      }
    }
    std::cout << doc.dump(2) << '\n';
    return kOk;
  }
  if (s.trace) {
    for (const auto& st : result.trace.steps) {
      std::cout << "  " << to_string(st.rule) << " at " << st.position.get_str() << " i=" << st.i;
      if (st.j) std::cout << " j=" << st.j;
      if (st.repeat != 1) std::cout << " x" << st.repeat.get_str();
      std::cout << '\n';
    }
  }
  std::cout << to_string(result.normal) << '\n';
  return kOk;
}

std::string tail_suffix(const ExponentTail& t) {
  Word w = t.to_word();
  return w.empty() ? "" : "*" + to_string(w);
}

int run_derive(const Settings& s) {
  auto p = group_of(load(s), s);
  const int n = p.size();
  ordered_json doc;
  doc["schema"] = 1;
  doc["c"] = ordered_json::array();
  doc["d"] = ordered_json::array();
  doc["f"] = ordered_json::array();
  std::ostringstream text;
  for (Gen i = 1; i <= n; ++i) {
    if (const auto* f = p.f_tail(i)) {
      const BigInt r = p.order(i).value();
      text << "g" << i << "^-1 = " << to_string(Word::letter(i, r - 1) * f->to_word()) << '\n';
      doc["f"].push_back({{"i", i}, {"tail", to_string(f->to_word())}});
    }
    for (Gen j = i + 1; j <= n; ++j) {
      if (const auto* c = p.c_tail(i, j)) {
        text << "g" << j << "^-1*g" << i << " = g" << i << tail_suffix(*c) << '\n';
        doc["c"].push_back({{"i", i}, {"j", j}, {"tail", to_string(c->to_word())}});
      }
      if (const auto* d = p.d_tail(i, j)) {
        text << "g" << j << "^-1*g" << i << "^-1 = g" << i << "^-1" << tail_suffix(*d) << '\n';
        doc["d"].push_back({{"i", i}, {"j", j}, {"tail", to_string(d->to_word())}});
      }
    }
  }
  if (s.format == "json")
    std::cout << doc.dump(2) << '\n';
  else
    std::cout << text.str();
  return kOk;
}

int run_weights(const Settings& s) {
  auto doc = load(s);
  WeightAssignment w =
      doc.kind == DocumentKind::Group ? compute_weights(validate(to_group_raw(doc))) : compute_algebra_weights(algebra_of(doc));
  if (s.format == "json") {
    ordered_json j;
    j["schema"] = 1;
    j["weights"] = w.weights;
    j["d"] = w.d;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "w = (";
    for (std::size_t i = 0; i < w.weights.size(); ++i) std::cout << (i ? "," : "") << w.weights[i];
    std::cout << "), d = " << w.d << '\n';
  }
  return kOk;
}

int run_oracle(const Settings& s) {
  auto doc = load(s);
  OracleReport report;
  if (doc.kind == DocumentKind::Group) {
    OracleOptions opt;
    opt.cap = s.cap;
    opt.budget = s.budget;
    opt.parallel = !s.serial;
    report = verify_group_axioms(group_of(doc, s), opt);
  } else {
    report = verify_algebra_axioms(algebra_of(doc), s.algebra_cap);
  }
  std::cout << render_report(report, format_of(s));
  return report.verdict ? kOk : kInconsistent;
}

int run_normalize(const Settings& s) {
  auto p = algebra_of(load(s));
  auto v = normalize(p, parse_algebra_expression(s.argument, p));
  if (s.format == "json") {
    ordered_json j;
    j["schema"] = 1;
    j["expression"] = s.argument;
    j["normal_form"] = to_string(v);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << to_string(v) << '\n';
  }
  return kOk;
}

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--in", s.in, "presentation file (default: stdin)");
  cmd->add_option("--format", s.format, "output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--budget", s.budget, "collection step budget per word");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consistency checks for polycyclic and nilpotent algebra presentations"};
  app.require_subcommand(1);
  Settings s;

  auto* check = app.add_subcommand("check", "evaluate the test equations");
  add_common(check, s);
  check->add_option("--mode", s.mode, "full or nilpotent (weight-filtered)")
      ->check(CLI::IsMember({"full", "nilpotent"}));
  check->add_flag("--fail-fast", s.fail_fast, "stop at the first failing equation");
  check->add_flag("--serial", s.serial, "evaluate without OpenMP");

  auto* collect_cmd = app.add_subcommand("collect", "collect a word to normal form");
  add_common(collect_cmd, s);
  collect_cmd->add_option("word", s.argument, "word such as g3*g2^-1*g1")->required();
  collect_cmd->add_flag("--trace", s.trace, "print every rewriting step");

  auto* derive = app.add_subcommand("derive", "print the derived inverse relations");
  add_common(derive, s);

  auto* weights = app.add_subcommand("weights", "print the weight function");
  add_common(weights, s);

  auto* oracle = app.add_subcommand("oracle", "brute-force axiom check of a finite instance");
  add_common(oracle, s);
  oracle->add_option("--cap", s.cap, "largest group order to tabulate");
  oracle->add_option("--algebra-cap", s.algebra_cap, "largest algebra dimension to check");
  oracle->add_flag("--serial", s.serial, "build and scan the table without OpenMP");

  auto* norm = app.add_subcommand("normalize", "normal form of an algebra expression");
  add_common(norm, s);
  norm->add_option("expr", s.argument, "expression such as a1*(a1*a1)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return run_check(s);
    if (*collect_cmd) return run_collect(s);
    if (*derive) return run_derive(s);
    if (*weights) return run_weights(s);
    if (*oracle) return run_oracle(s);
    if (*norm) return run_normalize(s);
  } catch (const Error& e) {
    std::cerr << "pcpcheck: " << to_string(e.kind()) << ": " << e.what() << '\n';
    const bool limit = e.kind() == ErrorKind::BudgetExceeded || e.kind() == ErrorKind::CapExceeded;
    return limit ? kLimitExceeded : kInputError;
  } catch (const InputError& e) {
    std::cerr << "pcpcheck: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
