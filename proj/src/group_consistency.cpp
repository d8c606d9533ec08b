#include "pcp/group_consistency.hpp"

#include <exception>
#include <stdexcept>

#include "pcp/error.hpp"

namespace pcp {

std::string_view to_string(EquationTag tag) {
  static constexpr std::array<std::string_view, 5> names{"G1", "G2", "G3", "G4", "G5"};
  return names[static_cast<std::size_t>(tag)];
}

std::string_view to_string(CheckMode mode) { return mode == CheckMode::Full ? "full" : "nilpotent"; }

std::vector<Gen> TestEquationId::indices() const {
  switch (tag) {
    case EquationTag::G1: return {i, j, k};
    case EquationTag::G5: return {i};
    default: return {i, j};
  }
}

std::string to_string(const TestEquationId& id) {
  std::string s(to_string(id.tag));
  s += "(i=" + std::to_string(id.i);
  if (id.tag != EquationTag::G5) s += ",j=" + std::to_string(id.j);
  if (id.tag == EquationTag::G1) s += ",k=" + std::to_string(id.k);
  return s + ")";
}

namespace {

std::vector<TestEquationId> enumerate(const GroupPresentation& p, const WeightAssignment* w) {
  const int n = p.size();
  auto keep = [&](long sum) { return !w || sum <= w->d; };
  auto wt = [&](Gen g) { return w ? (*w)(g) : 0L; };
  auto finite = [&](Gen g) { return p.order(g).is_finite(); };

  std::vector<TestEquationId> ids;
  for (Gen i = 1; i <= n; ++i)
    for (Gen j = i + 1; j <= n; ++j)
      for (Gen k = j + 1; k <= n; ++k)
        if (keep(wt(i) + wt(j) + wt(k))) ids.push_back({EquationTag::G1, i, j, k});
  for (auto tag : {EquationTag::G2, EquationTag::G3, EquationTag::G4})
    for (Gen i = 1; i <= n; ++i)
      for (Gen j = i + 1; j <= n; ++j) {
        bool side = tag == EquationTag::G2 ? finite(j) : tag == EquationTag::G3 ? finite(i) : !finite(i);
        if (side && keep(wt(i) + wt(j))) ids.push_back({tag, i, j, 0});
      }
  for (Gen i = 1; i <= n; ++i)
    if (finite(i) && keep(2 * wt(i))) ids.push_back({EquationTag::G5, i, 0, 0});
  return ids;
}

}  // namespace

std::vector<TestEquationId> enumerate_test_equations(const GroupPresentation& p, CheckMode mode) {
  if (mode == CheckMode::Full) return enumerate(p, nullptr);
  auto w = compute_weights(p);
  return enumerate(p, &w);
}

std::vector<TestEquationId> enumerate_test_equations(const GroupPresentation& p, const WeightAssignment& w) {
  if (!is_nilpotent_form(p)) throw Error(ErrorKind::NotNilpotentForm, "presentation is not in nilpotent form");
  return enumerate(p, &w);
}

std::pair<Word, Word> equation_sides(const GroupPresentation& p, const TestEquationId& id) {
  const Gen i = id.i, j = id.j, k = id.k;
  auto g = [](Gen x, const BigInt& e = 1) { return Word::letter(x, e); };
  auto e_tail = [&](Gen x) -> const Word& {
    const Word* t = p.power_word(x);
    if (!t) throw std::invalid_argument("equation needs a finite relative order");
    return *t;
  };
  switch (id.tag) {
    case EquationTag::G1: return {g(j) * p.conj_word(j, k) * g(i), g(k) * g(j) * g(i)};
    case EquationTag::G2: return {g(j, p.order(j).value()) * g(i), e_tail(j) * g(i)};
    case EquationTag::G3: return {g(j) * g(i, p.order(i).value()), g(j) * e_tail(i)};
    case EquationTag::G4: return {g(j) * g(i, -1) * g(i), g(j)};
    case EquationTag::G5: return {g(i, p.order(i).value() + 1), g(i) * e_tail(i)};
  }
  throw std::logic_error("unknown equation tag");
}

EquationResult check_equation(const GroupPresentation& p, const TestEquationId& id, std::uint64_t budget) {
  auto [lhs, rhs] = equation_sides(p, id);
  EquationResult r{id, std::move(lhs), std::move(rhs), {}, {}, false};
  r.lhs_nf = collect(p, r.lhs_word, {budget, false}).normal;
  r.rhs_nf = collect(p, r.rhs_word, {budget, false}).normal;
  r.pass = r.lhs_nf == r.rhs_nf;
  return r;
}

std::vector<EquationResult> evaluate_equations_serial(const GroupPresentation& p,
                                                      const std::vector<TestEquationId>& ids,
                                                      std::uint64_t budget, bool fail_fast) {
  std::vector<EquationResult> results;
  results.reserve(ids.size());
  for (const auto& id : ids) {
    results.push_back(check_equation(p, id, budget));
    if (fail_fast && !results.back().pass) break;
  }
  return results;
}

std::vector<EquationResult> evaluate_equations_parallel(const GroupPresentation& p,
                                                        const std::vector<TestEquationId>& ids,
                                                        std::uint64_t budget) {
  const auto count = static_cast<std::ptrdiff_t>(ids.size());
  std::vector<EquationResult> results(ids.size());
  std::vector<std::exception_ptr> errors(ids.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    auto u = static_cast<std::size_t>(t);
    try {
      results[u] = check_equation(p, ids[u], budget);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  // Rethrow the error of the earliest equation so failures do not depend on scheduling.
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

ConsistencyReport check_consistency(const GroupPresentation& p, const CheckOptions& options) {
  if (!p.has_derived()) throw std::invalid_argument("check_consistency needs derived tables");

  auto all = enumerate_test_equations(p, CheckMode::Full);
  auto ids = options.mode == CheckMode::Full ? all : enumerate_test_equations(p, CheckMode::NilpotentFiltered);
  auto enabled = [&](const TestEquationId& id) { return options.families[static_cast<std::size_t>(id.tag)]; };
  std::erase_if(all, [&](const auto& id) { return !enabled(id); });
  std::erase_if(ids, [&](const auto& id) { return !enabled(id); });

  ConsistencyReport report;
  report.mode = options.mode;
  report.counts.enumerated = ids.size();
  report.counts.skipped_by_weight = all.size() - ids.size();

  auto results = options.fail_fast || !options.parallel
                     ? evaluate_equations_serial(p, ids, options.budget, options.fail_fast)
                     : evaluate_equations_parallel(p, ids, options.budget);
  report.counts.evaluated = results.size();
  for (auto& r : results)
    if (!r.pass) report.failures.push_back(std::move(r));
  report.verdict = report.failures.empty();
  return report;
}

}  // namespace pcp
