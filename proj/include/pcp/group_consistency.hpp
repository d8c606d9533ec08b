#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pcp/collector.hpp"
#include "pcp/presentation.hpp"

namespace pcp {

enum class EquationTag { G1, G2, G3, G4, G5 };
enum class CheckMode { Full, NilpotentFiltered };

std::string_view to_string(EquationTag tag);
std::string_view to_string(CheckMode mode);

/// A test equation. G1 uses (i, j, k) with k > j > i; G2-G4 use (i, j) with
/// j > i; G5 uses i alone. Unused indices are zero.
struct TestEquationId {
  EquationTag tag;
  Gen i = 0;
  Gen j = 0;
  Gen k = 0;

  std::vector<Gen> indices() const;
  friend bool operator==(const TestEquationId&, const TestEquationId&) = default;
};

/// `G1(i=1,j=2,k=3)`
std::string to_string(const TestEquationId& id);

struct EquationResult {
  TestEquationId id;
  Word lhs_word;
  Word rhs_word;
  NormalWord lhs_nf;
  NormalWord rhs_nf;
  bool pass = false;
};

struct EquationCounts {
  std::size_t enumerated = 0;
  std::size_t evaluated = 0;
  std::size_t skipped_by_weight = 0;
};

struct ConsistencyReport {
  CheckMode mode = CheckMode::Full;
  bool verdict = true;
  std::vector<EquationResult> failures;
  EquationCounts counts;
};

struct CheckOptions {
  CheckMode mode = CheckMode::Full;
  bool fail_fast = false;
  std::uint64_t budget = kDefaultStepBudget;
  bool parallel = true;
  /// Families switched off here are neither enumerated nor counted. Only
  /// meant for irredundancy experiments.
  std::array<bool, 5> families{true, true, true, true, true};
};

/// Full mode: every id allowed by the side conditions, ordered G1 by (i,j,k),
/// then G2, G3, G4 by (i,j), then G5 by i. Filtered mode keeps those whose
/// weight sum is at most d; throws NotNilpotentForm.
std::vector<TestEquationId> enumerate_test_equations(const GroupPresentation& p, CheckMode mode);
std::vector<TestEquationId> enumerate_test_equations(const GroupPresentation& p, const WeightAssignment& w);

/// The two uncollected sides, built verbatim from the relation tables.
std::pair<Word, Word> equation_sides(const GroupPresentation& p, const TestEquationId& id);

EquationResult check_equation(const GroupPresentation& p, const TestEquationId& id,
                              std::uint64_t budget = kDefaultStepBudget);

/// Evaluates the ids one after another; stops at the first failure when
/// fail_fast is set.
std::vector<EquationResult> evaluate_equations_serial(const GroupPresentation& p,
                                                      const std::vector<TestEquationId>& ids,
                                                      std::uint64_t budget, bool fail_fast = false);
/// Same results as the serial version, computed with an OpenMP loop.
std::vector<EquationResult> evaluate_equations_parallel(const GroupPresentation& p,
                                                        const std::vector<TestEquationId>& ids,
                                                        std::uint64_t budget);

/// Requires derived tables (see `prepare`).
ConsistencyReport check_consistency(const GroupPresentation& p, const CheckOptions& options = {});

}  // namespace pcp
