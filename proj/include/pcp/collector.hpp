#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "pcp/error.hpp"
#include "pcp/presentation.hpp"
#include "pcp/word.hpp"

namespace pcp {

enum class RuleTag { FreeCancel, GR1, GR2, GR3, GR4, GR5, GR6 };

std::string_view to_string(RuleTag tag);

/// One rewrite: at letter offset `position`, the left side of `rule` was
/// replaced by its right side `repeat` times in a row. For pair rules
/// (GR2-GR5) `i` < `j` are the generators involved; for GR1, GR6 and
/// FreeCancel only `i` is set.
struct TraceStep {
  BigInt position;
  RuleTag rule;
  Gen i = 0;
  Gen j = 0;
  BigInt repeat = 1;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct CollectionTrace {
  std::vector<TraceStep> steps;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t budget, CollectionTrace partial)
      : Error(ErrorKind::BudgetExceeded,
              "collection did not finish within " + std::to_string(budget) + " steps"),
        partial_(std::move(partial)) {}

  const CollectionTrace& partial_trace() const noexcept { return partial_; }

 private:
  CollectionTrace partial_;
};

/// All engines perform the same steps and return the same result; they differ
/// only in speed. Auto runs the level engine and, for words it cannot take (a
/// finite-order inverse standing left of a lower generator, or exponents
/// beyond 64 bits), the in-place letter engine, then the reference.
enum class CollectEngine { Auto, Letter, Reference };

struct CollectOptions {
  std::uint64_t budget = kDefaultStepBudget;
  bool record_trace = false;  // forces the reference engine
  CollectEngine engine = CollectEngine::Auto;
};

struct Collected {
  NormalWord normal;
  CollectionTrace trace;  // empty unless record_trace
  std::uint64_t steps = 0;
};

/// No rewriting rule and no cancellation applies anywhere in w.
bool is_reduced(const GroupPresentation& p, const Word& w);

/// Collection to the left. Each step picks, among all applicable rules, the
/// one whose lowest involved generator is smallest, then the leftmost
/// occurrence, then FreeCancel > GR6 > GR1 > pair rules. Throws
/// BudgetExceeded carrying the partial trace.
Collected collect(const GroupPresentation& p, const Word& w, const CollectOptions& options = {});

/// The same collection, one rule application at a time with a scan of the
/// whole word per step. Slow; `collect` delegates to it when a trace is
/// requested, and tests compare the two.
Collected collect_reference(const GroupPresentation& p, const Word& w, const CollectOptions& options = {});

NormalWord multiply_normal(const GroupPresentation& p, const NormalWord& u, const NormalWord& v,
                           std::uint64_t budget = kDefaultStepBudget);

/// Collects the formal inverse of u.
NormalWord invert_normal(const GroupPresentation& p, const NormalWord& u,
                         std::uint64_t budget = kDefaultStepBudget);

/// Replays a trace letter by letter against the rule tables, checking that
/// each step's left side is present where the step claims. Returns the final
/// word; throws std::invalid_argument on a mismatch. Intended for words of at
/// most `max_letters` letters.
Word replay_trace(const GroupPresentation& p, const Word& w, const CollectionTrace& trace,
                  std::size_t max_letters = 1u << 20);

}  // namespace pcp
