#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcp/algebra.hpp"
#include "pcp/collector.hpp"
#include "pcp/presentation.hpp"

namespace pcp {

/// Brute-force consistency check for finite instances. It only shares the
/// collection functions with the rest of the library: no test equations, no
/// weights.

inline constexpr std::size_t kDefaultGroupCap = 4096;
inline constexpr int kDefaultAlgebraCap = 8;

struct MultiplicationTable {
  std::vector<NormalWord> elements;  // all exponent tuples, x_1 most significant
  std::vector<std::uint32_t> table;  // row-major, table[u * order + v] = index of u*v

  std::size_t order() const noexcept { return elements.size(); }
  std::uint32_t at(std::size_t u, std::size_t v) const { return table[u * elements.size() + v]; }
};

struct OracleOptions {
  std::size_t cap = kDefaultGroupCap;
  std::uint64_t budget = kDefaultStepBudget;
  bool parallel = true;
};

struct OracleWitness {
  std::string kind;                   // associativity, identity, inverse, A2, A3
  std::vector<std::string> elements;  // the offending elements
  std::string lhs;
  std::string rhs;
};

struct OracleReport {
  bool verdict = true;
  BigInt order = 0;  // element count; 0 when infinite (algebras over Z or Q)
  std::optional<OracleWitness> witness;
};

/// Position of a normal word in the lexicographic element list.
std::size_t element_index(const GroupPresentation& p, const NormalWord& w);

/// Throws InfiniteOrder, CapExceeded or BudgetExceeded.
MultiplicationTable build_table_serial(const GroupPresentation& p, const OracleOptions& options = {});
MultiplicationTable build_table_parallel(const GroupPresentation& p, const OracleOptions& options = {});
MultiplicationTable build_table(const GroupPresentation& p, const OracleOptions& options = {});

struct Triple {
  std::size_t a, b, c;
  friend bool operator==(const Triple&, const Triple&) = default;
};

/// First (a, b, c) in lexicographic order with (ab)c != a(bc).
std::optional<Triple> find_associativity_violation_serial(const MultiplicationTable& t);
std::optional<Triple> find_associativity_violation_parallel(const MultiplicationTable& t);

/// Builds the table on all prod(r_i) normal words and checks associativity,
/// the empty word as two-sided identity and two-sided inverses. Requires
/// derived tables.
OracleReport verify_group_axioms(const GroupPresentation& p, const OracleOptions& options = {});

/// Associativity on all basis triples, plus both power compatibility
/// identities on every basis pair whose relative order is finite. Over a
/// free module this is the whole associativity law by bilinearity, so no
/// finiteness is needed. n at most `cap` (CapExceeded).
OracleReport verify_algebra_axioms(const AlgebraPresentation& p, int cap = kDefaultAlgebraCap);

}  // namespace pcp
