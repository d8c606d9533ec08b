#include "pcp/oracle.hpp"

#include <atomic>
#include <exception>
#include <limits>

#include "pcp/error.hpp"

namespace pcp {

namespace {

std::vector<std::size_t> radix(const GroupPresentation& p, const OracleOptions& options) {
  std::vector<std::size_t> r;
  BigInt total = 1;
  for (Gen i = 1; i <= p.size(); ++i) {
    if (p.order(i).is_infinite())
      throw Error(ErrorKind::InfiniteOrder, "g" + std::to_string(i) + " has infinite relative order");
    total *= p.order(i).value();
    if (total > options.cap)
      throw Error(ErrorKind::CapExceeded, "group order exceeds the cap of " + std::to_string(options.cap));
    r.push_back(p.order(i).value().get_ui());
  }
  return r;
}

std::vector<NormalWord> enumerate_elements(int n, const std::vector<std::size_t>& r) {
  std::size_t total = 1;
  for (auto x : r) total *= x;
  std::vector<NormalWord> out;
  out.reserve(total);
  std::vector<std::size_t> digits(r.size(), 0);
  for (std::size_t e = 0; e < total; ++e) {
    NormalWord w(n);
    for (std::size_t i = 0; i < digits.size(); ++i) w[static_cast<Gen>(i + 1)] = static_cast<unsigned long>(digits[i]);
    out.push_back(std::move(w));
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < r[i]) break;
      digits[i] = 0;
    }
  }
  return out;
}

MultiplicationTable empty_table(const GroupPresentation& p, const OracleOptions& options) {
  if (!p.has_derived()) throw std::invalid_argument("the oracle needs derived tables");
  MultiplicationTable t;
  t.elements = enumerate_elements(p.size(), radix(p, options));
  t.table.assign(t.order() * t.order(), 0);
  return t;
}

void fill_row(const GroupPresentation& p, MultiplicationTable& t, std::size_t u, std::uint64_t budget) {
  const std::size_t order = t.order();
  for (std::size_t v = 0; v < order; ++v)
    t.table[u * order + v] =
        static_cast<std::uint32_t>(element_index(p, multiply_normal(p, t.elements[u], t.elements[v], budget)));
}

}  // namespace

std::size_t element_index(const GroupPresentation& p, const NormalWord& w) {
  std::size_t index = 0;
  for (Gen i = 1; i <= p.size(); ++i) index = index * p.order(i).value().get_ui() + w[i].get_ui();
  return index;
}

MultiplicationTable build_table_serial(const GroupPresentation& p, const OracleOptions& options) {
  auto t = empty_table(p, options);
  for (std::size_t u = 0; u < t.order(); ++u) fill_row(p, t, u, options.budget);
  return t;
}

MultiplicationTable build_table_parallel(const GroupPresentation& p, const OracleOptions& options) {
  auto t = empty_table(p, options);
  const auto rows = static_cast<std::ptrdiff_t>(t.order());
  std::vector<std::exception_ptr> errors(t.order());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t u = 0; u < rows; ++u) {
    try {
      fill_row(p, t, static_cast<std::size_t>(u), options.budget);
    } catch (...) {
      errors[static_cast<std::size_t>(u)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return t;
}

MultiplicationTable build_table(const GroupPresentation& p, const OracleOptions& options) {
  return options.parallel ? build_table_parallel(p, options) : build_table_serial(p, options);
}

namespace {

std::optional<Triple> first_violation_in_row(const MultiplicationTable& t, std::size_t a) {
  const std::size_t n = t.order();
  for (std::size_t b = 0; b < n; ++b) {
    const std::size_t ab = t.at(a, b);
    for (std::size_t c = 0; c < n; ++c)
      if (t.at(ab, c) != t.at(a, t.at(b, c))) return Triple{a, b, c};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Triple> find_associativity_violation_serial(const MultiplicationTable& t) {
  for (std::size_t a = 0; a < t.order(); ++a)
    if (auto v = first_violation_in_row(t, a)) return v;
  return std::nullopt;
}

std::optional<Triple> find_associativity_violation_parallel(const MultiplicationTable& t) {
  const auto rows = static_cast<std::ptrdiff_t>(t.order());
  std::vector<std::optional<Triple>> found(t.order());
  std::atomic<std::ptrdiff_t> first_bad{std::numeric_limits<std::ptrdiff_t>::max()};
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t a = 0; a < rows; ++a) {
    if (a > first_bad.load(std::memory_order_relaxed)) continue;
    auto v = first_violation_in_row(t, static_cast<std::size_t>(a));
    if (!v) continue;
    found[static_cast<std::size_t>(a)] = v;
    auto seen = first_bad.load();
    while (a < seen && !first_bad.compare_exchange_weak(seen, a)) {
    }
  }
  for (auto& v : found)
    if (v) return v;
  return std::nullopt;
}

OracleReport verify_group_axioms(const GroupPresentation& p, const OracleOptions& options) {
  const auto t = build_table(p, options);
  const std::size_t n = t.order();
  OracleReport report;
  report.order = static_cast<unsigned long>(n);
  auto name = [&](std::size_t e) { return to_string(t.elements[e]); };
  auto fail = [&](std::string kind, std::vector<std::string> elements, std::string lhs, std::string rhs) {
    report.verdict = false;
    report.witness = OracleWitness{std::move(kind), std::move(elements), std::move(lhs), std::move(rhs)};
    return report;
  };

  // Element 0 is the empty word.
  for (std::size_t v = 0; v < n; ++v)
    if (t.at(0, v) != v || t.at(v, 0) != v) {
      auto bad = t.at(0, v) != v ? t.at(0, v) : t.at(v, 0);
      return fail("identity", {name(v)}, name(v), name(bad));
    }

  auto violation = options.parallel ? find_associativity_violation_parallel(t) : find_associativity_violation_serial(t);
  if (violation) {
    auto [a, b, c] = *violation;
    return fail("associativity", {name(a), name(b), name(c)}, name(t.at(t.at(a, b), c)), name(t.at(a, t.at(b, c))));
  }

  for (std::size_t u = 0; u < n; ++u) {
    bool has_inverse = false;
    for (std::size_t v = 0; v < n && !has_inverse; ++v) has_inverse = t.at(u, v) == 0 && t.at(v, u) == 0;
    if (!has_inverse) return fail("inverse", {name(u)}, name(u), "no two-sided inverse");
  }
  return report;
}

OracleReport verify_algebra_axioms(const AlgebraPresentation& p, int cap) {
  const int n = p.size();
  if (n > cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " basis elements");
  const auto ring = p.ring();

  // Element count of the module; zero stands for an infinite one.
  OracleReport report;
  report.order = 1;
  for (Gen i = 1; i <= n; ++i) {
    if (ring.kind() == RingKind::PrimeField)
      report.order *= BigInt(ring.characteristic());
    else if (p.order(i).is_finite())
      report.order *= p.order(i).value();
    else
      report.order = 0;
  }

  std::vector<NormalVector> basis;
  for (Gen g = 1; g <= n; ++g) basis.push_back(generator_vector(p, g));
  auto name = [](Gen g) { return "a" + std::to_string(g); };
  auto fail = [&](std::string kind, std::vector<std::string> elements, const NormalVector& lhs,
                  const NormalVector& rhs) {
    report.verdict = false;
    report.witness = OracleWitness{std::move(kind), std::move(elements), to_string(lhs), to_string(rhs)};
    return report;
  };

  for (Gen x = 1; x <= n; ++x)
    for (Gen y = 1; y <= n; ++y) {
      const auto xy = multiply(p, basis[x - 1], basis[y - 1]);
      for (Gen z = 1; z <= n; ++z) {
        auto left = multiply(p, xy, basis[z - 1]);
        auto right = multiply(p, basis[x - 1], multiply(p, basis[y - 1], basis[z - 1]));
        if (!(left == right)) return fail("associativity", {name(x), name(y), name(z)}, left, right);
      }
    }

  // r_x (a_x a_y) = (r_x a_x) a_y and r_y (a_x a_y) = a_x (r_y a_y) wherever
  // the relative order is finite.
  for (Gen x = 1; x <= n; ++x)
    for (Gen y = 1; y <= n; ++y) {
      const auto xy = multiply(p, basis[x - 1], basis[y - 1]);
      if (p.order(x).is_finite()) {
        Scalar rx(ring, mpq_class(p.order(x).value()));
        auto left = scalar_mul(p, rx, xy);
        auto right = multiply(p, scalar_mul(p, rx, basis[x - 1]), basis[y - 1]);
        if (!(left == right)) return fail("A2", {name(x), name(y)}, left, right);
      }
      if (p.order(y).is_finite()) {
        Scalar ry(ring, mpq_class(p.order(y).value()));
        auto left = scalar_mul(p, ry, xy);
        auto right = multiply(p, basis[x - 1], scalar_mul(p, ry, basis[y - 1]));
        if (!(left == right)) return fail("A3", {name(x), name(y)}, left, right);
      }
    }
  return report;
}

}  // namespace pcp
