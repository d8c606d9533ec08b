#include "pcp/algebra.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <stdexcept>

#include "pcp/error.hpp"

namespace pcp {

namespace {

std::string a_name(Gen g) { return "a" + std::to_string(g); }

std::vector<Scalar> dense_row(const RawAlgebraPresentation& raw, const std::vector<RelativeOrder>& orders,
                              const LinearCombination& comb, Gen above, const std::string& relation) {
  std::vector<Scalar> row(static_cast<std::size_t>(raw.n), Scalar(raw.ring));
  Gen previous = above;
  for (const auto& [k, c] : comb) {
    if (k <= previous || k > raw.n)
      throw Error(ErrorKind::BadIndex, relation + ": " + a_name(k) + " must lie in " + a_name(previous + 1) +
                                           ".." + a_name(raw.n) + " in ascending order");
    previous = k;
    if (!(c.ring() == raw.ring))
      throw Error(ErrorKind::RingMismatch, relation + ": coefficient from " + to_string(c.ring()));
    const auto& r = orders[static_cast<std::size_t>(k - 1)];
    if (r.is_finite() && (c.value() < 0 || c.value() >= r.value()))
      throw Error(ErrorKind::ExponentOutOfRange, relation + ": coefficient " + to_string(c) + " of " + a_name(k) +
                                                     " outside [0, " + r.value().get_str() + ")");
    row[static_cast<std::size_t>(k - 1)] = c;
  }
  return row;
}

}  // namespace

AlgebraPresentation validate_algebra(const RawAlgebraPresentation& raw) {
  if (raw.n < 0) throw Error(ErrorKind::BadIndex, "negative generator count");
  if (raw.orders.size() > static_cast<std::size_t>(raw.n))
    throw Error(ErrorKind::BadIndex, "more relative orders than generators");

  const int n = raw.n;
  AlgebraPresentation p(n, raw.ring);
  p.orders_.assign(static_cast<std::size_t>(n), RelativeOrder::infinity());
  std::copy(raw.orders.begin(), raw.orders.end(), p.orders_.begin());
  for (Gen i = 1; i <= n; ++i)
    if (p.order(i).is_finite() && raw.ring.is_field())
      throw Error(ErrorKind::UnsupportedRing, "finite relative order of " + a_name(i) + " over the field " +
                                                  to_string(raw.ring));

  p.power_.assign(static_cast<std::size_t>(n), {});
  for (const auto& [i, comb] : raw.power) {
    if (i < 1 || i > n) throw Error(ErrorKind::BadIndex, "power relation for unknown generator " + a_name(i));
    if (p.order(i).is_infinite())
      throw Error(ErrorKind::MissingRelation, "power relation given for " + a_name(i) + " of infinite order");
  }
  for (Gen i = 1; i <= n; ++i) {
    if (p.order(i).is_infinite()) continue;
    auto it = raw.power.find(i);
    p.power_[static_cast<std::size_t>(i - 1)] =
        it == raw.power.end() ? std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(raw.ring))
                              : dense_row(raw, p.orders_, it->second, i, "power relation of " + a_name(i));
  }

  for (const auto& [key, comb] : raw.products)
    if (key.first < 1 || key.first > n || key.second < 1 || key.second > n)
      throw Error(ErrorKind::BadIndex, "product relation " + a_name(key.first) + "*" + a_name(key.second) +
                                           " names an unknown generator");
  p.products_.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (Gen x = 1; x <= n; ++x)
    for (Gen y = 1; y <= n; ++y) {
      auto it = raw.products.find({x, y});
      p.products_.push_back(it == raw.products.end()
                                ? std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(raw.ring))
                                : dense_row(raw, p.orders_, it->second, std::max(x, y),
                                            "product " + a_name(x) + "*" + a_name(y)));
    }
  return p;
}

namespace {

LinearCombination sparse(const std::vector<Scalar>& row) {
  LinearCombination out;
  for (std::size_t k = 0; k < row.size(); ++k)
    if (!row[k].is_zero()) out.emplace_back(static_cast<Gen>(k + 1), row[k]);
  return out;
}

}  // namespace

RawAlgebraPresentation to_raw(const AlgebraPresentation& p) {
  RawAlgebraPresentation raw;
  raw.n = p.size();
  raw.ring = p.ring();
  for (Gen i = 1; i <= p.size(); ++i) {
    raw.orders.push_back(p.order(i));
    if (const auto* row = p.power_row(i)) raw.power[i] = sparse(*row);
  }
  for (Gen x = 1; x <= p.size(); ++x)
    for (Gen y = 1; y <= p.size(); ++y)
      if (auto comb = sparse(p.product(x, y)); !comb.empty()) raw.products[{x, y}] = std::move(comb);
  return raw;
}

FreeElement FreeElement::generator(RingDescriptor ring, Gen g) {
  FreeElement e(ring);
  e.add_term(Scalar(ring, 1), {g});
  return e;
}

void FreeElement::add_term(Scalar coef, std::vector<Gen> word) {
  if (!(coef.ring() == ring_)) throw Error(ErrorKind::RingMismatch, "term coefficient from another ring");
  if (word.empty()) throw std::invalid_argument("free algebra terms need a non-empty word");
  if (coef.is_zero()) return;
  terms_.push_back({std::move(coef), std::move(word)});
}

FreeElement& FreeElement::operator+=(const FreeElement& other) {
  for (const auto& t : other.terms_) add_term(t.coef, t.word);
  return *this;
}

FreeElement operator*(const Scalar& lambda, const FreeElement& e) {
  FreeElement out(e.ring_);
  for (const auto& t : e.terms_) out.add_term(mul(lambda, t.coef), t.word);
  return out;
}

FreeElement operator*(const FreeElement& a, const FreeElement& b) {
  if (!(a.ring_ == b.ring_)) throw Error(ErrorKind::RingMismatch, "product of elements over different rings");
  FreeElement out(a.ring_);
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      std::vector<Gen> word = s.word;
      word.insert(word.end(), t.word.begin(), t.word.end());
      out.add_term(mul(s.coef, t.coef), std::move(word));
    }
  return out;
}

bool NormalVector::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& s) { return s.is_zero(); });
}

FreeElement NormalVector::to_free(RingDescriptor ring) const {
  FreeElement e(ring);
  for (Gen g = 1; g <= size(); ++g) e.add_term((*this)[g], {g});
  return e;
}

std::string to_string(const NormalVector& v) {
  std::ostringstream out;
  bool first = true;
  for (Gen g = 1; g <= v.size(); ++g) {
    if (v[g].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (!v[g].is_one()) out << to_string(v[g]) << '*';
    out << 'a' << g;
  }
  return first ? "0" : out.str();
}

NormalVector normalize(const AlgebraPresentation& p, const FreeElement& e) {
  const int n = p.size();
  const RingDescriptor ring = p.ring();
  if (!(e.ring() == ring)) throw Error(ErrorKind::RingMismatch, "element and presentation use different rings");

  NormalVector acc(ring, n);
  std::vector<Term> pending(e.terms().rbegin(), e.terms().rend());
  while (!pending.empty()) {
    Term t = std::move(pending.back());
    pending.pop_back();
    for (Gen g : t.word)
      if (g < 1 || g > n) throw Error(ErrorKind::BadIndex, "unknown generator " + a_name(g));
    if (t.word.size() == 1) {
      acc[t.word[0]] = add(acc[t.word[0]], t.coef);
      continue;
    }
    // a_x a_y at the front becomes a combination of single letters.
    const auto& row = p.product(t.word[0], t.word[1]);
    for (Gen k = n; k >= 1; --k) {
      const Scalar& c = row[static_cast<std::size_t>(k - 1)];
      if (c.is_zero()) continue;
      std::vector<Gen> word{k};
      word.insert(word.end(), t.word.begin() + 2, t.word.end());
      pending.push_back({mul(t.coef, c), std::move(word)});
    }
  }

  for (Gen i = 1; i <= n; ++i) {
    const auto* e_row = p.power_row(i);
    if (!e_row) continue;
    auto [q, rem] = reduce_mod_order(acc[i], p.order(i));
    acc[i] = rem;
    if (q.is_zero()) continue;
    for (Gen k = i + 1; k <= n; ++k) acc[k] = add(acc[k], mul(q, (*e_row)[static_cast<std::size_t>(k - 1)]));
  }
  return acc;
}

NormalVector generator_vector(const AlgebraPresentation& p, Gen g) {
  return normalize(p, FreeElement::generator(p.ring(), g));
}

NormalVector add(const AlgebraPresentation& p, const NormalVector& u, const NormalVector& v) {
  return normalize(p, u.to_free(p.ring()) + v.to_free(p.ring()));
}

NormalVector scalar_mul(const AlgebraPresentation& p, const Scalar& lambda, const NormalVector& u) {
  return normalize(p, lambda * u.to_free(p.ring()));
}

NormalVector multiply(const AlgebraPresentation& p, const NormalVector& u, const NormalVector& v) {
  return normalize(p, u.to_free(p.ring()) * v.to_free(p.ring()));
}

WeightAssignment compute_algebra_weights(const AlgebraPresentation& p) {
  const int n = p.size();
  WeightAssignment w;
  w.weights.assign(static_cast<std::size_t>(n), 1);
  auto raise = [&](Gen k, long bound) {
    auto& slot = w.weights[static_cast<std::size_t>(k - 1)];
    if (slot >= bound) return false;
    slot = bound;
    return true;
  };
  for (int round = 0;; ++round) {
    if (round > n) throw Error(ErrorKind::WeightDivergence, "weight constraints have no finite solution");
    bool changed = false;
    for (Gen i = 1; i <= n; ++i)
      if (const auto* row = p.power_row(i))
        for (Gen k = 1; k <= n; ++k)
          if (!(*row)[static_cast<std::size_t>(k - 1)].is_zero()) changed |= raise(k, w(i));
    for (Gen x = 1; x <= n; ++x)
      for (Gen y = 1; y <= n; ++y) {
        const auto& row = p.product(x, y);
        for (Gen k = 1; k <= n; ++k)
          if (!row[static_cast<std::size_t>(k - 1)].is_zero()) changed |= raise(k, w(x) + w(y));
      }
    if (!changed) break;
  }
  w.d = w.weights.empty() ? 0 : *std::max_element(w.weights.begin(), w.weights.end());
  return w;
}

std::string_view to_string(AlgebraTag tag) {
  static constexpr std::array<std::string_view, 3> names{"A1", "A2", "A3"};
  return names[static_cast<std::size_t>(tag)];
}

std::vector<Gen> AlgebraTestEquationId::indices() const {
  if (tag == AlgebraTag::A1) return {i, j, k};
  return {i, j};
}

std::string to_string(const AlgebraTestEquationId& id) {
  std::string s(to_string(id.tag));
  s += "(i=" + std::to_string(id.i) + ",j=" + std::to_string(id.j);
  if (id.tag == AlgebraTag::A1) s += ",k=" + std::to_string(id.k);
  return s + ")";
}

std::vector<AlgebraTestEquationId> enumerate_algebra_test_equations(const AlgebraPresentation& p,
                                                                    const WeightAssignment* w) {
  const int n = p.size();
  auto keep = [&](long sum) { return !w || sum <= w->d; };
  auto wt = [&](Gen g) { return w ? (*w)(g) : 0L; };

  std::vector<AlgebraTestEquationId> ids;
  for (Gen i = 1; i <= n; ++i)
    for (Gen j = 1; j <= n; ++j)
      for (Gen k = 1; k <= n; ++k)
        if (keep(wt(i) + wt(j) + wt(k))) ids.push_back({AlgebraTag::A1, i, j, k});
  for (auto tag : {AlgebraTag::A2, AlgebraTag::A3})
    for (Gen i = 1; i <= n; ++i)
      for (Gen j = 1; j <= n; ++j) {
        Gen finite_one = tag == AlgebraTag::A2 ? j : i;
        if (p.order(finite_one).is_finite() && keep(wt(i) + wt(j))) ids.push_back({tag, i, j, 0});
      }
  return ids;
}

AlgebraEquationResult check_algebra_equation(const AlgebraPresentation& p, const AlgebraTestEquationId& id) {
  const auto ring = p.ring();
  auto a = [&](Gen g) { return FreeElement::generator(ring, g); };
  auto c = [&](const FreeElement& e) { return normalize(p, e).to_free(ring); };
  auto name = [](Gen g) { return "a" + std::to_string(g); };
  const Gen i = id.i, j = id.j, k = id.k;

  AlgebraEquationResult r{id, {}, {}, {}, {}, false};
  switch (id.tag) {
    case AlgebraTag::A1:
      r.lhs_expr = name(k) + "*(" + name(j) + "*" + name(i) + ")";
      r.rhs_expr = "(" + name(k) + "*" + name(j) + ")*" + name(i);
      r.lhs_nf = normalize(p, a(k) * c(a(j) * a(i)));
      r.rhs_nf = normalize(p, c(a(k) * a(j)) * a(i));
      break;
    case AlgebraTag::A2: {
      const auto& rj = p.order(j).value();
      Scalar order(ring, mpq_class(rj));
      r.lhs_expr = rj.get_str() + "*(" + name(j) + "*" + name(i) + ")";
      r.rhs_expr = "(" + rj.get_str() + "*" + name(j) + ")*" + name(i);
      r.lhs_nf = normalize(p, order * c(a(j) * a(i)));
      r.rhs_nf = normalize(p, c(order * a(j)) * a(i));
      break;
    }
    case AlgebraTag::A3: {
      const auto& ri = p.order(i).value();
      Scalar order(ring, mpq_class(ri));
      r.lhs_expr = ri.get_str() + "*(" + name(j) + "*" + name(i) + ")";
      r.rhs_expr = name(j) + "*(" + ri.get_str() + "*" + name(i) + ")";
      r.lhs_nf = normalize(p, order * c(a(j) * a(i)));
      r.rhs_nf = normalize(p, a(j) * c(order * a(i)));
      break;
    }
  }
  r.pass = r.lhs_nf == r.rhs_nf;
  return r;
}

std::vector<AlgebraEquationResult> evaluate_algebra_equations_serial(
    const AlgebraPresentation& p, const std::vector<AlgebraTestEquationId>& ids, bool fail_fast) {
  std::vector<AlgebraEquationResult> results;
  results.reserve(ids.size());
  for (const auto& id : ids) {
    results.push_back(check_algebra_equation(p, id));
    if (fail_fast && !results.back().pass) break;
  }
  return results;
}

std::vector<AlgebraEquationResult> evaluate_algebra_equations_parallel(
    const AlgebraPresentation& p, const std::vector<AlgebraTestEquationId>& ids) {
  const auto count = static_cast<std::ptrdiff_t>(ids.size());
  std::vector<AlgebraEquationResult> results(ids.size());
  std::vector<std::exception_ptr> errors(ids.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    auto u = static_cast<std::size_t>(t);
    try {
      results[u] = check_algebra_equation(p, ids[u]);
    } catch (...) {
      errors[u] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

AlgebraConsistencyReport check_algebra_consistency(const AlgebraPresentation& p,
                                                   const AlgebraCheckOptions& options) {
  auto all = enumerate_algebra_test_equations(p, nullptr);
  std::vector<AlgebraTestEquationId> ids;
  if (options.mode == CheckMode::Full) {
    ids = all;
  } else {
    auto w = compute_algebra_weights(p);
    ids = enumerate_algebra_test_equations(p, &w);
  }
  auto disabled = [&](const auto& id) { return !options.families[static_cast<std::size_t>(id.tag)]; };
  std::erase_if(all, disabled);
  std::erase_if(ids, disabled);

  AlgebraConsistencyReport report;
  report.mode = options.mode;
  report.counts.enumerated = ids.size();
  report.counts.skipped_by_weight = all.size() - ids.size();
  auto results = options.fail_fast || !options.parallel ? evaluate_algebra_equations_serial(p, ids, options.fail_fast)
                                                        : evaluate_algebra_equations_parallel(p, ids);
  report.counts.evaluated = results.size();
  for (auto& r : results)
    if (!r.pass) report.failures.push_back(std::move(r));
  report.verdict = report.failures.empty();
  return report;
}

}  // namespace pcp
