#include "pcp/presentation.hpp"

#include <algorithm>
#include <stdexcept>

#include "pcp/collector.hpp"
#include "pcp/error.hpp"

namespace pcp {

RelativeOrder::RelativeOrder(BigInt value) : value_(std::move(value)) {
  if (*value_ < 1)
    throw Error(ErrorKind::ExponentOutOfRange, "relative order must be positive, got " + value_->get_str());
}

std::string to_string(const RelativeOrder& r) { return r.is_finite() ? r.value().get_str() : "inf"; }

BigInt ExponentTail::at(Gen k) const {
  if (k < start_) return 0;
  auto offset = static_cast<std::size_t>(k - start_);
  return offset < exps_.size() ? exps_[offset] : BigInt(0);
}

bool ExponentTail::is_trivial() const {
  return std::all_of(exps_.begin(), exps_.end(), [](const BigInt& x) { return x == 0; });
}

Word ExponentTail::to_word() const {
  Word w;
  for (std::size_t k = 0; k < exps_.size(); ++k) w.append(start_ + static_cast<Gen>(k), exps_[k]);
  return w;
}

// Tails compare by the exponents they denote, so a zero-padded tail equals a
// shorter one.
bool operator==(const ExponentTail& a, const ExponentTail& b) {
  Gen lo = std::min(a.start_, b.start_);
  Gen hi = std::max(a.start_ + static_cast<Gen>(a.exps_.size()), b.start_ + static_cast<Gen>(b.exps_.size()));
  for (Gen k = lo; k < hi; ++k)
    if (a.at(k) != b.at(k)) return false;
  return true;
}

void GroupPresentation::resize(int n) {
  n_ = n;
  auto un = static_cast<std::size_t>(n);
  orders_.assign(un, RelativeOrder::infinity());
  for (auto* v : {&power_, &f_}) v->assign(un, std::nullopt);
  for (auto* v : {&conj_, &conjinv_, &c_, &d_}) v->assign(un * un, std::nullopt);
  for (auto* v : {&power_w_, &f_w_}) v->assign(un, Word{});
  for (auto* v : {&conj_w_, &conjinv_w_, &c_w_, &d_w_}) v->assign(un * un, Word{});
}

void GroupPresentation::install_c(Gen i, Gen j, ExponentTail t) {
  c_w_[pair(i, j)] = t.to_word();
  c_[pair(i, j)] = std::move(t);
}

void GroupPresentation::install_d(Gen i, Gen j, ExponentTail t) {
  d_w_[pair(i, j)] = t.to_word();
  d_[pair(i, j)] = std::move(t);
}

void GroupPresentation::install_f(Gen i, ExponentTail t) {
  f_w_[idx(i)] = t.to_word();
  f_[idx(i)] = std::move(t);
}

DerivedTables GroupPresentation::derived() const {
  DerivedTables t;
  for (Gen i = 1; i <= n_; ++i) {
    if (f_[idx(i)]) t.f.emplace(i, *f_[idx(i)]);
    for (Gen j = i + 1; j <= n_; ++j) {
      if (c_[pair(i, j)]) t.c.emplace(std::pair{i, j}, *c_[pair(i, j)]);
      if (d_[pair(i, j)]) t.d.emplace(std::pair{i, j}, *d_[pair(i, j)]);
    }
  }
  return t;
}

bool operator==(const GroupPresentation& a, const GroupPresentation& b) {
  return a.n_ == b.n_ && a.orders_ == b.orders_ && a.power_ == b.power_ && a.conj_ == b.conj_ &&
         a.conjinv_ == b.conjinv_ && a.c_ == b.c_ && a.d_ == b.d_ && a.f_ == b.f_ &&
         a.derived_complete_ == b.derived_complete_;
}

namespace {

std::string gen_name(Gen g) { return "g" + std::to_string(g); }

ExponentTail make_tail(const std::vector<RelativeOrder>& orders, int n, Gen i, const FactorList& factors,
                       const std::string& relation) {
  std::vector<BigInt> exps(static_cast<std::size_t>(n - i));
  Gen previous = i;
  for (const auto& f : factors) {
    if (f.gen <= previous || f.gen > n)
      throw Error(ErrorKind::BadIndex, relation + ": tail generator " + gen_name(f.gen) +
                                           " must lie in " + gen_name(previous + 1) + ".." + gen_name(n) +
                                           " in ascending order");
    previous = f.gen;
    const auto& r = orders[static_cast<std::size_t>(f.gen - 1)];
    if (r.is_finite() && (f.exp < 0 || f.exp >= r.value()))
      throw Error(ErrorKind::ExponentOutOfRange, relation + ": exponent " + f.exp.get_str() + " of " +
                                                     gen_name(f.gen) + " outside [0, " + r.value().get_str() +
                                                     ")");
    exps[static_cast<std::size_t>(f.gen - i - 1)] = f.exp;
  }
  return ExponentTail(i + 1, std::move(exps));
}

ExponentTail commuting_tail(int n, Gen i, Gen j) {
  std::vector<BigInt> exps(static_cast<std::size_t>(n - i));
  exps[static_cast<std::size_t>(j - i - 1)] = 1;
  return ExponentTail(i + 1, std::move(exps));
}

void check_pair(int n, Gen i, Gen j, const char* what) {
  if (i < 1 || j > n || i >= j)
    throw Error(ErrorKind::BadIndex, std::string(what) + " relation (" + std::to_string(i) + ", " +
                                         std::to_string(j) + ") needs 1 <= i < j <= " + std::to_string(n));
}

ExponentTail tail_from_normal(const NormalWord& w, Gen i) {
  std::vector<BigInt> exps;
  for (Gen k = 1; k <= w.size(); ++k) {
    if (k <= i) {
      if (w[k] != 0) throw std::logic_error("inverse tail left the sub-presentation");
      continue;
    }
    exps.push_back(w[k]);
  }
  return ExponentTail(i + 1, std::move(exps));
}

}  // namespace

GroupPresentation validate(const RawGroupPresentation& raw) {
  if (raw.n < 0) throw Error(ErrorKind::BadIndex, "negative generator count");
  const int n = raw.n;
  if (raw.orders.size() > static_cast<std::size_t>(n))
    throw Error(ErrorKind::BadIndex, "more relative orders than generators");

  GroupPresentation p;
  p.resize(n);
  std::copy(raw.orders.begin(), raw.orders.end(), p.orders_.begin());

  for (const auto& [i, factors] : raw.power) {
    if (i < 1 || i > n) throw Error(ErrorKind::BadIndex, "power relation for unknown generator " + gen_name(i));
    if (p.order(i).is_infinite())
      throw Error(ErrorKind::MissingRelation, "power relation given for " + gen_name(i) + " of infinite order");
  }
  for (const auto& [key, factors] : raw.conj) check_pair(n, key.first, key.second, "conjugate");
  for (const auto& [key, factors] : raw.conjinv) {
    check_pair(n, key.first, key.second, "inverse conjugate");
    if (p.order(key.first).is_finite())
      throw Error(ErrorKind::MissingRelation, "inverse conjugate relation by " + gen_name(key.first) +
                                                  " requires infinite relative order");
  }

  for (Gen i = 1; i <= n; ++i) {
    if (p.order(i).is_finite()) {
      auto it = raw.power.find(i);
      auto tail = it == raw.power.end()
                      ? ExponentTail(i + 1, std::vector<BigInt>(static_cast<std::size_t>(n - i)))
                      : make_tail(p.orders_, n, i, it->second, "power relation of " + gen_name(i));
      p.power_w_[p.idx(i)] = tail.to_word();
      p.power_[p.idx(i)] = std::move(tail);
    }
    for (Gen j = i + 1; j <= n; ++j) {
      auto name = gen_name(j) + "*" + gen_name(i);
      auto it = raw.conj.find({i, j});
      auto a = it == raw.conj.end() ? commuting_tail(n, i, j) : make_tail(p.orders_, n, i, it->second, name);
      p.conj_w_[p.pair(i, j)] = a.to_word();
      p.conj_[p.pair(i, j)] = std::move(a);
      if (p.order(i).is_infinite()) {
        auto jt = raw.conjinv.find({i, j});
        auto b = jt == raw.conjinv.end() ? commuting_tail(n, i, j)
                                          : make_tail(p.orders_, n, i, jt->second, name + "^-1");
        p.conjinv_w_[p.pair(i, j)] = b.to_word();
        p.conjinv_[p.pair(i, j)] = std::move(b);
      }
    }
  }
  return p;
}

DerivedTables derive_inverse_relations(const GroupPresentation& p, std::uint64_t budget) {
  GroupPresentation work = p;
  for (auto* v : {&work.c_, &work.d_, &work.f_}) std::fill(v->begin(), v->end(), std::nullopt);
  work.derived_complete_ = false;

  const int n = p.size();
  CollectOptions options{budget, false};
  auto inverse_tail = [&](const Word& tail, Gen i) {
    return tail_from_normal(collect(work, tail.inverse(), options).normal, i);
  };

  for (Gen i = n; i >= 1; --i) {
    if (p.order(i).is_finite()) work.install_f(i, inverse_tail(*p.power_word(i), i));
    for (Gen j = i + 1; j <= n; ++j) {
      if (p.order(j).is_infinite()) work.install_c(i, j, inverse_tail(p.conj_word(i, j), i));
      if (p.order(i).is_infinite() && p.order(j).is_infinite())
        work.install_d(i, j, inverse_tail(*p.conjinv_word(i, j), i));
    }
  }
  return work.derived();
}

GroupPresentation with_derived(const GroupPresentation& p, const DerivedTables& tables) {
  GroupPresentation q = p;
  const int n = p.size();
  for (Gen i = 1; i <= n; ++i) {
    if (p.order(i).is_finite()) {
      auto it = tables.f.find(i);
      if (it == tables.f.end()) throw std::invalid_argument("derived tables lack f-tail of " + gen_name(i));
      q.install_f(i, it->second);
    }
    for (Gen j = i + 1; j <= n; ++j) {
      if (p.order(j).is_infinite()) {
        auto it = tables.c.find({i, j});
        if (it == tables.c.end()) throw std::invalid_argument("derived tables lack a c-tail");
        q.install_c(i, j, it->second);
      }
      if (p.order(i).is_infinite() && p.order(j).is_infinite()) {
        auto it = tables.d.find({i, j});
        if (it == tables.d.end()) throw std::invalid_argument("derived tables lack a d-tail");
        q.install_d(i, j, it->second);
      }
    }
  }
  q.derived_complete_ = true;
  return q;
}

GroupPresentation prepare(const RawGroupPresentation& raw, std::uint64_t budget) {
  auto p = validate(raw);
  return with_derived(p, derive_inverse_relations(p, budget));
}

namespace {

bool has_nilpotent_shape(const ExponentTail& t, Gen i, Gen j) {
  for (Gen k = i + 1; k < j; ++k)
    if (t.at(k) != 0) return false;
  return t.at(j) == 1;
}

}  // namespace

bool is_nilpotent_form(const GroupPresentation& p) {
  for (Gen i = 1; i <= p.size(); ++i)
    for (Gen j = i + 1; j <= p.size(); ++j) {
      if (!has_nilpotent_shape(p.conj_tail(i, j), i, j)) return false;
      if (const auto* b = p.conjinv_tail(i, j); b && !has_nilpotent_shape(*b, i, j)) return false;
    }
  return true;
}

WeightAssignment compute_weights(const GroupPresentation& p) {
  if (!is_nilpotent_form(p))
    throw Error(ErrorKind::NotNilpotentForm, "presentation is not in nilpotent form");
  const int n = p.size();
  WeightAssignment w;
  w.weights.assign(static_cast<std::size_t>(n), 1);
  auto raise = [&](Gen k, long bound) {
    auto& slot = w.weights[static_cast<std::size_t>(k - 1)];
    if (slot >= bound) return false;
    slot = bound;
    return true;
  };

  // The commutator part of a nilpotent-form tail starts after the leading g_j.
  for (int round = 0;; ++round) {
    if (round > n) throw Error(ErrorKind::WeightDivergence, "weight constraints have no finite solution");
    bool changed = false;
    for (Gen i = 1; i <= n; ++i) {
      if (const auto* e = p.power_tail(i))
        for (Gen k = i + 1; k <= n; ++k)
          if (e->at(k) != 0) changed |= raise(k, w(i));
      for (Gen j = i + 1; j <= n; ++j) {
        const auto* b = p.conjinv_tail(i, j);
        for (Gen k = j + 1; k <= n; ++k)
          if (p.conj_tail(i, j).at(k) != 0 || (b && b->at(k) != 0)) changed |= raise(k, w(i) + w(j));
      }
    }
    if (!changed) break;
  }
  w.d = w.weights.empty() ? 0 : *std::max_element(w.weights.begin(), w.weights.end());
  return w;
}

namespace {

FactorList factors_of(const ExponentTail& t, int n) {
  FactorList out;
  for (Gen k = t.start(); k <= n; ++k)
    if (auto x = t.at(k); x != 0) out.push_back({k, x});
  return out;
}

}  // namespace

RawGroupPresentation to_raw(const GroupPresentation& p) {
  RawGroupPresentation raw;
  raw.n = p.size();
  for (Gen i = 1; i <= p.size(); ++i) {
    raw.orders.push_back(p.order(i));
    if (const auto* e = p.power_tail(i)) raw.power[i] = factors_of(*e, p.size());
    for (Gen j = i + 1; j <= p.size(); ++j) {
      raw.conj[{i, j}] = factors_of(p.conj_tail(i, j), p.size());
      if (const auto* b = p.conjinv_tail(i, j)) raw.conjinv[{i, j}] = factors_of(*b, p.size());
    }
  }
  return raw;
}

}  // namespace pcp
