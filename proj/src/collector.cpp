#include "pcp/collector.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace pcp {

std::string_view to_string(RuleTag tag) {
  switch (tag) {
    case RuleTag::FreeCancel: return "FreeCancel";
    case RuleTag::GR1: return "GR1";
    case RuleTag::GR2: return "GR2";
    case RuleTag::GR3: return "GR3";
    case RuleTag::GR4: return "GR4";
    case RuleTag::GR5: return "GR5";
    case RuleTag::GR6: return "GR6";
  }
  return "?";
}

namespace {

int priority(RuleTag tag) {
  switch (tag) {
    case RuleTag::FreeCancel: return 0;
    case RuleTag::GR6: return 1;
    case RuleTag::GR1: return 2;
    default: return 3;
  }
}

// A rule occurrence. Occurrences are ordered by the lowest generator they
// involve, then by start position, then by rule priority. The start position
// is (run, 0) for the first letter of a run and (run, 1) for its last letter;
// a boundary occurrence of a single-letter run starts at (run, 0).
struct Candidate {
  Gen index = 0;
  std::size_t run = 0;
  int at_last_letter = 0;
  RuleTag rule = RuleTag::FreeCancel;
  Gen i = 0;
  Gen j = 0;

  auto key() const { return std::tuple(index, run, at_last_letter, priority(rule)); }
};

bool is_unit(const BigInt& z) { return mpz_cmpabs_ui(z.get_mpz_t(), 1) == 0; }

bool find_step(const GroupPresentation& p, const std::vector<Run>& runs, Candidate& best) {
  bool found = false;
  auto offer = [&](const Candidate& c) {
    if (!found || c.key() < best.key()) {
      best = c;
      found = true;
    }
  };

  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Gen a = runs[k].gen;
    const BigInt& z = runs[k].exp;
    const RelativeOrder& ra = p.order(a);
    // Nothing in this run can beat an occurrence on a strictly lower generator.
    if (found && best.index < a && (k + 1 >= runs.size() || best.index < runs[k + 1].gen)) continue;

    if (ra.is_finite()) {
      if (sgn(z) < 0)
        offer({a, k, 0, RuleTag::GR6, a, 0});
      else if (z >= ra.value())
        offer({a, k, 0, RuleTag::GR1, a, 0});
    }
    if (k + 1 == runs.size()) continue;

    const Gen b = runs[k + 1].gen;
    const int flag = is_unit(z) ? 0 : 1;
    if (a == b) {
      offer({a, k, flag, RuleTag::FreeCancel, a, 0});
    } else if (a > b) {
      const bool s = sgn(z) > 0;
      const bool t = sgn(runs[k + 1].exp) > 0;
      const bool rb_inf = p.order(b).is_infinite();
      if (s && t)
        offer({b, k, flag, RuleTag::GR2, b, a});
      else if (s && !t && rb_inf)
        offer({b, k, flag, RuleTag::GR3, b, a});
      else if (!s && t && ra.is_infinite())
        offer({b, k, flag, RuleTag::GR4, b, a});
      else if (!s && !t && ra.is_infinite() && rb_inf)
        offer({b, k, flag, RuleTag::GR5, b, a});
    }
  }
  return found;
}

const Word& require(const Word* w, const char* what) {
  if (!w) throw std::logic_error(std::string("collection needs missing ") + what + " tail");
  return *w;
}

const Word& pair_tail(const GroupPresentation& p, RuleTag rule, Gen i, Gen j) {
  switch (rule) {
    case RuleTag::GR2: return p.conj_word(i, j);
    case RuleTag::GR3: return require(p.conjinv_word(i, j), "GR3");
    case RuleTag::GR4: return require(p.c_word(i, j), "GR4");
    case RuleTag::GR5: return require(p.d_word(i, j), "GR5");
    default: throw std::logic_error("not a pair rule");
  }
}

BigInt letter_offset(const std::vector<Run>& runs, std::size_t run) {
  BigInt pos = 0;
  for (std::size_t k = 0; k < run; ++k) pos += abs(runs[k].exp);
  return pos;
}

BigInt sign_of(const BigInt& z) { return sgn(z) > 0 ? 1 : -1; }

}  // namespace

bool is_reduced(const GroupPresentation& p, const Word& w) {
  Candidate c;
  return !find_step(p, w.runs(), c);
}

Collected collect_reference(const GroupPresentation& p, const Word& w, const CollectOptions& options) {
  Collected out;
  std::vector<Run> runs = w.runs();
  Candidate c;

  while (find_step(p, runs, c)) {
    const Run& cur = runs[c.run];
    BigInt repeat = 1;
    Word next;
    for (std::size_t k = 0; k < c.run; ++k) next.append(runs[k].gen, runs[k].exp);
    std::size_t resume = c.run + 1;

    switch (c.rule) {
      case RuleTag::FreeCancel: {
        const Run& nxt = runs[c.run + 1];
        next.append(cur.gen, cur.exp - sign_of(cur.exp));
        next.append(nxt.gen, nxt.exp - sign_of(nxt.exp));
        resume = c.run + 2;
        break;
      }
      case RuleTag::GR1: {
        const BigInt& r = p.order(cur.gen).value();
        const Word& tail = require(p.power_word(cur.gen), "GR1");
        if (tail.empty()) {
          // g_a^r = 1: consecutive applications at the same spot, done at once.
          repeat = cur.exp / r;
          next.append(cur.gen, cur.exp - repeat * r);
        } else {
          next.append(tail);
          next.append(cur.gen, cur.exp - r);
        }
        break;
      }
      case RuleTag::GR6: {
        const BigInt& r = p.order(cur.gen).value();
        next.append(cur.gen, r - 1);
        next.append(require(p.f_word(cur.gen), "GR6"));
        next.append(cur.gen, cur.exp + 1);
        break;
      }
      default: {
        const Run& nxt = runs[c.run + 1];
        next.append(cur.gen, cur.exp - sign_of(cur.exp));
        next.append(nxt.gen, sign_of(nxt.exp));
        next.append(pair_tail(p, c.rule, c.i, c.j));
        next.append(nxt.gen, nxt.exp - sign_of(nxt.exp));
        resume = c.run + 2;
        break;
      }
    }

    if (repeat > options.budget - out.steps) throw BudgetExceeded(options.budget, std::move(out.trace));
    out.steps += repeat.get_ui();
    if (options.record_trace) {
      BigInt pos = letter_offset(runs, c.run);
      if (c.at_last_letter) pos += abs(cur.exp) - 1;
      out.trace.steps.push_back({pos, c.rule, c.i, c.j, repeat});
    }

    for (std::size_t k = resume; k < runs.size(); ++k) next.append(runs[k].gen, runs[k].exp);
    runs = next.runs();
  }

  out.normal = NormalWord(p.size());
  for (const auto& r : runs) out.normal[r.gen] = r.exp;
  return out;
}

namespace {

// Level-by-level engine. Collection to the left finishes everything on g_1
// before it touches g_2, and so on, as long as every letter that a lower
// generator has to cross has a pair rule. At level b the word is
// g_b^c * M * S: the collected front run, the part M in higher generators the
// front has already absorbed, and the unread rest S. A letter of g_b crossing
// M rewrites M letter by letter through one tail each, which is the same
// sequence of pair steps the literal engine performs, just without searching
// the whole word for each one. Steps are counted exactly as the literal engine
// counts them.
//
// The one pattern this does not model is a negative letter of a finite-order
// generator standing left of a lower generator (no pair rule applies, so
// levels interleave). It throws Fallback and the caller uses the literal
// engine, as it does when an exponent leaves the 64-bit range.

struct Fallback {};

using I64 = long long;

struct SmallRun {
  Gen gen;
  I64 exp;
};
using Runs = std::vector<SmallRun>;

I64 checked_add(I64 a, I64 b) {
  I64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Fallback{};
  return r;
}

I64 checked_mul(I64 a, I64 b) {
  I64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Fallback{};
  return r;
}

I64 small(const BigInt& z) {
  if (!z.fits_slong_p()) throw Fallback{};
  return z.get_si();
}

int sign(I64 z) { return z > 0 ? 1 : -1; }

void push(Runs& out, Gen g, I64 e) {
  if (e == 0) return;
  if (!out.empty() && out.back().gen == g && (out.back().exp > 0) == (e > 0))
    out.back().exp = checked_add(out.back().exp, e);
  else
    out.push_back({g, e});
}

// Relation right-hand sides in 64-bit form, converted on first use.
class Tails {
 public:
  explicit Tails(const GroupPresentation& p)
      : p_(p), n_(p.size()), cache_(static_cast<std::size_t>(n_ + 1) * (n_ + 1) * 4) {}

  const GroupPresentation& presentation() const { return p_; }

  // Tail produced when g_b^{+-1} crosses one letter x^{+-1}, x > b.
  const Runs& cross(Gen b, Gen x, bool x_pos, bool b_pos) {
    const int kind = (x_pos ? 0 : 2) + (b_pos ? 0 : 1);
    const std::size_t slot = (static_cast<std::size_t>(b) * (n_ + 1) + x) * 4 + kind;
    switch (kind) {
      case 0: return cached(slot, &p_.conj_word(b, x));
      case 1: return cached(slot, p_.conjinv_word(b, x));
      case 2: return cached(slot, p_.c_word(b, x));
      default: return cached(slot, p_.d_word(b, x));
    }
  }

  // Slots with x = 0 hold the power and f tails of g_b.
  const Runs& power(Gen b) { return cached(static_cast<std::size_t>(b) * (n_ + 1) * 4, p_.power_word(b)); }
  const Runs& f_tail(Gen b) { return cached(static_cast<std::size_t>(b) * (n_ + 1) * 4 + 1, p_.f_word(b)); }

 private:
  const Runs& cached(std::size_t slot, const Word* w) {
    auto& c = cache_[slot];
    if (!c) {
      if (!w) throw Fallback{};
      Runs r;
      for (const auto& run : w->runs()) push(r, run.gen, small(run.exp));
      c = std::move(r);
    }
    return *c;
  }

  const GroupPresentation& p_;
  int n_;
  std::vector<std::optional<Runs>> cache_;
};

class StepBudget {
 public:
  explicit StepBudget(std::uint64_t budget) : budget_(budget) {}
  void charge(std::uint64_t k) {
    if (k > budget_ - steps_) throw BudgetExceeded(budget_, {});
    steps_ += k;
  }
  std::uint64_t steps() const { return steps_; }

 private:
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

class LevelCollector {
 public:
  LevelCollector(const GroupPresentation& p, std::uint64_t budget) : p_(p), n_(p.size()), tails_(p), budget_(budget) {}

  Collected run(const Word& w) {
    Runs word;
    for (const auto& r : w.runs()) push(word, r.gen, small(r.exp));

    Collected out;
    out.normal = NormalWord(n_);
    for (Gen b = 1; b <= n_; ++b) {
      I64 c = 0;
      word = level(b, word, c);
      out.normal[b] = static_cast<long>(c);
    }
    out.steps = budget_.steps();
    return out;
  }

 private:
  void charge(std::uint64_t k) { budget_.charge(k); }
  const Runs& cross(Gen b, Gen x, bool x_pos, bool b_pos) { return tails_.cross(b, x, x_pos, b_pos); }
  const Runs& power(Gen b) { return tails_.power(b); }
  const Runs& f_tail(Gen b) { return tails_.f_tail(b); }

  Runs cross_all(Gen b, const Runs& m, bool b_pos) {
    Runs out;
    for (const auto& r : m) {
      const I64 count = r.exp > 0 ? r.exp : -r.exp;
      charge(static_cast<std::uint64_t>(count));
      const Runs& t = cross(b, r.gen, r.exp > 0, b_pos);
      if (t.size() == 1) {
        push(out, t[0].gen, checked_mul(t[0].exp, count));
      } else if (!t.empty()) {
        for (I64 k = 0; k < count; ++k)
          for (const auto& x : t) push(out, x.gen, x.exp);
      }
    }
    return out;
  }

  // Collects g_b out of `input` (generators >= b). Leaves the exponent of g_b
  // in c and returns the remaining word in g_{b+1}..g_n.
  Runs level(Gen b, const Runs& input, I64& c) {
    const RelativeOrder& order = p_.order(b);
    const bool finite = order.is_finite();
    const I64 r = finite ? small(order.value()) : 0;

    Runs rest(input.rbegin(), input.rend());  // unread part, front at the back
    Runs m;
    auto push_rest = [&](Gen g, I64 e) {
      if (e != 0) rest.push_back({g, e});
    };
    auto push_rest_word = [&](const Runs& w) {
      for (auto it = w.rbegin(); it != w.rend(); ++it) rest.push_back(*it);
    };
    auto next_is_opposite = [&](I64 e, std::size_t depth) {
      if (rest.size() < depth) return false;
      const auto& nx = rest[rest.size() - depth];
      return nx.gen == b && sign(nx.exp) != sign(e);
    };

    for (;;) {
      if (finite && (c >= r || c < 0)) {
        // A single-letter front run cancels against an adjacent opposite
        // letter before its own rule fires.
        if (m.empty() && (c == 1 || c == -1) && next_is_opposite(c, 1)) {
          charge(1);
          c = 0;
          rest.back().exp -= sign(rest.back().exp);
          if (rest.back().exp == 0) rest.pop_back();
          continue;
        }
        Runs old = std::move(m);
        m.clear();
        if (c >= r) {
          const Runs& e = power(b);
          if (e.empty()) {
            const I64 q = c / r;
            charge(static_cast<std::uint64_t>(q));
            c -= q * r;
            m = std::move(old);
            continue;
          }
          charge(1);
          push_rest_word(old);
          push_rest(b, c - r);
          m = e;
          c = 0;
        } else {
          charge(1);
          push_rest_word(old);
          push_rest(b, c + 1);
          push_rest_word(f_tail(b));
          c = r - 1;
        }
        continue;
      }
      if (rest.empty()) break;

      SmallRun item = rest.back();
      if (item.gen != b) {
        rest.pop_back();
        push(m, item.gen, item.exp);
        continue;
      }
      const I64 z = item.exp;
      if (m.empty()) {
        if (c == 0 || sign(c) == sign(z)) {
          rest.pop_back();
          c = checked_add(c, z);
        } else {
          const I64 k = std::min(c > 0 ? c : -c, z > 0 ? z : -z);
          charge(static_cast<std::uint64_t>(k));
          c -= sign(c) * k;
          rest.back().exp -= sign(z) * k;
          if (rest.back().exp == 0) rest.pop_back();
        }
        continue;
      }
      if (finite && z < 0) {
        if (z == -1 && next_is_opposite(z, 2)) {
          charge(1);
          rest.pop_back();
          rest.back().exp -= 1;
          if (rest.back().exp == 0) rest.pop_back();
          continue;
        }
        charge(1);
        rest.pop_back();
        push_rest(b, z + 1);
        push_rest_word(f_tail(b));
        push_rest(b, r - 1);
        continue;
      }
      const int s = sign(z);
      m = cross_all(b, m, s > 0);
      if (c != 0 && sign(c) != s) charge(1);
      c += s;
      rest.back().exp -= s;
      if (rest.back().exp == 0) rest.pop_back();
    }
    return m;
  }

  const GroupPresentation& p_;
  int n_;
  Tails tails_;
  StepBudget budget_;
};

// Letter-level collection making the same choice of step as
// collect_reference, for the words the level engine hands back. The word sits
// in a gap buffer and is edited in place. For each generator g, frontier[g]
// marks a run index left of which no step with lowest generator g starts.
// After a step, a step on a lower generator than the current one can only
// start inside the rewritten window, so the whole word is never rescanned per
// step.
class LiteralCollector {
 public:
  LiteralCollector(const GroupPresentation& p, std::uint64_t budget)
      : p_(p), n_(p.size()), tails_(p), budget_(budget), order_(static_cast<std::size_t>(n_ + 1), 0) {
    for (Gen g = 1; g <= n_; ++g)
      if (p.order(g).is_finite()) order_[static_cast<std::size_t>(g)] = small(p.order(g).value());
  }

  Collected run(const Word& w) {
    for (const auto& r : w.runs()) push(left_, r.gen, small(r.exp));
    std::vector<std::size_t> frontier(static_cast<std::size_t>(n_ + 1), 0);

    Gen cur = 1;
    while (cur <= n_) {
      const auto level = static_cast<std::size_t>(cur);
      Candidate best;
      bool found = false;
      for (std::size_t j = frontier[level]; j < size() && !found; ++j)
        each_at(j, [&](const Candidate& c) {
          if (c.index == cur && (!found || c.key() < best.key())) {
            best = c;
            found = true;
          }
        });
      if (!found) {
        frontier[level] = size();
        ++cur;
        continue;
      }
      frontier[level] = best.run;

      const auto [lo, hi] = apply(best);
      for (Gen m = cur; m <= n_; ++m) frontier[static_cast<std::size_t>(m)] = std::min(frontier[static_cast<std::size_t>(m)], lo);
      Candidate low;
      bool lower = false;
      for (std::size_t j = lo; j < hi && j < size(); ++j)
        each_at(j, [&](const Candidate& c) {
          if (c.index < cur && (!lower || c.key() < low.key())) {
            low = c;
            lower = true;
          }
        });
      if (lower) {
        for (Gen m = low.index; m < cur; ++m) frontier[static_cast<std::size_t>(m)] = lo;
        cur = low.index;
      }
    }

    Collected out;
    out.normal = NormalWord(n_);
    move_gap(size());
    for (const auto& r : left_) out.normal[r.gen] = static_cast<long>(r.exp);
    out.steps = budget_.steps();
    return out;
  }

 private:
  std::size_t size() const { return left_.size() + right_.size(); }
  const SmallRun& at(std::size_t i) const {
    return i < left_.size() ? left_[i] : right_[right_.size() - 1 - (i - left_.size())];
  }
  void move_gap(std::size_t i) {
    while (left_.size() > i) {
      right_.push_back(left_.back());
      left_.pop_back();
    }
    while (left_.size() < i) {
      left_.push_back(right_.back());
      right_.pop_back();
    }
  }

  template <class Offer>
  void each_at(std::size_t j, Offer&& offer) const {
    const SmallRun& cur = at(j);
    const Gen a = cur.gen;
    const I64 z = cur.exp;
    const I64 ra = order_[static_cast<std::size_t>(a)];
    if (ra) {
      if (z < 0)
        offer(Candidate{a, j, 0, RuleTag::GR6, a, 0});
      else if (z >= ra)
        offer(Candidate{a, j, 0, RuleTag::GR1, a, 0});
    }
    if (j + 1 >= size()) return;
    const SmallRun& nx = at(j + 1);
    const Gen b = nx.gen;
    const int flag = (z == 1 || z == -1) ? 0 : 1;
    if (a == b) {
      offer(Candidate{a, j, flag, RuleTag::FreeCancel, a, 0});
    } else if (a > b) {
      const bool s = z > 0, t = nx.exp > 0;
      const bool a_inf = ra == 0, b_inf = order_[static_cast<std::size_t>(b)] == 0;
      if (s && t)
        offer(Candidate{b, j, flag, RuleTag::GR2, b, a});
      else if (s && !t && b_inf)
        offer(Candidate{b, j, flag, RuleTag::GR3, b, a});
      else if (!s && t && a_inf)
        offer(Candidate{b, j, flag, RuleTag::GR4, b, a});
      else if (!s && !t && a_inf && b_inf)
        offer(Candidate{b, j, flag, RuleTag::GR5, b, a});
    }
  }

  // Rewrites at c.run and returns the window [lo, hi) of run indices whose
  // steps may have changed.
  std::pair<std::size_t, std::size_t> apply(const Candidate& c) {
    const std::size_t k = c.run;
    const bool single = c.rule == RuleTag::GR1 || c.rule == RuleTag::GR6;
    move_gap(k + (single ? 1 : 2));
    const SmallRun cur = left_[k];
    const SmallRun nxt = single ? SmallRun{0, 0} : left_[k + 1];
    left_.resize(k);

    Runs mid;
    std::uint64_t repeat = 1;
    auto append = [&](const Runs& w) {
      for (const auto& r : w) push(mid, r.gen, r.exp);
    };
    switch (c.rule) {
      case RuleTag::FreeCancel:
        push(mid, cur.gen, cur.exp - sign(cur.exp));
        push(mid, nxt.gen, nxt.exp - sign(nxt.exp));
        break;
      case RuleTag::GR1: {
        const I64 r = order_[static_cast<std::size_t>(cur.gen)];
        const Runs& tail = tails_.power(cur.gen);
        if (tail.empty()) {
          const I64 q = cur.exp / r;
          repeat = static_cast<std::uint64_t>(q);
          push(mid, cur.gen, cur.exp - q * r);
        } else {
          append(tail);
          push(mid, cur.gen, cur.exp - r);
        }
        break;
      }
      case RuleTag::GR6: {
        const I64 r = order_[static_cast<std::size_t>(cur.gen)];
        push(mid, cur.gen, r - 1);
        append(tails_.f_tail(cur.gen));
        push(mid, cur.gen, cur.exp + 1);
        break;
      }
      default:
        push(mid, cur.gen, cur.exp - sign(cur.exp));
        push(mid, nxt.gen, sign(nxt.exp));
        append(tails_.cross(nxt.gen, cur.gen, cur.exp > 0, nxt.exp > 0));
        push(mid, nxt.gen, nxt.exp - sign(nxt.exp));
        break;
    }
    budget_.charge(repeat);

    std::size_t start = k;
    Runs combined;
    if (k > 0) {
      combined.push_back(left_.back());
      left_.pop_back();
      start = k - 1;
    }
    for (const auto& r : mid) push(combined, r.gen, r.exp);
    if (!right_.empty()) {
      push(combined, right_.back().gen, right_.back().exp);
      right_.pop_back();
    }
    left_.insert(left_.end(), combined.begin(), combined.end());
    return {start > 0 ? start - 1 : 0, start + combined.size()};
  }

  const GroupPresentation& p_;
  int n_;
  Tails tails_;
  StepBudget budget_;
  std::vector<I64> order_;  // 0 for infinite
  Runs left_;               // runs before the gap
  Runs right_;              // runs after the gap, last run first
};

}  // namespace

Collected collect(const GroupPresentation& p, const Word& w, const CollectOptions& options) {
  if (!options.record_trace && options.engine != CollectEngine::Reference) {
    try {
      if (options.engine == CollectEngine::Auto) return LevelCollector(p, options.budget).run(w);
    } catch (const Fallback&) {
    }
    try {
      return LiteralCollector(p, options.budget).run(w);
    } catch (const Fallback&) {
    }
  }
  return collect_reference(p, w, options);
}

NormalWord multiply_normal(const GroupPresentation& p, const NormalWord& u, const NormalWord& v,
                           std::uint64_t budget) {
  return collect(p, u.to_word() * v.to_word(), {budget, false}).normal;
}

NormalWord invert_normal(const GroupPresentation& p, const NormalWord& u, std::uint64_t budget) {
  return collect(p, u.to_word().inverse(), {budget, false}).normal;
}

namespace {

using Letters = std::vector<int>;  // +g for g_g, -g for g_g^-1

void expand_into(Letters& out, const Word& w, std::size_t max_letters) {
  for (const auto& r : w.runs()) {
    BigInt count = abs(r.exp);
    if (count > max_letters - out.size()) throw std::invalid_argument("word too long to replay");
    out.insert(out.end(), count.get_ui(), sgn(r.exp) > 0 ? r.gen : -r.gen);
  }
}

[[noreturn]] void mismatch(const TraceStep& s, const char* why) {
  throw std::invalid_argument("trace step " + std::string(to_string(s.rule)) + " at " + s.position.get_str() +
                              ": " + why);
}

}  // namespace

Word replay_trace(const GroupPresentation& p, const Word& w, const CollectionTrace& trace,
                  std::size_t max_letters) {
  Letters letters;
  expand_into(letters, w, max_letters);

  for (const auto& s : trace.steps) {
    if (!s.position.fits_ulong_p() || !s.repeat.fits_ulong_p()) mismatch(s, "position out of range");
    const std::size_t pos = s.position.get_ui();
    for (unsigned long rep = 0; rep < s.repeat.get_ui(); ++rep) {
      auto has = [&](std::size_t at, int letter) { return at < letters.size() && letters[at] == letter; };
      Letters rhs;
      std::size_t width = 2;
      switch (s.rule) {
        case RuleTag::FreeCancel:
          if (!(pos + 1 < letters.size() && letters[pos] == -letters[pos + 1] && std::abs(letters[pos]) == s.i))
            mismatch(s, "no cancellation pair");
          break;
        case RuleTag::GR1: {
          if (!p.order(s.i).is_finite() || !p.order(s.i).value().fits_ulong_p()) mismatch(s, "no power relation");
          width = p.order(s.i).value().get_ui();
          for (std::size_t k = 0; k < width; ++k)
            if (!has(pos + k, s.i)) mismatch(s, "power not present");
          expand_into(rhs, *p.power_word(s.i), max_letters);
          break;
        }
        case RuleTag::GR6: {
          width = 1;
          if (!p.order(s.i).is_finite() || !has(pos, -s.i)) mismatch(s, "no finite-order inverse letter");
          Word right = Word::letter(s.i, p.order(s.i).value() - 1) * require(p.f_word(s.i), "GR6");
          expand_into(rhs, right, max_letters);
          break;
        }
        default: {
          const bool j_pos = s.rule == RuleTag::GR2 || s.rule == RuleTag::GR3;
          const bool i_pos = s.rule == RuleTag::GR2 || s.rule == RuleTag::GR4;
          if (!(s.i < s.j && has(pos, j_pos ? s.j : -s.j) && has(pos + 1, i_pos ? s.i : -s.i)))
            mismatch(s, "left side not present");
          if ((s.rule == RuleTag::GR3 || s.rule == RuleTag::GR5) && p.order(s.i).is_finite())
            mismatch(s, "rule needs infinite order of the lower generator");
          if ((s.rule == RuleTag::GR4 || s.rule == RuleTag::GR5) && p.order(s.j).is_finite())
            mismatch(s, "rule needs infinite order of the upper generator");
          rhs.push_back(i_pos ? s.i : -s.i);
          expand_into(rhs, pair_tail(p, s.rule, s.i, s.j), max_letters);
          break;
        }
      }
      letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(pos),
                    letters.begin() + static_cast<std::ptrdiff_t>(pos + width));
      letters.insert(letters.begin() + static_cast<std::ptrdiff_t>(pos), rhs.begin(), rhs.end());
      if (letters.size() > max_letters) throw std::invalid_argument("word too long to replay");
    }
  }

  Word out;
  for (int l : letters) out.append(std::abs(l), l > 0 ? 1 : -1);
  return out;
}

}  // namespace pcp
