#include "pcp/text_format.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "pcp/error.hpp"

namespace pcp {

namespace {

/// Character cursor over one source line; columns are 1-based.
class Cursor {
 public:
  Cursor(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  int column() {
    skip_ws();
    return static_cast<int>(pos_) + 1;
  }
  int line() const { return line_; }

  [[noreturn]] void fail(const std::string& what) {
    throw SyntaxError(line_, static_cast<int>(pos_) + 1, what);
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool starts_number() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
    if (c != '-' && c != '+') return false;
    return pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  /// Optionally signed decimal integer.
  BigInt integer() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) {
      pos_ = start;
      fail("expected an integer");
    }
    std::string s(text_.substr(start, pos_ - start));
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s);
  }

  /// `<prefix><index>` with the index in 1..n.
  Gen generator(char prefix, int n) {
    skip_ws();
    const int col = column();
    if (pos_ >= text_.size() || text_[pos_] != prefix) fail(std::string("expected generator ") + prefix + "<i>");
    ++pos_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected generator index");
    BigInt index(std::string(text_.substr(start, pos_ - start)));
    if (index < 1 || index > n)
      throw Error(ErrorKind::UnknownGenerator, "line " + std::to_string(line_) + ", column " + std::to_string(col) +
                                                   ": unknown generator " + prefix + index.get_str());
    return static_cast<Gen>(index.get_si());
  }

  bool at_generator(char prefix) { return peek() == prefix; }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

struct Factor {
  Gen gen;
  BigInt exp;
};

Factor parse_factor(Cursor& c, int n) {
  Gen g = c.generator('g', n);
  BigInt e = 1;
  if (c.accept('^')) e = c.integer();
  return {g, e};
}

/// `1` or a product of factors.
FactorList parse_tail(Cursor& c, int n) {
  FactorList tail;
  if (c.peek() == '1') {
    c.integer();
    return tail;
  }
  do {
    auto f = parse_factor(c, n);
    tail.push_back({f.gen, f.exp});
  } while (c.accept('*'));
  return tail;
}

RelativeOrder parse_order_value(Cursor& c) {
  if (std::isalpha(static_cast<unsigned char>(c.peek()))) {
    if (c.ident() != "inf") c.fail("expected a positive integer or 'inf'");
    return RelativeOrder::infinity();
  }
  BigInt v = c.integer();
  if (v < 1) c.fail("relative order must be positive");
  return RelativeOrder(v);
}

mpq_class parse_coefficient(Cursor& c) {
  BigInt num = c.integer();
  if (!c.accept('/')) return mpq_class(num);
  BigInt den = c.integer();
  if (den <= 0) c.fail("denominator must be positive");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

Scalar make_scalar(Cursor& c, const RingDescriptor& ring, const mpq_class& value) {
  if (ring.kind() != RingKind::Rationals && value.get_den() != 1)
    c.fail("coefficient " + value.get_str() + " is not an element of " + to_string(ring));
  return Scalar(ring, value);
}

/// `0` or signed terms `c*a<k>` / `a<k>`.
LinearCombination parse_lincomb(Cursor& c, const RingDescriptor& ring, int n) {
  LinearCombination out;
  if (c.peek() == '0') {
    c.integer();
    return out;
  }
  bool first = true;
  for (;;) {
    mpq_class sign = 1;
    if (!first) {
      if (c.accept('-'))
        sign = -1;
      else if (!c.accept('+'))
        break;
    }
    first = false;
    mpq_class coef = 1;
    if (c.starts_number()) {
      coef = parse_coefficient(c);
      c.expect('*');
    } else if (c.accept('-')) {
      coef = -1;
    }
    Gen k = c.generator('a', n);
    out.emplace_back(k, make_scalar(c, ring, sign * coef));
    if (c.at_end()) break;
  }
  return out;
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

DeclarationBody parse_group_line(Cursor& c, int n) {
  const int col = c.column();
  std::string word;
  if (std::isalpha(static_cast<unsigned char>(c.peek())) && c.peek() != 'g') word = c.ident();
  if (!word.empty()) {
    if (word != "order") c.fail("unknown keyword '" + word + "'");
    Gen g = c.generator('g', n);
    c.expect('=');
    return OrderDecl{g, parse_order_value(c)};
  }

  Gen first = c.generator('g', n);
  if (c.accept('^')) {
    BigInt exponent = c.integer();
    if (c.peek() != '=') c.fail("expected '=' after power");
    if (exponent < 1) c.fail("power relation needs a positive exponent");
    c.expect('=');
    return PowerDecl{first, exponent, parse_tail(c, n)};
  }
  c.expect('*');
  Gen lower = c.generator('g', n);
  bool inverse = false;
  if (c.accept('^')) {
    if (c.integer() != -1) c.fail("only g<i>^-1 may follow g<j>* on the left side");
    inverse = true;
  }
  c.expect('=');
  const int rhs_col = c.column();
  auto lead = parse_factor(c, n);
  if (lead.gen != lower || lead.exp != (inverse ? -1 : 1))
    throw SyntaxError(c.line(), rhs_col,
                      "right side must start with g" + std::to_string(lower) + (inverse ? "^-1" : ""));
  FactorList tail;
  if (c.accept('*')) tail = parse_tail(c, n);
  (void)col;
  return ConjDecl{first, lower, inverse, std::move(tail)};
}

DeclarationBody parse_algebra_line(Cursor& c, int n, const RingDescriptor& ring) {
  if (std::isalpha(static_cast<unsigned char>(c.peek())) && c.peek() != 'a') {
    std::string word = c.ident();
    if (word != "order") c.fail("unknown keyword '" + word + "'");
    Gen g = c.generator('a', n);
    c.expect('=');
    return OrderDecl{g, parse_order_value(c)};
  }
  if (c.starts_number()) {
    BigInt multiple = c.integer();
    if (multiple < 1) c.fail("power relation needs a positive multiple");
    c.expect('*');
    Gen g = c.generator('a', n);
    c.expect('=');
    return ScaledDecl{g, multiple, parse_lincomb(c, ring, n)};
  }
  Gen x = c.generator('a', n);
  c.expect('*');
  Gen y = c.generator('a', n);
  c.expect('=');
  return ProductDecl{x, y, parse_lincomb(c, ring, n)};
}

/// Identifies the relation a declaration defines, for duplicate detection.
std::string lhs_key(const DeclarationBody& body) {
  return std::visit(
      [](const auto& d) -> std::string {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, OrderDecl>) return "order " + std::to_string(d.gen);
        if constexpr (std::is_same_v<T, PowerDecl>) return "power " + std::to_string(d.gen);
        if constexpr (std::is_same_v<T, ScaledDecl>) return "power " + std::to_string(d.gen);
        if constexpr (std::is_same_v<T, ConjDecl>)
          return "conj " + std::to_string(d.upper) + " " + std::to_string(d.lower) + (d.inverse ? "-" : "+");
        if constexpr (std::is_same_v<T, ProductDecl>)
          return "prod " + std::to_string(d.left) + " " + std::to_string(d.right);
      },
      body);
}

RingDescriptor parse_ring(Cursor& c) {
  std::string name = c.ident();
  if (name == "Z") return RingDescriptor::integers();
  if (name == "Q") return RingDescriptor::rationals();
  if (name == "GF") {
    c.expect('(');
    BigInt p = c.integer();
    c.expect(')');
    if (p < 2 || !p.fits_ulong_p()) c.fail("bad field characteristic");
    try {
      return RingDescriptor::prime_field(p.get_ui());
    } catch (const Error& e) {
      c.fail(e.what());
    }
  }
  c.fail("expected Z, Q or GF(p)");
}

}  // namespace

PresentationDocument parse_document(std::string_view text) {
  PresentationDocument doc;
  bool have_header = false;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line = strip_comment(text.substr(start, end - start));
    start = end + 1;
    ++line_no;

    Cursor c(line, line_no);
    if (c.at_end()) continue;

    if (!have_header) {
      std::string kw = c.ident();
      if (kw != "group" && kw != "algebra") c.fail("expected header 'group <n>' or 'algebra <n> over R'");
      BigInt n = c.integer();
      if (n < 0 || n > 100000) c.fail("bad generator count");
      doc.n = static_cast<int>(n.get_si());
      if (kw == "algebra") {
        doc.kind = DocumentKind::Algebra;
        if (c.ident() != "over") c.fail("expected 'over'");
        doc.ring = parse_ring(c);
      }
      if (!c.at_end()) c.fail("unexpected text after header");
      have_header = true;
      continue;
    }

    const SourceSpan span{line_no, c.column()};
    auto body = doc.kind == DocumentKind::Group ? parse_group_line(c, doc.n) : parse_algebra_line(c, doc.n, *doc.ring);
    if (!c.at_end()) c.fail("unexpected trailing text");
    if (!seen.insert(lhs_key(body)).second)
      throw Error(ErrorKind::DuplicateRelation, "line " + std::to_string(line_no) + ": relation defined twice");
    doc.declarations.push_back({std::move(body), span});
  }
  if (!have_header) throw SyntaxError(line_no, 1, "missing header");
  return doc;
}

namespace {

std::string factor_text(Gen g, const BigInt& e) {
  std::string s = "g" + std::to_string(g);
  if (e != 1) s += "^" + e.get_str();
  return s;
}

std::string tail_text(const FactorList& tail) {
  std::string s;
  for (const auto& f : tail) {
    if (!s.empty()) s += "*";
    s += factor_text(f.gen, f.exp);
  }
  return s;
}

}  // namespace

std::string to_string(const LinearCombination& comb) {
  if (comb.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : comb) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += to_string(c) + "*";
    s += "a" + std::to_string(k);
  }
  return s;
}

std::string serialize(const PresentationDocument& doc) {
  std::ostringstream out;
  const bool group = doc.kind == DocumentKind::Group;
  if (group)
    out << "group " << doc.n << '\n';
  else
    out << "algebra " << doc.n << " over " << to_string(*doc.ring) << '\n';
  const char prefix = group ? 'g' : 'a';
  for (const auto& decl : doc.declarations) {
    std::visit(
        [&](const auto& d) {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, OrderDecl>) {
            out << "order " << prefix << d.gen << " = " << to_string(d.order);
          } else if constexpr (std::is_same_v<T, PowerDecl>) {
            out << "g" << d.gen << '^' << d.exponent.get_str() << " = " << (d.tail.empty() ? "1" : tail_text(d.tail));
          } else if constexpr (std::is_same_v<T, ConjDecl>) {
            std::string lower = factor_text(d.lower, d.inverse ? -1 : 1);
            out << "g" << d.upper << '*' << lower << " = " << lower;
            if (!d.tail.empty()) out << '*' << tail_text(d.tail);
          } else if constexpr (std::is_same_v<T, ScaledDecl>) {
            out << d.multiple.get_str() << "*a" << d.gen << " = " << to_string(d.rhs);
          } else {
            out << "a" << d.left << "*a" << d.right << " = " << to_string(d.rhs);
          }
        },
        decl.body);
    out << '\n';
  }
  return out.str();
}

namespace {

void need_kind(const PresentationDocument& doc, DocumentKind kind) {
  if (doc.kind != kind)
    throw Error(ErrorKind::SyntaxError, kind == DocumentKind::Group ? "expected a group presentation"
                                                                    : "expected an algebra presentation");
}

std::string where(const Declaration& d) { return "line " + std::to_string(d.span.line) + ": "; }

void set_order(std::vector<std::optional<RelativeOrder>>& orders, Gen g, const RelativeOrder& r,
               const std::string& context) {
  auto& slot = orders[static_cast<std::size_t>(g - 1)];
  if (slot && !(*slot == r))
    throw Error(ErrorKind::ConflictingOrder, context + "relative order of generator " + std::to_string(g) +
                                                 " declared as both " + to_string(*slot) + " and " + to_string(r));
  slot = r;
}

std::vector<RelativeOrder> resolve(const std::vector<std::optional<RelativeOrder>>& orders) {
  std::vector<RelativeOrder> out;
  for (const auto& o : orders) out.push_back(o.value_or(RelativeOrder::infinity()));
  return out;
}

}  // namespace

RawGroupPresentation to_group_raw(const PresentationDocument& doc) {
  need_kind(doc, DocumentKind::Group);
  RawGroupPresentation raw;
  raw.n = doc.n;
  std::vector<std::optional<RelativeOrder>> orders(static_cast<std::size_t>(doc.n));
  for (const auto& decl : doc.declarations) {
    if (const auto* o = std::get_if<OrderDecl>(&decl.body)) set_order(orders, o->gen, o->order, where(decl));
    if (const auto* p = std::get_if<PowerDecl>(&decl.body)) {
      set_order(orders, p->gen, RelativeOrder(p->exponent), where(decl));
      raw.power[p->gen] = p->tail;
    }
    if (const auto* c = std::get_if<ConjDecl>(&decl.body)) {
      if (c->upper <= c->lower)
        throw Error(ErrorKind::BadIndex, where(decl) + "conjugate relation g" + std::to_string(c->upper) + "*g" +
                                             std::to_string(c->lower) + " needs the higher generator first");
      auto& target = c->inverse ? raw.conjinv : raw.conj;
      target[{c->lower, c->upper}] = c->tail;
    }
  }
  raw.orders = resolve(orders);
  return raw;
}

RawAlgebraPresentation to_algebra_raw(const PresentationDocument& doc) {
  need_kind(doc, DocumentKind::Algebra);
  RawAlgebraPresentation raw;
  raw.n = doc.n;
  raw.ring = *doc.ring;
  std::vector<std::optional<RelativeOrder>> orders(static_cast<std::size_t>(doc.n));
  for (const auto& decl : doc.declarations) {
    if (const auto* o = std::get_if<OrderDecl>(&decl.body)) set_order(orders, o->gen, o->order, where(decl));
    if (const auto* s = std::get_if<ScaledDecl>(&decl.body)) {
      set_order(orders, s->gen, RelativeOrder(s->multiple), where(decl));
      raw.power[s->gen] = s->rhs;
    }
    if (const auto* p = std::get_if<ProductDecl>(&decl.body)) raw.products[{p->left, p->right}] = p->rhs;
  }
  raw.orders = resolve(orders);
  return raw;
}

PresentationDocument to_document(const GroupPresentation& p) {
  auto raw = to_raw(p);
  PresentationDocument doc;
  doc.kind = DocumentKind::Group;
  doc.n = raw.n;
  for (Gen i = 1; i <= raw.n; ++i)
    if (raw.orders[static_cast<std::size_t>(i - 1)].is_finite())
      doc.declarations.push_back({PowerDecl{i, raw.orders[static_cast<std::size_t>(i - 1)].value(), raw.power[i]}, {}});
  for (const auto& [key, tail] : raw.conj) doc.declarations.push_back({ConjDecl{key.second, key.first, false, tail}, {}});
  for (const auto& [key, tail] : raw.conjinv)
    doc.declarations.push_back({ConjDecl{key.second, key.first, true, tail}, {}});
  return doc;
}

PresentationDocument to_document(const AlgebraPresentation& p) {
  auto raw = to_raw(p);
  PresentationDocument doc;
  doc.kind = DocumentKind::Algebra;
  doc.ring = raw.ring;
  doc.n = raw.n;
  for (Gen i = 1; i <= raw.n; ++i)
    if (raw.orders[static_cast<std::size_t>(i - 1)].is_finite())
      doc.declarations.push_back({ScaledDecl{i, raw.orders[static_cast<std::size_t>(i - 1)].value(), raw.power[i]}, {}});
  for (const auto& [key, comb] : raw.products) doc.declarations.push_back({ProductDecl{key.first, key.second, comb}, {}});
  return doc;
}

Word parse_word(std::string_view text, int n) {
  std::string line(text);
  Cursor c(line, 1);
  Word w;
  if (c.peek() == '1') {
    c.integer();
  } else {
    do {
      auto f = parse_factor(c, n);
      w.append(f.gen, f.exp);
    } while (c.accept('*'));
  }
  if (!c.at_end()) c.fail("unexpected trailing text in word");
  return w;
}

namespace {

/// A scalar, or an element of the free algebra (when `element` is set).
struct Value {
  Scalar scalar;
  std::optional<FreeElement> element;
};

class ExpressionParser {
 public:
  ExpressionParser(Cursor& c, const AlgebraPresentation& p) : c_(c), p_(p), ring_(p.ring()) {}

  FreeElement expression() {
    FreeElement sum(ring_);
    bool first = true;
    for (;;) {
      bool negate = false;
      if (c_.accept('-'))
        negate = true;
      else if (!c_.accept('+') && !first)
        break;
      first = false;
      Value v = term();
      if (negate) v = scale(Scalar(ring_, -1), v);
      if (v.element)
        sum += *v.element;
      else if (!v.scalar.is_zero())
        c_.fail("a bare nonzero scalar is not an algebra element");
      char next = c_.peek();
      if (next != '+' && next != '-') break;
    }
    return sum;
  }

 private:
  Value scale(const Scalar& s, const Value& v) {
    if (v.element) return {Scalar(ring_, 1), s * *v.element};
    return {mul(s, v.scalar), std::nullopt};
  }

  Value product(const Value& a, const Value& b) {
    if (a.element && b.element) return {Scalar(ring_, 1), *a.element * *b.element};
    if (a.element) return scale(b.scalar, a);
    return scale(a.scalar, b);
  }

  Value term() {
    Value v = factor();
    while (c_.accept('*')) v = product(v, factor());
    return v;
  }

  Value factor() {
    if (c_.accept('(')) {
      FreeElement inner = expression();
      c_.expect(')');
      return {Scalar(ring_, 1), normalize(p_, inner).to_free(ring_)};
    }
    if (c_.starts_number() || std::isdigit(static_cast<unsigned char>(c_.peek())))
      return {make_scalar(c_, ring_, parse_coefficient(c_)), std::nullopt};
    return {Scalar(ring_, 1), FreeElement::generator(ring_, c_.generator('a', p_.size()))};
  }

  Cursor& c_;
  const AlgebraPresentation& p_;
  RingDescriptor ring_;
};

}  // namespace

FreeElement parse_algebra_expression(std::string_view text, const AlgebraPresentation& p) {
  std::string line(text);
  Cursor c(line, 1);
  ExpressionParser parser(c, p);
  FreeElement e = parser.expression();
  if (!c.at_end()) c.fail("unexpected trailing text in expression");
  return e;
}

}  // namespace pcp
