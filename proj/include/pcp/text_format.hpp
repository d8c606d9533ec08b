#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pcp/algebra.hpp"
#include "pcp/presentation.hpp"

namespace pcp {

/// Concrete syntax of `.pcp` files. One presentation per file, one
/// declaration per line, `#` starts a comment:
///
///   group 3                       algebra 3 over Z      (or Q, GF(p))
///   order g1 = 3                  order a1 = 2
///   g1^3 = g2^2                   2*a1 = a3
///   g2*g1 = g1*g3^-1              a1*a2 = a3 + 2*a4
///   g3*g1^-1 = g1^-1*g2

enum class DocumentKind { Group, Algebra };

struct SourceSpan {
  int line = 0;
  int column = 0;
};

/// order g<i> = <r | inf>
struct OrderDecl {
  Gen gen;
  RelativeOrder order;
  friend bool operator==(const OrderDecl&, const OrderDecl&) = default;
};

/// g<i>^<r> = tail
struct PowerDecl {
  Gen gen;
  BigInt exponent;
  FactorList tail;
  friend bool operator==(const PowerDecl&, const PowerDecl&) = default;
};

/// g<j>*g<i> = g<i>*tail, or with g<i>^-1 on both sides when `inverse`.
struct ConjDecl {
  Gen upper;
  Gen lower;
  bool inverse = false;
  FactorList tail;
  friend bool operator==(const ConjDecl&, const ConjDecl&) = default;
};

/// <r>*a<i> = lincomb
struct ScaledDecl {
  Gen gen;
  BigInt multiple;
  LinearCombination rhs;
  friend bool operator==(const ScaledDecl&, const ScaledDecl&) = default;
};

/// a<x>*a<y> = lincomb
struct ProductDecl {
  Gen left;
  Gen right;
  LinearCombination rhs;
  friend bool operator==(const ProductDecl&, const ProductDecl&) = default;
};

using DeclarationBody = std::variant<OrderDecl, PowerDecl, ConjDecl, ScaledDecl, ProductDecl>;

struct Declaration {
  DeclarationBody body;
  SourceSpan span;

  // Spans are provenance, not content.
  friend bool operator==(const Declaration& a, const Declaration& b) { return a.body == b.body; }
};

struct PresentationDocument {
  DocumentKind kind = DocumentKind::Group;
  std::optional<RingDescriptor> ring;  // algebra documents only
  int n = 0;
  std::vector<Declaration> declarations;

  friend bool operator==(const PresentationDocument&, const PresentationDocument&) = default;
};

/// Throws SyntaxError, DuplicateRelation or UnknownGenerator.
PresentationDocument parse_document(std::string_view text);
std::string serialize(const PresentationDocument& doc);

/// Throws ConflictingOrder when a power relation disagrees with an order
/// line, BadIndex for conjugate relations with j <= i.
RawGroupPresentation to_group_raw(const PresentationDocument& doc);
RawAlgebraPresentation to_algebra_raw(const PresentationDocument& doc);

PresentationDocument to_document(const GroupPresentation& p);
PresentationDocument to_document(const AlgebraPresentation& p);

/// `g3*g2^-1*g1`, or `1`.
Word parse_word(std::string_view text, int n);

/// Sums of products of coefficients, generators and parenthesised
/// subexpressions, e.g. `a1*(a1*a1) + 2*a3`. A parenthesised part is
/// normalised before it is multiplied out.
FreeElement parse_algebra_expression(std::string_view text, const AlgebraPresentation& p);

std::string to_string(const LinearCombination& comb);

}  // namespace pcp
