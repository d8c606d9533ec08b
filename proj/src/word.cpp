#include "pcp/word.hpp"

#include <sstream>

namespace pcp {

Word Word::letter(Gen g, const BigInt& exp) {
  Word w;
  w.append(g, exp);
  return w;
}

BigInt Word::length() const {
  BigInt total = 0;
  for (const auto& r : runs_) total += abs(r.exp);
  return total;
}

void Word::append(Gen g, const BigInt& exp) {
  if (exp == 0) return;
  if (!runs_.empty() && runs_.back().gen == g && sgn(runs_.back().exp) == sgn(exp)) {
    runs_.back().exp += exp;
    return;
  }
  runs_.push_back({g, exp});
}

void Word::append(const Word& other) {
  for (const auto& r : other.runs_) append(r.gen, r.exp);
}

Word Word::inverse() const {
  Word w;
  for (auto it = runs_.rbegin(); it != runs_.rend(); ++it) w.append(it->gen, -it->exp);
  return w;
}

bool NormalWord::is_identity() const {
  for (const auto& x : exps_)
    if (x != 0) return false;
  return true;
}

Word NormalWord::to_word() const {
  Word w;
  for (int g = 1; g <= size(); ++g) w.append(g, (*this)[g]);
  return w;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& r : w.runs()) {
    if (!first) out << '*';
    first = false;
    out << 'g' << r.gen;
    if (r.exp != 1) out << '^' << r.exp.get_str();
  }
  return out.str();
}

std::string to_string(const NormalWord& w) { return to_string(w.to_word()); }

}  // namespace pcp
