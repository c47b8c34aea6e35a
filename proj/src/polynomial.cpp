#include "tropmirror/polynomial.hpp"

namespace tropmirror {

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(e.size());
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t k) {
  Exponent e(nvars, 0);
  e.at(k) = 1;
  return monomial(e);
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) { return monomial(Exponent(nvars, 0), c); }

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorCode::MismatchedAmbient, "polynomial rings differ");
  Polynomial p = *this;
  for (auto& [e, c] : o.terms_) p.add_term(e, c);
  return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorCode::MismatchedAmbient, "polynomial rings differ");
  Polynomial p = *this;
  for (auto& [e, c] : o.terms_) p.add_term(e, -c);
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.nvars_ != nvars_) fail(ErrorCode::MismatchedAmbient, "polynomial rings differ");
  Polynomial p(nvars_);
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) {
      Exponent e(nvars_);
      for (std::size_t k = 0; k < nvars_; ++k) e[k] = e1[k] + e2[k];
      p.add_term(e, c1 * c2);
    }
  return p;
}

Polynomial Polynomial::derivative(std::size_t k) const {
  Polynomial p(nvars_);
  for (auto& [e, c] : terms_) {
    if (e.at(k) == 0) continue;
    Exponent f = e;
    --f[k];
    p.add_term(f, c * e[k]);
  }
  return p;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
  if (x.size() != nvars_) fail(ErrorCode::DimensionMismatch, "evaluation point");
  Rational s = 0;
  for (auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < nvars_; ++k) {
      for (int j = 0; j < e[k]; ++j) t *= x[k];
      for (int j = 0; j > e[k]; --j) t /= x[k];
    }
    s += t;
  }
  return s;
}

Exponent Polynomial::degree() const {
  if (!is_monomial()) fail(ErrorCode::Internal, "degree of a non-monomial");
  return terms_.begin()->first;
}

std::string Polynomial::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto& [e, c] = *it;
    std::string mono;
    for (std::size_t k = 0; k < nvars_; ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += k < names.size() ? names[k] : "y" + std::to_string(k + 1);
      if (e[k] != 1) mono += "^" + std::to_string(e[k]);
    }
    std::string coef = c.get_str();
    std::string term;
    if (mono.empty())
      term = coef;
    else if (c == 1)
      term = mono;
    else if (c == -1)
      term = "-" + mono;
    else
      term = coef + "*" + mono;
    if (!s.empty()) s += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
    else s = term;
  }
  return s;
}

}  // namespace tropmirror
