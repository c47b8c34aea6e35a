#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropmirror/exactlat.hpp"

namespace tropmirror {

using Exponent = std::vector<int>;

// Sparse multivariate polynomial over Q.
class Polynomial {
 public:
  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
  static Polynomial monomial(const Exponent& e, const Rational& c = 1);
  static Polynomial variable(std::size_t nvars, std::size_t k);
  static Polynomial constant(std::size_t nvars, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial derivative(std::size_t k) const;
  Rational evaluate(const std::vector<Rational>& point) const;
  // total degree vector of a monomial (throws unless is_monomial)
  Exponent degree() const;
  std::string to_string(const std::vector<std::string>& names = {}) const;

 private:
  void add_term(const Exponent& e, const Rational& c);
  std::size_t nvars_;
  std::map<Exponent, Rational> terms_;
};

}  // namespace tropmirror
