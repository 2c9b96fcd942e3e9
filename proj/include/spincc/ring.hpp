#pragma once

// Exact graded multivariate polynomials over Z, Z/2 and Z/4.
//
// A RingSpec fixes an ordered list of named, positively graded variables and
// a coefficient modulus (0 for the integers). Polynomials keep their terms in
// canonical form: no zero coefficients, coefficients reduced into [0, m) when
// the modulus m is nonzero, and monomials ordered graded-lex on the declared
// variable order (degree first, then exponent vectors compared from the first
// variable). The same order drives rendering and every pivot choice made by
// the linear-algebra solvers built on top of this layer.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spincc {

struct Variable {
  std::string name;
  int degree = 1;

  bool operator==(const Variable&) const = default;
};

class RingSpec;
using Ring = std::shared_ptr<const RingSpec>;

class RingSpec {
 public:
  // Throws DomainError on duplicate names, degrees < 1 or a modulus outside
  // {0, 2, 4}.
  static Ring make(std::vector<Variable> variables, int modulus);

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  std::size_t size() const noexcept { return variables_.size(); }
  int modulus() const noexcept { return modulus_; }
  int degree_of(std::size_t index) const { return variables_[index].degree; }
  const std::string& name_of(std::size_t index) const { return variables_[index].name; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  Ring with_modulus(int modulus) const;

  bool operator==(const RingSpec& other) const {
    return modulus_ == other.modulus_ && variables_ == other.variables_;
  }

 private:
  RingSpec(std::vector<Variable> variables, int modulus)
      : variables_(std::move(variables)), modulus_(modulus) {}

  std::vector<Variable> variables_;
  int modulus_ = 0;
};

bool same_ring(const Ring& a, const Ring& b);
void require_same_ring(const Ring& a, const Ring& b, std::string_view operation);

using Exponent = std::uint16_t;

class Monomial {
 public:
  Monomial() = default;
  Monomial(const RingSpec& ring, std::vector<Exponent> exponents);

  static Monomial one(const RingSpec& ring);
  static Monomial generator(const RingSpec& ring, std::size_t index, Exponent power = 1);

  int degree() const noexcept { return degree_; }
  const std::vector<Exponent>& exponents() const noexcept { return exponents_; }
  Exponent operator[](std::size_t index) const { return exponents_[index]; }
  std::size_t size() const noexcept { return exponents_.size(); }
  bool is_one() const noexcept { return degree_ == 0; }
  bool divides(const Monomial& other) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // a / b; requires b.divides(a).
  friend Monomial operator/(const Monomial& a, const Monomial& b);

  // Graded first, then lexicographic on the exponent vector.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  int degree_ = 0;
  std::vector<Exponent> exponents_;
};

class Poly {
 public:
  // Descending canonical order: the leading term comes first.
  using Terms = std::map<Monomial, mpz_class, std::greater<>>;

  explicit Poly(Ring ring);
  Poly(Ring ring, const mpz_class& constant);

  static Poly variable(Ring ring, std::string_view name);
  static Poly term(Ring ring, const Monomial& monomial, const mpz_class& coefficient);

  const Ring& ring() const noexcept { return ring_; }
  const RingSpec& spec() const noexcept { return *ring_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  mpz_class coefficient(const Monomial& monomial) const;
  // Zero is homogeneous of every degree; degree() is empty for it.
  bool is_homogeneous() const;
  std::optional<int> degree() const;
  Poly graded_component(int degree) const;

  // Adds coefficient * monomial, keeping canonical form.
  void accumulate(const Monomial& monomial, const mpz_class& coefficient);

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly operator-() const;
  Poly scaled(const mpz_class& factor) const;
  Poly pow(unsigned exponent) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const mpz_class& k, const Poly& p) { return p.scaled(k); }
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  Ring ring_;
  Terms terms_;
};

// Polynomials with exact rational coefficients over a modulus-0 ring.
class RatPoly {
 public:
  using Terms = std::map<Monomial, mpq_class, std::greater<>>;

  explicit RatPoly(Ring ring);
  RatPoly(Ring ring, const mpq_class& constant);
  RatPoly(const Poly& integral);  // NOLINT(google-explicit-constructor)

  static RatPoly variable(Ring ring, std::string_view name);

  const Ring& ring() const noexcept { return ring_; }
  const RingSpec& spec() const noexcept { return *ring_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  mpq_class coefficient(const Monomial& monomial) const;
  // Least common multiple of the coefficient denominators (1 for zero).
  mpz_class denominator() const;
  bool is_integral() const;
  // Throws DomainError when some coefficient is not an integer.
  Poly to_poly() const;
  std::optional<int> degree() const;

  void accumulate(const Monomial& monomial, const mpq_class& coefficient);

  RatPoly& operator+=(const RatPoly& other);
  RatPoly& operator-=(const RatPoly& other);
  RatPoly operator-() const;
  RatPoly scaled(const mpq_class& factor) const;
  RatPoly pow(unsigned exponent) const;

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
  friend RatPoly operator*(const mpq_class& k, const RatPoly& p) { return p.scaled(k); }
  friend bool operator==(const RatPoly& a, const RatPoly& b);

 private:
  Ring ring_;
  Terms terms_;
};

using Substitution = std::vector<std::pair<std::string, Poly>>;
using RatSubstitution = std::vector<std::pair<std::string, RatPoly>>;

// Ring homomorphism into `target`. Variables absent from `images` go to the
// variable of the same name in the target ring. Every image must be
// homogeneous of its source variable's degree, and the target modulus must
// divide the source modulus (0 is divisible by everything).
Poly substitute(const Poly& p, const Ring& target, const Substitution& images);
RatPoly substitute(const RatPoly& p, const Ring& target, const RatSubstitution& images);
// Same-ring shorthand.
Poly substitute(const Poly& p, const Substitution& images);

// Coefficient-wise quotient by a nonzero integer; the ring must have modulus 0
// and every coefficient must be divisible (the error names the first
// offending monomial).
Poly exact_div_int(const Poly& p, const mpz_class& divisor);

// rho_m: reduce an integral polynomial into the same ring with modulus m.
Poly reduce_mod(const Poly& p, int modulus);

// All monomials of degree d, in ascending canonical order.
std::vector<Monomial> basis(const RingSpec& ring, int degree);

// Content of the variable exponent in `monomial`, looked up by name.
Exponent exponent_of(const RingSpec& ring, const Monomial& monomial, std::string_view name);

}  // namespace spincc
