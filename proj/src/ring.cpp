#include "spincc/ring.hpp"

#include <algorithm>
#include <set>

#include "spincc/errors.hpp"

namespace spincc {

namespace {

void normalize(mpz_class& c, int modulus) {
  if (modulus != 0) {
    c %= modulus;
    if (c < 0) c += modulus;
  }
}

std::string describe(const RingSpec& ring) {
  std::string s = "[";
  for (std::size_t i = 0; i < ring.size(); ++i) {
    if (i) s += ",";
    s += ring.name_of(i);
  }
  s += "] mod " + std::to_string(ring.modulus());
  return s;
}

std::string monomial_text(const RingSpec& ring, const Monomial& m) {
  if (m.is_one()) return "1";
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    s += ring.name_of(i);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s;
}

void require_rational_ring(const Ring& ring) {
  if (ring->modulus() != 0) throw DomainError("rational polynomials need a modulus-0 ring");
}

}  // namespace

Ring RingSpec::make(std::vector<Variable> variables, int modulus) {
  if (modulus != 0 && modulus != 2 && modulus != 4) {
    throw DomainError("unsupported modulus " + std::to_string(modulus));
  }
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.name.empty()) throw DomainError("empty variable name");
    if (v.degree < 1) throw DomainError("variable " + v.name + " has degree < 1");
    if (!seen.insert(v.name).second) throw DomainError("duplicate variable " + v.name);
  }
  return Ring(new RingSpec(std::move(variables), modulus));
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t RingSpec::require_index(std::string_view name) const {
  if (auto i = index_of(name)) return *i;
  throw DomainError("unknown variable " + std::string(name));
}

Ring RingSpec::with_modulus(int modulus) const { return make(variables_, modulus); }

bool same_ring(const Ring& a, const Ring& b) { return a == b || *a == *b; }

void require_same_ring(const Ring& a, const Ring& b, std::string_view operation) {
  if (!same_ring(a, b)) {
    throw RingMismatch(std::string(operation) + ": ring mismatch " + describe(*a) + " vs " +
                       describe(*b));
  }
}

Monomial::Monomial(const RingSpec& ring, std::vector<Exponent> exponents)
    : exponents_(std::move(exponents)) {
  if (exponents_.size() != ring.size()) throw DomainError("exponent vector length mismatch");
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    degree_ += ring.degree_of(i) * exponents_[i];
  }
}

Monomial Monomial::one(const RingSpec& ring) {
  return Monomial(ring, std::vector<Exponent>(ring.size(), 0));
}

Monomial Monomial::generator(const RingSpec& ring, std::size_t index, Exponent power) {
  std::vector<Exponent> e(ring.size(), 0);
  e.at(index) = power;
  return Monomial(ring, std::move(e));
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    if (exponents_[i] > other.exponents_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  r.degree_ += b.degree_;
  for (std::size_t i = 0; i < r.exponents_.size(); ++i) {
    unsigned e = unsigned(r.exponents_[i]) + b.exponents_[i];
    if (e > 0xFFFFu) throw DomainError("exponent overflow");
    r.exponents_[i] = Exponent(e);
  }
  return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
  if (!b.divides(a)) throw InvariantViolation("monomial quotient is not exact");
  Monomial r = a;
  r.degree_ -= b.degree_;
  for (std::size_t i = 0; i < r.exponents_.size(); ++i) r.exponents_[i] -= b.exponents_[i];
  return r;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Ring ring) : ring_(std::move(ring)) {}

Poly::Poly(Ring ring, const mpz_class& constant) : ring_(std::move(ring)) {
  accumulate(Monomial::one(*ring_), constant);
}

Poly Poly::variable(Ring ring, std::string_view name) {
  std::size_t i = ring->require_index(name);
  Poly p(ring);
  p.accumulate(Monomial::generator(*ring, i), 1);
  return p;
}

Poly Poly::term(Ring ring, const Monomial& monomial, const mpz_class& coefficient) {
  Poly p(std::move(ring));
  p.accumulate(monomial, coefficient);
  return p;
}

mpz_class Poly::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::optional<int> Poly::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->first.degree();
}

Poly Poly::graded_component(int degree) const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (m.degree() == degree) r.terms_.emplace_hint(r.terms_.end(), m, c);
  }
  return r;
}

void Poly::accumulate(const Monomial& monomial, const mpz_class& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) it->second += coefficient;
  normalize(it->second, ring_->modulus());
  if (it->second == 0) terms_.erase(it);
}

Poly& Poly::operator+=(const Poly& other) {
  require_same_ring(ring_, other.ring_, "add");
  for (const auto& [m, c] : other.terms_) accumulate(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  require_same_ring(ring_, other.ring_, "subtract");
  for (const auto& [m, c] : other.terms_) accumulate(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(const mpz_class& factor) const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) r.accumulate(m, c * factor);
  return r;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(ring_, 1);
  Poly base = *this;
  while (exponent) {
    if (exponent & 1u) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a.ring_, b.ring_, "multiply");
  Poly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.accumulate(ma * mb, ca * cb);
  }
  return r;
}

bool operator==(const Poly& a, const Poly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------- RatPoly

RatPoly::RatPoly(Ring ring) : ring_(std::move(ring)) { require_rational_ring(ring_); }

RatPoly::RatPoly(Ring ring, const mpq_class& constant) : RatPoly(std::move(ring)) {
  accumulate(Monomial::one(*ring_), constant);
}

RatPoly::RatPoly(const Poly& integral) : RatPoly(integral.ring()) {
  for (const auto& [m, c] : integral.terms()) {
    terms_.emplace_hint(terms_.end(), m, mpq_class(c));
  }
}

RatPoly RatPoly::variable(Ring ring, std::string_view name) {
  return RatPoly(Poly::variable(std::move(ring), name));
}

mpq_class RatPoly::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpz_class RatPoly::denominator() const {
  mpz_class d = 1;
  for (const auto& [m, c] : terms_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

bool RatPoly::is_integral() const { return denominator() == 1; }

Poly RatPoly::to_poly() const {
  Poly r(ring_);
  for (const auto& [m, c] : terms_) {
    if (c.get_den() != 1) {
      throw DomainError("coefficient " + c.get_str() + " of " + monomial_text(*ring_, m) +
                        " is not an integer");
    }
    r.accumulate(m, c.get_num());
  }
  return r;
}

std::optional<int> RatPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.degree();
  if (terms_.rbegin()->first.degree() != d) return std::nullopt;
  return d;
}

void RatPoly::accumulate(const Monomial& monomial, const mpq_class& coefficient) {
  if (coefficient == 0) return;
  mpq_class c = coefficient;
  c.canonicalize();
  auto [it, inserted] = terms_.try_emplace(monomial, c);
  if (!inserted) it->second += c;
  if (it->second == 0) terms_.erase(it);
}

RatPoly& RatPoly::operator+=(const RatPoly& other) {
  require_same_ring(ring_, other.ring_, "add");
  for (const auto& [m, c] : other.terms_) accumulate(m, c);
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& other) {
  require_same_ring(ring_, other.ring_, "subtract");
  for (const auto& [m, c] : other.terms_) accumulate(m, -c);
  return *this;
}

RatPoly RatPoly::operator-() const { return scaled(-1); }

RatPoly RatPoly::scaled(const mpq_class& factor) const {
  RatPoly r(ring_);
  if (factor == 0) return r;
  mpq_class f = factor;
  f.canonicalize();
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, c * f);
  return r;
}

RatPoly RatPoly::pow(unsigned exponent) const {
  RatPoly result(ring_, 1);
  RatPoly base = *this;
  while (exponent) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
  require_same_ring(a.ring_, b.ring_, "multiply");
  RatPoly r(a.ring_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) r.accumulate(ma * mb, ca * cb);
  }
  return r;
}

bool operator==(const RatPoly& a, const RatPoly& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

// ---------------------------------------------------------------- maps

namespace {

template <class P, class Images>
P substitute_impl(const P& p, const Ring& target, const Images& images) {
  const RingSpec& src = p.spec();
  int ms = src.modulus();
  int mt = target->modulus();
  if (mt != ms && !(mt != 0 && (ms == 0 || ms % mt == 0))) {
    throw DomainError("cannot map a modulus " + std::to_string(ms) + " ring into modulus " +
                      std::to_string(mt));
  }

  std::vector<std::optional<P>> image(src.size());
  for (const auto& [name, value] : images) {
    auto i = src.index_of(name);
    if (!i) throw DomainError("substitution names unknown variable " + name);
    require_same_ring(value.ring(), target, "substitute");
    auto d = value.degree();
    if (!value.is_zero() && (!d || *d != src.degree_of(*i))) {
      throw DomainError("image of " + name + " is not homogeneous of degree " +
                        std::to_string(src.degree_of(*i)));
    }
    image[*i] = value;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (image[i]) continue;
    auto j = target->index_of(src.name_of(i));
    if (!j) throw DomainError("variable " + src.name_of(i) + " has no image in the target ring");
    if (target->degree_of(*j) != src.degree_of(i)) {
      throw DomainError("variable " + src.name_of(i) + " changes degree in the target ring");
    }
    P g(target);
    g.accumulate(Monomial::generator(*target, *j), 1);
    image[i] = std::move(g);
  }

  // powers[i][e] = image[i]^e, filled on demand
  std::vector<std::vector<P>> powers(src.size());
  auto power = [&](std::size_t i, Exponent e) -> const P& {
    auto& row = powers[i];
    if (row.empty()) row.emplace_back(target, 1);
    while (row.size() <= e) row.push_back(row.back() * *image[i]);
    return row[e];
  };

  P result(target);
  for (const auto& [m, c] : p.terms()) {
    P t(target, c);
    for (std::size_t i = 0; i < m.size() && !t.is_zero(); ++i) {
      if (m[i]) t = t * power(i, m[i]);
    }
    result += t;
  }
  return result;
}

}  // namespace

Poly substitute(const Poly& p, const Ring& target, const Substitution& images) {
  return substitute_impl(p, target, images);
}

RatPoly substitute(const RatPoly& p, const Ring& target, const RatSubstitution& images) {
  return substitute_impl(p, target, images);
}

Poly substitute(const Poly& p, const Substitution& images) {
  return substitute_impl(p, p.ring(), images);
}

Poly exact_div_int(const Poly& p, const mpz_class& divisor) {
  if (divisor == 0) throw DomainError("division by zero");
  if (p.spec().modulus() != 0) throw DomainError("exact division needs integer coefficients");
  Poly r(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t())) {
      throw DomainError("coefficient " + c.get_str() + " of " + monomial_text(p.spec(), m) +
                        " is not divisible by " + divisor.get_str());
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    r.accumulate(m, q);
  }
  return r;
}

Poly reduce_mod(const Poly& p, int modulus) {
  int source = p.spec().modulus();
  if (source != 0 && source % modulus != 0) {
    throw DomainError("cannot reduce modulus " + std::to_string(source) + " to " +
                      std::to_string(modulus));
  }
  Ring target = source == modulus ? p.ring() : p.spec().with_modulus(modulus);
  Poly r(target);
  for (const auto& [m, c] : p.terms()) r.accumulate(m, c);
  return r;
}

std::vector<Monomial> basis(const RingSpec& ring, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<Exponent> e(ring.size(), 0);
  // depth-first over variables, filling the remaining degree
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == ring.size()) {
      if (left == 0) out.emplace_back(ring, e);
      return;
    }
    int d = ring.degree_of(i);
    for (int k = left / d; k >= 0; --k) {
      e[i] = Exponent(k);
      self(self, i + 1, left - k * d);
    }
    e[i] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

Exponent exponent_of(const RingSpec& ring, const Monomial& monomial, std::string_view name) {
  return monomial[ring.require_index(name)];
}

}  // namespace spincc
