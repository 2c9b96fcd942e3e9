#include "spincc/chern.hpp"

#include "spincc/errors.hpp"
#include "spincc/text.hpp"

namespace spincc {

namespace {

std::vector<Variable> chern_variables(int k, bool with_y, const char* letter, int scale) {
  std::vector<Variable> v;
  if (with_y) v.push_back({"y", 2});
  for (int i = 1; i <= k; ++i) v.push_back({letter + std::to_string(i), scale * i});
  return v;
}

}  // namespace

UcModel::UcModel(int k) : k_(k) {
  if (k < 1 || k > kMaxRank) throw DomainError("rank must be in 1..8");
  ring_ = RingSpec::make(chern_variables(k, true, "c", 2), 0);
  view_ring_ = RingSpec::make(chern_variables(k, true, "P", 4), 0);
  chern_ring_ = RingSpec::make(chern_variables(k, false, "c", 2), 0);
  for (int r = 1; r <= k; ++r) expansion_.emplace_back("P" + std::to_string(r), pontryagin_class(r));
}

Poly UcModel::y() const { return Poly::variable(ring_, "y"); }

Poly UcModel::c(int i) const {
  if (i == 0) return Poly(ring_, 1);
  if (i < 0 || i > k_) return Poly(ring_);
  return Poly::term(ring_, Monomial::generator(*ring_, std::size_t(i)), 1);
}

Poly UcModel::u0() const { return y().scaled(2) - c(1); }

Poly UcModel::parse(std::string_view text) const { return spincc::parse(text, ring_); }

Poly UcModel::pontryagin_class(int r) const {
  if (r < 1) throw DomainError("Pontryagin index must be positive");
  Poly p(ring_);
  for (int a = 0; a <= 2 * r; ++a) {
    Poly t = c(a) * c(2 * r - a);
    p += (r + a) % 2 == 0 ? t : -t;
  }
  return p;
}

Poly UcModel::expand(const Poly& view) const {
  require_same_ring(view.ring(), view_ring_, "expand");
  return substitute(view, ring_, expansion_);
}

Poly UcModel::psi(const Poly& u) const {
  require_same_ring(u.ring(), ring_, "psi");
  if (!u.is_homogeneous()) throw DomainError("psi needs a homogeneous class");
  Poly out(view_ring_);
  for (const auto& [m, coeff] : u.terms()) {
    if (mpz_even_p(coeff.get_mpz_t())) continue;
    std::vector<Exponent> e = m.exponents();
    e[0] = Exponent(2 * e[0]);
    out.accumulate(Monomial(*view_ring_, std::move(e)), 1);
  }
  return out;
}

Poly UcModel::delta(const Poly& u) const {
  Poly diff = expand(psi(u)) - u * u;
  try {
    return exact_div_int(diff, 2);
  } catch (const DomainError& e) {
    throw InvariantViolation(std::string("delta: psi(u) - u^2 is not even: ") + e.what());
  }
}

DeltaSequence UcModel::delta_sequence(int r_max) const {
  if (r_max < 0 || r_max > 4) throw DomainError("delta sequence length must be in 0..4");
  DeltaSequence s;
  s.terms.push_back(u0());
  for (int r = 0; r < r_max; ++r) {
    const Poly& u = s.terms.back();
    Poly view = psi(u);
    Poly expanded = expand(view);
    Poly next = delta(u);
    s.certificates.push_back(next.scaled(2) + u * u == expanded);
    s.psi_images.push_back(std::move(view));
    s.terms.push_back(std::move(next));
  }
  s.psi_images.push_back(psi(s.terms.back()));
  return s;
}

Poly UcModel::a_prime_pullback(const Poly& u) const {
  require_same_ring(u.ring(), ring_, "a_prime_pullback");
  Poly c1 = Poly::variable(chern_ring_, "c1");
  return substitute(u, chern_ring_, {{"y", c1}, {"c1", c1.scaled(2)}});
}

WeylGenerators UcModel::weyl_generators(int r_max) const {
  if (r_max < 1) throw DomainError("weyl generators need r_max >= 1");
  WeylGenerators out;
  for (int r = 1; r <= k_; ++r) out.g.push_back(a_prime_pullback(pontryagin_class(r)));
  DeltaSequence s = delta_sequence(r_max);
  for (const auto& t : s.terms) out.alpha.push_back(a_prime_pullback(t));
  for (int r = 0; r < r_max; ++r) {
    out.f.push_back(a_prime_pullback(expand(s.psi_images[std::size_t(r)])));
    const Poly& a = out.alpha[std::size_t(r)];
    out.residues.push_back(out.alpha[std::size_t(r) + 1].scaled(2) + a * a - out.f.back());
  }
  return out;
}

mpz_class e_hom(const Poly& u) {
  const RingSpec& ring = u.spec();
  std::optional<std::size_t> c1 = ring.index_of("c1");
  mpz_class total = 0;
  for (const auto& [m, coeff] : u.terms()) {
    bool pure = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0 || (c1 && i == *c1)) continue;
      if (ring.name_of(i) == "y") throw DomainError("e is only defined on y-free classes");
      pure = false;
    }
    if (pure) total += coeff;
  }
  return total;
}

namespace {

// Gauss reduction of a polynomial in Z[y, x1..xk] symmetric in the x's.
Poly symmetric_reduce(Poly f, int k, const UcModel& model) {
  const Ring& xr = f.ring();
  // e[i] = i-th elementary symmetric polynomial in x1..xk
  std::vector<Poly> e(std::size_t(k) + 1, Poly(xr));
  e[0] = Poly(xr, 1);
  for (int i = 1; i <= k; ++i) {
    Poly xi = Poly::variable(xr, "x" + std::to_string(i));
    for (int j = i; j >= 1; --j) e[std::size_t(j)] += xi * e[std::size_t(j) - 1];
  }
  Poly y = Poly::variable(xr, "y");
  Poly out(model.ring());
  while (!f.is_zero()) {
    const Monomial lead = f.terms().begin()->first;
    const mpz_class coeff = f.terms().begin()->second;
    std::vector<int> a(std::size_t(k) + 2, 0);
    for (int i = 1; i <= k; ++i) a[std::size_t(i)] = lead[std::size_t(i)];
    Poly sub = y.pow(lead[0]).scaled(coeff);
    Poly target = model.y().pow(lead[0]).scaled(coeff);
    for (int i = 1; i <= k; ++i) {
      int power = a[std::size_t(i)] - a[std::size_t(i) + 1];
      if (power < 0) throw InvariantViolation("theta: product is not symmetric");
      if (power == 0) continue;
      sub *= e[std::size_t(i)].pow(unsigned(power));
      target *= model.c(i).pow(unsigned(power));
    }
    f -= sub;
    if (f.terms().count(lead)) throw InvariantViolation("theta: symmetric reduction stalled");
    out += target;
  }
  return out;
}

}  // namespace

Poly theta_pullback(int n) {
  if (n != 4 && n != 6 && n != 8 && n != 10) throw DomainError("theta pullback needs n in {4,6,8,10}");
  int k = n / 2;
  UcModel model(k);
  std::vector<Variable> vars{{"y", 2}};
  for (int i = 1; i <= k; ++i) vars.push_back({"x" + std::to_string(i), 2});
  Ring xr = RingSpec::make(std::move(vars), 0);
  Poly y = Poly::variable(xr, "y");
  std::vector<Poly> xs;
  for (int i = 1; i <= k; ++i) xs.push_back(Poly::variable(xr, "x" + std::to_string(i)));

  Poly product(xr, 1);
  for (unsigned s = 0; s < (1u << k); ++s) {
    if (__builtin_popcount(s) % 2 != 0) continue;
    Poly factor = y;
    for (int i = 0; i < k; ++i) {
      if (s & (1u << i)) factor -= xs[std::size_t(i)];
    }
    product *= factor;
  }
  return symmetric_reduce(std::move(product), k, model);
}

}  // namespace spincc
