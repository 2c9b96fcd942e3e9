#include "spincc/steenrod.hpp"

#include <algorithm>

#include "spincc/errors.hpp"
#include "spincc/text.hpp"

namespace spincc {

bool binomial_odd(int a, int b) {
  if (b < 0) return false;
  if (a == -1) return true;  // C(-1, b) = (-1)^b
  if (a < 0 || b > a) return false;
  return (a & b) == b;
}

BitVector to_coordinates(const Poly& p, const std::vector<Monomial>& basis) {
  BitVector x(basis.size());
  for (const auto& [m, c] : p.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), m);
    if (it == basis.end() || *it != m) throw InvariantViolation("monomial outside basis");
    if (c.get_ui() & 1u) x.flip(std::size_t(it - basis.begin()));
  }
  return x;
}

Poly from_coordinates(const Ring& ring, const BitVector& x, const std::vector<Monomial>& basis) {
  Poly p(ring);
  for (std::size_t i = x.next_set(0); i < x.size(); i = x.next_set(i + 1)) p.accumulate(basis[i], 1);
  return p;
}

namespace {

std::vector<Variable> w_variables(int n) {
  std::vector<Variable> v;
  for (int j = 2; j <= n; ++j) v.push_back({"w" + std::to_string(j), j});
  return v;
}

}  // namespace

BsoModel::BsoModel(int n, int degree_bound)
    : n_(n), degree_bound_(degree_bound), cache_(std::make_shared<Cache>()) {
  if (n < 7) throw DomainError("BSO(n) model needs n >= 7");
  if (degree_bound < 2) throw DomainError("degree bound must be at least 2");
  ring_ = RingSpec::make(w_variables(n), 2);

  std::vector<Variable> free;
  for (int r = 1; r <= (n - 1) / 2; ++r) free.push_back({"p" + std::to_string(r), 4 * r});
  if (n % 2 == 0) free.push_back({"e" + std::to_string(n), n});
  free_ring_ = RingSpec::make(std::move(free), 0);

  std::vector<Variable> chern;
  for (int i = 1; i <= n / 2; ++i) chern.push_back({"c" + std::to_string(i), 2 * i});
  chern_ring_ = RingSpec::make(std::move(chern), 2);

  wu_.resize(std::size_t(n) + 1);
  for (int j = 2; j <= n; ++j) {
    for (int i = 0; i <= j; ++i) {
      Poly s(ring_);
      for (int t = 0; t <= i; ++t) {
        if (binomial_odd(j - i + t - 1, t)) s += w(i - t) * w(j + t);
      }
      wu_[std::size_t(j)].push_back(std::move(s));
    }
  }
}

Poly BsoModel::w(int j) const {
  if (j == 0) return Poly(ring_, 1);
  if (j == 1 || j > n_) return Poly(ring_);
  return Poly::term(ring_, Monomial::generator(*ring_, std::size_t(j - 2)), 1);
}

Poly BsoModel::parse(std::string_view text) const { return spincc::parse(text, ring_); }

void BsoModel::require_model(const Poly& u, const char* op) const {
  require_same_ring(u.ring(), ring_, op);
}

Poly BsoModel::sq_monomial(int i, const Monomial& m,
                           std::map<std::pair<int, Monomial>, Poly>& memo) const {
  if (i == 0) return Poly::term(ring_, m, 1);
  if (i > m.degree()) return Poly(ring_);
  auto key = std::make_pair(i, m);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  std::size_t k = 0;
  while (m[k] == 0) ++k;
  int j = int(k) + 2;
  Monomial rest = m / Monomial::generator(*ring_, k);
  Poly out(ring_);
  for (int t = 0; t <= std::min(i, j); ++t) {
    const Poly& head = wu_[std::size_t(j)][std::size_t(t)];
    if (head.is_zero()) continue;
    Poly tail = sq_monomial(i - t, rest, memo);
    if (!tail.is_zero()) out += head * tail;
  }
  memo.emplace(std::move(key), out);
  return out;
}

Poly BsoModel::sq(int i, const Poly& u) const {
  require_model(u, "sq");
  if (i < 0) throw DomainError("negative Steenrod square");
  std::map<std::pair<int, Monomial>, Poly> memo;
  Poly out(ring_);
  for (const auto& [m, c] : u.terms()) out += sq_monomial(i, m, memo);
  return out;
}

Poly BsoModel::sq1(const Poly& u) const {
  require_model(u, "sq1");
  // Sq^1 is a derivation with Sq^1 w_j = (j - 1) w_{j+1}.
  Poly out(ring_);
  for (const auto& [m, c] : u.terms()) {
    for (std::size_t k = 0; k < m.size(); ++k) {
      int j = int(k) + 2;
      if (m[k] % 2 == 0 || j % 2 == 1 || j + 1 > n_) continue;
      Monomial image = m / Monomial::generator(*ring_, k) * Monomial::generator(*ring_, k + 1);
      out.accumulate(image, 1);
    }
  }
  return out;
}

std::vector<Poly> BsoModel::sigma(int k) const {
  if (k < 1) throw DomainError("sigma needs k >= 1");
  std::vector<Poly> out{w(3)};
  for (int j = 1; j < k; ++j) out.push_back(sq(1 << j, out.back()));
  return out;
}

std::shared_ptr<const Sq1Matrix> BsoModel::bockstein_kernel_matrix(int degree) const {
  if (degree < 0 || degree + 1 > degree_bound_) {
    throw DomainError("degree " + std::to_string(degree) + " exceeds the degree bound " +
                      std::to_string(degree_bound_));
  }
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->matrices.find(degree); it != cache_->matrices.end()) return it->second;
  }
  auto domain = basis(*ring_, degree);
  auto codomain = basis(*ring_, degree + 1);
  Gf2Matrix a(codomain.size(), domain.size());
  for (std::size_t c = 0; c < domain.size(); ++c) {
    BitVector col = to_coordinates(sq1(Poly::term(ring_, domain[c], 1)), codomain);
    for (std::size_t r = col.next_set(0); r < col.size(); r = col.next_set(r + 1)) a.set(r, c);
  }
  Rref rref(a);
  auto built = std::make_shared<const Sq1Matrix>(
      Sq1Matrix{degree, std::move(domain), std::move(codomain), std::move(a), std::move(rref)});
  std::lock_guard lock(cache_->mutex);
  return cache_->matrices.emplace(degree, std::move(built)).first->second;
}

Poly BsoModel::gamma(const Poly& u) const {
  require_model(u, "gamma");
  if (u.is_zero()) return Poly(ring_);
  auto d = u.degree();
  if (!d || *d % 2 != 0) throw DomainError("gamma needs a homogeneous class of even degree");
  int target = 2 * *d;
  if (target + 1 > degree_bound_) {
    throw DomainError("gamma of degree " + std::to_string(*d) + " exceeds the degree bound " +
                      std::to_string(degree_bound_));
  }
  Poly su = sq1(u);
  Poly rhs = sq(*d, su) + u * su;
  auto m = bockstein_kernel_matrix(target);
  auto x = m->rref.solve(to_coordinates(rhs, m->codomain));
  if (!x) throw InvariantViolation("gamma: right-hand side is not in the image of Sq^1");
  return from_coordinates(ring_, *x, m->domain);
}

GammaSumResidue BsoModel::gamma_sum_law(const Poly& u1, const Poly& u2) const {
  Poly residue = gamma(u1 + u2) - gamma(u1) - gamma(u2) - u1 * u2;
  bool in_kernel = sq1(residue).is_zero();
  return {std::move(residue), in_kernel};
}

std::string BsoModel::tabulated_w2(int r) {
  switch (r) {
    case 0:
      return "w2";
    case 1:
      return "w4";
    case 2:
      return "w8 + w2w6";
    case 3:
      return "w16 + w2w14 + w4w12 + w6w10 + w2w6w8 + w4w6^2 + w2w7^2"
             " + w3^2(w10 + w2w8 + w4w6) + w2^2(w12 + w2w10 + w4w8)";
    default:
      throw DomainError("no tabulated representative for step " + std::to_string(r));
  }
}

std::vector<DerivedStep> BsoModel::derived_w2(int r_max) const {
  if (r_max < 0 || r_max > 20) throw DomainError("step count out of range");
  if ((1L << (r_max + 1)) + 1 > degree_bound_) {
    throw DomainError("derived sequence through step " + std::to_string(r_max) +
                      " exceeds the degree bound " + std::to_string(degree_bound_));
  }
  Ring wide = RingSpec::make(w_variables(std::max(n_, 16)), 2);
  Substitution truncate;
  for (int j = n_ + 1; j <= 16; ++j) truncate.emplace_back("w" + std::to_string(j), Poly(ring_));

  std::vector<DerivedStep> out;
  out.push_back({0, w(2), DerivedStep::Source::Tabulated, Poly(ring_), Poly(ring_), true});
  for (int r = 1; r <= r_max; ++r) {
    const Poly prev = out.back().value;
    bool tabulated = r <= 3;
    Poly value = tabulated ? substitute(spincc::parse(tabulated_w2(r), wide), ring_, truncate)
                           : gamma(prev);
    Poly sp = sq1(prev);
    Poly lhs = sq1(value);
    Poly rhs = sq(1 << r, sp) + prev * sp;
    bool holds = lhs == rhs;
    out.push_back({r, std::move(value),
                   tabulated ? DerivedStep::Source::Tabulated : DerivedStep::Source::Solver,
                   std::move(lhs), std::move(rhs), holds});
  }
  return out;
}

FreeImage BsoModel::f_free(const Poly& u) const {
  require_model(u, "f_free");
  FreeImage out{Poly(free_ring_), Poly(ring_)};
  std::string e_name = "e" + std::to_string(n_);
  for (const auto& [m, c] : u.terms()) {
    std::vector<Exponent> e(free_ring_->size(), 0);
    bool torsion = false;
    for (std::size_t k = 0; k < m.size() && !torsion; ++k) {
      if (m[k] == 0) continue;
      int j = int(k) + 2;
      if (j % 2 == 1) {
        torsion = true;
      } else if (j == n_) {
        e[free_ring_->require_index(e_name)] += Exponent(2 * m[k]);
      } else {
        e[std::size_t(j / 2 - 1)] += m[k];
      }
    }
    if (torsion) {
      out.torsion.accumulate(m, 1);
    } else {
      out.free.accumulate(Monomial(*free_ring_, std::move(e)), 1);
    }
  }
  return out;
}

bool BsoModel::ideal_member(const Poly& p, const std::vector<Poly>& generators) const {
  require_model(p, "ideal_member");
  if (p.is_zero()) return true;
  auto d = p.degree();
  if (!d) throw DomainError("ideal_member needs a homogeneous polynomial");
  if (*d > degree_bound_) throw DomainError("degree exceeds the degree bound");
  auto target = basis(*ring_, *d);
  std::vector<BitVector> columns;
  for (const auto& g : generators) {
    require_model(g, "ideal_member");
    if (g.is_zero()) continue;
    auto dg = g.degree();
    if (!dg) throw DomainError("ideal generators must be homogeneous");
    if (*dg > *d) continue;
    for (const auto& m : basis(*ring_, *d - *dg)) {
      columns.push_back(to_coordinates(Poly::term(ring_, m, 1) * g, target));
    }
  }
  Gf2Matrix a(target.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& col = columns[c];
    for (std::size_t r = col.next_set(0); r < col.size(); r = col.next_set(r + 1)) a.set(r, c);
  }
  return Rref(std::move(a)).solve(to_coordinates(p, target)).has_value();
}

Poly BsoModel::real_reduction(const Poly& u) const {
  require_model(u, "real_reduction");
  Substitution images;
  for (int j = 2; j <= n_; ++j) {
    std::string name = "w" + std::to_string(j);
    if (j % 2 == 1) {
      images.emplace_back(name, Poly(chern_ring_));
    } else {
      images.emplace_back(name, Poly::variable(chern_ring_, "c" + std::to_string(j / 2)));
    }
  }
  return substitute(u, chern_ring_, images);
}

}  // namespace spincc
