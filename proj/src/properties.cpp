#include "spincc/properties.hpp"

#include <functional>
#include <random>

#include "spincc/chern.hpp"
#include "spincc/errors.hpp"
#include "spincc/steenrod.hpp"
#include "spincc/text.hpp"

namespace spincc {

namespace {

using Rng = std::mt19937_64;

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

mpz_class nonzero_coefficient(Rng& rng) {
  int c = uniform(rng, 1, 5);
  return uniform(rng, 0, 1) ? c : -c;
}

// Up to `terms` random monomials of a fixed degree.
Poly random_homogeneous(Rng& rng, const Ring& ring, int degree, int terms) {
  std::vector<Monomial> b = basis(*ring, degree);
  Poly p(ring);
  if (b.empty()) return p;
  for (int t = 0; t < terms; ++t) {
    p += Poly::term(ring, b[std::size_t(uniform(rng, 0, int(b.size()) - 1))], nonzero_coefficient(rng));
  }
  return p;
}

Poly random_mixed(Rng& rng, const Ring& ring) {
  Poly p(ring);
  int terms = uniform(rng, 0, 6);
  for (int t = 0; t < terms; ++t) {
    std::vector<Exponent> e(ring->size());
    for (auto& x : e) x = Exponent(uniform(rng, 0, 2));
    p += Poly::term(ring, Monomial(*ring, std::move(e)), nonzero_coefficient(rng));
  }
  return p;
}

using Case = std::function<std::string(Rng&)>;

std::string ring_laws(Rng& rng) {
  static const Ring ring = RingSpec::make({{"y", 2}, {"c1", 2}, {"c2", 4}, {"c3", 6}}, 0);
  Poly a = random_mixed(rng, ring), b = random_mixed(rng, ring), c = random_mixed(rng, ring);
  if ((a * b) * c != a * (b * c)) return "associativity fails for " + render(a) + ", " + render(b);
  if (a * b != b * a) return "commutativity fails for " + render(a) + ", " + render(b);
  if (a * (b + c) != a * b + a * c) return "distributivity fails for " + render(a);
  return {};
}

const BsoModel& bso16() {
  static const BsoModel model(16);
  return model;
}

std::string cartan(Rng& rng) {
  const BsoModel& m = bso16();
  int da = uniform(rng, 2, 10), db = uniform(rng, 2, 20 - da);
  Poly a = random_homogeneous(rng, m.ring(), da, 3);
  Poly b = random_homogeneous(rng, m.ring(), db, 3);
  int i = uniform(rng, 0, da + db);
  Poly sum(m.ring());
  for (int j = 0; j <= i; ++j) sum += m.sq(j, a) * m.sq(i - j, b);
  if (m.sq(i, a * b) != sum) return "Sq^" + std::to_string(i) + " of (" + render(a) + ")(" + render(b) + ")";
  return {};
}

std::string sq1_squared(Rng& rng) {
  const BsoModel& m = bso16();
  Poly u = random_homogeneous(rng, m.ring(), uniform(rng, 2, 20), 4);
  if (!m.sq1(m.sq1(u)).is_zero()) return "Sq^1 Sq^1 of " + render(u);
  return {};
}

const UcModel& uc4() {
  static const UcModel model(4);
  return model;
}

std::string psi_multiplicative(Rng& rng) {
  const UcModel& m = uc4();
  Poly u = random_homogeneous(rng, m.ring(), 2 * uniform(rng, 1, 3), 3);
  Poly v = random_homogeneous(rng, m.ring(), 2 * uniform(rng, 1, 3), 3);
  if (!reduce_mod(m.psi(u * v) - m.psi(u) * m.psi(v), 2).is_zero()) {
    return "psi(uv) != psi(u)psi(v) mod 2 for u = " + render(u) + ", v = " + render(v);
  }
  return {};
}

std::string psi_square(Rng& rng) {
  const UcModel& m = uc4();
  Poly u = random_homogeneous(rng, m.ring(), 2 * uniform(rng, 1, 4), 4);
  if (!reduce_mod(m.expand(m.psi(u)) - u * u, 2).is_zero()) return "psi(u) != u^2 mod 2 for " + render(u);
  return {};
}

std::string gamma_sum(Rng& rng) {
  const BsoModel& m = bso16();
  int degree = 2 * uniform(rng, 1, 4);
  Poly u1 = random_homogeneous(rng, m.ring(), degree, 3);
  Poly u2 = random_homogeneous(rng, m.ring(), degree, 3);
  if (!m.gamma_sum_law(u1, u2).in_kernel) return "gamma sum law fails for " + render(u1) + ", " + render(u2);
  return {};
}

const std::vector<std::pair<std::string, Case>>& registry() {
  static const std::vector<std::pair<std::string, Case>> cases = {
      {"ring-laws", ring_laws},
      {"cartan", cartan},
      {"sq1-squared", sq1_squared},
      {"psi-multiplicative", psi_multiplicative},
      {"psi-square", psi_square},
      {"gamma-sum", gamma_sum},
  };
  return cases;
}

}  // namespace

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

PropertyResult run_property(const std::string& name, std::uint64_t seed, int cases) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    Rng rng(seed);
    PropertyResult r{name, cases, 0, {}};
    for (int i = 0; i < cases; ++i) {
      std::string failure = fn(rng);
      if (failure.empty()) continue;
      if (r.failures++ == 0) r.first_failure = failure;
    }
    return r;
  }
  throw DomainError("unknown property " + name);
}

}  // namespace spincc
