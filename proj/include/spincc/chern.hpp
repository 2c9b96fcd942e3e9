#pragma once

// Z[y, c1, ..., ck] with the operators psi and delta, the pullbacks along
// a' and the coefficient functional e, and the Euler-class pullbacks theta_n.

#include <vector>

#include "spincc/ring.hpp"

namespace spincc {

struct DeltaSequence {
  // u0, delta(u0), ..., delta^r(u0)
  std::vector<Poly> terms;
  // psi(terms[r]) in Z[y, P1..Pk]
  std::vector<Poly> psi_images;
  // 2 terms[r+1] + terms[r]^2 == expand(psi_images[r])
  std::vector<bool> certificates;
};

struct WeylGenerators {
  std::vector<Poly> g;      // g_1 .. g_k
  std::vector<Poly> alpha;  // alpha_0 .. alpha_rmax (alpha_0 = 0)
  std::vector<Poly> f;      // f_0 .. f_{rmax-1}
  // 2 alpha_{r+1} + alpha_r^2 - f_r for r = 0 .. rmax-1; entry 0 is 2 alpha_1 - g_1.
  std::vector<Poly> residues;
};

class UcModel {
 public:
  static constexpr int kMaxRank = 8;

  explicit UcModel(int k);

  int k() const noexcept { return k_; }
  // Z[y, c1..ck], deg y = 2, deg c_i = 2i
  const Ring& ring() const noexcept { return ring_; }
  // Z[y, P1..Pk], deg P_r = 4r
  const Ring& view_ring() const noexcept { return view_ring_; }
  // Z[c1..ck]
  const Ring& chern_ring() const noexcept { return chern_ring_; }

  Poly y() const;
  // c_0 = 1, c_i = 0 for i > k
  Poly c(int i) const;
  Poly u0() const;
  Poly parse(std::string_view text) const;

  // c_r^2 - 2 c_{r-1} c_{r+1} + ... + 2 (-1)^r c_{2r}
  Poly pontryagin_class(int r) const;
  Poly expand(const Poly& view) const;

  // Odd-coefficient monomials y^r c^lambda go to y^{2r} P^lambda.
  Poly psi(const Poly& u) const;
  // (expand(psi(u)) - u^2) / 2
  Poly delta(const Poly& u) const;
  DeltaSequence delta_sequence(int r_max) const;

  // y -> c1, c1 -> 2 c1, c_r -> c_r
  Poly a_prime_pullback(const Poly& u) const;
  WeylGenerators weyl_generators(int r_max) const;

 private:
  int k_;
  Ring ring_;
  Ring view_ring_;
  Ring chern_ring_;
  Substitution expansion_;
};

// c1 -> 1, c_r -> 0 (r >= 2). Accepts any ring whose variables other than
// c1..c8 are absent from u; throws DomainError if u involves y.
mpz_class e_hom(const Poly& u);

// Product of (y - sum_{i in S} x_i) over even subsets S of {1..k}, n = 2k,
// rewritten in the elementary symmetric classes c_i. n in {4, 6, 8, 10}.
Poly theta_pullback(int n);

}  // namespace spincc
