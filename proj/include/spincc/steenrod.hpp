#pragma once

// Mod-2 cohomology of BSO(n): Z/2[w2, ..., wn] with Steenrod squares given by
// the Wu formula on generators and the Cartan rule on products.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "spincc/gf2.hpp"
#include "spincc/ring.hpp"

namespace spincc {

// Sq^1 from degree d to degree d + 1 in the ascending monomial bases.
struct Sq1Matrix {
  int degree = 0;
  std::vector<Monomial> domain;
  std::vector<Monomial> codomain;
  Gf2Matrix matrix;
  Rref rref;

  std::size_t rank() const { return rref.rank(); }
};

struct DerivedStep {
  enum class Source { Tabulated, Solver };

  int index = 0;
  Poly value;
  Source source = Source::Solver;
  // Sq^1(value) and Sq^{2^index} Sq^1(prev) + prev * Sq^1(prev)
  Poly lhs;
  Poly rhs;
  bool holds = false;
};

struct GammaSumResidue {
  Poly residue;
  bool in_kernel = false;
};

struct FreeImage {
  Poly free;
  // Sum of the monomials with an odd-index factor (their image is 2-torsion).
  Poly torsion;
};

class BsoModel {
 public:
  static constexpr int kDefaultDegreeBound = 34;

  explicit BsoModel(int n, int degree_bound = kDefaultDegreeBound);

  int n() const noexcept { return n_; }
  int degree_bound() const noexcept { return degree_bound_; }
  const Ring& ring() const noexcept { return ring_; }

  // w_j, with w_0 = 1 and w_1 = 0, w_j = 0 for j > n.
  Poly w(int j) const;
  Poly parse(std::string_view text) const;

  Poly sq(int i, const Poly& u) const;
  Poly sq1(const Poly& u) const;

  // sigma(x_1), ..., sigma(x_k)
  std::vector<Poly> sigma(int k) const;

  std::shared_ptr<const Sq1Matrix> bockstein_kernel_matrix(int degree) const;

  // Canonical solution of Sq^1 v = Sq^{2r} Sq^1 u + u Sq^1 u for u of degree 2r.
  Poly gamma(const Poly& u) const;
  GammaSumResidue gamma_sum_law(const Poly& u1, const Poly& u2) const;

  // w2^(0), ..., w2^(r_max); steps 1..3 use the tabulated representatives.
  std::vector<DerivedStep> derived_w2(int r_max) const;
  static std::string tabulated_w2(int r);

  // Integral representation, torsion-free part, in Z[p1..ph, en] (en only
  // when n is even).
  FreeImage f_free(const Poly& u) const;
  const Ring& pontryagin_ring() const noexcept { return free_ring_; }

  bool ideal_member(const Poly& p, const std::vector<Poly>& generators) const;

  // w_{2i} -> c_i, w_odd -> 0 into Z/2[c1..c_{n/2}].
  Poly real_reduction(const Poly& u) const;
  const Ring& chern_ring_mod2() const noexcept { return chern_ring_; }

  bool in_model(const Poly& u) const { return same_ring(u.ring(), ring_); }

 private:
  Poly sq_monomial(int i, const Monomial& m, std::map<std::pair<int, Monomial>, Poly>& memo) const;
  void require_model(const Poly& u, const char* op) const;

  int n_;
  int degree_bound_;
  Ring ring_;
  Ring free_ring_;
  Ring chern_ring_;
  // wu_[j][i] = Sq^i(w_j), 0 <= i <= j
  std::vector<std::vector<Poly>> wu_;

  struct Cache {
    std::mutex mutex;
    std::map<int, std::shared_ptr<const Sq1Matrix>> matrices;
  };
  std::shared_ptr<Cache> cache_;
};

// Poly <-> coordinate vector over an ascending monomial basis.
BitVector to_coordinates(const Poly& p, const std::vector<Monomial>& basis);
Poly from_coordinates(const Ring& ring, const BitVector& x, const std::vector<Monomial>& basis);

// C(a, b) mod 2 for a >= -1, b >= 0.
bool binomial_odd(int a, int b);

}  // namespace spincc
