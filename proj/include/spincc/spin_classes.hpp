#pragma once

// Stable spin characteristic classes: the recurrence phi, the p <-> q
// transition, the torsion cup-product rule and the Spin^c(8) relation.

#include <optional>
#include <vector>

#include "spincc/ring.hpp"
#include "spincc/steenrod.hpp"

namespace spincc {

// Z[P1..Pk], deg P_r = 4r
Ring pontryagin_symbol_ring(int k);
// Z[<letter>1..<letter>k], deg 4r
Ring graded_ring(const char* letter, int k);

// psi(delta^r(u0)) as a polynomial in P1..Pk, k defaults to max(2, 2^r).
Poly phi(int r, std::optional<int> k = std::nullopt);

class TransitionTable {
 public:
  static constexpr int kDefaultMaxDegree = 16;

  // max_degree in {16, 32}
  explicit TransitionTable(int max_degree = kDefaultMaxDegree);

  int max_degree() const noexcept { return max_degree_; }
  int max_index() const noexcept { return max_degree_ / 4; }
  const Ring& p_ring() const noexcept { return p_ring_; }
  const Ring& q_ring() const noexcept { return q_ring_; }

  // p_j in Z[q1..qK] and q_j in Q[p1..pK], j = 1..K
  const Poly& p_row(int j) const { return p_rows_.at(std::size_t(j) - 1); }
  const RatPoly& q_row(int j) const { return q_rows_.at(std::size_t(j) - 1); }

  // Variables are matched by name (p<i> / q<i>), so any ring whose
  // variables are among those works; indices above max_index() are rejected.
  Poly p_to_q(const Poly& expr) const;
  RatPoly p_to_q(const RatPoly& expr) const;
  RatPoly q_to_p(const RatPoly& expr) const;

 private:
  int max_degree_;
  Ring p_ring_;
  Ring q_ring_;
  std::vector<Poly> p_rows_;
  std::vector<RatPoly> q_rows_;
};

// delta_2(x) for a mod-2 class x; 2-torsion by construction.
class TorsionClass {
 public:
  explicit TorsionClass(Poly x);

  const Poly& bockstein_of() const noexcept { return x_; }
  bool is_zero() const { return x_.is_zero(); }

  TorsionClass operator+(const TorsionClass& other) const;
  TorsionClass times(const mpz_class& n) const;
  bool operator==(const TorsionClass& other) const { return x_ == other.x_; }

 private:
  Poly x_;
};

// Q_k cup delta_2(x): delta_2(x w_{2k}^2) when k is not a power of 2,
// delta_2(x w2^(r+1)) when k = 2^r.
TorsionClass torsion_product(const BsoModel& model, int k, const Poly& x);

enum class RelationForm {
  // 4 (-1)^3 theta8 + q2^2 - a8
  Signed,
  // 4 theta8 - q2^2 - a8
  Presentation,
};

struct Spin8Inputs {
  Ring ring;  // Z[y, c1..c4]
  Poly q0, q1, q2, p3, e8, theta8;
};

struct Spin8Result {
  Poly residual;
  bool holds = false;
};

Spin8Inputs spin8_inputs();
// e8^2 - 2 e8 q2 - q0^2 p3 + 2 e8 q0^2 q1
Poly spin8_a8(const Spin8Inputs& in);
Spin8Result spin8_consistency(RelationForm form = RelationForm::Signed,
                              const std::optional<Poly>& theta8 = std::nullopt,
                              const std::optional<Poly>& a8 = std::nullopt);

}  // namespace spincc
