#pragma once

// Genus polynomials, Rokhlin-type signature formulas, Eells-Kuiper
// invariants, integral Wu lifts and the Wall-pair classifier.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spincc/ring.hpp"
#include "spincc/spin_classes.hpp"

namespace spincc {

enum class GenusType { AHat, L };

struct GenusEntry {
  RatPoly value;    // in Q[p1..p4]
  mpq_class lead;   // coefficient of p_m
  RatPoly rest;     // value - lead * p_m
};

class GenusTable {
 public:
  GenusTable();

  const Ring& p_ring() const noexcept { return transition_.p_ring(); }
  const TransitionTable& transition() const noexcept { return transition_; }
  // 1 <= m <= 4
  const GenusEntry& entry(GenusType type, int m) const;
  const RatPoly& a_hat(int m) const { return entry(GenusType::AHat, m).value; }
  const RatPoly& l_genus(int m) const { return entry(GenusType::L, m).value; }

  // tau_m = (b_m / a_m)(alpha - l_m) + k_m with p_i -> q's, in
  // Q[q1..q4, alpha], deg alpha = 4m.
  RatPoly signature_in_q(int m) const;
  Ring signature_ring(int m) const;

 private:
  TransitionTable transition_;
  std::vector<GenusEntry> a_hat_;
  std::vector<GenusEntry> l_;
};

enum class EkVariables { P, Q };

struct EkForms {
  int k = 2;
  Ring p_ring;  // p1..pk, sigma (deg 4k)
  Ring q_ring;  // q1..qk, sigma (deg 4k)
  RatPoly p_form;
  // p_form with p_i replaced through the transition table
  RatPoly q_form;
  // the reference q-form as tabulated
  RatPoly q_form_reference;
};

// k in {2, 3, 4}
EkForms eells_kuiper_forms(int k);

// Characteristic numbers keyed by monomial text ("q1^2", "p1*p2"), sigma
// the signature of the coboundary. Returns a reduced fraction in [0, 1).
mpq_class eells_kuiper(int k, EkVariables variables, const std::map<std::string, mpz_class>& numbers,
                       const mpz_class& sigma);

mpq_class mod_one(const mpq_class& x);

struct WuLift {
  Poly q_form;      // in Z[q1..q4]
  RatPoly p_form;   // via q_to_p
  RatPoly classical;  // rational Wu class in p's
};

// k in 1..4
WuLift wu_lift(int k);

using IntMatrix = std::vector<std::vector<mpz_class>>;

mpz_class determinant(const IntMatrix& a);
// Throws DomainError if A is not square, not symmetric or singular.
int exact_signature(const IntMatrix& a);

struct WallPair {
  IntMatrix a;
  std::vector<mpz_class> b;
};

// Throws DomainError unless A is square, symmetric, |det A| = 1 and b has
// matching length.
void validate_wall_pair(const WallPair& pair);

struct SmoothabilityReport {
  bool wall_ok = false;
  std::optional<int> signature;
  std::optional<mpz_class> bab;
  std::optional<bool> smoothable;
  std::optional<bool> psc;
  std::optional<mpq_class> mu;
  // (1, b, q2 coefficient), present only when smoothable
  std::optional<mpz_class> q2_coefficient;
  std::vector<mpz_class> q1_coefficients;
};

constexpr int kWallModulus = 224;  // 2^5 (2^3 - 1)

SmoothabilityReport wall_classify(const WallPair& pair);

}  // namespace spincc
