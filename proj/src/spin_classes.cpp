#include "spincc/spin_classes.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "spincc/chern.hpp"
#include "spincc/errors.hpp"

namespace spincc {

Ring graded_ring(const char* letter, int k) {
  std::vector<Variable> v;
  for (int i = 1; i <= k; ++i) v.push_back({letter + std::to_string(i), 4 * i});
  return RingSpec::make(std::move(v), 0);
}

Ring pontryagin_symbol_ring(int k) { return graded_ring("P", k); }

Poly phi(int r, std::optional<int> k) {
  if (r < 0) throw DomainError("phi needs r >= 0");
  int rank = k.value_or(std::max(2, 1 << std::min(r, 4)));
  if (rank > UcModel::kMaxRank) throw DomainError("phi(" + std::to_string(r) + ") needs rank > 8");
  UcModel model(rank);
  Poly view = model.delta_sequence(r).psi_images.at(std::size_t(r));
  Ring target = pontryagin_symbol_ring(rank);
  Poly out(target);
  for (const auto& [m, c] : view.terms()) {
    if (m[0] != 0) throw InvariantViolation("phi: psi(delta^r(u0)) involves y");
    std::vector<Exponent> e(m.exponents().begin() + 1, m.exponents().end());
    out.accumulate(Monomial(*target, std::move(e)), c);
  }
  return out;
}

namespace {

bool power_of_two(int j) { return j > 0 && (j & (j - 1)) == 0; }

int log2_exact(int j) {
  int r = 0;
  while ((1 << r) < j) ++r;
  return r;
}

// index of a variable named <letter><i>, or 0
int indexed_name(const std::string& name, char letter) {
  if (name.size() < 2 || name[0] != letter) return 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return 0;
  }
  return std::stoi(name.substr(1));
}

template <class P, class Row>
std::vector<std::pair<std::string, P>> images_by_name(const RingSpec& source, char letter,
                                                      const std::vector<Row>& rows) {
  std::vector<std::pair<std::string, P>> out;
  for (const auto& v : source.variables()) {
    int i = indexed_name(v.name, letter);
    if (i < 1) {
      throw DomainError("variable " + v.name + " is not a " + std::string(1, letter) + "-class");
    }
    if (std::size_t(i) > rows.size()) {
      throw DomainError(v.name + " is beyond the transition bound " + std::to_string(rows.size()));
    }
    out.emplace_back(v.name, P(rows[std::size_t(i) - 1]));
  }
  return out;
}

}  // namespace

TransitionTable::TransitionTable(int max_degree) : max_degree_(max_degree) {
  if (max_degree != 16 && max_degree != 32) throw DomainError("transition bound must be 16 or 32");
  int K = max_index();
  p_ring_ = graded_ring("p", K);
  q_ring_ = graded_ring("q", K);
  auto q = [&](int j) { return Poly::variable(q_ring_, "q" + std::to_string(j)); };
  auto p = [&](int j) { return RatPoly::variable(p_ring_, "p" + std::to_string(j)); };

  for (int j = 1; j <= K; ++j) {
    if (!power_of_two(j)) {
      p_rows_.push_back(q(j));
      q_rows_.push_back(p(j));
      continue;
    }
    int r = log2_exact(j);
    Poly f = phi(r);
    const RingSpec& fr = f.spec();
    Monomial top = Monomial::generator(fr, fr.require_index("P" + std::to_string(j)));
    if (f.coefficient(top) != 1) throw InvariantViolation("phi(r) does not have P_{2^r} leading");
    Poly rest = f - Poly::term(f.ring(), top, 1);

    Substitution in_q;
    RatSubstitution in_p;
    for (std::size_t i = 1; i <= fr.size(); ++i) {
      std::string name = "P" + std::to_string(i);
      in_q.emplace_back(name, int(i) < j ? p_rows_[i - 1] : Poly(q_ring_));
      in_p.emplace_back(name, int(i) <= K ? p(int(i)) : RatPoly(p_ring_));
    }
    Poly half_q = j >= 2 ? q(j / 2) : Poly(q_ring_);
    p_rows_.push_back(q(j).scaled(2) + half_q * half_q - substitute(rest, q_ring_, in_q));

    RatPoly half_p = j >= 2 ? q_rows_[std::size_t(j / 2) - 1] : RatPoly(p_ring_);
    RatPoly full = substitute(RatPoly(f), p_ring_, in_p);
    q_rows_.push_back((full - half_p * half_p).scaled(mpq_class(1, 2)));
  }
}

Poly TransitionTable::p_to_q(const Poly& expr) const {
  return substitute(expr, q_ring_, images_by_name<Poly>(expr.spec(), 'p', p_rows_));
}

RatPoly TransitionTable::p_to_q(const RatPoly& expr) const {
  return substitute(expr, q_ring_, images_by_name<RatPoly>(expr.spec(), 'p', p_rows_));
}

RatPoly TransitionTable::q_to_p(const RatPoly& expr) const {
  return substitute(expr, p_ring_, images_by_name<RatPoly>(expr.spec(), 'q', q_rows_));
}

TorsionClass::TorsionClass(Poly x) : x_(std::move(x)) {
  if (x_.spec().modulus() != 2) throw DomainError("the Bockstein needs a mod-2 class");
}

TorsionClass TorsionClass::operator+(const TorsionClass& other) const {
  return TorsionClass(x_ + other.x_);
}

TorsionClass TorsionClass::times(const mpz_class& n) const { return TorsionClass(x_.scaled(n)); }

TorsionClass torsion_product(const BsoModel& model, int k, const Poly& x) {
  if (k < 1) throw DomainError("class index must be positive");
  if (!power_of_two(k)) return TorsionClass(x * model.w(2 * k).pow(2));
  int r = log2_exact(k);
  auto steps = model.derived_w2(r + 1);
  return TorsionClass(x * steps.back().value);
}

Spin8Inputs spin8_inputs() {
  UcModel m(4);
  auto s = m.delta_sequence(2);
  return {m.ring(), s.terms[0], s.terms[1], s.terms[2], m.pontryagin_class(3), m.c(4),
          theta_pullback(8)};
}

Poly spin8_a8(const Spin8Inputs& in) {
  Poly q0sq = in.q0 * in.q0;
  return in.e8 * in.e8 - (in.e8 * in.q2).scaled(2) - q0sq * in.p3 +
         (in.e8 * q0sq * in.q1).scaled(2);
}

Spin8Result spin8_consistency(RelationForm form, const std::optional<Poly>& theta8,
                              const std::optional<Poly>& a8) {
  Spin8Inputs in = spin8_inputs();
  const Poly& theta = theta8 ? *theta8 : in.theta8;
  Poly a = a8 ? *a8 : spin8_a8(in);
  Poly q2sq = in.q2 * in.q2;
  Poly residual = form == RelationForm::Signed ? theta.scaled(-4) + q2sq - a
                                               : theta.scaled(4) - q2sq - a;
  bool holds = residual.is_zero();
  return {std::move(residual), holds};
}

}  // namespace spincc
