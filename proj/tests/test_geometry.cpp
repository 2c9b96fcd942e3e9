#include <gtest/gtest.h>

#include "spincc/errors.hpp"
#include "spincc/geometry.hpp"
#include "spincc/text.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace spincc;
using spincc::testing::Gen;

namespace {

const GenusTable& genera() {
  static const GenusTable t;
  return t;
}

IntMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
  IntMatrix a;
  for (const auto& r : rows) {
    std::vector<mpz_class> row;
    for (int x : r) row.emplace_back(x);
    a.push_back(std::move(row));
  }
  return a;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix r(a.size(), std::vector<mpz_class>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < b[0].size(); ++j) r[i][j] += a[i][k] * b[k][j];
    }
  }
  return r;
}

IntMatrix transpose(const IntMatrix& a) {
  IntMatrix t(a[0].size(), std::vector<mpz_class>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

IntMatrix identity(std::size_t n) {
  IntMatrix a(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = 1;
  return a;
}

// Random unimodular P built from column operations, together with its inverse.
std::pair<IntMatrix, IntMatrix> unimodular_pair(Gen& g, std::size_t n) {
  IntMatrix p = identity(n), inv = identity(n);
  for (int s = 0; s < 12; ++s) {
    std::size_t i = std::size_t(g.in(0, int(n) - 1)), j = std::size_t(g.in(0, int(n) - 1));
    if (i == j) {
      if (g.coin()) {
        for (auto& row : p) row[i] = -row[i];
        for (auto& x : inv[i]) x = -x;
      }
      continue;
    }
    int f = g.in(-2, 2);
    for (auto& row : p) row[j] += f * row[i];
    for (std::size_t c = 0; c < n; ++c) inv[i][c] -= f * inv[j][c];
  }
  return {p, inv};
}

mpz_class cofactor_determinant(const IntMatrix& a) {
  if (a.empty()) return 1;
  mpz_class total = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[0][j] == 0) continue;
    IntMatrix minor;
    for (std::size_t i = 1; i < a.size(); ++i) {
      std::vector<mpz_class> row;
      for (std::size_t c = 0; c < a.size(); ++c) {
        if (c != j) row.push_back(a[i][c]);
      }
      minor.push_back(std::move(row));
    }
    mpz_class term = a[0][j] * cofactor_determinant(minor);
    total += j % 2 == 0 ? term : mpz_class(-term);
  }
  return total;
}

IntMatrix e8() {
  IntMatrix a(8, std::vector<mpz_class>(8, 0));
  for (std::size_t i = 0; i < 8; ++i) a[i][i] = 2;
  // chain 0-1-2-3-4-5-6 with node 7 attached to node 4
  for (std::size_t i = 0; i + 1 < 7; ++i) a[i][i + 1] = a[i + 1][i] = -1;
  a[4][7] = a[7][4] = -1;
  return a;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.size();
  IntMatrix a(n, std::vector<mpz_class>(n, 0));
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) a[off + i][off + j] = b[i][j];
    }
    off += b.size();
  }
  return a;
}

// p_i -> q's by the rows p1 = 2q1, p2 = 2q2 + q1^2, p3 = q3, p4 = 2q4 + q2^2 - 2q1q3.
RatSubstitution p_in_q(const Ring& target, int k = 4) {
  const char* rows[] = {"2q1", "2q2 + q1^2", "q3", "2q4 + q2^2 - 2q1q3"};
  RatSubstitution out;
  for (int i = 1; i <= k; ++i) out.emplace_back("p" + std::to_string(i), parse_rational(rows[i - 1], target));
  return out;
}

}  // namespace

TEST(Genus, TableMatchesCharacteristicSeries) {
  const GenusTable& t = genera();
  for (int m = 1; m <= 4; ++m) {
    EXPECT_EQ(t.a_hat(m), spincc::testing::genus_by_series(GenusType::AHat, m, t.p_ring())) << "m=" << m;
    EXPECT_EQ(t.l_genus(m), spincc::testing::genus_by_series(GenusType::L, m, t.p_ring())) << "m=" << m;
  }
}

TEST(Genus, ExamplesAndDecomposition) {
  const GenusTable& t = genera();
  EXPECT_EQ(t.a_hat(1), parse_rational("-1/24p1", t.p_ring()));
  EXPECT_EQ(t.l_genus(1), parse_rational("1/3p1", t.p_ring()));
  EXPECT_EQ(t.l_genus(3), parse_rational("1/945(62p3 - 13p2p1 + 2p1^3)", t.p_ring()));
  for (GenusType type : {GenusType::AHat, GenusType::L}) {
    for (int m = 1; m <= 4; ++m) {
      const GenusEntry& e = t.entry(type, m);
      EXPECT_NE(e.lead, 0);
      RatPoly pm = RatPoly::variable(t.p_ring(), "p" + std::to_string(m));
      EXPECT_EQ(e.value, pm.scaled(e.lead) + e.rest);
      EXPECT_EQ(e.rest.coefficient(Monomial::generator(*t.p_ring(), std::size_t(m) - 1)), 0);
    }
  }
  EXPECT_THROW(t.entry(GenusType::L, 5), DomainError);
  EXPECT_THROW(t.entry(GenusType::AHat, 0), DomainError);
}

TEST(Signature, FormulasInSpinClasses) {
  const GenusTable& t = genera();
  std::vector<std::string> displays{
      "-8alpha",
      "q1^2 - 224alpha",
      "2/3(q1q2 - q1^3) - 3968alpha",
      "2/15q1q3 + 1/9q2^2 - 8/9q1^2q2 + 17/45q1^4 - 65024alpha",
  };
  for (int m = 1; m <= 4; ++m) {
    Ring r = t.signature_ring(m);
    EXPECT_EQ(t.signature_in_q(m), parse_rational(displays[std::size_t(m) - 1], r)) << "m=" << m;
  }
  EXPECT_EQ(mpz_class(32 * 7), 224);
  EXPECT_EQ(mpz_class(128 * 31), 3968);
  EXPECT_EQ(mpz_class(512 * 127), 65024);
}

TEST(Signature, IndependentElimination) {
  const GenusTable& t = genera();
  for (int m = 1; m <= 4; ++m) {
    Ring r = t.signature_ring(m);
    RatPoly a = spincc::testing::genus_by_series(GenusType::AHat, m, t.p_ring());
    RatPoly l = spincc::testing::genus_by_series(GenusType::L, m, t.p_ring());
    Monomial pm = Monomial::generator(*t.p_ring(), std::size_t(m) - 1);
    mpq_class am = a.coefficient(pm), bm = l.coefficient(pm);
    RatPoly a_rest = a - RatPoly(Poly::term(t.p_ring(), pm, 1)).scaled(am);
    RatPoly l_rest = l - RatPoly(Poly::term(t.p_ring(), pm, 1)).scaled(bm);
    // signature = L = bm p_m + l_rest with p_m = (alpha - a_rest) / am
    RatPoly alpha = RatPoly::variable(r, "alpha");
    RatSubstitution rows = p_in_q(r);
    RatPoly in_q = (alpha - substitute(a_rest, r, rows)).scaled(bm / am) + substitute(l_rest, r, rows);
    EXPECT_EQ(t.signature_in_q(m), in_q) << "m=" << m;
  }
}

TEST(EellsKuiper, FormsUnderTransition) {
  for (int k = 2; k <= 4; ++k) {
    EkForms f = eells_kuiper_forms(k);
    RatPoly expected = substitute(f.p_form, f.q_ring, p_in_q(f.q_ring, k));
    EXPECT_EQ(f.q_form, expected) << "k=" << k;
  }
  EXPECT_EQ(eells_kuiper_forms(2).q_form, eells_kuiper_forms(2).q_form_reference);
  EkForms f3 = eells_kuiper_forms(3), f4 = eells_kuiper_forms(4);
  // the tabulated q-forms differ from the transported p-forms by constant factors
  EXPECT_EQ(f3.q_form_reference, f3.q_form.scaled(2));
  EXPECT_EQ(f4.q_form_reference, f4.q_form.scaled(45));
  EXPECT_THROW(eells_kuiper_forms(1), DomainError);
  EXPECT_THROW(eells_kuiper_forms(5), DomainError);
}

TEST(EellsKuiper, Examples) {
  EXPECT_EQ(eells_kuiper(2, EkVariables::Q, {{"q1^2", 4}}, 4), 0);
  EXPECT_EQ(eells_kuiper(2, EkVariables::P, {{"p1^2", 16}}, 4), 0);
  EXPECT_EQ(eells_kuiper(2, EkVariables::Q, {{"q1^2", 9}}, 1), mpq_class(1, 28));
  EXPECT_EQ(eells_kuiper(2, EkVariables::Q, {{"q1^2", 1}}, 9), mpq_class(27, 28));
  EXPECT_THROW(eells_kuiper(2, EkVariables::Q, {}, 4), DomainError);
  EXPECT_THROW(eells_kuiper(2, EkVariables::Q, {{"2q1^2", 4}}, 4), DomainError);
}

TEST(EellsKuiper, VariableSetsAgreeOnRandomNumbers) {
  TransitionTable table;
  Gen g(1010);
  for (int k = 2; k <= 4; ++k) {
    EkForms f = eells_kuiper_forms(k);
    std::vector<Monomial> pm = basis(*graded_ring("p", k), 4 * k);
    Ring pk = graded_ring("p", k);
    for (int t = 0; t < 30; ++t) {
      std::map<std::string, mpz_class> qnums, pnums;
      for (const auto& m : basis(*graded_ring("q", k), 4 * k)) {
        qnums[render_monomial(*graded_ring("q", k), m)] = g.in(-500, 500);
      }
      for (const auto& m : pm) {
        std::string key = render_monomial(*pk, m);
        Poly in_q = table.p_to_q(parse(key, table.p_ring()));
        mpz_class value = 0;
        for (const auto& [qm, c] : in_q.terms()) value += c * qnums.at(render_monomial(*table.q_ring(), qm));
        pnums[key] = value;
      }
      mpz_class sigma = g.in(-300, 300);
      EXPECT_EQ(eells_kuiper(k, EkVariables::P, pnums, sigma), eells_kuiper(k, EkVariables::Q, qnums, sigma));
    }
  }
}

TEST(EellsKuiper, ModOne) {
  EXPECT_EQ(mod_one(mpq_class(-1, 28)), mpq_class(27, 28));
  EXPECT_EQ(mod_one(mpq_class(5, 2)), mpq_class(1, 2));
  EXPECT_EQ(mod_one(mpq_class(3)), 0);
  EXPECT_EQ(mod_one(mpq_class(-7)), 0);
}

TEST(Wu, Lifts) {
  TransitionTable table;
  EXPECT_EQ(wu_lift(1).q_form, parse("q1", table.q_ring()));
  EXPECT_EQ(wu_lift(3).q_form, parse("q3 + q1q2 + q1^3", table.q_ring()));
  EXPECT_EQ(wu_lift(4).q_form, parse("q4 + q1q3 + q1^2q2", table.q_ring()));
  EXPECT_EQ(wu_lift(1).p_form, parse_rational("1/2p1", table.p_ring()));
  EXPECT_EQ(wu_lift(1).classical, parse_rational("-1/2p1", table.p_ring()));
  EXPECT_THROW(wu_lift(5), DomainError);
}

TEST(Wu, ClassicalFormAgreesModTwo) {
  TransitionTable table;
  for (int k = 1; k <= 4; ++k) {
    WuLift w = wu_lift(k);
    EXPECT_EQ(table.p_to_q(w.p_form), RatPoly(w.q_form));
    RatPoly classical_q = table.p_to_q(w.classical);
    Poly integral(table.q_ring());
    for (const auto& [m, c] : classical_q.terms()) {
      ASSERT_EQ(c.get_den(), 1) << "k=" << k;
      integral.accumulate(m, c.get_num());
    }
    EXPECT_EQ(reduce_mod(integral, 2), reduce_mod(w.q_form, 2)) << "k=" << k;
  }
}

TEST(Matrix, DeterminantAgreesWithCofactors) {
  Gen g(6);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = std::size_t(g.in(1, 5));
    IntMatrix a(n, std::vector<mpz_class>(n));
    for (auto& row : a) {
      for (auto& x : row) x = g.in(-4, 4);
    }
    EXPECT_EQ(determinant(a), cofactor_determinant(a));
  }
  EXPECT_EQ(determinant(e8()), 1);
  EXPECT_THROW(determinant(matrix({{1, 2}})), DomainError);
}

TEST(Matrix, SignatureExamples) {
  EXPECT_EQ(exact_signature(matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3);
  EXPECT_EQ(exact_signature(matrix({{0, 1}, {1, 0}})), 0);
  EXPECT_EQ(exact_signature(e8()), 8);
  EXPECT_EQ(exact_signature(matrix({{0, 0, 1}, {0, -1, 0}, {1, 0, 0}})), -1);
  EXPECT_THROW(exact_signature(matrix({{1, 2}, {3, 4}})), DomainError);
  EXPECT_THROW(exact_signature(matrix({{1, 1}, {1, 1}})), DomainError);
}

TEST(Matrix, SignatureAgreesWithDescartes) {
  Gen g(21);
  std::vector<IntMatrix> blocks{matrix({{1}}), matrix({{-1}}), matrix({{0, 1}, {1, 0}}), e8()};
  for (int t = 0; t < 60; ++t) {
    std::vector<IntMatrix> chosen;
    int count = g.in(1, 3);
    for (int i = 0; i < count; ++i) chosen.push_back(blocks[std::size_t(g.in(0, 3))]);
    IntMatrix a = block_diagonal(chosen);
    IntMatrix p = g.unimodular(a.size());
    IntMatrix b = multiply(multiply(transpose(p), a), p);
    EXPECT_EQ(std::abs(determinant(b).get_si()), 1);
    int s = exact_signature(b);
    EXPECT_EQ(s, exact_signature(a));
    EXPECT_EQ(s, spincc::testing::signature_by_descartes(b));
  }
  for (int t = 0; t < 100; ++t) {
    std::size_t n = std::size_t(g.in(1, 6));
    IntMatrix a(n, std::vector<mpz_class>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) a[i][j] = a[j][i] = g.in(-3, 3);
    }
    if (determinant(a) == 0) continue;
    EXPECT_EQ(exact_signature(a), spincc::testing::signature_by_descartes(a));
  }
}

TEST(Wall, Examples) {
  SmoothabilityReport hp2 = wall_classify({matrix({{1}}), {1}});
  EXPECT_TRUE(hp2.wall_ok);
  EXPECT_EQ(hp2.signature, 1);
  EXPECT_EQ(hp2.bab, 1);
  EXPECT_EQ(hp2.smoothable, true);
  EXPECT_EQ(hp2.psc, true);
  EXPECT_EQ(hp2.mu, mpq_class(0));
  EXPECT_EQ(hp2.q2_coefficient, 3);
  EXPECT_EQ(hp2.q1_coefficients, std::vector<mpz_class>{1});

  SmoothabilityReport b3 = wall_classify({matrix({{1}}), {3}});
  EXPECT_EQ(b3.bab, 9);
  EXPECT_EQ(b3.smoothable, false);
  EXPECT_EQ(b3.psc, false);
  EXPECT_EQ(b3.mu, mpq_class(1, 28));
  EXPECT_FALSE(b3.q2_coefficient.has_value());

  SmoothabilityReport h = wall_classify({matrix({{0, 1}, {1, 0}}), {2, 4}});
  EXPECT_TRUE(h.wall_ok);
  EXPECT_EQ(h.signature, 0);
  EXPECT_EQ(h.bab, 16);
  EXPECT_EQ(h.smoothable, false);
}

TEST(Wall, InvalidInput) {
  EXPECT_THROW(wall_classify({matrix({{1, 2}, {3, 1}}), {1, 1}}), DomainError);
  EXPECT_THROW(wall_classify({matrix({{2}}), {0}}), DomainError);
  EXPECT_THROW(wall_classify({matrix({{1}}), {1, 1}}), DomainError);
  EXPECT_THROW(wall_classify({matrix({{1, 1}}), {1}}), DomainError);

  SmoothabilityReport bad = wall_classify({matrix({{1}}), {2}});
  EXPECT_FALSE(bad.wall_ok);
  EXPECT_FALSE(bad.signature.has_value());
  EXPECT_FALSE(bad.smoothable.has_value());
  EXPECT_FALSE(bad.mu.has_value());
}

TEST(Wall, HyperbolicSweep) {
  IntMatrix h = matrix({{0, 1}, {1, 0}});
  for (int k1 = -5; k1 <= 5; ++k1) {
    for (int k2 = -5; k2 <= 5; ++k2) {
      SmoothabilityReport r = wall_classify({h, {2 * k1, 2 * k2}});
      ASSERT_TRUE(r.wall_ok);
      EXPECT_EQ(r.bab, 8 * k1 * k2);
      EXPECT_EQ(r.psc, k1 * k2 == 0) << k1 << " " << k2;
      EXPECT_EQ(r.smoothable, k1 * k2 == 0) << k1 << " " << k2;
      EXPECT_FALSE(wall_classify({h, {2 * k1 + 1, 2 * k2}}).wall_ok);
    }
  }
}

TEST(Wall, ChangeOfBasis) {
  Gen g(1113);
  std::vector<IntMatrix> forms{matrix({{1}}), matrix({{0, 1}, {1, 0}}), matrix({{1, 0}, {0, -1}}),
                               matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), e8()};
  int bab_moved = 0;
  for (int t = 0; t < 100; ++t) {
    const IntMatrix& a = forms[std::size_t(g.in(0, int(forms.size()) - 1))];
    std::vector<mpz_class> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = 2 * g.in(-3, 3) + (a[i][i] % 2 == 0 ? 0 : 1);
    auto [p, p_inv] = unimodular_pair(g, a.size());
    EXPECT_EQ(multiply(p, p_inv), identity(a.size()));
    IntMatrix a2 = multiply(multiply(transpose(p), a), p);
    SmoothabilityReport before = wall_classify({a, b});

    // b as a functional on the basis: parity condition and signature follow (PtAP, bP)
    std::vector<mpz_class> functional = multiply(IntMatrix{b}, p)[0];
    SmoothabilityReport moved = wall_classify({a2, functional});
    EXPECT_EQ(moved.wall_ok, before.wall_ok);
    EXPECT_EQ(moved.signature, before.signature);
    if (moved.bab != before.bab) ++bab_moved;

    // b as coordinates of a class: bAbt follows (PtAP, b P^-t)
    // (the parity condition is not preserved under this reading, so compare the form directly)
    std::vector<mpz_class> coords = multiply(IntMatrix{b}, transpose(p_inv))[0];
    IntMatrix row{coords};
    if (before.wall_ok) EXPECT_EQ(multiply(multiply(row, a2), transpose(row))[0][0], *before.bab);
  }
  // the two readings disagree on non-orthogonal changes of basis
  EXPECT_GT(bab_moved, 0);
  IntMatrix i2 = matrix({{1, 0}, {0, 1}}), p = matrix({{1, 1}, {0, 1}});
  SmoothabilityReport r = wall_classify({multiply(multiply(transpose(p), i2), p), {1, 2}});
  EXPECT_EQ(wall_classify({i2, {1, 1}}).bab, 2);
  EXPECT_EQ(r.bab, 13);
}

TEST(Wall, SmallExhaustiveSearch) {
  int pairs = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<int> entries(std::size_t(n * (n + 1) / 2), -2);
    while (true) {
      IntMatrix a(std::size_t(n), std::vector<mpz_class>(std::size_t(n), 0));
      std::size_t idx = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
          a[std::size_t(i)][std::size_t(j)] = a[std::size_t(j)][std::size_t(i)] = entries[idx++];
        }
      }
      if (abs(determinant(a)) == 1) {
        std::vector<int> bv(std::size_t(n), -3);
        while (true) {
          std::vector<mpz_class> b(bv.begin(), bv.end());
          SmoothabilityReport r = wall_classify({a, b});
          ++pairs;
          if (r.wall_ok) {
            if (*r.psc) EXPECT_TRUE(*r.smoothable);
            if (*r.smoothable) {
              mpz_class numerator = 3 * (15 * *r.signature - *r.bab);
              EXPECT_EQ(numerator % 14, 0);
              EXPECT_EQ(*r.q2_coefficient * 14, numerator);
            }
          }
          std::size_t k = 0;
          while (k < bv.size() && bv[k] == 3) bv[k++] = -3;
          if (k == bv.size()) break;
          ++bv[k];
        }
      }
      std::size_t k = 0;
      while (k < entries.size() && entries[k] == 2) entries[k++] = -2;
      if (k == entries.size()) break;
      ++entries[k];
    }
  }
  EXPECT_GT(pairs, 0);
}
