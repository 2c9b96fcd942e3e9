#include "spincc/geometry.hpp"

#include <algorithm>

#include "spincc/errors.hpp"
#include "spincc/text.hpp"

namespace spincc {

namespace {

const char* const kAHat[] = {
    "-1/24*p1",
    "1/5760*(-4p2 + 7p1^2)",
    "1/967680*(-16p3 + 44p2p1 - 31p1^3)",
    "1/464486400*(-192p4 + 512p1p3 + 208p2^2 - 904p1^2p2 + 381p1^4)",
};

const char* const kL[] = {
    "1/3*p1",
    "1/45*(7p2 - p1^2)",
    "1/945*(62p3 - 13p2p1 + 2p1^3)",
    "1/14175*(381p4 - 71p1p3 - 19p2^2 + 22p1^2p2 - 3p1^4)",
};

const char* const kEkP[] = {
    "1/896*(p1^2 - 4sigma)",
    "1/190464*(4p1p2 - 3p1^3 - 24sigma)",
    "1/11797954560*(12096p1p3 + 5040p2^2 - 22680p1^2p2 + 9639p1^4 - 181440sigma)",
};

const char* const kEkQ[] = {
    "1/224*(q1^2 - sigma)",
    "1/11904*(2(q1q2 - q1^3) - 3sigma)",
    "1/65024*(6q1q3 + 5q2^2 - 40q1^2q2 + 17q1^4 - 45sigma)",
};

const char* const kWuQ[] = {"q1", "q2", "q3 + q1q2 + q1^3", "q4 + q1q3 + q1^2q2"};

const char* const kWuClassical[] = {
    "-1/2*p1",
    "1/8*(20p2 - 9p1^2)",
    "-1/16*(80p3 + 60p1p2 - 17p1^3)",
    "1/128*(1856p4 - 528p2^2 + 1176p1^2p2 - 277p1^4)",
};

void require_range(int value, int lo, int hi, const char* what) {
  if (value < lo || value > hi) {
    throw DomainError(std::string(what) + " must be in " + std::to_string(lo) + ".." +
                      std::to_string(hi));
  }
}

// Same polynomial, variables matched by name into `target`.
RatPoly rename_into(const RatPoly& p, const Ring& target) {
  RatPoly out(target);
  const RingSpec& src = p.spec();
  for (const auto& [m, c] : p.terms()) {
    std::vector<Exponent> e(target->size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      auto j = target->index_of(src.name_of(i));
      if (!j) throw InvariantViolation("variable " + src.name_of(i) + " missing from target ring");
      e[*j] = m[i];
    }
    out.accumulate(Monomial(*target, std::move(e)), c);
  }
  return out;
}

Ring with_extra(const char* letter, int k, const char* extra, int extra_degree) {
  std::vector<Variable> v;
  for (int i = 1; i <= k; ++i) v.push_back({letter + std::to_string(i), 4 * i});
  v.push_back({extra, extra_degree});
  return RingSpec::make(std::move(v), 0);
}

GenusEntry make_entry(const char* text, int m, const Ring& ring) {
  RatPoly value = parse_rational(text, ring);
  Monomial top = Monomial::generator(*ring, std::size_t(m) - 1);
  mpq_class lead = value.coefficient(top);
  if (lead == 0) throw InvariantViolation("genus without a top Pontryagin term");
  RatPoly rest = value;
  rest.accumulate(top, -lead);
  return {std::move(value), lead, std::move(rest)};
}

}  // namespace

GenusTable::GenusTable() {
  for (int m = 1; m <= 4; ++m) {
    a_hat_.push_back(make_entry(kAHat[m - 1], m, p_ring()));
    l_.push_back(make_entry(kL[m - 1], m, p_ring()));
  }
}

const GenusEntry& GenusTable::entry(GenusType type, int m) const {
  require_range(m, 1, 4, "genus index");
  return (type == GenusType::AHat ? a_hat_ : l_)[std::size_t(m) - 1];
}

Ring GenusTable::signature_ring(int m) const {
  require_range(m, 1, 4, "signature index");
  return with_extra("q", 4, "alpha", 4 * m);
}

RatPoly GenusTable::signature_in_q(int m) const {
  const GenusEntry& a = entry(GenusType::AHat, m);
  const GenusEntry& t = entry(GenusType::L, m);
  Ring extended = with_extra("p", 4, "alpha", 4 * m);
  RatPoly alpha = RatPoly::variable(extended, "alpha");
  RatPoly tau = (alpha - rename_into(a.rest, extended)).scaled(t.lead / a.lead) +
                rename_into(t.rest, extended);

  Ring target = signature_ring(m);
  RatSubstitution images;
  for (int i = 1; i <= 4; ++i) {
    images.emplace_back("p" + std::to_string(i),
                        rename_into(RatPoly(transition_.p_row(i)), target));
  }
  return substitute(tau, target, images);
}

EkForms eells_kuiper_forms(int k) {
  require_range(k, 2, 4, "Eells-Kuiper index");
  Ring p_ring = with_extra("p", k, "sigma", 4 * k);
  Ring q_ring = with_extra("q", k, "sigma", 4 * k);
  RatPoly p_form = parse_rational(kEkP[k - 2], p_ring);

  TransitionTable table;
  RatSubstitution images;
  for (int i = 1; i <= k; ++i) {
    images.emplace_back("p" + std::to_string(i), rename_into(RatPoly(table.p_row(i)), q_ring));
  }
  RatPoly q_form = substitute(p_form, q_ring, images);
  RatPoly reference = parse_rational(kEkQ[k - 2], q_ring);
  return {k, p_ring, q_ring, std::move(p_form), std::move(q_form), std::move(reference)};
}

mpq_class mod_one(const mpq_class& x) {
  mpz_class floor;
  mpz_fdiv_q(floor.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class r = x - mpq_class(floor);
  r.canonicalize();
  return r;
}

mpq_class eells_kuiper(int k, EkVariables variables, const std::map<std::string, mpz_class>& numbers,
                       const mpz_class& sigma) {
  EkForms forms = eells_kuiper_forms(k);
  const RatPoly& form = variables == EkVariables::P ? forms.p_form : forms.q_form;
  const Ring& ring = form.ring();

  std::map<Monomial, mpz_class> values;
  for (const auto& [key, value] : numbers) {
    RatPoly m = parse_rational(key, ring);
    if (m.size() != 1 || m.terms().begin()->second != 1) {
      throw DomainError("characteristic number key '" + key + "' is not a monomial");
    }
    values[m.terms().begin()->first] = value;
  }
  Monomial sigma_monomial = Monomial::generator(*ring, ring->require_index("sigma"));
  values[sigma_monomial] = sigma;

  mpq_class total = 0;
  for (const auto& [m, c] : form.terms()) {
    auto it = values.find(m);
    if (it == values.end()) {
      throw DomainError("missing characteristic number " + render_monomial(*ring, m));
    }
    total += c * mpq_class(it->second);
  }
  return mod_one(total);
}

WuLift wu_lift(int k) {
  require_range(k, 1, 4, "Wu class index");
  TransitionTable table;
  Poly q = parse(kWuQ[k - 1], table.q_ring());
  return {q, table.q_to_p(RatPoly(q)), parse_rational(kWuClassical[k - 1], table.p_ring())};
}

namespace {

void require_square(const IntMatrix& a) {
  for (const auto& row : a) {
    if (row.size() != a.size()) throw DomainError("matrix is not square");
  }
}

void require_symmetric(const IntMatrix& a) {
  require_square(a);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (a[i][j] != a[j][i]) throw DomainError("matrix is not symmetric");
    }
  }
}

}  // namespace

mpz_class determinant(const IntMatrix& input) {
  require_square(input);
  IntMatrix a = input;
  std::size_t n = a.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

int exact_signature(const IntMatrix& input) {
  require_symmetric(input);
  std::size_t n = input.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = input[i][j];
  }
  int signature = 0;
  while (!m.empty()) {
    std::size_t size = m.size();
    std::size_t pivot = 0;
    while (pivot < size && m[pivot][pivot] == 0) ++pivot;
    std::vector<std::size_t> block;
    if (pivot < size) {
      block = {pivot};
      signature += sgn(m[pivot][pivot]);
    } else {
      std::size_t pi = size, pj = size;
      for (std::size_t i = 0; i < size && pi == size; ++i) {
        for (std::size_t j = i + 1; j < size; ++j) {
          if (m[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == size) throw DomainError("matrix is singular");
      block = {pi, pj};  // [[0, a], [a, 0]] contributes one positive and one negative
    }

    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < size; ++i) {
      if (std::find(block.begin(), block.end(), i) == block.end()) keep.push_back(i);
    }
    std::vector<std::vector<mpq_class>> next(keep.size(), std::vector<mpq_class>(keep.size()));
    for (std::size_t r = 0; r < keep.size(); ++r) {
      for (std::size_t c = 0; c < keep.size(); ++c) {
        mpq_class v = m[keep[r]][keep[c]];
        if (block.size() == 1) {
          std::size_t p = block[0];
          v -= m[keep[r]][p] * m[p][keep[c]] / m[p][p];
        } else {
          std::size_t i = block[0], j = block[1];
          const mpq_class& a = m[i][j];
          // B^{-1} = [[0, 1/a], [1/a, 0]]
          v -= (m[keep[r]][i] * m[j][keep[c]] + m[keep[r]][j] * m[i][keep[c]]) / a;
        }
        next[r][c] = v;
      }
    }
    m = std::move(next);
  }
  return signature;
}

void validate_wall_pair(const WallPair& pair) {
  require_symmetric(pair.a);
  if (pair.a.empty()) throw DomainError("empty intersection matrix");
  if (pair.b.size() != pair.a.size()) throw DomainError("b has the wrong length");
  mpz_class d = determinant(pair.a);
  if (abs(d) != 1) throw DomainError("matrix is not unimodular (det " + d.get_str() + ")");
}

SmoothabilityReport wall_classify(const WallPair& pair) {
  validate_wall_pair(pair);
  SmoothabilityReport report;
  std::size_t n = pair.a.size();
  report.wall_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class diff = pair.a[i][i] - pair.b[i];
    if (!mpz_even_p(diff.get_mpz_t())) report.wall_ok = false;
  }
  if (!report.wall_ok) return report;

  int sign = exact_signature(pair.a);
  mpz_class bab = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) bab += pair.b[i] * pair.a[i][j] * pair.b[j];
  }
  mpz_class diff = bab - sign;
  bool smoothable = mpz_divisible_ui_p(diff.get_mpz_t(), kWallModulus) != 0;
  report.signature = sign;
  report.bab = bab;
  report.smoothable = smoothable;
  report.psc = diff == 0;
  mpq_class ratio(diff, mpz_class(kWallModulus));
  ratio.canonicalize();
  report.mu = mod_one(ratio);
  report.q1_coefficients = pair.b;
  if (smoothable) {
    mpz_class num = 3 * (15 * sign - bab);
    if (!mpz_divisible_ui_p(num.get_mpz_t(), 14)) {
      throw InvariantViolation("second spin class of a smoothable pair is not integral");
    }
    report.q2_coefficient = num / 14;
  }
  return report;
}

}  // namespace spincc
