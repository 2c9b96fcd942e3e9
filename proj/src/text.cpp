#include "spincc/text.hpp"

#include <cctype>
#include <set>
#include <type_traits>

#include "spincc/errors.hpp"
#include "spincc/json_io.hpp"

namespace spincc {

namespace {

template <class P>
struct Coeff;
template <>
struct Coeff<Poly> {
  using type = mpz_class;
  static constexpr bool rational = false;
};
template <>
struct Coeff<RatPoly> {
  using type = mpq_class;
  static constexpr bool rational = true;
};

template <class P>
class Parser {
 public:
  using C = typename Coeff<P>::type;

  Parser(std::string_view text, const Ring& ring) : text_(text), ring_(ring) {}

  P run() {
    P p = poly();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static bool letter(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
  static bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

  P poly() {
    P acc(ring_);
    bool first = true;
    for (;;) {
      char c = peek();
      bool negative = false;
      if (c == '+' || c == '-') {
        negative = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      P t = term();
      if (negative) t = -t;
      acc += t;
      first = false;
    }
    return acc;
  }

  bool starts_factor() {
    char c = peek();
    return digit(c) || letter(c) || c == '(';
  }

  P term() {
    if (!starts_factor()) fail("expected a term");
    P t = factor();
    for (;;) {
      if (peek() == '*') {
        ++pos_;
        if (!starts_factor()) fail("expected a factor after '*'");
      } else if (!starts_factor()) {
        break;
      }
      t = t * factor();
    }
    return t;
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  unsigned exponent() {
    // caller consumed '^'
    if (!digit(peek())) fail("exponent must be a non-negative integer");
    mpz_class e = integer();
    if (e > 0xFFFF) fail("exponent too large");
    return unsigned(e.get_ui());
  }

  P factor() {
    char c = peek();
    if (digit(c)) {
      mpz_class num = integer();
      if (peek() == '/') {
        if constexpr (!Coeff<P>::rational) {
          fail("fractional coefficient not allowed here");
        } else {
          ++pos_;
          mpz_class den = integer();
          if (den == 0) fail("zero denominator");
          mpq_class q(num, den);
          q.canonicalize();
          return P(ring_, q);
        }
      }
      return P(ring_, C(num));
    }
    if (c == '(') {
      ++pos_;
      P inner = poly();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      if (peek() == '^') {
        ++pos_;
        inner = inner.pow(exponent());
      }
      return inner;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && letter(text_[pos_])) ++pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    auto index = ring_->index_of(name);
    if (!index) {
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    unsigned e = 1;
    if (peek() == '^') {
      ++pos_;
      e = exponent();
    }
    P v(ring_);
    v.accumulate(Monomial::generator(*ring_, *index, Exponent(e)), 1);
    return v;
  }

  std::string_view text_;
  const Ring& ring_;
  std::size_t pos_ = 0;
};

const std::set<std::string, std::less<>> kGreek = {"alpha", "beta",  "gamma", "delta", "theta",
                                                   "sigma", "tau",   "mu",    "psi",   "phi",
                                                   "kappa", "omega", "lambda"};

std::string coefficient_text(const mpz_class& c, Format format) {
  (void)format;
  return c.get_str();
}

std::string coefficient_text(const mpq_class& c, Format format) {
  if (c.get_den() == 1) return c.get_num().get_str();
  if (format == Format::Latex) {
    return "\\frac{" + c.get_num().get_str() + "}{" + c.get_den().get_str() + "}";
  }
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

template <class P>
std::string render_impl(const P& p, Format format) {
  if (format == Format::Json) return to_json(p).dump();
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::decay_t<decltype(c)> magnitude = c;
    if (negative) magnitude = -magnitude;
    bool unit = magnitude == 1;
    if (m.is_one()) {
      out += coefficient_text(magnitude, format);
      continue;
    }
    if (!unit) {
      out += coefficient_text(magnitude, format);
      if (format == Format::Plain) out += "*";
    }
    out += render_monomial(p.spec(), m, format);
  }
  return out;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "plain") return Format::Plain;
  if (name == "latex") return Format::Latex;
  if (name == "json") return Format::Json;
  throw DomainError("unknown format " + std::string(name));
}

Poly parse(std::string_view text, const Ring& ring) { return Parser<Poly>(text, ring).run(); }

RatPoly parse_rational(std::string_view text, const Ring& ring) {
  if (ring->modulus() != 0) throw DomainError("rational parsing needs a modulus-0 ring");
  return Parser<RatPoly>(text, ring).run();
}

std::string latex_glyph(std::string_view name) {
  std::size_t split = 0;
  while (split < name.size() && std::isalpha(static_cast<unsigned char>(name[split]))) ++split;
  std::string head(name.substr(0, split));
  std::string_view index = name.substr(split);
  std::string glyph;
  if (head.size() == 1) {
    glyph = head == "P" ? "p" : head;
  } else if (kGreek.count(head)) {
    glyph = "\\" + head;
  } else {
    glyph = "\\mathrm{" + head + "}";
  }
  if (!index.empty()) glyph += "_{" + std::string(index) + "}";
  return glyph;
}

std::string render_monomial(const RingSpec& ring, const Monomial& m, Format format) {
  if (m.is_one()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (format == Format::Latex) {
      std::string g = latex_glyph(ring.name_of(i));
      if (!out.empty() && std::isalpha(static_cast<unsigned char>(out.back()))) out += " ";
      out += g;
      if (m[i] > 1) out += "^{" + std::to_string(m[i]) + "}";
    } else {
      if (!out.empty()) out += "*";
      out += ring.name_of(i);
      if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
  }
  return out;
}

std::string render(const Poly& p, Format format) { return render_impl(p, format); }
std::string render(const RatPoly& p, Format format) { return render_impl(p, format); }

}  // namespace spincc
