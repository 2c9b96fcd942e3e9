#pragma once

// Polynomial text I/O.
//
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := integer ['/' integer] | name ['^' integer] | '(' poly ')' ['^' integer]
//   name   := [a-zA-Z]+[0-9]*
//
// Juxtaposition multiplies, so "c1c3" and "2y" are accepted. A fraction is
// only legal when parsing into a RatPoly. An exponent must be a bare integer:
// "w2^(3)" is rejected.

#include <string>
#include <string_view>

#include "spincc/ring.hpp"

namespace spincc {

enum class Format { Plain, Latex, Json };

Format parse_format(std::string_view name);

Poly parse(std::string_view text, const Ring& ring);
RatPoly parse_rational(std::string_view text, const Ring& ring);

// Plain output parses back to the same canonical polynomial.
std::string render(const Poly& p, Format format = Format::Plain);
std::string render(const RatPoly& p, Format format = Format::Plain);

std::string render_monomial(const RingSpec& ring, const Monomial& m, Format format = Format::Plain);

// w12 -> w_{12}, P3 -> p_{3}, theta -> \theta
std::string latex_glyph(std::string_view name);

}  // namespace spincc
