#include "granular/fuzzy_number.hpp"

#include <cmath>

#include "granular/errors.hpp"
#include "granular/text.hpp"

namespace granular {

TriangularFuzzyNumber TriangularFuzzyNumber::parse(std::string_view text) {
  auto body = text::trim(text);
  if (body.empty()) throw ValidationError("empty fuzzy number literal");
  if (body.front() != '(') return crisp(text::parse_double(body));
  if (body.back() != ')') {
    throw ValidationError("fuzzy number literal must look like (l,p,r): '" + std::string(text) + "'");
  }
  body = body.substr(1, body.size() - 2);
  const auto fields = text::parse_list(body);
  if (fields.size() != 3) {
    throw ValidationError("fuzzy number literal needs exactly three values: '" + std::string(text) + "'");
  }
  TriangularFuzzyNumber t{fields[0], fields[1], fields[2]};
  t.validate();
  return t;
}

void TriangularFuzzyNumber::validate() const {
  if (!std::isfinite(left) || !std::isfinite(peak) || !std::isfinite(right)) {
    throw ValidationError("triangular fuzzy number has a non-finite component");
  }
  if (left > peak || peak > right) {
    throw ValidationError("triangular fuzzy number " + to_string() +
                          " violates left <= peak <= right");
  }
}

std::string TriangularFuzzyNumber::to_string() const {
  return "(" + text::shortest(left) + "," + text::shortest(peak) + "," + text::shortest(right) + ")";
}

}  // namespace granular
