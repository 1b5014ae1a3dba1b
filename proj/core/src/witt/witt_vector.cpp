#include "cuspk/witt/witt_vector.hpp"

namespace cuspk::witt {

std::vector<mpz_class> ghost(const WittVector<mpz_class>& w) {
  const auto& members = w.set().members();
  std::vector<mpz_class> out(members.size(), 0);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const std::uint32_t m = members[i];
    for (std::size_t k = 0; k <= i; ++k) {
      const std::uint32_t d = members[k];
      if (m % d) continue;
      mpz_class term;
      mpz_pow_ui(term.get_mpz_t(), w.coords()[k].get_mpz_t(), m / d);
      out[i] += d * term;
    }
  }
  return out;
}

WittVector<FiniteField::Element> reduce(const WittVector<mpz_class>& w, const FiniteField& field) {
  std::vector<FiniteField::Element> coords;
  coords.reserve(w.size());
  for (const auto& c : w.coords()) coords.push_back(field.from_integer(c));
  return WittVector<FiniteField::Element>(w.set(), std::move(coords));
}

}  // namespace cuspk::witt
