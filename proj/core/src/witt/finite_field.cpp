#include "cuspk/witt/finite_field.hpp"

#include <map>
#include <sstream>
#include <utility>

#include "cuspk/errors.hpp"

namespace cuspk::witt {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<unsigned>;  // low to high, over Z/p

// Remainder of `num` modulo the monic `den`.
Poly poly_mod(Poly num, const Poly& den, unsigned p) {
  const std::size_t dd = den.size() - 1;
  while (num.size() > dd) {
    unsigned lead = num.back();
    std::size_t shift = num.size() - 1 - dd;
    if (lead != 0)
      for (std::size_t i = 0; i <= dd; ++i)
        num[shift + i] = static_cast<unsigned>((num[shift + i] + (p - lead) * static_cast<unsigned long>(den[i])) % p);
    num.pop_back();
  }
  return num;
}

const std::map<std::pair<unsigned, unsigned>, Poly>& conway_table() {
  static const std::map<std::pair<unsigned, unsigned>, Poly> table = {
      {{2, 1}, {1, 1}},          {{2, 2}, {1, 1, 1}},       {{2, 3}, {1, 1, 0, 1}},    {{2, 4}, {1, 1, 0, 0, 1}},
      {{3, 1}, {1, 1}},          {{3, 2}, {2, 2, 1}},       {{3, 3}, {1, 2, 0, 1}},    {{3, 4}, {2, 0, 0, 2, 1}},
      {{5, 1}, {3, 1}},          {{5, 2}, {2, 4, 1}},       {{5, 3}, {3, 3, 0, 1}},    {{5, 4}, {2, 4, 4, 0, 1}},
      {{7, 1}, {4, 1}},          {{7, 2}, {3, 6, 1}},       {{7, 3}, {4, 0, 6, 1}},    {{7, 4}, {3, 4, 5, 0, 1}},
  };
  return table;
}

}  // namespace

bool is_irreducible(unsigned p, const std::vector<unsigned>& monic) {
  if (monic.size() < 2 || monic.back() != 1) throw InvalidArgument("is_irreducible: expects a monic polynomial");
  const std::size_t deg = monic.size() - 1;
  for (std::size_t d = 1; 2 * d <= deg; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly factor(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        factor[i] = static_cast<unsigned>(c % p);
        c /= p;
      }
      factor[d] = 1;
      Poly r = poly_mod(monic, factor, p);
      bool zero = true;
      for (unsigned v : r) zero = zero && v == 0;
      if (zero) return false;
    }
  }
  return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned e) {
  if (!is_prime(p)) throw InvalidArgument("default_modulus: p is not prime");
  if (e < 1) throw InvalidArgument("default_modulus: e must be at least 1");
  auto it = conway_table().find({p, e});
  if (it != conway_table().end()) return it->second;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < e; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Poly candidate(e + 1, 0);
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) {
      candidate[i] = static_cast<unsigned>(c % p);
      c /= p;
    }
    candidate[e] = 1;
    if (is_irreducible(p, candidate)) return candidate;
  }
  throw IntegrityError("no irreducible polynomial found");  // unreachable
}

FiniteField::FiniteField(unsigned p, unsigned e) : FiniteField(p, default_modulus(p, e)) {}

FiniteField::FiniteField(unsigned p, std::vector<unsigned> modulus) : p_(p), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw InvalidArgument("FiniteField: p = " + std::to_string(p) + " is not prime");
  if (modulus_.size() < 2) throw InvalidArgument("FiniteField: modulus must have degree >= 1");
  for (unsigned c : modulus_)
    if (c >= p) throw InvalidArgument("FiniteField: modulus coefficients must lie in [0, p)");
  if (modulus_.back() != 1) throw InvalidArgument("FiniteField: modulus must be monic");
  e_ = static_cast<unsigned>(modulus_.size() - 1);
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e_; ++i) {
    q *= p;
    if (q > (std::uint64_t{1} << 24)) throw ResourceError("FiniteField: q exceeds 2^24");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (!is_irreducible(p, modulus_)) throw InvalidArgument("FiniteField: modulus is reducible");

  if (q_ <= 256) {
    auto add = std::make_shared<std::vector<std::uint16_t>>(static_cast<std::size_t>(q_) * q_);
    auto mul = std::make_shared<std::vector<std::uint16_t>>(static_cast<std::size_t>(q_) * q_);
    for (Element a = 0; a < q_; ++a)
      for (Element b = 0; b < q_; ++b) {
        (*add)[a * q_ + b] = static_cast<std::uint16_t>(add_slow(a, b));
        (*mul)[a * q_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
      }
    add_table_ = std::move(add);
    mul_table_ = std::move(mul);
  }
}

FiniteField::Element FiniteField::add_slow(Element a, Element b) const {
  Element out = 0;
  Element place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += ((a % p_ + b % p_) % p_) * place;
    a /= p_;
    b /= p_;
    place *= p_;
  }
  return out;
}

FiniteField::Element FiniteField::mul_slow(Element a, Element b) const {
  std::vector<unsigned> da = digits(a);
  std::vector<unsigned> db = digits(b);
  Poly prod(2 * e_ - 1, 0);
  for (unsigned i = 0; i < e_; ++i)
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = static_cast<unsigned>((prod[i + j] + static_cast<unsigned long>(da[i]) * db[j]) % p_);
  Poly r = poly_mod(std::move(prod), modulus_, p_);
  Element out = 0;
  Element place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += (i < r.size() ? r[i] : 0) * place;
    place *= p_;
  }
  return out;
}

FiniteField::Element FiniteField::add(Element a, Element b) const {
  if (add_table_) return (*add_table_)[a * q_ + b];
  return add_slow(a, b);
}

FiniteField::Element FiniteField::neg(Element a) const {
  Element out = 0;
  Element place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += ((p_ - a % p_) % p_) * place;
    a /= p_;
    place *= p_;
  }
  return out;
}

FiniteField::Element FiniteField::sub(Element a, Element b) const { return add(a, neg(b)); }

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (mul_table_) return (*mul_table_)[a * q_ + b];
  return mul_slow(a, b);
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t n) const {
  Element result = one();
  while (n) {
    if (n & 1) result = mul(result, a);
    n >>= 1;
    if (n) a = mul(a, a);
  }
  return result;
}

FiniteField::Element FiniteField::inverse(Element a) const {
  if (a == 0) throw InvalidArgument("FiniteField: inverse of zero");
  return pow(a, q_ - 2);
}

FiniteField::Element FiniteField::from_integer(const mpz_class& n) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
  return static_cast<Element>(r.get_ui());
}

FiniteField::Element FiniteField::from_long(long n) const {
  long r = n % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<Element>(r);
}

FiniteField::Element FiniteField::generator() const {
  if (e_ == 1) return neg(static_cast<Element>(modulus_[0]));
  return p_;
}

std::vector<FiniteField::Element> FiniteField::basis() const {
  std::vector<Element> out;
  Element place = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out.push_back(place);
    place *= p_;
  }
  return out;
}

std::vector<unsigned> FiniteField::digits(Element a) const {
  std::vector<unsigned> out(e_);
  for (unsigned i = 0; i < e_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

std::string FiniteField::format(Element a) const {
  if (e_ == 1) return std::to_string(a);
  std::vector<unsigned> d = digits(a);
  std::ostringstream os;
  bool first = true;
  for (unsigned i = 0; i < e_; ++i) {
    if (d[i] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || d[i] != 1) os << d[i];
    if (i >= 1) os << 'z';
    if (i >= 2) os << '^' << i;
  }
  return first ? "0" : os.str();
}

}  // namespace cuspk::witt
