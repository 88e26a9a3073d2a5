#include "blotto/rational.hpp"

#include "blotto/errors.hpp"

#include <limits>

namespace blotto {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidInput("empty rational literal");
  Rational q;
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    if (negative) whole.erase(0, 1);
    if (whole.empty()) whole = "0";
    for (char ch : whole + frac)
      if (ch < '0' || ch > '9') throw InvalidInput("malformed rational: " + s);
    Integer num(whole + frac, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    q = Rational(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  }
  if (q.set_str(s, 10) != 0) throw InvalidInput("malformed rational: " + s);
  if (q.get_den() == 0) throw InvalidInput("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_str();
}

Rational from_int(std::int64_t value) {
  Integer z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(value));
  return Rational(z);
}

std::int64_t to_int64(const Integer& value) {
  if (!mpz_fits_slong_p(value.get_mpz_t()))
    throw InvalidInput("integer out of 64-bit range: " + value.get_str());
  return static_cast<std::int64_t>(mpz_get_si(value.get_mpz_t()));
}

Integer floor(const Rational& value) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& value) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return r;
}

}  // namespace blotto
