#include "conelab/rational.hpp"

#include <cctype>

#include "conelab/errors.hpp"

namespace conelab {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const auto num = body.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!all_digits(num) || (slash != std::string_view::npos && !all_digits(den))) {
    throw ParseError("", "invalid rational '" + std::string(text) + "' (expected p or p/q)");
  }
  Integer n(std::string(num), 10);
  Integer d(1);
  if (slash != std::string_view::npos) {
    d = Integer(std::string(den), 10);
    if (d == 0) throw ParseError("", "zero denominator in '" + std::string(text) + "'");
  }
  if (text.front() == '-') n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::size_t hash_value(const Integer& z) noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(p->_mp_size) * 0x9E3779B97F4A7C15ULL;
  const int limbs = p->_mp_size < 0 ? -p->_mp_size : p->_mp_size;
  for (int i = 0; i < limbs; ++i) {
    h ^= static_cast<std::size_t>(p->_mp_d[i]) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t hash_value(const Rational& q) noexcept {
  const std::size_t hn = hash_value(q.get_num());
  const std::size_t hd = hash_value(q.get_den());
  return hn ^ (hd * 0x100000001B3ULL + (hn << 7));
}

std::size_t bit_size(const Rational& q) noexcept {
  const std::size_t nb = mpz_sizeinbase(q.get_num_mpz_t(), 2);
  const std::size_t db = mpz_sizeinbase(q.get_den_mpz_t(), 2);
  return nb > db ? nb : db;
}

}  // namespace conelab
