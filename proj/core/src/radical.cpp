#include "conelab/radical.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace conelab {
namespace {

constexpr unsigned long kTrialLimit = 1UL << 20;

Integer smallest_prime_factor(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long p = 3; p < kTrialLimit; p += 2) {
    if (n % p == 0) return Integer(p);
    if (Integer(p) * p > n) return n;
  }
  if (mpz_probab_prime_p(n.get_mpz_t(), 40) != 0) return n;
  throw std::domain_error("radicand " + n.get_str() + " too large to factor");
}

// sign(e + f*sqrt(x)) for rationals e, f and x >= 0.
int sign_plus_root(const Rational& e, const Rational& f, const Rational& x) {
  if (f == 0 || x == 0) return sgn(e);
  if (f < 0) return -sign_plus_root(-e, -f, x);
  if (e >= 0) return 1;
  // e < 0 < f*sqrt(x): compare squares
  const Rational diff = f * f * x - e * e;
  return sgn(diff);
}

}  // namespace

std::pair<Integer, Integer> split_square_free(const Integer& n) {
  if (n <= 0) return {Integer(0), Integer(0)};
  Integer rest = n;
  Integer root = 1;
  Integer free = 1;
  while (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t()) != 0) {
      root *= sqrt(rest);
      break;
    }
    const Integer p = smallest_prime_factor(rest);
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) root *= p;
    if (e % 2 == 1) free *= p;
  }
  return {root, free};
}

ConeSupportValue::ConeSupportValue(Rational a) : a_(std::move(a)) {}

ConeSupportValue::ConeSupportValue(Rational a, Rational m, Rational q)
    : a_(std::move(a)) {
  if (m < 0 || q < 0) throw std::invalid_argument("ConeSupportValue needs m >= 0 and q >= 0");
  if (m == 0 || q == 0) return;
  // sqrt(N/D) = sqrt(N*D)/D
  const Integer s = q.get_num() * q.get_den();
  const auto [root, free] = split_square_free(s);
  Rational coeff = m * Rational(root, q.get_den());
  coeff.canonicalize();
  if (free == 1) {
    a_ += coeff;
  } else {
    m_ = coeff;
    q_ = Rational(free);
  }
}

double ConeSupportValue::approx() const {
  return a_.get_d() + m_.get_d() * std::sqrt(q_.get_d());
}

std::string ConeSupportValue::to_string() const {
  if (is_rational()) return conelab::to_string(a_);
  std::string out = a_ == 0 ? std::string{} : conelab::to_string(a_) + "+";
  return out + conelab::to_string(m_) + "*sqrt(" + conelab::to_string(q_) + ")";
}

ConeSupportValue ConeSupportValue::operator-() const {
  if (!is_rational()) {
    throw std::domain_error("negating an irrational support value leaves the a + m*sqrt(q), m >= 0 form");
  }
  return ConeSupportValue(-a_);
}

std::strong_ordering radical_compare(const ConeSupportValue& u, const ConeSupportValue& v) {
  // sign of D + P - Q, with D = a1 - a2, P = m1*sqrt(q1), Q = m2*sqrt(q2), P, Q >= 0.
  const Rational d = u.a() - v.a();
  int s = 0;
  const int left = sign_plus_root(d, u.m(), u.q());  // sign of D + P
  if (v.m() == 0) {
    s = left;
  } else if (left <= 0) {
    s = -1;  // D + P <= 0 < Q
  } else {
    // both sides positive: (D + P)^2 - Q^2 = (D^2 + m1^2 q1 - m2^2 q2) + 2 D m1 sqrt(q1)
    const Rational e = d * d + u.m() * u.m() * u.q() - v.m() * v.m() * v.q();
    const Rational f = 2 * d * u.m();
    s = sign_plus_root(e, f, u.q());
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const ConeSupportValue& u, const ConeSupportValue& v) {
  return radical_compare(u, v);
}

RadicalSum::RadicalSum(const Rational& r) { add_term(r, Integer(1)); }

RadicalSum::RadicalSum(const ConeSupportValue& v) {
  add_term(v.a(), Integer(1));
  if (!v.is_rational()) add_term(v.m(), v.q().get_num());
}

void RadicalSum::add_term(const Rational& c, const Integer& radicand) {
  if (c == 0 || radicand == 0) return;
  const auto [root, free] = split_square_free(radicand);
  Rational coeff = c * root;
  auto [it, inserted] = terms_.try_emplace(free, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum out = *this;
  for (auto& [r, c] : out.terms_) c = -c;
  return out;
}

RadicalSum operator+(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum out = x;
  for (const auto& [r, c] : y.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(r, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

RadicalSum operator-(const RadicalSum& x, const RadicalSum& y) { return x + (-y); }

RadicalSum operator*(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum out;
  for (const auto& [r1, c1] : x.terms_) {
    for (const auto& [r2, c2] : y.terms_) {
      // sqrt(r1) sqrt(r2) = g sqrt((r1/g)(r2/g)), g = gcd; both parts stay square-free
      Integer g;
      mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), r2.get_mpz_t());
      const Integer radicand = (r1 / g) * (r2 / g);
      const Rational coeff = c1 * c2 * g;
      auto [it, inserted] = out.terms_.try_emplace(radicand, coeff);
      if (!inserted) {
        it->second += coeff;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

int RadicalSum::sign() const {
  if (terms_.empty()) return 0;
  const Integer* pivot = nullptr;
  for (const auto& [r, c] : terms_) {
    if (r > 1) {
      pivot = &r;
      break;
    }
  }
  if (pivot == nullptr) return sgn(terms_.begin()->second);

  // Split x = P + Q*sqrt(p) on a prime p; P and Q only involve radicands coprime to p.
  const Integer p = smallest_prime_factor(*pivot);
  RadicalSum base;
  RadicalSum with_p;
  for (const auto& [r, c] : terms_) {
    if (r % p == 0) {
      with_p.terms_.emplace(r / p, c);
    } else {
      base.terms_.emplace(r, c);
    }
  }
  const int sp = base.sign();
  const int sq = with_p.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  // opposite signs: compare |P| with |Q|*sqrt(p)
  RadicalSum diff = base * base - with_p * with_p * RadicalSum(Rational(p));
  return sp * diff.sign();
}

double RadicalSum::approx() const {
  double total = 0.0;
  for (const auto& [r, c] : terms_) total += c.get_d() * std::sqrt(r.get_d());
  return total;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [r, c] : terms_) {
    std::string term = r == 1 ? conelab::to_string(c) : conelab::to_string(c) + "*sqrt(" + r.get_str() + ")";
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out;
}

std::strong_ordering operator<=>(const RadicalSum& x, const RadicalSum& y) {
  const int s = (x - y).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace conelab
