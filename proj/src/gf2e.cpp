#include "briwt/gf2e.hpp"

#include <stdexcept>

namespace briwt::gf2e {

namespace {

// Carry-less product of two GF(2) polynomials; degrees must stay below 64.
Poly poly_clmul(Poly a, Poly b) {
  Poly r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

Poly poly_mod(Poly a, Poly m) {
  const int dm = poly_degree(m);
  int da = poly_degree(a);
  while (da >= dm) {
    a ^= m << (da - dm);
    da = poly_degree(a);
  }
  return a;
}

}  // namespace

int poly_degree(Poly p) {
  if (p == 0) return -1;
  return 63 - __builtin_clzll(p);
}

Poly poly_mulmod(Poly a, Poly b, Poly modulus) {
  return poly_mod(poly_clmul(a, b), modulus);
}

bool poly_irreducible(Poly p) {
  const int d = poly_degree(p);
  if (d < 1) return false;
  if ((p & 1) == 0) return d == 1;  // divisible by x
  // Trial division by every polynomial of degree 1..d/2.
  for (int dq = 1; 2 * dq <= d; ++dq) {
    for (Poly q = Poly{1} << dq; q < Poly{1} << (dq + 1); ++q) {
      if (poly_mod(p, q) == 0) return false;
    }
  }
  return true;
}

Poly smallest_irreducible(int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  // Restrict to odd constant term so the modulus never shares the root 0.
  for (Poly p = (Poly{1} << degree) | 1; p < Poly{1} << (degree + 1); p += 2) {
    if (poly_irreducible(p)) return p;
  }
  throw std::logic_error("no irreducible polynomial found");
}

Poly poly_from_hex(const std::string& hex) {
  if (hex.empty()) throw std::invalid_argument("empty polynomial string");
  std::size_t pos = 0;
  if (hex.size() > 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) pos = 2;
  Poly p = 0;
  for (; pos < hex.size(); ++pos) {
    const char c = hex[pos];
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + c - 'a';
    else if (c >= 'A' && c <= 'F') v = 10 + c - 'A';
    else throw std::invalid_argument("bad hex digit in polynomial string");
    if (p >> 60) throw std::invalid_argument("polynomial string too long");
    p = (p << 4) | static_cast<Poly>(v);
  }
  return p;
}

std::string poly_to_hex(Poly p) {
  if (p == 0) return "0x0";
  std::string s;
  while (p) {
    s.insert(s.begin(), "0123456789abcdef"[p & 0xf]);
    p >>= 4;
  }
  return "0x" + s;
}

int mobius(std::uint64_t d) {
  int k = 0;
  for (std::uint64_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;  // squared factor
      ++k;
    }
  }
  if (d > 1) ++k;
  return (k % 2 == 0) ? 1 : -1;
}

std::uint64_t count_irreducible(std::uint64_t q, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::int64_t sum = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::uint64_t qe = 1;
    for (int i = 0; i < n / d; ++i) {
      if (qe > (std::uint64_t{1} << 62) / q) throw std::overflow_error("q^n too large");
      qe *= q;
    }
    sum += static_cast<std::int64_t>(mobius(d)) * static_cast<std::int64_t>(qe);
  }
  if (sum < 0 || sum % n != 0) throw std::logic_error("irreducible count not integral");
  return static_cast<std::uint64_t>(sum) / static_cast<std::uint64_t>(n);
}

FieldCtx::FieldCtx(int degree, std::optional<Poly> modulus) : degree_(degree) {
  if (degree < 1 || degree > 24) throw std::invalid_argument("degree must be in [1, 24]");
  if (modulus) {
    if (poly_degree(*modulus) != degree)
      throw std::invalid_argument("modulus degree does not match field degree");
    if ((*modulus & 1) == 0)
      throw std::invalid_argument("modulus must have nonzero constant term");
    if (!poly_irreducible(*modulus)) throw std::invalid_argument("modulus is reducible");
    modulus_ = *modulus;
  } else {
    modulus_ = smallest_irreducible(degree);
  }

  const std::uint32_t n = order();
  log_table_.assign(size(), 0);
  exp_table_.assign(n, 0);

  if (degree_ == 1) {
    primitive_ = 1;
    exp_table_[0] = 1;
    log_table_[1] = 0;
    return;
  }

  // Walk powers of each candidate in turn until one has full order; the walk
  // fills the log/exp tables as a side effect.
  for (Elem cand = 2; cand < size(); ++cand) {
    Elem p = 1;
    std::uint32_t i = 0;
    for (; i < n; ++i) {
      exp_table_[i] = p;
      log_table_[p] = i;
      p = static_cast<Elem>(poly_mulmod(p, cand, modulus_));
      if (p == 1) break;
    }
    if (i + 1 == n) {
      primitive_ = cand;
      return;
    }
  }
  throw std::logic_error("no primitive element found");
}

void FieldCtx::check_elem(Elem a) const {
  if (a >= size()) throw std::invalid_argument("element out of field range");
}

Elem FieldCtx::add(Elem a, Elem b) const {
  check_elem(a);
  check_elem(b);
  return a ^ b;
}

Elem FieldCtx::mul(Elem a, Elem b) const {
  check_elem(a);
  check_elem(b);
  if (a == 0 || b == 0) return 0;
  const std::uint64_t s = std::uint64_t{log_table_[a]} + log_table_[b];
  return exp_table_[s % order()];
}

Elem FieldCtx::pow(Elem a, std::uint64_t e) const {
  check_elem(a);
  if (a == 0) return e == 0 ? Elem{1} : Elem{0};
  Elem r = 1;
  Elem base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Elem FieldCtx::inv(Elem a) const {
  check_elem(a);
  if (a == 0) throw std::domain_error("inversion of zero");
  return exp_table_[(order() - log_table_[a]) % order()];
}

std::uint32_t FieldCtx::log(Elem a) const {
  check_elem(a);
  if (a == 0) throw std::domain_error("log of zero");
  return log_table_[a];
}

Elem FieldCtx::exp(std::uint64_t e) const { return exp_table_[e % order()]; }

bool FieldCtx::in_subfield(int b, Elem x) const {
  if (b < 1 || degree_ % b != 0) throw std::invalid_argument("b must divide the field degree");
  check_elem(x);
  // x lies in F_{2^b} iff it is fixed by b squarings.
  Elem y = x;
  for (int i = 0; i < b; ++i) y = mul(y, y);
  return y == x;
}

bool FieldCtx::generates_field(int b, Elem m) const {
  if (b < 1 || degree_ % b != 0) throw std::invalid_argument("b must divide the field degree");
  check_elem(m);
  for (int t = b; t < degree_; t += b) {
    if (degree_ % t != 0) continue;
    if (in_subfield(t, m)) return false;
  }
  return true;
}

}  // namespace briwt::gf2e
