#include "padic/params.hpp"

namespace padic {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % mod);
}

std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, mod);
    base = mulmod_u64(base, base, mod);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs with the 12 fixed bases.
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t pow_u64(std::uint64_t p, unsigned e) {
  constexpr std::uint64_t kCap = 1ull << 62;
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (r >= kCap / p + 1 && r > kCap / p) throw std::overflow_error("pow_u64: p^e exceeds 2^62");
    r *= p;
    if (r >= kCap) throw std::overflow_error("pow_u64: p^e exceeds 2^62");
  }
  return r;
}

void Params::validate() {
  if (!is_prime_u64(p_)) throw std::domain_error("Params: p must be prime");
  if (m_ < 1) throw std::domain_error("Params: m must be >= 1");
  pm_ = pow_u64(p_, m_);  // enforces p^m < 2^62
  if (!(b_ > 0.0)) throw std::domain_error("Params: b must be > 0");
  if (!(D_ > 0.0)) throw std::domain_error("Params: D must be > 0");
  if (b_exact_ && b_exact_->num <= 0) throw std::domain_error("Params: b must be > 0");
  if (D_exact_ && D_exact_->num <= 0) throw std::domain_error("Params: D must be > 0");
}

Params Params::with_level(unsigned m) const {
  Params out = *this;
  out.m_ = m;
  out.pm_ = pow_u64(p_, m);
  return out;
}

}  // namespace padic
