#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace ecaliquot {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;
__extension__ using i128 = __int128;

// Products below 2^64 take the cheap path; otherwise fall back to 128-bit.
inline u64 mulmod(u64 a, u64 b, u64 m) {
    if (m <= 0xFFFFFFFFull) return (a * b) % m;
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

// Least nonnegative residue of a signed value.
inline u64 reduce_signed(i64 a, u64 m) {
    if (a >= 0) return static_cast<u64>(a) % m;
    u64 r = static_cast<u64>(-(a + 1)) % m;  // avoids overflow at INT64_MIN
    return m - 1 - r;
}

u64 powmod(u64 base, u64 exp, u64 m);

// Throws std::domain_error if gcd(a, m) != 1.
u64 invmod(u64 a, u64 m);

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// Legendre symbol for odd prime p: returns -1, 0 or 1.
int legendre(u64 a, u64 p);

// Square root modulo an odd prime, if one exists.
std::optional<u64> sqrt_mod(u64 a, u64 p);

u64 isqrt(u64 n);

// Smallest prime >= n.
u64 next_prime(u64 n);

std::vector<u64> primes_up_to(u64 n);

// Primes in the closed interval [lo, hi] via a segmented sieve.
std::vector<u64> primes_in_range(u64 lo, u64 hi);

// Prime factorization with multiplicities, ascending.
std::vector<std::pair<u64, int>> factorize(u64 n);

// floor(2*sqrt(p)): the Hasse half-width.
inline u64 hasse_width(u64 p) { return isqrt(4 * p); }

}  // namespace ecaliquot
