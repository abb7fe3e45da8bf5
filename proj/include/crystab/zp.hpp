#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>

namespace crystab {

struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Integer arithmetic modulo p^k with 64-bit residues.
namespace zp {

inline int64_t mod(int64_t a, int64_t m) {
    a %= m;
    return a < 0 ? a + m : a;
}

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    __int128 r = static_cast<__int128>(a) * b % m;
    return static_cast<int64_t>(r < 0 ? r + m : r);
}

inline int64_t powmod(int64_t a, uint64_t e, int64_t m) {
    int64_t r = 1 % m;
    a = mod(a, m);
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

int64_t invmod(int64_t a, int64_t m);

inline int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// p-adic valuation of a nonzero integer.
inline int val(int64_t x, int p) {
    if (x == 0) throw DomainError("valuation of zero");
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Teichmuller lift of xi mod p, as a residue mod p^M.
int64_t teich(int64_t xi, int p, int M);

// Exponent mod (p-1) with the convention 0^0 = 1 on F_p.
int64_t fp_pow(int64_t x, long long e, int p);

int64_t binom_mod(long long n, long long k, int64_t m);

}  // namespace zp
}  // namespace crystab
