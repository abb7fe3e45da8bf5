#include "crystab/zp.hpp"

#include <vector>

namespace crystab::zp {

int64_t invmod(int64_t a, int64_t m) {
    int64_t g = m, x = 0, x1 = 1, a1 = mod(a, m);
    while (a1) {
        int64_t q = g / a1;
        int64_t t = g - q * a1;
        g = a1;
        a1 = t;
        t = x - q * x1;
        x = x1;
        x1 = t;
    }
    if (g != 1) throw DomainError("not invertible modulo " + std::to_string(m));
    return mod(x, m);
}

int64_t teich(int64_t xi, int p, int M) {
    int64_t m = ipow(p, M);
    int64_t x = mod(xi, p);
    if (x == 0) return 0;
    for (int i = 0; i < M; ++i) x = powmod(x, p, m);
    return x;
}

int64_t fp_pow(int64_t x, long long e, int p) {
    x = mod(x, p);
    if (e == 0) return 1;
    if (x == 0) return 0;
    long long ee = e % (p - 1);
    if (ee < 0) ee += p - 1;
    return powmod(x, ee, p);
}

int64_t binom_mod(long long n, long long k, int64_t m) {
    if (k < 0 || n < 0 || k > n) return 0;
    // Pascal row; small arguments only
    std::vector<int64_t> row(k + 1, 0);
    row[0] = 1 % m;
    for (long long i = 1; i <= n; ++i)
        for (long long j = std::min(i, k); j >= 1; --j) row[j] = (row[j] + row[j - 1]) % m;
    return row[k];
}

}  // namespace crystab::zp
