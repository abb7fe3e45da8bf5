#pragma once
#include <climits>
#include <cstdint>
#include <string>

#include "crystab/padic.hpp"

namespace crystab {

// Element p^v * u of Q_p, u a unit known modulo p^r (r <= N).
// A zero carries an absolute precision; INT_MAX is exact.
class Qp {
public:
    Qp() = default;
    static Qp zero(int p, int N, int absprec = INT_MAX);
    static Qp from_int(int p, int N, long long z);
    // z known modulo p^N
    static Qp from_residue(int p, int N, int64_t z);
    static Qp teichmuller(int p, int N, int64_t xi);
    static Qp p_power(int p, int N, int k);

    int p() const { return p_; }
    int N() const { return N_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ == INT_MAX; }
    int val() const;
    int absprec() const { return zero_ ? v_ : v_ + r_; }
    int relprec() const { return zero_ ? 0 : r_; }
    int64_t unit() const { return u_; }
    bool is_integral() const { return zero_ ? v_ >= 0 : v_ >= 0; }
    bool is_unit() const { return !zero_ && v_ == 0; }

    Qp operator-() const;
    Qp operator+(const Qp& o) const;
    Qp operator-(const Qp& o) const { return *this + (-o); }
    Qp operator*(const Qp& o) const;
    Qp operator/(const Qp& o) const { return *this * o.inv(); }
    Qp inv() const;
    Qp unit_part() const;

    // Residue modulo p^k of an integral element; throws if not known that far.
    int64_t residue(int k) const;

    PadicElem to_padic(const Ctx& ctx) const;
    std::string str() const;

private:
    int p_ = 0, N_ = 0;
    bool zero_ = true;
    int v_ = INT_MAX;
    int r_ = 0;
    int64_t u_ = 0;
    static Qp make(int p, int N, int v, int64_t u, int r);
};

struct Mat2 {
    Qp a, b, c, d;

    static Mat2 from_ints(int p, int N, long long a, long long b, long long c, long long d);
    static Mat2 identity(int p, int N) { return from_ints(p, N, 1, 0, 0, 1); }

    Mat2 operator*(const Mat2& o) const;
    Qp det() const { return a * d - b * c; }
    Mat2 inv() const;
    Mat2 scaled(const Qp& s) const { return {a * s, b * s, c * s, d * s}; }
    std::string str() const;
};

// Integer matrix modulo a prime power, used for the finite groups GL2(Z/p^k).
struct IMat {
    int64_t a, b, c, d;
};

inline IMat imul(const IMat& x, const IMat& y, int64_t m) {
    return {(zp::mulmod(x.a, y.a, m) + zp::mulmod(x.b, y.c, m)) % m,
            (zp::mulmod(x.a, y.b, m) + zp::mulmod(x.b, y.d, m)) % m,
            (zp::mulmod(x.c, y.a, m) + zp::mulmod(x.d, y.c, m)) % m,
            (zp::mulmod(x.c, y.b, m) + zp::mulmod(x.d, y.d, m)) % m};
}

inline int64_t idet(const IMat& x, int64_t m) {
    return zp::mod(zp::mulmod(x.a, x.d, m) - zp::mulmod(x.b, x.c, m), m);
}

inline IMat iinv(const IMat& x, int64_t m) {
    int64_t di = zp::invmod(idet(x, m), m);
    return {zp::mulmod(x.d, di, m), zp::mulmod(zp::mod(-x.b, m), di, m), zp::mulmod(zp::mod(-x.c, m), di, m),
            zp::mulmod(x.a, di, m)};
}

// Reduction of an integral matrix modulo p^k.
IMat reduce_mat(const Mat2& g, int k);

}  // namespace crystab
