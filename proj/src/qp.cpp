#include "crystab/qp.hpp"

#include <algorithm>
#include <sstream>

namespace crystab {

Qp Qp::make(int p, int N, int v, int64_t u, int r) {
    Qp x;
    x.p_ = p;
    x.N_ = N;
    r = std::min(r, N);
    if (r <= 0) return zero(p, N, v);
    int64_t m = zp::ipow(p, r);
    u = zp::mod(u, m);
    int k = 0;
    while (k < r && u % p == 0) {
        if (u == 0) return zero(p, N, v + r);
        u /= p;
        ++k;
    }
    if (k == r) return zero(p, N, v + r);
    x.zero_ = false;
    x.v_ = v + k;
    x.r_ = r - k;
    x.u_ = u % zp::ipow(p, x.r_);
    return x;
}

Qp Qp::zero(int p, int N, int absprec) {
    Qp x;
    x.p_ = p;
    x.N_ = N;
    x.zero_ = true;
    x.v_ = absprec;
    return x;
}

Qp Qp::from_int(int p, int N, long long z) {
    if (z == 0) return zero(p, N);
    int v = 0;
    while (z % p == 0) {
        z /= p;
        ++v;
    }
    int64_t m = zp::ipow(p, N);
    return make(p, N, v, zp::mod(z % m, m), N);
}

Qp Qp::from_residue(int p, int N, int64_t z) {
    int64_t m = zp::ipow(p, N);
    return make(p, N, 0, zp::mod(z, m), N);
}

Qp Qp::teichmuller(int p, int N, int64_t xi) {
    if (zp::mod(xi, p) == 0) return zero(p, N);
    return make(p, N, 0, zp::teich(xi, p, N), N);
}

Qp Qp::p_power(int p, int N, int k) { return make(p, N, k, 1, N); }

int Qp::val() const {
    if (is_exact_zero()) throw DomainError("valuation of exact zero");
    if (zero_) throw PrecisionError("insufficient precision: Q_p entry is zero to precision");
    return v_;
}

Qp Qp::operator-() const {
    if (zero_) return *this;
    return make(p_, N_, v_, -u_, r_);
}

Qp Qp::operator+(const Qp& o) const {
    if (zero_ && o.zero_) return zero(p_ ? p_ : o.p_, N_ ? N_ : o.N_, std::min(v_, o.v_));
    if (zero_) {
        if (v_ == INT_MAX) return o;
        if (o.v_ >= v_) return zero(o.p_, o.N_, v_);
        return make(o.p_, o.N_, o.v_, o.u_, std::min(o.r_, v_ - o.v_));
    }
    if (o.zero_) return o + *this;
    const Qp& lo = v_ <= o.v_ ? *this : o;
    const Qp& hi = v_ <= o.v_ ? o : *this;
    int abs = std::min(absprec(), o.absprec());
    int rel = abs - lo.v_;
    int d = hi.v_ - lo.v_;
    if (d >= rel) return make(p_, N_, lo.v_, lo.u_, rel);
    int64_t m = zp::ipow(p_, rel);
    int64_t s = (lo.u_ + zp::mulmod(zp::ipow(p_, d), hi.u_, m)) % m;
    return make(p_, N_, lo.v_, s, rel);
}

Qp Qp::operator*(const Qp& o) const {
    if (zero_ || o.zero_) {
        if (is_exact_zero() || o.is_exact_zero()) return zero(p_ ? p_ : o.p_, N_ ? N_ : o.N_);
        long long a = zero_ ? v_ : v_;
        long long b = o.v_;
        long long s = a + b;
        return zero(p_, N_, s >= INT_MAX ? INT_MAX : static_cast<int>(s));
    }
    int r = std::min(r_, o.r_);
    int64_t m = zp::ipow(p_, r);
    return make(p_, N_, v_ + o.v_, zp::mulmod(u_, o.u_, m), r);
}

Qp Qp::inv() const {
    if (zero_) throw PrecisionError("insufficient precision: inverting a Q_p zero");
    int64_t m = zp::ipow(p_, r_);
    return make(p_, N_, -v_, zp::invmod(u_, m), r_);
}

Qp Qp::unit_part() const {
    if (zero_) throw PrecisionError("insufficient precision: unit part of zero");
    return make(p_, N_, 0, u_, r_);
}

int64_t Qp::residue(int k) const {
    int64_t m = zp::ipow(p_, k);
    if (zero_) {
        if (v_ >= k) return 0;
        throw PrecisionError("insufficient precision for residue mod p^" + std::to_string(k));
    }
    if (v_ < 0) throw DomainError("residue of a non-integral element");
    if (v_ >= k) return 0;
    if (v_ + r_ < k) throw PrecisionError("insufficient precision for residue mod p^" + std::to_string(k));
    return zp::mulmod(zp::ipow(p_, v_), u_ % m, m);
}

PadicElem Qp::to_padic(const Ctx& ctx) const {
    if (zero_) {
        if (v_ == INT_MAX) return PadicElem::zero(ctx);
        long long a = static_cast<long long>(v_) * ctx->E;
        return PadicElem::zero(ctx, a > INT_MAX ? INT_MAX : static_cast<int>(a));
    }
    int keep = std::min(r_, ctx->M);
    auto u = PadicElem::from_residue(ctx, u_ % zp::ipow(p_, keep));
    if (keep < ctx->M) u = u + PadicElem::zero(ctx, keep * ctx->E);
    return u * PadicElem::from_int(ctx, p_).pow(v_);
}

std::string Qp::str() const {
    std::ostringstream os;
    if (zero_) {
        os << "0";
        if (v_ != INT_MAX) os << "+O(p^" << v_ << ")";
        return os.str();
    }
    if (v_) os << "p^" << v_ << "*";
    os << u_;
    return os.str();
}

Mat2 Mat2::from_ints(int p, int N, long long a, long long b, long long c, long long d) {
    return {Qp::from_int(p, N, a), Qp::from_int(p, N, b), Qp::from_int(p, N, c), Qp::from_int(p, N, d)};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mat2 Mat2::inv() const {
    Qp di = det().inv();
    return {d * di, -b * di, -c * di, a * di};
}

std::string Mat2::str() const {
    return "(" + a.str() + " " + b.str() + "; " + c.str() + " " + d.str() + ")";
}

IMat reduce_mat(const Mat2& g, int k) {
    return {g.a.residue(k), g.b.residue(k), g.c.residue(k), g.d.residue(k)};
}

}  // namespace crystab
