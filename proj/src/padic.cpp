#include "crystab/padic.hpp"

#include <algorithm>
#include <sstream>

namespace crystab {

std::string to_string(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

namespace {

using Poly = std::vector<int64_t>;

// Product of two polynomials of degree < E reduced modulo the Eisenstein polynomial.
Poly body_mul(const PadicContext& C, const Poly& a, const Poly& b) {
    const int E = C.E;
    const int64_t m = C.pM;
    std::vector<int64_t> c(2 * E - 1, 0);
    if (C.acc_safe) {
        std::vector<unsigned __int128> acc(2 * E - 1, 0);
        for (int i = 0; i < E; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < E; ++j)
                acc[i + j] += static_cast<unsigned __int128>(a[i]) * static_cast<uint64_t>(b[j]);
        }
        for (int i = 0; i < 2 * E - 1; ++i) c[i] = static_cast<int64_t>(acc[i] % static_cast<unsigned __int128>(m));
    } else {
        for (int i = 0; i < E; ++i) {
            if (!a[i]) continue;
            for (int j = 0; j < E; ++j) c[i + j] = (c[i + j] + zp::mulmod(a[i], b[j], m)) % m;
        }
    }
    for (int k = 2 * E - 2; k >= E; --k) {
        int64_t ck = c[k];
        if (!ck) continue;
        for (int j = 0; j < E; ++j) {
            if (!C.f[j]) continue;
            c[k - E + j] = zp::mod(c[k - E + j] - zp::mulmod(ck, C.f[j], m), m);
        }
    }
    c.resize(E);
    return c;
}

// Multiply by pi.
Poly body_mul_pi(const PadicContext& C, const Poly& a) {
    const int E = C.E;
    Poly c(E, 0);
    for (int i = 0; i + 1 < E; ++i) c[i + 1] = a[i];
    int64_t top = a[E - 1];
    if (top)
        for (int j = 0; j < E; ++j) c[j] = zp::mod(c[j] - zp::mulmod(top, C.f[j], C.pM), C.pM);
    return c;
}

Poly body_one(const PadicContext& C) {
    Poly c(C.E, 0);
    c[0] = 1;
    return c;
}

Poly body_pow(const PadicContext& C, Poly a, long long k) {
    Poly r = body_one(C);
    while (k > 0) {
        if (k & 1) r = body_mul(C, r, a);
        k >>= 1;
        if (k) a = body_mul(C, a, a);
    }
    return r;
}

Poly body_scale(const PadicContext& C, const Poly& a, int64_t s) {
    Poly c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = zp::mulmod(a[i], s, C.pM);
    return c;
}

// Inverse of a unit body by Newton iteration.
Poly body_inv(const PadicContext& C, const Poly& a) {
    Poly y(C.E, 0);
    y[0] = zp::invmod(a[0], C.pM);
    int reach = 1;
    const int need = C.E * C.M;
    while (reach < need) {
        Poly ay = body_mul(C, a, y);
        for (auto& v : ay) v = zp::mod(-v, C.pM);
        ay[0] = zp::mod(ay[0] + 2, C.pM);
        y = body_mul(C, y, ay);
        reach *= 2;
    }
    return y;
}

}  // namespace

Rational PadicContext::w_unit() const {
    return Rational(zp::ipow(p, n - 2) * (p - 1), E);
}

std::shared_ptr<const PadicContext> PadicContext::make(const PadicConfig& cfg) {
    const int p = cfg.p;
    if (p < 3 || p % 2 == 0) throw DomainError("p must be an odd prime");
    for (int d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw DomainError("p must be an odd prime");
    if (cfg.n < 2) throw DomainError("n must be at least 2");
    if (cfg.M < 1) throw DomainError("precision must be positive");
    // residues mod p^{M+1} must fit comfortably in 63 bits
    long double bound = 1;
    for (int i = 0; i <= cfg.M; ++i) bound *= p;
    if (bound > 4.0e18L) throw DomainError("precision too large for 64-bit residues");

    auto* C = new PadicContext();
    C->p = p;
    C->n = cfg.n;
    C->M = cfg.M;
    C->quad = cfg.quad;
    C->e = static_cast<int>(zp::ipow(p, cfg.n - 1) * (p - 1));
    C->E = cfg.quad ? 2 * C->e : C->e;
    C->ppow.resize(cfg.M + 2);
    C->ppow[0] = 1;
    for (int i = 1; i <= cfg.M + 1; ++i) C->ppow[i] = C->ppow[i - 1] * p;
    C->pM = C->ppow[cfg.M];

    // Phi_{p^n}(1+X) = sum_{i<p} ((1+X)^{p^{n-1}})^i, computed mod p^{M+1}
    const int64_t big = C->ppow[cfg.M + 1];
    const int q = static_cast<int>(zp::ipow(p, cfg.n - 1));
    std::vector<int64_t> Y(q + 1);
    for (int j = 0; j <= q; ++j) Y[j] = zp::binom_mod(q, j, big);
    std::vector<int64_t> F(C->e + 1, 0), P{1};
    for (int i = 0; i < p; ++i) {
        for (size_t j = 0; j < P.size(); ++j) F[j] = (F[j] + P[j]) % big;
        if (i + 1 == p) break;
        std::vector<int64_t> N(P.size() + q, 0);
        for (size_t a = 0; a < P.size(); ++a)
            for (int b = 0; b <= q; ++b) N[a + b] = (N[a + b] + zp::mulmod(P[a], Y[b], big)) % big;
        P = std::move(N);
    }
    std::vector<int64_t> Fbig(C->E + 1, 0);
    for (int j = 0; j <= C->e; ++j) Fbig[cfg.quad ? 2 * j : j] = F[j];

    C->f.resize(C->E + 1);
    for (int j = 0; j <= C->E; ++j) C->f[j] = Fbig[j] % C->pM;
    C->acc_safe = static_cast<long double>(C->pM) * C->pM * C->E < 3.0e38L;

    C->p_over_pi.assign(C->E, 0);
    for (int j = 1; j < C->E; ++j) C->p_over_pi[j - 1] = zp::mod(-C->f[j], C->pM);
    C->p_over_pi[C->E - 1] = zp::mod(C->p_over_pi[C->E - 1] - 1, C->pM);

    // pi^E = -p G(pi) with G = 1 + sum_{j>=1} (f_j/p) pi^j; theta = p/pi^E = -1/G
    Poly G(C->E, 0);
    G[0] = 1;
    for (int j = 1; j < C->E; ++j) G[j] = (Fbig[j] / p) % C->pM;
    Poly Gi = body_inv(*C, G);
    C->theta.resize(C->E);
    for (int j = 0; j < C->E; ++j) C->theta[j] = zp::mod(-Gi[j], C->pM);
    C->theta_inv.resize(C->E);
    for (int j = 0; j < C->E; ++j) C->theta_inv[j] = zp::mod(-G[j], C->pM);
    return std::shared_ptr<const PadicContext>(C);
}

PadicElem PadicElem::make(const Ctx& ctx, int sh, std::vector<int64_t> body, int prec) {
    const PadicContext& C = *ctx;
    prec = std::min(prec, C.E * C.M);
    int k = 0;
    while (true) {
        if (k >= prec) return zero(ctx, sh + prec);
        if (body[0] % C.p != 0) break;
        bool all = std::all_of(body.begin(), body.end(), [](int64_t v) { return v == 0; });
        if (all) return zero(ctx, sh + prec);
        // divide by pi: body = b0 + pi*rest, b0 = p*(b0/p)
        int64_t q = body[0] / C.p;
        Poly nb(C.E, 0);
        for (int i = 0; i + 1 < C.E; ++i) nb[i] = body[i + 1];
        if (q)
            for (int i = 0; i < C.E; ++i) nb[i] = (nb[i] + zp::mulmod(q, C.p_over_pi[i], C.pM)) % C.pM;
        body = std::move(nb);
        ++k;
    }
    PadicElem r;
    r.ctx_ = ctx;
    r.zero_ = false;
    r.sh_ = sh + k;
    r.prec_ = prec - k;
    r.body_ = std::move(body);
    return r;
}

PadicElem PadicElem::zero(const Ctx& ctx, int absprec) {
    PadicElem r;
    r.ctx_ = ctx;
    r.zero_ = true;
    r.sh_ = absprec;
    r.prec_ = 0;
    return r;
}

PadicElem PadicElem::from_int(const Ctx& ctx, long long z) {
    if (z == 0) return zero(ctx);
    const PadicContext& C = *ctx;
    int v = 0;
    while (z % C.p == 0) {
        z /= C.p;
        ++v;
    }
    Poly b(C.E, 0);
    b[0] = zp::mod(z % C.pM, C.pM);
    if (v) b = body_mul(C, b, body_pow(C, C.theta, v));
    return make(ctx, C.E * v, std::move(b), C.E * C.M);
}

PadicElem PadicElem::from_residue(const Ctx& ctx, int64_t z) {
    const PadicContext& C = *ctx;
    z = zp::mod(z, C.pM);
    if (z == 0) return zero(ctx, C.E * C.M);
    int v = zp::val(z, C.p);
    Poly b(C.E, 0);
    b[0] = z / C.ppow[v];
    if (v) b = body_mul(C, b, body_pow(C, C.theta, v));
    return make(ctx, C.E * v, std::move(b), C.E * (C.M - v));
}

PadicElem PadicElem::pi(const Ctx& ctx) {
    Poly b(ctx->E, 0);
    b[0] = 1;
    return make(ctx, 1, std::move(b), ctx->E * ctx->M);
}

PadicElem PadicElem::varpi(const Ctx& ctx) {
    Poly b(ctx->E, 0);
    b[0] = 1;
    return make(ctx, ctx->quad ? 2 : 1, std::move(b), ctx->E * ctx->M);
}

PadicElem PadicElem::teichmuller(const Ctx& ctx, int64_t xi) {
    if (zp::mod(xi, ctx->p) == 0) return zero(ctx);
    Poly b(ctx->E, 0);
    b[0] = zp::teich(xi, ctx->p, ctx->M);
    return make(ctx, 0, std::move(b), ctx->E * ctx->M);
}

PadicElem PadicElem::zeta(const Ctx& ctx) { return from_int(ctx, 1) + varpi(ctx); }

int PadicElem::absprec() const {
    if (zero_) return sh_;
    long long a = static_cast<long long>(sh_) + prec_;
    return a > INT_MAX ? INT_MAX : static_cast<int>(a);
}

void PadicElem::check_same(const PadicElem& o) const {
    if (!ctx_ || !o.ctx_) throw DomainError("uninitialized p-adic element");
    if (ctx_ != o.ctx_) {
        const auto& a = *ctx_;
        const auto& b = *o.ctx_;
        if (a.p != b.p || a.n != b.n || a.M != b.M || a.quad != b.quad)
            throw DomainError("p-adic elements from different fields");
    }
}

PadicElem PadicElem::operator-() const {
    if (zero_) return *this;
    PadicElem r = *this;
    for (auto& v : r.body_) v = v ? ctx_->pM - v : 0;
    return r;
}

PadicElem PadicElem::operator+(const PadicElem& o) const {
    check_same(o);
    const PadicContext& C = *ctx_;
    if (zero_ && o.zero_) return zero(ctx_, std::min(sh_, o.sh_));
    if (zero_) {
        if (o.sh_ >= sh_) return zero(ctx_, sh_);
        PadicElem r = o;
        r.prec_ = std::min(o.prec_, sh_ - o.sh_);
        return r;
    }
    if (o.zero_) return o + *this;
    const PadicElem& lo = sh_ <= o.sh_ ? *this : o;
    const PadicElem& hi = sh_ <= o.sh_ ? o : *this;
    const int abs = std::min(absprec(), o.absprec());
    const int rel = abs - lo.sh_;
    const int d = hi.sh_ - lo.sh_;
    if (d >= rel) {
        PadicElem r = lo;
        r.prec_ = rel;
        return r;
    }
    Poly hb = hi.body_;
    for (int i = 0; i < d % C.E; ++i) hb = body_mul_pi(C, hb);
    int q = d / C.E;
    if (q) {
        hb = body_scale(C, hb, C.ppow[std::min(q, C.M)] % C.pM);
        hb = body_mul(C, hb, body_pow(C, C.theta_inv, q));
    }
    Poly s(C.E);
    for (int i = 0; i < C.E; ++i) s[i] = (lo.body_[i] + hb[i]) % C.pM;
    return make(ctx_, lo.sh_, std::move(s), rel);
}

PadicElem PadicElem::operator-(const PadicElem& o) const { return *this + (-o); }

static int sat_add(long long a, long long b) {
    long long s = a + b;
    return s >= INT_MAX ? INT_MAX : static_cast<int>(s);
}

PadicElem PadicElem::operator*(const PadicElem& o) const {
    check_same(o);
    if (zero_ || o.zero_) {
        if (zero_ && o.zero_) return zero(ctx_, sat_add(sh_, o.sh_));
        const PadicElem& z = zero_ ? *this : o;
        const PadicElem& x = zero_ ? o : *this;
        if (z.sh_ == INT_MAX) return zero(ctx_);
        return zero(ctx_, sat_add(z.sh_, x.sh_));
    }
    PadicElem r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.sh_ = sh_ + o.sh_;
    r.prec_ = std::min(prec_, o.prec_);
    r.body_ = body_mul(*ctx_, body_, o.body_);
    return r;
}

PadicElem PadicElem::mul_int(long long z) const { return *this * from_int(ctx_, z); }

PadicElem PadicElem::inv() const {
    if (zero_) throw PrecisionError("insufficient precision: division by an element indistinguishable from 0");
    PadicElem r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.sh_ = -sh_;
    r.prec_ = prec_;
    r.body_ = body_inv(*ctx_, body_);
    return r;
}

PadicElem PadicElem::operator/(const PadicElem& o) const { return *this * o.inv(); }

PadicElem PadicElem::pow(long long k) const {
    if (k < 0) return inv().pow(-k);
    if (k == 0) return from_int(ctx_, 1);
    if (zero_) return zero(ctx_, sh_ == INT_MAX ? INT_MAX : sat_add(static_cast<long long>(sh_) * (k - 1), sh_));
    PadicElem r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    long long s = static_cast<long long>(sh_) * k;
    if (s > INT_MAX / 2 || s < -INT_MAX / 2) throw DomainError("exponent too large");
    r.sh_ = static_cast<int>(s);
    r.prec_ = prec_;
    r.body_ = body_pow(*ctx_, body_, k);
    return r;
}

PadicElem PadicElem::sqrt() const {
    const PadicContext& C = *ctx_;
    if (is_exact_zero()) return *this;
    if (zero_) return zero(ctx_, sh_ / 2);
    if (sh_ % 2 != 0) throw DomainError("no square root in L: odd uniformizer valuation");
    int64_t b0 = body_[0] % C.p;
    int64_t root = -1;
    for (int64_t x = 1; x < C.p; ++x)
        if (x * x % C.p == b0) {
            root = x;
            break;
        }
    if (root < 0) throw DomainError("no square root in L: unit residue is a non-square mod p");
    // inverse square root y of the body: y <- y (3 - b y^2) / 2
    Poly y(C.E, 0);
    y[0] = zp::invmod(root, C.pM);
    const int64_t half = zp::invmod(2, C.pM);
    int reach = 1;
    while (reach < C.E * C.M) {
        Poly t = body_mul(C, body_, body_mul(C, y, y));
        for (auto& v : t) v = zp::mod(-v, C.pM);
        t[0] = zp::mod(t[0] + 3, C.pM);
        y = body_scale(C, body_mul(C, y, t), half);
        reach *= 2;
    }
    Poly s = body_mul(C, body_, y);
    PadicElem r;
    r.ctx_ = ctx_;
    r.zero_ = false;
    r.sh_ = sh_ / 2;
    r.prec_ = prec_;
    r.body_ = std::move(s);
    return r;
}

long long PadicElem::v_pi() const {
    if (is_exact_zero()) throw DomainError("valuation of exact zero is infinite");
    if (zero_) throw PrecisionError("insufficient precision: element is zero to precision");
    return sh_;
}

Rational PadicElem::v_p() const { return Rational(v_pi(), ctx_->E); }

Rational PadicElem::w() const { return ctx_->w_unit() * Rational(v_pi()); }

Valuations PadicElem::valuations() const {
    Valuations v;
    if (is_exact_zero()) return v;
    v.v_pi = v_pi();
    v.v_p = v_p();
    v.w = w();
    return v;
}

bool PadicElem::w_at_least(const Rational& b) const {
    if (is_exact_zero()) return true;
    if (!zero_) return w() >= b;
    Rational known = ctx_->w_unit() * Rational(sh_);
    if (known >= b) return true;
    throw PrecisionError("insufficient precision to certify w >= " + to_string(b));
}

bool w_diff_at_least(const PadicElem& x, const PadicElem& y, const Rational& b) {
    return (x - y).w_at_least(b);
}

int64_t PadicElem::reduce() const {
    if (zero_) {
        if (sh_ >= 1) return 0;
        throw PrecisionError("insufficient precision to reduce modulo the maximal ideal");
    }
    if (sh_ < 0) throw DomainError("negative valuation: no residue");
    if (sh_ > 0) return 0;
    return body_[0] % ctx_->p;
}

std::string PadicElem::serialize() const {
    std::ostringstream os;
    if (zero_) {
        os << "{\"zero\":true,\"absprec\":" << (sh_ == INT_MAX ? std::string("\"inf\"") : std::to_string(sh_)) << "}";
        return os.str();
    }
    int last = ctx_->E - 1;
    while (last > 0 && body_[last] == 0) --last;
    os << "{\"shift\":" << sh_ << ",\"prec\":" << prec_ << ",\"coeffs\":[";
    for (int i = 0; i <= last; ++i) {
        if (i) os << ",";
        os << "\"";
        int64_t v = body_[i];
        for (int d = 0; d < ctx_->M; ++d) {
            os << v % ctx_->p;
            v /= ctx_->p;
        }
        os << "\"";
    }
    os << "]}";
    return os.str();
}

}  // namespace crystab
