#include "crystab/characters.hpp"

#include <gmpxx.h>

namespace crystab {

RamifiedCharacter::RamifiedCharacter(Ctx ctx, int kappa, long long c) : ctx_(std::move(ctx)) {
    const int p = ctx_->p, n = ctx_->n;
    pn_ = zp::ipow(p, n);
    pn1_ = zp::ipow(p, n - 1);
    if (ctx_->M < n) throw DomainError("precision must be at least n");
    if (zp::mod(c, p) == 0) throw DomainError("conductor is not p^n: p divides c");
    kappa_ = static_cast<int>(zp::mod(kappa, p - 1));
    c_ = zp::mod(c, pn1_);

    log_table_.assign(pn_, -1);
    int64_t x = 1;
    for (int64_t t = 0; t < pn1_; ++t) {
        log_table_[x] = t;
        x = zp::mulmod(x, 1 + p, pn_);
    }
    // zeta_{p^{n-1}} = zeta_{p^n}^p
    zeta_pn1_ = PadicElem::zeta(ctx_).pow(p);
    if (pn1_ * ctx_->E <= 200000) {
        zeta_pows_.reserve(pn1_);
        PadicElem z = PadicElem::from_int(ctx_, 1);
        for (int64_t j = 0; j < pn1_; ++j) {
            zeta_pows_.push_back(z);
            z = z * zeta_pn1_;
        }
    }
    tame_.reserve(p - 1);
    for (int u = 1; u < p; ++u) tame_.push_back(PadicElem::teichmuller(ctx_, u).pow(kappa_));
}

PadicElem RamifiedCharacter::zeta_pow(int64_t j) const {
    j = zp::mod(j, pn1_);
    if (!zeta_pows_.empty()) return zeta_pows_[j];
    return zeta_pn1_.pow(j);
}

int64_t RamifiedCharacter::dlog(int64_t x) const {
    const int p = ctx_->p;
    x = zp::mod(x, pn_);
    if (x % p == 0) throw DomainError("discrete log of a non-unit");
    int64_t tl = zp::teich(x % p, p, ctx_->n);
    int64_t y = zp::mulmod(x, zp::invmod(tl, pn_), pn_);
    return log_table_[y];
}

namespace {
mpq_class log_series(const mpz_class& z, int terms) {
    mpq_class s = 0;
    mpz_class zk = 1;
    for (int k = 1; k <= terms; ++k) {
        zk *= z;
        mpq_class term(zk, k);
        term.canonicalize();
        if (k % 2) s += term;
        else s -= term;
    }
    return s;
}
}  // namespace

int64_t RamifiedCharacter::dlog_series(int64_t x) const {
    const int p = ctx_->p, n = ctx_->n;
    x = zp::mod(x, pn_);
    if (x % p == 0) throw DomainError("discrete log of a non-unit");
    const int N = n + 2;
    const int64_t pN = zp::ipow(p, N);
    int64_t tl = zp::teich(x % p, p, N);
    int64_t y = zp::mulmod(x, zp::invmod(tl, pN), pN);
    const int terms = 2 * N + 8;
    mpq_class l1 = log_series(mpz_class(static_cast<long>(y - 1)), terms);
    mpq_class l2 = log_series(mpz_class(p), terms);
    mpq_class t = l1 / l2;
    mpz_class num = t.get_num(), den = t.get_den();
    mpz_class m = static_cast<long>(pn1_);
    if (mpz_class(den % p) == 0) throw PrecisionError("discrete log series lost precision");
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
    mpz_class r = (num * inv) % m;
    if (r < 0) r += m;
    return r.get_si();
}

PadicElem RamifiedCharacter::eval(int64_t x) const {
    const int p = ctx_->p;
    int64_t xm = zp::mod(x, pn_);
    if (xm % p == 0) throw DomainError("epsilon_p evaluated at a non-unit");
    return tame_[xm % p - 1] * zeta_pow(zp::mulmod(c_, dlog(xm), pn1_));
}

PadicElem RamifiedCharacter::eval(const Qp& x) const {
    Qp u = x.unit_part();
    return eval(u.residue(ctx_->n));
}

PadicElem RamifiedCharacter::eval_inv(int64_t x) const {
    const int p = ctx_->p;
    int64_t xm = zp::mod(x, pn_);
    if (xm % p == 0) throw DomainError("epsilon_p evaluated at a non-unit");
    return eval(zp::invmod(xm, pn_));
}

PadicElem RamifiedCharacter::zeta_prime() const { return zeta_pow(c_); }

bool in_BIn(const Mat2& g, int n) {
    const Qp& c = g.c;
    const Qp& d = g.d;
    if (c.is_exact_zero()) return true;
    if (d.is_zero()) {
        if (d.is_exact_zero()) return false;
        if (c.is_zero()) throw PrecisionError("insufficient precision for the B I(n) membership test");
        if (d.absprec() <= c.val() + n - 1) throw PrecisionError("insufficient precision for the B I(n) membership test");
        return false;
    }
    if (c.is_zero()) {
        if (c.absprec() - d.val() >= n) return true;
        throw PrecisionError("insufficient precision for the B I(n) membership test");
    }
    return c.val() - d.val() >= n;
}

PadicElem delta(const Mat2& g, int k, const PadicElem& a, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    if (!in_BIn(g, chi.ctx()->n)) return PadicElem::zero(ctx);
    // g = (x b; 0 z)(1 0; c/d 1), x = det/d, z = d
    Qp z = g.d;
    Qp x = g.det() / z;
    const int p = ctx->p;
    PadicElem P = PadicElem::from_int(ctx, p);
    PadicElem apk = a * P.pow(1 - k);
    return P.pow(z.val()) * chi.eval(x) * apk.pow(x.val()) * a.inv().pow(z.val());
}

Mat2 coset_rep_x(int j, int p, int n, int N) {
    if (j == 1) return Mat2::identity(p, N);
    return Mat2::from_ints(p, N, 1, 0, zp::ipow(p, n + 1 - j), 1);
}

}  // namespace crystab
