#pragma once
#include <vector>

#include "crystab/padic.hpp"
#include "crystab/qp.hpp"

namespace crystab {

// epsilon_p of conductor p^n: [u] -> [u]^kappa, 1+p -> zeta_{p^{n-1}}^c, p -> 1.
class RamifiedCharacter {
public:
    RamifiedCharacter(Ctx ctx, int kappa, long long c);

    const Ctx& ctx() const { return ctx_; }
    int kappa() const { return kappa_; }
    int64_t c() const { return c_; }

    // t mod p^{n-1} with x / [x mod p] = (1+p)^t mod p^n
    int64_t dlog(int64_t x) const;
    // same value through the p-adic logarithm
    int64_t dlog_series(int64_t x) const;

    // x is a p-adic unit given as an integer (only x mod p^n matters)
    PadicElem eval(int64_t x) const;
    // unit part of x; epsilon(p) = 1
    PadicElem eval(const Qp& x) const;
    PadicElem eval_inv(int64_t x) const;

    PadicElem zeta_pn1() const { return zeta_pn1_; }
    // epsilon(1+p) = zeta_{p^{n-1}}^c
    PadicElem zeta_prime() const;

private:
    Ctx ctx_;
    int kappa_;
    int64_t c_;
    int64_t pn_, pn1_;
    std::vector<int64_t> log_table_;  // index x mod p^n in 1+pZ -> t
    std::vector<PadicElem> zeta_pows_;
    std::vector<PadicElem> tame_;  // [u]^kappa, u = 1..p-1
    PadicElem zeta_pn1_;
    PadicElem zeta_pow(int64_t j) const;
};

// Bottom-row test for membership of g in B I(n).
bool in_BIn(const Mat2& g, int n);

// delta(g) = |det b|^{-1/2} rho(b) tau(u) for g = b u in B I(n), and 0 otherwise.
PadicElem delta(const Mat2& g, int k, const PadicElem& a, const RamifiedCharacter& chi);

// x_1 = 1, x_j = (1 0; p^{n+1-j} 1): representatives of I(n)\K/B.
Mat2 coset_rep_x(int j, int p, int n, int N);

}  // namespace crystab
