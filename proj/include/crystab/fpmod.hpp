#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "crystab/qp.hpp"

namespace crystab {

using Vec = std::vector<int64_t>;

// Row-reduced subspace of F_p^dim.
class FpSpace {
public:
    FpSpace(int p, int dim) : p_(p), dim_(dim) {}
    bool add(Vec v);
    bool contains(const Vec& v) const;
    Vec reduce(Vec v) const;
    int rank() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    const std::vector<Vec>& rows() const { return rows_; }

private:
    int p_, dim_;
    std::vector<Vec> rows_;  // each row has a unit pivot, cleared in other rows
    std::vector<int> piv_;
};

// x with x A = b over F_p (A given by rows), if one exists.
std::optional<Vec> left_solve(const std::vector<Vec>& A, const Vec& b, int p);
// Basis of {x : x A = 0}.
std::vector<Vec> left_kernel(const std::vector<Vec>& A, int p);
int rank_mod(const std::vector<Vec>& A, int p);

// Homogeneous polynomials of degree r, coefficient of x^{r-j} y^j at index j.
// (a b; c d) sends v(x, y) to v(a x + c y, b x + d y).
std::vector<Vec> sym_matrix(int64_t a, int64_t b, int64_t c, int64_t d, int r, int64_t mod);
Vec sym_act(const IMat& g, const Vec& v, int64_t mod);
Vec sym_apply(const std::vector<Vec>& mat, const Vec& v, int64_t mod);

// Degree-h homogeneous functions on F_p^2 minus 0, stored by their values at
// (-xi, 1) for xi = 0..p-1 and at (-1, 0) in slot p.  The twist m multiplies the
// action by det^m: (g f)(x, y) = det(g)^m f((x, y) g).
struct IModule {
    int p;
    long long h;
    long long m;
    Vec val;

    int64_t eval(int64_t u, int64_t v) const;
    IModule act(const IMat& g) const;
    static IModule delta(int p, long long h, long long m, int slot);
    // restriction of a polynomial of degree d (with d = h mod p-1)
    static IModule from_poly(int p, long long h, long long m, const Vec& poly);
};

inline long long pos_mod(long long a, long long m) { return ((a % m) + m) % m; }
// <h>_+ in 1..p-1 and <h>_- in 0..p-2
inline long long plus_rep(long long h, int p) { return pos_mod(h - 1, p - 1) + 1; }
inline long long minus_rep(long long h, int p) { return pos_mod(h, p - 1); }

// f -> sum_{(u,v)} f(u, v) (v X - u Y)^{<-h>_-}
Vec quotient_map(const IModule& f);

// Points of P^1(Z/p^n), i.e. K / I(n): pt = c < p^n for (1 0; c 1) and
// pt = p^n + t (t < p^{n-1}) for (-tp -1; 1 0).
int p1_point(int64_t a, int64_t c, int p, int n);
IMat p1_section(int pt, int p, int n);

// F_p[KZ] (x) chi_t(m) over I(n)Z, basis indexed by P^1(Z/p^n):
// pt = c < p^n for (1 0; c 1), pt = p^n + t for (-tp -1; 1 0).
class InducedModule {
public:
    InducedModule(int p, int n, long long t, long long m);

    int p() const { return p_; }
    int n() const { return n_; }
    long long t() const { return t_; }
    long long m() const { return m_; }
    int dim() const { return static_cast<int>(pn_ + pn1_); }
    int64_t modulus() const { return pn_; }

    IMat section(int pt) const;
    int point_of_column(int64_t a, int64_t c) const;
    // g sigma(pt) = sigma(pt') h; returns pt' and chi(h)
    std::pair<int, int64_t> act_basis(const IMat& g, int pt) const;
    Vec act(const IMat& g, const Vec& v) const;
    int64_t chi(const IMat& h) const;
    std::vector<IMat> generators() const;

    // e_{f, i_1, ..., i_{n-1}}
    Vec e_vector(const Vec& fvals, const std::vector<int>& digits) const;
    std::vector<int> digits(int i) const;
    // M_0, ..., M_{p^{n-1}}
    std::vector<FpSpace> filtration() const;
    // f with v - e_{f, digits(i)} in M_i, for v in M_{i+1}
    std::optional<Vec> project(const std::vector<FpSpace>& filt, const Vec& v, int i) const;

private:
    int p_, n_;
    long long t_, m_;
    int64_t pn_, pn1_;
    std::vector<int64_t> teich_;
};

// The I(n)Z-module Sigma_r over F_p: g acts by g_11^kappa times the Sym action.
Vec sigma_act(const IMat& g, const Vec& v, int kappa, int p);

struct WQuotient {
    FpSpace U;
    std::vector<Vec> eta_s;  // eta_1 .. eta_{p-1} mod p
};

// U = span{x^r, (x y^p - x^p y) x^{r-p-1-i} y^i : 0 <= i <= i_max} and the images
// of eta_s.  The default i_max = r-p includes y^{r-p}(y^p - x^{p-1} y), which is
// needed for codimension p-1; i_max = r-p-1 leaves y^r outside U.
WQuotient build_W_quotient(int p, int r, int i_max = -1);
// eta_alpha mod p, alpha = 0..p-1, computed over F_p
std::vector<Vec> eta_mod_p(int p, int r);

}  // namespace crystab
