#pragma once
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "crystab/characters.hpp"
#include "crystab/fpmod.hpp"
#include "crystab/qp.hpp"

namespace crystab {

// Left coset g H of H = KZ (pt = -1) or H = I(n)Z.  The tree part is the
// vertex (p^m, b p^{-j}; 0, 1) KZ where b = sum [B_i] p^i over the base-p
// digits B_i of 0 <= B < p^{m+j}; pt is a point of P^1(Z/p^n) naming the
// coset of K / I(n).
struct CosetKey {
    int m = 0;
    int j = 0;
    int64_t B = 0;
    int pt = -1;

    auto tie() const { return std::tie(m, j, B, pt); }
    bool operator<(const CosetKey& o) const { return tie() < o.tie(); }
    bool operator==(const CosetKey& o) const { return tie() == o.tie(); }
    std::string str() const;
};

// Which subgroup a coset is taken for: n = 0 means KZ, n >= 1 means I(n)Z.
struct Subgroup {
    int p;
    int n;
    bool is_kz() const { return n == 0; }
};

Mat2 section(const CosetKey& key, const Subgroup& H, int N);
// g = section(key) * h with h in H
std::pair<CosetKey, Mat2> canonicalize(const Mat2& g, const Subgroup& H);
// h in H written as p^z i with i in K
int central_exponent(const Mat2& h);

// Sym^r action over L: (g v)(x, y) = v(g1 x + g3 y, g2 x + g4 y).
std::vector<PadicElem> sym_act_padic(const Mat2& g, const std::vector<PadicElem>& v, const Ctx& ctx);

// Elements of ind_{I(n)Z}^G of Sym^r (x) |det|^{r/2} (x) tau with coefficients in L.
class PCind {
public:
    using Vecp = std::vector<PadicElem>;
    PCind(const RamifiedCharacter& chi, int r, int N);

    const std::map<CosetKey, Vecp>& terms() const { return terms_; }
    int r() const { return r_; }
    int N() const { return N_; }
    Subgroup subgroup() const { return {chi_->ctx()->p, chi_->ctx()->n}; }

    // adds [g][v]
    void add(const Mat2& g, const Vecp& v);
    PCind& operator+=(const PCind& o);
    PCind scaled(const PadicElem& s) const;
    PCind act(const Mat2& g) const;
    // the I(n)Z action on the coefficient module
    Vecp act_vec(const Mat2& h, const Vecp& v) const;
    // sum_mu [g (p [mu]; 0 1)][(1 -[mu]; 0 p) v]
    PCind hecke() const;
    // certified w >= b on every coefficient
    bool w_at_least(const Rational& b) const;
    bool is_zero() const;
    std::string str() const;

private:
    const RamifiedCharacter* chi_;
    int r_, N_;
    std::map<CosetKey, Vecp> terms_;
};

// Elements of ind_H^G V over F_p, where h = p^z i acts on the degree-r
// polynomials by i11^kappa det(i)^twist Sym(i mod p).
class FCind {
public:
    FCind(Subgroup H, int r, int kappa, int twist, int N);

    const std::map<CosetKey, Vec>& terms() const { return terms_; }
    Subgroup subgroup() const { return H_; }
    int r() const { return r_; }

    void add(const Mat2& g, const Vec& v);
    // adds v at an already canonical key
    void add_key(const CosetKey& key, const Vec& v);
    FCind& operator+=(const FCind& o);
    FCind operator-(const FCind& o) const;
    FCind scaled(int64_t s) const;
    FCind act(const Mat2& g) const;
    Vec act_vec(const Mat2& h, const Vec& v) const;
    // Hecke operator T on ind_{KZ}^G sigma_r:
    // [g][v] -> sum_mu [g (p [mu]; 0 1)][v(X, -[mu] X + p Y)] + [g (1 0; 0 p)][v(p X, Y)]
    FCind hecke_T() const;
    bool operator==(const FCind& o) const { return terms_ == o.terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::string str() const;

private:
    Subgroup H_;
    int r_, kappa_, twist_, N_;
    std::map<CosetKey, Vec> terms_;
};

// Reduction of an integral element modulo the maximal ideal.
FCind reduce(const PCind& f, int kappa);

// Tree distance between the vertices g1 KZ and g2 KZ.
int tree_distance(const Mat2& g1, const Mat2& g2);

// Finite-level coset data in GL2(Z/p^n).
struct DoubleCosetReport {
    int classes = 0;
    bool reps_distinct = false;
    std::vector<long long> sizes;  // size of the class of x_j, j = 1..n+1
    long long total = 0;
    long long group_order = 0;
};
// Orbits of B(Z/p^n) x B(Z/p^n) acting by (b1, b2) g = b1 g b2^{-1}.
DoubleCosetReport double_cosets(int p, int n);

struct CosetPartitionReport {
    int classes = 0;
    bool equal_sizes = false;
    bool section_consistent = false;
    bool invariant = false;
};
// Keys of K / I(n) on GL2(Z/p^n).
CosetPartitionReport coset_partition(int p, int n);

}  // namespace crystab
