#include "crystab/fpmod.hpp"

#include <algorithm>

namespace crystab {

bool FpSpace::add(Vec v) {
    v = reduce(std::move(v));
    int piv = -1;
    for (int j = 0; j < dim_; ++j)
        if (v[j]) {
            piv = j;
            break;
        }
    if (piv < 0) return false;
    int64_t inv = zp::invmod(v[piv], p_);
    for (auto& x : v) x = x * inv % p_;
    for (auto& row : rows_) {
        int64_t f = row[piv];
        if (!f) continue;
        for (int j = 0; j < dim_; ++j) row[j] = zp::mod(row[j] - f * v[j], p_);
    }
    rows_.push_back(std::move(v));
    piv_.push_back(piv);
    return true;
}

Vec FpSpace::reduce(Vec v) const {
    for (auto& x : v) x = zp::mod(x, p_);
    for (size_t r = 0; r < rows_.size(); ++r) {
        int64_t f = v[piv_[r]];
        if (!f) continue;
        const Vec& row = rows_[r];
        for (int j = 0; j < dim_; ++j)
            if (row[j]) v[j] = zp::mod(v[j] - f * row[j], p_);
    }
    return v;
}

bool FpSpace::contains(const Vec& v) const {
    Vec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](int64_t x) { return x == 0; });
}

namespace {
// Gaussian elimination on the transpose system A^T x = b.
struct Elim {
    std::vector<Vec> rows;
    std::vector<int> pivcol;
};
}  // namespace

std::optional<Vec> left_solve(const std::vector<Vec>& A, const Vec& b, int p) {
    const int nr = static_cast<int>(A.size());
    const int nc = static_cast<int>(b.size());
    // augmented system: columns = unknowns x_0..x_{nr-1}, rows = equations j
    std::vector<Vec> M(nc, Vec(nr + 1, 0));
    for (int j = 0; j < nc; ++j) {
        for (int i = 0; i < nr; ++i) M[j][i] = zp::mod(A[i][j], p);
        M[j][nr] = zp::mod(b[j], p);
    }
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < nr && row < nc; ++col) {
        int sel = -1;
        for (int r = row; r < nc; ++r)
            if (M[r][col]) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[row], M[sel]);
        int64_t inv = zp::invmod(M[row][col], p);
        for (auto& x : M[row]) x = x * inv % p;
        for (int r = 0; r < nc; ++r) {
            if (r == row || !M[r][col]) continue;
            int64_t f = M[r][col];
            for (int c = 0; c <= nr; ++c) M[r][c] = zp::mod(M[r][c] - f * M[row][c], p);
        }
        pivcol.push_back(col);
        ++row;
    }
    for (int r = row; r < nc; ++r)
        if (M[r][nr]) return std::nullopt;
    Vec x(nr, 0);
    for (int r = 0; r < row; ++r) x[pivcol[r]] = M[r][nr];
    return x;
}

std::vector<Vec> left_kernel(const std::vector<Vec>& A, int p) {
    const int nr = static_cast<int>(A.size());
    if (nr == 0) return {};
    const int nc = static_cast<int>(A[0].size());
    std::vector<Vec> M(nc, Vec(nr, 0));
    for (int j = 0; j < nc; ++j)
        for (int i = 0; i < nr; ++i) M[j][i] = zp::mod(A[i][j], p);
    std::vector<int> pivcol;
    int row = 0;
    for (int col = 0; col < nr && row < nc; ++col) {
        int sel = -1;
        for (int r = row; r < nc; ++r)
            if (M[r][col]) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(M[row], M[sel]);
        int64_t inv = zp::invmod(M[row][col], p);
        for (auto& x : M[row]) x = x * inv % p;
        for (int r = 0; r < nc; ++r) {
            if (r == row || !M[r][col]) continue;
            int64_t f = M[r][col];
            for (int c = 0; c < nr; ++c) M[r][c] = zp::mod(M[r][c] - f * M[row][c], p);
        }
        pivcol.push_back(col);
        ++row;
    }
    std::vector<Vec> ker;
    std::vector<bool> is_piv(nr, false);
    for (int c : pivcol) is_piv[c] = true;
    for (int free = 0; free < nr; ++free) {
        if (is_piv[free]) continue;
        Vec x(nr, 0);
        x[free] = 1;
        for (int r = 0; r < row; ++r) x[pivcol[r]] = zp::mod(-M[r][free], p);
        ker.push_back(x);
    }
    return ker;
}

int rank_mod(const std::vector<Vec>& A, int p) {
    if (A.empty()) return 0;
    FpSpace S(p, static_cast<int>(A[0].size()));
    for (const auto& r : A) S.add(r);
    return S.rank();
}

namespace {
Vec poly_mul(const Vec& a, const Vec& b, int64_t mod) {
    Vec c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + zp::mulmod(a[i], b[j], mod)) % mod;
    }
    return c;
}
}  // namespace

std::vector<Vec> sym_matrix(int64_t a, int64_t b, int64_t c, int64_t d, int r, int64_t mod) {
    // x -> a x + c y, y -> b x + d y; coefficient index = power of y
    Vec L1{zp::mod(a, mod), zp::mod(c, mod)}, L2{zp::mod(b, mod), zp::mod(d, mod)};
    std::vector<Vec> P1(r + 1), P2(r + 1);
    P1[0] = P2[0] = Vec{1 % mod};
    for (int k = 1; k <= r; ++k) {
        P1[k] = poly_mul(P1[k - 1], L1, mod);
        P2[k] = poly_mul(P2[k - 1], L2, mod);
    }
    std::vector<Vec> M(r + 1);
    for (int j = 0; j <= r; ++j) M[j] = poly_mul(P1[r - j], P2[j], mod);
    return M;
}

Vec sym_apply(const std::vector<Vec>& mat, const Vec& v, int64_t mod) {
    Vec out(v.size(), 0);
    for (size_t j = 0; j < v.size(); ++j) {
        if (!v[j]) continue;
        for (size_t i = 0; i < v.size(); ++i) out[i] = (out[i] + zp::mulmod(v[j], mat[j][i], mod)) % mod;
    }
    return out;
}

Vec sym_act(const IMat& g, const Vec& v, int64_t mod) {
    int r = static_cast<int>(v.size()) - 1;
    return sym_apply(sym_matrix(g.a, g.b, g.c, g.d, r, mod), v, mod);
}

int64_t IModule::eval(int64_t u, int64_t v) const {
    u = zp::mod(u, p);
    v = zp::mod(v, p);
    if (v) {
        int64_t xi = zp::mod(-u * zp::invmod(v, p), p);
        return zp::fp_pow(v, h, p) * val[xi] % p;
    }
    if (!u) return 0;
    return zp::fp_pow(zp::mod(-u, p), h, p) * val[p] % p;
}

IModule IModule::act(const IMat& g) const {
    IModule r{p, h, m, Vec(p + 1, 0)};
    int64_t dm = zp::fp_pow(zp::mod(g.a * g.d - g.b * g.c, p), m, p);
    auto at = [&](int64_t x, int64_t y) { return eval(x * g.a + y * g.c, x * g.b + y * g.d); };
    for (int xi = 0; xi < p; ++xi) r.val[xi] = dm * at(-xi, 1) % p;
    r.val[p] = dm * at(-1, 0) % p;
    return r;
}

IModule IModule::delta(int p, long long h, long long m, int slot) {
    IModule f{p, h, m, Vec(p + 1, 0)};
    f.val[slot] = 1;
    return f;
}

IModule IModule::from_poly(int p, long long h, long long m, const Vec& poly) {
    const int d = static_cast<int>(poly.size()) - 1;
    auto ev = [&](int64_t x, int64_t y) {
        int64_t s = 0;
        for (int j = 0; j <= d; ++j)
            s = (s + poly[j] * zp::fp_pow(x, d - j, p) % p * zp::fp_pow(y, j, p)) % p;
        return s;
    };
    IModule f{p, h, m, Vec(p + 1, 0)};
    for (int xi = 0; xi < p; ++xi) f.val[xi] = ev(zp::mod(-xi, p), 1);
    f.val[p] = ev(p - 1, 0);
    return f;
}

Vec quotient_map(const IModule& f) {
    const int p = f.p;
    const int m = static_cast<int>(minus_rep(-f.h, p));
    Vec out(m + 1, 0);
    // (v X - u Y)^m = sum_j binom(m, j) v^{m-j} (-u)^j X^{m-j} Y^j
    for (int64_t u = 0; u < p; ++u)
        for (int64_t v = 0; v < p; ++v) {
            if (!u && !v) continue;
            int64_t fv = f.eval(u, v);
            if (!fv) continue;
            for (int j = 0; j <= m; ++j) {
                int64_t term = zp::binom_mod(m, j, p) * zp::fp_pow(v, m - j, p) % p *
                               zp::fp_pow(zp::mod(-u, p), j, p) % p;
                out[j] = (out[j] + fv * term) % p;
            }
        }
    return out;
}

InducedModule::InducedModule(int p, int n, long long t, long long m)
    : p_(p), n_(n), t_(pos_mod(t, p - 1)), m_(pos_mod(m, p - 1)) {
    pn_ = zp::ipow(p, n);
    pn1_ = zp::ipow(p, n - 1);
    teich_.resize(p);
    for (int x = 0; x < p; ++x) teich_[x] = zp::teich(x, p, n);
}

int p1_point(int64_t a, int64_t c, int p, int n) {
    const int64_t pn = zp::ipow(p, n), pn1 = pn / p;
    a = zp::mod(a, pn);
    c = zp::mod(c, pn);
    if (a % p) return static_cast<int>(zp::mulmod(c, zp::invmod(a, pn), pn));
    if (c % p == 0) throw DomainError("column is not primitive");
    int64_t r = zp::mulmod(zp::mod(-a, pn), zp::invmod(c, pn), pn);
    return static_cast<int>(pn + (r / p) % pn1);
}

IMat p1_section(int pt, int p, int n) {
    const int64_t pn = zp::ipow(p, n);
    if (pt < pn) return {1, 0, pt, 1};
    int64_t t = pt - pn;
    return {zp::mod(-t * p, pn), pn - 1, 1, 0};
}

IMat InducedModule::section(int pt) const { return p1_section(pt, p_, n_); }

int InducedModule::point_of_column(int64_t a, int64_t c) const { return p1_point(a, c, p_, n_); }

int64_t InducedModule::chi(const IMat& h) const {
    int64_t d22 = h.d % p_;
    int64_t det = idet(h, pn_) % p_;
    return zp::fp_pow(d22, t_, p_) * zp::fp_pow(det, m_, p_) % p_;
}

std::pair<int, int64_t> InducedModule::act_basis(const IMat& g, int pt) const {
    IMat M = imul(g, section(pt), pn_);
    int q = point_of_column(M.a, M.c);
    IMat h = imul(iinv(section(q), pn_), M, pn_);
    if (h.c % pn_ != 0) throw DomainError("internal: coset section mismatch");
    return {q, chi(h)};
}

Vec InducedModule::act(const IMat& g, const Vec& v) const {
    Vec out(dim(), 0);
    for (int pt = 0; pt < dim(); ++pt) {
        if (!v[pt]) continue;
        auto [q, s] = act_basis(g, pt);
        out[q] = (out[q] + v[pt] * s) % p_;
    }
    return out;
}

std::vector<IMat> InducedModule::generators() const {
    int64_t g = 2;
    // primitive root mod p^n: primitive mod p and mod p^2
    for (;; ++g) {
        if (g % p_ == 0) continue;
        bool prim = true;
        for (int64_t q = 2; q < p_; ++q)
            if ((p_ - 1) % q == 0 && zp::powmod(g, (p_ - 1) / q, p_) == 1) prim = false;
        if (!prim) continue;
        if (zp::powmod(g, p_ - 1, p_ * p_) != 1) break;
    }
    return {{1, 1, 0, 1}, {1, 0, 1, 1}, {g, 0, 0, 1}, {1, 0, 0, g}};
}

std::vector<int> InducedModule::digits(int i) const {
    std::vector<int> d(n_ - 1);
    for (int j = 0; j < n_ - 1; ++j) {
        d[j] = i % p_;
        i /= p_;
    }
    return d;
}

Vec InducedModule::e_vector(const Vec& fvals, const std::vector<int>& dg) const {
    Vec out(dim(), 0);
    const int k = n_ - 1;
    std::vector<int> xi(k, 0);
    const int64_t combos = zp::ipow(p_, k);
    for (int64_t idx = 0; idx < combos; ++idx) {
        int64_t rem = idx;
        int64_t coeff = 1, low = 0, pw = p_;
        for (int j = 0; j < k; ++j) {
            xi[j] = static_cast<int>(rem % p_);
            rem /= p_;
            coeff = coeff * zp::fp_pow(xi[j], dg[j], p_) % p_;
            low = (low + teich_[xi[j]] * pw) % pn_;
            pw *= p_;
        }
        if (!coeff) continue;
        for (int x = 0; x < p_; ++x) {
            if (!fvals[x]) continue;
            int pt = static_cast<int>((teich_[x] + low) % pn_);
            out[pt] = (out[pt] + coeff * fvals[x]) % p_;
        }
        if (fvals[p_]) {
            int pt = static_cast<int>(pn_ + (low / p_) % pn1_);
            out[pt] = (out[pt] + coeff * fvals[p_]) % p_;
        }
    }
    return out;
}

std::vector<FpSpace> InducedModule::filtration() const {
    std::vector<FpSpace> chain;
    chain.emplace_back(p_, dim());
    for (int i = 0; i < pn1_; ++i) {
        FpSpace next = chain.back();
        auto dg = digits(i);
        for (int slot = 0; slot <= p_; ++slot) {
            Vec f(p_ + 1, 0);
            f[slot] = 1;
            next.add(e_vector(f, dg));
        }
        chain.push_back(std::move(next));
    }
    return chain;
}

std::optional<Vec> InducedModule::project(const std::vector<FpSpace>& filt, const Vec& v, int i) const {
    auto dg = digits(i);
    std::vector<Vec> gens;
    for (int slot = 0; slot <= p_; ++slot) {
        Vec f(p_ + 1, 0);
        f[slot] = 1;
        gens.push_back(e_vector(f, dg));
    }
    for (const auto& row : filt[i].rows()) gens.push_back(row);
    auto x = left_solve(gens, v, p_);
    if (!x) return std::nullopt;
    return Vec(x->begin(), x->begin() + p_ + 1);
}

Vec sigma_act(const IMat& g, const Vec& v, int kappa, int p) {
    Vec w = sym_act({g.a % p, g.b % p, g.c % p, g.d % p}, v, p);
    int64_t s = zp::fp_pow(g.a, kappa, p);
    for (auto& x : w) x = x * s % p;
    return w;
}

std::vector<Vec> eta_mod_p(int p, int r) {
    if (r < 2 * p - 2) throw DomainError("r must be at least 2p-2");
    Vec eta(r + 1, 0);
    eta[0] = 1;
    eta[p - 1] = zp::mod(-2, p);
    eta[2 * p - 2] = (eta[2 * p - 2] + 1) % p;
    std::vector<Vec> out(p, Vec(r + 1, 0));
    for (int mu = 0; mu < p; ++mu) {
        Vec moved = sym_act({1, mu, 0, 1}, eta, p);
        for (int a = 0; a < p; ++a) {
            int64_t w = zp::fp_pow(mu, a, p);
            for (int j = 0; j <= r; ++j) out[a][j] = (out[a][j] + w * moved[j]) % p;
        }
    }
    return out;
}

WQuotient build_W_quotient(int p, int r, int i_max) {
    if (i_max < 0) i_max = r - p;
    if (r < 2 * p - 2) throw DomainError("r must be at least 2p-2");
    WQuotient W{FpSpace(p, r + 1), {}};
    Vec xr(r + 1, 0);
    xr[0] = 1;
    W.U.add(xr);
    for (int i = 0; i <= i_max; ++i) {
        // (x y^p - x^p y) x^{r-p-1-i} y^i = x^{r-p-i} y^{p+i} - x^{r-1-i} y^{1+i}
        Vec v(r + 1, 0);
        v[p + i] = 1;
        v[1 + i] = zp::mod(v[1 + i] - 1, p);
        W.U.add(v);
    }
    auto etas = eta_mod_p(p, r);
    for (int s = 1; s < p; ++s) W.eta_s.push_back(etas[s]);
    return W;
}

}  // namespace crystab
