#include <random>
#include <set>

#include "crystab/cind.hpp"
#include "doctest.h"

using namespace crystab;

namespace {

Mat2 M(int p, int N, long long a, long long b, long long c, long long d) { return Mat2::from_ints(p, N, a, b, c, d); }

Mat2 upper(int p, int N, int mu) {
    return {Qp::from_int(p, N, p), Qp::teichmuller(p, N, mu), Qp::zero(p, N), Qp::from_int(p, N, 1)};
}

bool same(const Mat2& x, const Mat2& y) {
    for (auto [u, v] : {std::pair{&x.a, &y.a}, {&x.b, &y.b}, {&x.c, &y.c}, {&x.d, &y.d}})
        if (!(*u - *v).is_zero()) return false;
    return true;
}

std::vector<PadicElem> eta_padic(const Ctx& ctx, int r) {
    const int p = ctx->p;
    std::vector<PadicElem> v(r + 1, PadicElem::zero(ctx));
    v[0] = PadicElem::from_int(ctx, 1);
    v[p - 1] = PadicElem::from_int(ctx, -2);
    v[2 * p - 2] = PadicElem::from_int(ctx, 1);
    return v;
}

// random element of G with small entries
Mat2 random_g(std::mt19937& rng, int p, int N) {
    for (;;) {
        long long a = static_cast<long long>(rng() % 50) - 25, b = static_cast<long long>(rng() % 50) - 25;
        long long c = static_cast<long long>(rng() % 50) - 25, d = static_cast<long long>(rng() % 50) - 25;
        if (a * d - b * c != 0) return M(p, N, a, b, c, d);
    }
}

// random element of I(n)Z
Mat2 random_in(std::mt19937& rng, int p, int n, int N) {
    long long pn = zp::ipow(p, n);
    long long a = 1 + rng() % (p - 1) + p * (rng() % 5), d = 1 + rng() % (p - 1) + p * (rng() % 5);
    long long b = rng() % 40, c = pn * (rng() % 4);
    int z = static_cast<int>(rng() % 3) - 1;
    return M(p, N, a, b, c, d).scaled(Qp::p_power(p, N, z));
}

// random element of KZ
Mat2 random_kz(std::mt19937& rng, int p, int N) {
    for (;;) {
        long long a = rng() % 20, b = rng() % 20, c = rng() % 20, d = rng() % 20;
        if ((a * d - b * c) % p == 0) continue;
        int z = static_cast<int>(rng() % 3) - 1;
        return M(p, N, a, b, c, d).scaled(Qp::p_power(p, N, z));
    }
}

PCind minus(const PCind& x, const PCind& y, const Ctx& ctx) {
    PCind out = x;
    out += y.scaled(PadicElem::from_int(ctx, -1));
    return out;
}

}  // namespace

TEST_CASE("canonical cosets") {
    const int p = 3, n = 2, N = 12;
    Subgroup H{p, n};
    auto [k1, h1] = canonicalize(Mat2::identity(p, N), H);
    CHECK(k1 == CosetKey{0, 0, 0, 0});
    CHECK(same(h1, Mat2::identity(p, N)));
    auto [k2, h2] = canonicalize(M(p, N, p, 0, 0, p), H);
    CHECK(k2 == k1);
    CHECK(same(h2, M(p, N, p, 0, 0, p)));
    for (int mu = 0; mu < p; ++mu) {
        auto [k, h] = canonicalize(upper(p, N, mu), H);
        CHECK(k == CosetKey{1, 0, mu, 0});
        CHECK(same(h, Mat2::identity(p, N)));
    }
    std::mt19937 rng(7);
    for (int it = 0; it < 200; ++it) {
        Mat2 g = random_g(rng, p, N);
        for (Subgroup S : {H, Subgroup{p, 0}}) {
            auto [key, h] = canonicalize(g, S);
            CHECK(same(section(key, S, N) * h, g));
            CHECK(canonicalize(section(key, S, N), S).first == key);
            Mat2 i = S.is_kz() ? random_kz(rng, p, N) : random_in(rng, p, n, N);
            CHECK(canonicalize(g * i, S).first == key);
        }
        // the I(n)Z part of h has lower left entry divisible by p^n
        auto [key, h] = canonicalize(g, H);
        Mat2 i = h.scaled(Qp::p_power(p, N, -central_exponent(h)));
        CHECK(i.c.residue(n) == 0);
        CHECK(i.a.is_unit());
    }
}

TEST_CASE("coset partition of GL2(Z/p^n)") {
    for (auto [p, n] : {std::pair{3, 2}, {3, 3}, {5, 2}}) {
        auto rep = coset_partition(p, n);
        CHECK(rep.classes == zp::ipow(p, n) + zp::ipow(p, n - 1));
        CHECK(rep.equal_sizes);
        CHECK(rep.section_consistent);
        CHECK(rep.invariant);
    }
}

TEST_CASE("double cosets I(n) x_j B") {
    for (auto [p, n] : {std::pair{3, 2}, {5, 2}}) {
        auto rep = double_cosets(p, n);
        CHECK(rep.classes == n + 1);
        CHECK(rep.reps_distinct);
        CHECK(rep.total == rep.group_order);
    }
}

TEST_CASE("compact induction: defining relation and group action") {
    const int p = 5, n = 2, N = 10;
    auto ctx = PadicContext::make({p, n, N, false});
    RamifiedCharacter chi(ctx, 1, 2);
    const int r = 2 * p;
    std::mt19937 rng(11);
    for (int it = 0; it < 20; ++it) {
        std::vector<PadicElem> w(r + 1);
        for (auto& x : w) x = PadicElem::from_int(ctx, static_cast<long long>(rng() % 11) - 5);
        Mat2 g1 = random_g(rng, p, N), g2 = random_g(rng, p, N), h = random_in(rng, p, n, N);
        PCind lhs(chi, r, N), rhs(chi, r, N);
        lhs.add(g2, lhs.act_vec(h, w));
        lhs = lhs.act(g1);
        rhs.add(g1 * g2 * h, w);
        CHECK(minus(lhs, rhs, ctx).is_zero());
        // (g1 g2) f = g1 (g2 f)
        PCind f(chi, r, N);
        f.add(random_g(rng, p, N), w);
        f.add(Mat2::identity(p, N), w);
        CHECK(minus(f.act(g1 * g2), f.act(g2).act(g1), ctx).is_zero());
        CHECK(minus(f.act(Mat2::identity(p, N)), f, ctx).is_zero());
        // the centre: p acts trivially
        CHECK(minus(f.act(M(p, N, p, 0, 0, p)), f, ctx).is_zero());
    }
    // -1 acts on Sigma_r by (-1)^{r + kappa}
    for (int kappa = 0; kappa < p - 1; ++kappa)
        for (int rr : {8, 9}) {
            FCind f(Subgroup{p, n}, rr, kappa, 0, N);
            Vec v(rr + 1);
            for (auto& x : v) x = rng() % p;
            f.add(random_g(rng, p, N), v);
            CHECK(f.act(M(p, N, -1, 0, 0, -1)) == f.scaled((rr + kappa) % 2 ? -1 : 1));
        }
}

TEST_CASE("Hecke operator on the I(n)Z induction") {
    for (auto [p, n] : {std::pair{3, 2}, {5, 2}}) {
        const int N = 10;
        auto ctx = PadicContext::make({p, n, N, false});
        RamifiedCharacter chi(ctx, 1, 1);
        const int r = 2 * p + 1;
        const Rational wp2 = ctx->w_unit() * Rational(2 * ctx->e);  // w(p^2)
        // [1][x^r]
        std::vector<PadicElem> xr(r + 1, PadicElem::zero(ctx));
        xr[0] = PadicElem::from_int(ctx, 1);
        PCind f(chi, r, N);
        f.add(Mat2::identity(p, N), xr);
        PCind expect(chi, r, N);
        for (int mu = 0; mu < p; ++mu) expect.add(upper(p, N, mu), xr);
        CHECK(minus(f.hecke(), expect, ctx).is_zero());
        // [1][eta] -> [(p 0; 0 1)][eta(x, p y)] + O(p^2)
        auto eta = eta_padic(ctx, r);
        PCind e(chi, r, N);
        e.add(Mat2::identity(p, N), eta);
        auto eta_py = eta;
        for (int j = 0; j <= r; ++j) eta_py[j] = eta_py[j] * PadicElem::from_int(ctx, p).pow(j);
        PCind lead(chi, r, N);
        lead.add(M(p, N, p, 0, 0, 1), eta_py);
        PCind Te = e.hecke();
        CHECK(Te.terms().size() == static_cast<size_t>(p));
        CHECK(minus(Te, lead, ctx).w_at_least(wp2));
        // sum_xi c_xi (1 0; xi p^{n-1} 1)[eta] with sum c_xi = 0 has image O(p^2)
        std::mt19937 rng(p);
        for (int it = 0; it < 3; ++it) {
            PCind s(chi, r, N);
            long long total = 0;
            for (int xi = 0; xi < p; ++xi) {
                long long c = xi + 1 < p ? static_cast<long long>(rng() % 9) - 4 : -total;
                total += c;
                auto v = eta;
                for (auto& x : v) x = x.mul_int(c);
                s.add(M(p, N, 1, 0, xi * zp::ipow(p, n - 1), 1), v);
            }
            CHECK(s.hecke().w_at_least(wp2));
            // linearity
            PCind sum = s;
            sum += e;
            PCind parts = s.hecke();
            parts += e.hecke();
            CHECK(minus(sum.hecke(), parts, ctx).is_zero());
        }
    }
}

TEST_CASE("Hecke operator T on the KZ induction") {
    const int p = 3, N = 12;
    Subgroup KZ{p, 0};
    std::mt19937 rng(5);
    // t = 0: T([g][1]) is the sum over the p+1 neighbours
    std::vector<Mat2> verts;
    for (int m = -2; m <= 3; ++m)
        for (int j = 0; j <= 2; ++j)
            for (long long B = 0; B < zp::ipow(p, std::max(0, m + j)); ++B) {
                if (j > 0 && B % p == 0) continue;
                verts.push_back({Qp::p_power(p, N, m), Qp::from_int(p, N, B) * Qp::p_power(p, N, -j), Qp::zero(p, N),
                                 Qp::from_int(p, N, 1)});
            }
    for (int it = 0; it < 10; ++it) {
        Mat2 g = verts[rng() % verts.size()];
        if (g.a.val() < -1 || g.a.val() > 2) continue;
        FCind f(KZ, 0, 0, 0, N);
        f.add(g, {1});
        FCind Tf = f.hecke_T();
        std::set<CosetKey> expect;
        for (const auto& v : verts)
            if (tree_distance(g, v) == 1) expect.insert(canonicalize(v, KZ).first);
        CHECK(expect.size() == static_cast<size_t>(p + 1));
        std::set<CosetKey> got;
        for (const auto& [key, v] : Tf.terms()) {
            got.insert(key);
            CHECK(v == Vec{1});
        }
        CHECK(got == expect);
    }
    // T commutes with G
    for (int t = 0; t < p; ++t)
        for (int it = 0; it < 10; ++it) {
            FCind f(KZ, t, 0, it % 2, N);
            for (int k = 0; k < 3; ++k) {
                Vec v(t + 1);
                for (auto& x : v) x = rng() % p;
                f.add(random_g(rng, p, N), v);
            }
            Mat2 g = random_g(rng, p, N);
            CHECK(f.act(g).hecke_T() == f.hecke_T().act(g));
        }
}

TEST_CASE("representatives of T([1][X^{p-2}]) and T([1][Y^{p-2}])") {
    // -[1][eta_nu] represents [1][X^{p-2}], -(0 -1; 1 0)[eta_nu] represents [1][Y^{p-2}]
    const int p = 5, n = 2, N = 10;
    for (int nu : {1, 2})
        for (int kappa = 0; kappa < p - 1; ++kappa) {
            int r = 2 * p + 2;
            while (plus_rep(r + kappa, p) != 2 * nu - 1) ++r;
            const auto eta = eta_mod_p(p, r);
            Subgroup In{p, n}, KZ{p, 0};
            auto lift = [&](const FCind& F) {
                FCind out(In, r, kappa, 0, N);
                for (const auto& [key, v] : F.terms()) {
                    for (int j = 1; j + 1 < p - 1; ++j) REQUIRE(v[j] == 0);
                    Mat2 s = section(key, KZ, N);
                    Vec e = eta[nu];
                    FCind piece(In, r, kappa, 0, N);
                    for (auto& x : e) x = zp::mod(-x * v[0], p);
                    piece.add(s, e);
                    e = eta[nu];
                    for (auto& x : e) x = zp::mod(-x * v[p - 2], p);
                    piece.add(s * M(p, N, 0, -1, 1, 0), e);
                    out += piece;
                }
                return out;
            };
            FCind X(KZ, p - 2, 0, nu, N), Y(KZ, p - 2, 0, nu, N);
            Vec xv(p - 1, 0), yv(p - 1, 0);
            xv[0] = 1;
            yv[p - 2] = 1;
            X.add(Mat2::identity(p, N), xv);
            Y.add(Mat2::identity(p, N), yv);
            FCind repX(In, r, kappa, 0, N), repY(In, r, kappa, 0, N);
            for (int mu = 0; mu < p; ++mu) {
                Vec e = eta[nu];
                for (auto& x : e) x = zp::mod(-x, p);
                repX.add(upper(p, N, mu), e);
                e = eta[nu];
                for (auto& x : e) x = x * zp::fp_pow(mu, p - 2, p) % p;
                repY.add(upper(p, N, mu), e);
            }
            repY.add(M(p, N, 0, 1, -p, 0), eta[nu]);
            CHECK(lift(X.hecke_T()) == repX);
            CHECK(lift(Y.hecke_T()) == repY);
        }
}
