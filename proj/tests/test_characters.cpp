#include <random>

#include "crystab/characters.hpp"
#include "doctest.h"

using namespace crystab;

TEST_CASE("epsilon_p values") {
    auto ctx = PadicContext::make({5, 2, 12, false});
    RamifiedCharacter chi(ctx, 0, 1);
    // 6 = 1 + 5, t = 1
    CHECK(chi.dlog(6) == 1);
    CHECK(chi.eval(6).equals(PadicElem::zeta(ctx).pow(5)));
    CHECK((chi.zeta_prime() - PadicElem::from_int(ctx, 1)).w() == Rational(1));
    CHECK_THROWS_AS(RamifiedCharacter(ctx, 0, 5), DomainError);
    CHECK_THROWS_AS(chi.eval(10), DomainError);
}

TEST_CASE("epsilon_p is a homomorphism with tame reduction u^kappa") {
    for (auto [p, n] : {std::pair{3, 2}, {5, 2}, {3, 3}, {5, 3}}) {
        auto ctx = PadicContext::make({p, n, 8, false});
        const int64_t pn = zp::ipow(p, n);
        for (int kappa = 0; kappa < p - 1; ++kappa) {
            RamifiedCharacter chi(ctx, kappa, 1 + (kappa % (p - 1 > 1 ? 2 : 1)));
            for (int u = 1; u < p; ++u) {
                CHECK(chi.eval(u).reduce() == zp::powmod(u, kappa, p));
                CHECK(chi.eval(zp::teich(u, p, n)).equals(PadicElem::teichmuller(ctx, u).pow(kappa)));
            }
            std::mt19937 rng(kappa + 17 * p + n);
            for (int it = 0; it < 12; ++it) {
                int64_t x = rng() % pn, y = rng() % pn;
                if (x % p == 0 || y % p == 0) continue;
                CHECK((chi.eval(x) * chi.eval(y)).equals(chi.eval(zp::mulmod(x, y, pn))));
            }
            for (int64_t x = 1; x < pn; ++x)
                if (x % p) CHECK(chi.dlog(x) == chi.dlog_series(x));
            auto one = PadicElem::from_int(ctx, 1);
            CHECK((chi.zeta_prime() - one).w() == Rational(1));
            CHECK(chi.eval(Qp::from_int(p, 8, p)).equals(one));
        }
    }
}

TEST_CASE("B I(n) membership agrees with exhaustive search") {
    const int p = 3, n = 2, N = 6;
    const int64_t q = 9;
    int members = 0;
    for (int64_t a = 0; a < q; ++a)
        for (int64_t b = 0; b < q; ++b)
            for (int64_t c = 0; c < q; ++c)
                for (int64_t d = 0; d < q; ++d) {
                    if ((a * d - b * c) % p == 0) continue;
                    Mat2 g = Mat2::from_ints(p, N, a, b, c, d);
                    bool expect = c % q == 0;
                    CHECK(in_BIn(g, n) == expect);
                    members += expect;
                    // left multiplication by B does not change membership
                    Mat2 bb = Mat2::from_ints(p, N, 3 * (a + 1), b + 2, 0, 9 * (d % 2 ? 2 : 1));
                    CHECK(in_BIn(bb * g, n) == expect);
                }
    CHECK(members == 2 * 3 * 2 * 3 * 9);
}

TEST_CASE("delta values and sums") {
    auto ctx = PadicContext::make({5, 2, 12, false});
    RamifiedCharacter chi(ctx, 1, 2);
    const int p = 5, n = 2, N = 12, k = 7;
    auto a = PadicElem::from_int(ctx, 3) * PadicElem::varpi(ctx).pow(2);
    auto apk = a * PadicElem::from_int(ctx, p).pow(1 - k);
    for (int mu = 0; mu < p; ++mu) {
        Mat2 g{Qp::from_int(p, N, p), Qp::teichmuller(p, N, mu), Qp::zero(p, N), Qp::from_int(p, N, 1)};
        CHECK(delta(g, k, a, chi).equals(apk));
    }
    for (int i = 1; i <= n + 1; ++i) {
        auto s = PadicElem::zero(ctx);
        Mat2 xi = coset_rep_x(i, p, n, N).inv();
        for (int mu = 0; mu < p; ++mu) {
            Mat2 g{Qp::from_int(p, N, p), Qp::teichmuller(p, N, mu), Qp::zero(p, N), Qp::from_int(p, N, 1)};
            s += delta(xi * g, k, a, chi);
        }
        if (i == 1) CHECK(s.equals(apk.mul_int(p)));
        else CHECK(s.is_zero());
    }
}
