#include <random>

#include "crystab/padic.hpp"
#include "doctest.h"

using namespace crystab;

namespace {
Ctx K(int p, int n, int M = 16, bool quad = false) { return PadicContext::make({p, n, M, quad}); }
}  // namespace

TEST_CASE("teichmuller lifts") {
    CHECK(zp::teich(2, 5, 2) == 7);
    CHECK(zp::teich(0, 5, 2) == 0);
    CHECK(zp::teich(1, 7, 5) == 1);
    auto ctx = K(5, 2, 2);
    PadicElem s3 = PadicElem::zero(ctx), s4 = PadicElem::zero(ctx);
    for (int xi = 0; xi < 5; ++xi) {
        auto t = PadicElem::teichmuller(ctx, xi);
        s3 += t.pow(3);
        s4 += t.pow(4);
    }
    CHECK(s3.is_zero());
    CHECK(s4.equals(PadicElem::from_int(ctx, 4)));
    for (int a = 1; a < 5; ++a)
        for (int b = 1; b < 5; ++b)
            CHECK(zp::mulmod(zp::teich(a, 5, 6), zp::teich(b, 5, 6), 15625) == zp::teich(a * b, 5, 6));
}

TEST_CASE("valuations of basic elements") {
    for (int n : {2, 3}) {
        auto ctx = K(5, n);
        CHECK(PadicElem::from_int(ctx, 5).w() == Rational(zp::ipow(5, n - 2) * 4));
        CHECK(PadicElem::varpi(ctx).w() == Rational(1, 5));
        auto vp = PadicElem::varpi(ctx);
        auto prod = vp * vp.pow(ctx->e - 1);
        CHECK(prod.v_pi() == ctx->e);
        CHECK((prod / PadicElem::from_int(ctx, 5)).v_pi() == 0);
    }
    auto ctx = K(5, 2);
    auto z5 = PadicElem::zeta(ctx).pow(5);
    CHECK((z5 - PadicElem::from_int(ctx, 1)).w() == Rational(1));
    CHECK(PadicElem::zero(ctx).valuations().w == std::nullopt);
    CHECK_THROWS_AS(PadicElem::zero(ctx, 3).valuations(), PrecisionError);
}

TEST_CASE("zeta is a primitive p^n-th root of unity") {
    for (auto [p, n] : {std::pair{3, 2}, {5, 2}, {3, 3}}) {
        for (bool quad : {false, true}) {
            auto ctx = K(p, n, 10, quad);
            auto z = PadicElem::zeta(ctx);
            auto one = PadicElem::from_int(ctx, 1);
            CHECK(z.pow(zp::ipow(p, n)).equals(one));
            CHECK(!z.pow(zp::ipow(p, n - 1)).equals(one));
        }
    }
}

TEST_CASE("field axioms on random elements") {
    std::mt19937_64 rng(7);
    for (bool quad : {false, true}) {
        auto ctx = K(5, 2, 8, quad);
        auto rnd = [&]() {
            auto x = PadicElem::zero(ctx);
            auto pi = PadicElem::pi(ctx);
            auto pw = PadicElem::from_int(ctx, 1);
            for (int i = 0; i < 6; ++i) {
                x += pw.mul_int(static_cast<long long>(rng() % 400) - 200);
                pw *= pi;
            }
            return x;
        };
        for (int it = 0; it < 30; ++it) {
            auto x = rnd(), y = rnd(), z = rnd();
            CHECK(((x + y) * z).equals(x * z + y * z));
            if (!x.is_zero() && !y.is_zero()) {
                CHECK((x * y).w() == x.w() + y.w());
                CHECK((x * y / y).equals(x));
                auto s = x + y;
                if (!s.is_zero()) {
                    CHECK(s.w() >= std::min(x.w(), y.w()));
                    if (x.w() != y.w()) CHECK(s.w() == std::min(x.w(), y.w()));
                }
            }
        }
    }
}

TEST_CASE("Eisenstein valuation formula agrees with repeated division") {
    std::mt19937_64 rng(11);
    auto ctx = K(3, 2, 8);
    auto pi = PadicElem::pi(ctx);
    for (int it = 0; it < 50; ++it) {
        std::vector<long long> a(ctx->E);
        for (auto& v : a) v = static_cast<long long>(rng() % 81) * (rng() % 3 == 0 ? 3 : 1);
        long long best = LLONG_MAX;
        auto x = PadicElem::zero(ctx);
        auto pw = PadicElem::from_int(ctx, 1);
        for (int i = 0; i < ctx->E; ++i) {
            if (a[i]) best = std::min<long long>(best, ctx->E * zp::val(a[i], 3) + i);
            x += pw.mul_int(a[i]);
            pw *= pi;
        }
        if (best == LLONG_MAX) continue;
        long long k = 0;
        auto y = x;
        while (y.reduce() == 0) {
            y = y / pi;
            ++k;
        }
        CHECK(x.v_pi() == best);
        CHECK(k == best);
    }
}

TEST_CASE("reduction and square roots") {
    auto ctx = K(5, 2, 16, true);
    CHECK(PadicElem::teichmuller(ctx, 3).reduce() == 3);
    CHECK(PadicElem::varpi(ctx).reduce() == 0);
    CHECK((PadicElem::from_int(ctx, 1) + PadicElem::varpi(ctx).pow(3)).reduce() == 1);
    CHECK_THROWS_AS(PadicElem::varpi(ctx).inv().reduce(), DomainError);
    auto four = PadicElem::from_int(ctx, 4);
    CHECK(four.sqrt().equals(PadicElem::from_int(ctx, 2)));
    auto w = PadicElem::varpi(ctx);
    CHECK((w * w).sqrt().equals(w));
    auto z1 = PadicElem::zeta(ctx).pow(5) - PadicElem::from_int(ctx, 1);
    auto r = z1.sqrt();
    CHECK(r.w() == Rational(1, 2));
    CHECK((r * r).equals(z1));
    CHECK_THROWS_AS(PadicElem::from_int(ctx, 2).sqrt(), DomainError);
    auto x = PadicElem::from_int(ctx, 3) + PadicElem::pi(ctx);
    auto y = PadicElem::from_int(ctx, 2) + PadicElem::pi(ctx).pow(2);
    CHECK((x * y).reduce() == x.reduce() * y.reduce() % 5);
    CHECK((x + y).reduce() == (x.reduce() + y.reduce()) % 5);
}

TEST_CASE("additive identity keeps precision") {
    auto ctx = K(5, 2, 4);
    auto x = PadicElem::from_residue(ctx, 7);
    auto y = x + PadicElem::zero(ctx);
    CHECK(y.relprec() == x.relprec());
    CHECK(y.equals(x));
}
