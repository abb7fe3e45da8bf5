#include "crystab/classify.hpp"
#include "doctest.h"

using namespace crystab;

namespace {

struct Field {
    Ctx ctx;
    RamifiedCharacter chi;
    Field(int p, int n, int kappa, int c) : ctx(PadicContext::make({p, n, 8, true})), chi(ctx, kappa, c) {}
    PadicElem S() const { return PadicElem::pi(ctx); }
    PadicElem one() const { return PadicElem::from_int(ctx, 1); }
    PadicElem zm1() const { return chi.zeta_prime() - one(); }
};

}  // namespace

TEST_CASE("slope and nu") {
    Field F(5, 2, 0, 1);
    // w(S) = 1/(2p) at n = 2
    auto s = slope_and_nu(F.S().pow(5));
    CHECK(s.w == Rational(1, 2));
    CHECK(s.nu == 1);
    CHECK(s.valid);
    s = slope_and_nu(F.S().pow(10));
    CHECK(s.w == Rational(1));
    CHECK_FALSE(s.valid);
    CHECK(s.reason == "slope is an integer");
    s = slope_and_nu(F.S().pow(19));
    CHECK(s.w == Rational(19, 10));
    CHECK(s.nu == 2);
    CHECK(s.valid);
    CHECK_FALSE(slope_and_nu(F.S().pow(21)).valid);
    CHECK_FALSE(slope_and_nu(F.one()).valid);
    CHECK_THROWS_AS(slope_and_nu(PadicElem::zero(F.ctx, 3)), PrecisionError);
}

TEST_CASE("regions D_alpha") {
    Field F(5, 2, 0, 1);
    auto center = region_center_square(1, F.chi).sqrt();
    CHECK(region_member(center, 1, F.chi));
    CHECK(region_member(-center, 1, F.chi));
    CHECK(center.w() == Rational(1, 2));
    // a^2 = 2 (zeta' - 1): w(a^2 - (zeta' - 1)) = 1 < 3/2
    auto x = F.zm1().mul_int(2);
    CHECK_FALSE((x - F.zm1()).w_at_least(Rational(3, 2)));
    CHECK((x - F.zm1()).w() == Rational(1));
    // perturbation inside the disk: w(delta) >= 1
    CHECK(region_member(center + F.S().pow(10).mul_int(3), 1, F.chi));
    CHECK_FALSE(region_member(center + F.S().pow(9), 1, F.chi));
    // all members have w = alpha - 1/2
    auto c2 = region_center_square(2, F.chi).sqrt();
    CHECK(c2.w() == Rational(3, 2));
    CHECK_FALSE(region_member(F.S().pow(5), 2, F.chi));
    CHECK_FALSE(region_member(c2, 1, F.chi));
    CHECK_THROWS_AS(region_member(center, 3, F.chi), DomainError);
    // c = 2 at p = 5: the center is not a square in L
    Field G(5, 2, 0, 2);
    CHECK_THROWS_AS(region_center_square(1, G.chi).sqrt(), DomainError);
}

TEST_CASE("mu invariant") {
    Field F(5, 2, 0, 1);
    auto center = region_center_square(1, F.chi).sqrt();
    auto m = mu_invariant(center, 1, 11, F.chi);
    CHECK(m.mu_power == FqElem(5, 0));
    CHECK_FALSE(m.ambiguous());
    // generic point of D_1 against the direct formula
    for (int d = 1; d < 5; ++d) {
        auto a = center + F.S().pow(10).mul_int(d);
        auto mu = mu_invariant(a, 1, 11, F.chi);
        auto direct = ((F.zm1() - a * a) * a.pow(-3)).reduce();
        CHECK(mu.mu_power.a() == direct);
        CHECK(mu.mu_power.a() != 0);
        // the opposite eigenvalue negates mu
        CHECK(mu_invariant(-a, 1, 11, F.chi).mu_power == -mu.mu_power);
    }
    // S^10 = varpi^5 = zeta_5 - 1 up to w >= 4, so S^5 is in D_1 and 2 S^5 is not
    CHECK(region_member(F.S().pow(5), 1, F.chi));
    CHECK_THROWS_AS(mu_invariant(F.S().pow(5).mul_int(2), 1, 11, F.chi), DomainError);
    CHECK_THROWS_AS(mu_invariant(center, 1, 12, F.chi), DomainError);
    // nu = 2: the valuation bookkeeping makes the ratio integral and mu^3 well defined
    auto c2 = region_center_square(2, F.chi).sqrt();
    auto m2 = mu_invariant(c2, 2, 5, F.chi);
    CHECK(m2.mu_power == FqElem(5, 0));
    CHECK(m2.branch_set == std::vector<FqElem>{FqElem(5, 0)});
    auto a2 = c2 + F.S().pow(20).mul_int(2);
    auto m3 = mu_invariant(a2, 2, 5, F.chi);
    for (const auto& r : m3.branch_set) CHECK(r.pow(3) == m3.mu_power);
    // cubing is a bijection on F_5
    CHECK(m3.branch_set.size() == 1);
    CHECK(m3.in_fp);
}

TEST_CASE("lambda pairs") {
    for (int p : {5, 7})
        for (int m = 0; m < p; ++m) {
            FqElem mu(p, m);
            auto lam = lambda_pair(mu);
            REQUIRE(lam.size() == 2);
            CHECK(lam[0] * lam[1] == FqElem(p, 1));
            CHECK(lam[0] + lam[1] == mu);
        }
}

TEST_CASE("label normalization") {
    const int p = 5;
    // Irr_l and Irr_{l+p-1} are the same label
    for (long long K = 0; K < 12; ++K)
        for (long long l = -4; l < 8; ++l) {
            auto a = GaloisLabel::irr(p, K, l), b = GaloisLabel::irr(p, K, l + p - 1);
            CHECK(a.h == b.h);
            CHECK(a.l == b.l);
            CHECK(a.isomorphic(b));
            // Irr_l and Irr_{K-2-l} are isomorphic: same inertia exponents and determinant
            CHECK(a.isomorphic(GaloisLabel::irr(p, K, K - 2 - l)));
        }
    // ind(w2^h) (x) w^l with a different l is a different representation
    CHECK_FALSE(GaloisLabel::irr(p, 3, 0).isomorphic(GaloisLabel::irr(p, 3, 2)));
    // Banach: (t, l) ~ (p-1-t, t+l) matches the Galois fusion under t = h-1
    for (long long K = 0; K < 8; ++K)
        for (long long l = 0; l < 4; ++l)
            for (long long m = 0; m < 4; ++m) {
                auto g1 = GaloisLabel::irr(p, K, l), g2 = GaloisLabel::irr(p, K + 1, m);
                CHECK(g1.isomorphic(g2) == to_banach(g1).isomorphic(to_banach(g2)));
            }
    CHECK(BanachLabel::birr(p, 3, 0).t == 1);
    CHECK(to_banach(GaloisLabel::irr(p, 3, 0)).t == 1);
}

TEST_CASE("removal by isomorphism class would empty the set") {
    // With Irr_l = Irr_{K-2-l}, the listed range is {Irr_1..Irr_{nu-1}} up to isomorphism and
    // Pi = Irr_{K-2} = Irr_0, so removal by isomorphism leaves nothing at K = nu+1.
    const int p = 7;
    for (int nu = 2; 2 * nu <= p - 1; ++nu) {
        const long long K = nu + 1 + 2 * (p - 1);
        std::vector<GaloisLabel> removed, left;
        for (int j = 1; j < nu; ++j) removed.push_back(GaloisLabel::irr(p, K, j));
        for (long long l = K - nu - 1; l <= K - 2; ++l) {
            auto g = GaloisLabel::irr(p, K, l);
            bool gone = false;
            for (const auto& r : removed) gone = gone || r.isomorphic(g);
            if (!gone) left.push_back(g);
        }
        CHECK(left.empty());
        MuInvariant mu;
        auto c = classify_labels(p, nu, K, false, mu);
        REQUIRE(c.determined());
        CHECK(c.candidates.front().isomorphic(GaloisLabel::irr(p, K, 0)));
    }
}

TEST_CASE("classification examples") {
    Field F(5, 2, 0, 1);
    auto center = region_center_square(1, F.chi).sqrt();
    auto c = classify_galois(center, 11, F.chi);
    CHECK(c.nu == 1);
    CHECK(c.in_region);
    REQUIRE(c.determined());
    auto g = c.candidates.front();
    CHECK(g.kind == GaloisLabel::Kind::Reducible);
    CHECK(g.l == 1);
    CHECK(g.mu.mu_power == FqElem(5, 0));
    auto b = to_banach(g);
    CHECK(b.kind == BanachLabel::Kind::BRed);
    CHECK(b.l == 1);
    // the opposite branch gives the same labels at the center
    auto cf = classify_galois(-center, 11, F.chi);
    CHECK(cf.candidates.front().isomorphic(g));

    // k = 13: Irr_11 = ind(w2^2) (x) w^3
    auto c13 = classify_galois(F.S().pow(5), 13, F.chi);
    REQUIRE(c13.determined());
    CHECK_FALSE(c13.pi_reducible);
    CHECK(c13.candidates.front().h == 2);
    CHECK(c13.candidates.front().l == 3);
    // the center with k + kappa = 1: still irreducible
    CHECK(classify_galois(center, 13, F.chi).candidates.front().kind == GaloisLabel::Kind::Irreducible);

    // nu = 2 at k + kappa = 3 and 4 mod 4
    auto a = F.S().pow(15);
    auto c7 = classify_galois(a, 7, F.chi);
    REQUIRE(c7.determined());
    REQUIRE(c7.shortcut);
    CHECK(c7.candidates.front().isomorphic(GaloisLabel::irr(5, 7, 4)));
    CHECK(c7.pi_removed);
    auto c8 = classify_galois(a, 8, F.chi);
    REQUIRE(c8.determined());
    CHECK(c8.candidates.front().isomorphic(GaloisLabel::irr(5, 8, 2)));
    CHECK_FALSE(c8.pi_removed);
    // the other components leave two candidates
    auto c9 = classify_galois(a, 9, F.chi);
    CHECK(c9.candidates.size() == 2);

    CHECK_THROWS_AS(classify_galois(F.S().pow(10), 11, F.chi), DomainError);
}

TEST_CASE("classifier consistency sweeps") {
    for (int p : {5, 7}) {
        auto rep = verify_classifier_labels(p);
        INFO(rep.str());
        CHECK(rep.all_ok());
        auto pts = verify_classifier_points(p, 2);
        INFO(pts.str());
        CHECK(pts.all_ok());
        CHECK(pts.lines().size() > 100);
    }
}

TEST_CASE("eigenform slope check") {
    Field F(5, 2, 0, 1);
    auto c2 = region_center_square(2, F.chi).sqrt();
    // w = 3/2 in D_2 with k = 5 - kappa mod 4
    auto r = eigenform_slope_check(7, 9, c2, 2, F.chi);
    CHECK(r.verdict == SlopeVerdict::ConsistentWithReducible);
    CHECK(r.alpha == 2);
    CHECK(r.half_integer);
    CHECK(eigenform_slope_check(7, 10, c2, 2, F.chi).verdict == SlopeVerdict::IrreducibleForced);
    CHECK(eigenform_slope_check(7, 9, F.S().pow(10), 2, F.chi).verdict == SlopeVerdict::NotCovered);
    auto off = eigenform_slope_check(7, 11, F.S().pow(5).mul_int(2), 2, F.chi);
    CHECK(off.verdict == SlopeVerdict::IrreducibleForced);
    CHECK(off.half_integer);
    CHECK_THROWS_AS(eigenform_slope_check(7, 11, F.S().pow(5), 1, F.chi), DomainError);
    CHECK_THROWS_AS(eigenform_slope_check(10, 11, F.S().pow(5), 2, F.chi), DomainError);
    CHECK_THROWS_AS(eigenform_slope_check(7, 11, PadicElem::zero(F.ctx), 2, F.chi), DomainError);
}

TEST_CASE("weak admissibility") {
    Field F(5, 2, 0, 1);
    for (int k : {2, 5, 12}) {
        auto w = weak_admissibility({k, F.S().pow(7)});
        CHECK(w.determinant);
        CHECK(w.weakly_admissible());
        CHECK(w.positive);
    }
    auto u = weak_admissibility({4, F.one().mul_int(2)});
    CHECK(u.weakly_admissible());
    CHECK_FALSE(u.positive);
    // v_p(a) > k-1 breaks the e1 line
    auto big = weak_admissibility({2, PadicElem::from_int(F.ctx, 25)});
    CHECK_FALSE(big.line_e1);
    CHECK_FALSE(big.weakly_admissible());
}
