#include "crystab/classify.hpp"

#include <algorithm>

#include "crystab/eta.hpp"
#include "crystab/fpmod.hpp"
#include "crystab/report.hpp"

namespace crystab {

namespace {

long long ceil_rational(const Rational& q) {
    long long f = q.numerator() / q.denominator();
    if (q.numerator() % q.denominator() != 0 && q.numerator() > 0) ++f;
    return f;
}

bool same_branch_set(const MuInvariant& x, const MuInvariant& y) { return x.branch_set == y.branch_set; }

}  // namespace

SlopeInfo slope_and_nu(const PadicElem& a) {
    if (a.is_zero()) throw PrecisionError("insufficient precision: a is indistinguishable from 0");
    const int p = a.ctx()->p;
    SlopeInfo s;
    s.w = a.w();
    s.nu = static_cast<int>(ceil_rational(s.w));
    if (s.w <= Rational(0)) s.reason = "slope must be positive";
    else if (s.w.denominator() == 1) s.reason = "slope is an integer";
    else if (s.w >= Rational(p - 1, 2)) s.reason = "slope is not below (p-1)/2";
    s.valid = s.reason.empty();
    return s;
}

PadicElem region_center_square(int alpha, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    if (alpha < 1) throw DomainError("region index must be positive");
    PadicElem zm1 = chi.zeta_prime() - PadicElem::from_int(ctx, 1);
    return zm1.pow(2 * alpha - 1) / PadicElem::from_int(ctx, gamma_int(2 * alpha).get_si());
}

bool region_member(const PadicElem& a, int alpha, const RamifiedCharacter& chi) {
    const int p = chi.ctx()->p;
    if (alpha < 1 || 2 * alpha > p - 1) throw DomainError("region index must lie in 1..(p-1)/2");
    return (a * a - region_center_square(alpha, chi)).w_at_least(Rational(4 * alpha - 1, 2));
}

MuInvariant mu_invariant(const PadicElem& a, int nu, int k, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    const int p = ctx->p;
    if (!region_member(a, nu, chi)) throw DomainError("a is not in the region D_nu");
    if (pos_mod(k + chi.kappa() - 2 * nu - 1, p - 1) != 0) throw DomainError("k + kappa is not 2nu+1 mod p-1");
    const PadicElem one = PadicElem::from_int(ctx, 1);
    const PadicElem zm1 = chi.zeta_prime() - one;
    MuInvariant out;
    out.nu = nu;
    PadicElem ratio;
    if (nu == 1) {
        ratio = (zm1 - a * a) / a.pow(3);
    } else {
        const long long g2 = gamma_int(2 * nu).get_si(), g1 = gamma_int(nu).get_si();
        PadicElem num = (a * a).mul_int(g2) - zm1.pow(2 * nu - 1);
        num = num.pow(2 * nu - 1);
        if ((nu * (2 * nu - 1)) % 2) num = -num;
        PadicElem den = PadicElem::from_int(ctx, g1).pow(2 * nu - 1) * PadicElem::from_int(ctx, g2).pow(nu) *
                        a.pow(4 * nu - 1);
        ratio = num / den;
    }
    if (!ratio.w_at_least(Rational(0))) throw PrecisionError("mu numerator valuation certificate fails");
    out.mu_power = FqElem(p, ratio.reduce());
    if (nu == 1) {
        out.branch_set = {out.mu_power};
    } else {
        out.branch_set = FqElem::roots(out.mu_power, 2 * nu - 1, out.in_fp);
    }
    return out;
}

std::vector<FqElem> lambda_pair(const FqElem& mu) {
    const int p = mu.p();
    bool in_fp = true;
    // lambda = (mu +- sqrt(mu^2 - 4)) / 2
    FqElem disc = mu * mu - FqElem(p, 4);
    auto r = FqElem::roots(disc, 2, in_fp);
    if (r.empty()) throw DomainError("no square root of the discriminant in F_{p^2}");
    FqElem half = FqElem(p, 2).inv();
    std::vector<FqElem> out{(mu + r[0]) * half, (mu - r[0]) * half};
    std::sort(out.begin(), out.end());
    return out;
}

GaloisLabel GaloisLabel::irr(int p, long long K, long long l) {
    GaloisLabel g;
    g.kind = Kind::Irreducible;
    g.p = p;
    g.h = static_cast<int>(plus_rep(K - 2 * l - 1, p));
    g.l = static_cast<int>(pos_mod(l, p - 1));
    g.index = static_cast<int>(l);
    return g;
}

GaloisLabel GaloisLabel::reducible(int p, const MuInvariant& mu, long long l) {
    GaloisLabel g;
    g.kind = Kind::Reducible;
    g.p = p;
    g.l = static_cast<int>(pos_mod(l, p - 1));
    g.mu = mu;
    return g;
}

long long GaloisLabel::fused_exponent() const {
    const long long q = static_cast<long long>(p) * p - 1;
    const long long e = pos_mod(h + static_cast<long long>(p + 1) * l, q);
    return std::min(e, e * p % q);
}

bool GaloisLabel::isomorphic(const GaloisLabel& o) const {
    if (kind != o.kind || p != o.p) return false;
    if (kind == Kind::Irreducible) return fused_exponent() == o.fused_exponent();
    return l == o.l && same_branch_set(mu, o.mu);
}

namespace {
std::string mu_str(const MuInvariant& mu) {
    if (!mu.ambiguous()) return mu.branch_set.front().str();
    std::string s = "{";
    for (size_t i = 0; i < mu.branch_set.size(); ++i) s += (i ? "," : "") + mu.branch_set[i].str();
    return s + "}";
}
}  // namespace

std::string GaloisLabel::str() const {
    if (kind == Kind::Irreducible) return "ind(w2^" + std::to_string(h) + ")(x)w^" + std::to_string(l);
    return "(mu_lambda w^" + std::to_string(p - 1) + " + mu_1/lambda)(x)w^" + std::to_string(l) + " mu=" + mu_str(mu);
}

BanachLabel BanachLabel::birr(int p, long long K, long long l) {
    BanachLabel b;
    b.kind = Kind::BIrr;
    b.p = p;
    b.t = static_cast<int>(minus_rep(K - 2 * l - 2, p));
    b.l = static_cast<int>(pos_mod(l, p - 1));
    b.index = static_cast<int>(l);
    return b;
}

BanachLabel BanachLabel::bred(int p, const MuInvariant& mu, long long l) {
    BanachLabel b;
    b.kind = Kind::BRed;
    b.p = p;
    b.t = p - 2;
    b.l = static_cast<int>(pos_mod(l, p - 1));
    b.mu = mu;
    return b;
}

std::pair<int, int> BanachLabel::canonical() const {
    std::pair<int, int> x{t, l};
    std::pair<int, int> y{p - 1 - t, static_cast<int>(pos_mod(t + l, p - 1))};
    return std::min(x, y);
}

bool BanachLabel::isomorphic(const BanachLabel& o) const {
    if (kind != o.kind || p != o.p) return false;
    if (kind == Kind::BIrr) return canonical() == o.canonical();
    return l == o.l && same_branch_set(mu, o.mu);
}

std::string BanachLabel::str() const {
    if (kind == Kind::BIrr) return "(ind sigma_" + std::to_string(t) + "/T)(x)w^" + std::to_string(l);
    return "(ind sigma_" + std::to_string(p - 2) + "/(T^2-mu T+1))(x)w^" + std::to_string(l) + " mu=" + mu_str(mu);
}

BanachLabel to_banach(const GaloisLabel& g) {
    BanachLabel b;
    b.p = g.p;
    b.l = g.l;
    b.index = g.index;
    if (g.kind == GaloisLabel::Kind::Irreducible) {
        b.kind = BanachLabel::Kind::BIrr;
        b.t = g.h - 1;
    } else {
        // (mu_lambda w^{t+1} + mu_{1/lambda}) (x) psi with t = p-2 pairs with pi(p-2, lambda, psi) + pi(p-2, 1/lambda, psi)
        b.kind = BanachLabel::Kind::BRed;
        b.t = g.p - 2;
        b.mu = g.mu;
    }
    return b;
}

std::optional<GaloisLabel> two_component_shortcut(int p, int nu, long long K) {
    if (nu <= 1) return std::nullopt;
    if (pos_mod(K - nu - 1, p - 1) == 0) return GaloisLabel::irr(p, K, p - 1);
    if (pos_mod(K - nu - 2, p - 1) == 0) return GaloisLabel::irr(p, K, nu);
    return std::nullopt;
}

namespace {
// index l mod p-1 lies in {1, ..., nu-1}
bool removed_index(long long l, int p, int nu) {
    for (int j = 1; j < nu; ++j)
        if (pos_mod(l - j, p - 1) == 0) return true;
    return false;
}
}  // namespace

Classification classify_labels(int p, int nu, long long K, bool in_region, const MuInvariant& mu) {
    if (nu < 1 || 2 * nu > p - 1) throw DomainError("nu must lie in 1..(p-1)/2");
    Classification c;
    c.p = p;
    c.nu = nu;
    c.K_mod = static_cast<int>(pos_mod(K, p - 1));
    c.in_region = in_region;
    c.pi_reducible = in_region && pos_mod(K - 2 * nu - 1, p - 1) == 0;
    c.pi = c.pi_reducible ? GaloisLabel::reducible(p, mu, 2 * nu - 1) : GaloisLabel::irr(p, K, K - 2);
    std::vector<GaloisLabel> pool;
    for (long long l = K - nu - 1; l <= K - 3; ++l)
        if (!removed_index(l, p, nu)) pool.push_back(GaloisLabel::irr(p, K, l));
    c.pi_removed = !c.pi_reducible && removed_index(K - 2, p, nu);
    if (!c.pi_removed) pool.push_back(c.pi);
    for (const auto& g : pool) {
        bool seen = false;
        for (const auto& h : c.candidates) seen = seen || h.isomorphic(g);
        if (!seen) c.candidates.push_back(g);
    }
    c.shortcut = two_component_shortcut(p, nu, K);
    if (c.shortcut && !(c.determined() && c.candidates.front().isomorphic(*c.shortcut)))
        throw VerificationError("two-component statement disagrees with the set computation");
    return c;
}

Classification classify_galois(const PadicElem& a, int k, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    SlopeInfo s = slope_and_nu(a);
    if (!s.valid) throw DomainError(s.reason);
    if (k < 2) throw DomainError("weight k must be at least 2");
    const long long K = static_cast<long long>(k) + chi.kappa();
    const bool member = region_member(a, s.nu, chi);
    MuInvariant mu;
    if (member && pos_mod(K - 2 * s.nu - 1, ctx->p - 1) == 0) mu = mu_invariant(a, s.nu, k, chi);
    Classification c = classify_labels(ctx->p, s.nu, K, member, mu);
    c.n = ctx->n;
    c.k = k;
    c.kappa = chi.kappa();
    c.slope = s;
    return c;
}

BanachClassification classify_banach_labels(int p, int nu, long long K, bool in_region, const MuInvariant& mu) {
    if (nu < 1 || 2 * nu > p - 1) throw DomainError("nu must lie in 1..(p-1)/2");
    BanachClassification b;
    const bool red = in_region && pos_mod(K - 2 * nu - 1, p - 1) == 0;
    b.bpi = red ? BanachLabel::bred(p, mu, 2 * nu - 1) : BanachLabel::birr(p, K, K - 2);
    std::vector<BanachLabel> pool;
    for (long long l = K - nu - 1; l <= K - 3; ++l)
        if (!removed_index(l, p, nu)) pool.push_back(BanachLabel::birr(p, K, l));
    b.bpi_removed = !red && removed_index(K - 2, p, nu);
    if (!b.bpi_removed) pool.push_back(b.bpi);
    for (const auto& x : pool) {
        bool seen = false;
        for (const auto& y : b.candidates) seen = seen || y.isomorphic(x);
        if (!seen) b.candidates.push_back(x);
    }
    return b;
}

BanachClassification classify_banach(const PadicElem& a, int k, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    SlopeInfo s = slope_and_nu(a);
    if (!s.valid) throw DomainError(s.reason);
    const long long K = static_cast<long long>(k) + chi.kappa();
    const bool member = region_member(a, s.nu, chi);
    MuInvariant mu;
    if (member && pos_mod(K - 2 * s.nu - 1, ctx->p - 1) == 0) mu = mu_invariant(a, s.nu, k, chi);
    return classify_banach_labels(ctx->p, s.nu, K, member, mu);
}

std::string verdict_name(SlopeVerdict v) {
    switch (v) {
        case SlopeVerdict::NotCovered: return "not covered";
        case SlopeVerdict::ConsistentWithReducible: return "consistent with reducible";
        case SlopeVerdict::IrreducibleForced: return "locally irreducible forced";
    }
    return "";
}

EigenformCheck eigenform_slope_check(long long N, int k, const PadicElem& ap, int m, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    const int p = ctx->p, n = ctx->n;
    if (N < 1 || N % p == 0) throw DomainError("tame level must be a positive integer prime to p");
    if (k < 2) throw DomainError("weight k must be at least 2");
    if (ap.is_exact_zero()) throw DomainError("a_p = 0 is excluded");
    if (ap.is_zero()) throw PrecisionError("insufficient precision: a_p is indistinguishable from 0");
    if (m < 1 || m > n) throw DomainError("conductor exponent m must lie in 1..n");
    if (m < n)
        throw DomainError("m < n is impossible: psi_p induced from level p^{n-1} forces a_p = 0 or p^2 not dividing N p^n");
    EigenformCheck out;
    out.w = ap.w();
    out.half_integer = out.w.denominator() == 2;
    if (out.w.denominator() == 1) {
        out.reason = "integer slope";
        return out;
    }
    if (out.w >= Rational(p - 1, 2) || out.w <= Rational(0)) {
        out.reason = "slope outside (0, (p-1)/2)";
        return out;
    }
    out.verdict = SlopeVerdict::IrreducibleForced;
    for (int alpha = 1; 2 * alpha <= p - 1; ++alpha) {
        if (pos_mod(k + chi.kappa() - 2 * alpha - 1, p - 1) != 0) continue;
        if (out.w != Rational(2 * alpha - 1, 2)) continue;
        if (region_member(ap, alpha, chi)) {
            out.verdict = SlopeVerdict::ConsistentWithReducible;
            out.alpha = alpha;
        }
    }
    out.reason = out.verdict == SlopeVerdict::IrreducibleForced ? "pair outside every D_alpha x {2alpha+1-kappa}"
                                                                : "pair in D_alpha x {2alpha+1-kappa}";
    return out;
}

WeakAdmissibility weak_admissibility(const FilteredModuleSpec& spec) {
    if (spec.a.is_zero()) throw PrecisionError("insufficient precision: a is indistinguishable from 0");
    const Rational v = spec.a.v_p();
    const Rational km1(spec.k - 1);
    WeakAdmissibility w;
    // eigenvalues eps^p(p) a^{-1} p^{k-1} and a, with eps^p(p) a root of unity
    const Rational v1 = km1 - v, v2 = v;
    w.determinant = v1 + v2 == km1;
    // Fil^{k-1} is the line e1 + e2, so both phi-stable lines have Hodge number 0
    w.line_e1 = v1 >= Rational(0);
    w.line_e2 = v2 >= Rational(0);
    w.positive = v > Rational(0);
    return w;
}

}  // namespace crystab

namespace crystab {

namespace {

bool same_candidates(const std::vector<BanachLabel>& x, const std::vector<BanachLabel>& y) {
    if (x.size() != y.size()) return false;
    for (size_t i = 0; i < x.size(); ++i)
        if (!x[i].isomorphic(y[i])) return false;
    return true;
}

std::vector<BanachLabel> banach_of(const Classification& c) {
    std::vector<BanachLabel> out;
    for (const auto& g : c.candidates) out.push_back(to_banach(g));
    return out;
}

std::string labels_str(const std::vector<BanachLabel>& v) {
    std::string s;
    for (const auto& b : v) s += (s.empty() ? "" : "; ") + b.str();
    return s;
}

}  // namespace

Report verify_classifier_labels(int p) {
    Report rep;
    MuInvariant mu;
    mu.mu_power = FqElem(p, 0);
    mu.branch_set = {FqElem(p, 0)};
    for (int nu = 1; 2 * nu <= p - 1; ++nu)
        for (int K = 0; K < p - 1; ++K)
            for (bool in_region : {false, true}) {
                // K shifted into a range where every index below is meaningful
                const long long KK = K + 3 * (p - 1);
                const std::string ps = "p=" + std::to_string(p) + " nu=" + std::to_string(nu) +
                                       " K=" + std::to_string(K) + " region=" + std::to_string(in_region);
                Classification c;
                try {
                    c = classify_labels(p, nu, KK, in_region, mu);
                } catch (const VerificationError& e) {
                    rep.add(false, "classify_shortcut", ps, e.what());
                    continue;
                }
                if (c.shortcut) rep.add(c.determined() && c.candidates.front().isomorphic(*c.shortcut), "classify_shortcut", ps);
                bool expect_removed = false, forbid_removed = nu == 1;
                if (nu > 1 && pos_mod(KK - nu - 1, p - 1) == 0) expect_removed = true;
                if (nu > 1 && pos_mod(KK - nu - 2, p - 1) == 0) forbid_removed = true;
                bool ok = (!expect_removed || c.pi_removed) && (!forbid_removed || !c.pi_removed);
                rep.add(ok, "classify_pi_removal", ps, c.pi_removed ? "Pi removed" : "Pi kept");
                rep.add(!c.candidates.empty(), "classify_nonempty", ps);
                auto direct = classify_banach_labels(p, nu, KK, in_region, mu);
                auto via = banach_of(c);
                rep.add(same_candidates(via, direct.candidates), "classify_banach", ps,
                        labels_str(via) + " vs " + labels_str(direct.candidates));
            }
    return rep;
}

Report verify_classifier_points(int p, int n) {
    Report rep;
    auto ctx = PadicContext::make({p, n, 8, true});
    const PadicElem S = PadicElem::pi(ctx);
    const int per_w = static_cast<int>(ctx->E / ((p - 1) * zp::ipow(p, n - 2)));  // v_pi of an element with w = 1
    for (int c = 1; c < p; ++c)
        for (int kappa : {0, 1}) {
            RamifiedCharacter chi(ctx, kappa, c);
            std::vector<PadicElem> points;
            for (int nu = 1; 2 * nu <= p - 1; ++nu) {
                const int half = per_w * (2 * nu - 1) / 2;
                points.push_back(S.pow(half));
                points.push_back(S.pow(half).mul_int(2));
                points.push_back(S.pow(per_w * nu - 1));
                try {
                    PadicElem a = region_center_square(nu, chi).sqrt();
                    points.push_back(a);
                    points.push_back(-a);
                    points.push_back(a + S.pow(per_w * nu).mul_int(3));
                } catch (const DomainError&) {
                }
            }
            for (const auto& a : points)
                for (int k = 2; k < 2 + 2 * (p - 1); ++k) {
                    const std::string ps = "p=" + std::to_string(p) + " n=" + std::to_string(n) + " c=" +
                                           std::to_string(c) + " kappa=" + std::to_string(kappa) +
                                           " k=" + std::to_string(k) + " w=" + to_string(a.w());
                    try {
                        Classification g = classify_galois(a, k, chi);
                        auto b = classify_banach(a, k, chi);
                        rep.add(same_candidates(banach_of(g), b.candidates), "classify_point_banach", ps);
                        if (g.shortcut) rep.add(g.determined(), "classify_point_shortcut", ps);
                    } catch (const VerificationError& e) {
                        rep.add(false, "classify_point_shortcut", ps, e.what());
                    }
                }
        }
    return rep;
}

}  // namespace crystab
