#pragma once
#include <optional>
#include <string>
#include <vector>

#include "crystab/characters.hpp"
#include "crystab/fq.hpp"
#include "crystab/report.hpp"

namespace crystab {

struct SlopeInfo {
    Rational w;
    int nu = 0;  // ceil(w)
    bool valid = false;
    std::string reason;  // why not valid
};

// valid iff 0 < w(a) < (p-1)/2 and w(a) is not an integer
SlopeInfo slope_and_nu(const PadicElem& a);

// (eps_p(1+p) - 1)^{2 alpha - 1} / (2 alpha - 1)!, the square of either disk center
PadicElem region_center_square(int alpha, const RamifiedCharacter& chi);
// w(a^2 - center^2) >= 2 alpha - 1/2; throws PrecisionError when undecidable
bool region_member(const PadicElem& a, int alpha, const RamifiedCharacter& chi);

struct MuInvariant {
    int nu = 1;
    FqElem mu_power;                // mu^{2nu-1}; mu itself when nu = 1
    std::vector<FqElem> branch_set;  // every mu with that power, sorted
    bool in_fp = true;               // branch_set lies in F_p
    bool ambiguous() const { return branch_set.size() != 1; }
};

// nu = 1: mu = reduce(a^{-3}(eps_p(1+p) - 1 - a^2)).  nu > 1: mu^{2nu-1} is the reduction of
// (-1)^{nu(2nu-1)} (Gamma(2nu) a^2 - (eps_p(1+p)-1)^{2nu-1})^{2nu-1} / (Gamma(nu)^{2nu-1} Gamma(2nu)^nu a^{4nu-1}).
MuInvariant mu_invariant(const PadicElem& a, int nu, int k, const RamifiedCharacter& chi);

// Roots of x^2 - mu x + 1 in F_{p^2}.
std::vector<FqElem> lambda_pair(const FqElem& mu);

// Irreducible: ind(omega_2^h) (x) omega^l, 1 <= h <= p-1, 0 <= l < p-1.
// Reducible: (mu_lambda omega^{p-1} (+) mu_{lambda^{-1}}) (x) omega^l with lambda + 1/lambda = mu.
struct GaloisLabel {
    enum class Kind { Irreducible, Reducible } kind = Kind::Irreducible;
    int p = 0;
    int h = 0;
    int l = 0;
    int index = -1;  // the l of Irr_l as written, before reduction mod p-1; -1 for Reducible
    MuInvariant mu;

    // Irr_l = ind(omega_2^{<K-2l-1>_+}) (x) omega^l for K = k + kappa
    static GaloisLabel irr(int p, long long K, long long l);
    static GaloisLabel reducible(int p, const MuInvariant& mu, long long l);

    // min of e and p e mod p^2-1 for e = h + (p+1) l: the isomorphism class
    long long fused_exponent() const;
    // isomorphism: fused exponents for Irreducible, (mu branch set, l) for Reducible
    bool isomorphic(const GaloisLabel& o) const;
    std::string str() const;
};

// (ind sigma_t / T) (x) omega^l, 0 <= t <= p-1; or ind sigma_{p-2} / (T^2 - mu T + 1) (x) omega^l.
struct BanachLabel {
    enum class Kind { BIrr, BRed } kind = Kind::BIrr;
    int p = 0;
    int t = 0;
    int l = 0;
    int index = -1;
    MuInvariant mu;

    // BIrr_l = (ind sigma_{<K-2l-2>_-} / T) (x) omega^l
    static BanachLabel birr(int p, long long K, long long l);
    static BanachLabel bred(int p, const MuInvariant& mu, long long l);

    // (t, l) and (p-1-t, t+l) name the same supersingular quotient; the smaller pair
    std::pair<int, int> canonical() const;
    bool isomorphic(const BanachLabel& o) const;
    std::string str() const;
};

BanachLabel to_banach(const GaloisLabel& g);

struct Classification {
    int p = 0, n = 0, k = 0, kappa = 0;
    SlopeInfo slope;
    int nu = 0;
    int K_mod = 0;  // k + kappa mod p-1
    bool in_region = false;
    bool pi_reducible = false;
    GaloisLabel pi;
    bool pi_removed = false;
    std::vector<GaloisLabel> candidates;  // after removal, one per isomorphism class
    std::optional<GaloisLabel> shortcut;  // the nu > 1 two-component statement, when it applies
    bool determined() const { return candidates.size() == 1; }
};

// Removal of Irr_1 .. Irr_{nu-1} is by index mod p-1; survivors are then merged by isomorphism.
// Throws DomainError unless the slope is valid, VerificationError if a shortcut disagrees.
Classification classify_galois(const PadicElem& a, int k, const RamifiedCharacter& chi);

// Label-level form of the same computation once nu, region membership and mu are known.
Classification classify_labels(int p, int nu, long long K, bool in_region, const MuInvariant& mu);

// Irr_{p-1} when K = nu+1 and Irr_nu when K = nu+2 mod p-1, for nu > 1
std::optional<GaloisLabel> two_component_shortcut(int p, int nu, long long K);

struct BanachClassification {
    BanachLabel bpi;
    bool bpi_removed = false;
    std::vector<BanachLabel> candidates;
    bool determined() const { return candidates.size() == 1; }
};

// Direct computation with BIrr_l and B Pi.
BanachClassification classify_banach_labels(int p, int nu, long long K, bool in_region, const MuInvariant& mu);
BanachClassification classify_banach(const PadicElem& a, int k, const RamifiedCharacter& chi);

enum class SlopeVerdict { NotCovered, ConsistentWithReducible, IrreducibleForced };
std::string verdict_name(SlopeVerdict v);

struct EigenformCheck {
    SlopeVerdict verdict = SlopeVerdict::NotCovered;
    Rational w;
    bool half_integer = false;
    int alpha = 0;  // the disk index when consistent with reducible
    std::string reason;
};

// Membership of (a_p, k + (p-1)Z) in the union of D_alpha x {2 alpha + 1 - kappa}.
// chi has conductor p^n; m is the exponent of the conductor of psi_p.
EigenformCheck eigenform_slope_check(long long N, int k, const PadicElem& ap, int m, const RamifiedCharacter& chi);

struct FilteredModuleSpec {
    int k = 2;
    PadicElem a;
};

struct WeakAdmissibility {
    bool determinant = false;  // v_p(phi eigenvalue product) = k-1
    bool line_e1 = false;      // Hodge 0 <= Newton k-1-v_p(a)
    bool line_e2 = false;      // Hodge 0 <= Newton v_p(a)
    bool positive = false;     // v_p(a) > 0
    bool weakly_admissible() const { return determinant && line_e1 && line_e2; }
};

WeakAdmissibility weak_admissibility(const FilteredModuleSpec& spec);

// Every nu and component k + kappa mod p-1, both region outcomes: shortcut agreement,
// removal of Pi where the two-component statements need it, and the Banach side.
Report verify_classifier_labels(int p);
// The same comparisons through classify_galois / classify_banach on sample eigenvalues.
Report verify_classifier_points(int p, int n);

}  // namespace crystab
