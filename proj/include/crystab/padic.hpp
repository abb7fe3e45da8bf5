#pragma once
#include <boost/rational.hpp>
#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crystab/zp.hpp"

namespace crystab {

using Rational = boost::rational<long long>;

std::string to_string(const Rational& q);

struct PadicConfig {
    int p = 5;
    int n = 2;
    int M = 16;
    bool quad = false;
};

// Shared immutable data for K_n = Q_p(zeta_{p^n}) or its quadratic extension
// L = K_n(sqrt(varpi)).  Elements are polynomials in a uniformizer pi of degree
// < E, where pi = varpi = zeta - 1 (quad = false) or pi^2 = varpi (quad = true).
class PadicContext {
public:
    static std::shared_ptr<const PadicContext> make(const PadicConfig& cfg);

    int p, n, M;
    bool quad;
    int e;        // p^{n-1}(p-1)
    int E;        // degree of the model over Q_p
    int64_t pM;   // p^M
    std::vector<int64_t> ppow;
    std::vector<int64_t> f;          // Eisenstein polynomial, f[E] = 1
    std::vector<int64_t> p_over_pi;  // p / pi as a polynomial of degree < E
    std::vector<int64_t> theta;      // p / pi^E, a unit
    std::vector<int64_t> theta_inv;
    bool acc_safe;

    // units of w per step of v_pi: w(pi) = w_unit
    Rational w_unit() const;

    PadicConfig config() const { return {p, n, M, quad}; }

private:
    PadicContext() = default;
};

using Ctx = std::shared_ptr<const PadicContext>;

struct Valuations {
    std::optional<Rational> v_p;   // empty means infinite (exact zero)
    std::optional<long long> v_pi;
    std::optional<Rational> w;
};

// pi^shift * body, body a unit known to `prec` units of v_pi.
// A zero carries an absolute precision in units of v_pi; INT_MAX is exact.
class PadicElem {
public:
    PadicElem() = default;

    static PadicElem zero(const Ctx& ctx, int absprec = INT_MAX);
    static PadicElem from_int(const Ctx& ctx, long long z);
    // z is a residue mod p^M, known only to that precision
    static PadicElem from_residue(const Ctx& ctx, int64_t z);
    static PadicElem pi(const Ctx& ctx);
    static PadicElem varpi(const Ctx& ctx);
    static PadicElem teichmuller(const Ctx& ctx, int64_t xi);
    // zeta_{p^n} = 1 + varpi
    static PadicElem zeta(const Ctx& ctx);

    const Ctx& ctx() const { return ctx_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && sh_ == INT_MAX; }
    int shift() const { return sh_; }
    int relprec() const { return zero_ ? 0 : prec_; }
    int absprec() const;
    const std::vector<int64_t>& body() const { return body_; }

    PadicElem operator-() const;
    PadicElem operator+(const PadicElem& o) const;
    PadicElem operator-(const PadicElem& o) const;
    PadicElem operator*(const PadicElem& o) const;
    PadicElem operator/(const PadicElem& o) const;
    PadicElem& operator+=(const PadicElem& o) { return *this = *this + o; }
    PadicElem& operator-=(const PadicElem& o) { return *this = *this - o; }
    PadicElem& operator*=(const PadicElem& o) { return *this = *this * o; }
    PadicElem mul_int(long long z) const;
    PadicElem inv() const;
    PadicElem pow(long long k) const;
    PadicElem sqrt() const;

    long long v_pi() const;
    Rational v_p() const;
    Rational w() const;
    Valuations valuations() const;
    // True when w(x) >= b is certified; throws when precision cannot decide.
    bool w_at_least(const Rational& b) const;
    // Image in the residue field F_p of an integral element.
    int64_t reduce() const;
    // Zero or equal to precision.
    bool equals(const PadicElem& o) const { return (*this - o).is_zero(); }

    std::string serialize() const;

private:
    Ctx ctx_;
    bool zero_ = true;
    int sh_ = INT_MAX;
    int prec_ = 0;
    std::vector<int64_t> body_;

    static PadicElem make(const Ctx& ctx, int sh, std::vector<int64_t> body, int prec);
    void check_same(const PadicElem& o) const;
};

// Certified lower bound for w(x - y).
bool w_diff_at_least(const PadicElem& x, const PadicElem& y, const Rational& b);

}  // namespace crystab
