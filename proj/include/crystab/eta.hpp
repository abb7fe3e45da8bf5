#pragma once
#include <gmpxx.h>

#include <string>
#include <vector>

#include "crystab/characters.hpp"
#include "crystab/fpmod.hpp"
#include "crystab/report.hpp"

namespace crystab {

// Homogeneous degree-r polynomial over Z/p^M, coefficient of x^{r-j} y^j at index j.
using ZPoly = std::vector<int64_t>;

// (1 t; 0 1) acting by y -> t x + y.
ZPoly act_upper(int64_t t, const ZPoly& v, int64_t pM);

struct EtaFamily {
    int p = 0, r = 0, M = 0;
    int64_t pM = 0;
    ZPoly eta;
    std::vector<ZPoly> eta_a;  // eta_0 .. eta_{p-1}
};

// eta = x^r - 2 x^{r-p+1} y^{p-1} + x^{r-2p+2} y^{2p-2} and
// eta_alpha = sum_mu [mu]^alpha (1 [mu]; 0 1) eta, with 0^0 = 1.
EtaFamily build_eta(int p, int r, int M);

Report verify_eta_identities(const EtaFamily& fam);
// sum_mu [mu]^beta over F_p for beta = 0 .. 3(p-1)
Report power_sum_facts(int p, int M);
// the two binomial congruences behind the shape of eta_alpha
Report lucas_ingredients(int p);

// C^{(alpha,s)}_xi = sum_mu [mu]^{p-1-alpha} eps^{-1}(1 - xi [mu] p^s)
PadicElem c_constant(int alpha, int s, int64_t xi, const RamifiedCharacter& chi);
// The predicted value up to a factor 1 + O(pi_p) for a unit xi; exact when s >= n or
// (alpha, s) = (p-1, n-1).  is_exact tells which.
PadicElem c_constant_leading(int alpha, int s, int64_t xi, const RamifiedCharacter& chi, bool& is_exact);
Report verify_c_constants(const RamifiedCharacter& chi);

// zeta = eps^{-1}(1 - p)
PadicElem zeta_minus(const RamifiedCharacter& chi);
// sum_{s=1}^{p-1} (-1)^{alpha-s} C^{(s,1)}_1 C^{(<alpha-s>_-,1)}_1; throws when
// w(value + f (1-zeta)^alpha / alpha!) < alpha + 1, where f = 2 for (n, alpha) = (2, p-1)
// and f = 1 otherwise
PadicElem script_C(int alpha, const RamifiedCharacter& chi);
// the same law with f = 1 throughout; false exactly at (n, alpha) = (2, p-1)
bool script_C_single_law(int alpha, const RamifiedCharacter& chi);
Report verify_script_C(const RamifiedCharacter& chi);

// Coefficients coeff_{z,t}(c_xi(u,s)) on the basis (-1)^{r+kappa} sum_mu [mu]^z [xi]^t (0 -1; 1 [mu]),
// z = 0..p-1, t = 0..p-2.  Only r + kappa mod p-1 matters.
struct CoeffTable {
    int p = 0;
    std::vector<std::vector<long long>> c;  // c[z][t]

    explicit CoeffTable(int p_ = 0) : p(p_), c(p_, std::vector<long long>(p_ > 1 ? p_ - 1 : 0, 0)) {}
    CoeffTable& operator+=(const CoeffTable& o);
    CoeffTable scaled(long long s) const;
    bool operator==(const CoeffTable& o) const { return c == o.c; }
};

// closed forms, 0 <= u <= p-1, 1 <= s <= p-1
CoeffTable coeff_table(int p, int u, int s, long long r_plus_kappa);
// the defining double sum over j, collected by monomial
CoeffTable coeff_table_direct(int p, int u, int s, long long r_plus_kappa);

struct NiceTerm {
    long long lambda;
    int u, s;
};

CoeffTable combo_table(int p, const std::vector<NiceTerm>& combo, long long r_plus_kappa);
// coeff_{z,t} = 0 mod p for all z and p-1-nu < t <= p-2
bool is_nice(const CoeffTable& tab, int nu);
bool is_nice(int p, const std::vector<NiceTerm>& combo, int nu, long long r_plus_kappa);
// ((-1)^{u_i} lambda_i)(binom(u_i, Delta-j))_{i, 1 <= j < nu} = 0 mod p
bool nice_by_matrix(int p, const std::vector<NiceTerm>& combo, int nu, int Delta);

// Van_m(u,v) = (binom(u+i, v+j))_{0 <= i,j <= m}
mpq_class van_det(int m, int u, int v);
mpq_class van_det_direct(int m, int u, int v);
// exact determinant of a square rational matrix
mpq_class det_exact(std::vector<std::vector<mpq_class>> A);

enum class NiceCase { Sub51, Case1, Case2, Case3, Case4, Case5, Main55, Star55 };
NiceCase parse_nice_case(const std::string& id);
std::string nice_case_name(NiceCase c);

struct NiceSolution {
    std::vector<NiceTerm> combo;  // lambda as residues mod p
    bool nice = false;            // for the star case: nice after removing the explicit part
    bool certificate = false;     // the case's invertibility / unit condition
    std::string detail;
};

// Throws DomainError outside the case's parameter range and VerificationError
// if the system the case needs is singular.
NiceSolution solve_nice_case(NiceCase c, int p, int nu, int w, long long r_plus_kappa);
// every case over its full parameter range at p
Report verify_nice_cases(int p);

// ([z+1] - [z] - 1)/p = -sum_{j=1}^{p-1} [-z]^j / j mod p, z = 0..p-1
Report teich_delta_identity(int p, int M);

// Gamma(m) = (m-1)!
mpz_class gamma_int(int m);

}  // namespace crystab
