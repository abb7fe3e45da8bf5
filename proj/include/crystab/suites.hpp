#pragma once
#include <string>
#include <vector>

#include "crystab/report.hpp"

namespace crystab {

struct SuiteParams {
    int p = 3;
    int n = 2;
    int k = 0;  // 0: sweep a default set of weights
    int M = 0;  // 0: per-suite default precision
};

// eta identities for r = 2p-2 .. 2p+6, power sums, binomial congruences
Report suite_eta(const SuiteParams& sp);
// chain dimensions, KZ-stability, graded-piece equivariance, the quotient W
Report suite_filtration(const SuiteParams& sp);
// K / I(n) and the double cosets I(n) x_j B in GL2(Z/p^n)
Report suite_cosets(const SuiteParams& sp);
// sum_mu delta(x_i^{-1} (p [mu]; 0 1)) = (a p^{2-k}, 0, ..., 0)
Report suite_delta(const SuiteParams& sp);
// C-constant leading terms and the script C law
Report suite_constants(const SuiteParams& sp);
// Van_m(u, v) against exact determinants, 0 <= m, u, v <= 8
Report suite_vandermonde(const SuiteParams& sp);
// every nice-combination case and the matrix criterion on random combinations
Report suite_nice(const SuiteParams& sp);
// coefficient tables, Teichmuller difference quotient, star sums, classifier consistency
Report suite_identities(const SuiteParams& sp);

const std::vector<std::string>& suite_names();  // without "all"
// name in suite_names() or "all"; throws DomainError otherwise
Report run_suite(const std::string& name, const SuiteParams& sp);

// ((-1)^{u_i} lambda_i) binom(u_i, Delta - j) criterion against the definition on random combos
Report nice_criterion_agreement(int count, unsigned seed);

}  // namespace crystab
