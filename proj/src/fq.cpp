#include "crystab/fq.hpp"

#include <algorithm>

#include "crystab/zp.hpp"

namespace crystab {

int FqElem::nonresidue(int p) {
    for (int g = 2; g < p; ++g)
        if (zp::powmod(g, (p - 1) / 2, p) == p - 1) return g;
    throw DomainError("no quadratic non-residue");
}

FqElem::FqElem(int p, int64_t a, int64_t b) : p_(p), g_(nonresidue(p)), a_(zp::mod(a, p)), b_(zp::mod(b, p)) {}

FqElem FqElem::operator+(const FqElem& o) const {
    FqElem r = *this;
    r.a_ = (a_ + o.a_) % p_;
    r.b_ = (b_ + o.b_) % p_;
    return r;
}

FqElem FqElem::operator-() const {
    FqElem r = *this;
    r.a_ = (p_ - a_) % p_;
    r.b_ = (p_ - b_) % p_;
    return r;
}

FqElem FqElem::operator-(const FqElem& o) const { return *this + (-o); }

FqElem FqElem::operator*(const FqElem& o) const {
    FqElem r = *this;
    r.a_ = (a_ * o.a_ + b_ * o.b_ % p_ * g_) % p_;
    r.b_ = (a_ * o.b_ + b_ * o.a_) % p_;
    return r;
}

FqElem FqElem::inv() const {
    if (is_zero()) throw DomainError("inverse of zero in F_q");
    // (a + b i)^{-1} = (a - b i) / (a^2 - g b^2)
    int64_t nrm = zp::mod(a_ * a_ - b_ * b_ % p_ * g_, p_);
    int64_t ni = zp::invmod(nrm, p_);
    FqElem r = *this;
    r.a_ = a_ * ni % p_;
    r.b_ = zp::mod(-b_ * ni, p_);
    return r;
}

FqElem FqElem::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    FqElem r(p_, 1), x = *this;
    while (e) {
        if (e & 1) r = r * x;
        x = x * x;
        e >>= 1;
    }
    return r;
}

std::string FqElem::str() const {
    if (b_ == 0) return std::to_string(a_);
    std::string s = a_ ? std::to_string(a_) + "+" : "";
    return s + (b_ == 1 ? "" : std::to_string(b_) + "*") + "i";
}

std::vector<FqElem> FqElem::roots(const FqElem& y, long long e, bool& in_fp) {
    const int p = y.p();
    std::vector<FqElem> out;
    for (int a = 0; a < p; ++a) {
        FqElem x(p, a);
        if (x.pow(e) == y) out.push_back(x);
    }
    in_fp = !out.empty();
    if (in_fp) return out;
    for (int a = 0; a < p; ++a)
        for (int b = 1; b < p; ++b) {
            FqElem x(p, a, b);
            if (x.pow(e) == y) out.push_back(x);
        }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace crystab
