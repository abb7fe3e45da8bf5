#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace crystab {

// F_p or F_{p^2} = F_p[i]/(i^2 - g), g the least quadratic non-residue.
class FqElem {
public:
    FqElem() = default;
    FqElem(int p, int64_t a, int64_t b = 0);

    static int nonresidue(int p);

    int p() const { return p_; }
    int64_t a() const { return a_; }
    int64_t b() const { return b_; }
    bool in_prime_field() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator-() const;
    FqElem operator*(const FqElem& o) const;
    FqElem inv() const;
    FqElem pow(long long e) const;
    FqElem frobenius() const { return pow(p_); }
    bool operator==(const FqElem& o) const { return p_ == o.p_ && a_ == o.a_ && b_ == o.b_; }
    bool operator<(const FqElem& o) const { return a_ != o.a_ ? a_ < o.a_ : b_ < o.b_; }

    std::string str() const;

    // All x in F_p (or F_{p^2} when none exists in F_p) with x^e = y.
    static std::vector<FqElem> roots(const FqElem& y, long long e, bool& in_fp);

private:
    int p_ = 0;
    int g_ = 0;
    int64_t a_ = 0, b_ = 0;
};

}  // namespace crystab
