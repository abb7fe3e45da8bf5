#include "crystab/cind.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace crystab {

std::string CosetKey::str() const {
    std::ostringstream os;
    os << "m=" << m << " b=" << B;
    if (j) os << "/p^" << j;
    if (pt >= 0) os << " pt=" << pt;
    return os.str();
}

namespace {

Mat2 from_imat(const IMat& g, int p, int N) { return Mat2::from_ints(p, N, g.a, g.b, g.c, g.d); }

int min_val(const Mat2& g) {
    int z = INT_MAX;
    for (const Qp* e : {&g.a, &g.b, &g.c, &g.d})
        if (!e->is_zero()) z = std::min(z, e->val());
    if (z == INT_MAX) throw PrecisionError("insufficient precision: matrix is zero to precision");
    return z;
}

int vertex_of(const Mat2& g, CosetKey& key) {
    const int p = g.a.p(), N = g.a.N();
    // a zero entry only bounds the valuation from below
    auto lv = [](const Qp& x) { return x.is_zero() ? x.absprec() : x.val(); };
    if (g.c.is_zero() && g.d.is_zero()) throw PrecisionError("insufficient precision to locate the tree vertex");
    if ((g.c.is_zero() && lv(g.c) <= g.d.val()) || (g.d.is_zero() && lv(g.d) <= g.c.val()))
        throw PrecisionError("insufficient precision to locate the tree vertex");
    const bool swap = lv(g.c) < lv(g.d);
    const Qp& b = swap ? g.a : g.b;
    const Qp& d = swap ? g.c : g.d;
    const int m = g.det().val() - 2 * d.val();
    Qp bp = b / d;
    key.m = m;
    key.j = 0;
    key.B = 0;
    if (bp.is_zero()) {
        if (bp.absprec() < m) throw PrecisionError("insufficient precision to locate the tree vertex");
        return m;
    }
    const int vb = bp.val();
    if (vb >= m) return m;
    key.j = std::max(0, -vb);
    // Teichmuller digits of b p^j modulo p^{m+j}
    Qp x = bp * Qp::p_power(p, N, key.j);
    int64_t place = 1;
    for (int i = 0; i < m + key.j; ++i) {
        int64_t dgt = x.residue(1);
        key.B += dgt * place;
        place *= p;
        x = (x - Qp::teichmuller(p, N, dgt)) * Qp::p_power(p, N, -1);
    }
    return m;
}

Qp teich_digits(int64_t B, int p, int N) {
    Qp s = Qp::zero(p, N);
    Qp pp = Qp::from_int(p, N, 1);
    for (; B; B /= p) {
        s = s + Qp::teichmuller(p, N, B % p) * pp;
        pp = pp * Qp::from_int(p, N, p);
    }
    return s;
}

}  // namespace

Mat2 section(const CosetKey& key, const Subgroup& H, int N) {
    const int p = H.p;
    Mat2 s{Qp::p_power(p, N, key.m), teich_digits(key.B, p, N) * Qp::p_power(p, N, -key.j), Qp::zero(p, N),
           Qp::from_int(p, N, 1)};
    if (H.is_kz()) return s;
    return s * from_imat(p1_section(key.pt, p, H.n), p, N);
}

int central_exponent(const Mat2& h) { return min_val(h); }

std::pair<CosetKey, Mat2> canonicalize(const Mat2& g, const Subgroup& H) {
    const int p = H.p, N = g.a.N();
    CosetKey key;
    vertex_of(g, key);
    Mat2 k = section(key, {p, 0}, N).inv() * g;
    if (H.is_kz()) return {key, k};
    const int z = min_val(k);
    Mat2 k0 = k.scaled(Qp::p_power(p, N, -z));
    key.pt = p1_point(k0.a.residue(H.n), k0.c.residue(H.n), p, H.n);
    Mat2 h = from_imat(p1_section(key.pt, p, H.n), p, N).inv() * k;
    return {key, h};
}

std::vector<PadicElem> sym_act_padic(const Mat2& g, const std::vector<PadicElem>& v, const Ctx& ctx) {
    const int r = static_cast<int>(v.size()) - 1;
    using Poly = std::vector<PadicElem>;
    auto mul = [&](const Poly& a, const Poly& b) {
        Poly c(a.size() + b.size() - 1, PadicElem::zero(ctx));
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].is_exact_zero()) continue;
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        }
        return c;
    };
    Poly L1{g.a.to_padic(ctx), g.c.to_padic(ctx)}, L2{g.b.to_padic(ctx), g.d.to_padic(ctx)};
    std::vector<Poly> P1(r + 1), P2(r + 1);
    P1[0] = P2[0] = Poly{PadicElem::from_int(ctx, 1)};
    for (int k = 1; k <= r; ++k) {
        P1[k] = mul(P1[k - 1], L1);
        P2[k] = mul(P2[k - 1], L2);
    }
    Poly out(r + 1, PadicElem::zero(ctx));
    for (int j = 0; j <= r; ++j) {
        if (v[j].is_exact_zero()) continue;
        Poly t = mul(P1[r - j], P2[j]);
        for (int i = 0; i <= r; ++i) out[i] += v[j] * t[i];
    }
    return out;
}

PCind::PCind(const RamifiedCharacter& chi, int r, int N) : chi_(&chi), r_(r), N_(N) {}

PCind::Vecp PCind::act_vec(const Mat2& h, const Vecp& v) const {
    const int p = chi_->ctx()->p;
    const int z = min_val(h);
    Mat2 i = h.scaled(Qp::p_power(p, N_, -z));
    if (!i.a.is_unit()) throw DomainError("element is not in I(n)Z");
    Vecp w = sym_act_padic(i, v, chi_->ctx());
    PadicElem t = chi_->eval(i.a);
    for (auto& x : w) x = x * t;
    return w;
}

void PCind::add(const Mat2& g, const Vecp& v) {
    auto [key, h] = canonicalize(g, subgroup());
    Vecp w = act_vec(h, v);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, std::move(w));
        return;
    }
    for (int i = 0; i <= r_; ++i) it->second[i] += w[i];
}

PCind& PCind::operator+=(const PCind& o) {
    for (const auto& [key, v] : o.terms_) {
        auto it = terms_.find(key);
        if (it == terms_.end()) terms_.emplace(key, v);
        else
            for (int i = 0; i <= r_; ++i) it->second[i] += v[i];
    }
    return *this;
}

PCind PCind::scaled(const PadicElem& s) const {
    PCind out = *this;
    for (auto& [key, v] : out.terms_)
        for (auto& x : v) x = x * s;
    return out;
}

PCind PCind::act(const Mat2& g) const {
    PCind out(*chi_, r_, N_);
    const Subgroup H = subgroup();
    for (const auto& [key, v] : terms_) out.add(g * section(key, H, N_), v);
    return out;
}

PCind PCind::hecke() const {
    PCind out(*chi_, r_, N_);
    const Subgroup H = subgroup();
    const int p = H.p;
    for (const auto& [key, v] : terms_) {
        Mat2 s = section(key, H, N_);
        for (int mu = 0; mu < p; ++mu) {
            Qp t = Qp::teichmuller(p, N_, mu);
            Mat2 up{Qp::from_int(p, N_, p), t, Qp::zero(p, N_), Qp::from_int(p, N_, 1)};
            Mat2 low{Qp::from_int(p, N_, 1), -t, Qp::zero(p, N_), Qp::from_int(p, N_, p)};
            out.add(s * up, sym_act_padic(low, v, chi_->ctx()));
        }
    }
    return out;
}

bool PCind::w_at_least(const Rational& b) const {
    for (const auto& [key, v] : terms_)
        for (const auto& x : v)
            if (!x.w_at_least(b)) return false;
    return true;
}

bool PCind::is_zero() const {
    for (const auto& [key, v] : terms_)
        for (const auto& x : v)
            if (!x.is_zero()) return false;
    return true;
}

std::string PCind::str() const {
    std::ostringstream os;
    for (const auto& [key, v] : terms_) {
        os << key.str() << " |";
        for (const auto& x : v) os << ' ' << x.serialize();
        os << '\n';
    }
    return os.str();
}

FCind::FCind(Subgroup H, int r, int kappa, int twist, int N) : H_(H), r_(r), kappa_(kappa), twist_(twist), N_(N) {}

Vec FCind::act_vec(const Mat2& h, const Vec& v) const {
    const int p = H_.p;
    const int z = min_val(h);
    Mat2 i = h.scaled(Qp::p_power(p, N_, -z));
    IMat im = reduce_mat(i, 1);
    int64_t det = idet(im, p);
    if (det == 0) throw DomainError("element is not in the inducing subgroup");
    Vec w = sym_act(im, v, p);
    int64_t s = zp::fp_pow(im.a, kappa_, p) * zp::fp_pow(det, twist_, p) % p;
    for (auto& x : w) x = x * s % p;
    return w;
}

void FCind::add(const Mat2& g, const Vec& v) {
    auto [key, h] = canonicalize(g, H_);
    add_key(key, act_vec(h, v));
}

void FCind::add_key(const CosetKey& key, const Vec& v) {
    Vec& cur = terms_[key];
    if (cur.empty()) cur.assign(r_ + 1, 0);
    bool nz = false;
    for (int i = 0; i <= r_; ++i) {
        cur[i] = zp::mod(cur[i] + v[i], H_.p);
        nz = nz || cur[i];
    }
    if (!nz) terms_.erase(key);
}

FCind& FCind::operator+=(const FCind& o) {
    for (const auto& [key, v] : o.terms_) add_key(key, v);
    return *this;
}

FCind FCind::scaled(int64_t s) const {
    FCind out(H_, r_, kappa_, twist_, N_);
    s = zp::mod(s, H_.p);
    if (!s) return out;
    out.terms_ = terms_;
    for (auto& [key, v] : out.terms_)
        for (auto& x : v) x = x * s % H_.p;
    return out;
}

FCind FCind::operator-(const FCind& o) const {
    FCind out = *this;
    out += o.scaled(-1);
    return out;
}

FCind FCind::act(const Mat2& g) const {
    FCind out(H_, r_, kappa_, twist_, N_);
    for (const auto& [key, v] : terms_) out.add(g * section(key, H_, N_), v);
    return out;
}

FCind FCind::hecke_T() const {
    const int p = H_.p;
    FCind out(H_, r_, kappa_, twist_, N_);
    for (const auto& [key, v] : terms_) {
        Mat2 s = section(key, H_, N_);
        for (int mu = 0; mu < p; ++mu) {
            Mat2 up{Qp::from_int(p, N_, p), Qp::teichmuller(p, N_, mu), Qp::zero(p, N_), Qp::from_int(p, N_, 1)};
            out.add(s * up, sym_act({1, zp::mod(-mu, p), 0, 0}, v, p));
        }
        out.add(s * Mat2::from_ints(p, N_, 1, 0, 0, p), sym_act({0, 0, 0, 1}, v, p));
    }
    return out;
}

std::string FCind::str() const {
    std::ostringstream os;
    for (const auto& [key, v] : terms_) {
        os << key.str() << " |";
        for (auto x : v) os << ' ' << x;
        os << '\n';
    }
    return os.str();
}

FCind reduce(const PCind& f, int kappa) {
    const Subgroup H = f.subgroup();
    FCind out(H, f.r(), kappa, 0, f.N());
    for (const auto& [key, v] : f.terms()) {
        Vec w(v.size());
        for (size_t i = 0; i < v.size(); ++i) w[i] = v[i].reduce();
        out.add_key(key, w);
    }
    return out;
}

int tree_distance(const Mat2& g1, const Mat2& g2) {
    Mat2 h = g1.inv() * g2;
    return h.det().val() - 2 * min_val(h);
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

int64_t primitive_root_mod_prime_power(int p) {
    for (int64_t g = 2;; ++g) {
        if (g % p == 0) continue;
        bool prim = true;
        for (int64_t q = 2; q < p; ++q)
            if ((p - 1) % q == 0 && zp::powmod(g, (p - 1) / q, p) == 1) prim = false;
        if (prim && zp::powmod(g, p - 1, static_cast<int64_t>(p) * p) != 1) return g;
    }
}

std::vector<IMat> borel_generators(int p, int n) {
    int64_t q = zp::ipow(p, n);
    int64_t g = primitive_root_mod_prime_power(p) % q;
    return {{1, 1, 0, 1}, {g, 0, 0, 1}, {1, 0, 0, g}};
}

}  // namespace

DoubleCosetReport double_cosets(int p, int n) {
    const int64_t q = zp::ipow(p, n);
    auto idx = [q](const IMat& m) { return static_cast<int>(((m.a * q + m.b) * q + m.c) * q + m.d); };
    const size_t size = static_cast<size_t>(q * q * q * q);
    UnionFind uf(size);
    std::vector<char> inv(size, 0);
    auto gens = borel_generators(p, n);
    for (int64_t a = 0; a < q; ++a)
        for (int64_t b = 0; b < q; ++b)
            for (int64_t c = 0; c < q; ++c)
                for (int64_t d = 0; d < q; ++d) {
                    IMat m{a, b, c, d};
                    if (idet(m, q) % p == 0) continue;
                    const int i = idx(m);
                    inv[i] = 1;
                    for (const auto& s : gens) {
                        uf.unite(i, idx(imul(s, m, q)));
                        uf.unite(i, idx(imul(m, s, q)));
                    }
                }
    DoubleCosetReport rep;
    std::map<int, long long> count;
    for (size_t i = 0; i < size; ++i)
        if (inv[i]) {
            ++count[uf.find(static_cast<int>(i))];
            ++rep.group_order;
        }
    rep.classes = static_cast<int>(count.size());
    std::vector<int> roots;
    for (int j = 1; j <= n + 1; ++j) {
        int64_t c = j == 1 ? 0 : zp::ipow(p, n + 1 - j) % q;
        int root = uf.find(idx({1, 0, c, 1}));
        roots.push_back(root);
        rep.sizes.push_back(count[root]);
        rep.total += count[root];
    }
    std::vector<int> sorted = roots;
    std::sort(sorted.begin(), sorted.end());
    rep.reps_distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
    return rep;
}

CosetPartitionReport coset_partition(int p, int n) {
    const int64_t q = zp::ipow(p, n);
    const int npts = static_cast<int>(q + q / p);
    std::vector<long long> count(npts, 0);
    auto gens = borel_generators(p, n);
    CosetPartitionReport rep;
    rep.section_consistent = true;
    rep.invariant = true;
    for (int64_t a = 0; a < q; ++a)
        for (int64_t b = 0; b < q; ++b)
            for (int64_t c = 0; c < q; ++c)
                for (int64_t d = 0; d < q; ++d) {
                    IMat m{a, b, c, d};
                    if (idet(m, q) % p == 0) continue;
                    int pt = p1_point(a, c, p, n);
                    ++count[pt];
                    IMat h = imul(iinv(p1_section(pt, p, n), q), m, q);
                    if (h.c % q != 0) rep.section_consistent = false;
                    for (const auto& s : gens) {
                        IMat ms = imul(m, s, q);
                        if (p1_point(ms.a, ms.c, p, n) != pt) rep.invariant = false;
                    }
                }
    rep.classes = static_cast<int>(std::count_if(count.begin(), count.end(), [](long long x) { return x > 0; }));
    rep.equal_sizes = std::all_of(count.begin(), count.end(), [&](long long x) { return x == count[0]; });
    return rep;
}

}  // namespace crystab
