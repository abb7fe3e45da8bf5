#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "crystab/classify.hpp"
#include "crystab/expr.hpp"
#include "crystab/suites.hpp"

using namespace crystab;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, ParseFail = 1, Domain = 2, Precision = 3, Internal = 4 };

struct Field {
    int p = 5, n = 2, kappa = 0, k = 2;
    long long c = 1;
    int M = 0;
};

// --precision beats CRYSTAB_PRECISION, which beats the default
int resolve_precision(int flag, int fallback) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("CRYSTAB_PRECISION")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw DomainError("CRYSTAB_PRECISION must be a positive integer");
        return static_cast<int>(v);
    }
    return fallback;
}

// 16, lowered until residues mod p^{M+1} fit in 64 bits
int default_precision(int p) {
    int M = 16;
    for (;;) {
        long double b = 1;
        for (int i = 0; i <= M; ++i) b *= p;
        if (b <= 4.0e18L || M == 1) return M;
        --M;
    }
}

json mu_json(const MuInvariant& mu) {
    json j;
    if (!mu.ambiguous()) j["mu"] = mu.branch_set.front().str();
    if (mu.nu > 1) j["mu_power"] = mu.mu_power.str();
    json set = json::array();
    for (const auto& x : mu.branch_set) set.push_back(x.str());
    j["branch_set"] = set;
    j["branch_in_fp"] = mu.in_fp;
    return j;
}

json galois_json(const GaloisLabel& g) {
    json j;
    const bool irr = g.kind == GaloisLabel::Kind::Irreducible;
    j["kind"] = irr ? "irreducible" : "reducible";
    if (irr) j["h"] = g.h;
    j["l"] = g.l;
    if (!irr) j.update(mu_json(g.mu));
    j["label"] = g.str();
    return j;
}

json banach_json(const BanachLabel& b) {
    json j;
    const bool irr = b.kind == BanachLabel::Kind::BIrr;
    j["kind"] = irr ? "BIrr" : "BRed";
    j["t"] = b.t;
    j["l"] = b.l;
    if (!irr) j.update(mu_json(b.mu));
    j["label"] = b.str();
    return j;
}

std::string mu_text(const MuInvariant& mu) {
    if (!mu.ambiguous()) return mu.branch_set.front().str();
    std::string s = "{";
    for (size_t i = 0; i < mu.branch_set.size(); ++i) s += (i ? "," : "") + mu.branch_set[i].str();
    return s + "}";
}

struct Failure {
    int code;
    std::string kind;
    std::string message;
};

template <class F>
int guarded(bool as_json, F&& body) {
    Failure f{Ok, "", ""};
    try {
        return body();
    } catch (const ParseError& e) {
        f = {ParseFail, "parse", e.what()};
    } catch (const DomainError& e) {
        f = {Domain, "domain", e.what()};
    } catch (const PrecisionError& e) {
        f = {Precision, "precision", e.what()};
    } catch (const VerificationError& e) {
        f = {Internal, "verification", e.what()};
    }
    if (as_json) {
        json j;
        j["error"] = {{"kind", f.kind}, {"message", f.message}, {"exit_code", f.code}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cerr << "error: " << f.message << "\n";
    }
    return f.code;
}

void show_parse_error(const std::string& input, const ParseError& e) {
    std::cerr << "  " << input << "\n  " << std::string(e.pos, ' ') << "^\n";
}

ExprPtr parse_or_report(const std::string& input, bool as_json) {
    try {
        return parse_expr(input);
    } catch (const ParseError& e) {
        if (!as_json) show_parse_error(input, e);
        throw;
    }
}

int cmd_classify(const Field& f, const std::string& a_text, bool as_json) {
    return guarded(as_json, [&] {
        auto expr = parse_or_report(a_text, as_json);
        const int M = resolve_precision(f.M, default_precision(f.p));
        auto ctx = PadicContext::make({f.p, f.n, M, true});
        RamifiedCharacter chi(ctx, f.kappa, f.c);
        PadicElem a = eval_expr(*expr, chi);
        if (a.is_zero() && !a.is_exact_zero())
            throw PrecisionError("insufficient precision: a is indistinguishable from 0");
        if (a.is_exact_zero()) throw DomainError("a = 0 is excluded");

        Classification cl = classify_galois(a, f.k, chi);
        BanachClassification bc = classify_banach(a, f.k, chi);

        json out;
        out["input"] = {{"p", f.p}, {"n", f.n}, {"k", f.k}, {"kappa", chi.kappa()}, {"c", chi.c()},
                        {"a", print_expr(*expr)}, {"precision", M}};
        out["slope"] = to_string(cl.slope.w);
        out["nu"] = cl.nu;
        out["component"] = cl.K_mod;
        out["region"] = {{"alpha", cl.nu}, {"member", cl.in_region}};
        out["pi"] = galois_json(cl.pi);
        out["pi_removed"] = cl.pi_removed;
        json g = json::array(), b = json::array();
        for (const auto& x : cl.candidates) g.push_back(galois_json(x));
        for (const auto& x : bc.candidates) b.push_back(banach_json(x));
        out["galois"] = g;
        out["banach"] = b;
        out["determined"] = cl.determined();
        out["candidates"] = cl.candidates.size();

        if (as_json) {
            std::cout << out.dump(2) << "\n";
            return Ok;
        }
        std::cout << "a          " << print_expr(*expr) << "  (p=" << f.p << " n=" << f.n << " k=" << f.k
                  << " kappa=" << chi.kappa() << " c=" << chi.c() << " M=" << M << ")\n";
        std::cout << "slope      " << to_string(cl.slope.w) << "  nu=" << cl.nu << "\n";
        std::cout << "component  k+kappa = " << cl.K_mod << " mod " << f.p - 1 << "\n";
        std::cout << "region     D_" << cl.nu << (cl.in_region ? " member" : " not a member") << "\n";
        std::cout << (cl.determined() ? "determined\n" : "not determined\n");
        for (const auto& x : cl.candidates) {
            std::cout << "galois     " << (x.kind == GaloisLabel::Kind::Irreducible ? "irreducible " : "reducible ")
                      << x.str() << "\n";
            if (x.kind == GaloisLabel::Kind::Reducible)
                std::cout << "mu         " << mu_text(x.mu) << (x.mu.nu > 1 ? "  mu^" + std::to_string(2 * x.mu.nu - 1) +
                                                                             " = " + x.mu.mu_power.str()
                                                                       : "")
                          << "\n";
        }
        for (const auto& x : bc.candidates) std::cout << "banach     " << x.str() << "\n";
        return Ok;
    });
}

int cmd_region(const Field& f, const std::string& a_text, int alpha, bool as_json) {
    return guarded(as_json, [&] {
        auto expr = parse_or_report(a_text, as_json);
        const int M = resolve_precision(f.M, default_precision(f.p));
        auto ctx = PadicContext::make({f.p, f.n, M, true});
        RamifiedCharacter chi(ctx, f.kappa, f.c);
        PadicElem a = eval_expr(*expr, chi);
        if (alpha < 1 || 2 * alpha > f.p - 1) throw DomainError("alpha must lie in 1..(p-1)/2");
        const bool member = region_member(a, alpha, chi);
        json out;
        out["input"] = {{"p", f.p}, {"n", f.n}, {"kappa", chi.kappa()}, {"c", chi.c()}, {"a", print_expr(*expr)},
                        {"alpha", alpha}, {"precision", M}};
        out["slope"] = a.is_zero() ? "inf" : to_string(a.w());
        out["member"] = member;
        if (as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cout << "D_" << alpha << (member ? " member" : " not a member") << "  slope "
                      << out["slope"].get<std::string>() << "\n";
        return Ok;
    });
}

int cmd_slope_check(const Field& f, long long N, int m, const std::string& a_text, bool as_json) {
    return guarded(as_json, [&] {
        auto expr = parse_or_report(a_text, as_json);
        const int M = resolve_precision(f.M, default_precision(f.p));
        auto ctx = PadicContext::make({f.p, f.n, M, true});
        RamifiedCharacter chi(ctx, f.kappa, f.c);
        EigenformCheck ec = eigenform_slope_check(N, f.k, eval_expr(*expr, chi), m, chi);
        json out;
        out["input"] = {{"p", f.p}, {"n", f.n}, {"N", N}, {"k", f.k}, {"m", m}, {"kappa", chi.kappa()},
                        {"c", chi.c()}, {"ap", print_expr(*expr)}, {"precision", M}};
        out["slope"] = to_string(ec.w);
        out["verdict"] = verdict_name(ec.verdict);
        if (ec.alpha) out["alpha"] = ec.alpha;
        out["reason"] = ec.reason;
        if (as_json)
            std::cout << out.dump(2) << "\n";
        else
            std::cout << verdict_name(ec.verdict) << "  slope " << to_string(ec.w) << "  " << ec.reason << "\n";
        return Ok;
    });
}

int cmd_verify(const std::string& suite, int p, int n, int k, int M_flag) {
    return guarded(false, [&] {
        SuiteParams sp{p, n, k, resolve_precision(M_flag, 0)};
        Report rep = run_suite(suite, sp);
        std::cout << rep.str();
        size_t fails = 0;
        for (const auto& l : rep.lines()) fails += !l.ok;
        std::cerr << rep.lines().size() << " checks, " << fails << " failed\n";
        return fails ? Internal : Ok;
    });
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t used = 0;
        long long num = std::stoll(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash)) throw std::invalid_argument(s);
        long long den = 1;
        if (slash != std::string::npos) {
            den = std::stoll(s.substr(slash + 1), &used);
            if (used != s.size() - slash - 1 || den == 0) throw std::invalid_argument(s);
        }
        return Rational(num, den);
    } catch (const std::logic_error&) {
        throw DomainError("bad slope '" + s + "', expected num/den");
    }
}

struct Row {
    int k_mod = 0;
    Rational slope;
    std::string nu, in_region, determined, label, mu;
};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

void fill_row(Row& r, const Field& f, const RamifiedCharacter& chi) {
    const Ctx& ctx = chi.ctx();
    try {
        Rational m = r.slope / ctx->w_unit();
        if (m.denominator() != 1 || m <= Rational(0)) throw DomainError("slope is not w of a power of S");
        PadicElem a = PadicElem::pi(ctx).pow(m.numerator());
        // the weight in the component with k >= 2
        const int k = 2 + static_cast<int>(zp::mod(r.k_mod - chi.kappa() - 2, f.p - 1));
        Classification cl = classify_galois(a, k, chi);
        r.nu = std::to_string(cl.nu);
        r.in_region = cl.in_region ? "true" : "false";
        r.determined = cl.determined() ? "true" : "false";
        for (const auto& g : cl.candidates) {
            r.label += (r.label.empty() ? "" : "; ") + g.str();
            if (g.kind == GaloisLabel::Kind::Reducible) r.mu = mu_text(g.mu);
        }
    } catch (const std::exception& e) {
        r.label = std::string("error: ") + e.what();
    }
}

int cmd_table(const Field& f, const std::string& kmods_text, const std::string& slopes_text, bool as_json, int threads) {
    return guarded(as_json, [&] {
        const int M = resolve_precision(f.M, default_precision(f.p));
        auto ctx = PadicContext::make({f.p, f.n, M, true});
        const RamifiedCharacter chi(ctx, f.kappa, f.c);

        std::vector<int> kmods;
        if (kmods_text == "all")
            for (int i = 0; i < f.p - 1; ++i) kmods.push_back(i);
        else
            for (const auto& s : split_list(kmods_text)) {
                int v;
                try {
                    v = std::stoi(s);
                } catch (const std::logic_error&) {
                    throw DomainError("bad component '" + s + "'");
                }
                kmods.push_back(static_cast<int>(zp::mod(v, f.p - 1)));
            }
        std::vector<Rational> slopes;
        for (const auto& s : split_list(slopes_text)) slopes.push_back(parse_rational(s));

        std::vector<Row> rows;
        for (int km : kmods)
            for (const auto& w : slopes) rows.push_back(Row{km, w, "", "", "", "", ""});

        const size_t workers = std::max<size_t>(1, std::min<size_t>(threads, rows.size()));
        std::vector<std::thread> pool;
        for (size_t t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (size_t i = t; i < rows.size(); i += workers) fill_row(rows[i], f, chi);
            });
        for (auto& th : pool) th.join();

        if (as_json) {
            json arr = json::array();
            auto cell = [](const std::string& v) -> json {
                if (v.empty()) return nullptr;
                if (v == "true" || v == "false") return v == "true";
                return std::stoi(v);
            };
            for (const auto& r : rows)
                arr.push_back({{"p", f.p}, {"n", f.n}, {"kappa", chi.kappa()}, {"c", chi.c()}, {"k_mod", r.k_mod},
                               {"slope", to_string(r.slope)}, {"nu", cell(r.nu)}, {"in_region", cell(r.in_region)},
                               {"determined", cell(r.determined)}, {"label", r.label},
                               {"mu", r.mu.empty() ? json(nullptr) : json(r.mu)}});
            std::cout << arr.dump(2) << "\n";
            return Ok;
        }
        std::cout << "p,n,kappa,c,k_mod,slope,nu,in_region,determined,label,mu\n";
        for (const auto& r : rows)
            std::cout << f.p << "," << f.n << "," << chi.kappa() << "," << chi.c() << "," << r.k_mod << ","
                      << to_string(r.slope) << "," << r.nu << "," << r.in_region << "," << r.determined << ","
                      << csv_field(r.label) << "," << csv_field(r.mu) << "\n";
        return Ok;
    });
}

void field_options(CLI::App* app, Field& f, bool with_k) {
    app->add_option("--p", f.p, "odd prime")->required();
    app->add_option("--n", f.n, "conductor exponent, at least 2")->required();
    if (with_k) app->add_option("--k", f.k, "weight, at least 2")->required();
    app->add_option("--kappa", f.kappa, "tame exponent mod p-1")->default_val(0);
    app->add_option("--c", f.c, "eps_p(1+p) = zeta_{p^{n-1}}^c, p does not divide c")->default_val(1);
    app->add_option("--precision", f.M, "coefficient precision M (digits mod p^M)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crystab: reductions of crystabelline representations"};
    app.require_subcommand(1);

    Field cf;
    std::string a_text;
    bool json_out = false;
    auto* classify = app.add_subcommand("classify", "classify the reduction for an eigenvalue a");
    field_options(classify, cf, true);
    classify->add_option("--a", a_text, "eigenvalue expression")->required();
    classify->add_flag("--json", json_out, "JSON output");

    Field rf;
    int alpha = 1;
    auto* region = app.add_subcommand("region", "membership of a in D_alpha");
    field_options(region, rf, false);
    region->add_option("--a", a_text, "eigenvalue expression")->required();
    region->add_option("--alpha", alpha, "disk index")->required();
    region->add_flag("--json", json_out, "JSON output");

    Field sf;
    long long level = 1;
    int m_exp = 0;
    auto* slope = app.add_subcommand("slope-check", "eigenform slope check against the regions");
    field_options(slope, sf, true);
    slope->add_option("--N", level, "tame level, prime to p")->default_val(1);
    slope->add_option("--m", m_exp, "conductor exponent of psi_p")->required();
    slope->add_option("--ap", a_text, "a_p expression")->required();
    slope->add_flag("--json", json_out, "JSON output");

    std::string suite = "all";
    int vp = 3, vn = 2, vk = 0, vM = 0;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> choices = suite_names();
    choices.push_back("all");
    verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(choices))->default_val("all");
    verify->add_option("--p", vp, "odd prime")->default_val(3);
    verify->add_option("--n", vn, "conductor exponent")->default_val(2);
    verify->add_option("--k", vk, "single weight where the suite sweeps weights");
    verify->add_option("--precision", vM, "coefficient precision M");

    Field tf;
    std::string kmods = "all", slopes = "1/2,3/2";
    int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto* table = app.add_subcommand("table", "classification over components and slopes");
    field_options(table, tf, false);
    table->add_option("--k-mods", kmods, "components k+kappa mod p-1, comma separated, or 'all'")->default_val("all");
    table->add_option("--slopes", slopes, "slopes num/den, comma separated")->default_val("1/2,3/2");
    table->add_option("--threads", threads, "worker threads");
    table->add_flag("--json", json_out, "JSON instead of CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ParseFail;
    }

    if (*classify) return cmd_classify(cf, a_text, json_out);
    if (*region) return cmd_region(rf, a_text, alpha, json_out);
    if (*slope) return cmd_slope_check(sf, level, m_exp, a_text, json_out);
    if (*verify) return cmd_verify(suite, vp, vn, vk, vM);
    if (*table) return cmd_table(tf, kmods, slopes, json_out, threads);
    return ParseFail;
}
