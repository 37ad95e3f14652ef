#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iqpow/iqpow.hpp"

using json = nlohmann::ordered_json;
using namespace iqpow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNonCoprime = 3;

Method parse_method(const std::string& name) {
    if (name == "recursive") return Method::recursive;
    if (name == "repeated") return Method::repeated;
    if (name == "hnf") return Method::hnf;
    throw Error("unknown method '" + name + "'");
}

Int parse_int(const std::string& text) {
    if (text.empty()) throw Error("empty integer literal");
    std::size_t k = text[0] == '-' ? 1 : 0;
    if (k == text.size()) throw Error("bad integer literal '" + text + "'");
    for (std::size_t i = k; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw Error("bad integer literal '" + text + "'");
    return Int(text);
}

std::uint32_t parse_u32(const std::string& text, const char* what) {
    try {
        unsigned long v = std::stoul(text);
        if (v > 0xffffffffUL) throw Error("");
        return static_cast<std::uint32_t>(v);
    } catch (...) {
        throw Error(std::string("bad value for ") + what + ": '" + text + "'");
    }
}

struct PowerOptions {
    bool ff = false, nf = false;
    std::string p, f, h = "0";
    std::string delta;
    std::string S, Q, P;
    unsigned m = 1;
    std::string method = "recursive";
    bool reduce = true;
    std::string format = "json";
};

struct CaseOptions {
    bool ff = false, nf = false;
    unsigned cases = 100;
    unsigned mmax = 8;
    std::uint64_t seed = 0;
};

struct BenchOptions {
    bool ff = false, nf = false;
    std::string p = "13";
    unsigned g = 2;
    std::string delta = "-23";
    unsigned mmax = 32;
    std::uint64_t seed = 0;
    bool reduce = true;
};

int run_power(const PowerOptions& opt) {
    if (opt.ff == opt.nf) throw Error("pass exactly one of --ff / --nf");
    if (opt.Q.empty() || opt.P.empty()) throw Error("--Q and --P are required");
    Method method = parse_method(opt.method);

    json out;
    if (opt.ff) {
        if (opt.p.empty() || opt.f.empty()) throw Error("--p and --f are required with --ff");
        std::uint32_t p = parse_u32(opt.p, "--p");
        Curve curve(p, parse_poly(opt.f, p), parse_poly(opt.h, p));
        Poly s = opt.S.empty() ? Poly::one(p) : parse_poly(opt.S, p);
        FfIdeal a(curve, s, parse_poly(opt.Q, p), parse_poly(opt.P, p));
        FfIdeal r = pow(a, opt.m, method, opt.reduce);
        out["S"] = to_string(r.S());
        out["Q"] = to_string(r.Q());
        out["P"] = to_string(r.P());
        out["context"] = {{"p", opt.p}, {"f", to_string(curve.f())}, {"h", to_string(curve.h())}};
    } else {
        if (opt.delta.empty()) throw Error("--delta is required with --nf");
        Int delta = parse_int(opt.delta);
        Int s = opt.S.empty() ? Int(1) : parse_int(opt.S);
        NfIdeal a(delta, s, parse_int(opt.Q), parse_int(opt.P));
        NfIdeal r = pow(a, opt.m, method, opt.reduce);
        out["S"] = r.S().str();
        out["Q"] = r.Q().str();
        out["P"] = r.P().str();
        out["context"] = {{"delta", delta.str()}};
    }
    if (opt.format == "csv") {
        std::cout << "S,Q,P\n"
                  << out["S"].get<std::string>() << ',' << out["Q"].get<std::string>()
                  << ',' << out["P"].get<std::string>() << '\n';
    } else {
        std::cout << out.dump() << '\n';
    }
    return kExitOk;
}

struct KindReport {
    unsigned passed = 0;
    unsigned failed = 0;
    std::string first_failure;
};

void report_line(const std::string& kind, const KindReport& r, unsigned cases,
                 std::uint64_t seed) {
    std::cout << kind << ": " << r.passed << "/" << cases << " ok (seed " << seed << ")\n";
    if (r.failed > 0) std::cout << "first failing case:\n" << r.first_failure;
}

KindReport verify_ff(unsigned cases, unsigned mmax, std::uint64_t seed) {
    KindReport rep;
    for (std::uint64_t i = 0; i < cases; ++i) {
        FfCase tc = make_ff_case(seed, i, mmax);
        FfIdeal rec = pow(tc.ideal, tc.m, Method::recursive, true);
        FfIdeal unred = pow(tc.ideal, tc.m, Method::recursive, false);
        FfIdeal rep2 = pow(tc.ideal, tc.m, Method::repeated);
        FfIdeal hnf = pow(tc.ideal, tc.m, Method::hnf);
        bool ok = rec == rep2 && rep2 == hnf && rec == unred;
        if (ok) {
            ++rep.passed;
            continue;
        }
        ++rep.failed;
        if (rep.first_failure.empty()) {
            std::ostringstream os;
            os << "  kind=ff index=" << i << " seed=" << seed << " p=" << tc.curve.p()
               << " f=" << tc.curve.f() << " h=" << tc.curve.h() << " Q=" << tc.ideal.Q()
               << " P=" << tc.ideal.P() << " m=" << tc.m << "\n"
               << "  recursive=(" << rec.S() << ", " << rec.Q() << ", " << rec.P() << ")\n"
               << "  repeated =(" << rep2.S() << ", " << rep2.Q() << ", " << rep2.P() << ")\n"
               << "  hnf      =(" << hnf.S() << ", " << hnf.Q() << ", " << hnf.P() << ")\n";
            rep.first_failure = os.str();
        }
    }
    return rep;
}

KindReport verify_nf(unsigned cases, unsigned mmax, std::uint64_t seed) {
    KindReport rep;
    auto deltas = nf_delta_palette(seed);
    for (std::uint64_t i = 0; i < cases; ++i) {
        NfCase tc = make_nf_case(deltas, seed, i, mmax);
        NfIdeal rec = pow(tc.ideal, tc.m, Method::recursive, true);
        NfIdeal unred = pow(tc.ideal, tc.m, Method::recursive, false);
        NfIdeal hnf = pow(tc.ideal, tc.m, Method::hnf);
        bool ok = rec == hnf && rec == unred;
        if (ok) {
            ++rep.passed;
            continue;
        }
        ++rep.failed;
        if (rep.first_failure.empty()) {
            std::ostringstream os;
            os << "  kind=nf index=" << i << " seed=" << seed
               << " delta=" << tc.ideal.delta() << " Q=" << tc.ideal.Q()
               << " P=" << tc.ideal.P() << " m=" << tc.m << "\n"
               << "  recursive=(" << rec.S() << ", " << rec.Q() << ", " << rec.P() << ")\n"
               << "  hnf      =(" << hnf.S() << ", " << hnf.Q() << ", " << hnf.P() << ")\n";
            rep.first_failure = os.str();
        }
    }
    return rep;
}

int run_verify(const CaseOptions& opt) {
    if (opt.cases < 1) throw Error("--cases must be at least 1");
    if (opt.mmax < 1 || opt.mmax > kMaxExponent) throw Error("--mmax out of range");
    bool any_failed = false;
    bool both = !opt.ff && !opt.nf;
    if (opt.ff || both) {
        KindReport r = verify_ff(opt.cases, opt.mmax, opt.seed);
        report_line("ff", r, opt.cases, opt.seed);
        any_failed |= r.failed > 0;
    }
    if (opt.nf || both) {
        KindReport r = verify_nf(opt.cases, opt.mmax, opt.seed);
        report_line("nf", r, opt.cases, opt.seed);
        any_failed |= r.failed > 0;
    }
    return any_failed ? kExitMismatch : kExitOk;
}

struct BenchRow {
    std::string kind;
    std::string method;
    unsigned m;
    std::size_t size_param;
    long long wall_ns;
    std::size_t max_operand_size;
};

long long elapsed_ns(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

/* One benchmark row pair per exponent. Outputs of both methods are compared
 * before any timing is reported; a fast path that disagrees with the
 * reference is worthless. Operand size is the largest stored value each
 * method works with: recursion steps for `recursive`, components of the
 * intermediate ideals for `repeated`. */
int run_bench(const BenchOptions& opt) {
    if (opt.ff == opt.nf) throw Error("pass exactly one of --ff / --nf");
    if (opt.mmax < 1 || opt.mmax > kMaxExponent) throw Error("--mmax out of range");
    std::vector<BenchRow> rows;

    if (opt.ff) {
        std::uint32_t p = parse_u32(opt.p, "--p");
        if (opt.g < 1) throw Error("--g must be at least 1");
        std::mt19937_64 rng(detail::mix_seed(opt.seed, 0xbe9c4));
        FfInstance inst = make_ff_instance(rng, p, opt.g);
        const FfIdeal& a = inst.ideal;
        std::size_t size_param = static_cast<std::size_t>(a.Q().degree());
        for (unsigned m = 1; m <= opt.mmax; ++m) {
            auto t0 = std::chrono::steady_clock::now();
            FfIdeal rec = pow(a, m, Method::recursive, opt.reduce);
            long long rec_ns = elapsed_ns(t0);
            PowerTrace tr = power_trace(inst.curve, a.Q(), a.P(), m, opt.reduce);
            std::size_t rec_size = 0;
            for (const Poly& s : tr.steps())
                rec_size = std::max(rec_size,
                                    static_cast<std::size_t>(std::max(0, s.degree())));

            auto t1 = std::chrono::steady_clock::now();
            FfIdeal acc = a;
            for (unsigned k = 1; k < m; ++k) acc = acc * a;
            long long rep_ns = elapsed_ns(t1);
            std::size_t rep_size = 0;
            {
                FfIdeal walk = a;
                auto measure = [&](const FfIdeal& x) {
                    int d = std::max({x.S().degree(), x.Q().degree(), x.P().degree()});
                    rep_size = std::max(rep_size, static_cast<std::size_t>(std::max(0, d)));
                };
                measure(walk);
                for (unsigned k = 1; k < m; ++k) {
                    walk = walk * a;
                    measure(walk);
                }
            }

            if (rec != acc) {
                std::cerr << "bench: method disagreement at m=" << m << " (ff)\n";
                return kExitMismatch;
            }
            rows.push_back({"ff", "recursive", m, size_param, rec_ns, rec_size});
            rows.push_back({"ff", "repeated", m, size_param, rep_ns, rep_size});
        }
    } else {
        Int delta = parse_int(opt.delta);
        std::mt19937_64 rng(detail::mix_seed(opt.seed, 0xbe9c4));
        NfIdeal a = nf_random_ideal(delta, rng());
        std::size_t size_param = bit_length(a.Q());
        for (unsigned m = 1; m <= opt.mmax; ++m) {
            auto t0 = std::chrono::steady_clock::now();
            NfIdeal rec = pow(a, m, Method::recursive, opt.reduce);
            long long rec_ns = elapsed_ns(t0);
            NfPowerTrace tr = nf_power_trace(a, m, opt.reduce);
            std::size_t rec_size = 0;
            for (const Int& s : tr.steps()) rec_size = std::max(rec_size, bit_length(s));

            auto t1 = std::chrono::steady_clock::now();
            NfIdeal acc = a;
            for (unsigned k = 1; k < m; ++k) acc = nf_hnf_mul(acc, a);
            long long rep_ns = elapsed_ns(t1);
            std::size_t rep_size = 0;
            {
                NfIdeal walk = a;
                auto measure = [&](const NfIdeal& x) {
                    rep_size = std::max({rep_size, bit_length(x.S()), bit_length(x.Q()),
                                         bit_length(x.P())});
                };
                measure(walk);
                for (unsigned k = 1; k < m; ++k) {
                    walk = nf_hnf_mul(walk, a);
                    measure(walk);
                }
            }

            if (rec != acc) {
                std::cerr << "bench: method disagreement at m=" << m << " (nf)\n";
                return kExitMismatch;
            }
            rows.push_back({"nf", "recursive", m, size_param, rec_ns, rec_size});
            rows.push_back({"nf", "repeated", m, size_param, rep_ns, rep_size});
        }
    }

    std::cout << "kind,method,m,size_param,wall_ns,max_operand_size\n";
    for (const BenchRow& r : rows)
        std::cout << r.kind << ',' << r.method << ',' << r.m << ',' << r.size_param
                  << ',' << r.wall_ns << ',' << r.max_operand_size << '\n';
    return kExitOk;
}

/* Embedded end-to-end checks: the worked examples plus the identities the
 * recursion must satisfy, run over fresh random instances. */
int run_selftest() {
    unsigned passed = 0;
    std::string failed_name;
    auto check = [&](const char* name, bool ok) {
        if (!ok && failed_name.empty()) failed_name = name;
        if (ok) ++passed;
    };

    try {
        {
            Curve c(5, parse_poly("x^3+1", 5), Poly(5));
            FfIdeal a(c, Poly::one(5), parse_poly("x", 5), Poly::one(5));
            FfIdeal sq(c, Poly::one(5), parse_poly("x^2", 5), Poly::one(5));
            FfIdeal cube(c, Poly::one(5), parse_poly("x^3", 5), Poly::one(5));
            check("ff-square", a * a == sq && hnf_mul(a, a) == sq);
            FfIdeal conj(c, Poly::one(5), parse_poly("x", 5), parse_poly("4", 5));
            FfIdeal principal(c, parse_poly("x", 5), Poly::one(5), Poly(5));
            check("ff-conjugate-product",
                  a * conj == principal && hnf_mul(a, conj) == principal);
            check("ff-power-m1", pow(a, 1, Method::recursive) == a);
            check("ff-power-m2", pow(a, 2, Method::recursive) == sq &&
                                     pow(a, 2, Method::repeated) == sq &&
                                     pow(a, 2, Method::hnf) == sq);
            check("ff-power-m3", pow(a, 3, Method::recursive) == cube &&
                                     pow(a, 3, Method::repeated) == cube &&
                                     pow(a, 3, Method::hnf) == cube);
            PowerTrace tr = power_trace(c, parse_poly("x", 5), Poly::one(5), 3, false);
            check("ff-trace-bezout",
                  tr.v1() == parse_poly("3", 5) && tr.ratio() == parse_poly("x^2", 5));
            check("ff-trace-steps", tr.step(1).is_zero() && tr.step(2).is_one() &&
                                        tr.step(3) == parse_poly("x^3+1", 5));
        }
        {
            NfIdeal a(-23, 1, 2, 1);
            NfPowerTrace tr = nf_power_trace(a, 3, false);
            check("nf-trace-bezout", tr.u1() == 0 && tr.v1() == 1 && tr.ratio() == 3);
            check("nf-trace-steps",
                  tr.step(1) == 0 && tr.step(2) == 3 && tr.step(3) == 21);
            NfPowerTrace trr = nf_power_trace(a, 3, true);
            check("nf-trace-reduced", trr.step(2) == 3 && trr.step(3) == 5);
            NfIdeal sq(-23, 1, 4, -3), cube(-23, 1, 8, -3);
            check("nf-square", nf_hnf_mul(a, a) == sq &&
                                   pow(a, 2, Method::recursive) == sq);
            check("nf-cube", pow(a, 3, Method::recursive) == cube &&
                                 pow(a, 3, Method::hnf) == cube);
            NfIdeal conj(-23, 1, 2, -1);
            check("nf-conjugate-product", nf_hnf_mul(a, conj) == NfIdeal(-23, 2, 1, 1));
            check("nf-unit", nf_hnf_mul(a, NfIdeal::unit(-23)) == a);
        }
        {
            bool s12_ok = true, s3_ok = true, bezout_ok = true, s2_ok = true;
            for (std::uint64_t i = 0; i < 100; ++i) {
                FfCase tc = make_ff_case(0x5e1f, i, 8);
                const Curve& c = tc.curve;
                const Poly& Q = tc.ideal.Q();
                const Poly& P = tc.ideal.P();
                PowerTrace tr = power_trace(c, Q, P, std::max(3u, tc.m), false);
                s12_ok &= tr.step(1).is_zero() && tr.step(2).is_one();
                Poly closed = Poly(c.p(), {2}) +
                              tr.v1() * (c.h() - (P + P) - tr.v1() * Q * tr.ratio());
                s3_ok &= tr.step(3) == closed;
                Poly tph = P + P - c.h();
                for (std::size_t n = 1; n <= tr.length(); ++n) {
                    Poly u = tr.u1() - tr.v1() * tr.v1() * tr.ratio() * tr.step(n);
                    bezout_ok &= u * Q + tr.v1() * (tph + tr.v1() * Q * tr.ratio() *
                                                              tr.step(n)) ==
                                 Poly::one(c.p());
                }
            }
            auto deltas = nf_delta_palette(0x5e1f);
            for (std::uint64_t i = 0; i < 100; ++i) {
                NfCase tc = make_nf_case(deltas, 0x5e1f, i, 8);
                NfPowerTrace tr = nf_power_trace(tc.ideal, std::max(2u, tc.m), false);
                s2_ok &= tr.step(2) == tr.ratio() * tr.v1();
            }
            check("S1-S2-values", s12_ok);
            check("S3-closed-form", s3_ok);
            check("bezout-identity", bezout_ok);
            check("S2-crosscheck", s2_ok);
        }
    } catch (const Error& e) {
        std::cerr << "selftest exception: " << e.what() << '\n';
        if (failed_name.empty()) failed_name = "exception";
    }

    if (!failed_name.empty()) {
        std::cout << "selftest FAILED at " << failed_name << '\n';
        return kExitMismatch;
    }
    std::cout << "selftest: " << passed << " checks passed\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact powers of primitive ideals in imaginary quadratic function and number fields"};
    app.require_subcommand(1);
    /* --h is a curve parameter, so help must not claim the short -h */
    app.set_help_flag("--help", "print help");

    PowerOptions popt;
    CLI::App* power = app.add_subcommand("power", "compute a^m and print it as JSON");
    power->set_help_flag("--help", "print help");
    power->add_flag("--ff", popt.ff, "function-field mode");
    power->add_flag("--nf", popt.nf, "number-field mode");
    power->add_option("--p", popt.p, "field characteristic (ff)");
    power->add_option("--f", popt.f, "curve polynomial f (ff)");
    power->add_option("--h", popt.h, "curve polynomial h (ff, default 0)");
    power->add_option("--delta", popt.delta, "discriminant (nf)");
    power->add_option("--S", popt.S, "ideal content (default 1)");
    power->add_option("--Q", popt.Q, "ideal Q")->required();
    power->add_option("--P", popt.P, "ideal P")->required();
    power->add_option("--m", popt.m, "exponent")->required();
    power->add_option("--method", popt.method, "recursive|repeated|hnf");
    power->add_option("--reduce", popt.reduce, "reduce recursion steps mod Q^n");
    power->add_option("--format", popt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    CaseOptions vopt;
    CLI::App* verify = app.add_subcommand(
        "verify", "randomized cross-validation of all power methods");
    verify->add_flag("--ff", vopt.ff, "include function fields");
    verify->add_flag("--nf", vopt.nf, "include number fields");
    verify->add_option("--cases", vopt.cases, "number of random cases");
    verify->add_option("--mmax", vopt.mmax, "largest exponent");
    verify->add_option("--seed", vopt.seed, "master seed");

    BenchOptions bopt;
    CLI::App* bench = app.add_subcommand(
        "bench", "time the recursion against repeated multiplication (CSV)");
    bench->set_help_flag("--help", "print help");
    bench->add_flag("--ff", bopt.ff, "function-field mode");
    bench->add_flag("--nf", bopt.nf, "number-field mode");
    bench->add_option("--p", bopt.p, "field characteristic (ff)");
    bench->add_option("--g", bopt.g, "genus (ff)");
    bench->add_option("--delta", bopt.delta, "discriminant (nf)");
    bench->add_option("--mmax", bopt.mmax, "largest exponent");
    bench->add_option("--seed", bopt.seed, "master seed");
    bench->add_option("--reduce", bopt.reduce, "reduce recursion steps mod Q^n");

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the embedded worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (power->parsed()) return run_power(popt);
        if (verify->parsed()) return run_verify(vopt);
        if (bench->parsed()) return run_bench(bopt);
        if (selftest->parsed()) return run_selftest();
    } catch (const NonCoprime& e) {
        std::cerr << e.what() << "\nhint: the closed-form recursion does not apply; "
                  << "use --method repeated\n";
        return kExitNonCoprime;
    } catch (const NotPrimitive& e) {
        std::cerr << e.what() << "\nhint: the closed-form recursion does not apply; "
                  << "use --method repeated\n";
        return kExitNonCoprime;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
