// Command-line front end: evaluate the special functions and run the
// verification suites, emitting machine-readable reports and certificates.

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>

#include "clausen/identities.hpp"
#include "clausen/pfaffian.hpp"
#include "clausen/report.hpp"

using namespace clausen;
using numerics::Cx;

namespace {

// exit codes: 0 pass, 1 verification failure, 2 argument error, 3 domain error
constexpr int kExitOk = 0, kExitFail = 1, kExitArgs = 2, kExitDomain = 3;

Cx parse_complex(const std::string& s) {
    // "x", "x+yi", "x-yi"
    if (s.empty()) throw DomainError("empty complex literal");
    size_t ipos = s.find_first_of("ij");
    if (ipos == std::string::npos) return Cx(std::stod(s), 0.0);
    std::string body = s.substr(0, ipos);
    size_t split = body.find_last_of("+-");
    if (split == std::string::npos || split == 0)
        return Cx(0.0, std::stod(body.empty() ? "1" : body));
    return Cx(std::stod(body.substr(0, split)), std::stod(body.substr(split)));
}

se::CurveSignature parse_sig(const std::string& s) {
    int r, p, q;
    if (std::sscanf(s.c_str(), "%d,%d,%d", &r, &p, &q) != 3)
        throw DomainError("signature must look like r,p,q");
    return se::validate_signature(r, p, q);
}

std::vector<se::CurveSignature> parse_sigs(const std::string& s) {
    std::vector<se::CurveSignature> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_sig(item));
    return out;
}

struct RunConfig {
    std::string suite;
    std::string out_path;
    std::string format = "json";
    std::string cert_dir = "certificates";
    std::string sigs = "1,1,1;2,1,2;3,5,3;4,3,6";
    std::string grid = "default";
    double tol = 0.0; // 0 = per-case defaults
    int parallelism = 1;
    std::uint64_t seed = 20260810;
};

using Case = std::function<ident::IdentityReport()>;

std::vector<ident::IdentityReport> run_cases(const std::vector<Case>& cases, int parallelism) {
    std::vector<ident::IdentityReport> out(cases.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            try {
                out[i] = cases[i]();
            } catch (const std::exception& e) {
                ident::IdentityReport rep;
                rep.name = "case_" + std::to_string(i) + "_error";
                rep.inputs = {{"error", Cx(0.0)}};
                rep.passed = false;
                rep.rel_residual = rep.abs_residual = std::numeric_limits<double>::infinity();
                out[i] = rep;
                std::cerr << "case " << i << " failed: " << e.what() << "\n";
            }
        }
    };
    int n = std::max(1, parallelism);
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    return out;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

ident::IdentityReport residual_report(std::string name,
                                      std::vector<std::pair<std::string, Cx>> inputs,
                                      double residual, double tol) {
    return ident::make_report(std::move(name), std::move(inputs), Cx(residual), Cx(0.0), tol);
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

void add_clausen_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    const double betas[5] = {1.0 / 8, 1.0 / 4, 3.0 / 8, 1.0 / 2, 5.0 / 8};
    const std::pair<double, double> moduli[4] = {
        {0.10, 0.90}, {0.20, 0.85}, {0.05, 0.80}, {0.15, 0.95}};
    double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    for (double b1 : betas)
        for (double b2 : betas)
            for (auto [l1, l2] : moduli)
                cases.push_back([=] {
                    auto rep = ident::verify_multivariate_clausen(b1, b2, {Cx(l1), Cx(l2)});
                    rep.tolerance = tol;
                    rep.passed = rep.rel_residual <= tol || rep.abs_residual <= tol;
                    return rep;
                });
}

void add_duality_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    // per-row admissible sampling windows for (L1, L2); the series domain
    // |z1|+|z2| < 1 carves out a different moduli region for every row
    for (int n = 1; n <= 4; ++n) {
        for (int t = 0; t < 10; ++t) {
            double b1 = uniform(rng, 0.15, 0.6), b2 = uniform(rng, 0.15, 0.6);
            double l1 = 0, l2 = 0;
            switch (n) {
                case 1: l1 = uniform(rng, 0.05, 0.2); l2 = uniform(rng, 0.8, 0.95); break;
                case 2: l1 = uniform(rng, 0.03, 0.1); l2 = uniform(rng, 0.93, 0.98); break;
                case 3: l1 = uniform(rng, 0.1, 0.25); l2 = uniform(rng, 0.6, 0.8); break;
                case 4: l1 = uniform(rng, 0.03, 0.06); l2 = uniform(rng, 0.4, 0.6); break;
            }
            double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
            cases.push_back([=] {
                auto res = ident::duality_row(n, b1, b2, {Cx(l1), Cx(l2)});
                auto rep = res.report;
                rep.tolerance = tol;
                rep.passed = rep.rel_residual <= tol || rep.abs_residual <= tol;
                return rep;
            });
        }
    }
}

void add_kummer_quadratic_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 1);
    double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    for (int t = 0; t < 20; ++t) {
        double b1 = uniform(rng, 0.1, 0.7), b2 = uniform(rng, 0.1, 0.7);
        double L_pos = uniform(rng, 0.05, 0.45);  // identity 1 needs Lambda in (0,1)
        double L_any = uniform(rng, -0.35, 0.35); // identity 2 tolerates both signs
        if (std::abs(L_any) < 0.02) L_any = 0.05;
        cases.push_back([=] {
            auto pair1 = hyp::kummer_quadratic_pair(b1, b2, Cx(L_pos));
            return ident::make_report(
                "kummer_quadratic_1",
                {{"beta1", Cx(b1)}, {"beta2", Cx(b2)}, {"Lambda", Cx(L_pos)}}, pair1.lhs1,
                pair1.rhs1, tol);
        });
        cases.push_back([=] {
            auto pair2 = hyp::kummer_quadratic_pair(b1, b2, Cx(L_any));
            return ident::make_report(
                "kummer_quadratic_2",
                {{"beta1", Cx(b1)}, {"beta2", Cx(b2)}, {"Lambda", Cx(L_any)}}, pair2.lhs2,
                pair2.rhs2, tol);
        });
    }
}

void add_clausen3f2_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed + 2);
    double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    for (int t = 0; t < 20; ++t) {
        double b1 = uniform(rng, 0.15, 0.7), b2 = uniform(rng, 0.1, 0.7);
        double L1 = uniform(rng, 0.03, 0.3);
        cases.push_back([=] {
            auto [a, b] = ident::verify_clausen_3f2(b1, b2, Cx(L1));
            auto rep = a;
            rep.tolerance = tol;
            rep.passed = a.passed && b.passed;
            rep.rel_residual = std::max(a.rel_residual, b.rel_residual);
            rep.abs_residual = std::max(a.abs_residual, b.abs_residual);
            rep.name = "clausen_3f2_pair";
            return rep;
        });
    }
}

void add_pfaffian_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    using ratfunc::bigq;
    const std::pair<ratfunc::BigQ, ratfunc::BigQ> exact_pairs[2] = {
        {bigq(1, 2), bigq(1, 2)}, {bigq(1, 4), bigq(3, 8)}};
    for (const auto& [b1, b2] : exact_pairs) {
        std::string name = "pfaffian_exact_" + b1.get_str() + "_" + b2.get_str();
        auto b1c = b1, b2c = b2;
        cases.push_back([=] {
            bool ok = pfaff::decomposition_check_exact(b1c, b2c);
            return residual_report(name, {{"beta1", Cx(b1c.get_d())}, {"beta2", Cx(b2c.get_d())}},
                                   ok ? 0.0 : 1.0, 0.5);
        });
    }
    std::mt19937_64 rng(cfg.seed + 3);
    double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    const std::pair<double, double> beta_pool[4] = {
        {0.5, 0.5}, {0.25, 0.375}, {0.625, 0.125}, {0.75, 0.25}};
    for (int t = 0; t < 50; ++t) {
        auto [b1, b2] = beta_pool[rng() % 4];
        Cx L1(uniform(rng, -0.6, 0.6), uniform(rng, -0.2, 0.2));
        Cx L2(uniform(rng, 0.2, 0.7), uniform(rng, -0.2, 0.2));
        if (std::abs(L1) < 0.05) L1 += Cx(0.1, 0.05);
        if (std::abs(L1 - L2) < 0.05 || std::abs(L1 + L2) < 0.05) L1 -= Cx(0.11, 0.0);
        cases.push_back([=] {
            double res = pfaff::decomposition_residual(b1, b2, L1, L2);
            return residual_report("pfaffian_residual",
                                   {{"beta1", Cx(b1)}, {"beta2", Cx(b2)}, {"L1", L1}, {"L2", L2}},
                                   res, tol);
        });
    }
}

void write_certificate(const std::string& dir, const kummer::Certificate& cert) {
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + cert.name + ".json");
    out << kummer::serialize(cert) << "\n";
}

void add_fibrations_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    auto sigs = parse_sigs(cfg.sigs);
    std::string dir = cfg.cert_dir;
    auto add = [&](kummer::FibrationId id, const se::CurveSignature& sig) {
        cases.push_back([=] {
            auto cert = kummer::verify_fibration_exact(id, sig);
            write_certificate(dir, cert);
            return residual_report(cert.name, {{"spot", Cx(cert.spot_residual)}},
                                   cert.zero ? cert.spot_residual : 1.0, 1e-8);
        });
    };
    for (const auto& sig : sigs) {
        add(kummer::FibrationId::J4a, sig);
        add(kummer::FibrationId::J4b, sig);
        add(kummer::FibrationId::J6, sig);
        add(kummer::FibrationId::J7, sig);
        if (sig.q == 3 * sig.r - 2 * sig.p) {
            add(kummer::FibrationId::J5, sig);
            add(kummer::FibrationId::J8, sig);
        }
        if (sig.q == sig.r) {
            cases.push_back([=] {
                auto cert = kummer::verify_base_change_j6(sig);
                write_certificate(dir, cert);
                return residual_report(cert.name, {{"spot", Cx(cert.spot_residual)}},
                                       cert.zero ? cert.spot_residual : 1.0, 1e-8);
            });
            cases.push_back([=] {
                auto [ca, cb] = kummer::verify_legendre_links(sig);
                write_certificate(dir, ca);
                write_certificate(dir, cb);
                return residual_report("legendre_links_" + sig.str(), {},
                                       (ca.zero && cb.zero) ? 0.0 : 1.0, 1e-8);
            });
        }
        cases.push_back([=] {
            auto cert = kummer::verify_double_cover(sig);
            write_certificate(dir, cert);
            return residual_report(cert.name, {{"spot", Cx(cert.spot_residual)}},
                                   cert.zero ? cert.spot_residual : 1.0, 1e-8);
        });
    }
}

void add_periods_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
    // closed form vs quadrature for every valid signature with r <= 4
    for (const auto& sig : se::valid_signatures(4)) {
        for (double lam : {0.2, 0.5, 0.8}) {
            for (int k = 1; k <= 2 * sig.r - 1; ++k) {
                for (auto cyc : {se::Cycle::A, se::Cycle::B}) {
                    cases.push_back([=] {
                        numerics::QuadratureSpec spec{1e-11, 1e-11, 12};
                        Cx a = se::period_closed(sig, cyc, k, Cx(lam));
                        Cx b = se::period_quadrature(sig, cyc, k, lam, spec);
                        return ident::make_report(
                            "period_closed_vs_quadrature",
                            {{"r", Cx(double(sig.r))}, {"p", Cx(double(sig.p))},
                             {"q", Cx(double(sig.q))}, {"lambda", Cx(lam)},
                             {"k", Cx(double(k))},
                             {"cycle", Cx(cyc == se::Cycle::A ? 0.0 : 1.0)}},
                            a, b, tol);
                    });
                }
            }
        }
    }
    // F2 period double integral (two signatures, two (A,B) points)
    for (auto [A, B] : {std::pair{25.0 / 24, 49.0 / 24}, std::pair{1.2, 2.0}}) {
        for (auto sig : {se::CurveSignature{1, 1, 1}, se::CurveSignature{2, 1, 2}}) {
            cases.push_back([=] {
                numerics::QuadratureSpec spec{1e-9, 1e-9, 11};
                return ident::f2_period_double_integral(sig, A, B, 1, 1, spec);
            });
        }
    }
    // period-equality theorem
    for (auto sig : {se::CurveSignature{2, 1, 2}, se::CurveSignature{3, 5, 3}}) {
        for (auto [l1, l2] : {std::pair{0.3, 0.4}, std::pair{0.25, 0.35}}) {
            for (int i = 1; i <= sig.r - 1; ++i)
                for (int j = 1; j <= sig.r - 1; ++j)
                    cases.push_back([=] {
                        return ident::verify_period_equality(sig, {Cx(l1), Cx(l2)}, i, j);
                    });
        }
    }
}

void add_mirror_suite(std::vector<Case>& cases, const RunConfig& cfg) {
    double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    for (double lam : {0.005, 0.01, 0.02})
        cases.push_back([=] {
            auto res = ident::mirror_map_check(lam);
            auto rep = res.roundtrip;
            rep.tolerance = tol;
            rep.passed = rep.abs_residual <= tol;
            return rep;
        });
    cases.push_back([=] {
        auto res = ident::mirror_map_check(0.01);
        double err = std::abs(res.series_coeffs[0] - 4.0) +
                     std::abs(res.series_coeffs[1] + 16.0) +
                     std::abs(res.series_coeffs[2] - 56.0);
        return residual_report("mirror_series_coefficients", {}, err, 1e-12);
    });
}

int cmd_verify(const RunConfig& cfg) {
    std::vector<Case> cases;
    auto build = [&](const std::string& name) {
        if (name == "clausen") add_clausen_suite(cases, cfg);
        else if (name == "duality") add_duality_suite(cases, cfg);
        else if (name == "kummer-quadratic") add_kummer_quadratic_suite(cases, cfg);
        else if (name == "clausen3f2") add_clausen3f2_suite(cases, cfg);
        else if (name == "pfaffian") add_pfaffian_suite(cases, cfg);
        else if (name == "fibrations") add_fibrations_suite(cases, cfg);
        else if (name == "periods") add_periods_suite(cases, cfg);
        else if (name == "mirror") add_mirror_suite(cases, cfg);
        else throw DomainError("unknown suite: " + name);
    };
    if (cfg.suite == "all") {
        for (const char* s : {"clausen", "duality", "kummer-quadratic", "clausen3f2", "pfaffian",
                              "fibrations", "periods", "mirror"})
            build(s);
    } else {
        build(cfg.suite);
    }
    auto reports = run_cases(cases, cfg.parallelism);
    std::string text = cfg.format == "csv" ? report::csv_table(reports, true)
                                           : report::suite_json(cfg.suite, reports);
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        out << text;
    } else {
        std::cout << text;
    }
    bool all = true;
    size_t passed = 0;
    for (const auto& r : reports) {
        if (r.passed)
            passed++;
        else
            all = false;
    }
    std::cerr << "suite " << cfg.suite << ": " << passed << "/" << reports.size() << " passed\n";
    return all ? kExitOk : kExitFail;
}

void print_value(Cx v) {
    if (v.imag() == 0.0)
        std::printf("%.15g\n", v.real());
    else
        std::printf("%.15g %+.15gi\n", v.real(), v.imag());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification engine for Appell/Gauss hypergeometric identities, "
                 "superelliptic periods and generalized Kummer fibrations"};
    app.require_subcommand(1);

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate a function and print 15 significant digits");
    eval->require_subcommand(1);
    std::string s_a, s_b, s_c, s_z, s_a1, s_a2, s_a3, s_b1, s_b2;
    std::string s_alpha, s_beta1, s_beta2, s_gamma1, s_gamma2, s_z1, s_z2;
    std::string s_sig = "1,1,1", s_cycle = "A", s_lambda;
    int e_k = 1, e_r = 1;

    auto* e2f1 = eval->add_subcommand("2f1", "Gauss 2F1(a,b;c;z)");
    e2f1->add_option("--a", s_a)->required();
    e2f1->add_option("--b", s_b)->required();
    e2f1->add_option("--c", s_c)->required();
    e2f1->add_option("--z", s_z)->required();

    auto* e3f2 = eval->add_subcommand("3f2", "3F2(a1,a2,a3;b1,b2;z)");
    e3f2->add_option("--a1", s_a1)->required();
    e3f2->add_option("--a2", s_a2)->required();
    e3f2->add_option("--a3", s_a3)->required();
    e3f2->add_option("--b1", s_b1)->required();
    e3f2->add_option("--b2", s_b2)->required();
    e3f2->add_option("--z", s_z)->required();

    auto* ef2 = eval->add_subcommand("f2", "Appell F2(alpha;b1,b2;g1,g2;z1,z2)");
    ef2->add_option("--alpha", s_alpha)->required();
    ef2->add_option("--beta1", s_beta1)->required();
    ef2->add_option("--beta2", s_beta2)->required();
    ef2->add_option("--gamma1", s_gamma1)->required();
    ef2->add_option("--gamma2", s_gamma2)->required();
    ef2->add_option("--z1", s_z1)->required();
    ef2->add_option("--z2", s_z2)->required();

    auto* eper = eval->add_subcommand("period", "superelliptic period of dx/y");
    eper->add_option("--sig", s_sig)->required();
    eper->add_option("--cycle", s_cycle)->check(CLI::IsMember({"A", "B"}));
    eper->add_option("--k", e_k);
    eper->add_option("--lambda", s_lambda)->required();

    auto* einv = eval->add_subcommand("invariants", "surface invariants at r");
    einv->add_option("--r", e_r)->required();

    // ---- verify ----
    RunConfig cfg;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", cfg.suite,
                       "clausen|duality|kummer-quadratic|clausen3f2|pfaffian|fibrations|periods|"
                       "mirror|all")
        ->required();
    verify->add_option("--out", cfg.out_path, "report file (stdout when omitted)");
    verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--cert-dir", cfg.cert_dir, "directory for certificate files");
    verify->add_option("--sigs", cfg.sigs, "semicolon-separated signatures r,p,q");
    verify->add_option("--grid", cfg.grid);
    verify->add_option("--tol", cfg.tol, "override the per-case tolerance");
    verify->add_option("--parallel", cfg.parallelism);
    verify->add_option("--seed", cfg.seed);
    double beta1_flag = std::numeric_limits<double>::quiet_NaN();
    double beta2_flag = std::numeric_limits<double>::quiet_NaN();
    verify->add_option("--beta1", beta1_flag, "restrict parameter (must lie in (0,1))");
    verify->add_option("--beta2", beta2_flag, "restrict parameter (must lie in (0,1))");

    // ---- report ----
    std::vector<std::string> report_inputs;
    std::string report_out;
    auto* reportc = app.add_subcommand("report", "summarize report files as CSV");
    reportc->add_option("inputs", report_inputs, "input suite JSON files");
    reportc->add_option("--out", report_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitArgs;
    }

    try {
        if (*e2f1) {
            print_value(hyp::eval_2f1({parse_complex(s_a), parse_complex(s_b), parse_complex(s_c)},
                                      parse_complex(s_z)));
            return kExitOk;
        }
        if (*e3f2) {
            print_value(hyp::eval_3f2(parse_complex(s_a1), parse_complex(s_a2), parse_complex(s_a3),
                                      parse_complex(s_b1), parse_complex(s_b2),
                                      parse_complex(s_z)));
            return kExitOk;
        }
        if (*ef2) {
            hyp::AppellF2Params p{parse_complex(s_alpha), parse_complex(s_beta1),
                                  parse_complex(s_beta2), parse_complex(s_gamma1),
                                  parse_complex(s_gamma2)};
            print_value(hyp::eval_f2(p, parse_complex(s_z1), parse_complex(s_z2)));
            return kExitOk;
        }
        if (*eper) {
            auto sig = parse_sig(s_sig);
            auto cyc = s_cycle == "B" ? se::Cycle::B : se::Cycle::A;
            print_value(se::period_closed(sig, cyc, e_k, parse_complex(s_lambda)));
            return kExitOk;
        }
        if (*einv) {
            auto s = kummer::surface_invariants(e_r);
            std::printf("{\"K2\": %ld, \"euler\": %ld, \"chi\": %ld, \"tau\": %ld, "
                        "\"irregularity\": %ld, \"pg\": %ld, \"h11\": %ld}\n",
                        s.K2, s.euler, s.chi, s.tau, s.irregularity, s.pg, s.h11);
            return kExitOk;
        }
        if (*verify) {
            // flag/env validation happens before any case runs: exit 2 on bad input
            if (const char* env = std::getenv("CLAUSEN_TOL"); env && cfg.tol == 0.0)
                cfg.tol = std::atof(env);
            if (const char* env = std::getenv("CLAUSEN_PAR"); env && !verify->count("--parallel"))
                cfg.parallelism = std::atoi(env);
            if (cfg.tol < 0.0 || (verify->count("--tol") && cfg.tol <= 0.0)) {
                std::cerr << "error: tolerance must be positive\n";
                return kExitArgs;
            }
            if (cfg.parallelism < 1) {
                std::cerr << "error: parallelism must be >= 1\n";
                return kExitArgs;
            }
            for (double b : {beta1_flag, beta2_flag})
                if (!std::isnan(b) && !(b > 0.0 && b < 1.0)) {
                    std::cerr << "error: beta parameters must lie in (0,1)\n";
                    return kExitArgs;
                }
            const std::vector<std::string> known{"clausen",  "duality",    "kummer-quadratic",
                                                 "clausen3f2", "pfaffian", "fibrations",
                                                 "periods",  "mirror",     "all"};
            if (std::find(known.begin(), known.end(), cfg.suite) == known.end()) {
                std::cerr << "error: unknown suite " << cfg.suite << "\n";
                return kExitArgs;
            }
            return cmd_verify(cfg);
        }
        if (*reportc) {
            std::vector<ident::IdentityReport> all;
            for (const auto& path : report_inputs) {
                std::ifstream in(path);
                if (!in) {
                    std::cerr << "error: cannot open " << path << "\n";
                    return kExitArgs;
                }
                std::stringstream ss;
                ss << in.rdbuf();
                try {
                    auto reps = report::parse_suite_json(ss.str());
                    all.insert(all.end(), reps.begin(), reps.end());
                } catch (const std::exception& e) {
                    std::cerr << "error: malformed report " << path << ": " << e.what() << "\n";
                    return kExitArgs;
                }
            }
            std::string text = report::csv_table(all, !all.empty());
            if (!report_out.empty())
                std::ofstream(report_out) << text;
            else
                std::cout << text;
            return kExitOk;
        }
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitArgs;
}
