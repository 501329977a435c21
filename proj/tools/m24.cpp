// m24: exact series and exponential-sum computations around the weight-two
// forms, mock forms, Jacobi forms, and Poincare coefficients attached to the
// conjugacy classes of the largest Mathieu group.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "m24/serialize.hpp"
#include "m24/verify.hpp"

using namespace m24;

namespace {

struct RunConfig {
    std::string class_label;
    std::string order = "10";
    long cmax = 2000;
    double tol = 0;  // 0 = per-suite default
    std::string format = "json";
    std::string out_path;
    unsigned long seed = 1928373;  // fixed default seed
    bool fast = false;
    bool audit = false;
    bool checksum = false;
    bool full_trace = false;
    long a = 0, b = 0, c = 1;
    long nprime = 1, rprime = 1, N = 1, h = 1;
    int precision = kPrecisionBits;
};

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        f << text << "\n";
    }
}

void emit_json(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2)); }

Rat order_of(const RunConfig& cfg) { return parse_rat(cfg.order); }

int run_series_verb(const RunConfig& cfg, const std::string& verb) {
    Rat ord = order_of(cfg);
    if (verb == "h") {
        RatSeries s = mock_h(ord).series;
        if (cfg.format == "csv") emit(cfg, qseries_csv(s));
        else emit_json(cfg, qseries_json(s));
        return 0;
    }
    const ConjugacyClassData& cls = class_by_label(cfg.class_label);
    if (verb == "hg") {
        RatSeries s = h_g(cls, ord).series;
        if (cfg.format == "csv") emit(cfg, qseries_csv(s));
        else emit_json(cfg, qseries_json(s));
    } else if (verb == "tg") {
        RatSeries s = t_g(cls, ord);
        if (cfg.format == "csv") emit(cfg, qseries_csv(s));
        else emit_json(cfg, qseries_json(s));
    } else if (verb == "zg" || verb == "z") {
        JacobiSeries s = verb == "z" ? assemble_Z(ord) : z_g(cls, ord);
        if (cfg.format == "csv") emit(cfg, jacobi_csv(s));
        else emit_json(cfg, jacobi_json(s));
    } else if (verb == "phig") {
        JacobiSeries s = phi_g_holo(cls, ord);
        if (cfg.format == "csv") emit(cfg, jacobi_csv(s));
        else emit_json(cfg, jacobi_json(s));
    }
    return 0;
}

int run_table2(const RunConfig& cfg) {
    json out = json::array();
    bool all_pass = true;
    for (const auto& cls : all_classes()) {
        if (!cfg.class_label.empty() && cls.label != cfg.class_label) continue;
        json rows = json::array();
        for (const auto& chk : verify_table2(cls)) {
            rows.push_back(cusp_check_json(chk));
            all_pass = all_pass && chk.pass();
        }
        out.push_back(json{{"class", cls.label}, {"rows", rows}});
    }
    emit_json(cfg, record("table2", json{{"class", cfg.class_label}},
                          "weight-two asymptotics table", out, all_pass));
    return all_pass ? 0 : 1;
}

int run_zg_cusp_check(const RunConfig& cfg) {
    const ConjugacyClassData& cls = class_by_label(cfg.class_label);
    json rows = json::array();
    for (const auto& cusp : enumerate_cusps(cls.n)) {
        if (cusp.is_infinite()) continue;
        ZgCuspCondition zc = zg_cusp_condition(cls, cusp);
        json r{{"cusp", cusp.label()}, {"holds", zc.holds}};
        if (zc.witness_exponent) {
            r["witness_exponent"] = rat_str(*zc.witness_exponent);
            r["witness_coefficient"] = complex_json(zc.witness_coefficient.numeric());
        }
        rows.push_back(r);
    }
    emit_json(cfg, record("zg-cusp-check", json{{"class", cls.label}},
                          "principal-part condition at non-infinite cusps", rows, true));
    return 0;
}

int run_gauss(const RunConfig& cfg) {
    CV brute = gauss_brute(cfg.a, cfg.b, cfg.c);
    CV closed = gauss_closed(cfg.a, cfg.b, cfg.c);
    long double defect = std::abs(brute - closed);
    long double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    emit_json(cfg, record("gauss",
                          json{{"a", cfg.a}, {"b", cfg.b}, {"c", cfg.c},
                               {"precision_bits", kPrecisionBits}},
                          "generalized quadratic Gauss sum",
                          json{{"brute", complex_json(brute)},
                               {"closed", complex_json(closed)},
                               {"defect", fxd(defect)}},
                          defect <= tol));
    return defect <= tol ? 0 : 1;
}

int run_dedekind(const RunConfig& cfg) {
    Rat s = dedekind_s(cfg.a, cfg.c);
    Rat defect = cfg.a > 0 && std::gcd(cfg.a, cfg.c) == 1
                     ? dedekind_reciprocity_defect(cfg.a, cfg.c)
                     : Rat(0);
    emit_json(cfg, record("dedekind", json{{"a", cfg.a}, {"c", cfg.c}}, "Dedekind sum",
                          json{{"s", rat_str(s)}, {"reciprocity_defect", rat_str(defect)}},
                          defect == 0));
    return defect == 0 ? 0 : 1;
}

int run_kloosterman(const RunConfig& cfg) {
    KloostermanParams p{0, 1, cfg.nprime, cfg.rprime, cfg.c, cfg.N, cfg.h, 2};
    CV v = kloosterman_jacobi(p);
    json values{{"K", complex_json(v)}};
    if (cfg.audit) {
        CV w = kloosterman_jacobi_closed01(cfg.nprime, cfg.rprime, cfg.c, cfg.N, cfg.h);
        values["K_closed"] = complex_json(w);
        values["defect"] = fxd(std::abs(v - w));
    }
    emit_json(cfg, record("kloosterman",
                          json{{"c", cfg.c}, {"nprime", cfg.nprime}, {"rprime", cfg.rprime},
                               {"N", cfg.N}, {"h", cfg.h}, {"precision_bits", kPrecisionBits}},
                          "Jacobi-Kloosterman sum", values, true));
    return 0;
}

json sweep_json(const SweepResult& r) {
    json out{{"suite", r.name}, {"cases", r.cases}, {"worst", fxd(r.worst)}, {"pass", r.pass}};
    if (!r.detail.empty()) out["detail"] = r.detail;
    return out;
}

int run_verify_gauss(const RunConfig& cfg) {
    long cmax = cfg.cmax == 2000 ? 200 : cfg.cmax;
    long double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    SweepResult a = sweep_gauss_closed(cmax, tol);
    SweepResult b = sweep_gauss_skew(cmax, 9, tol);
    emit_json(cfg, record("verify-gauss", json{{"cmax", cmax}, {"tol", fxd(tol)}},
                          "Gauss sum closed forms",
                          json::array({sweep_json(a), sweep_json(b)}), a.pass && b.pass));
    return a.pass && b.pass ? 0 : 1;
}

int run_verify_F(const RunConfig& cfg) {
    long cmax = cfg.cmax == 2000 ? 100 : cfg.cmax;
    long double tol = cfg.tol > 0 ? cfg.tol : 1e-9;
    SweepResult r = sweep_F_identity(cmax, 25, tol);
    emit_json(cfg, record("verify-F", json{{"cmax", cmax}, {"tol", fxd(tol)}},
                          "F = -2 g0 identity", sweep_json(r), r.pass));
    return r.pass ? 0 : 1;
}

int run_verify_reduction(const RunConfig& cfg) {
    long cmax = cfg.cmax == 2000 ? 120 : cfg.cmax;
    long double tol = cfg.tol > 0 ? cfg.tol : 1e-8;
    SweepResult r = sweep_reduction(cmax, tol);
    emit_json(cfg, record("verify-reduction", json{{"cmax", cmax}, {"tol", fxd(tol)}},
                          "Kloosterman-to-classical reduction", sweep_json(r), r.pass));
    return r.pass ? 0 : 1;
}

int run_poincare(const RunConfig& cfg) {
    const ConjugacyClassData& cls = class_by_label(cfg.class_label);
    PoincareComparison cmp = compare_exact(cls, cfg.nprime, cfg.rprime, cfg.cmax);
    json values{{"numeric", fxd(cmp.numeric)},
                {"exact", rat_str(cmp.exact)},
                {"difference", fxd(cmp.difference)},
                {"trace", trace_json(cmp.trace, cfg.full_trace)}};
    if (cfg.audit) {
        PoincareRequest req;
        req.N = cls.n; req.h = cls.h;
        req.nprime = cfg.nprime; req.rprime = cfg.rprime;
        req.Cmax = std::min(cfg.cmax, 120L);
        ConvergenceTrace audit = poincare_c_trace(cfg.nprime, cfg.rprime, req, true);
        values["audit"] = trace_json(audit, cfg.full_trace);
        ConvergenceTrace fast = poincare_c_trace(cfg.nprime, cfg.rprime, req, false);
        values["audit_defect"] = fxd(std::abs(audit.final - fast.final));
    }
    emit_json(cfg, record("poincare",
                          json{{"class", cls.label}, {"nprime", cfg.nprime},
                               {"rprime", cfg.rprime}, {"cmax", cfg.cmax},
                               {"precision_bits", kPrecisionBits}},
                          "Poincare coefficient vs exact series", values,
                          cmp.rounds_to_exact));
    return cmp.rounds_to_exact ? 0 : 1;
}

int run_classes(const RunConfig& cfg) {
    if (cfg.checksum) {
        emit(cfg, class_table_checksum());
        return 0;
    }
    json out = json::array();
    for (const auto& c : all_classes()) out.push_back(class_json(c));
    emit_json(cfg, out);
    return 0;
}

int run_verify_all(const RunConfig& cfg) {
    json suites = json::array();
    bool ok = true;
    auto push = [&](const SweepResult& r) {
        suites.push_back(sweep_json(r));
        ok = ok && r.pass;
    };
    long gauss_max = cfg.fast ? 60 : 200;
    long f_max = cfg.fast ? 40 : 100;
    long red_max = cfg.fast ? 36 : 120;
    long ded_max = cfg.fast ? 100 : 300;
    push(sweep_gauss_closed(gauss_max));
    push(sweep_gauss_skew(gauss_max));
    push(sweep_F_identity(f_max));
    push(sweep_dedekind_reciprocity(ded_max));
    push(sweep_reduction(red_max));
    push(check_two_torsion(cfg.fast ? Rat(5) : Rat(10)));
    // exact table checks
    {
        SweepResult r{"table2"};
        r.pass = true;
        for (const auto& cls : all_classes())
            for (const auto& chk : verify_table2(cls)) {
                ++r.cases;
                if (!chk.pass()) {
                    r.pass = false;
                    r.detail += cls.label + "@" + std::to_string(chk.row.cusp_a) + "/" +
                                std::to_string(chk.row.cusp_c) + " ";
                }
            }
        push(r);
    }
    emit_json(cfg, record("verify-all", json{{"fast", cfg.fast}}, "all verification suites",
                          suites, ok));
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Mathieu-moonshine series and exponential-sum toolkit"};
    app.set_help_flag("--help", "print help");  // bare -h would shadow the `h` verb
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* p = std::getenv("M24_PRECISION_BITS")) {
        cfg.precision = std::atoi(p);
        if (cfg.precision > kPrecisionBits)
            std::cerr << "note: arithmetic runs at the extended-double significand ("
                      << kPrecisionBits << " bits)\n";
    }

    auto add_common = [&](CLI::App* sub, bool wants_class) {
        if (wants_class) sub->add_option("--class", cfg.class_label, "conjugacy class label");
        sub->add_option("--order", cfg.order, "series truncation order (rational p/q)");
        sub->add_option("--cmax", cfg.cmax, "modulus cutoff for c-sums");
        sub->add_option("--tol", cfg.tol, "tolerance override");
        sub->add_option("--format", cfg.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write output to a file");
        sub->add_option("--seed", cfg.seed, "seed for randomized sweeps");
        sub->add_flag("--fast", cfg.fast, "reduced ranges");
        sub->add_flag("--audit", cfg.audit, "enable the independent audit path");
    };

    auto* classes = app.add_subcommand("classes", "list the 21 class rows");
    classes->add_flag("--checksum", cfg.checksum, "print the table content hash");
    add_common(classes, false);

    for (const char* verb : {"h", "hg", "tg", "z", "zg", "phig"}) {
        auto* sub = app.add_subcommand(verb, std::string("emit the ") + verb + " expansion");
        add_common(sub, std::string(verb) != "h" && std::string(verb) != "z");
    }

    auto* table2 = app.add_subcommand("table2", "verify the cusp asymptotics table");
    add_common(table2, true);
    auto* zgcc = app.add_subcommand("zg-cusp-check", "stronger cusp condition with witness");
    add_common(zgcc, true);

    auto* gauss = app.add_subcommand("gauss", "one Gauss sum, brute and closed");
    gauss->add_option("--a", cfg.a)->required();
    gauss->add_option("--b", cfg.b)->required();
    gauss->add_option("--c", cfg.c)->required();
    add_common(gauss, false);

    auto* ded = app.add_subcommand("dedekind", "Dedekind sum and reciprocity defect");
    ded->add_option("--a", cfg.a)->required();
    ded->add_option("--c", cfg.c)->required();
    add_common(ded, false);

    auto* kl = app.add_subcommand("kloosterman", "one Jacobi-Kloosterman sum");
    kl->add_option("--c", cfg.c)->required();
    kl->add_option("--n", cfg.nprime);
    kl->add_option("--r", cfg.rprime);
    kl->add_option("--N", cfg.N);
    kl->add_option("--h", cfg.h);
    add_common(kl, false);

    for (const char* verb : {"verify-gauss", "verify-F", "verify-reduction"}) {
        auto* sub = app.add_subcommand(verb, "exhaustive identity sweep");
        add_common(sub, false);
    }

    auto* poin = app.add_subcommand("poincare", "Poincare coefficient vs exact");
    poin->add_option("--n", cfg.nprime);
    poin->add_option("--r", cfg.rprime);
    add_common(poin, true);

    auto* vall = app.add_subcommand("verify-all", "run every verification suite");
    add_common(vall, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classes->parsed()) return run_classes(cfg);
        if (table2->parsed()) return run_table2(cfg);
        if (zgcc->parsed()) return run_zg_cusp_check(cfg);
        if (gauss->parsed()) return run_gauss(cfg);
        if (ded->parsed()) return run_dedekind(cfg);
        if (kl->parsed()) return run_kloosterman(cfg);
        if (poin->parsed()) return run_poincare(cfg);
        if (vall->parsed()) return run_verify_all(cfg);
        for (const char* verb : {"h", "hg", "tg", "z", "zg", "phig"})
            if (app.get_subcommand(verb)->parsed()) return run_series_verb(cfg, verb);
        for (const char* verb : {"verify-gauss", "verify-F", "verify-reduction"})
            if (app.get_subcommand(verb)->parsed()) {
                if (std::string(verb) == "verify-gauss") return run_verify_gauss(cfg);
                if (std::string(verb) == "verify-F") return run_verify_F(cfg);
                return run_verify_reduction(cfg);
            }
    } catch (const UnknownClassLabel& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
