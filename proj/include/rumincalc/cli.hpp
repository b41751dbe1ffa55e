#pragma once

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "experiments.hpp"
#include "form_language.hpp"
#include "invariant_forms.hpp"
#include "leibniz.hpp"
#include "primitives.hpp"
#include "report_json.hpp"

namespace rumincalc {

namespace cli_detail {

// Builtin reference (abelian:N, heisenberg:M, engel) or a path to a
// structure-constant document. Reference problems are usage errors; a file
// that parses but fails validation is a domain error and keeps its exception.
inline StratifiedLieAlgebra resolve_group(const std::string& ref) {
    if (ref.empty()) throw UsageError("a group reference is required");
    try {
        if (auto g = builtin_group(ref)) return *g;
    } catch (const RuminError& e) {
        throw UsageError(e.what());
    }
    std::ifstream in(ref);
    if (!in)
        throw UsageError("unknown group reference '" + ref +
                         "': not a builtin (abelian:N, heisenberg:M, engel) and not a readable file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_group(ss.str());
}

struct Shared {
    std::string group_ref;
    bool json = false;
    std::uint64_t seed = 12345;
};

inline nlohmann::json command_echo(const Shared& sh, const std::string& verb) {
    return nlohmann::json{{"verb", verb}, {"group", sh.group_ref}};
}

inline void emit_json(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

inline void print_warnings(const ParsedForm& pf, std::ostream& err) {
    for (const std::string& w : pf.warnings) err << "warning: " << w << "\n";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

// --- group -----------------------------------------------------------------

inline int verb_group(const Shared& sh, std::ostream& out, std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    if (sh.json) {
        nlohmann::json brackets = nlohmann::json::array();
        for (const auto& [ij, targets] : g.brackets())
            for (const auto& [k, c] : targets)
                brackets.push_back({{"i", ij.first + 1},
                                    {"j", ij.second + 1},
                                    {"k", k + 1},
                                    {"c", format_rational(c)}});
        nlohmann::json j{{"schema_version", 1},
                         {"command", command_echo(sh, "group")},
                         {"name", g.name()},
                         {"n", g.n()},
                         {"step", g.step()},
                         {"Q", g.Q()},
                         {"layer_dims", g.layer_dims()},
                         {"coordinate_layers", g.layers()},
                         {"brackets", brackets}};
        emit_json(out, j);
        return 0;
    }
    // The plain layout doubles as a valid structure-constant document.
    out << "# group: " << sh.group_ref << " (n=" << g.n() << ", step=" << g.step()
        << ", Q=" << g.Q() << ")\n";
    out << "name: " << g.name() << "\n";
    out << "layers: [";
    for (std::size_t s = 0; s < g.layer_dims().size(); ++s)
        out << (s ? ", " : "") << g.layer_dims()[s];
    out << "]\n";
    for (const auto& [ij, targets] : g.brackets())
        for (const auto& [k, c] : targets)
            out << "bracket " << ij.first + 1 << " " << ij.second + 1 << " -> " << k + 1 << " : "
                << format_rational(c) << "\n";
    return 0;
}

// --- betti -----------------------------------------------------------------

inline int verb_betti(const Shared& sh, std::ostream& out, std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    std::vector<long long> b = cohomology_dims(g);
    if (sh.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (int k = 0; k <= g.n(); ++k)
            rows.push_back({{"k", k}, {"betti", b[k]}, {"rumin_dim", ctx.rumin_dim(k)}});
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", command_echo(sh, "betti")},
                                      {"rows", rows}});
        return 0;
    }
    out << "group: " << sh.group_ref << "\n";
    out << "k betti rumin_dim\n";
    for (int k = 0; k <= g.n(); ++k)
        out << k << " " << b[k] << " " << ctx.rumin_dim(k) << "\n";
    return 0;
}

// --- weights ---------------------------------------------------------------

inline int verb_weights(const Shared& sh, std::ostream& out, std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    if (sh.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (int k = 0; k <= g.n(); ++k) rows.push_back({{"k", k}, {"weights", ctx.weights(k)}});
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", command_echo(sh, "weights")},
                                      {"rows", rows}});
        return 0;
    }
    out << "group: " << sh.group_ref << "\n";
    for (int k = 0; k <= g.n(); ++k) {
        out << "W(" << k << ") = {";
        const auto ws = ctx.weights(k);
        for (std::size_t i = 0; i < ws.size(); ++i) out << (i ? ", " : "") << ws[i];
        out << "}\n";
    }
    return 0;
}

// --- jsets -----------------------------------------------------------------

inline int verb_jsets(const Shared& sh, long long max_homogeneity, std::ostream& out,
                      std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    JsetTable table = jset_table(ctx, max_homogeneity);
    auto set_to_json = [](const std::set<long long>& s) {
        return std::vector<long long>(s.begin(), s.end());
    };
    if (sh.json) {
        nlohmann::json scans = nlohmann::json::array();
        for (const JsetScan& s : table.scans) {
            nlohmann::json by_weight = nlohmann::json::array();
            for (const auto& [w, js] : s.by_weight)
                by_weight.push_back({{"w", w}, {"jumps", set_to_json(js)}});
            scans.push_back({{"k", s.k},
                             {"by_weight", by_weight},
                             {"union", set_to_json(s.degree_union)},
                             {"max_jump", s.max_jump}});
        }
        nlohmann::json cmd = command_echo(sh, "jsets");
        cmd["max_homogeneity"] = max_homogeneity;
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", cmd},
                                      {"scans", scans},
                                      {"max_jump", table.max_jump}});
        return 0;
    }
    out << "group: " << sh.group_ref << "\n";
    out << "max-homogeneity: "
        << (max_homogeneity < 0 ? std::string("auto") : std::to_string(max_homogeneity)) << "\n";
    auto print_set = [&out](const std::set<long long>& s) {
        out << "{";
        bool first = true;
        for (long long j : s) {
            out << (first ? "" : ", ") << j;
            first = false;
        }
        out << "}";
    };
    for (const JsetScan& s : table.scans) {
        for (const auto& [w, js] : s.by_weight) {
            out << "J(" << s.k << ", " << w << ") = ";
            print_set(js);
            out << "\n";
        }
        out << "J(" << s.k << ") = ";
        print_set(s.degree_union);
        out << "\n";
    }
    out << "M = " << table.max_jump << "\n";
    return 0;
}

// --- exponents -------------------------------------------------------------

inline int verb_exponents(const Shared& sh, std::ostream& out, std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    std::vector<ExponentRow> rows = q_exponent(ctx);
    if (sh.json) {
        nlohmann::json jrows = nlohmann::json::array();
        for (const ExponentRow& r : rows) {
            nlohmann::json requires_rows = nlohmann::json::array();
            for (const IntegrabilityEntry& e : r.spec.requirements)
                requires_rows.push_back(
                    {{"w", e.w}, {"j", e.j}, {"exponent", format_rational(e.exponent)}});
            jrows.push_back({{"k", r.k},
                             {"j", r.j},
                             {"q", format_rational(r.q)},
                             {"requires", requires_rows}});
        }
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", command_echo(sh, "exponents")},
                                      {"rows", jrows}});
        return 0;
    }
    out << "group: " << sh.group_ref << " (Q=" << g.Q() << ")\n";
    out << "k j q\n";
    for (const ExponentRow& r : rows)
        out << r.k << " " << r.j << " " << format_rational(r.q) << "\n";
    return 0;
}

// --- dc --------------------------------------------------------------------

inline int verb_dc(const Shared& sh, const std::string& form_text, int degree, std::ostream& out,
                   std::ostream& err) {
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    ParsedForm pf = parse_form(form_text, g);
    print_warnings(pf, err);
    int k = 0;
    pf.form.pure_degree(&k);
    if (degree >= 0 && (pf.form.is_zero() ? degree != 0 : degree != k))
        throw UsageError("form has degree " + std::to_string(k) + ", not the requested " +
                         std::to_string(degree));
    PolyForm result = dc_apply(ctx, pf.form);
    std::map<long long, PolyForm> pieces;
    if (pure_weight(g, pf.form)) pieces = dc_weight_pieces(ctx, pf.form);
    if (sh.json) {
        nlohmann::json jpieces = nlohmann::json::array();
        for (const auto& [j, piece] : pieces)
            jpieces.push_back({{"j", j}, {"form", print_form(piece)}});
        nlohmann::json cmd = command_echo(sh, "dc");
        cmd["form"] = form_text;
        if (degree >= 0) cmd["degree"] = degree;
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", cmd},
                                      {"input", print_form(pf.form)},
                                      {"degree", k},
                                      {"result", print_form(result)},
                                      {"pieces", jpieces},
                                      {"warnings", pf.warnings}});
        return 0;
    }
    out << "group: " << sh.group_ref << "\n";
    out << "input: " << print_form(pf.form) << "\n";
    out << "degree: " << k << "\n";
    out << "d_c: " << print_form(result) << "\n";
    for (const auto& [j, piece] : pieces)
        out << "piece j=" << j << ": " << print_form(piece) << "\n";
    return 0;
}

// --- leibniz ---------------------------------------------------------------

inline int verb_leibniz(const Shared& sh, const std::string& alpha_text,
                        const std::string& beta_text, std::ostream& out, std::ostream& err) {
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    ParsedForm alpha = parse_form(alpha_text, g);
    ParsedForm beta = parse_form(beta_text, g);
    print_warnings(alpha, err);
    print_warnings(beta, err);
    LeibnizReport rep = leibniz_check(ctx, alpha.form, beta.form);
    if (sh.json) {
        nlohmann::json cmd = command_echo(sh, "leibniz");
        cmd["alpha"] = alpha_text;
        cmd["beta"] = beta_text;
        emit_json(out, nlohmann::json{{"schema_version", 1},
                                      {"command", cmd},
                                      {"h", rep.h},
                                      {"k", rep.k},
                                      {"guaranteed", rep.guaranteed},
                                      {"holds", rep.holds},
                                      {"lhs", print_form(rep.lhs)},
                                      {"rhs", print_form(rep.rhs)},
                                      {"residual", print_form(rep.residual)}});
        return 0;
    }
    out << "group: " << sh.group_ref << "\n";
    out << "alpha: " << print_form(alpha.form) << " (degree " << rep.h << ")\n";
    out << "beta: " << print_form(beta.form) << " (degree " << rep.k << ")\n";
    out << "guaranteed: " << yes_no(rep.guaranteed) << "\n";
    out << "holds: " << yes_no(rep.holds) << "\n";
    out << "lhs: " << print_form(rep.lhs) << "\n";
    out << "rhs: " << print_form(rep.rhs) << "\n";
    out << "residual: " << print_form(rep.residual) << "\n";
    return 0;
}

// --- primitive -------------------------------------------------------------

inline int verb_primitive(const Shared& sh, const std::string& form_text, std::ostream& out,
                          std::ostream& err) {
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    ParsedForm pf = parse_form(form_text, g);
    print_warnings(pf, err);
    auto beta = as_invariant(pf.form);
    if (!beta)
        throw UsageError("primitive requires a left-invariant form (constant coefficients)");
    PrimitiveResult res = linear_growth_primitive(ctx, *beta);
    if (sh.json) {
        nlohmann::json cmd = command_echo(sh, "primitive");
        cmd["form"] = form_text;
        nlohmann::json j{{"schema_version", 1},
                         {"command", cmd},
                         {"beta", print_form(*beta)},
                         {"status", res.found() ? "found" : "no-linear-growth"}};
        if (res.found()) j["alpha"] = print_form(res.alpha);
        emit_json(out, j);
    } else {
        out << "group: " << sh.group_ref << "\n";
        out << "beta: " << print_form(*beta) << "\n";
        if (res.found()) {
            out << "status: found\n";
            out << "alpha: " << print_form(res.alpha) << "\n";
        } else {
            out << "status: no-linear-growth\n";
        }
    }
    if (!res.found()) {
        err << "error: no linear-growth primitive exists for this form\n";
        return 1;
    }
    return 0;
}

// --- verify-* --------------------------------------------------------------

inline int emit_report(const Shared& sh, ExperimentReport rep, std::ostream& out) {
    rep.group_ref = sh.group_ref;
    if (sh.json)
        emit_json(out, report_to_json(rep));
    else
        out << report_to_text(rep);
    return 0;
}

inline int verb_verify_cutoff(const Shared& sh, int m, const std::vector<double>& lambdas,
                              double radius, std::uint64_t samples, std::ostream& out,
                              std::ostream& err) {
    (void)err;
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    return emit_report(sh, cutoff_norm_experiment(ctx, m, lambdas, radius, samples, sh.seed), out);
}

inline int verb_verify_scaling(const Shared& sh, const std::string& form_text,
                               const std::vector<double>& radii, std::uint64_t samples,
                               std::ostream& out, std::ostream& err) {
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    ParsedForm pf = parse_form(form_text, g);
    print_warnings(pf, err);
    if (pf.form.is_zero()) throw UsageError("scaling experiment requires a nonzero form");
    auto S = make_gauge(g);
    GaugeForm omega = attach_profile(bump_coefficient(S), pf.form);
    return emit_report(sh, scaling_exponent_experiment(ctx, omega, radii, samples, sh.seed), out);
}

inline int verb_verify_pairing(const Shared& sh, const std::string& phi_text,
                               const std::string& omega_text, const std::string& beta_text,
                               const std::vector<double>& radii, double lambda,
                               const std::string& profile, std::uint64_t samples,
                               std::ostream& out, std::ostream& err) {
    StratifiedLieAlgebra g = resolve_group(sh.group_ref);
    CalcContext ctx(g);
    if (phi_text.empty() == omega_text.empty())
        throw UsageError("exactly one of --phi and --omega is required");
    if (profile != "bump" && profile != "slowdecay")
        throw UsageError("profile must be 'bump' or 'slowdecay'");

    ParsedForm pb = parse_form(beta_text, g);
    print_warnings(pb, err);
    auto beta = as_invariant(pb.form);
    if (!beta) throw UsageError("--beta requires a left-invariant form (constant coefficients)");

    auto S = make_gauge(g);
    auto with_profile = [&](const PolyForm& f) {
        if (profile == "bump") return attach_profile(bump_coefficient(S), f);
        GaugeForm acc(g.n());
        for (const auto& [mask, p] : f.components()) {
            long long h = 0;
            if (!p.is_homogeneous(g.layers(), &h))
                throw UsageError("the slow-decay profile requires homogeneous coefficients");
            acc += GaugeForm::term(
                g.n(), mask, GaugeCoefficient::from_poly(S, p) * slow_decay_coefficient(g, S, h));
        }
        return acc;
    };

    if (!phi_text.empty()) {
        ParsedForm pf = parse_form(phi_text, g);
        print_warnings(pf, err);
        if (pf.form.is_zero()) throw UsageError("the potential must be nonzero");
        GaugeForm phi = with_profile(pf.form);
        ExperimentReport rep = pairing_experiment(ctx, phi, *beta, radii, lambda, samples, sh.seed);
        rep.config["profile"] = profile;
        rep.config["phi"] = phi_text;
        rep.config["beta"] = beta_text;
        return emit_report(sh, std::move(rep), out);
    }
    if (profile != "bump")
        throw UsageError("--omega supports only the compactly supported bump profile");
    ParsedForm pf = parse_form(omega_text, g);
    print_warnings(pf, err);
    if (pf.form.is_zero()) throw UsageError("the form must be nonzero");
    GaugeForm omega = attach_profile(bump_coefficient(S), pf.form);
    ExperimentReport rep =
        pairing_integral_experiment(ctx, omega, *beta, radii, lambda, samples, sh.seed);
    rep.config["profile"] = profile;
    rep.config["omega"] = omega_text;
    rep.config["beta"] = beta_text;
    return emit_report(sh, std::move(rep), out);
}

}  // namespace cli_detail

// Run the command-line front end on already-split arguments (argv[0] is not
// included). Returns the process exit code: 0 success, 1 domain error,
// 2 usage or parse error.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::Shared;
    CLI::App app{"Exact calculus on the intrinsic complex of a Carnot group, with Monte Carlo "
                 "verification of its cutoff, scaling, and averaging-pairing estimates"};
    app.name("rumin-calc");
    app.require_subcommand(1);

    Shared sh;
    int rc = 0;

    auto add_common = [&sh](CLI::App* sub) {
        sub->add_option("--group", sh.group_ref,
                        "builtin reference (abelian:N, heisenberg:M, engel) or a "
                        "structure-constant file path")
            ->required();
        sub->add_flag("--json", sh.json, "emit one structured JSON document");
        sub->add_option("--seed", sh.seed, "random seed for experiments (default 12345)");
    };

    // group / betti / weights / exponents take only the common options.
    CLI::App* c_group = app.add_subcommand("group", "show and validate the group");
    add_common(c_group);
    c_group->callback([&] { rc = cli_detail::verb_group(sh, out, err); });

    CLI::App* c_betti = app.add_subcommand(
        "betti", "cohomology dimensions of the invariant complex next to the intrinsic dimensions");
    add_common(c_betti);
    c_betti->callback([&] { rc = cli_detail::verb_betti(sh, out, err); });

    CLI::App* c_weights = app.add_subcommand("weights", "weights W(k) of the intrinsic k-forms");
    add_common(c_weights);
    c_weights->callback([&] { rc = cli_detail::verb_weights(sh, out, err); });

    long long max_homogeneity = -1;
    CLI::App* c_jsets =
        app.add_subcommand("jsets", "weight jumps J(k, w) of the intrinsic differential");
    add_common(c_jsets);
    c_jsets->add_option("--max-homogeneity", max_homogeneity,
                        "coefficient homogeneity bound for the scan (default: automatic)");
    c_jsets->callback([&] { rc = cli_detail::verb_jsets(sh, max_homogeneity, out, err); });

    CLI::App* c_exponents =
        app.add_subcommand("exponents", "critical integrability exponents q(G, k)");
    add_common(c_exponents);
    c_exponents->callback([&] { rc = cli_detail::verb_exponents(sh, out, err); });

    std::string dc_form;
    int dc_degree = -1;
    CLI::App* c_dc = app.add_subcommand("dc", "apply the intrinsic differential to a form");
    add_common(c_dc);
    c_dc->add_option("--form", dc_form, "form expression, e.g. \"x2*t[1] - 1/2*t[3]\"")->required();
    c_dc->add_option("--degree", dc_degree, "expected exterior degree of the form");
    c_dc->callback([&] { rc = cli_detail::verb_dc(sh, dc_form, dc_degree, out, err); });

    std::string leibniz_alpha, leibniz_beta;
    CLI::App* c_leibniz = app.add_subcommand(
        "leibniz", "check the graded Leibniz rule on a pair of intrinsic forms (Heisenberg only)");
    add_common(c_leibniz);
    c_leibniz->add_option("--alpha", leibniz_alpha, "first factor")->required();
    c_leibniz->add_option("--beta", leibniz_beta, "second factor")->required();
    c_leibniz->callback([&] { rc = cli_detail::verb_leibniz(sh, leibniz_alpha, leibniz_beta, out, err); });

    std::string primitive_form;
    CLI::App* c_primitive = app.add_subcommand(
        "primitive", "solve d_c(alpha) = beta with coefficients of homogeneity 1");
    add_common(c_primitive);
    c_primitive->add_option("--form", primitive_form, "left-invariant intrinsic form beta")->required();
    c_primitive->callback([&] { rc = cli_detail::verb_primitive(sh, primitive_form, out, err); });

    int cutoff_m = 0;
    std::vector<double> cutoff_lambdas;
    double cutoff_radius = 1.0;
    std::uint64_t cutoff_samples = 100000;
    CLI::App* c_cutoff = app.add_subcommand(
        "verify-cutoff", "measure the decay of the cutoff derivative norm against log log lambda");
    add_common(c_cutoff);
    c_cutoff->add_option("--m", cutoff_m, "horizontal derivative order")->required();
    c_cutoff->add_option("--lambdas", cutoff_lambdas, "cutoff ratios, e.g. 16,64,256")
        ->required()
        ->delimiter(',');
    c_cutoff->add_option("--radius", cutoff_radius, "inner plateau radius R (default 1)");
    c_cutoff->add_option("--samples", cutoff_samples, "Monte Carlo samples per point");
    c_cutoff->callback([&] {
        rc = cli_detail::verb_verify_cutoff(sh, cutoff_m, cutoff_lambdas, cutoff_radius,
                                            cutoff_samples, out, err);
    });

    std::string scaling_form;
    std::vector<double> scaling_radii;
    std::uint64_t scaling_samples = 100000;
    CLI::App* c_scaling = app.add_subcommand(
        "verify-scaling",
        "measure the dilation exponent of the shell L1 norm; the compact bump profile is "
        "attached to the given invariant-frame form");
    add_common(c_scaling);
    c_scaling->add_option("--form", scaling_form, "form expression in the coframe t[i]")->required();
    c_scaling->add_option("--radii", scaling_radii, "dilation factors, e.g. 1,2,4,8")
        ->required()
        ->delimiter(',');
    c_scaling->add_option("--samples", scaling_samples, "Monte Carlo samples per point");
    c_scaling->callback([&] {
        rc = cli_detail::verb_verify_scaling(sh, scaling_form, scaling_radii, scaling_samples, out,
                                             err);
    });

    std::string pairing_phi, pairing_omega, pairing_beta, pairing_profile = "bump";
    std::vector<double> pairing_radii;
    double pairing_lambda = 2.0;
    std::uint64_t pairing_samples = 100000;
    CLI::App* c_pairing = app.add_subcommand(
        "verify-pairing", "estimate the averaging pairing against a growing cutoff ladder");
    add_common(c_pairing);
    c_pairing->add_option("--phi", pairing_phi,
                          "potential whose intrinsic differential is paired (Hoelder bound "
                          "columns are reported)");
    c_pairing->add_option("--omega", pairing_omega, "form paired directly (no potential)");
    c_pairing->add_option("--beta", pairing_beta, "left-invariant intrinsic factor")->required();
    c_pairing->add_option("--radii", pairing_radii, "plateau radii ladder, e.g. 1,2,4,8")
        ->required()
        ->delimiter(',');
    c_pairing->add_option("--lambda", pairing_lambda, "cutoff ratio (default 2)");
    c_pairing->add_option("--profile", pairing_profile,
                          "coefficient profile: bump (compact) or slowdecay (critical tail)");
    c_pairing->add_option("--samples", pairing_samples, "Monte Carlo samples per point");
    c_pairing->callback([&] {
        rc = cli_detail::verb_verify_pairing(sh, pairing_phi, pairing_omega, pairing_beta,
                                             pairing_radii, pairing_lambda, pairing_profile,
                                             pairing_samples, out, err);
    });

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        const bool help = dynamic_cast<const CLI::CallForHelp*>(&e) != nullptr ||
                          dynamic_cast<const CLI::CallForAllHelp*>(&e) != nullptr;
        return help ? code : 2;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const RuminError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace rumincalc
