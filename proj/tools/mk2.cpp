// mk2: symbol calculus for low-degree Milnor K-theory at desk scale.
//
// Subcommands: compute, tame, rho, verify, stability, window-info.
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage/parse, 65 bad data,
// 70 internal/computation error.

#include <CLI11.hpp>

#include <iostream>

#include "mk2/checks.hpp"
#include "mk2/parse.hpp"

using namespace mk2;

namespace {

struct Options {
    std::string ring_spec;
    std::string presentation = "ds";
    std::string t_expr, f_expr, g_expr, a_expr;
    std::string check;
    std::string format = "text";
    std::uint64_t seed = 1;
    long budget = 200;
    long max_deg = 1;
    long k = 5;
    long height = 2;
    int precision = 12;
    int support = 3;
    std::uint64_t characteristic = 7;
    std::uint64_t order_seed = 0;
    bool weak = false;
    bool print_presentation = false;
    int jobs = 1;
};

int emit(const VerificationReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << rep.json() << "\n";
    else
        std::cout << rep.text() << "\n";
    return rep.exit_code();
}

CheckParams params_of(const Options& o) {
    CheckParams p;
    p.seed = o.seed;
    p.budget = o.budget;
    p.max_degree = o.max_deg;
    p.coeff_height = o.height;
    p.precision = o.precision;
    p.jobs = o.jobs;
    return p;
}

LocalisationContext context_of(const Options& o, const Ring& r) {
    if (o.t_expr.empty()) throw ParseError("this command needs --t <prime element>");
    return LocalisationContext::make(r, parse_element(r, o.t_expr));
}

int cmd_compute(const Options& o) {
    Ring r = parse_ring_spec(o.ring_spec);
    if (!r->is_finite())
        throw MathError("compute needs a finite ring (zmod:<m> or fp:<p>)");
    std::unique_ptr<WindowPresentation> built;
    if (o.presentation == "s") {
        built = std::make_unique<WindowPresentation>(
            build_k2m_window(full_unit_window(r, 0)));
    } else if (o.presentation == "ds") {
        if (o.order_seed) {
            std::vector<Element> order = finite_ring_elements(r);
            Sampler smp(o.order_seed);
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1],
                          order[static_cast<std::size_t>(smp.below(static_cast<long>(i)))]);
            built = std::make_unique<WindowPresentation>(build_ds_full(r, &order));
        } else {
            built = std::make_unique<WindowPresentation>(build_ds_full(r));
        }
    } else {
        throw ParseError("--presentation must be s or ds");
    }
    GroupInvariants inv = built->invariants();
    if (o.print_presentation) std::cout << built->group().to_text();
    if (o.format == "json") {
        std::cout << "{\"ring\":\"" << json_escape(r->spec_string())
                  << "\",\"presentation\":\"" << o.presentation
                  << "\",\"generators\":" << built->group().gen_count()
                  << ",\"relations\":" << built->group().relations().size()
                  << ",\"invariants\":" << inv.json() << "}\n";
    } else {
        std::cout << "K2 presentation (" << o.presentation << ") of " << r->spec_string()
                  << ": " << built->group().gen_count() << " generators, "
                  << built->group().relations().size() << " relations\n"
                  << "invariants: " << inv.json()
                  << (inv.is_trivial() ? "  (trivial group)" : "") << "\n";
    }
    return 0;
}

int cmd_tame(const Options& o) {
    Ring rt = parse_ring_spec(o.ring_spec);
    Ring base = rt;
    if (rt->kind == RingKind::RatFuncLocal && !o.t_expr.empty()) {
        // accept the localised ring spec: strip t from the inverted list and
        // let the context rebuild R_t
        Ring probe = make_ratfunc(rt->p, rt->vars, {});
        Poly tm = parse_element(probe, o.t_expr).fraction().num.monic();
        std::vector<Poly> inv;
        for (const Poly& e : rt->inverted)
            if (!(e == tm)) inv.push_back(e);
        base = make_ratfunc(rt->p, rt->vars, inv);
    }
    LocalisationContext ctx = context_of(o, base);
    if (o.f_expr.empty() || o.g_expr.empty())
        throw ParseError("tame needs --f and --g");
    Element f = parse_element(ctx.localised(), o.f_expr);
    Element g = parse_element(ctx.localised(), o.g_expr);
    Element c = tame_symbol(f, g, ctx);
    long nf = ctx.t_valuation(f), ng = ctx.t_valuation(g);
    Element cbar_val = ctx.residue(c);
    if (o.format == "json") {
        std::cout << "{\"c\":\"" << json_escape(c.str()) << "\",\"residue\":\""
                  << json_escape(cbar_val.str()) << "\",\"nu_f\":" << nf
                  << ",\"nu_g\":" << ng << "}\n";
    } else {
        std::cout << "c(f,g) = " << c.str() << "\n"
                  << "mod t  = " << cbar_val.str() << "\n"
                  << "nu(f) = " << nf << ", nu(g) = " << ng << "\n";
    }
    return 0;
}

int cmd_rho(const Options& o) {
    Ring base = parse_ring_spec(o.ring_spec);
    LocalisationContext ctx = context_of(o, base);
    if (o.f_expr.empty()) throw ParseError("rho needs --f");
    Element f = parse_element(base, o.f_expr);
    SymbolExpr e = rho(ctx, f);
    if (o.format == "json")
        std::cout << "{\"rho\":\"" << json_escape(e.str()) << "\"}\n";
    else
        std::cout << "rho_t(" << f.str() << ") = " << e.str() << "\n";
    return 0;
}

int cmd_verify(const Options& o) {
    CheckParams p = params_of(o);
    const std::string& c = o.check;
    if (c == "remark35") {
        return emit(remark_3_5_check(o.precision, o.support, static_cast<int>(o.height),
                                     o.characteristic),
                    o.format);
    }
    Ring r = parse_ring_spec(o.ring_spec);
    if (c == "stability") {
        if (o.weak || !r->is_finite())
            return emit(check_weak_k_fold_stable(r, o.k, p), o.format);
        return emit(check_k_fold_stable(r, o.k), o.format);
    }
    if (c == "skew") {
        if (o.a_expr.empty()) throw ParseError("skew needs --a");
        return emit(skew_check(r, parse_element(r, o.a_expr), p), o.format);
    }
    if (c == "a2") return emit(check_A2(r, p), o.format);
    LocalisationContext ctx = context_of(o, r);
    if (c == "rho-lemma") return emit(rho_tame_sweep(ctx, p), o.format);
    if (c == "rho-identities") return emit(rho_identities_check(ctx, p), o.format);
    if (c == "tame-laws") return emit(tame_laws_check(ctx, p), o.format);
    if (c == "pushout") return emit(cocartesian_check(ctx, p), o.format);
    if (c == "ses") return emit(ses_check(ctx, p), o.format);
    if (c == "a1") return emit(check_A1(ctx, p), o.format);
    if (c == "a3") return emit(check_A3(ctx, p), o.format);
    if (c == "a4") return emit(check_A4(ctx, p), o.format);
    throw CLI::ValidationError("unknown check: " + c);
}

int cmd_window_info(const Options& o) {
    Ring r = parse_ring_spec(o.ring_spec);
    SymbolWindow w = full_unit_window(r, o.max_deg);
    if (o.format == "json") {
        std::cout << "{\"ring\":\"" << json_escape(r->spec_string())
                  << "\",\"height\":" << o.max_deg << ",\"units\":" << w.units.size()
                  << ",\"elements\":" << w.elements.size() << "}\n";
    } else {
        std::cout << w.describe() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbol calculus for K2 of localisations of local rings"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ring", o.ring_spec,
                        "ring spec (zmod:<m>, fp:<p>, q, ratfunc:..., laurent(...))");
        sub->add_option("--format", o.format, "output format: text|json")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--seed", o.seed, "sampling seed");
        sub->add_option("--budget", o.budget, "case budget for sampled checks");
        sub->add_option("--max-deg", o.max_deg, "window degree bound");
        sub->add_option("--jobs", o.jobs, "parallel workers (default 1)");
    };

    CLI::App* compute =
        app.add_subcommand("compute", "group invariants of a symbol presentation");
    add_common(compute);
    compute->add_option("--presentation", o.presentation,
                        "s (Steinberg) or ds (Dennis-Stein)");
    compute->add_option("--order-seed", o.order_seed, "shuffle element enumeration");
    compute->add_flag("--print-presentation", o.print_presentation,
                      "dump the presentation in text form");

    CLI::App* tame = app.add_subcommand("tame", "tame symbol c(f,g)");
    add_common(tame);
    tame->add_option("--t", o.t_expr, "prime element");
    tame->add_option("--f", o.f_expr, "first unit of R_t");
    tame->add_option("--g", o.g_expr, "second unit of R_t");

    CLI::App* rho_cmd = app.add_subcommand("rho", "rho_t of an element of (1+tR)^x");
    add_common(rho_cmd);
    rho_cmd->add_option("--t", o.t_expr, "prime element");
    rho_cmd->add_option("--f", o.f_expr, "element of (1+tR)^x");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify);
    verify
        ->add_option("check", o.check,
                     "rho-lemma|pushout|ses|stability|a1|a2|a3|a4|remark35|skew|"
                     "rho-identities|tame-laws")
        ->required();
    verify->add_option("--t", o.t_expr, "prime element");
    verify->add_option("--k", o.k, "stability index");
    verify->add_option("--a", o.a_expr, "element for the skew derivation");
    verify->add_flag("--weak", o.weak, "check the weak variant of stability");
    verify->add_option("--prec", o.precision, "Laurent precision (remark35)");
    verify->add_option("--support", o.support, "t-support bound (remark35)");
    verify->add_option("--height", o.height, "coefficient height bound");
    verify->add_option("--char", o.characteristic, "base characteristic (remark35)");

    CLI::App* stab =
        app.add_subcommand("stability", "k-fold stability (alias of verify stability)");
    add_common(stab);
    stab->add_option("--k", o.k, "stability index");
    stab->add_flag("--weak", o.weak, "check the weak variant");

    CLI::App* winfo = app.add_subcommand("window-info", "unit window statistics");
    add_common(winfo);

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(o);
        if (tame->parsed()) return cmd_tame(o);
        if (rho_cmd->parsed()) return cmd_rho(o);
        if (verify->parsed()) return cmd_verify(o);
        if (stab->parsed()) {
            Options alias = o;
            alias.check = "stability";
            return cmd_verify(alias);
        }
        if (winfo->parsed()) return cmd_window_info(o);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 64;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const NotAUnit& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 65;
    } catch (const NotInRing& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 65;
    } catch (const MathError& e) {
        std::cerr << "computation error: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 70;
    }
    return 64;
}
