#include "gammak/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gammak/compare.hpp"
#include "gammak/examples.hpp"
#include "gammak/gamma.hpp"
#include "gammak/ktheory.hpp"
#include "gammak/spec_io.hpp"
#include "gammak/wald.hpp"

namespace gammak {

const std::vector<std::string> kCommands = {
    "validate", "gamma", "axioms", "split", "k0",
    "quillen-a", "oplax", "adjunction", "homology", "report-all"};

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open '" + path + "'", "/");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

AxiomCheckOptions axiom_options(const RunParams& p) {
    AxiomCheckOptions opt;
    opt.budget = p.budget;
    opt.seed = p.seed;
    opt.check_universal_property = p.check_universal_property;
    return opt;
}

void require_permutative(const CategorySpec& spec, const std::string& command) {
    if (!spec.has_permutative())
        throw SpecError("command '" + command + "' needs a permutative category", "/");
}

Report run_validate(const CategorySpec& spec) {
    Report rep;
    if (spec.has_permutative()) {
        FinPermCat pcat = elaborate_permutative(spec);
        rep.merge(validate_category(pcat.cat()));
        rep.merge(validate_permutative(pcat));
    } else {
        FinCat cat = elaborate_category(spec);
        rep.merge(validate_category(cat));
    }
    if (spec.waldhausen) {
        WaldPresentation p = elaborate_wald(spec);
        PresentationWaldView view(p);
        rep.merge(validate_wald_view(view));
    }
    return rep;
}

Report run_gamma(const CategorySpec& spec, const RunParams& params) {
    FinPermCat pcat = elaborate_permutative(spec);
    TruncatedGammaView view = enumerate_truncated(pcat, params.max_len);
    Report rep;
    rep.section("window_objects").pass(static_cast<std::int64_t>(view.objects.size()));
    rep.section("window_morphisms").pass(static_cast<std::int64_t>(view.morphisms.size()));

    Section& wf = rep.section("well_formed");
    for (const GammaMor& m : view.morphisms) {
        std::string why;
        if (!well_formed(pcat, m, &why))
            wf.fail("well_formed", describe(pcat, m), why);
        else
            wf.pass();
    }

    // counting oracle: morphisms from A to B multiply independent per-position
    // choices of a block and a base morphism into the block tensor
    Section& counts = rep.section("hom_counts");
    const FinCat& bc = pcat.cat();
    for (std::size_t si = 0; si < view.objects.size(); ++si)
        for (std::size_t ti = 0; ti < view.objects.size(); ++ti) {
            const GammaObj& A = view.objects[si];
            const GammaObj& B = view.objects[ti];
            const int b = B.arity();
            std::int64_t expect = 1;
            for (ObjId a : A.entries) {
                std::int64_t options = 1;  // the empty block
                for (int mask = 1; mask < (1 << b); ++mask) {
                    std::vector<ObjId> sub;
                    for (int j = 0; j < b; ++j)
                        if (mask & (1 << j)) sub.push_back(B.entries[j]);
                    options += static_cast<std::int64_t>(
                        bc.hom(a, pcat.tensor_power(sub)).size());
                }
                expect *= options;
            }
            auto got = static_cast<std::int64_t>(
                view.by_pair[si][ti].size());
            if (got != expect)
                counts.fail("hom_count",
                            describe(pcat, A) + " -> " + describe(pcat, B),
                            std::to_string(got) + " enumerated, " +
                                std::to_string(expect) + " by the counting formula");
            else
                counts.pass();
        }
    return rep;
}

Report run_axioms(const CategorySpec& spec, const RunParams& params) {
    Report rep;
    AxiomCheckOptions opt = axiom_options(params);
    if (spec.has_permutative()) {
        FinPermCat pcat = elaborate_permutative(spec);
        GammaWaldView view = gamma_as_wald(pcat, params.max_len);
        rep.merge(validate_wald_view(view));
        rep.merge(check_waldhausen_axioms(view, opt));
        rep.merge(check_gluing(view, opt));
    } else if (spec.waldhausen) {
        WaldPresentation p = elaborate_wald(spec);
        PresentationWaldView view(p);
        rep.merge(validate_wald_view(view));
        rep.merge(check_waldhausen_axioms(view, opt));
    } else {
        throw SpecError("command 'axioms' needs a permutative category or a "
                        "waldhausen block",
                        "/");
    }
    return rep;
}

Report run_split(const CategorySpec& spec, const RunParams& params) {
    require_permutative(spec, "split");
    FinPermCat pcat = elaborate_permutative(spec);
    GammaWaldView view = gamma_as_wald(pcat, params.max_len);
    return check_weakly_split(view, axiom_options(params));
}

Report run_k0(const CategorySpec& spec, const RunParams& params) {
    require_permutative(spec, "k0");
    FinPermCat pcat = elaborate_permutative(spec);
    Report rep;

    AbGroupInvariants segal = k0_segal(pcat, &rep);
    rep.section("k0_segal = " + segal.describe()).pass();

    FinCommMonoid monoid = pi0_monoid(pcat, nullptr);
    PairConstructionGroup oracle = grothendieck_pairs_oracle(monoid);
    std::string why;
    Section& om = rep.section("k0_matches_pair_oracle");
    if (!matches_oracle(segal, oracle, &why))
        om.fail("pair_oracle", segal.describe(), why);
    else
        om.pass();

    GammaWaldView view = gamma_as_wald(pcat, params.max_len);
    AbGroupInvariants wald = k0_waldhausen(view, &rep);
    rep.section("k0_waldhausen = " + wald.describe()).pass();

    Section& agree = rep.section("k0_routes_agree");
    if (!(segal == wald))
        agree.fail("k0_routes", "K0",
                   "group-completion route gives " + segal.describe() +
                       ", relation-matrix route gives " + wald.describe());
    else
        agree.pass();
    return rep;
}

Report run_quillen_a(const CategorySpec& spec, const RunParams& params) {
    require_permutative(spec, "quillen-a");
    FinPermCat pcat = elaborate_permutative(spec);
    return check_comma_terminal(pcat, params.max_len);
}

Report run_oplax(const CategorySpec& spec, const RunParams& params) {
    require_permutative(spec, "oplax");
    FinPermCat pcat = elaborate_permutative(spec);
    return check_oplax_coherence(pcat, params.max_len, params.budget);
}

Report run_adjunction(const CategorySpec& spec, const RunParams& params) {
    Report rep;
    AxiomCheckOptions opt = axiom_options(params);
    const int over_len = std::min(params.max_len, 2);
    try {
        if (spec.has_permutative()) {
            FinPermCat pcat = elaborate_permutative(spec);
            GammaWaldView view = gamma_as_wald(pcat, params.max_len);
            rep.merge(check_triangle_identities(view, params.budget));
            rep.merge(check_triangle_identity_singletons(view));
            rep.merge(check_counit_exact(view, over_len, opt));
        } else if (spec.waldhausen) {
            WaldPresentation p = elaborate_wald(spec);
            PresentationWaldView view(p);
            rep.merge(check_triangle_identity_singletons(view));
            rep.merge(check_counit_exact(view, over_len, opt));
        } else {
            throw SpecError("command 'adjunction' needs a permutative category or "
                            "a waldhausen block",
                            "/");
        }
    } catch (const BudgetExceeded&) {
        rep.section("window_budget").skip();
    }
    return rep;
}

Report run_homology(const CategorySpec& spec, const RunParams& params) {
    FinCat cat = spec.has_permutative() ? elaborate_permutative(spec).cat()
                                        : elaborate_category(spec);
    ChainComplex cc = nerve_chain_complex(cat, params.max_dim);
    std::vector<AbGroupInvariants> hs = homology(cc);
    Report rep;
    for (std::size_t d = 0; d < hs.size(); ++d)
        rep.section("H" + std::to_string(d) + " = " + hs[d].describe()).pass();
    for (int d = 0; d <= cc.max_dim; ++d)
        rep.section("chains")
            .pass(static_cast<std::int64_t>(cc.generators[d].size()));
    return rep;
}

}  // namespace

Report run_command(const std::string& command, const std::string& spec_path,
                   const RunParams& params) {
    std::string bytes = read_file(spec_path);
    CategorySpec spec = parse_spec(bytes);

    Report rep;
    if (command != "validate") {
        // Deeper checks compose through the category tables, so an
        // inconsistent input has to be rejected here, not discovered mid-run.
        Report base = run_validate(spec);
        if (!base.clean()) {
            rep = std::move(base);
            rep.section("input_consistency")
                .fail("inconsistent_input", command,
                      "not run: the category description fails validation");
            rep.command = command;
            rep.input_path = spec_path;
            rep.input_digest = fnv1a(bytes);
            rep.max_len = params.max_len;
            rep.max_dim = params.max_dim;
            rep.budget = params.budget;
            rep.seed = params.seed;
            return rep;
        }
    }
    if (command == "validate") {
        rep = run_validate(spec);
    } else if (command == "gamma") {
        require_permutative(spec, command);
        rep = run_gamma(spec, params);
    } else if (command == "axioms") {
        rep = run_axioms(spec, params);
    } else if (command == "split") {
        rep = run_split(spec, params);
    } else if (command == "k0") {
        rep = run_k0(spec, params);
    } else if (command == "quillen-a") {
        rep = run_quillen_a(spec, params);
    } else if (command == "oplax") {
        rep = run_oplax(spec, params);
    } else if (command == "adjunction") {
        rep = run_adjunction(spec, params);
    } else if (command == "homology") {
        rep = run_homology(spec, params);
    } else if (command == "report-all") {
        rep = run_validate(spec);
        if (spec.has_permutative()) {
            rep.merge(run_gamma(spec, params));
            rep.merge(run_axioms(spec, params));
            rep.merge(run_split(spec, params));
            rep.merge(run_k0(spec, params));
            rep.merge(run_quillen_a(spec, params));
            rep.merge(run_oplax(spec, params));
            rep.merge(run_adjunction(spec, params));
        } else if (spec.waldhausen) {
            rep.merge(run_axioms(spec, params));
            rep.merge(run_adjunction(spec, params));
        }
        rep.merge(run_homology(spec, params));
    } else {
        throw SpecError("unknown command '" + command + "'", "/");
    }

    rep.command = command;
    rep.input_path = spec_path;
    rep.input_digest = fnv1a(bytes);
    rep.max_len = params.max_len;
    rep.max_dim = params.max_dim;
    rep.budget = params.budget;
    rep.seed = params.seed;
    return rep;
}

int cli_main(int argc, char** argv) {
    CLI::App app{"finite permutative categories, tuple categories and their "
                 "cofibration/weak-equivalence structure"};
    app.name("gammak");

    std::string command;
    std::string input;
    std::string format = "text";
    RunParams params;
    bool no_universal = false;

    app.add_option("command", command, "what to check")
        ->required()
        ->check(CLI::IsMember(kCommands));
    app.add_option("input", input, "category description (json)")->required();
    app.add_option("--max-len", params.max_len, "tuple length window")
        ->check(CLI::Range(0, 6));
    app.add_option("--max-dim", params.max_dim, "top homology degree")
        ->check(CLI::Range(0, 6));
    app.add_option("--budget", params.budget, "instance budget for searches")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", params.seed, "sampling seed");
    app.add_flag("--no-universal-property", no_universal,
                 "skip mediating-morphism uniqueness checks");
    app.add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    params.check_universal_property = !no_universal;

    try {
        Report rep = run_command(command, input, params);
        if (format == "json")
            std::cout << rep.to_json() << "\n";
        else
            std::cout << rep.to_text();
        return rep.clean() ? 0 : 1;
    } catch (const SpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what()
                  << " (shrink --max-len or raise --budget)\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace gammak
