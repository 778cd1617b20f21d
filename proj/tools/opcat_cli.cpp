// opcat: batch driver for the exact-arithmetic operadic category engine.
// Subcommands: validate, construct, bar, blob, compare.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

#include "opcat/bar.hpp"
#include "opcat/colored.hpp"
#include "opcat/fixtures.hpp"

using namespace opcat;

namespace {

struct Report {
    std::string format = "text";
    std::vector<std::pair<std::string, std::string>> rows;
    bool failed = false;

    void add(const std::string& key, const std::string& value) { rows.emplace_back(key, value); }
    void check(const std::string& key, bool ok, const std::string& detail = "") {
        failed |= !ok;
        add(key, std::string(ok ? "pass" : "FAIL") + (detail.empty() ? "" : " " + detail));
    }
    int finish() {
        std::sort(rows.begin(), rows.end());
        for (auto& [k, v] : rows) {
            if (format == "machine")
                std::cout << k << "=" << v << "\n";
            else
                std::cout << k << ": " << v << "\n";
        }
        return failed ? 1 : 0;
    }
};

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

long bar_size_estimate(const UnaryOpCat& o, const OperadicLeftModule& mcat, const LinOperad& p,
                       const PModule& m, int lobj, int depth) {
    long total = 0;
    for (int n = 0; n <= depth; ++n)
        for (const auto& t : enumerate_towers(o, mcat, lobj, n)) {
            long sz = p.dim(t.T[0]);
            for (int F : t.F) sz *= p.dim(F);
            sz *= m.dim(t.N);
            total += sz;
        }
    return total;
}

constexpr long kSizeLimit = 200000;

int cmd_validate(const std::string& path, Report& rep) {
    auto j = read_json_file(path);
    rep.add("fixture.hash", std::to_string(fixture_hash(j)));
    std::string kind = j.at("kind").get<std::string>();
    rep.add("fixture.kind", kind);
    std::string dir = dir_of(path);
    if (kind == "fincat") {
        auto c = load_fincat(j);
        auto r = validate_category(c);
        rep.check("category.axioms", r.ok(), r.ok() ? "" : r.items.front());
    } else if (kind == "opcat") {
        auto o = load_opcat(j);
        auto rb = validate_category(o.base);
        rep.check("category.axioms", rb.ok(), rb.ok() ? "" : rb.items.front());
        auto r = validate_opcat(o);
        rep.check("opcat.axioms", r.ok(), r.ok() ? "" : r.items.front());
        if (o.terminals) {
            auto u = unitality_report(o);
            rep.add("opcat.unitality", std::string(u.left ? "left" : "-") + "/" + (u.right ? "right" : "-"));
        }
        auto nd = nerve_diagnostic(o);
        rep.check("opcat.nerve", nd.always_identities_ok && nd.n2_ok && nd.n3_ok);
    } else if (kind == "monoid") {
        auto m = load_monoid(j);
        try {
            auto r = monoid_opcat(m);
            rep.check("monoid.laws", true);
            rep.check("monoid.opcat", validate_opcat(r.cat).ok());
        } catch (const StructuralError& e) {
            rep.check("monoid.laws", false, e.what());
        }
    } else if (kind == "set_operad") {
        auto f = load_set_operad(j, dir);
        auto r = validate_set_operad(f.category, f.operad);
        rep.check("operad.axioms", r.ok(), r.ok() ? "" : r.items.front());
        if (f.cat_units) {
            auto lr = check_unital_cat_set(f.category, f.operad, *f.cat_units);
            rep.add("operad.cat_unital", std::string(lr.left ? "left" : "-") + "/" + (lr.right ? "right" : "-"));
        }
        if (f.pseudo_units) {
            auto lr = check_pseudo_unital(f.category, f.operad, *f.pseudo_units);
            rep.check("operad.pseudo_unital", lr.left && lr.right);
        }
    } else if (kind == "lin_operad") {
        auto f = load_lin_operad(j, dir);
        auto r = validate_lin_operad(f.category, f.operad);
        rep.check("operad.axioms", r.ok(), r.ok() ? "" : r.items.front());
        if (f.fiberwise_units) {
            auto lr = check_unital_fiberwise_lin(f.category, f.operad, *f.fiberwise_units);
            rep.check("operad.fiberwise_unital", lr.left && lr.right);
        }
    } else if (kind == "op_module") {
        auto f = load_op_module(j, dir);
        auto r = validate_operadic_module(f.category, f.module);
        rep.check("module.axioms", r.ok(), r.ok() ? "" : r.items.front());
        rep.check("module.wbu", check_wbu_mod(f.category, f.module).ok);
    } else if (kind == "pmodule") {
        auto f = load_pmodule(j, dir);
        auto r = validate_pmodule(f.operad.category, f.module.module, f.operad.operad, f.pmod);
        rep.check("pmodule.axioms", r.ok(), r.ok() ? "" : r.items.front());
    } else if (kind == "blob_model") {
        auto m = load_blob_model(j);
        auto r = validate_blob_model(m);
        rep.check("model.axioms", r.ok(), r.ok() ? "" : r.items.front());
        if (r.ok()) {
            auto sys = build_blob_system(m);
            rep.check("model.S.partial_operad", validate_set_operad(sys.Blob.cat, sys.S).ok());
            auto pu = check_pseudo_unital(sys.Blob.cat, sys.S, sys.S_units);
            rep.check("model.S.pseudo_unital", pu.left && pu.right);
            rep.check("model.Fbar.operad", validate_lin_operad(sys.BlobC.dec_aodot, sys.Fbar).ok());
            auto lr = check_unital_fiberwise_lin(sys.BlobC.dec_aodot, sys.Fbar, sys.Fbar_eta);
            rep.check("model.Fbar.unital", lr.left && lr.right);
            rep.check("model.Mbar.module",
                      validate_pmodule(sys.BlobC.dec_aodot, sys.MbarC.mod, sys.Fbar, sys.Mbar_lin).ok());
        }
    } else {
        throw CLI::ValidationError("unknown fixture kind: " + kind);
    }
    return rep.finish();
}

int cmd_construct(const std::string& what, const std::string& path, const std::string& arg,
                  const std::string& out_path) {
    auto j = read_json_file(path);
    Json out;
    if (what == "decollage") {
        out = save_opcat(decollage(load_fincat(j)));
    } else if (what == "tautological") {
        out = save_opcat(tautological(load_fincat(j)).cat);
    } else if (what == "adjoin-terminal") {
        out = save_fincat(adjoin_terminal(load_fincat(j)));
    } else if (what == "slice") {
        auto c = load_fincat(j);
        int s = c.find_obj(arg);
        if (s < 0) throw CLI::ValidationError("slice: unknown object " + arg);
        out = save_fincat(slice(c, s).cat);
    } else if (what == "monoid-opcat") {
        out = save_opcat(monoid_opcat(load_monoid(j)).cat);
    } else if (what == "groth") {
        auto f = load_set_operad(j, dir_of(path));
        GrothResult g = f.cat_units ? grothendieck_cat(f.category, f.operad, *f.cat_units)
                                    : grothendieck_pseudo(f.category, f.operad,
                                                          f.pseudo_units ? *f.pseudo_units
                                                                         : std::vector<std::vector<int>>{});
        out = save_opcat(g.total);
    } else {
        throw CLI::ValidationError("unknown construction: " + what);
    }
    if (out_path.empty())
        std::cout << canonical_dump(out);
    else
        write_json_file(out_path, out);
    return 0;
}

int cmd_bar(const std::string& path, const std::string& object, int depth, uint64_t seed,
            const std::string& export_path, Report& rep) {
    auto j = read_json_file(path);
    rep.add("fixture.hash", std::to_string(fixture_hash(j)));
    auto f = load_pmodule(j, dir_of(path));
    int lobj = -1;
    for (int l = 0; l < f.module.module.m.n_lobj(); ++l)
        if (f.module.module.m.lobj[l] == object) lobj = l;
    if (lobj < 0) throw CLI::ValidationError("unknown module object " + object);
    long est = bar_size_estimate(f.operad.category, f.module.module, f.operad.operad, f.pmod, lobj, depth);
    if (est > kSizeLimit) {
        rep.check("bar.resource_bound", false,
                  "estimated basis size " + std::to_string(est) + " exceeds " + std::to_string(kSizeLimit));
        return rep.finish();
    }
    BarInput in{f.operad.category, f.module.module, f.operad.operad, f.pmod};
    auto bar = bar_complex(in, lobj, depth);
    if (!export_path.empty()) {
        std::ofstream out(export_path);
        out << export_text(bar.cx);
        rep.add("bar.exported", export_path);
    }
    for (int n = 0; n <= depth; ++n) rep.add("bar.dim." + std::to_string(n), std::to_string(bar.cx.dims[n]));
    rep.add("bar.betti.-1", std::to_string(betti(bar.cx, -1)));
    for (int k = 0; k + 1 <= depth; ++k)
        rep.add("bar.betti." + std::to_string(k), std::to_string(betti(bar.cx, k)));
    rep.check("bar.dd_zero", bar.cx.validate().ok());
    if (f.operad.fiberwise_units && depth >= 1) {
        auto nb = normalized_bar(in, bar, *f.operad.fiberwise_units);
        for (int n = 0; n <= depth; ++n)
            rep.add("normalized.dim." + std::to_string(n), std::to_string(nb.cx.dims[n]));
    }
    // seeded permutation invariance of the homology window
    {
        SplitMix64 rng(seed);
        ChainComplex p = bar.cx;
        std::vector<std::vector<int>> perm(depth + 1);
        for (int n = 0; n <= depth; ++n) {
            perm[n].resize(bar.cx.dims[n]);
            for (int i = 0; i < bar.cx.dims[n]; ++i) perm[n][i] = i;
            for (int i = bar.cx.dims[n] - 1; i > 0; --i)
                std::swap(perm[n][i], perm[n][rng.below(i + 1)]);
        }
        for (int n = 1; n <= depth; ++n) {
            Matrix d(bar.cx.dims[n - 1], bar.cx.dims[n]);
            for (int i = 0; i < d.rows; ++i)
                for (int jx = 0; jx < d.cols; ++jx)
                    d.at(perm[n - 1][i], perm[n][jx]) = bar.cx.boundary[n].at(i, jx);
            p.boundary[n] = d;
        }
        Matrix eps(bar.cx.aug_dim, bar.cx.dims[0]);
        for (int i = 0; i < eps.rows; ++i)
            for (int jx = 0; jx < eps.cols; ++jx) eps.at(i, perm[0][jx]) = bar.cx.eps->at(i, jx);
        p.eps = eps;
        bool same = betti(p, -1) == betti(bar.cx, -1);
        for (int k = 0; k + 1 <= depth; ++k) same &= betti(p, k) == betti(bar.cx, k);
        rep.check("bar.permutation_invariance", same, "seed " + std::to_string(seed));
    }
    return rep.finish();
}

int cmd_blob(const std::string& path, int depth, Report& rep) {
    auto j = read_json_file(path);
    rep.add("fixture.hash", std::to_string(fixture_hash(j)));
    auto m = load_blob_model(j);
    auto sys = build_blob_system(m);
    long est = bar_size_estimate(sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin, sys.upsilon, depth);
    if (est > kSizeLimit) {
        rep.check("blob.resource_bound", false, "estimated basis size " + std::to_string(est));
        return rep.finish();
    }
    rep.check("blob.S.pseudo_unital", [&] {
        auto pu = check_pseudo_unital(sys.Blob.cat, sys.S, sys.S_units);
        return pu.left && pu.right;
    }());
    auto g = blobC_is_groth_of_S(sys);
    rep.check("blob.groth_comparison", g.ok, g.why);
    // completed side: the contraction of the bar over the extended module
    BarInput in_bar{sys.BlobC.dec_aodot, sys.MbarC.mod, sys.Fbar, sys.Mbar_lin};
    auto bar_c = bar_complex(in_bar, sys.upsilon_bar, depth);
    auto h = contracting_homotopy(in_bar, bar_c, sys.Fbar_eta, sys.upsilon_bar);
    rep.check("blob.completed_bar.contraction", verify_contraction(bar_c.cx, h));
    rep.check("blob.completed_bar.h0", betti_unaugmented(bar_c.cx, 0) == bar_c.cx.aug_dim);
    // plain side: the homology at the augmentation against the skein oracle
    BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
    auto bar = bar_complex(in, sys.upsilon, depth);
    for (int n = 0; n <= depth; ++n) rep.add("bar.dim." + std::to_string(n), std::to_string(bar.cx.dims[n]));
    int oracle = skein_dim(m);
    int hm1 = betti(bar.cx, -1);
    rep.add("skein.oracle", std::to_string(oracle));
    rep.add("skein.bar", std::to_string(hm1));
    rep.check("blob.skein_comparison", hm1 == oracle);
    return rep.finish();
}

int cmd_compare(const std::string& path, int depth, Report& rep) {
    auto j = read_json_file(path);
    rep.add("fixture.hash", std::to_string(fixture_hash(j)));
    auto m = load_blob_model(j);
    auto sys = build_blob_system(m);
    long est = bar_size_estimate(sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin, sys.upsilon, depth);
    if (est > kSizeLimit) {
        rep.check("compare.resource_bound", false, "estimated basis size " + std::to_string(est));
        return rep.finish();
    }
    BarInput in{sys.BlobC.cat, sys.MmodC.mod, sys.F, sys.M_lin};
    auto beta = bar_complex(in, sys.upsilon, depth);
    auto sb = simplicial_bar(sys, depth);
    auto cmp = compare_beta_with_simplicial(sys, beta, sb);
    rep.check("compare.beta_iso_simplicial", cmp.ok, cmp.why);
    auto nb = normalize_simplicial(sb.cx, sb.s_ops);
    auto nb_beta = normalized_bar(in, beta, sys.F_eta);
    bool norm_match = true;
    for (int n = 0; n <= depth; ++n) norm_match &= nb.cx.dims[n] == nb_beta.cx.dims[n];
    rep.check("compare.normalized_dims", norm_match);
    auto fb = differential_bar(sys, depth);
    auto phi = levelization(sys, fb, sb, nb);
    rep.check("compare.levelization_chain_map", validate_chain_map(fb.cx, nb.cx, phi).ok());
    int upto = depth >= 1 ? depth - 1 : 0;
    rep.check("compare.levelization_quasi_iso", is_quasi_iso_upto(fb.cx, nb.cx, phi, upto),
              "verified <= " + std::to_string(upto));
    auto bc = blob_complex(sys, depth);
    rep.add("blob_complex.h0", std::to_string(betti_unaugmented(bc, 0)));
    rep.check("compare.blob_h0_skein", betti_unaugmented(bc, 0) == skein_dim(m));
    bool self_ok = true;
    for (auto c : all_colors(sys)) {
        auto cx = self_bar(sys, c, depth);
        for (int k = 1; k + 1 <= depth; ++k) self_ok &= betti_unaugmented(cx, k) == 0;
    }
    rep.check("compare.self_bar_acyclic", self_ok);
    std::string why;
    rep.check("compare.ball_decomposition", ball_decomposition_check(sys, depth >= 1 ? depth - 1 : 0, &why),
              why);
    // the summary square: augmentations agree around the diagram
    Matrix lhs = *nb.cx.eps * nb.proj.level[0] * cmp.beta_to_c.level[0];
    rep.check("compare.summary_square", lhs == *beta.cx.eps);
    return rep.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic engine for unary operadic categories, bar resolutions, and the"
                 " one-dimensional blob model"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));

    std::string path, object = "(M;b)", what, arg, out_path;
    int depth = 3;
    uint64_t seed = 20240101;

    auto* validate = app.add_subcommand("validate", "run the validator matching the fixture kind");
    validate->add_option("fixture", path)->required();

    auto* construct = app.add_subcommand("construct", "derive a fixture from another one");
    construct->add_option("what", what, "decollage|tautological|adjoin-terminal|slice|monoid-opcat|groth")
        ->required();
    construct->add_option("fixture", path)->required();
    construct->add_option("arg", arg, "extra argument (slice object)");
    construct->add_option("-o,--output", out_path, "write to a file instead of stdout");

    auto* bar = app.add_subcommand("bar", "bar resolution of a pmodule fixture");
    bar->add_option("fixture", path)->required();
    bar->add_option("--object", object, "module object name");
    bar->add_option("--depth", depth, "truncation depth");
    bar->add_option("--seed", seed, "seed for the permutation cross-check");
    std::string export_path;
    bar->add_option("--export", export_path, "write the complex as labeled sparse text");

    auto* blob = app.add_subcommand("blob", "skein pipeline for a blob model");
    blob->add_option("model", path)->required();
    blob->add_option("--depth", depth, "truncation depth");
    blob->add_option("--seed", seed, "accepted for reproducibility; unused here");

    auto* compare = app.add_subcommand("compare", "bar constructions against each other on a blob model");
    compare->add_option("model", path)->required();
    compare->add_option("--depth", depth, "truncation depth");
    compare->add_option("--seed", seed, "accepted for reproducibility; unused here");

    CLI11_PARSE(app, argc, argv);
    Report rep;
    rep.format = format;
    try {
        if (validate->parsed()) return cmd_validate(path, rep);
        if (construct->parsed()) return cmd_construct(what, path, arg, out_path);
        if (bar->parsed()) return cmd_bar(path, object, depth, seed, export_path, rep);
        if (blob->parsed()) return cmd_blob(path, depth, rep);
        if (compare->parsed()) return cmd_compare(path, depth, rep);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
