#include "opkan/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <type_traits>

#include "opkan/finstar.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/io.hpp"
#include "opkan/kanext.hpp"
#include "opkan/sset.hpp"

namespace opkan {

namespace {

using Clock = std::chrono::steady_clock;

/** Runs cells into one report, skipping on resource limits and after the time budget. */
struct Runner {
    Report report;
    Clock::time_point start = Clock::now();
    double timeout = 0.0;

    void cell(const std::string& prefix, const std::function<Report()>& f) {
        double used = std::chrono::duration<double>(Clock::now() - start).count();
        if (timeout > 0 && used > timeout) {
            report.add(prefix + "cell", Status::Skipped, "time budget exhausted");
            return;
        }
        auto t0 = Clock::now();
        try {
            Report c = f();
            double dt = std::chrono::duration<double>(Clock::now() - t0).count();
            for (auto& e : c.entries) e.seconds = dt;
            report.merge(c, prefix);
        } catch (const ResourceLimit& e) {
            report.add(prefix + "cell", Status::Skipped, e.what());
        }
    }
};

constexpr std::size_t kExportLimit = 200000;

template <class T>
void export_check(Report& r, const std::string& what, const T& x) {
    if constexpr (std::is_same_v<T, FiniteSimplicialSet>) {
        if (x.total_generators() > kExportLimit) {
            r.add("export round trip: " + what, Status::Skipped,
                  std::to_string(x.total_generators()) + " generators exceed the export limit " +
                      std::to_string(kExportLimit));
            return;
        }
    }
    std::string err = roundtrip_failure(x);
    r.add("export round trip: " + what, err.empty(), err);
}

int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long b = 1;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return static_cast<int>(b);
}

std::vector<Mono> monotone_maps(int q, int p) {
    std::vector<Mono> out;
    Mono t(static_cast<std::size_t>(q + 1), 0);
    while (true) {
        out.push_back(t);
        int i = q;
        while (i >= 0 && t[i] == p) --i;
        if (i < 0) break;
        int v = t[i] + 1;
        for (int u = i; u <= q; ++u) t[u] = v;
    }
    return out;
}

std::vector<std::size_t> nondegenerate_counts(const FiniteSimplicialSet& X) {
    std::vector<std::size_t> c;
    for (int l = 0; l <= X.dim_bound(); ++l) c.push_back(static_cast<std::size_t>(X.count(l)));
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

std::string counts_string(const std::vector<std::size_t>& c) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s;
}

Report suite_ez() {
    Report r;
    for (int n = 0; n <= 4; ++n) {
        FiniteSimplicialSet S = standard_simplex(n);
        auto errs = S.check(true, 1);
        r.add("Delta^" + std::to_string(n) + " satisfies the simplicial identities", errs.empty(),
              errs.empty() ? "" : errs.front());
        bool counts = true;
        for (int k = 0; k <= n; ++k) counts = counts && S.count(k) == binomial(n + 1, k + 1);
        r.add("Delta^" + std::to_string(n) + " has C(n+1,k+1) nondegenerate k-simplices", counts);
    }
    // In Delta^n a simplex is its vertex sequence, so operator application is precomposition.
    for (int n = 0; n <= 3; ++n) {
        FiniteSimplicialSet S = standard_simplex(n);
        std::size_t checked = 0, bad = 0;
        std::string w;
        for (int l = 0; l <= n + 1; ++l)
            S.for_each_simplex(l, [&](const Simplex& x) {
                std::vector<int> xv = S.vertices(x);
                for (int q = 0; q <= 3; ++q)
                    for (const Mono& th : monotone_maps(q, l)) {
                        ++checked;
                        std::vector<int> want;
                        for (int t : th) want.push_back(xv[t]);
                        Simplex y = S.apply(x, th);
                        if (S.vertices(y) != want || y != simplex_with_vertices(n, want)) {
                            if (bad++ == 0) w = S.simplex_name(x);
                        }
                    }
            });
        r.add("Delta^" + std::to_string(n) + ": normal forms agree with vertex precomposition (" +
                  std::to_string(checked) + " cases)",
              bad == 0, w);
    }
    FiniteSimplicialSet d0 = standard_simplex(0), d1 = standard_simplex(1), d2 = standard_simplex(2);
    FiniteSimplicialSet sq = product(d1, d1);
    r.add("Delta^1 x Delta^1 has 4, 5, 2 nondegenerate simplices", counts_string(nondegenerate_counts(sq)) == "4,5,2",
          counts_string(nondegenerate_counts(sq)));
    r.add("Delta^1 x Delta^1 satisfies the simplicial identities", sq.check(true, 1).empty());
    FiniteSimplicialSet j10 = join(d1, d0);
    r.add("Delta^1 * Delta^0 has the counts of Delta^2", nondegenerate_counts(j10) == nondegenerate_counts(d2));
    FiniteSimplicialSet je = join(d2, FiniteSimplicialSet::empty_set());
    r.add("the empty set is a unit for join", nondegenerate_counts(je) == nondegenerate_counts(d2));
    SubsetMask e01 = subset_generated(d2, {simplex_with_vertices(2, {0, 1})});
    SubsetMask e12 = subset_generated(d2, {simplex_with_vertices(2, {1, 2})});
    SubsetMask v1 = subset_generated(d2, {simplex_with_vertices(2, {1})});
    r.add("horn Lambda^2_1 is the pushout of its two edges over the middle vertex",
          pushout_check(v1, e01, e12, horn_mask(d2, 1)).ok());
    r.add("Delta^2 is not the pushout of the two edges",
          pushout_check(v1, e01, e12, SubsetMask(d2, true)).status == PushoutStatus::NotPushout);
    for (int n = 0; n <= 3; ++n) export_check(r, "Delta^" + std::to_string(n), standard_simplex(n));
    export_check(r, "Delta^1 x Delta^1", sq);
    export_check(r, "Delta^1 * Delta^0", j10);
    export_check(r, "empty set", FiniteSimplicialSet::empty_set());
    FinStarNerve N = nerve_finstar(1, 1, 1);
    export_check(r, "N(Fin*<=1) truncated at 1", *N.nerve);
    FiniteSimplicialSet back = sset_from_json(to_json(*N.nerve));
    r.add("N(Fin*<=1) re-imports with the same faces", export_text(back) == export_text(*N.nerve) &&
                                                              nondegenerate_counts(back) == nondegenerate_counts(*N.nerve));
    return r;
}

Report suite_finstar(int K, int n, int m, int D, double timeout) {
    Runner run;
    run.timeout = timeout;
    run.cell("", [&] { return edge_taxonomy_sweep(K, n); });
    run.cell("", [&] { return partition_sweep(K, n, m); });
    run.cell("", [&] {
        Report r;
        FinStarCategory C = finstar_category(K, 1, n);
        export_check(r, "Fin*<=" + std::to_string(K) + " x [1.." + std::to_string(n) + "]", C.cat);
        FinStarNerve N = nerve_finstar(K, n, D);
        export_check(r, "its nerve truncated at " + std::to_string(D), *N.nerve);
        return r;
    });
    return run.report;
}

}  // namespace

Report section_identity_check(int max_total, int max_n) {
    Report r;
    std::size_t tuples = 0, bad = 0;
    std::string w;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<int> sizes(static_cast<std::size_t>(n), 0);
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == n) {
                ++tuples;
                EnvObject s = phi_section(sizes);
                for (int c = 1; c <= n; ++c) {
                    EnvObject got = rho_shriek_env(s.act, c);
                    int k = sizes[c - 1];
                    EnvObject want{k, PointedMap(k, 1, std::vector<int>(static_cast<std::size_t>(k), 1))};
                    if (!(got == want) && bad++ == 0) {
                        w = "sizes (";
                        for (int t = 0; t < n; ++t) w += (t ? "," : "") + std::to_string(sizes[t]);
                        w += ") component " + std::to_string(c);
                    }
                }
                return;
            }
            for (int v = 0; v <= left; ++v) {
                sizes[i] = v;
                rec(i + 1, left - v);
            }
        };
        rec(0, max_total);
    }
    r.add("section identity on " + std::to_string(tuples) + " size tuples", bad == 0, w);
    return r;
}

OperadModel make_model(const std::string& spec, int K) {
    if (spec == "comm") return comm_model(K);
    if (spec == "triv") return triv_model(K);
    if (spec == "monoid") return monoid_model(cyclic_monoid(2), K);
    if (spec.rfind("monoid:", 0) == 0) return monoid_model(monoid_from_json(parse_text(read_file(spec.substr(7)))), K);
    throw Error("unknown model '" + spec + "' (expected comm, triv, monoid or monoid:<file>)");
}

namespace {

Report suite_envelope(const SuiteParams& p) {
    const int K = p.K.value_or(2), D = p.D.value_or(2);
    Runner run;
    run.timeout = p.timeout;
    OperadModel M = make_model(p.model, K);
    run.cell("", [&] { return validate_operad_model(M); });
    run.cell("", [&] {
        EnvelopeSet E = envelope(M, D);
        Report r = envelope_fiber_product_check(E);
        r.merge(envelope_cocartesian_check(E));
        export_check(r, "envelope category of " + M.name, *E.cat);
        export_check(r, "envelope nerve of " + M.name, *E.total);
        return r;
    });
    run.cell("", [&] { return envelope_cocartesian_scan(M); });
    run.cell("", [&] { return section_identity_check(6, 3); });
    run.cell("", [&] {
        Report r;
        export_check(r, "model category " + M.name, *M.cat);
        if (p.model.rfind("monoid:", 0) == 0) export_check(r, "monoid table", monoid_from_json(parse_text(read_file(p.model.substr(7)))));
        if (p.model == "monoid") export_check(r, "monoid table", cyclic_monoid(2));
        return r;
    });
    return run.report;
}

std::vector<CategoryDiagram> builtin_diagrams() {
    return {arrow_example(),         poset_diagram(),         iso_example(),
            group_example(),         arrow_example_at_target(),
            constant_diagram(linear_order(1), arrow_category(), "constant arrow over [1]")};
}

Report suite_nerve_roundtrip(const SuiteParams& p) {
    const int D = p.D.value_or(3);
    Runner run;
    run.timeout = p.timeout;
    std::vector<CategoryDiagram> ds;
    if (!p.instance.empty()) ds.push_back(diagram_from_json(parse_text(read_file(p.instance))));
    else ds = builtin_diagrams();
    for (const auto& F : ds) {
        std::string pre = F.name + ": ";
        run.cell(pre, [&] { return phi_roundtrip_check(F, D); });
        run.cell(pre, [&] {
            GrothendieckTotal G = grothendieck_construct(F);
            Report r;
            auto dec = G.check_decomposition();
            r.add("hom sets decompose over base arrows", dec.empty(), dec.empty() ? "" : dec.front());
            r.merge(cocartesian_gr_check(G));
            bool induced = true;
            std::string w;
            for (int f = 0; f < F.base.arrow_count(); ++f) {
                Report q = induced_functor_check(G, f);
                if (!q.ok() && induced) {
                    induced = false;
                    w = q.first_failure();
                }
            }
            r.add("identity transformations induce F(f) for every base arrow", induced, w);
            export_check(r, "diagram", F);
            export_check(r, "total category", G.cat);
            return r;
        });
    }
    if (p.instance.empty())
        run.cell("naturality: ", [&] {
            CategoryDiagram a = arrow_example(), b = arrow_example_at_target();
            return phi_naturality_check(collapse_transformation(a, b), D);
        });
    return run.report;
}

Report suite_slices(const SuiteParams& p) {
    const int K = p.K.value_or(2), n = p.n.value_or(1), D = p.D.value_or(2);
    Runner run;
    run.timeout = p.timeout;
    run.cell("", [&] {
        Report r;
        std::size_t total = 0, bad = 0;
        std::string w;
        for (int t = 0; t <= n; ++t)
            for (int k = 0; k <= K; ++k)
                for (const PointedMap& a : all_maps(k, t)) {
                    if (!is_active(a)) continue;
                    ++total;
                    Report q = slice_iso_check(t, a, D);
                    if (!q.ok() && bad++ == 0) w = a.to_string() + ": " + q.first_failure();
                }
        r.add("slice isomorphism for " + std::to_string(total) + " active maps", bad == 0, w);
        SliceIsoOptions o;
        o.perturb = true;
        r.add("a perturbed slice map is rejected", !slice_iso_check(2, PointedMap(3, 2, {1, 1, 2}), D, o).ok());
        return r;
    });
    run.cell("", [&] {
        Report r;
        export_check(r, "Fin*_act arrows truncated at " + std::to_string(D), act_arrows(K, D));
        return r;
    });
    return run.report;
}

Report suite_diamond(const SuiteParams& p) {
    const int K = p.K.value_or(2), n = p.n.value_or(1), m = p.m.value_or(2);
    Runner run;
    run.timeout = p.timeout;
    run.cell("", [&] { return check_diamond(K, n, m); });
    run.cell("", [&] {
        Report r;
        DiamondOptions o;
        o.order = Order::Reversed;
        Report rev = check_diamond(K, n, m, o);
        r.add("reversed order reports a violation", !rev.ok(), rev.first_failure());
        return r;
    });
    run.cell("", [&] { return quadruple_invariance(K, n, m); });
    run.cell("", [&] {
        Report r;
        Ambient amb = make_ambient(K, n, m);
        export_check(r, "ambient nerve", amb.X());
        return r;
    });
    return run.report;
}

Report suite_heads_tails(const SuiteParams& p) {
    Runner run;
    run.timeout = p.timeout;
    std::vector<HeadsTailsInstance> owned;
    std::vector<HeadsTailsInput> inputs;
    if (!p.instance.empty()) {
        inputs.push_back(heads_tails_from_json(parse_text(read_file(p.instance))));
    } else {
        owned = heads_tails_instances();
        for (const auto& i : owned) inputs.push_back(i.input);
    }
    for (const auto& in : inputs)
        run.cell(in.name + ": ", [&] {
            Report r;
            auto hyp = heads_tails_hypotheses(in);
            r.add("hypotheses", hyp.empty(), hyp.empty() ? "" : hyp.front());
            if (hyp.empty()) r.merge(heads_tails_verify(in));
            export_check(r, "instance", in);
            return r;
        });
    run.cell("", [&] {
        Report r;
        const int trials = 20;
        int detected = 0;
        std::string w;
        std::vector<std::size_t> usable;
        for (std::size_t i = 0; i < inputs.size(); ++i)
            if (heads_tails_hypotheses(inputs[i]).empty() && !heads_tails_build(inputs[i]).sigma_a.empty())
                usable.push_back(i);
        if (usable.empty()) {
            r.add("single-simplex mutations", Status::NotChecked, "no instance has a stage to mutate");
            return r;
        }
        for (int t = 0; t < trials; ++t) {
            const HeadsTailsInput& in = inputs[usable[static_cast<std::size_t>(t) % usable.size()]];
            HeadsTailsData d = heads_tails_build(in);
            std::mt19937 rng(static_cast<unsigned>(t));
            std::string what = heads_tails_mutate(d, rng);
            if (!heads_tails_check(in, d).ok()) ++detected;
            else if (w.empty()) w = in.name + ": " + what;
        }
        r.add("single-simplex mutations detected " + std::to_string(detected) + "/" + std::to_string(trials),
              detected == trials, w);
        return r;
    });
    return run.report;
}

Report suite_lemma3125(const SuiteParams& p) {
    Runner run;
    run.timeout = p.timeout;
    std::vector<Lemma3125Input> inputs;
    if (!p.instance.empty()) inputs.push_back(lemma_3125_from_json(parse_text(read_file(p.instance))));
    else inputs = lemma_3125_instances();
    if (p.bound)
        for (auto& in : inputs) in.bound = *p.bound;
    for (const auto& in : inputs)
        run.cell(in.name + ": ", [&] {
            Report r;
            auto hyp = lemma_3125_hypotheses(in);
            r.add("hypotheses", hyp.empty(), hyp.empty() ? "" : hyp.front());
            if (hyp.empty()) r.merge(lemma_3125_verify(in));
            export_check(r, "instance", in);
            return r;
        });
    run.cell("", [&] {
        Report r;
        int applicable = 0, detected = 0;
        std::string w;
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            if (!lemma_3125_hypotheses(inputs[i]).empty()) continue;
            Lemma3125Options o;
            o.perturb_seed = static_cast<int>(i);
            Report q = lemma_3125_verify(inputs[i], o);
            bool applied = false;
            for (const auto& note : q.notes) applied = applied || note.rfind("perturbed", 0) == 0;
            if (!applied) continue;
            ++applicable;
            if (!q.ok()) ++detected;
            else if (w.empty()) w = inputs[i].name;
        }
        r.add("perturbed pushout candidates detected " + std::to_string(detected) + "/" + std::to_string(applicable),
              applicable > 0 && detected == applicable, w);
        return r;
    });
    return run.report;
}

Report suite_step3(const SuiteParams& p) {
    const int K = p.K.value_or(2), D = p.D.value_or(3);
    Runner run;
    run.timeout = p.timeout;
    OperadModel base = make_model(p.model, K);
    OperadModel cyl = family_from_functor(identity_functor(base));
    std::vector<int> ms;
    if (p.m) ms.push_back(*p.m);
    else ms = {1, 2};
    for (int m : ms) {
        std::string pre = "m=" + std::to_string(m) + ": ";
        run.cell(pre, [&] { return step3_case1_verify(cyl, m, D); });
        run.cell(pre, [&] {
            Report r;
            Step3Options o;
            o.reverse_lambda = true;
            Report rev = step3_case1_verify(cyl, m, D, o);
            bool any = false;
            for (const auto& e : rev.entries) any = any || e.name.rfind("(**)", 0) == 0;
            if (any) r.add("reversed lambda order reports a violation", !rev.ok(), rev.first_failure());
            else r.add("reversed lambda order reports a violation", Status::NotChecked, "no sigma'_a in G2' with associates");
            return r;
        });
    }
    run.cell("", [&] {
        Report r;
        export_check(r, "family category " + cyl.name, *cyl.cat);
        return r;
    });
    return run.report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"ez",         "finstar", "envelope",    "nerve-roundtrip",
                                                   "slices",     "diamond", "heads-tails", "lemma3125",
                                                   "step3-case1", "all"};
    return names;
}

Report run_suite(const std::string& name, const SuiteParams& p) {
    bool known = false;
    for (const auto& s : suite_names()) known = known || s == name;
    if (!known) throw UnknownSuite("unknown suite '" + name + "'");
    std::size_t saved = generator_ceiling();
    if (p.max_gen > 0) set_generator_ceiling(p.max_gen);
    Report r;
    try {
        if (name == "ez") {
            Runner run;
            run.timeout = p.timeout;
            run.cell("", suite_ez);
            r = run.report;
        } else if (name == "finstar") {
            Runner run;
            run.timeout = p.timeout;
            run.cell("", [&] { return suite_finstar(p.K.value_or(2), p.n.value_or(1), p.m.value_or(2), p.D.value_or(2), p.timeout); });
            r = run.report;
        } else if (name == "envelope") {
            r = suite_envelope(p);
        } else if (name == "nerve-roundtrip") {
            r = suite_nerve_roundtrip(p);
        } else if (name == "slices") {
            r = suite_slices(p);
        } else if (name == "diamond") {
            r = suite_diamond(p);
        } else if (name == "heads-tails") {
            r = suite_heads_tails(p);
        } else if (name == "lemma3125") {
            r = suite_lemma3125(p);
        } else if (name == "step3-case1") {
            r = suite_step3(p);
        } else {
            SuiteParams q = p;
            q.instance.clear();
            for (const auto& s : suite_names()) {
                if (s == "all") continue;
                Report sub = run_suite(s, q);
                for (const auto& note : sub.notes)
                    if (std::find(r.notes.begin(), r.notes.end(), s + ": " + note) == r.notes.end())
                        r.notes.push_back(s + ": " + note);
                sub.notes.clear();
                r.merge(sub, s + ": ");
            }
        }
    } catch (...) {
        set_generator_ceiling(saved);
        throw;
    }
    set_generator_ceiling(saved);
    r.suite = name;
    r.params.clear();
    auto put = [&](const char* k, const std::optional<int>& v) {
        if (v) r.params.push_back({k, std::to_string(*v)});
    };
    put("K", p.K);
    put("n", p.n);
    put("m", p.m);
    put("D", p.D);
    put("bound", p.bound);
    if (name == "envelope" || name == "step3-case1" || name == "all") r.params.push_back({"model", p.model});
    if (!p.instance.empty()) r.params.push_back({"instance", p.instance});
    return r;
}

}  // namespace opkan
