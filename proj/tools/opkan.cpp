#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "opkan/finstar.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/io.hpp"
#include "opkan/kanext.hpp"
#include "opkan/operad.hpp"
#include "opkan/suites.hpp"

using namespace opkan;

namespace {

struct Options {
    std::optional<int> K, n, m, D, bound;
    std::size_t max_gen = 0;
    double timeout = 0.0;
    std::string format = "text";
    std::string instance;
    std::string model = "comm";
    std::string output;
    bool timing = false;

    SuiteParams params() const {
        SuiteParams p;
        p.K = K;
        p.n = n;
        p.m = m;
        p.D = D;
        p.bound = bound;
        p.max_gen = max_gen;
        p.timeout = timeout;
        p.instance = instance;
        p.model = model;
        return p;
    }
};

void add_flags(CLI::App* app, Options& o) {
    app->add_option("--K", o.K, "largest pointed set size");
    app->add_option("--n", o.n, "label count");
    app->add_option("--m", o.m, "simplex dimension");
    app->add_option("--D", o.D, "nerve truncation");
    app->add_option("--max-gen", o.max_gen, "generator ceiling for every construction");
    app->add_option("--timeout", o.timeout, "time budget in seconds; later cells are skipped");
    app->add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}));
    app->add_option("--instance", o.instance, "instance file");
    app->add_option("--model", o.model, "comm, triv, monoid or monoid:<table-file>");
    app->add_flag("--timing", o.timing, "include per-cell durations in the report");
}

int emit(const Report& r, const Options& o) {
    if (o.format == "json") std::cout << canonical_text(to_json(r, o.timing));
    else std::cout << render_text(r, o.timing);
    return r.ok() ? 0 : 1;
}

void write_out(const std::string& text, const Options& o) {
    if (o.output.empty()) std::cout << text;
    else write_file(o.output, text);
}

std::string export_object(const std::string& what, const Options& o) {
    const int K = o.K.value_or(2), n = o.n.value_or(1), D = o.D.value_or(2);
    auto index_after = [&](const std::string& prefix) { return std::stoul(what.substr(prefix.size())); };
    if (what.rfind("delta:", 0) == 0) return export_text(standard_simplex(static_cast<int>(index_after("delta:"))));
    if (what == "finstar-nerve") return export_text(*nerve_finstar(K, n, D).nerve);
    if (what == "finstar-category") return export_text(finstar_category(K, 1, n).cat);
    if (what == "model") return export_text(*make_model(o.model, K).cat);
    if (what == "envelope") {
        OperadModel M = make_model(o.model, K);
        return export_text(*envelope(M, D).total);
    }
    if (what == "monoid") return export_text(cyclic_monoid(2));
    if (what.rfind("diagram:", 0) == 0) {
        std::vector<CategoryDiagram> ds = {arrow_example(), poset_diagram(), iso_example(), group_example(),
                                           arrow_example_at_target()};
        std::size_t i = index_after("diagram:");
        if (i >= ds.size()) throw Error("diagram index out of range");
        return export_text(ds[i]);
    }
    if (what.rfind("heads-tails:", 0) == 0) {
        auto all = heads_tails_instances();
        std::size_t i = index_after("heads-tails:");
        if (i >= all.size()) throw Error("heads-tails index out of range");
        return export_text(all[i].input);
    }
    if (what.rfind("lemma3125:", 0) == 0) {
        auto all = lemma_3125_instances();
        std::size_t i = index_after("lemma3125:");
        if (i >= all.size()) throw Error("lemma3125 index out of range");
        return export_text(all[i]);
    }
    throw CLI::ValidationError("export", "unknown object '" + what + "'");
}

std::string normalize(const std::string& kind, const std::string& path) {
    ojson j = parse_text(read_file(path));
    if (kind == "sset") return export_text(sset_from_json(j));
    if (kind == "category") return export_text(category_from_json(j));
    if (kind == "diagram") return export_text(diagram_from_json(j));
    if (kind == "monoid") return export_text(monoid_from_json(j));
    if (kind == "heads-tails") return export_text(heads_tails_from_json(j));
    if (kind == "lemma3125") return export_text(lemma_3125_from_json(j));
    throw CLI::ValidationError("normalize", "unknown kind '" + kind + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opkan: finite combinatorics of operadic Kan extensions"};
    app.require_subcommand(1);
    Options o;
    std::string suite, kind, path, what;
    std::function<int()> action;

    auto* run = app.add_subcommand("run", "run a named verification suite");
    run->add_option("suite", suite, "suite name")->required();
    add_flags(run, o);
    run->callback([&] { action = [&] { return emit(run_suite(suite, o.params()), o); }; });

    for (const auto& name : suite_names()) {
        if (name == "nerve-roundtrip") continue;
        auto* s = app.add_subcommand(name, "run the " + name + " suite");
        add_flags(s, o);
        s->callback([&, name] { action = [&, name] { return emit(run_suite(name, o.params()), o); }; });
    }

    auto* nr = app.add_subcommand("nerve-roundtrip", "run the relative nerve round trip suite");
    add_flags(nr, o);
    nr->add_option("--max-dim", o.D, "largest simplex dimension");
    nr->callback([&] { action = [&] { return emit(run_suite("nerve-roundtrip", o.params()), o); }; });

    auto* kx = app.add_subcommand("kanext", "filtration, heads and tails, and pushout checks");
    kx->require_subcommand(1);
    for (const char* name : {"diamond", "heads-tails", "lemma3125", "step3-case1"}) {
        std::string nm = name;
        auto* s = kx->add_subcommand(nm, "run the " + nm + " suite");
        add_flags(s, o);
        if (nm == "lemma3125") s->add_option("--bound", o.bound, "slice truncation");
        s->callback([&, nm] { action = [&, nm] { return emit(run_suite(nm, o.params()), o); }; });
    }

    auto* ex = app.add_subcommand("export", "write the canonical form of a constructed object");
    ex->add_option("object", what,
                   "delta:<n>, finstar-nerve, finstar-category, model, envelope, monoid, diagram:<i>, "
                   "heads-tails:<i> or lemma3125:<i>")
        ->required();
    add_flags(ex, o);
    ex->add_option("-o,--output", o.output, "output file");
    ex->callback([&] { action = [&] { write_out(export_object(what, o), o); return 0; }; });

    auto* nm = app.add_subcommand("normalize", "read a file and write its canonical form");
    nm->add_option("kind", kind, "sset, category, diagram, monoid, heads-tails or lemma3125")->required();
    nm->add_option("file", path, "input file")->required();
    nm->add_option("-o,--output", o.output, "output file");
    nm->callback([&] { action = [&] { write_out(normalize(kind, path), o); return 0; }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return action();
    } catch (const UnknownSuite& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
