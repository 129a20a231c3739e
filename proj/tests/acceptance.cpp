#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "opkan/finstar.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/io.hpp"
#include "opkan/kanext.hpp"
#include "opkan/operad.hpp"
#include "opkan/suites.hpp"

using namespace opkan;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int index, const std::string& title, const std::function<Outcome()>& f) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS " : "FAIL ") << index << " " << title;
    if (!o.detail.empty()) std::cout << " [" << o.detail << "]";
    char buf[32];
    std::snprintf(buf, sizeof buf, " (%.1f s)", dt);
    std::cout << buf << std::endl;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/** Entries of a merged report whose names start with prefix. */
Report sub_report(const Report& r, const std::string& prefix) {
    Report out;
    for (const auto& e : r.entries)
        if (e.name.rfind(prefix, 0) == 0) out.entries.push_back(e);
    return out;
}

FiniteCategory discrete_two() {
    FiniteCategory C;
    C.add_object("x");
    C.add_object("y");
    return C;
}

FiniteCategory parallel_pair() {
    FiniteCategory C;
    C.add_object("x");
    C.add_object("y");
    C.add_arrow(0, 1, "f");
    C.add_arrow(0, 1, "g");
    return C;
}

std::vector<std::pair<std::string, FiniteCategory>> small_fibers() {
    return {{"1", terminal_category()},      {"2", discrete_two()},
            {"[1]", arrow_category()},       {"iso", walking_iso()},
            {"Z/2", cyclic_group_category(2)}, {"Z/3", cyclic_group_category(3)},
            {"pair", parallel_pair()},       {"[2]", linear_order(2)}};
}

Functor identity_tables(const FiniteCategory& C) {
    Functor F;
    for (int x = 0; x < C.object_count(); ++x) F.obj.push_back(x);
    for (int a = 0; a < C.arrow_count(); ++a) F.arr.push_back(a);
    return F;
}

/** Every functor A -> B, by exhaustive search over object and arrow tables. */
std::vector<Functor> all_functors(const FiniteCategory& A, const FiniteCategory& B) {
    std::vector<Functor> out;
    std::vector<int> obj(static_cast<std::size_t>(A.object_count()), 0);
    std::function<void(int)> objects = [&](int x) {
        if (x == A.object_count()) {
            std::vector<int> arr(static_cast<std::size_t>(A.arrow_count()), -1);
            std::function<void(int)> arrows = [&](int a) {
                if (a == A.arrow_count()) {
                    Functor F;
                    F.source = &A;
                    F.target = &B;
                    F.obj = obj;
                    F.arr = arr;
                    if (F.valid()) {
                        F.source = F.target = nullptr;
                        out.push_back(F);
                    }
                    return;
                }
                int s = obj[A.arrow(a).src], d = obj[A.arrow(a).dst];
                if (A.is_identity(a)) {
                    arr[a] = B.id(s);
                    arrows(a + 1);
                    return;
                }
                for (int b : B.hom(s, d)) {
                    arr[a] = b;
                    arrows(a + 1);
                }
            };
            arrows(0);
            return;
        }
        for (int y = 0; y < B.object_count(); ++y) {
            obj[x] = y;
            objects(x + 1);
        }
    };
    objects(0);
    return out;
}

Functor compose_tables(const Functor& G, const Functor& F) {
    Functor H;
    for (int x : F.obj) H.obj.push_back(G.obj[x]);
    for (int a : F.arr) H.arr.push_back(G.arr[a]);
    return H;
}

int non_identity(const FiniteCategory& C, int x, int y) {
    for (int a : C.hom(x, y))
        if (!C.is_identity(a)) return a;
    return -1;
}

/** All diagrams over [1] and [2] with fibers from small_fibers() and at most max_objects fiber objects. */
std::vector<CategoryDiagram> small_diagrams(int max_objects) {
    auto fibers = small_fibers();
    std::vector<CategoryDiagram> out;
    for (const auto& [na, A] : fibers)
        for (const auto& [nb, B] : fibers) {
            if (A.object_count() + B.object_count() > max_objects) continue;
            for (const Functor& f : all_functors(A, B)) {
                CategoryDiagram D;
                D.name = na + "->" + nb + " #" + std::to_string(out.size());
                D.base = linear_order(1);
                D.fibers = {A, B};
                D.transition.resize(D.base.arrow_count());
                D.transition[D.base.id(0)] = identity_tables(A);
                D.transition[D.base.id(1)] = identity_tables(B);
                D.transition[non_identity(D.base, 0, 1)] = f;
                out.push_back(std::move(D));
            }
        }
    for (const auto& [na, A] : fibers)
        for (const auto& [nb, B] : fibers)
            for (const auto& [nc, C] : fibers) {
                if (A.object_count() + B.object_count() + C.object_count() > max_objects) continue;
                auto fs = all_functors(A, B);
                auto gs = all_functors(B, C);
                for (const Functor& f : fs)
                    for (const Functor& g : gs) {
                        CategoryDiagram D;
                        D.name = na + "->" + nb + "->" + nc + " #" + std::to_string(out.size());
                        D.base = linear_order(2);
                        D.fibers = {A, B, C};
                        D.transition.resize(D.base.arrow_count());
                        for (int i = 0; i < 3; ++i) D.transition[D.base.id(i)] = identity_tables(D.fibers[i]);
                        D.transition[non_identity(D.base, 0, 1)] = f;
                        D.transition[non_identity(D.base, 1, 2)] = g;
                        D.transition[non_identity(D.base, 0, 2)] = compose_tables(g, f);
                        out.push_back(std::move(D));
                    }
            }
    return out;
}

}  // namespace

int main() {
    Report all;
    bool have_all = false;
    auto suite_all = [&]() -> const Report& {
        if (!have_all) {
            all = run_suite("all");
            have_all = true;
        }
        return all;
    };

    criterion(1, "relative nerve round trip on arrow, poset and iso diagrams up to dimension 3", [] {
        Outcome o;
        auto t0 = Clock::now();
        for (const CategoryDiagram& F : {arrow_example(), poset_diagram(), iso_example()}) {
            Report r = phi_roundtrip_check(F, 3);
            o.require(r.ok() && r.count(Status::Skipped) == 0, F.name + ": " + r.first_failure());
        }
        double dt = seconds_since(t0);
        o.require(dt < 60.0, "runtime " + std::to_string(dt) + " s");
        return o;
    });

    criterion(2, "cocartesian edges of total categories agree with the universal property", [] {
        Outcome o;
        std::vector<CategoryDiagram> ds = small_diagrams(4);
        std::size_t generated = ds.size();
        for (const CategoryDiagram& F : {arrow_example(), poset_diagram(), iso_example(), group_example(),
                                   arrow_example_at_target()})
            ds.push_back(F);
        std::size_t edges = 0;
        for (const CategoryDiagram& F : ds) {
            auto errs = F.check(1);
            o.require(errs.empty(), F.name + ": " + (errs.empty() ? "" : errs.front()));
            GrothendieckTotal G = grothendieck_construct(F);
            edges += static_cast<std::size_t>(G.cat.arrow_count());
            Report r = cocartesian_gr_check(G);
            o.require(r.ok(), F.name + ": " + r.first_failure());
        }
        if (o.pass)
            o.detail = std::to_string(ds.size()) + " diagrams (" + std::to_string(generated) +
                       " enumerated), " + std::to_string(edges) + " edges";
        return o;
    });

    criterion(3, "section identity for all size tuples with total <= 6 and n <= 3", [] {
        Outcome o;
        auto t0 = Clock::now();
        Report r = section_identity_check(6, 3);
        double dt = seconds_since(t0);
        o.require(r.ok(), r.first_failure());
        o.require(dt < 10.0, "runtime " + std::to_string(dt) + " s");
        return o;
    });

    criterion(4, "slice isomorphism for all active maps with k <= 4, n <= 3, D <= 2", [] {
        Outcome o;
        std::size_t total = 0;
        for (int D = 0; D <= 2; ++D)
            for (int n = 0; n <= 3; ++n)
                for (int k = 0; k <= 4; ++k)
                    for (const PointedMap& a : all_maps(k, n)) {
                        if (!is_active(a)) continue;
                        ++total;
                        Report r = slice_iso_check(n, a, D);
                        o.require(r.ok(), a.to_string() + " D=" + std::to_string(D) + ": " + r.first_failure());
                    }
        SliceIsoOptions p;
        p.perturb = true;
        o.require(!slice_iso_check(2, PointedMap(3, 2, {1, 1, 2}), 2, p).ok(), "perturbed slice not rejected");
        if (o.pass) o.detail = std::to_string(total) + " checks";
        return o;
    });

    criterion(5, "edge taxonomy for sizes <= 4 and group partition for chains with K <= 3", [] {
        Outcome o;
        Report e = edge_taxonomy_sweep(4, 3);
        o.require(e.ok(), e.first_failure());
        for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}}) {
            Report p = partition_sweep(3, n, m);
            o.require(p.ok(), "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + p.first_failure());
        }
        return o;
    });

    const std::vector<std::tuple<int, int, int>> cells = {{2, 1, 2}, {3, 1, 2}, {2, 2, 2}, {2, 1, 3}};
    auto cell_name = [](int K, int n, int m) {
        return "(" + std::to_string(K) + "," + std::to_string(n) + "," + std::to_string(m) + ")";
    };

    criterion(6, "diamond properties on (2,1,2), (3,1,2), (2,2,2), (2,1,3) with the reversed-order control", [&] {
        Outcome o;
        std::string times;
        for (auto [K, n, m] : cells) {
            auto t0 = Clock::now();
            Report r = check_diamond(K, n, m);
            double dt = seconds_since(t0);
            o.require(r.ok() && r.count(Status::Skipped) == 0, cell_name(K, n, m) + ": " + r.first_failure());
            o.require(dt < 300.0, cell_name(K, n, m) + " took " + std::to_string(dt) + " s");
            DiamondOptions rev;
            rev.order = Order::Reversed;
            o.require(!check_diamond(K, n, m, rev).ok(), cell_name(K, n, m) + ": reversed order not detected");
            char buf[48];
            std::snprintf(buf, sizeof buf, "%s%s %.1f s", times.empty() ? "" : ", ", cell_name(K, n, m).c_str(), dt);
            times += buf;
        }
        if (o.pass) o.detail = times;
        return o;
    });

    criterion(7, "quadruple invariance under associates on the same cells", [&] {
        Outcome o;
        for (auto [K, n, m] : cells) {
            Report r = quadruple_invariance(K, n, m);
            o.require(r.ok() && r.count(Status::Skipped) == 0, cell_name(K, n, m) + ": " + r.first_failure());
        }
        return o;
    });

    criterion(8, "heads and tails on >= 10 family instances with 20/20 mutations detected", [&] {
        Outcome o;
        std::size_t instances = heads_tails_instances().size();
        o.require(instances >= 10, std::to_string(instances) + " instances");
        Report r = sub_report(suite_all(), "heads-tails: ");
        o.require(r.ok(), r.first_failure());
        o.require(r.count(Status::Skipped) == 0 && r.count(Status::NotChecked) == 0, "skipped or unchecked entries");
        bool mutations = false;
        for (const auto& e : r.entries)
            mutations = mutations || (e.name.find("mutations detected 20/20") != std::string::npos &&
                                      e.status == Status::Pass);
        o.require(mutations, "mutation trials");
        if (o.pass) o.detail = std::to_string(instances) + " instances";
        return o;
    });

    criterion(9, "slice join pushout on >= 5 instances including an empty C0, with mutations", [&] {
        Outcome o;
        auto inputs = lemma_3125_instances();
        bool empty = false;
        for (const auto& in : inputs) empty = empty || in.c0.empty();
        o.require(inputs.size() >= 5, std::to_string(inputs.size()) + " instances");
        o.require(empty, "no instance with empty C0");
        Report r = sub_report(suite_all(), "lemma3125: ");
        o.require(r.ok(), r.first_failure());
        o.require(r.count(Status::Skipped) == 0 && r.count(Status::NotChecked) == 0, "skipped or unchecked entries");
        bool mutations = false;
        for (const auto& e : r.entries)
            mutations = mutations || (e.name.find("perturbed pushout candidates detected") != std::string::npos &&
                                      e.status == Status::Pass);
        o.require(mutations, "perturbation trials");
        if (o.pass) o.detail = std::to_string(inputs.size()) + " instances";
        return o;
    });

    criterion(10, "step 3 case 1 on the identity family over comm with K = 2, n = 1", [&] {
        Outcome o;
        Report r = sub_report(suite_all(), "step3-case1: ");
        o.require(r.ok(), r.first_failure());
        o.require(r.count(Status::Skipped) == 0, "skipped entries");
        int controls = 0;
        for (const auto& e : r.entries)
            if (e.name.find("reversed lambda order reports a violation") != std::string::npos) {
                o.require(e.status == Status::Pass, e.name + ": " + e.witness);
                ++controls;
            }
        o.require(controls == 2, std::to_string(controls) + " reversed-order controls");
        return o;
    });

    criterion(11, "byte-stable canonical export for every object constructed in the suites", [&] {
        Outcome o;
        std::size_t exports = 0;
        for (const auto& e : suite_all().entries)
            if (e.name.find("export round trip: ") != std::string::npos) {
                ++exports;
                o.require(e.status == Status::Pass, e.name + ": " + e.witness);
            }
        o.require(exports > 0, "no export entries");
        FinStarNerve N = nerve_finstar(1, 1, 1);
        std::string a = export_text(*N.nerve);
        o.require(export_text(sset_from_json(parse_text(a))) == a, "N(Fin*<=1)");
        o.require(export_text(*N.nerve) == a, "repeated export differs");
        o.require(roundtrip_failure(cyclic_monoid(3)).empty(), "monoid");
        o.require(roundtrip_failure(finstar_category(2, 1, 2).cat).empty(), "Fin* category");
        for (const auto& in : lemma_3125_instances()) o.require(roundtrip_failure(in).empty(), in.name);
        for (const auto& i : heads_tails_instances()) o.require(roundtrip_failure(i.input).empty(), i.input.name);
        for (const auto& F : small_diagrams(3)) o.require(roundtrip_failure(F).empty(), F.name);
        if (o.pass) o.detail = std::to_string(exports) + " suite exports";
        return o;
    });

    return failures == 0 ? 0 : 1;
}
