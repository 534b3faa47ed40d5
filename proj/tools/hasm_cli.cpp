// Command-line front end: verify, count, enumerate, reduce, export-graph.
// All outputs are exact rational/integer strings; identical inputs produce
// byte-identical outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "hasm/bijections.hpp"
#include "hasm/formulas.hpp"
#include "hasm/graph_json.hpp"
#include "hasm/renewal.hpp"

using namespace hasm;
using nlohmann::json;

namespace {

int guardrail_ceiling() {
    if (const char* env = std::getenv("HASM_MAX_N")) return std::atoi(env);
    return 4;
}

bool check_guardrail(int n, bool force, const std::string& what) {
    if (n <= guardrail_ceiling() || force) return true;
    std::cerr << what << ": n=" << n << " exceeds the desk-scale ceiling "
              << guardrail_ceiling() << " (set --force or HASM_MAX_N to override)\n";
    return false;
}

struct RouteCheck {
    std::string label;
    std::string value;
    bool ok;
};

bool report_routes(int n, const std::vector<RouteCheck>& routes) {
    bool all = true;
    std::cout << "n=" << n;
    for (const auto& r : routes) {
        std::cout << "  " << r.label << "=" << r.value;
        all = all && r.ok;
    }
    std::cout << (all ? "  ok" : "  MISMATCH") << "\n";
    return all;
}

BigInt asm_sum_theorem1(int n) {
    BigInt sum = 0;
    for (const auto& a : enumerate_halved_asms(n, BottomSpec::free_spec(n)))
        sum += domino_weight(weight_stats(a));
    return sum;
}

BigInt asm_sum_theorem2(int n, const BottomSpec& spec) {
    BigInt sum = 0;
    for (const auto& a : enumerate_halved_asms(n, spec))
        sum += fortress_weight(weight_stats(a));
    return sum;
}

int verify_theorem1(int lo, int hi, const std::string& engine) {
    bool ok = true;
    for (int n = lo; n <= hi; ++n) {
        BigInt expect = theorem1_value(n);
        std::vector<RouteCheck> routes;
        BigInt s = asm_sum_theorem1(n);
        routes.push_back({"asm-sum", to_string(s), s == expect});
        auto region = build_teeth_region(n);
        if (engine == "pfaffian" || engine == "both") {
            Rational m = matching_sum_pfaffian(region);
            routes.push_back({"matchings-pfaffian", m.str(), m == Rational(expect)});
        }
        if (engine == "brute" || (engine == "both" && n <= 3)) {
            Rational m = matching_sum_bruteforce(region);
            routes.push_back({"matchings-brute", m.str(), m == Rational(expect)});
        }
        routes.push_back({"formula", to_string(expect), true});
        ok = report_routes(n, routes) && ok;
    }
    return ok ? 0 : 1;
}

int verify_theorem2(int lo, int hi, const std::string& engine) {
    bool ok = true;
    for (int n = lo; n <= hi; ++n) {
        BigInt expect = theorem2_value(n);
        std::vector<RouteCheck> routes;
        BigInt s = asm_sum_theorem2(n, BottomSpec::free_spec(n));
        routes.push_back({"asm-sum", to_string(s), s == expect});
        if (n <= 3) {
            auto gn = build_gn(n);
            Rational m = engine == "brute" && n <= 2 ? matching_sum_bruteforce(gn)
                                                     : matching_sum_pfaffian(gn);
            Rational scaled = Rational(theorem1_value(n)) * m;
            routes.push_back({"2^{n^2}M(G_n)", scaled.str(), scaled == Rational(expect)});
        }
        if (n <= 2) {
            BigInt total = 0;
            for (int mask = 0; mask < (1 << n); ++mask) {
                BottomSpec spec = BottomSpec::free_spec(n);
                for (int i = 0; i < n; ++i)
                    spec.c[i] = (mask >> i) & 1 ? BottomConstraint::Low : BottomConstraint::High;
                total += matching_sum_bruteforce(build_fortress(n, spec)).num();
            }
            routes.push_back({"fortress-sum", to_string(total), total == expect});
        }
        routes.push_back({"formula", to_string(expect), true});
        ok = report_routes(n, routes) && ok;
    }
    return ok ? 0 : 1;
}

int verify_theorem3(int lo, int hi) {
    bool ok = true;
    for (int n = lo; n <= hi; ++n) {
        for (auto variant : {FixedVariant::AllHigh, FixedVariant::AllLow}) {
            BigInt expect = theorem3_value(n, variant);
            auto spec = BottomSpec::all(
                n, variant == FixedVariant::AllHigh ? BottomConstraint::High : BottomConstraint::Low);
            BigInt s = asm_sum_theorem2(n, spec);
            std::vector<RouteCheck> routes;
            std::string tag = variant == FixedVariant::AllHigh ? "c=n+1" : "c=n-1";
            routes.push_back({"asm-sum(" + tag + ")", to_string(s), s == expect});
            routes.push_back({"formula", to_string(expect), true});
            ok = report_routes(n, routes) && ok;
        }
    }
    return ok ? 0 : 1;
}

int verify_lemma(int max_m, int max_k) {
    bool ok = true;
    for (int m = 1; m <= max_m; ++m)
        for (int k = m; k <= max_k; ++k) {
            std::vector<int> xs(m);
            std::function<bool(int, int)> choose = [&](int idx, int from) -> bool {
                if (idx == m) {
                    auto kept = KeptPositions::of(xs);
                    auto g = build_aztec_rectangle_kept_bottom(m, k, kept);
                    Rational brute = matching_sum_bruteforce(g);
                    BigInt formula = aztec_rect_count(m, kept);
                    bool good = brute == Rational(formula);
                    if (!good)
                        std::cout << "m=" << m << " k=" << k << " brute=" << brute.str()
                                  << " formula=" << to_string(formula) << " MISMATCH\n";
                    return good;
                }
                bool good = true;
                for (int p = from; p <= k; ++p) {
                    xs[idx] = p;
                    good = choose(idx + 1, p + 1) && good;
                }
                return good;
            };
            bool good = choose(0, 1);
            std::cout << "m=" << m << " k=" << k << (good ? " ok" : " MISMATCH") << "\n";
            ok = ok && good;
        }
    return ok ? 0 : 1;
}

int verify_remarks(int lo, int hi) {
    bool ok = true;
    for (int k = lo; k <= hi; ++k) {
        BigInt dom = 0, fort = 0;
        for (const auto& a : enumerate_full_asms(k)) {
            auto s = weight_stats(a);
            dom += domino_weight(s);
            fort += fortress_weight(s);
        }
        std::vector<RouteCheck> routes;
        BigInt expect_dom = remark_values(k).full_asm_2enum;
        routes.push_back({"full-asm-2enum", to_string(dom), dom == expect_dom});
        routes.push_back({"formula", to_string(expect_dom), true});
        if (k % 2 == 0) {
            BigInt expect_fort = remark_values(k / 2).fortress_2enum;
            routes.push_back({"fortress-weight-sum", to_string(fort), fort == expect_fort});
            routes.push_back({"fortress-formula", to_string(expect_fort), true});
        }
        ok = report_routes(k, routes) && ok;
    }
    return ok ? 0 : 1;
}

int verify_recursion(int lo, int hi, const std::string& engine) {
    bool ok = true;
    {
        Rational m1 = matching_sum_pfaffian(build_gn(1));
        std::cout << "n=1  M(G_1)=" << m1.str() << (m1 == Rational(3, 2) ? "  ok" : "  MISMATCH")
                  << "\n";
        ok = ok && m1 == Rational(3, 2);
    }
    for (int n = std::max(lo, 2); n <= hi; ++n) {
        Rational expect = gn_recursion_ratio(n);
        std::vector<RouteCheck> routes;
        Rational mn = matching_sum_pfaffian(build_gn(n));
        Rational mm = matching_sum_pfaffian(build_gn(n - 1));
        Rational ratio = mn / mm;
        routes.push_back({"M-ratio", ratio.str(), ratio == expect});
        if (engine == "both" || engine == "brute") {
            if (n <= 2) {
                Rational rb =
                    matching_sum_bruteforce(build_gn(n)) / matching_sum_bruteforce(build_gn(n - 1));
                routes.push_back({"M-ratio-brute", rb.str(), rb == expect});
            }
        }
        auto trace = reduce_gn_once(n, VerifyLevel::Phases);
        routes.push_back({"reduction-factor", trace.cumulative.str(), trace.cumulative == expect});
        bool iso =
            WeightedGraph::same_up_to_translation(trace.final_graph, mirror(build_gn(n - 1)));
        routes.push_back({"final-graph", iso ? "mirror(G_{n-1})" : "other", iso});
        routes.push_back({"formula", expect.str(), true});
        ok = report_routes(n, routes) && ok;
    }
    return ok ? 0 : 1;
}

WeightedGraph build_named(const std::string& name, int n, int m, int k,
                          const std::vector<int>& keep, const std::string& pending) {
    if (name == "gn") return build_gn(n);
    if (name == "teeth") return build_teeth_region(n);
    if (name == "aztec-rect") {
        if (keep.empty()) return build_aztec_rectangle(m, k);
        return build_aztec_rectangle_kept_bottom(m, k, KeptPositions::of(keep));
    }
    if (name == "fortress") {
        BottomSpec spec = BottomSpec::free_spec(n);
        if ((int)pending.size() != n)
            throw CLI::ValidationError("--pending must have one +/- per pair, e.g. '+-'");
        for (int i = 0; i < n; ++i)
            spec.c[i] = pending[i] == '-' ? BottomConstraint::Low : BottomConstraint::High;
        return build_fortress(n, spec);
    }
    if (name == "mirror-gn") return mirror(build_gn(n));
    throw CLI::ValidationError("unknown builder " + name);
}

json asm_to_json(const AsmMatrix& a) {
    json rows = json::array();
    for (int i = 1; i <= a.rows; ++i) {
        json row = json::array();
        for (int j = 1; j <= a.cols; ++j) row.push_back(a.at(i, j));
        rows.push_back(row);
    }
    auto s = weight_stats(a);
    json stats{{"n_minus", s.n_minus},
               {"n_minus_even", s.n_minus_even},
               {"n_minus_odd", s.n_minus_odd},
               {"n_plus_even", s.n_plus_even},
               {"n_plus_odd", s.n_plus_odd}};
    json c = json::array();
    for (int v : bottom_values(a)) c.push_back(v);
    json heights = json::array();
    for (const auto& row : height_from_asm(a).h) heights.push_back(row);
    return json{{"matrix", rows}, {"heights", heights}, {"stats", stats}, {"c", c}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact 2-enumerations of halved alternating sign matrices"};
    app.require_subcommand(1);

    // verify ----------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "check an identity across its routes");
    std::string target;
    verify->add_option("target", target, "theorem1|theorem2|theorem3|lemma|remarks|recursion")
        ->required();
    int vlo = 1, vhi = 0;
    bool force = false;
    std::string engine = "both";
    verify->add_option("--n-min", vlo, "first n");
    verify->add_option("--n-max", vhi, "last n");
    verify->add_option("--engine", engine, "brute|pfaffian|both")
        ->check(CLI::IsMember({"brute", "pfaffian", "both"}));
    verify->add_flag("--force", force, "override the desk-scale guardrail");

    // count -----------------------------------------------------------------
    auto* count = app.add_subcommand("count", "weighted matching count of a builder graph");
    std::string builder, pending;
    int cn = 1, cm = 1, ck = 1;
    std::vector<int> keep;
    count->add_option("builder", builder, "gn|teeth|aztec-rect|fortress|mirror-gn")->required();
    count->add_option("--n", cn, "order parameter");
    count->add_option("--m", cm, "rows (aztec-rect)");
    count->add_option("--k", ck, "columns (aztec-rect)");
    count->add_option("--keep", keep, "kept bottom positions (aztec-rect)");
    count->add_option("--pending", pending, "fortress pending pairs, e.g. '-+'");
    std::string cengine = "both";
    count->add_option("--engine", cengine, "brute|pfaffian|both")
        ->check(CLI::IsMember({"brute", "pfaffian", "both"}));
    count->add_flag("--force", force, "override the desk-scale guardrail");

    // enumerate ---------------------------------------------------------------
    auto* enumerate = app.add_subcommand("enumerate", "list halved ASMs with statistics");
    int en = 1;
    std::string fixc = "free", format = "json";
    enumerate->add_option("--n", en, "order parameter")->required();
    enumerate->add_option("--fix-c", fixc, "free|n+1|n-1")
        ->check(CLI::IsMember({"free", "n+1", "n-1"}));
    enumerate->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    enumerate->add_flag("--force", force, "override the desk-scale guardrail");

    // reduce ------------------------------------------------------------------
    auto* reduce = app.add_subcommand("reduce", "run the G_n reduction and emit its trace");
    int rn = 2;
    std::string trace_out, replay_in;
    reduce->add_option("--n", rn, "order parameter (>= 2)")->required();
    reduce->add_option("--trace", trace_out, "write the trace JSON here");
    reduce->add_option("--replay", replay_in, "re-run and compare against a stored trace");
    reduce->add_flag("--force", force, "override the desk-scale guardrail");

    // export-graph --------------------------------------------------------------
    auto* expg = app.add_subcommand("export-graph", "emit a builder graph as JSON");
    std::string xbuilder, xpending, xout;
    int xn = 1, xm = 1, xk = 1;
    std::vector<int> xkeep;
    bool xnormalize = false;
    expg->add_option("builder", xbuilder, "gn|teeth|aztec-rect|fortress|mirror-gn")->required();
    expg->add_option("--n", xn, "order parameter");
    expg->add_option("--m", xm, "rows");
    expg->add_option("--k", xk, "columns");
    expg->add_option("--keep", xkeep, "kept bottom positions");
    expg->add_option("--pending", xpending, "fortress pending pairs");
    expg->add_flag("--normalize-bottom", xnormalize, "normalize the fortress bottom row");
    expg->add_option("--out", xout, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) {
            if (vhi == 0) vhi = (target == "recursion") ? 3 : 4;
            if (!check_guardrail(vhi, force, "verify")) return 2;
            if (target == "theorem1") return verify_theorem1(vlo, vhi, engine);
            if (target == "theorem2") return verify_theorem2(vlo, vhi, engine);
            if (target == "theorem3") return verify_theorem3(vlo, vhi);
            if (target == "lemma") return verify_lemma(3, 4);
            if (target == "remarks") return verify_remarks(vlo, vhi);
            if (target == "recursion") return verify_recursion(std::max(vlo, 2), vhi, engine);
            std::cerr << "unknown verify target '" << target << "'\n";
            return 2;
        }
        if (*count) {
            if (!check_guardrail(std::max({cn, cm, ck}), force, "count")) return 2;
            auto g = build_named(builder, cn, cm, ck, keep, pending);
            if (cengine == "both") {
                Rational p = matching_sum_pfaffian(g);
                Rational b = matching_sum_bruteforce(g);
                if (p != b) {
                    std::cerr << "engine mismatch: pfaffian=" << p.str() << " brute=" << b.str()
                              << "\n";
                    return 1;
                }
                std::cout << p.str() << "\n";
            } else if (cengine == "pfaffian") {
                std::cout << matching_sum_pfaffian(g).str() << "\n";
            } else {
                std::cout << matching_sum_bruteforce(g).str() << "\n";
            }
            return 0;
        }
        if (*enumerate) {
            if (!check_guardrail(en, force, "enumerate")) return 2;
            BottomSpec spec = BottomSpec::free_spec(en);
            if (fixc == "n+1") spec = BottomSpec::all(en, BottomConstraint::High);
            if (fixc == "n-1") spec = BottomSpec::all(en, BottomConstraint::Low);
            auto all = enumerate_halved_asms(en, spec);
            if (format == "json") {
                json out = json::array();
                for (const auto& a : all) out.push_back(asm_to_json(a));
                std::cout << out.dump(2) << "\n";
            } else {
                std::cout << "index,matrix,c,n_minus,n_minus_even,n_minus_odd,n_plus_even,n_plus_"
                             "odd\n";
                for (size_t idx = 0; idx < all.size(); ++idx) {
                    const auto& a = all[idx];
                    std::string mat;
                    for (int i = 1; i <= a.rows; ++i) {
                        if (i > 1) mat += ";";
                        for (int j = 1; j <= a.cols; ++j) {
                            if (j > 1) mat += " ";
                            mat += std::to_string(a.at(i, j));
                        }
                    }
                    std::string cs;
                    for (int v : bottom_values(a)) {
                        if (!cs.empty()) cs += " ";
                        cs += std::to_string(v);
                    }
                    auto s = weight_stats(a);
                    std::cout << idx << ",\"" << mat << "\",\"" << cs << "\"," << s.n_minus << ","
                              << s.n_minus_even << "," << s.n_minus_odd << "," << s.n_plus_even
                              << "," << s.n_plus_odd << "\n";
                }
            }
            return 0;
        }
        if (*reduce) {
            if (!check_guardrail(rn, force, "reduce")) return 2;
            auto trace = reduce_gn_once(rn, VerifyLevel::Phases);
            json jt = trace_to_json(trace);
            if (!replay_in.empty()) {
                std::ifstream in(replay_in);
                if (!in) {
                    std::cerr << "cannot open " << replay_in << "\n";
                    return 2;
                }
                json stored = json::parse(in);
                if (stored.at("n") != rn) {
                    std::cerr << "replay: stored trace is for n=" << stored.at("n") << "\n";
                    return 1;
                }
                const auto& a = stored.at("steps");
                const auto& b = jt.at("steps");
                size_t upto = std::min(a.size(), b.size());
                for (size_t i = 0; i < upto; ++i) {
                    if (a[i] != b[i]) {
                        std::cerr << "replay: step " << i << " ("
                                  << a[i].at("op").get<std::string>() << ") differs\n";
                        return 1;
                    }
                }
                if (a.size() != b.size()) {
                    std::cerr << "replay: step count differs\n";
                    return 1;
                }
                std::cout << "replay ok: " << a.size() << " steps, cumulative "
                          << trace.cumulative.str() << "\n";
            } else {
                std::cout << "cumulative factor " << trace.cumulative.str() << " over "
                          << trace.steps.size() << " steps\n";
            }
            if (!trace_out.empty()) {
                std::ofstream out(trace_out);
                out << jt.dump(2) << "\n";
            }
            return 0;
        }
        if (*expg) {
            auto g = build_named(xbuilder, xn, xm, xk, xkeep, xpending);
            if (xnormalize) g = normalize_fortress_bottom(g);
            json j = graph_to_json(g);
            if (xout.empty()) {
                std::cout << j.dump(2) << "\n";
            } else {
                std::ofstream out(xout);
                out << j.dump(2) << "\n";
            }
            return 0;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 2;
}
