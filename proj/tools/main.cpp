// sympow — a workbench for symbolic-power containment questions in k[x,y,z].
//
// Subcommands: gb, member, sympower, contain, curve, sweep, fedder, stable,
// fermat. Verdicts are data: a computed "fails" exits 0. Exit codes:
//   0 computed, 2 invalid input, 3 unsupported class or characteristic guard,
//   4 resource limit, 5 --expect mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sympow/criterion.hpp"
#include "sympow/curves.hpp"
#include "sympow/field.hpp"
#include "sympow/ideal.hpp"
#include "sympow/ideal_ops.hpp"
#include "sympow/parse.hpp"
#include "sympow/report.hpp"
#include "sympow/symbolic.hpp"
#include "sympow/timing.hpp"

namespace {

using nlohmann::json;
using namespace sympow;

constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_invalid = 2,
    exit_unsupported = 3,
    exit_resource = 4,
    exit_expect = 5,
};

struct RunConfig {
    // global flags
    std::uint64_t field_char = 32003;
    bool field_char_given = false;
    std::string order = "grevlex";
    ResourceLimits limits;
    bool json_out = false;
    std::string store_path;
    std::string expect;  // "", "holds", "fails"

    // subcommand payload
    std::string cmd;
    std::vector<std::string> args;  // raw positionals, parsed per subcommand
    std::string curve;              // "a,b,c" when --curve was given
    std::string method = "oracle";  // contain: oracle | criterion | both
    bool exhaustive = false;        // contain: check every lift representative
    bool show_matrix = false;       // curve
    bool show_criteria = false;     // curve
    bool show_kernel = false;       // curve
    std::uint32_t strand_n = 0;     // curve: print the strand matrix H_n
    std::string lift;               // curve: print the lift matrix, "n,m"
    std::string lift_kind = "shift";
    std::uint32_t amax = 0, bmax = 0;  // sweep bounds
    std::uint32_t count = 5;           // stable: schedule length
};

// ---------------------------------------------------------------------------
// small parsing helpers
// ---------------------------------------------------------------------------

std::uint32_t parse_u32(const std::string& tok, const std::string& what) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(tok, &used);
    } catch (const std::exception&) {
        throw invalid_argument_error(what + ": expected a nonnegative integer, got \"" + tok + "\"");
    }
    if (used != tok.size())
        throw invalid_argument_error(what + ": expected a nonnegative integer, got \"" + tok + "\"");
    if (v > 0xffffffffUL) throw invalid_argument_error(what + ": value out of range");
    return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> parse_u32_list(const std::string& text, std::size_t want,
                                          const std::string& what) {
    std::vector<std::uint32_t> out;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) out.push_back(parse_u32(tok, what));
    if (out.size() != want)
        throw invalid_argument_error(what + ": expected " + std::to_string(want) +
                                     " comma-separated integers, got \"" + text + "\"");
    return out;
}

// Pop `count` trailing integers off the positional list (e.g. "contain I n m").
std::vector<std::uint32_t> pop_trailing_ints(std::vector<std::string>& args, std::size_t count,
                                             const std::string& what) {
    if (args.size() < count)
        throw invalid_argument_error(what + ": missing trailing integer argument(s)");
    std::vector<std::uint32_t> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[count - 1 - i] = parse_u32(args.back(), what);
        args.pop_back();
    }
    return out;
}

TermOrder order_of(const RunConfig& cfg) {
    if (cfg.order == "grevlex") return TermOrder::grevlex();
    if (cfg.order == "lex") return TermOrder::lex();
    throw invalid_argument_error("--order must be grevlex or lex");
}

// ---------------------------------------------------------------------------
// ideal resolution: explicit generators or a named built-in
// ---------------------------------------------------------------------------

template <class F>
struct IdealSpec {
    Ideal<F> ideal;
    std::string label;
};

template <class F>
RingPtr<F> ring_xyz(const F& field) {
    return make_ring(field, {"x", "y", "z"});
}

template <class F>
IdealSpec<F> fermat_ideal(const F& field) {
    auto R = ring_xyz(field);
    return {Ideal<F>::from_strings(
                R, {"x*y^3 - x*z^3", "y*z^3 - x^3*y", "x^3*z - y^3*z"}),
            "fermat"};
}

// Squarefree family in v variables: all products of v-1 distinct variables.
template <class F>
IdealSpec<F> monomial_family(const F& field, std::uint32_t v) {
    if (v < 2 || v > 20) throw invalid_argument_error("monomial-v: v must be between 2 and 20");
    std::vector<std::string> names;
    for (std::uint32_t i = 1; i <= v; ++i) names.push_back("x" + std::to_string(i));
    auto R = make_ring(field, names);
    const auto one = field.one();
    std::vector<Poly<F>> gens;
    for (std::uint32_t skip = 0; skip < v; ++skip) {
        std::vector<std::uint32_t> exps(v, 1);
        exps[skip] = 0;
        gens.push_back(Poly<F>::monomial_term(R, one, Monomial::from_vector(exps)));
    }
    return {Ideal<F>(R, std::move(gens)), "monomial-v " + std::to_string(v)};
}

template <class F>
IdealSpec<F> resolve_ideal(const F& field, const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw invalid_argument_error("no ideal given: list generators or a built-in name");
    if (tokens[0] == "fermat") {
        if (tokens.size() != 1)
            throw invalid_argument_error("fermat takes no further ideal tokens");
        return fermat_ideal(field);
    }
    if (tokens[0] == "monomial-v") {
        if (tokens.size() != 2)
            throw invalid_argument_error("usage: monomial-v <v>");
        return monomial_family(field, parse_u32(tokens[1], "monomial-v"));
    }
    auto R = ring_xyz(field);
    std::vector<Poly<F>> gens;
    for (const auto& t : tokens) gens.push_back(parse_poly(R, t));
    return {Ideal<F>(R, std::move(gens)), "explicit (" + std::to_string(tokens.size()) + " generators)"};
}

// ---------------------------------------------------------------------------
// report plumbing
// ---------------------------------------------------------------------------

json base_json(const RunConfig& cfg, const std::string& kind) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["query"] = {{"kind", kind}};
    j["field"] = {{"char", cfg.field_char}};
    j["limits"] = {{"max_degree", cfg.limits.max_degree},
                   {"max_steps", cfg.limits.max_steps},
                   {"max_pairs", cfg.limits.max_pairs}};
    return j;
}

template <class F>
json report_json(const ContainmentReport<F>& r) {
    json j;
    j["outcome"] = outcome_name(r.outcome);
    j["method"] = r.method;
    j["witness"] = r.witness ? json(witness_string(*r.witness)) : json(nullptr);
    j["detail"] = r.detail;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

template <class F>
void print_report_line(const std::string& tag, const ContainmentReport<F>& r) {
    std::cout << tag << ": " << outcome_name(r.outcome);
    if (r.witness) std::cout << "  witness: " << witness_string(*r.witness);
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "  (" << r.elapsed_ms << " ms)\n";
}

// Exit code for a single decided outcome, honoring --expect.
int verdict_exit(const RunConfig& cfg, Outcome o) {
    if (o == Outcome::resource_limited) return exit_resource;
    if (!cfg.expect.empty() && cfg.expect != outcome_name(o)) return exit_expect;
    return exit_ok;
}

// ---------------------------------------------------------------------------
// curve-side helpers shared by contain/curve/sweep
// ---------------------------------------------------------------------------

template <class F>
struct CurveData {
    CurveSpec spec;
    Ideal<F> kernel;
    HerzogData<F> herzog;
    std::string label;
};

template <class F>
CurveData<F> load_curve(const F& field, const std::string& triple, const ResourceLimits& lim) {
    auto abc = parse_u32_list(triple, 3, "--curve");
    CurveData<F> cd;
    cd.spec = make_curve_spec(abc[0], abc[1], abc[2]);
    cd.label = "curve " + triple;
    auto R = ring_xyz(field);
    cd.kernel = semigroup_kernel(R, cd.spec, lim);
    cd.herzog = herzog_matrix(cd.kernel, cd.spec, lim);
    return cd;
}

// The criterion-side containment decision for a curve, including the
// complete-intersection fast path (symbolic and ordinary powers coincide).
template <class F>
ContainmentReport<F> criterion_decide(const CurveData<F>& cd, std::uint32_t n, std::uint32_t m,
                                      bool exhaustive, const ResourceLimits& lim) {
    Stopwatch sw;
    if (cd.herzog.complete_intersection) {
        ContainmentReport<F> rep;
        rep.a = n;
        rep.b = m;
        rep.method = "criterion";
        if (n < m) throw invalid_argument_error("containment query needs n >= m");
        rep.outcome = Outcome::holds;
        rep.detail = "complete intersection: symbolic powers coincide with ordinary powers";
        rep.elapsed_ms = sw.elapsed_ms();
        return rep;
    }
    CriterionContext<F> ctx = build_context(*cd.herzog.matrix, lim);
    return decide(ctx, n, m,
                  exhaustive ? DecisionMode::exhaustive : DecisionMode::deterministic);
}

// ---------------------------------------------------------------------------
// subcommand handlers (templated over the coefficient field)
// ---------------------------------------------------------------------------

template <class F>
int cmd_gb(const RunConfig& cfg, const F& field) {
    if (cfg.args.empty()) throw invalid_argument_error("gb: list at least one generator");
    Stopwatch sw;
    IdealSpec<F> is = resolve_ideal(field, cfg.args);
    auto gb = is.ideal.groebner(order_of(cfg), cfg.limits);
    if (cfg.json_out) {
        json j = base_json(cfg, "gb");
        j["query"]["ideal"] = is.label;
        j["order"] = cfg.order;
        j["basis"] = json::array();
        for (const auto& g : gb->elems) j["basis"].push_back(format_poly(g));
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "reduced groebner basis (" << cfg.order << ", " << gb->elems.size()
                  << " elements):\n";
        for (const auto& g : gb->elems) std::cout << "  " << format_poly(g) << "\n";
    }
    return exit_ok;
}

template <class F>
int cmd_member(const RunConfig& cfg, const F& field) {
    if (cfg.args.empty()) throw invalid_argument_error("member: missing the polynomial argument");
    std::vector<std::string> rest(cfg.args.begin() + 1, cfg.args.end());
    Stopwatch sw;
    bool is_member = false;
    std::string label;
    std::string method;
    if (!cfg.curve.empty()) {
        if (!rest.empty())
            throw invalid_argument_error("member: give either --curve or explicit generators, not both");
        auto abc = parse_u32_list(cfg.curve, 3, "--curve");
        CurveSpec spec = make_curve_spec(abc[0], abc[1], abc[2]);
        auto R = ring_xyz(field);
        Poly<F> f = parse_poly(R, cfg.args[0]);
        is_member = vanishes_on_curve(spec, f);
        label = "curve " + cfg.curve;
        method = "substitution";
    } else {
        IdealSpec<F> is = resolve_ideal(field, rest);
        Poly<F> f = parse_poly(is.ideal.ring(), cfg.args[0]);
        auto gb = is.ideal.groebner(order_of(cfg), cfg.limits);
        is_member = normal_form(f, *gb, cfg.limits).is_zero();
        label = is.label;
        method = "normal-form";
    }
    Outcome o = is_member ? Outcome::holds : Outcome::fails;
    if (cfg.json_out) {
        json j = base_json(cfg, "member");
        j["query"]["ideal"] = label;
        j["query"]["poly"] = cfg.args[0];
        j["member"] = is_member;
        j["outcome"] = outcome_name(o);
        j["method"] = method;
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (is_member ? "true" : "false") << "\n";
    }
    return verdict_exit(cfg, o);
}

template <class F>
int cmd_sympower(const RunConfig& cfg, const F& field) {
    std::vector<std::string> toks = cfg.args;
    auto ints = pop_trailing_ints(toks, 1, "sympower");
    const std::uint32_t n = ints[0];
    if (n == 0) throw invalid_argument_error("sympower: n must be >= 1");
    Stopwatch sw;
    IdealSpec<F> is;
    if (!cfg.curve.empty()) {
        if (!toks.empty())
            throw invalid_argument_error("sympower: give either --curve or generators, not both");
        CurveData<F> cd = load_curve(field, cfg.curve, cfg.limits);
        is = {cd.kernel, cd.label};
    } else {
        is = resolve_ideal(field, toks);
    }
    Classification cls = classify(is.ideal, cfg.limits);
    if (cls.kind == IdealClass::unsupported) throw unsupported_error(cls.reason);
    Ideal<F> S = symbolic_power(is.ideal, n, cls, cfg.limits);
    if (cfg.json_out) {
        json j = base_json(cfg, "sympower");
        j["query"]["ideal"] = is.label;
        j["query"]["n"] = n;
        j["generators"] = json::array();
        for (const auto& g : S.gens()) j["generators"].push_back(format_poly(g));
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "symbolic power n=" << n << " of " << is.label << " (" << S.gens().size()
                  << " generators):\n";
        for (const auto& g : S.gens()) std::cout << "  " << format_poly(g) << "\n";
    }
    return exit_ok;
}

template <class F>
int cmd_contain(const RunConfig& cfg, const F& field) {
    std::vector<std::string> toks = cfg.args;
    auto ints = pop_trailing_ints(toks, 2, "contain");
    const std::uint32_t n = ints[0], m = ints[1];
    if (m == 0 || n < m) throw invalid_argument_error("contain: need n >= m >= 1");

    const bool have_curve = !cfg.curve.empty();
    if (have_curve && !toks.empty())
        throw invalid_argument_error("contain: give either --curve or an ideal, not both");
    if (!have_curve && (cfg.method == "criterion" || cfg.method == "both"))
        throw unsupported_error("the criterion method applies to monomial space curves; pass --curve a,b,c");

    std::optional<CurveData<F>> cd;
    IdealSpec<F> is;
    if (have_curve) {
        cd = load_curve(field, cfg.curve, cfg.limits);
        is = {cd->kernel, cd->label};
    } else {
        is = resolve_ideal(field, toks);
    }

    std::optional<ContainmentReport<F>> oracle_rep, crit_rep;
    if (cfg.method == "oracle" || cfg.method == "both") {
        Classification cls = classify(is.ideal, cfg.limits);
        if (cls.kind == IdealClass::unsupported) throw unsupported_error(cls.reason);
        oracle_rep = check_containment(is.ideal, n, m, cls, cfg.limits);
    }
    if (cfg.method == "criterion" || cfg.method == "both") {
        if (n == m) throw invalid_argument_error("the criterion method needs n > m");
        crit_rep = criterion_decide(*cd, n, m, cfg.exhaustive, cfg.limits);
    }

    Outcome verdict;
    bool agree = true;
    if (oracle_rep && crit_rep) {
        const Outcome a = oracle_rep->outcome, b = crit_rep->outcome;
        if (a == Outcome::resource_limited || b == Outcome::resource_limited) {
            verdict = Outcome::resource_limited;
        } else {
            agree = (a == b);
            verdict = a;
        }
    } else {
        verdict = oracle_rep ? oracle_rep->outcome : crit_rep->outcome;
    }

    if (cfg.json_out) {
        json j = base_json(cfg, "contain");
        j["query"]["ideal"] = is.label;
        j["query"]["n"] = n;
        j["query"]["m"] = m;
        j["outcome"] = outcome_name(verdict);
        j["method"] = cfg.method;
        std::int64_t total = 0;
        json* primary = nullptr;
        json methods = json::object();
        if (oracle_rep) {
            methods["oracle"] = report_json(*oracle_rep);
            total += oracle_rep->elapsed_ms;
        }
        if (crit_rep) {
            methods["criterion"] = report_json(*crit_rep);
            total += crit_rep->elapsed_ms;
        }
        if (oracle_rep && crit_rep) {
            j["methods"] = methods;
            j["agree"] = agree;
            primary = oracle_rep->witness ? &methods["oracle"] : &methods["criterion"];
            j["witness"] = (*primary)["witness"];
            j["detail"] = oracle_rep->detail.empty() ? crit_rep->detail : oracle_rep->detail;
        } else {
            const json& only = oracle_rep ? methods["oracle"] : methods["criterion"];
            j["witness"] = only["witness"];
            j["detail"] = only["detail"];
        }
        j["elapsed_ms"] = total;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "contain: symbolic power n=" << n << " inside ordinary power m=" << m
                  << " of " << is.label << "\n";
        if (oracle_rep) print_report_line("  oracle", *oracle_rep);
        if (crit_rep) print_report_line("  criterion", *crit_rep);
        if (oracle_rep && crit_rep)
            std::cout << "  methods " << (agree ? "agree" : "DISAGREE") << "\n";
        std::cout << "verdict: " << outcome_name(verdict) << "\n";
    }

    if (oracle_rep && crit_rep && verdict != Outcome::resource_limited && !agree) {
        std::cerr << "internal error: the two methods disagree on a decided instance\n";
        return exit_internal;
    }
    return verdict_exit(cfg, verdict);
}

template <class F>
int cmd_curve(const RunConfig& cfg, const F& field) {
    if (cfg.args.size() != 1) throw invalid_argument_error("usage: curve <a,b,c>");
    Stopwatch sw;
    CurveData<F> cd = load_curve(field, cfg.args[0], cfg.limits);
    const bool ci = cd.herzog.complete_intersection;

    json j;
    if (cfg.json_out) {
        j = base_json(cfg, "curve");
        j["query"]["ideal"] = cd.label;
        j["exponents"] = {cd.spec.a, cd.spec.b, cd.spec.c};
        j["reduced"] = {cd.spec.reduced[0], cd.spec.reduced[1], cd.spec.reduced[2]};
        j["complete_intersection"] = ci;
        j["kernel_generators"] = json::array();
        for (const auto& g : cd.herzog.generators)
            j["kernel_generators"].push_back(format_poly(g));
    } else {
        std::cout << "curve (" << cd.spec.a << "," << cd.spec.b << "," << cd.spec.c << "): kernel of "
                  << "x->t^" << cd.spec.a << ", y->t^" << cd.spec.b << ", z->t^" << cd.spec.c << "\n";
        std::cout << "  minimal generators: " << cd.herzog.generators.size() << "  ("
                  << (ci ? "complete intersection" : "three generators, matrix below") << ")\n";
        if (cfg.show_kernel || !ci)
            for (const auto& g : cd.herzog.generators) std::cout << "    " << format_poly(g) << "\n";
    }

    if (!ci) {
        const CurveMatrix<F>& M = *cd.herzog.matrix;
        if (cfg.show_matrix) {
            if (cfg.json_out) {
                j["matrix"] = json::array();
                j["matrix"].push_back({format_poly(M.entry[0]), format_poly(M.entry[1]),
                                       format_poly(M.entry[2])});
                j["matrix"].push_back({format_poly(M.entry[3]), format_poly(M.entry[4]),
                                       format_poly(M.entry[5])});
                auto f = M.minors();
                j["minors"] = {format_poly(f[0]), format_poly(f[1]), format_poly(f[2])};
            } else {
                std::cout << "  matrix rows (kernel generators are its signed 2x2 minors):\n";
                std::cout << "    [ " << format_poly(M.entry[0]) << " | " << format_poly(M.entry[1])
                          << " | " << format_poly(M.entry[2]) << " ]\n";
                std::cout << "    [ " << format_poly(M.entry[3]) << " | " << format_poly(M.entry[4])
                          << " | " << format_poly(M.entry[5]) << " ]\n";
                auto f = M.minors();
                for (int i = 0; i < 3; ++i)
                    std::cout << "    f" << (i + 1) << " = " << format_poly(f[i]) << "\n";
            }
        }
        if (cfg.show_criteria) {
            auto hits = divisibility_criterion(M, cfg.limits);
            auto has = [&](std::uint32_t a, std::uint32_t b) {
                for (auto& p : hits)
                    if (p.first == a && p.second == b) return true;
                return false;
            };
            if (cfg.json_out) {
                j["criteria"] = json::array();
                for (auto [a, b] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {4, 3}, {5, 3}})
                    j["criteria"].push_back({{"n", a}, {"m", b}, {"holds", has(a, b)}});
            } else {
                std::cout << "  certified divisibility criteria (sound, not complete):\n";
                for (auto [a, b] : {std::pair<std::uint32_t, std::uint32_t>{3, 2}, {4, 3}, {5, 3}})
                    std::cout << "    (" << a << "," << b << "): "
                              << (has(a, b) ? "holds" : "not certified") << "\n";
            }
        }
        if (cfg.strand_n > 0 || !cfg.lift.empty()) {
            CriterionContext<F> ctx = build_context(M, cfg.limits);
            if (cfg.strand_n > 0) {
                auto H = build_H(ctx, cfg.strand_n);
                std::string text = format_strand_matrix(H);
                if (cfg.json_out)
                    j["strand_matrix"] = {{"n", cfg.strand_n},
                                          {"rows", H.rows.size()},
                                          {"cols", H.cols.size()},
                                          {"text", text}};
                else
                    std::cout << "  strand matrix n=" << cfg.strand_n << " (" << H.rows.size()
                              << "x" << H.cols.size() << "):\n" << text;
            }
            if (!cfg.lift.empty()) {
                auto nm = parse_u32_list(cfg.lift, 2, "--lift");
                LiftMatrix<F> V = cfg.lift_kind == "derivation"
                                      ? build_V_derivation(ctx, nm[0], nm[1])
                                      : build_V(ctx, nm[0], nm[1]);
                std::string text = format_lift_matrix(V);
                if (cfg.json_out)
                    j["lift_matrix"] = {{"n", nm[0]},          {"m", nm[1]},
                                        {"kind", cfg.lift_kind}, {"rows", V.rows.size()},
                                        {"cols", V.cols.size()}, {"text", text}};
                else
                    std::cout << "  lift matrix (n,m)=(" << nm[0] << "," << nm[1] << "), "
                              << cfg.lift_kind << ":\n" << text;
            }
        }
    } else {
        if (cfg.strand_n > 0 || !cfg.lift.empty())
            throw unsupported_error("complete intersection curve: no matrix, so no strand or lift matrices");
        if (cfg.show_matrix && !cfg.json_out)
            std::cout << "  (complete intersection: the kernel has no matrix presentation here)\n";
        if (cfg.show_criteria && !cfg.json_out)
            std::cout << "  (complete intersection: symbolic powers coincide with ordinary powers;\n"
                         "   every containment with n >= m holds)\n";
    }

    if (cfg.json_out) {
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    }
    return exit_ok;
}

template <class F>
int cmd_sweep(const RunConfig& cfg, const F& field) {
    if (cfg.amax == 0 || cfg.bmax == 0)
        throw invalid_argument_error("sweep: --amax and --bmax are required and must be >= 1");
    Stopwatch sw;
    IdealSpec<F> is;
    if (!cfg.curve.empty()) {
        if (!cfg.args.empty())
            throw invalid_argument_error("sweep: give either --curve or an ideal, not both");
        CurveData<F> cd = load_curve(field, cfg.curve, cfg.limits);
        is = {cd.kernel, cd.label};
    } else {
        is = resolve_ideal(field, cfg.args);
    }
    Classification cls = classify(is.ideal, cfg.limits);
    if (cls.kind == IdealClass::unsupported) throw unsupported_error(cls.reason);
    SweepResult res =
        sweep_containments(is.ideal, cfg.amax, cfg.bmax, cls, cfg.store_path, cfg.limits);

    if (cfg.json_out) {
        json j = base_json(cfg, "sweep");
        j["query"]["ideal"] = is.label;
        j["query"]["amax"] = cfg.amax;
        j["query"]["bmax"] = cfg.bmax;
        j["cells"] = json::array();
        for (const auto& c : res.cells)
            j["cells"].push_back({{"a", c.a},
                                  {"b", c.b},
                                  {"outcome", outcome_name(c.outcome)},
                                  {"witness", c.witness.empty() ? json(nullptr) : json(c.witness)},
                                  {"elapsed_ms", c.elapsed_ms},
                                  {"cached", c.cached}});
        j["resurgence_lower"] = std::to_string(res.resurgence_num) + "/" +
                                std::to_string(res.resurgence_den);
        j["resurgence_num"] = res.resurgence_num;
        j["resurgence_den"] = res.resurgence_den;
        j["any_resource_limited"] = res.any_resource_limited;
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "sweep of " << is.label << ", 1 <= b <= " << cfg.bmax << ", b <= a <= "
                  << cfg.amax << ":\n";
        for (const auto& c : res.cells) {
            std::cout << "  a=" << c.a << " b=" << c.b << ": " << outcome_name(c.outcome);
            if (!c.witness.empty()) std::cout << "  witness: " << c.witness;
            if (c.cached) std::cout << "  (cached)";
            std::cout << "  (" << c.elapsed_ms << " ms)\n";
        }
        std::cout << "resurgence lower bound: " << res.resurgence_num << "/"
                  << res.resurgence_den << "\n";
    }
    return res.any_resource_limited ? exit_resource : exit_ok;
}

int cmd_fedder(const RunConfig& cfg) {
    std::vector<std::string> toks = cfg.args;
    auto ints = pop_trailing_ints(toks, 1, "fedder");
    const std::uint32_t p = ints[0];
    if (cfg.field_char_given && cfg.field_char != p)
        throw invalid_argument_error("fedder: the trailing prime selects the field; drop --char or make them match");
    PrimeField field(p);
    Stopwatch sw;
    IdealSpec<PrimeField> is = resolve_ideal(field, toks);
    FedderResult<PrimeField> fr = fedder_is_fpure(is.ideal, cfg.limits);
    Outcome o = fr.fpure ? Outcome::holds : Outcome::fails;
    if (cfg.json_out) {
        json j = base_json(cfg, "fedder");
        j["field"] = {{"char", p}};
        j["query"]["ideal"] = is.label;
        j["fpure"] = fr.fpure;
        j["outcome"] = outcome_name(o);
        j["witness"] = fr.fpure ? json(witness_string(fr.witness)) : json(nullptr);
        j["elapsed_ms"] = sw.elapsed_ms();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "F-pure at p=" << p << ": " << (fr.fpure ? "true" : "false") << "\n";
        if (fr.fpure)
            std::cout << "  witness in (frobenius(I) : I) outside the frobenius maximal ideal: "
                      << witness_string(fr.witness) << "\n";
    }
    return verdict_exit(cfg, o);
}

int cmd_stable(const RunConfig& cfg) {
    if (cfg.args.size() != 2) throw invalid_argument_error("usage: stable <h> <m>");
    const std::uint32_t h = parse_u32(cfg.args[0], "stable h");
    const std::uint32_t m = parse_u32(cfg.args[1], "stable m");
    auto steps = stability_schedule(h, m, cfg.count);
    const std::uint32_t k0 = h * m;
    if (cfg.json_out) {
        json j = base_json(cfg, "stable");
        j["query"]["h"] = h;
        j["query"]["m"] = m;
        j["k0"] = k0;
        j["steps"] = json::array();
        for (const auto& st : steps) {
            json factors = json::array();
            for (auto a : st.a) factors.push_back(a + 1);
            j["steps"].push_back({{"k", st.k},
                                  {"symbolic_power", h * st.k - h},
                                  {"factors", factors}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "stability threshold: k0 = h*m = " << k0
                  << " (decompositions certify every k >= k0; S(i) = i-th symbolic power)\n";
        for (const auto& st : steps) {
            std::cout << "  k=" << st.k << ": S(" << (h * st.k - h) << ") inside the product";
            for (auto a : st.a) std::cout << " S(" << (a + 1) << ")";
            std::cout << "\n";
        }
    }
    return exit_ok;
}

template <class F>
int cmd_fermat(const RunConfig& cfg, const F& field) {
    IdealSpec<F> is = fermat_ideal(field);
    if (cfg.json_out) {
        json j = base_json(cfg, "fermat");
        j["query"]["ideal"] = is.label;
        j["generators"] = json::array();
        for (const auto& g : is.ideal.gens()) j["generators"].push_back(format_poly(g));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "built-in ideal fermat (generators in k[x,y,z]):\n";
        for (const auto& g : is.ideal.gens()) std::cout << "  " << format_poly(g) << "\n";
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

template <class F>
int run_typed(const RunConfig& cfg, const F& field) {
    if (cfg.cmd == "gb") return cmd_gb(cfg, field);
    if (cfg.cmd == "member") return cmd_member(cfg, field);
    if (cfg.cmd == "sympower") return cmd_sympower(cfg, field);
    if (cfg.cmd == "contain") return cmd_contain(cfg, field);
    if (cfg.cmd == "curve") return cmd_curve(cfg, field);
    if (cfg.cmd == "sweep") return cmd_sweep(cfg, field);
    if (cfg.cmd == "fermat") return cmd_fermat(cfg, field);
    throw invalid_argument_error("unknown subcommand: " + cfg.cmd);
}

int run(const RunConfig& cfg) {
    if (cfg.cmd == "stable") return cmd_stable(cfg);
    if (cfg.cmd == "fedder") return cmd_fedder(cfg);
    if (cfg.field_char == 0) return run_typed(cfg, Rationals{});
    return run_typed(cfg, PrimeField(cfg.field_char));
}

int fail(const RunConfig& cfg, int code, const std::string& kind, const std::string& message) {
    if (cfg.json_out) {
        json j;
        j["schema_version"] = kSchemaVersion;
        j["error"] = {{"code", code}, {"kind", kind}, {"message", message}};
        std::cout << j.dump(2) << "\n";
    }
    std::cerr << "error (" << kind << "): " << message << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    CLI::App app{"sympow: symbolic-power containments in k[x,y,z] by saturation and by the matrix criterion"};
    app.require_subcommand(1);
    app.add_option("--char", cfg.field_char, "coefficient field: a prime, or 0 for the rationals")
        ->default_val(32003);
    app.add_option("--order", cfg.order, "term order for basis computations: grevlex | lex")
        ->default_val("grevlex");
    app.add_option("--max-degree", cfg.limits.max_degree, "cap on intermediate total degree");
    app.add_option("--max-steps", cfg.limits.max_steps, "cap on total reduction steps");
    app.add_flag("--json", cfg.json_out, "emit a machine-readable JSON report");
    app.add_option("--store", cfg.store_path, "sweep cache file (read and append)");
    app.add_option("--expect", cfg.expect, "holds | fails; exit 5 when the verdict differs")
        ->check(CLI::IsMember({"holds", "fails"}));

    auto add_sub = [&](const std::string& name, const std::string& desc, bool positionals = true) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        if (positionals) s->add_option("args", cfg.args, "positional arguments");
        return s;
    };

    add_sub("gb", "reduced Groebner basis of the listed generators");
    CLI::App* s_member = add_sub("member", "is the polynomial in the ideal (or on the curve)?");
    CLI::App* s_sympow = add_sub("sympower", "generators of the n-th symbolic power: sympower <ideal> <n>");
    CLI::App* s_contain = add_sub("contain", "decide symbolic-in-ordinary containment: contain <ideal> <n> <m>");
    CLI::App* s_curve = add_sub("curve", "inspect a monomial space curve: curve <a,b,c>");
    CLI::App* s_sweep = add_sub("sweep", "decide a rectangle of containments and report the largest failing ratio");
    add_sub("fedder", "F-purity at the origin: fedder <ideal> <p>");
    CLI::App* s_stable = add_sub("stable", "stability threshold and decomposition schedule: stable <h> <m>");
    add_sub("fermat", "print the built-in Fermat configuration ideal", false);

    for (CLI::App* s : {s_member, s_sympow, s_contain, s_sweep})
        s->add_option("--curve", cfg.curve, "use the kernel ideal of the curve a,b,c");
    s_contain->add_option("--method", cfg.method, "oracle | criterion | both")
        ->check(CLI::IsMember({"oracle", "criterion", "both"}))
        ->default_val("oracle");
    s_contain->add_flag("--exhaustive", cfg.exhaustive,
                        "criterion: check every lift representative, not just one per position");
    s_curve->add_flag("--matrix", cfg.show_matrix, "print the presentation matrix and its minors");
    s_curve->add_flag("--criteria", cfg.show_criteria, "evaluate the certified divisibility criteria");
    s_curve->add_flag("--kernel", cfg.show_kernel, "print the kernel generators");
    s_curve->add_option("--strand", cfg.strand_n, "print the strand matrix for this degree");
    s_curve->add_option("--lift", cfg.lift, "print the lift matrix for n,m");
    s_curve->add_option("--lift-kind", cfg.lift_kind, "shift | derivation")
        ->check(CLI::IsMember({"shift", "derivation"}))
        ->default_val("shift");
    s_sweep->add_option("--amax", cfg.amax, "largest symbolic exponent a");
    s_sweep->add_option("--bmax", cfg.bmax, "largest ordinary exponent b");
    s_stable->add_option("--count", cfg.count, "number of schedule steps to print")
        ->default_val(5);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exits 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }
    cfg.field_char_given = app.count("--char") > 0;
    cfg.cmd = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const parse_error& e) {
        return fail(cfg, exit_invalid, "parse", e.what());
    } catch (const invalid_argument_error& e) {
        return fail(cfg, exit_invalid, "invalid-input", e.what());
    } catch (const unsupported_error& e) {
        return fail(cfg, exit_unsupported, "unsupported", e.what());
    } catch (const resource_limit_error& e) {
        return fail(cfg, exit_resource, "resource-limit", e.what());
    } catch (const std::exception& e) {
        return fail(cfg, exit_internal, "internal", e.what());
    }
}
