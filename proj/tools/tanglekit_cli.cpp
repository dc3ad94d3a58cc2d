#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tanglekit/expr.hpp"
#include "tanglekit/invariants.hpp"
#include "tanglekit/json_io.hpp"
#include "tanglekit/synth.hpp"
#include "tanglekit/testkit.hpp"

using namespace tanglekit;
using ojson = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr const char* kSchema = "tanglekit/1";

struct Globals {
    bool json = false;
    int max_crossings = 0;
    std::string evaluator = "auto";
};

Evaluator evaluator_from(const std::string& name) {
    if (name == "auto") return Evaluator::Auto;
    if (name == "full") return Evaluator::Full;
    if (name == "mono") return Evaluator::Monocyclic;
    if (name == "mono-serial") return Evaluator::MonocyclicSerial;
    if (name == "skein") return Evaluator::Skein;
    throw CLI::ValidationError("--evaluator", "unknown evaluator '" + name + "'");
}

ojson envelope(const std::string& command) {
    ojson j;
    j["schema"] = kSchema;
    j["command"] = command;
    return j;
}

ojson matrix_json(const ProjMatrix& m) {
    ojson rows = ojson::array();
    for (int i = 0; i < m.rows(); ++i) {
        ojson row = ojson::array();
        for (int k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k));
        rows.push_back(row);
    }
    return rows;
}

Diagram load(const std::string& arg) {
    namespace fs = std::filesystem;
    if (arg.size() > 5 && arg.substr(arg.size() - 5) == ".json" && fs::exists(arg)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return diagram_from_json(ss.str());
    }
    return elaborate(*parse_expr(arg));
}

bool is_square(Int d) {
    if (d < 0) return false;
    auto r = static_cast<Int>(std::llround(std::sqrt(static_cast<long double>(d))));
    while (r * r > d) --r;
    while ((r + 1) * (r + 1) <= d) ++r;
    return r * r == d;
}

// ---- subcommands ----

int cmd_bracket(const Globals& g, const std::string& input) {
    Diagram l = load(input);
    PhiScalar v = bracket(l, evaluator_from(g.evaluator));
    if (g.json) {
        ojson j = envelope("bracket");
        j["crossings"] = l.num_crossings;
        j["coefficient"] = v.mag();
        j["exponent"] = v.exp();
        j["magnitude"] = v.magnitude();
        j["planarity_verified"] = l.planarity_verified;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "bracket   " << v.to_string() << "\n"
                  << "magnitude " << v.magnitude() << "\n";
        if (!l.planarity_verified) std::cout << "note      planarity unverified (loaded from JSON)\n";
    }
    return kExitOk;
}

int cmd_invariant(const Globals& g, const std::string& input) {
    Diagram t = load(input);
    if (t.num_boundaries == 0) throw ShapeError("invariant expects a tangle, got a link");
    ProjMatrix m = inv_Fn(t, evaluator_from(g.evaluator));
    if (g.json) {
        ojson j = envelope("invariant");
        j["holes"] = t.num_holes();
        j["matrix"] = matrix_json(m);
        if (m.rows() == 2 && m.cols() == 2) j["det"] = det2(m);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << m.to_string() << "\n";
        if (m.rows() == 2 && m.cols() == 2) std::cout << "det " << det2(m) << "\n";
    }
    return kExitOk;
}

int cmd_synth(const Globals& g, Int b, Int a) {
    const ProjMatrix target = ProjMatrix::column(b, a);
    Synthesis s = synth_ball(target);
    const ProjMatrix got = inv_f(s.diagram, evaluator_from(g.evaluator));
    const bool ok = got == target;
    if (g.json) {
        ojson j = envelope("synth");
        j["target"] = matrix_json(target);
        j["expr"] = print_expr(*s.expr);
        j["crossings"] = s.diagram.num_crossings;
        j["verified"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << print_expr(*s.expr) << "\n"
                  << "crossings " << s.diagram.num_crossings << "\n"
                  << "f = " << got.to_string() << (ok ? "  verified" : "  MISMATCH") << "\n";
    }
    return ok ? kExitOk : kExitViolation;
}

int cmd_obstruct(const Globals& g, const std::string& link, const std::vector<std::string>& tangles) {
    Diagram l = load(link);
    require_boundaries(l, 0, "--link");
    const Evaluator ev = evaluator_from(g.evaluator);
    PhiScalar br = bracket(l, ev);
    std::vector<ProjMatrix> fs;
    Int prod = 1;
    for (const auto& t : tangles) {
        Diagram b = load(t);
        require_boundaries(b, 1, "--tangle");
        fs.push_back(inv_f(b, ev));
        prod = checked_mul(prod, gcd_list({fs.back().at(0, 0), fs.back().at(1, 0)}));
    }
    const bool consistent = krebes_check(fs, br);
    if (g.json) {
        ojson j = envelope("obstruct");
        j["link_magnitude"] = br.magnitude();
        ojson inv = ojson::array();
        for (const auto& f : fs) inv.push_back(matrix_json(f));
        j["tangles"] = inv;
        j["gcd_product"] = prod;
        j["embedding_possible"] = consistent;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "|<L>|        " << br.magnitude() << "\n";
        for (size_t i = 0; i < fs.size(); ++i) std::cout << "f(B" << i + 1 << ")       " << fs[i].to_string() << "\n";
        std::cout << "gcd product  " << prod << "\n"
                  << (consistent ? "no obstruction: the product divides |<L>|"
                                 : "obstructed: these tangles do not embed disjointly in L")
                  << "\n";
    }
    return kExitOk;
}

struct ScanState {
    std::uint64_t seed = 1;
    bool closed = false;
    long long next = 0;
    std::array<long long, 4> residues{0, 0, 0, 0};
    long long nonsquare = 0;
    long long forbidden = 0;

    ojson to_json() const {
        ojson j;
        j["seed"] = seed;
        j["closed"] = closed;
        j["next"] = next;
        j["residues"] = residues;
        j["nonsquare"] = nonsquare;
        j["forbidden"] = forbidden;
        return j;
    }
};

void save_checkpoint(const std::string& path, const ScanState& st) {
    if (path.empty()) return;
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        out << st.to_json().dump() << "\n";
    }
    std::filesystem::rename(tmp, path);
}

int cmd_scan_det(const Globals& g, long long samples, std::uint64_t seed, bool closed, const std::string& ckpt,
                 int size) {
    ScanState st;
    st.seed = seed;
    st.closed = closed;
    if (!ckpt.empty() && std::filesystem::exists(ckpt)) {
        std::ifstream in(ckpt);
        ojson j = ojson::parse(in);
        if (j.at("seed").get<std::uint64_t>() == seed && j.at("closed").get<bool>() == closed) {
            st.next = j.at("next").get<long long>();
            st.residues = j.at("residues").get<std::array<long long, 4>>();
            st.nonsquare = j.at("nonsquare").get<long long>();
            st.forbidden = j.at("forbidden").get<long long>();
            if (!g.json) std::cerr << "resuming at sample " << st.next << "\n";
        }
    }
    const ProjMatrix forbidden = ProjMatrix::from_rows({{1, 0}, {0, -1}});
    const Evaluator ev = evaluator_from(g.evaluator);
    for (; st.next < samples; ++st.next) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(st.next);
        SphericalSample smp = spherical_sample(s, closed, size);
        ProjMatrix F = inv_Fn(smp.diagram, ev);
        const Int d = det2(F);
        const int res = det_residue(F);
        const bool square = is_square(d);
        ++st.residues[res];
        if (!square) ++st.nonsquare;
        if (F == forbidden) ++st.forbidden;
        if (g.json) {
            ojson j;
            j["sample"] = st.next;
            j["seed"] = s;
            j["family"] = family_name(smp.family);
            j["crossings"] = smp.diagram.num_crossings;
            j["matrix"] = matrix_json(F);
            j["det"] = d;
            j["residue"] = res;
            j["square"] = square;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << st.next << " seed=" << s << " " << family_name(smp.family) << " F=" << F.to_string()
                      << " det=" << d << " mod4=" << res << (res > 1 ? "  COUNTEREXAMPLE" : "")
                      << (square ? "" : "  non-square") << "\n";
        }
        if ((st.next + 1) % 100 == 0) {
            st.next += 1;
            save_checkpoint(ckpt, st);
            st.next -= 1;
        }
    }
    save_checkpoint(ckpt, st);
    const long long bad = st.residues[2] + st.residues[3] + st.forbidden;
    if (g.json) {
        ojson j = envelope("scan-det");
        j["summary"] = st.to_json();
        j["samples"] = samples;
        j["counterexamples"] = bad;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "residues 0:" << st.residues[0] << " 1:" << st.residues[1] << " 2:" << st.residues[2]
                  << " 3:" << st.residues[3] << "\nnon-square determinants " << st.nonsquare
                  << "\ncounterexamples " << bad << "\n";
    }
    return bad == 0 ? kExitOk : kExitViolation;
}

int cmd_delta_check(const Globals& g, long long samples, std::uint64_t seed) {
    const Evaluator ev = evaluator_from(g.evaluator);
    long long violations = 0, with_delta = 0;
    for (long long i = 0; i < samples; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        DeltaPair p = delta_pair(s);
        const ProjMatrix a = inv_Fn(p.before, ev), b = inv_Fn(p.after.diagram, ev);
        const bool ok = delta_congruent(a, b);
        if (!ok) ++violations;
        if (p.after.delta_moves() > 0) ++with_delta;
        std::string moves;
        for (const auto& m : p.after.log) moves += (moves.empty() ? "" : " ") + m.to_string();
        if (g.json) {
            ojson j;
            j["sample"] = i;
            j["seed"] = s;
            j["before"] = matrix_json(a);
            j["after"] = matrix_json(b);
            j["moves"] = moves;
            j["congruent"] = ok;
            std::cout << j.dump() << "\n";
        } else {
            std::cout << i << " seed=" << s << " " << a.to_string() << " -> " << b.to_string() << " [" << moves
                      << "]" << (ok ? "" : "  VIOLATION") << "\n";
        }
    }
    if (g.json) {
        ojson j = envelope("delta-check");
        j["samples"] = samples;
        j["with_delta"] = with_delta;
        j["violations"] = violations;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "pairs " << samples << " with Delta moves " << with_delta << " violations " << violations
                  << "\n";
    }
    return violations == 0 ? kExitOk : kExitViolation;
}

// ---- selftest ----

struct Check {
    std::string name;
    bool ok;
    std::string detail;
};

int cmd_selftest(const Globals& g) {
    std::vector<Check> checks;
    auto add = [&](std::string name, bool ok, std::string detail = "") {
        checks.push_back({std::move(name), ok, std::move(detail)});
    };
    auto f_of = [](const char* e) { return inv_f(elaborate(*parse_expr(e))); };
    auto F_of = [](const char* e) { return inv_Fn(elaborate(*parse_expr(e))); };
    auto col = [](Int p, Int q) { return ProjMatrix::column(p, q); };
    auto mat = [](Int a, Int b, Int c, Int d) { return ProjMatrix::from_rows({{a, b}, {c, d}}); };

    const std::vector<std::pair<std::string, Int>> magnitudes{
        {"unknot", 1}, {"unlink2", 0}, {"hopf", 2}, {"trefoil", 3}, {"figure-eight", 5}};
    auto named = named_links();
    for (size_t i = 0; i < named.size(); ++i) {
        const Int m = bracket(named[i].diagram).magnitude();
        add("|<" + named[i].name + ">| = " + std::to_string(magnitudes[i].second), m == magnitudes[i].second,
            std::to_string(m));
    }
    const std::vector<std::pair<const char*, ProjMatrix>> balls{
        {"t1", col(1, 0)},          {"t2", col(0, 1)},          {"t1 +h t1", col(0, 0)},
        {"h(1)", col(1, 1)},        {"h(1)*", col(1, -1)},      {"h(1) +h h(1)", col(2, 1)},
        {"v(2)", col(1, 2)},        {"v(3) +h t1", col(3, 0)},  {"h(-3)", col(-3, 1)},
        {"v(-2)", col(1, -2)},      {"h(2) R", col(1, -2)}};
    for (const auto& [e, want] : balls) {
        const ProjMatrix got = f_of(e);
        add(std::string("f(") + e + ") = " + want.to_string(), got == want, got.to_string());
    }
    const std::vector<std::pair<const char*, ProjMatrix>> sph{
        {"I", mat(1, 0, 0, 1)},
        {"(h(1) +v I) o (h(1) +v I)", mat(1, 0, 2, 1)},
        {"h(1) +v I", mat(1, 0, 1, 1)},
        {"t2 +v I", mat(0, 0, 1, 0)},
        {"(t1 +h t1) +h I", mat(0, 0, 0, 0)},
        {"J(1,1,1,1)", mat(4, -4, 4, -4)},
        {"J(1,0,0,0)", mat(0, 0, 0, 1)}};
    for (const auto& [e, want] : sph) {
        const ProjMatrix got = F_of(e);
        add(std::string("F(") + e + ") = " + want.to_string(), got == want, got.to_string());
    }
    {
        const ProjMatrix got = inv_Fn(hooked_identity());
        bool even = true;
        for (Int x : got.entries()) even = even && x % 2 == 0;
        add("closed component gives even entries", even, got.to_string());
    }
    {
        int bad = 0;
        auto corpus = standard_corpus(10, 300);
        for (const auto& l : corpus) {
            const PhiScalar a = bracket_full(l), b = bracket_monocyclic(l), c = bracket_skein(l),
                            d = bracket_monocyclic_serial(l);
            if (!(a == b && b == c && c == d)) ++bad;
        }
        add("evaluators agree on " + std::to_string(corpus.size()) + " corpus links", bad == 0,
            std::to_string(bad) + " disagreements");
    }
    {
        int bad = 0;
        for (std::uint64_t s = 0; s < 60; ++s) {
            GenConfig cfg;
            cfg.seed = s;
            cfg.max_crossings = 10;
            const int n = 1 + static_cast<int>(s % 3);
            Diagram t = gen_punctured(cfg, n);
            std::vector<Diagram> fills;
            for (int i = 0; i < n; ++i) {
                cfg.seed = s * 31 + i;
                cfg.max_crossings = 4;
                fills.push_back(gen_ball(cfg));
            }
            if (!compose_law_check(t, fills)) ++bad;
        }
        add("composition law on 60 punctured tangles", bad == 0, std::to_string(bad) + " failures");
    }
    {
        int bad = 0;
        for (Int b = -8; b <= 8; ++b)
            for (Int a = -8; a <= 8; ++a)
                if (inv_f(synth_ball(col(b, a)).diagram) != col(b, a)) ++bad;
        add("synth round-trip on [-8,8]^2", bad == 0, std::to_string(bad) + " failures");
    }
    {
        int bad = 0;
        for (std::uint64_t s = 0; s < 100; ++s)
            if (det_residue(inv_Fn(spherical_sample(s).diagram)) > 1) ++bad;
        add("det F mod 4 in {0,1} on 100 spherical tangles", bad == 0, std::to_string(bad) + " violations");
    }
    add("det [[1,0],[0,-1]] = 3 mod 4", det_residue(mat(1, 0, 0, -1)) == 3);

    int failed = 0;
    for (const auto& c : checks) failed += c.ok ? 0 : 1;
    if (g.json) {
        ojson j = envelope("selftest");
        ojson arr = ojson::array();
        for (const auto& c : checks) arr.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        j["checks"] = arr;
        j["failed"] = failed;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& c : checks)
            std::cout << (c.ok ? "PASS " : "FAIL ") << c.name << (c.ok || c.detail.empty() ? "" : "  got " + c.detail)
                      << "\n";
        std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
    }
    return failed == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kauffman bracket tangle invariants at the eighth root of unity"};
    app.require_subcommand(1);
    Globals g;
    app.add_flag("--json", g.json, "Machine-readable output");
    app.add_option("--max-crossings", g.max_crossings,
                   "Crossing cap of the state-sum evaluators (default 24 or TANGLEKIT_MAX_CROSSINGS)");
    app.add_option("--evaluator", g.evaluator, "auto | full | mono | mono-serial | skein")
        ->check(CLI::IsMember({"auto", "full", "mono", "mono-serial", "skein"}));

    std::string input, link;
    std::vector<std::string> tangles;
    Int sb = 0, sa = 0;
    long long samples = 0;
    std::uint64_t seed = 1;
    bool closed = false;
    std::string checkpoint;
    int size = 14;

    auto* br = app.add_subcommand("bracket", "Kauffman bracket of a link diagram");
    br->add_option("input", input, "Expression or .json diagram file")->required();
    auto* inv = app.add_subcommand("invariant", "f or F^n of a tangle");
    inv->add_option("input", input, "Expression or .json diagram file")->required();
    auto* sy = app.add_subcommand("synth", "Ball tangle with invariant [b;a]");
    sy->add_option("b", sb)->required();
    sy->add_option("a", sa)->required();
    auto* ob = app.add_subcommand("obstruct", "Divisibility test for tangles embedded disjointly in a link");
    ob->add_option("--link", link, "Link expression or .json file")->required();
    ob->add_option("--tangle", tangles, "Ball tangle expression or .json file (repeatable)")->required();
    auto* sd = app.add_subcommand("scan-det", "Stream det F(S) mod 4 over generated spherical tangles");
    sd->add_option("--samples", samples)->required()->check(CLI::NonNegativeNumber);
    sd->add_option("--seed", seed);
    sd->add_flag("--closed", closed, "Only tangles with closed components");
    sd->add_option("--checkpoint", checkpoint, "Progress file; an interrupted scan resumes from it");
    sd->add_option("--size", size, "Crossing budget per sample")->check(CLI::Range(0, 40));
    auto* dc = app.add_subcommand("delta-check", "Mod-4 congruence over Delta-decorated pairs");
    dc->add_option("--samples", samples)->required()->check(CLI::NonNegativeNumber);
    dc->add_option("--seed", seed);
    auto* st = app.add_subcommand("selftest", "Golden values and evaluator cross-checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (g.max_crossings > 0) set_crossing_cap(g.max_crossings);
        if (*br) return cmd_bracket(g, input);
        if (*inv) return cmd_invariant(g, input);
        if (*sy) return cmd_synth(g, sb, sa);
        if (*ob) return cmd_obstruct(g, link, tangles);
        if (*sd) return cmd_scan_det(g, samples, seed, closed, checkpoint, size);
        if (*dc) return cmd_delta_check(g, samples, seed);
        if (*st) return cmd_selftest(g);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ShapeError& e) {
        std::cerr << "shape error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MatchingError& e) {
        std::cerr << "invalid diagram: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CrossingCapExceeded& e) {
        std::cerr << "too large: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PhaseIncoherence& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kExitViolation;
    } catch (const NonCoherentPhases& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return kExitViolation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
