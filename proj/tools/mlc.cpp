#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "mlc/mlc.hpp"

using namespace mlc;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitSoftware = 70;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Text most recently handed to a parser, for caret diagnostics.
std::string g_last_input;

std::string read_stream(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

std::string arg_text(const std::string& arg) {
    g_last_input = arg == "-" ? read_stream(std::cin) : arg;
    return g_last_input;
}

std::string file_text(const std::string& path) {
    if (path == "-") return g_last_input = read_stream(std::cin);
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path);
    return g_last_input = read_stream(in);
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

bool looks_like_derivation(const std::string& text) {
    static const std::set<std::string> rules{"ax", "axi", "weak", "int", "cut", "tl", "tr", "impl", "impr", "tt"};
    std::string t = trim(text);
    if (t.empty() || t[0] != '(') return false;
    std::size_t i = 1;
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    std::size_t j = i;
    while (j < t.size() && std::isalpha(static_cast<unsigned char>(t[j]))) ++j;
    return rules.count(t.substr(i, j - i)) > 0 && j < t.size() && (t[j] == ' ' || t[j] == '[' || t[j] == '\n');
}

void print_caret(const ParseError& e) {
    if (g_last_input.empty() || g_last_input.find('\n') != std::string::npos) return;
    std::cerr << "  " << g_last_input << "\n  " << std::string(std::min(e.position(), g_last_input.size()), ' ')
              << "^\n";
}

// ---------- fuzz ----------

struct Tally {
    std::size_t checked = 0, violations = 0, attempted = 0, confirmed = 0;
    void expect(bool ok) { violations += ok ? 0 : 1; }
};

bool links_well_formed(const Term& t, const LinkSet& l) {
    std::map<OccPath, Occurrence> occ;
    for (const auto& o : signed_occurrences(t.type())) occ.emplace(o.path, o);
    std::set<OccPath> seen;
    for (const auto& [x, y] : l.edges) {
        if (!occ.count(x) || !occ.count(y) || !seen.insert(x).second || !seen.insert(y).second) return false;
        if (occ.at(x).letter != occ.at(y).letter || occ.at(x).sign == occ.at(y).sign) return false;
    }
    return seen.size() == occ.size();
}

bool even_occurrences(const SequentIL& s) {
    std::map<std::string, int> n;
    for (const auto& o : signed_occurrences(s)) ++n[o.letter];
    for (const auto& [letter, k] : n)
        if (k % 2) return false;
    return true;
}

int run_fuzz(std::uint64_t seed, std::size_t count, std::size_t budget) {
    Rng rng(seed);
    Tally terms, decoding, elim, units, central;
    for (std::size_t i = 0; i < count; ++i) {
        Term t = random_term(rng, 8);
        ++terms.checked;
        LinkSet l = links_of(t);
        terms.expect(even_occurrences(t.type()));
        terms.expect(links_well_formed(t, l));
        Generalized g = generalize(t);
        terms.expect(is_balanced(g.term.type()) && links_of(g.term).edges.size() == l.edges.size());
        if (is_proper(t.type())) terms.expect(eq_terms(t, t) == EqVerdict::Equal);

        ++decoding.checked;
        DerivILP d = decode(t);
        decoding.expect(check_derivation_il(*d) == t.type() && links_of(code(*d)) == l);

        DerivILP cutty = random_derivation_il(rng, 6, 1 + static_cast<int>(rng.below(3)));
        DerivILP e = eliminate_cuts(cutty);
        ++elim.checked;
        Term before = code(*cutty), after = code(*e);
        elim.expect(is_cut_free(*e) && e->concl == cutty->concl && links_of(before) == links_of(after));
        if (before.size() <= 10) {
            ++elim.attempted;
            if (oracle_equal(before, after, budget).verdict == OracleVerdict::Equal) ++elim.confirmed;
        }

        Term u = random_unit_term(rng, 6);
        ++units.checked;
        LinkSet ul = links_of(u);
        units.expect(ul.edges.empty() && ul.loops == 0);

        Term c = random_central(rng, parse_alpha("p * (I -o I) * q * (q -o p)"), 8);
        ++central.checked;
        Term reduced = balance_decompose(c).cprime;
        central.expect(perm_of(reduced) == perm_by_matching(reduced.src(), reduced.tgt()) &&
                       links_of(balance_decompose(c).recompose()) == links_of(c));
    }
    auto line = [](const char* name, const Tally& t) {
        std::cout << name << ": " << t.checked << " checked, " << t.violations << " violations\n";
    };
    std::cout << "seed " << seed << ", count " << count << ", budget " << budget << "\n";
    line("terms", terms);
    line("decode", decoding);
    line("elimination", elim);
    std::cout << "elimination oracle-confirmed: " << elim.confirmed << " of " << elim.attempted << "\n";
    line("unit terms", units);
    line("central", central);
    std::size_t total = terms.violations + decoding.violations + elim.violations + units.violations +
                        central.violations;
    std::cout << "total violations: " << total << "\n";
    return total == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multiplicative linear logic: calculi, cut elimination, links and term equality"};
    app.require_subcommand(1, 1);
    int status = 0;

    std::string expr, term1, term2, file, output, system = "s", format;
    bool stats = false, with_oracle = false;
    std::uint64_t seed = 1;
    std::size_t count = 100, budget = 20000;

    auto* parse = app.add_subcommand("parse", "Print the normalized alpha-form of a formula or sequent");
    parse->add_option("EXPR", expr, "formula or sequent, - for stdin")->required();
    parse->callback([&] {
        std::string t = trim(arg_text(expr));
        if (t.find("|-") != std::string::npos)
            std::cout << to_string(parse_sequent_il(t)) << "\n";
        else
            std::cout << to_string(parse_alpha(t)) << "\n";
    });

    auto* check = app.add_subcommand("check", "Print the type of a term or the conclusion of a derivation");
    check->add_option("TERM", expr, "term or derivation, - for stdin")->required();
    check->add_option("--system", system, "calculus for derivations")
        ->check(CLI::IsMember({"s", "il"}))
        ->default_str("il");
    check->callback([&] {
        std::string t = arg_text(expr);
        if (!looks_like_derivation(t)) {
            std::cout << to_string(parse_term(t).type()) << "\n";
        } else if (check->count("--system") && system == "s") {
            std::cout << to_string(check_derivation_s(*parse_derivation_s(t))) << "\n";
        } else {
            std::cout << to_string(check_derivation_il(*parse_derivation_il(t))) << "\n";
        }
    });

    auto* derive = app.add_subcommand("derive", "Search for a cut-free derivation");
    derive->add_option("SEQ", expr, "sequent, - for stdin")->required();
    derive->add_option("--system", system, "calculus")->check(CLI::IsMember({"s", "il"}))->capture_default_str();
    derive->callback([&] {
        std::string t = arg_text(expr);
        std::string out;
        if (system == "il") {
            if (auto d = derivable_il(parse_sequent_il(t))) out = to_string(**d);
        } else {
            if (auto d = derivable_s(parse_sequent_s(t))) out = to_string(**d);
        }
        if (out.empty()) {
            std::cout << "not derivable\n";
            status = 1;
        } else {
            std::cout << out << (out.back() == '\n' ? "" : "\n");
        }
    });

    auto write_out = [&](const std::string& text) {
        std::string body = text.empty() || text.back() == '\n' ? text : text + "\n";
        if (output.empty() || output == "-") {
            std::cout << body;
            return;
        }
        std::ofstream out(output);
        if (!out) throw InputError("cannot write " + output);
        out << body;
    };

    auto* elim = app.add_subcommand("elim", "Eliminate cuts from an IL derivation");
    elim->add_option("FILE", file, "derivation file, - for stdin")->required();
    elim->add_option("-o,--output", output, "output file");
    elim->add_flag("--stats", stats, "print the proof cases used to stderr");
    elim->callback([&] {
        ElimStats st;
        DerivILP d = eliminate_cuts(parse_derivation_il(file_text(file)), &st);
        write_out(to_string(*d));
        if (stats) {
            for (std::size_t c = 0; c < kCutCaseCount; ++c)
                if (st.cases[c]) std::cerr << cut_case_name(static_cast<CutCase>(c)) << ": " << st.cases[c] << "\n";
        }
    });

    auto* cln = app.add_subcommand("clean", "Remove trivial interchanges and unit tensor steps");
    cln->add_option("FILE", file, "derivation file, - for stdin")->required();
    cln->add_option("-o,--output", output, "output file");
    cln->callback([&] { write_out(to_string(*clean(parse_derivation_il(file_text(file))))); });

    auto* cde = app.add_subcommand("code", "Print the term coding an IL derivation");
    cde->add_option("FILE", file, "derivation file, - for stdin")->required();
    cde->callback([&] { std::cout << to_string(code(*parse_derivation_il(file_text(file)))) << "\n"; });

    auto* dec = app.add_subcommand("decode", "Print an IL derivation coded by a term");
    dec->add_option("TERM", expr, "term, - for stdin")->required();
    dec->add_option("-o,--output", output, "output file");
    dec->callback([&] { write_out(to_string(*decode(parse_term(arg_text(expr))))); });

    auto* lnk = app.add_subcommand("links", "Print the links of a term");
    lnk->add_option("TERM", expr, "term, - for stdin")->required();
    lnk->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "dot", "tikz"}))
        ->default_str("json");
    lnk->callback([&] {
        std::string s = render(links_of(parse_term(arg_text(expr))), parse_render_format(format.empty() ? "json" : format));
        std::cout << s << (s.empty() || s.back() == '\n' ? "" : "\n");
    });

    auto* eq = app.add_subcommand("eq", "Decide equality of two terms (exit 0 Equal, 1 NotEqual, 2 TypeMismatch, 3 Unsupported)");
    eq->add_option("TERM1", term1, "first term, - for stdin")->required();
    eq->add_option("TERM2", term2, "second term")->required();
    eq->add_flag("--oracle", with_oracle, "cross-check with the rewriting oracle");
    eq->add_option("--budget", budget, "oracle budget")->capture_default_str();
    eq->callback([&] {
        Term f = parse_term(arg_text(term1));
        Term g = parse_term(arg_text(term2));
        EqVerdict v = eq_terms(f, g);
        std::cout << verdict_name(v) << "\n";
        if (with_oracle && f.type() == g.type()) {
            OracleResult r = oracle_equal(f, g, budget);
            std::cout << "oracle: " << (r.verdict == OracleVerdict::Equal ? "Equal" : "Unknown") << " (visited "
                      << r.visited_left + r.visited_right << ")\n";
        }
        status = static_cast<int>(v);
    });

    auto* gen = app.add_subcommand("generalize", "Print a balanced term of which the input is an instance");
    gen->add_option("TERM", expr, "term, - for stdin")->required();
    gen->callback([&] {
        Generalized g = generalize(parse_term(arg_text(expr)));
        std::cout << to_string(g.term) << "\n" << to_string(g.term.type()) << "\n";
        for (const auto& [fresh, orig] : g.subst) std::cout << fresh << " := " << orig << "\n";
    });

    auto* rnd = app.add_subcommand("render", "Draw the link diagram of a term");
    rnd->add_option("TERM", expr, "term, - for stdin")->required();
    rnd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "dot", "tikz"}))
        ->default_str("dot");
    rnd->callback([&] {
        std::string s = render(links_of(parse_term(arg_text(expr))), parse_render_format(format.empty() ? "dot" : format));
        std::cout << s << (s.empty() || s.back() == '\n' ? "" : "\n");
    });

    auto* fz = app.add_subcommand("fuzz", "Check invariants on random terms and derivations");
    fz->add_option("--seed", seed, "random seed")->capture_default_str();
    fz->add_option("--count", count, "cases per invariant")->capture_default_str();
    fz->add_option("--budget", budget, "oracle budget")->capture_default_str();
    fz->callback([&] { status = run_fuzz(seed, count, budget); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error " << e.what() << "\n";
        print_caret(e);
        return kExitData;
    } catch (const TypeError& e) {
        std::cerr << "type error: " << e.what() << "\n";
        return kExitData;
    } catch (const DerivationError& e) {
        std::cerr << "derivation error: " << e.what() << "\n";
        return kExitData;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return kExitData;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSoftware;
    }
    return status;
}
