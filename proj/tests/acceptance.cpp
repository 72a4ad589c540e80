// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>

#include "mlc/mlc.hpp"

using namespace mlc;

namespace {

// Pinned limits.
constexpr double kC1Seconds = 1.0;
constexpr double kC2Seconds = 600.0;
constexpr std::size_t kC2Weight = 8;
constexpr std::size_t kC2Budget = 200000;
constexpr std::size_t kC3Count = 1000;
constexpr int kC3Height = 6;
constexpr std::size_t kC3OracleSize = 10;
constexpr std::size_t kC3Budget = 200000;
constexpr double kC3Seconds = 300.0;
constexpr std::size_t kC4MaxDegree = 6;
constexpr double kC4Seconds = 10.0;
constexpr std::size_t kC5Count = 10000;
constexpr std::size_t kC6Connectives = 3;
constexpr double kC6Seconds = 30.0;
constexpr std::size_t kC7Count = 200;
constexpr double kC8Seconds = 60.0;
constexpr std::size_t kC8Budget = 200000;
constexpr std::size_t kC9Count = 500;
constexpr std::size_t kC9OracleSize = 10;
constexpr std::size_t kC9Budget = 200000;

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Alpha al(const char* s) { return parse_alpha(s); }

using Edges = std::set<std::pair<std::string, std::string>>;
Edges edge_text(const LinkSet& l) {
    Edges r;
    for (const auto& [x, y] : l.edges) r.emplace(x.str(), y.str());
    return r;
}

// ---------- 1 ----------

Outcome c1() {
    auto t0 = Clock::now();
    Term f = parse_term(
        "imp[p]((eps[p,q] * 1[p]) o (1[p] * sym[p,p -o q]) o (sym[p,p] * 1[p -o q])) o eta[p,p * (p -o q)]");
    Term g = parse_term("imp[p](eps[p,q] * 1[p]) o eta[p,(p -o q) * p] o sym[p,p -o q]");
    SequentIL want = parse_sequent_il("p * (p -o q) |- p -o q * p");
    // occurrences: ant.1 = p, ant.2.d.1 = p, ant.2.c.1 = q, con.1.d.1 = p, con.1.c.1 = q, con.1.c.2 = p
    Edges ef{{"ant.1", "ant.2.d.1"}, {"con.1.d.1", "con.1.c.2"}, {"ant.2.c.1", "con.1.c.1"}};
    Edges eg{{"ant.1", "con.1.c.2"}, {"ant.2.d.1", "con.1.d.1"}, {"ant.2.c.1", "con.1.c.1"}};
    LinkSet lf = links_of(f), lg = links_of(g);
    EqVerdict v = eq_terms(f, g);
    double secs = seconds_since(t0);
    bool ok = f.type() == want && g.type() == want && edge_text(lf) == ef && edge_text(lg) == eg && lf.loops == 0 &&
              lg.loops == 0 && v == EqVerdict::NotEqual && secs < kC1Seconds;
    std::ostringstream os;
    os << "f " << to_json(lf) << "; g " << to_json(lg) << "; eq_terms " << verdict_name(v) << "; " << secs << " s";
    return {ok, os.str()};
}

// ---------- 2 ----------

constexpr std::size_t kC2Factors = 3;
constexpr std::size_t kC2NotEqualSample = 8;

bool narrow(const Alpha& a) {
    if (a.size() > kC2Factors) return false;
    for (const auto& p : a.factors)
        if (!p.is_letter() && (!narrow(*p.dom) || !narrow(*p.cod))) return false;
    return true;
}

// Term constructors plus letters in index formulae.
std::size_t weight(const Term& t) {
    std::vector<std::string> leaves;
    collect_index_leaves(t, leaves);
    return t.size() + leaves.size();
}

// Every term of weight <= max_weight whose indices and types use alpha-formulae of at most
// kC2Factors prime factors over {p, q}, one representative per diagram key.
std::vector<Term> enumerate_terms(std::size_t max_weight) {
    std::vector<Alpha> pool{Alpha()}, layer{Alpha()};
    for (std::size_t k = 1; k <= kC2Factors; ++k) {
        std::vector<Alpha> next;
        for (const auto& a : layer)
            for (const char* l : {"p", "q"}) {
                Alpha b = a;
                b.factors.push_back(Prime::letter(l));
                next.push_back(b);
            }
        pool.insert(pool.end(), next.begin(), next.end());
        layer = next;
    }
    std::vector<std::vector<Term>> by(max_weight + 1);
    std::set<std::string> seen;
    auto add = [&](const Term& t) {
        if (!narrow(t.src()) || !narrow(t.tgt())) return;
        std::size_t w = weight(t);
        if (w <= max_weight && seen.insert(diagram_key(t)).second) by[w].push_back(t);
    };
    for (const auto& a : pool) {
        add(Term::id(a));
        for (const auto& b : pool) {
            add(Term::sym(a, b));
            add(Term::eta(a, b));
            add(Term::eps(a, b));
        }
    }
    for (std::size_t n = 2; n <= max_weight; ++n) {
        for (const auto& a : pool)
            for (std::size_t s = 1; s < n; ++s)
                for (const auto& t : by[s]) add(Term::imp(a, t));
        for (std::size_t s1 = 1; s1 < n; ++s1)
            for (std::size_t s2 = 1; s1 + s2 < n; ++s2)
                for (const auto& x : by[s1])
                    for (const auto& y : by[s2]) {
                        if (y.tgt() == x.src()) add(Term::comp(x, y));
                        if (x.kind() != Term::Kind::Tensor) add(smart_tensor(x, y));
                    }
    }
    std::vector<Term> all;
    for (const auto& v : by) all.insert(all.end(), v.begin(), v.end());
    return all;
}

struct UnionFind {
    std::vector<std::size_t> up;
    explicit UnionFind(std::size_t n) : up(n) {
        for (std::size_t i = 0; i < n; ++i) up[i] = i;
    }
    std::size_t find(std::size_t x) { return up[x] == x ? x : up[x] = find(up[x]); }
    void join(std::size_t a, std::size_t b) { up[find(a)] = find(b); }
};

Outcome c2() {
    auto t0 = Clock::now();
    std::vector<Term> terms = enumerate_terms(kC2Weight);
    std::map<std::string, std::vector<Term>> groups;
    for (const auto& t : terms)
        if (is_proper(t.type())) groups[to_string(t.type())].push_back(t);

    std::size_t multi = 0, pairs = 0, equal_pairs = 0, unequal_pairs = 0, inconsistent = 0;
    std::size_t calls = 0, undecided = 0, disjoint = 0, disagreements = 0;
    struct Candidate {
        Term a, b;
    };
    std::vector<Candidate> unequal_classes;
    for (const auto& [type, v] : groups) {
        if (v.size() < 2) continue;
        ++multi;
        std::vector<std::string> link_key;
        std::map<std::string, std::vector<std::size_t>> classes;
        std::map<std::string, std::size_t> by_key;
        for (std::size_t i = 0; i < v.size(); ++i) {
            link_key.push_back(to_json(links_of(v[i])));
            classes[link_key[i]].push_back(i);
            by_key[diagram_key(v[i])] = i;
        }
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                ++pairs;
                EqVerdict e = eq_terms(v[i], v[j]);
                bool same = link_key[i] == link_key[j];
                if (e == EqVerdict::Equal) ++equal_pairs;
                if (e == EqVerdict::NotEqual) ++unequal_pairs;
                if ((e == EqVerdict::Equal) != same) ++inconsistent;
            }
        UnionFind uf(v.size());
        // one oracle step away
        for (std::size_t i = 0; i < v.size(); ++i)
            for (const auto& k : oracle_neighbor_keys(v[i])) {
                auto it = by_key.find(k);
                if (it == by_key.end()) continue;
                if (link_key[it->second] != link_key[i]) ++disagreements;
                uf.join(i, it->second);
            }
        for (const auto& [lk, members] : classes) {
            for (std::size_t m = 1; m < members.size(); ++m) {
                if (uf.find(members[m]) == uf.find(members[0])) continue;
                ++calls;
                OracleResult r = oracle_equal(v[members[0]], v[members[m]], kC2Budget);
                if (r.verdict == OracleVerdict::Equal)
                    uf.join(members[0], members[m]);
                else if (r.exhausted_left || r.exhausted_right)
                    ++disjoint;
                else
                    ++undecided;
            }
        }
        for (auto a = classes.begin(); a != classes.end(); ++a)
            for (auto b = std::next(a); b != classes.end(); ++b)
                unequal_classes.push_back({v[a->second[0]], v[b->second[0]]});
    }
    std::size_t sampled = 0;
    if (!unequal_classes.empty()) {
        std::size_t step = std::max<std::size_t>(1, unequal_classes.size() / kC2NotEqualSample);
        for (std::size_t i = 0; i < unequal_classes.size() && sampled < kC2NotEqualSample; i += step, ++sampled)
            if (oracle_equal(unequal_classes[i].a, unequal_classes[i].b, kC2Budget).verdict == OracleVerdict::Equal)
                ++disagreements;
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << terms.size() << " terms of weight <= " << kC2Weight << ", " << multi << " proper types with several terms, "
       << pairs << " same-type pairs (" << equal_pairs << " Equal, " << unequal_pairs << " NotEqual); Equal side: "
       << calls << " oracle calls, " << undecided << " undecided, " << disjoint << " disjoint; NotEqual side: "
       << sampled << " of " << unequal_classes.size() << " link-class pairs sampled; " << disagreements
       << " disagreements, " << inconsistent << " verdicts inconsistent with links; " << secs << " s";
    return {disagreements == 0 && disjoint == 0 && inconsistent == 0 && secs < kC2Seconds, os.str()};
}

// ---------- 3 ----------

Outcome c3() {
    auto t0 = Clock::now();
    Rng rng(3001);
    std::size_t bad = 0, attempted = 0, confirmed = 0, cuts = 0;
    ElimStats st;
    for (std::size_t i = 0; i < kC3Count; ++i) {
        DerivILP d = random_derivation_il(rng, kC3Height, 1 + static_cast<int>(rng.below(3)));
        cuts += cut_count(*d);
        DerivILP e = eliminate_cuts(d, &st);
        Term before = code(*d), after = code(*e);
        if (!is_cut_free(*e) || check_derivation_il(*e) != d->concl || links_of(before) != links_of(after)) ++bad;
        if (before.size() <= kC3OracleSize) {
            ++attempted;
            if (oracle_equal(before, after, kC3Budget).verdict == OracleVerdict::Equal) ++confirmed;
        }
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << kC3Count << " derivations (" << cuts << " cuts), " << bad << " failures; oracle confirmed " << confirmed
       << " of " << attempted << " with code size <= " << kC3OracleSize << "; measure violations "
       << st.measure_violations << "; " << secs << " s";
    return {bad == 0 && confirmed == attempted && attempted > 0 && secs < kC3Seconds, os.str()};
}

// ---------- 4 ----------

Outcome c4() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream os;
    std::size_t expected = 1;
    for (std::size_t m = 1; m <= kC4MaxDegree; ++m) {
        expected *= m;
        std::set<PermNormalForm> forms;
        for (const auto& p : all_perms(m)) {
            PermNormalForm nf = perm_normal_form(p);
            if (perm_of_normal_form(nf, m) != p) ok = false;
            forms.insert(nf);
        }
        if (forms.size() != expected) ok = false;
        os << (m > 1 ? ", " : "") << "S" << m << ": " << forms.size();
    }
    double secs = seconds_since(t0);
    os << "; " << secs << " s";
    return {ok && secs < kC4Seconds, os.str()};
}

// ---------- 5 ----------

Outcome c5() {
    Rng rng(5005);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < kC5Count; ++i) {
        Term t = random_term(rng, 1 + static_cast<int>(rng.below(10)));
        std::map<std::string, int> n;
        for (const auto& o : signed_occurrences(t.type())) ++n[o.letter];
        for (const auto& [letter, k] : n)
            if (k % 2) {
                ++bad;
                break;
            }
    }
    return {bad == 0, std::to_string(kC5Count) + " terms, " + std::to_string(bad) + " violations"};
}

// ---------- 6 ----------

std::vector<Formula> i_free_formulas(std::size_t connectives) {
    std::vector<std::vector<Formula>> by(connectives + 1);
    by[0] = {Formula::letter("p"), Formula::letter("q")};
    for (std::size_t n = 1; n <= connectives; ++n)
        for (std::size_t l = 0; l < n; ++l)
            for (const auto& a : by[l])
                for (const auto& b : by[n - 1 - l]) {
                    by[n].push_back(Formula::tensor(a, b));
                    by[n].push_back(Formula::imp(a, b));
                }
    std::vector<Formula> all;
    for (const auto& v : by) all.insert(all.end(), v.begin(), v.end());
    return all;
}

Outcome c6() {
    auto t0 = Clock::now();
    std::set<Alpha> seen;
    std::size_t derivable = 0;
    for (const auto& f : i_free_formulas(kC6Connectives)) {
        Alpha a = alpha_normalize(f);
        if (!is_i_free(a) || !seen.insert(a).second) continue;
        if (derivable_il({a, Alpha()}) || derivable_s({{f}, Formula::unit()})) ++derivable;
    }
    bool dn = derivable_s(parse_sequent_s("(p -o I) -o I |- p")).has_value() ||
              derivable_il(parse_sequent_il("(p -o I) -o I |- p")).has_value();
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << seen.size() << " I-free alpha-formulae, " << derivable << " derive I; (p -o I) -o I |- p "
       << (dn ? "derivable" : "not derivable") << "; " << secs << " s";
    return {derivable == 0 && !dn && secs < kC6Seconds, os.str()};
}

// ---------- 7 ----------

Outcome c7() {
    Rng rng(7007);
    std::size_t bad = 0, done = 0;
    std::map<std::string, std::size_t> cases;
    for (std::size_t i = 0; i < kC7Count; ++i) {
        try {
            switch (i % 3) {
                case 0: {
                    SplitInstance w = random_weak_instance(rng);
                    SplitPair r = split_weak(w.d, w.g, w.delta, &cases);
                    if (check_derivation_s(*r.first) != SequentS{w.delta, Formula::unit()} ||
                        check_derivation_s(*r.second) != SequentS{w.g, w.d->concl.con})
                        ++bad;
                    break;
                }
                case 1: {
                    SplitInstance t = random_tensor_instance(rng);
                    SplitPair r = split_tensor(t.d, t.g, t.delta, &cases);
                    if (check_derivation_s(*r.first) != SequentS{t.g, t.a} ||
                        check_derivation_s(*r.second) != SequentS{t.delta, t.b})
                        ++bad;
                    break;
                }
                default: {
                    SplitInstance m = random_imp_instance(rng);
                    SplitPair r = split_imp(m.d, m.g, m.a, m.b, m.delta, &cases);
                    std::vector<Formula> bd = m.delta;
                    bd.insert(bd.begin(), m.b);
                    if (check_derivation_s(*r.first) != SequentS{m.g, m.a} ||
                        check_derivation_s(*r.second) != SequentS{bd, m.d->concl.con})
                        ++bad;
                }
            }
            ++done;
        } catch (const std::exception& e) {
            ++bad;
            std::cerr << "  splitter instance " << i << ": " << e.what() << "\n";
        }
    }
    DerivSP counter = parse_derivation_s(
        "(int 0 [(p -o I) -o I, p -o I |- I]"
        " (impl [p -o I, (p -o I) -o I |- I] (ax [p -o I |- p -o I]) (ax [I |- I])))");
    bool rejected = false;
    try {
        split_imp(counter, {parse_formula("(p -o I) -o I")}, parse_formula("p"), Formula::unit(), {});
    } catch (const PreconditionError&) {
        rejected = true;
    }
    std::ostringstream os;
    os << done << " instances, " << bad << " failures, " << cases.size() << " proof cases visited; counterexample "
       << (rejected ? "rejected" : "accepted");
    return {bad == 0 && done == kC7Count && rejected, os.str()};
}

// ---------- 8 ----------

Outcome c8() {
    auto t0 = Clock::now();
    Alpha p = al("p"), q = al("q"), r = al("r");
    Alpha pq = al("p * q");
    auto id = [](const Alpha& a) { return Term::id(a); };
    auto tn = [](const Term& a, const Term& b) { return smart_tensor(a, b); };
    auto cp = [](const Term& a, const Term& b) { return Term::comp(a, b); };
    Term eta_pq = Term::eta(p, q), eps_pq = Term::eps(p, q);
    Term swap_pq = Term::sym(p, q), swap_qr = Term::sym(q, r), swap_rq = Term::sym(r, q);
    Term g_imp = Term::imp(p, Term::sym(p, q)), h_imp = Term::imp(p, Term::sym(q, p));
    Term eps_rq = Term::eps(r, q);

    std::vector<std::tuple<std::string, Term, Term>> eqs{
        {"(1) right unit", cp(eps_pq, id(eps_pq.src())), eps_pq},
        {"(1) left unit", cp(id(eta_pq.tgt()), eta_pq), eta_pq},
        {"(2)", cp(h_imp, cp(g_imp, eta_pq)), cp(cp(h_imp, g_imp), eta_pq)},
        {"(3)", Term::tensor({id(p), id(q)}), id(pq)},
        {"(4)", cp(tn(g_imp, swap_rq), tn(eta_pq, swap_qr)), tn(cp(g_imp, eta_pq), cp(swap_rq, swap_qr))},
        {"(5)", cp(Term::sym(eta_pq.tgt(), eps_rq.tgt()), tn(eta_pq, eps_rq)),
         cp(tn(eps_rq, eta_pq), Term::sym(eta_pq.src(), eps_rq.src()))},
        {"(6)", cp(Term::sym(q, p), swap_pq), id(pq)},
        {"(7)", Term::sym(pq, r), cp(tn(Term::sym(p, r), id(q)), tn(id(p), swap_qr))},
        {"(8)", Term::imp(p, cp(swap_rq, swap_qr)), cp(Term::imp(p, swap_rq), Term::imp(p, swap_qr))},
        {"(9)", cp(Term::eta(p, al("r * q")), swap_qr), cp(Term::imp(p, tn(id(p), swap_qr)), Term::eta(p, al("q * r")))},
        {"(10)", Term::imp(p, id(q)), id(Alpha::imp(p, q))},
        {"(11)", cp(Term::eps(p, al("r * q")), tn(id(p), Term::imp(p, swap_qr))), cp(swap_qr, Term::eps(p, al("q * r")))},
        {"(12)", cp(Term::eps(p, pq), tn(id(p), eta_pq)), id(pq)},
        {"(13)", cp(Term::imp(p, eps_pq), Term::eta(p, Alpha::imp(p, q))), id(Alpha::imp(p, q))},
        {"unit symmetry left", Term::sym(Alpha(), p), id(p)},
        {"unit symmetry right", Term::sym(p, Alpha()), id(p)},
        {"Yang-Baxter",
         cp(tn(Term::sym(q, r), id(p)), cp(tn(id(q), Term::sym(p, r)), tn(swap_pq, id(r)))),
         cp(tn(id(r), swap_pq), cp(tn(Term::sym(p, r), id(q)), tn(id(p), swap_qr)))},
    };
    std::size_t bad = 0;
    for (const auto& [name, lhs, rhs] : eqs) {
        if (lhs.type() != rhs.type() || links_of(lhs) != links_of(rhs)) {
            ++bad;
            std::cerr << "  equality " << name << " differs\n";
        }
    }
    std::size_t oracle_bad = 0;
    for (const char* s : {"I", "p", "p * q"}) {
        Alpha a = al(s);
        auto [e, h] = eta_eps_I_inverse(a);
        if (oracle_equal(cp(e, h), id(a), kC8Budget).verdict != OracleVerdict::Equal) ++oracle_bad;
        if (oracle_equal(cp(h, e), id(Alpha::imp(Alpha(), a)), kC8Budget).verdict != OracleVerdict::Equal) ++oracle_bad;
    }
    double secs = seconds_since(t0);
    std::ostringstream os;
    os << eqs.size() << " equalities, " << bad << " link mismatches; unit eta/eps composites: " << oracle_bad
       << " not confirmed; " << secs << " s";
    return {bad == 0 && oracle_bad == 0 && secs < kC8Seconds, os.str()};
}

// ---------- 9 ----------

Outcome c9() {
    Rng rng(9009);
    std::size_t bad = 0, attempted = 0, confirmed = 0;
    Term one = Term::id(Alpha());
    for (std::size_t i = 0; i < kC9Count; ++i) {
        Term t = random_unit_term(rng, 1 + static_cast<int>(rng.below(8)));
        LinkSet l = links_of(t);
        if (!t.type().ant.is_unit() || !t.type().con.is_unit() || !l.edges.empty() || l.loops != 0) ++bad;
        if (t.size() <= kC9OracleSize) {
            ++attempted;
            if (oracle_equal(t, one, kC9Budget).verdict == OracleVerdict::Equal) ++confirmed;
        }
    }
    std::ostringstream os;
    os << kC9Count << " terms of type I |- I, " << bad << " with edges or loops; oracle confirmed " << confirmed
       << " of " << attempted << " with size <= " << kC9OracleSize;
    return {bad == 0 && confirmed == attempted && attempted > 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    std::vector<std::pair<int, std::function<Outcome()>>> all{{1, c1}, {2, c2}, {3, c3}, {4, c4}, {5, c5},
                                                              {6, c6}, {7, c7}, {8, c8}, {9, c9}};
    bool ok = true;
    for (const auto& [n, run] : all) {
        if (!only.empty() && !only.count(n)) continue;
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
