#include <map>

#include "doctest.h"
#include "mlc/calculus_il.hpp"
#include "mlc/calculus_s.hpp"
#include "mlc/random.hpp"

using namespace mlc;

namespace {

Formula F(const char* s) { return parse_formula(s); }
SequentS S(const char* s) { return parse_sequent_s(s); }

std::vector<Formula> seq(std::initializer_list<const char*> xs) {
    std::vector<Formula> r;
    for (const char* x : xs) r.push_back(F(x));
    return r;
}

const char* kCounterexample =
    "(int 0 [(p -o I) -o I, p -o I |- I]\n"
    "  (impl [p -o I, (p -o I) -o I |- I]\n"
    "    (ax [p -o I |- p -o I])\n"
    "    (ax [I |- I])))";

}  // namespace

TEST_CASE("S rule figures and checking") {
    CHECK(to_string(check_derivation_s(*s_ax(F("p")))) == "p |- p");
    CHECK(to_string(check_derivation_s(*s_weak(s_axi()))) == "I |- I");
    CHECK(to_string(s_axi()->concl) == "|- I");
    CHECK(to_string(s_tl(s_tr(s_ax(F("p")), s_ax(F("q"))), 0)->concl) == "p * q |- p * q");
    CHECK(to_string(s_impr(s_ax(F("p")))->concl) == "|- p -o p");
    CHECK(to_string(s_cut(s_ax(F("p")), s_ax(F("p")), 0)->concl) == "p |- p");
    CHECK_THROWS_AS(s_cut(s_ax(F("q")), s_ax(F("p")), 0), DerivationError);
    CHECK_THROWS_AS(s_impr(s_axi()), DerivationError);

    DerivSP d = parse_derivation_s(kCounterexample);
    CHECK(to_string(check_derivation_s(*d)) == "(p -o I) -o I, p -o I |- I");
    CHECK(to_string(*d) == kCounterexample);
    CHECK_THROWS_AS(parse_derivation_s("(ax [p |- q])"), DerivationError);
    CHECK_THROWS_AS(parse_derivation_s("(weak [p |- p] (ax [p |- p]))"), DerivationError);
}

TEST_CASE("S proof search") {
    CHECK(derivable_s(S("|- I")));
    CHECK(derivable_s(S("I -o I, I * I |- (I -o I) * I")));
    CHECK(!derivable_s(S("(p -o I) -o I |- p")));
    CHECK(!derivable_s(S("p |- q")));
    CHECK(derivable_s(S("(p -o I) -o I, p -o I |- I")));
    auto d = derivable_s(S("q, p -o q -o r, p |- r"));
    REQUIRE(d);
    CHECK(is_cut_free(**d));
    CHECK(to_string(check_derivation_s(**d)) == "q, p -o q -o r, p |- r");
}

TEST_CASE("constant formulae are interderivable with I") {
    for (const char* a : {"I", "I * I", "I -o I", "(I -o I) -o I * I"}) {
        CAPTURE(std::string(a));
        auto [to, from] = const_iso_s(F(a));
        CHECK(check_derivation_s(*to) == SequentS{{F(a)}, F("I")});
        CHECK(check_derivation_s(*from) == SequentS{{F("I")}, F(a)});
    }
    auto [to, from] = const_iso_s(F("I"));
    CHECK(node_count(*to) == 1);
    CHECK(node_count(*from) == 1);
    CHECK_THROWS_AS(const_iso_s(F("p -o p")), PreconditionError);
    CHECK(check_derivation_s(*const_const_s(seq({"I -o I", "I"}), F("I * (I -o I)"))) ==
          S("I -o I, I |- I * (I -o I)"));
}

TEST_CASE("constant consequent forces a constant proper antecedent") {
    ConstProperTrace base = check_const_proper(*s_axi());
    CHECK(base.constant);
    CHECK(base.steps == std::vector<std::string>{"base at root"});

    DerivSP d = s_impl(s_axi(), s_ax(F("I")));  // I -o I |- I
    ConstProperTrace t = check_const_proper(*d);
    CHECK(t.constant);
    REQUIRE(!t.steps.empty());
    CHECK(t.steps[0] == "case 4 at root");

    DerivSP bad = s_impl(s_ax(F("p")), s_ax(F("I")));  // p, p -o I |- I
    CHECK(to_string(bad->concl) == "p, p -o I |- I");
    CHECK_THROWS_AS(check_const_proper(*bad), PreconditionError);
}

TEST_CASE("property: constant consequent lemma on all small derivable sequents") {
    std::vector<Formula> pool = seq({"I", "p", "p -o p", "I -o I", "I -o p", "(p -o p) -o I", "p * (I -o I)", "I * I"});
    std::vector<Formula> cons = seq({"I", "I -o I", "I * (I -o I)"});
    int derivable = 0;
    for (std::size_t i = 0; i <= pool.size(); ++i)
        for (std::size_t j = i; j <= pool.size(); ++j)
            for (const auto& c : cons) {
                std::vector<Formula> ant;
                if (i < pool.size()) ant.push_back(pool[i]);
                if (j < pool.size()) ant.push_back(pool[j]);
                SequentS s{ant, c};
                if (!is_proper(s)) continue;
                auto d = derivable_s(s);
                if (!d) continue;
                ++derivable;
                CAPTURE(to_string(s));
                ConstProperTrace t = check_const_proper(**d);
                CHECK(t.constant);
            }
    CHECK(derivable > 10);
}

TEST_CASE("property: S and IL derivability agree through the translation") {
    Rng rng(17);
    GenOptions opt;
    opt.max_factors = 2;
    int yes = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<Formula> ant;
        std::size_t n = rng.below(3);
        for (std::size_t k = 0; k < n; ++k) ant.push_back(random_formula(rng, 2, opt));
        SequentS s{ant, random_formula(rng, 2, opt)};
        CAPTURE(to_string(s));
        bool in_s = derivable_s(s).has_value();
        bool in_il = derivable_il({alpha_of(s.ant), alpha_normalize(s.con)}).has_value();
        CHECK(in_s == in_il);
        yes += in_s;
    }
    for (int i = 0; i < 100; ++i) {
        SequentS s = random_derivable_s(rng, 3);
        CAPTURE(to_string(s));
        CHECK(derivable_s(s));
        CHECK(derivable_il({alpha_of(s.ant), alpha_normalize(s.con)}));
    }
    CHECK(yes > 0);
}

TEST_CASE("weak splitting") {
    auto [unit, main] = split_weak(s_ax(F("p")), seq({"p"}), {});
    CHECK(to_string(unit->concl) == "|- I");
    CHECK(to_string(main->concl) == "p |- p");

    auto d = derivable_s(S("p, I -o I, p -o q |- q"));
    REQUIRE(d);
    SplitPair r = split_weak(*d, seq({"p", "p -o q"}), seq({"I -o I"}));
    CHECK(check_derivation_s(*r.first) == S("I -o I |- I"));
    CHECK(check_derivation_s(*r.second) == S("p, p -o q |- q"));

    // tensor on the right with the discarded part spread over both premises
    DerivSP both = s_tr(s_impl(s_axi(), s_weak(s_ax(F("p")))), s_weak(s_ax(F("q"))));  // I -o I, p, I, q |- p * q
    std::map<std::string, std::size_t> cases;
    SplitPair rb = split_weak(both, seq({"p", "q"}), seq({"I -o I", "I"}), &cases);
    CHECK(check_derivation_s(*rb.first) == S("I -o I, I |- I"));
    CHECK(check_derivation_s(*rb.second) == S("p, q |- p * q"));
    CHECK(cases["weak: case 4"] == 1);

    CHECK_THROWS_AS(split_weak(*d, seq({"p -o q", "I -o I"}), seq({"p"})), PreconditionError);
    CHECK_THROWS_AS(split_weak(s_cut(s_ax(F("p")), s_ax(F("p")), 0), seq({"p"}), {}), PreconditionError);
}

TEST_CASE("tensor splitting") {
    DerivSP d = s_tr(s_ax(F("p")), s_ax(F("q")));
    SplitPair r = split_tensor(d, seq({"p"}), seq({"q"}));
    CHECK(to_string(r.first->concl) == "p |- p");
    CHECK(to_string(r.second->concl) == "q |- q");

    auto inter = derivable_s(S("r, p, r -o s, p -o q |- q * s"));
    REQUIRE(inter);
    SplitPair ri = split_tensor(*inter, seq({"p", "p -o q"}), seq({"r", "r -o s"}));
    CHECK(check_derivation_s(*ri.first) == S("p, p -o q |- q"));
    CHECK(check_derivation_s(*ri.second) == S("r, r -o s |- s"));

    SplitPair ru = split_tensor(*derivable_s(S("|- I * I")), {}, {});
    CHECK(check_derivation_s(*ru.first) == S("|- I"));
    CHECK(check_derivation_s(*ru.second) == S("|- I"));

    std::map<std::string, std::size_t> cases;
    SplitPair ra = split_tensor(s_ax(F("p * I")), seq({"p * I"}), {}, &cases);
    CHECK(check_derivation_s(*ra.first) == S("p * I |- p"));
    CHECK(check_derivation_s(*ra.second) == S("|- I"));
    CHECK(cases["tensor: axiom"] == 1);

    // implication on the left at the root, principal on either side
    DerivSP g_side = s_impl(s_ax(F("p")), s_tr(s_ax(F("q")), s_ax(F("r"))));  // p, p -o q, r |- q * r
    SplitPair rg = split_tensor(g_side, seq({"p", "p -o q"}), seq({"r"}), &cases);
    CHECK(check_derivation_s(*rg.first) == S("p, p -o q |- q"));
    CHECK(check_derivation_s(*rg.second) == S("r |- r"));
    DerivSP d_side = s_impl(s_ax(F("r")), s_int(s_tr(s_ax(F("p")), s_ax(F("s"))), 0));  // r, r -o s, p |- p * s
    SplitPair rd = split_tensor(d_side, seq({"p"}), seq({"r", "r -o s"}), &cases);
    CHECK(check_derivation_s(*rd.first) == S("p |- p"));
    CHECK(check_derivation_s(*rd.second) == S("r, r -o s |- s"));
    CHECK(cases["tensor: case 2"] == 2);

    CHECK_THROWS_AS(split_tensor(d, seq({"q"}), seq({"p"})), PreconditionError);
}

TEST_CASE("implication splitting") {
    DerivSP ax_shape = s_impl(s_ax(F("p")), s_ax(F("q")));  // p, p -o q |- q
    SplitPair r = split_imp(ax_shape, seq({"p"}), F("p"), F("q"), {});
    CHECK(to_string(r.first->concl) == "p |- p");
    CHECK(to_string(r.second->concl) == "q |- q");

    std::map<std::string, std::size_t> cases;
    SplitPair ra = split_imp(s_ax(F("I -o p")), {}, F("I"), F("p"), {}, &cases);
    CHECK(check_derivation_s(*ra.first) == S("|- I"));
    CHECK(check_derivation_s(*ra.second) == S("p |- I -o p"));

    // the rule's implication is in G and A -o B sits in its left premise
    DerivSP c23 = s_impl(s_ax(F("I -o I")), s_weak(s_ax(F("p"))));  // I -o I, (I -o I) -o I, p |- p
    CHECK(to_string(c23->concl) == "I -o I, (I -o I) -o I, p |- p");
    SplitPair r23 = split_imp(c23, seq({"(I -o I) -o I"}), F("I"), F("I"), seq({"p"}), &cases);
    CHECK(check_derivation_s(*r23.first) == S("(I -o I) -o I |- I"));
    CHECK(check_derivation_s(*r23.second) == S("I, p |- p"));
    CHECK(cases["imp: case 2.3"] == 1);

    auto w = derivable_s(S("I, p, p -o q, r |- q * r"));
    REQUIRE(w);
    SplitPair rw = split_imp(*w, seq({"I", "p"}), F("p"), F("q"), seq({"r"}));
    CHECK(check_derivation_s(*rw.first) == S("I, p |- p"));
    CHECK(check_derivation_s(*rw.second) == S("q, r |- q * r"));

    DerivSP bad = parse_derivation_s(kCounterexample);
    CHECK_THROWS_AS(split_imp(bad, seq({"(p -o I) -o I"}), F("p"), F("I"), {}), PreconditionError);
    CHECK_THROWS_AS(split_imp(ax_shape, seq({"p"}), F("p"), F("q"), seq({"q"})), PreconditionError);
}

TEST_CASE("property: splitter outputs check on random instances") {
    Rng rng(7);
    for (int i = 0; i < 60; ++i) {
        SplitInstance w = random_weak_instance(rng);
        SplitPair rw = split_weak(w.d, w.g, w.delta);
        CHECK(check_derivation_s(*rw.first) == SequentS{w.delta, Formula::unit()});
        CHECK(check_derivation_s(*rw.second) == SequentS{w.g, w.d->concl.con});

        SplitInstance t = random_tensor_instance(rng);
        SplitPair rt = split_tensor(t.d, t.g, t.delta);
        CHECK(check_derivation_s(*rt.first) == SequentS{t.g, t.a});
        CHECK(check_derivation_s(*rt.second) == SequentS{t.delta, t.b});

        SplitInstance m = random_imp_instance(rng);
        SplitPair rm = split_imp(m.d, m.g, m.a, m.b, m.delta);
        std::vector<Formula> bd = m.delta;
        bd.insert(bd.begin(), m.b);
        CHECK(check_derivation_s(*rm.first) == SequentS{m.g, m.a});
        CHECK(check_derivation_s(*rm.second) == SequentS{bd, m.d->concl.con});
    }
}
