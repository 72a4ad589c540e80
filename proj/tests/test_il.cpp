#include "doctest.h"
#include "mlc/calculus_il.hpp"
#include "mlc/links.hpp"
#include "mlc/random.hpp"

using namespace mlc;

namespace {

Alpha A(const char* s) { return parse_alpha(s); }

bool oracle_eq(const Term& a, const Term& b, std::size_t budget = 20000) {
    return oracle_equal(a, b, budget).verdict == OracleVerdict::Equal;
}

// Independent scan: no interchange of an empty block, no tensor rule over I |- I.
bool scan_clean(const DerivIL& d) {
    if (d.rule == DerivIL::Rule::Int && (d.params[1] == 0 || d.params[2] == 0)) return false;
    if (d.rule == DerivIL::Rule::TT)
        for (const auto& k : d.kids)
            if (k->concl.ant.is_unit() && k->concl.con.is_unit()) return false;
    for (const auto& k : d.kids)
        if (!scan_clean(*k)) return false;
    return true;
}

}  // namespace

TEST_CASE("IL rule figures") {
    CHECK(to_string(il_ax(A("p * q"))->concl) == "p * q |- p * q");
    CHECK(to_string(il_tt(il_ax(A("p")), il_ax(A("q")))->concl) == "p * q |- p * q");
    CHECK(to_string(il_impr(il_ax(A("p")), 1)->concl) == "I |- p -o p");
    CHECK(to_string(il_int(il_ax(A("p * q * r")), 0, 1, 2)->concl) == "q * r * p |- p * q * r");
    CHECK(to_string(il_impl(il_ax(A("p")), il_ax(A("q")), 1)->concl) == "p * (p -o q) |- q");
    CHECK(to_string(il_cut(il_ax(A("p")), il_ax(A("p * q")), 0)->concl) == "p * q |- p * q");
    CHECK_THROWS_AS(il_cut(il_ax(A("q")), il_ax(A("p")), 0), DerivationError);
    CHECK_THROWS_AS(il_int(il_ax(A("p")), 0, 1, 1), DerivationError);
}

TEST_CASE("IL derivation text round-trips and is checked") {
    DerivILP d = il_impl(il_ax(A("p")), il_int(il_ax(A("q * r")), 0, 1, 1), 1);
    std::string text = to_string(*d);
    DerivILP back = parse_derivation_il(text);
    CHECK(to_string(*back) == text);
    CHECK(check_derivation_il(*back) == d->concl);
    CHECK_THROWS_AS(parse_derivation_il("(ax [p |- q])"), DerivationError);
    CHECK_THROWS_AS(parse_derivation_il("(impr 1 [|- q -o p] (ax [p |- p]))"), DerivationError);
    CHECK_THROWS_AS(parse_derivation_il("(foo [p |- p])"), DerivationError);
}

TEST_CASE("coding clauses") {
    CHECK(to_string(code(*il_ax(A("p")))) == "1[p]");
    Term t = code(*il_impl(il_ax(A("p")), il_ax(A("q")), 1));
    CHECK(to_string(t.type()) == "p * (p -o q) |- q");
    CHECK(oracle_eq(t, parse_term("eps[p,q]")));
    Term r = code(*il_impr(il_ax(A("p * q")), 1));
    CHECK(to_string(r.type()) == "q |- p -o p * q");
    CHECK(oracle_eq(r, parse_term("eta[p,q]")));
}

TEST_CASE("decoding primitive terms") {
    for (const char* s : {"1[p]", "sym[p,q]", "eta[p,q]", "eps[p,q]", "imp[p](eps[q,r])", "sym[p,q] o sym[q,p]",
                          "eps[p,q] * 1[r]", "eps[I,I] o eta[I,I]"}) {
        CAPTURE(std::string(s));
        Term t = parse_term(s);
        DerivILP d = decode(t);
        CHECK(check_derivation_il(*d) == t.type());
        Term c = code(*d);
        CHECK(links_of(c) == links_of(t));
        CHECK(oracle_eq(c, t));
    }
    CHECK(decode(parse_term("1[p]"))->rule == DerivIL::Rule::Ax);
}

TEST_CASE("cut-free proof search") {
    auto d = derivable_il(parse_sequent_il("p * (p -o q) |- q"));
    REQUIRE(d);
    CHECK(is_cut_free(**d));
    CHECK(to_string(check_derivation_il(**d)) == "p * (p -o q) |- q");
    CHECK(!derivable_il(parse_sequent_il("p |- q")));
    CHECK(derivable_il(parse_sequent_il("q * p |- p * q")));
    CHECK(derivable_il(parse_sequent_il("|- I -o I")));
    CHECK(!derivable_il(parse_sequent_il("(p -o I) -o I |- p")));
    CHECK(!derivable_il(parse_sequent_il("p |- I")));
}

TEST_CASE("no I-free formula entails I") {
    Rng rng(11);
    GenOptions opt;
    opt.unit_percent = 0;
    for (int i = 0; i < 60; ++i) {
        Alpha a = random_alpha(rng, 2, opt);
        if (a.is_unit() || !is_i_free(a)) continue;
        CAPTURE(to_string(a));
        CHECK(!derivable_il({a, Alpha{}}));
    }
}

TEST_CASE("cut measure") {
    DerivILP axax = il_cut(il_ax(A("p")), il_ax(A("p")), 0);
    CutMeasure m = cut_measure(*axax, {});
    CHECK(m.degree == 0);
    CHECK(m.rank == 2);
    DerivILP swapped = il_cut(il_ax(A("p")), il_int(il_ax(A("p * q")), 0, 1, 1), 1);
    CHECK(cut_measure(*swapped, {}).rank >= 3);
    DerivILP unit = il_cut(il_ax(Alpha{}), il_impr(il_ax(A("p")), 1), 0);
    CHECK(cut_measure(*unit, {}).right_rank == 1);
    DerivILP imp = il_cut(il_impr(il_ax(A("p")), 1), il_impl(il_ax(A("p")), il_ax(A("p")), 1), 1);
    CutMeasure mi = cut_measure(*imp, {});
    CHECK(mi.degree == 1);
    CHECK(mi.rank == 2);
}

TEST_CASE("cut elimination on small cases") {
    ElimStats st;
    DerivILP axax = eliminate_cuts(il_cut(il_ax(A("p")), il_ax(A("p")), 0), &st);
    CHECK(axax->rule == DerivIL::Rule::Ax);
    CHECK(st.cases[static_cast<std::size_t>(CutCase::Zero)] == 1);

    DerivILP principal = il_cut(il_impr(il_ax(A("p")), 1), il_impl(il_ax(A("p")), il_ax(A("p")), 1), 1);
    ElimStats st2;
    DerivILP e = eliminate_cuts(principal, &st2);
    CHECK(is_cut_free(*e));
    CHECK(e->concl == principal->concl);
    CHECK(st2.cases[static_cast<std::size_t>(CutCase::C1b)] == 1);
    CHECK(oracle_eq(code(*e), code(*principal)));

    DerivILP perm = il_cut(il_impr(il_ax(A("q")), 1), il_int(il_ax(A("r * s * (q -o q)")), 0, 1, 1), 2);
    ElimStats st3;
    DerivILP e3 = eliminate_cuts(perm, &st3);
    CHECK(is_cut_free(*e3));
    CHECK(st3.cases[static_cast<std::size_t>(CutCase::C2e)] == 1);
    CHECK(oracle_eq(code(*e3), code(*perm)));
}

TEST_CASE("property: cut elimination preserves conclusion, links and term") {
    Rng rng(2024);
    ElimStats st;
    int oracle_checked = 0;
    for (int i = 0; i < 300; ++i) {
        DerivILP d = random_derivation_il(rng, 6, 1 + static_cast<int>(rng.below(3)));
        DerivILP e = eliminate_cuts(d, &st);
        CAPTURE(to_string(*d));
        CHECK(check_derivation_il(*e) == d->concl);
        CHECK(is_cut_free(*e));
        Term a = code(*d), b = code(*e);
        CHECK(links_of(a) == links_of(b));
        if (a.size() <= 10) {
            ++oracle_checked;
            CHECK(oracle_eq(a, b));
        }
    }
    CHECK(st.measure_violations == 0);
    CHECK(oracle_checked > 0);
    for (std::size_t c = 0; c < kCutCaseCount; ++c) {
        CAPTURE(cut_case_name(static_cast<CutCase>(c)));
        CHECK(st.cases[c] > 0);
    }
}

TEST_CASE("cleaning") {
    DerivILP red = il_tt(il_ax(Alpha{}), il_ax(A("p")));
    CHECK(!is_clean(*red));
    CHECK(clean(red)->rule == DerivIL::Rule::Ax);
    DerivILP inv = il_int(il_ax(A("p")), 0, 0, 1);
    CHECK(clean(inv)->rule == DerivIL::Rule::Ax);
    DerivILP ok = il_int(il_ax(A("p * q")), 0, 1, 1);
    CHECK(to_string(*clean(ok)) == to_string(*ok));

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        DerivILP d = random_cut_free_il(rng, 5);
        DerivILP c = clean(d);
        CHECK(check_derivation_il(*c) == d->concl);
        CHECK(scan_clean(*c));
        CHECK(is_clean(*c));
        CHECK(to_string(*clean(c)) == to_string(*c));
        CHECK(links_of(code(*c)) == links_of(code(*d)));
    }
}

TEST_CASE("property: decode then code is link-equal, oracle-equal when small") {
    Rng rng(99);
    for (int i = 0; i < 300; ++i) {
        Term t = random_term(rng, 6);
        DerivILP d = decode(t);
        CAPTURE(to_string(t));
        REQUIRE(check_derivation_il(*d) == t.type());
        Term c = code(*d);
        CHECK(links_of(c) == links_of(t));
        if (t.size() <= 6) CHECK(oracle_eq(c, t));
    }
}
