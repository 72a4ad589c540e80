#include <set>

#include "doctest.h"
#include "mlc/central.hpp"
#include "mlc/links.hpp"
#include "mlc/random.hpp"

using namespace mlc;

namespace {

Alpha A(const char* s) { return parse_alpha(s); }

bool oracle_eq(const Term& a, const Term& b) {
    return oracle_equal(a, b, 20000).verdict == OracleVerdict::Equal;
}

// Independent wire tracing: push every source factor through the term structurally.
std::vector<int> trace(const Term& t, std::vector<int> wires) {
    switch (t.kind()) {
        case Term::Kind::Id: return wires;
        case Term::Kind::Sym: {
            std::size_t m = t.a().size();
            std::vector<int> out(wires.begin() + m, wires.end());
            out.insert(out.end(), wires.begin(), wires.begin() + m);
            return out;
        }
        case Term::Kind::Comp: return trace(t.after(), trace(t.before(), wires));
        case Term::Kind::Tensor: {
            std::vector<int> out;
            std::size_t at = 0;
            for (const auto& k : t.kids()) {
                std::size_t n = k.src().size();
                auto part = trace(k, std::vector<int>(wires.begin() + at, wires.begin() + at + n));
                out.insert(out.end(), part.begin(), part.end());
                at += n;
            }
            return out;
        }
        default: throw std::logic_error("not central");
    }
}

Perm traced_perm(const Term& c) {
    std::size_t m = c.src().size();
    std::vector<int> w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = static_cast<int>(i) + 1;
    std::vector<int> at = trace(c, w);
    Perm p;
    p.images.resize(m);
    for (std::size_t t = 0; t < m; ++t) p.images[at[t] - 1] = static_cast<int>(t) + 1;
    return p;
}

int factorial(int m) { return m <= 1 ? 1 : m * factorial(m - 1); }

}  // namespace

TEST_CASE("permutation basics and text") {
    Perm p = parse_perm("[2 1 3]");
    CHECK(to_string(p) == "[2 1 3]");
    CHECK(compose(p, p) == identity_perm(3));
    CHECK(compose(inverse(p), p) == identity_perm(3));
    CHECK(adjacent_transposition(3, 1) == p);
    CHECK(to_string(identity_perm(0)) == "[]");
    CHECK_THROWS_AS(parse_perm("[1 1]"), ParseError);
    CHECK_THROWS_AS(parse_perm("2 1"), ParseError);
    CHECK(to_string(PermNormalForm{{{2, 1}, {3, 3}}}) == "s[2,1] s[3,3]");
}

TEST_CASE("develop") {
    CHECK(develop(Term::id(A("p * q"))).empty());
    auto two = develop(Term::sym(A("p * q"), A("r")));
    REQUIRE(two.size() == 2);
    CHECK(two[0].pos == 2);
    CHECK(two[1].pos == 1);
    CHECK(to_string(two[0].term) == "1[p] * sym[q,r]");
    CHECK(develop(smart_tensor(Term::sym(A("p"), A("q")), Term::id(A("r")))).size() == 1);
    CHECK(develop(Term::sym(Alpha(), A("p * q"))).empty());
    CHECK_THROWS_AS(develop(Term::eta(A("p"), A("q"))), PreconditionError);

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        Term c = random_central(rng, A("p * q * (q -o p) * r"), 8);
        auto layers = develop(c);
        Term d = compose_layers(layers, c.src());
        CAPTURE(to_string(c));
        CHECK(d.type() == c.type());
        CHECK(links_of(d) == links_of(c));
        for (const auto& l : layers) {
            CHECK(l.term.kind() != Term::Kind::Comp);
            CHECK(develop(l.term).size() == 1);
        }
        if (c.size() <= 6) CHECK(oracle_eq(d, c));
    }
}

TEST_CASE("Yang-Baxter") {
    Alpha p = A("p"), q = A("q"), r = A("r");
    Term lhs = smart_comp(smart_tensor(Term::sym(q, r), Term::id(p)),
                          smart_comp(smart_tensor(Term::id(q), Term::sym(p, r)),
                                     smart_tensor(Term::sym(p, q), Term::id(r))));
    Term rhs = smart_comp(smart_tensor(Term::id(r), Term::sym(p, q)),
                          smart_comp(smart_tensor(Term::sym(p, r), Term::id(q)),
                                     smart_tensor(Term::id(p), Term::sym(q, r))));
    REQUIRE(lhs.type() == rhs.type());
    CHECK(links_of(lhs) == links_of(rhs));
    CHECK(oracle_eq(lhs, rhs));
    CHECK(central_equal(lhs, rhs));
    CHECK(perm_of(lhs) == perm_of(rhs));
    CHECK(perm_of(lhs) == Perm{{3, 2, 1}});
}

TEST_CASE("symmetry with the unit is the identity permutation") {
    CHECK(wire_perm(Term::sym(Alpha(), A("p * q"))) == identity_perm(2));
    CHECK(wire_perm(Term::sym(A("p * q"), Alpha())) == identity_perm(2));
    CHECK(perm_of(Term::sym(Alpha(), A("p"))) == identity_perm(1));
}

TEST_CASE("perm_of") {
    CHECK(perm_of(Term::id(A("p * q"))) == identity_perm(2));
    CHECK(perm_of(Term::sym(A("p"), A("q"))) == Perm{{2, 1}});
    CHECK(perm_of(Term::id(Alpha())) == identity_perm(0));
    CHECK_THROWS_AS(perm_of(Term::id(A("p * p"))), PreconditionError);
    CHECK_THROWS_AS(perm_of(Term::id(A("p * (I -o I)"))), PreconditionError);

    Term three = smart_comp(smart_tensor(Term::sym(A("q"), A("r")), Term::id(A("p"))), Term::sym(A("p"), A("q * r")));
    CHECK(perm_of(three) == perm_by_matching(three.src(), three.tgt()));
    CHECK(perm_of(three) == traced_perm(three));

    Rng rng(17);
    for (int i = 0; i < 300; ++i) {
        Term c = random_central(rng, A("p * q * (p -o q) * r * s"), 10);
        CAPTURE(to_string(c));
        CHECK(perm_of(c) == perm_by_matching(c.src(), c.tgt()));
        CHECK(perm_of(c) == traced_perm(c));
    }
}

TEST_CASE("balance decomposition") {
    auto bd = balance_decompose(Term::id(A("p * (I -o I)")));
    CHECK(to_string(bd.cprime) == "1[p]");
    CHECK(bd.recompose().type() == parse_sequent_il("p * (I -o I) |- p * (I -o I)"));

    auto unit = balance_decompose(Term::sym(A("I -o I"), A("(I -o I) -o I")));
    CHECK(unit.cprime.type() == parse_sequent_il("I |- I"));
    CHECK(perm_of(unit.cprime) == identity_perm(0));

    auto plain = balance_decompose(Term::sym(A("p"), A("q")));
    CHECK(plain.cprime == Term::sym(A("p"), A("q")));
    CHECK(plain.u == Term::id(A("p * q")));

    CHECK_THROWS_AS(balance_decompose(Term::eps(A("p"), A("q"))), PreconditionError);

    Rng rng(8);
    Alpha src = A("p * (I -o I) * q * (I -o I) * (p -o q)");
    int oracle_checked = 0;
    for (int i = 0; i < 200; ++i) {
        Term c = random_central(rng, src, 8);
        auto d = balance_decompose(c);
        CAPTURE(to_string(c));
        CHECK(is_central(d.cprime));
        CHECK(is_reduced(d.cprime.type()));
        CHECK(is_assorted(d.cprime.src()));
        Term back = d.recompose();
        CHECK(back.type() == c.type());
        CHECK(links_of(back) == links_of(c));
        CHECK(perm_of(d.cprime) == perm_by_matching(d.cprime.src(), d.cprime.tgt()));
    }
    Rng small(9);
    for (int i = 0; i < 40; ++i) {
        Term c = random_central(small, A("p * (I -o I)"), 3);
        Term back = balance_decompose(c).recompose();
        if (back.size() + c.size() > 60) continue;
        ++oracle_checked;
        CAPTURE(to_string(c));
        CHECK(oracle_eq(back, c));
    }
    CHECK(oracle_checked > 0);
}

TEST_CASE("normal form") {
    CHECK(perm_normal_form(identity_perm(3)).blocks.empty());
    CHECK(to_string(perm_normal_form(identity_perm(3))) == "1");
    CHECK(to_string(perm_normal_form(Perm{{2, 1}})) == "s[1,1]");
    CHECK(to_string(perm_normal_form(Perm{{3, 2, 1}})) == "s[1,1] s[2,1]");

    std::set<PermNormalForm> s4;
    for (const auto& p : all_perms(4)) s4.insert(perm_normal_form(p));
    CHECK(s4.size() == 24);

    for (std::size_t m = 1; m <= 6; ++m) {
        std::set<PermNormalForm> seen;
        for (const auto& p : all_perms(m)) {
            PermNormalForm nf = perm_normal_form(p);
            for (std::size_t k = 0; k < nf.blocks.size(); ++k) {
                CHECK(nf.blocks[k].i >= nf.blocks[k].j);
                if (k) CHECK(nf.blocks[k - 1].i < nf.blocks[k].i);
            }
            Perm back = perm_of_normal_form(nf, m);
            CHECK(back == p);
            CHECK(perm_normal_form(back) == nf);
            seen.insert(nf);
        }
        CHECK(seen.size() == static_cast<std::size_t>(factorial(static_cast<int>(m))));
    }
}

TEST_CASE("central_of realizes the permutation") {
    Alpha src = A("p * q * r * s");
    for (const auto& p : all_perms(4)) {
        Term c = central_of(p, src);
        CHECK(wire_perm(c) == p);
        CHECK(traced_perm(c) == p);
    }
}

TEST_CASE("central_equal") {
    CHECK(central_equal(Term::id(A("p * q")), Term::id(A("p * q"))));
    CHECK(!central_equal(Term::sym(A("p"), A("q")), Term::id(A("p * q"))));
    CHECK_THROWS_AS(central_equal(Term::id(A("p * p")), Term::id(A("p * p"))), PreconditionError);

    Term one = Term::sym(A("p"), A("q * r"));
    Term other = compose_layers(develop(one), one.src());
    CHECK(central_equal(one, other));
    CHECK(oracle_eq(one, other));

    Rng rng(21);
    Alpha src = A("p * (I -o I) * q * r");
    for (int i = 0; i < 100; ++i) {
        Term f = random_central(rng, src, 8);
        Term g = central_of(wire_perm(f), src);
        CHECK(central_equal(f, g));
        CHECK(links_of(f) == links_of(g));
    }
}
