#include "mlc/terms.hpp"

namespace mlc {

std::pair<Term, Term> eta_eps_I_inverse(const Alpha& a) { return {Term::eps(Alpha(), a), Term::eta(Alpha(), a)}; }

namespace {

// f : A1 -o A2 |- A1' -o A2' from f1 : A1 |- A1' and f2 : A2 |- A2' (with inverses).
std::pair<Term, Term> imp_iso(const Alpha& a1, const Alpha& a2, const Term& f1, const Term& f1inv, const Term& f2,
                              const Term& f2inv) {
    const Alpha& a1p = f1.tgt();
    Alpha imp12 = Alpha::imp(a1, a2);
    Term inner = smart_comp(f2, smart_comp(Term::eps(a1, a2), smart_tensor(f1inv, Term::id(imp12))));
    Term f = smart_comp(smart_imp(a1p, inner), Term::eta(a1p, imp12));
    Alpha imp1p2 = Alpha::imp(a1p, a2);
    Term back = smart_comp(Term::eps(a1p, a2), smart_tensor(f1, Term::id(imp1p2)));
    Term finv = smart_comp(smart_imp(a1, back), smart_comp(Term::eta(a1, imp1p2), smart_imp(a1p, f2inv)));
    return {f, finv};
}

std::pair<Term, Term> iso_const_prime(const Prime& p) {
    auto [f1, f1inv] = iso_const(*p.dom);
    auto [f2, f2inv] = iso_const(*p.cod);
    auto [g, ginv] = imp_iso(*p.dom, *p.cod, f1, f1inv, f2, f2inv);
    // g : A1 -o A2 |- I -o I
    auto [e, h] = eta_eps_I_inverse(Alpha());
    return {smart_comp(e, g), smart_comp(ginv, h)};
}

Stripped strip_prime(const Prime& p) {
    if (p.is_letter()) {
        Alpha a({p});
        return {a, Term::id(a), Term::id(a)};
    }
    if (is_constant(p)) {
        auto [f, finv] = iso_const(Alpha({p}));
        return {Alpha(), f, finv};
    }
    const Alpha& a1 = *p.dom;
    const Alpha& a2 = *p.cod;
    if (is_constant(a2)) throw PreconditionError("not proper: " + to_string(p));
    Term f1 = Term::id(a1), f1inv = Term::id(a1);
    if (is_constant(a1)) {
        std::tie(f1, f1inv) = iso_const(a1);
    } else {
        Stripped s1 = strip_const(a1);
        f1 = s1.u;
        f1inv = s1.uinv;
    }
    Stripped s2 = strip_const(a2);
    auto [g, ginv] = imp_iso(a1, a2, f1, f1inv, s2.u, s2.uinv);
    if (!f1.tgt().is_unit()) return {g.tgt(), g, ginv};
    auto [e, h] = eta_eps_I_inverse(s2.target);
    return {s2.target, smart_comp(e, g), smart_comp(ginv, h)};
}

}  // namespace

std::pair<Term, Term> iso_const(const Alpha& a) {
    if (!is_constant(a)) throw PreconditionError("not constant: " + to_string(a));
    std::vector<Term> fs, gs;
    for (const auto& p : a.factors) {
        auto [f, g] = iso_const_prime(p);
        fs.push_back(f);
        gs.push_back(g);
    }
    return {smart_tensor(fs), smart_tensor(gs)};
}

Stripped strip_const(const Alpha& a) {
    if (!is_proper(a)) throw PreconditionError("not proper: witness " + improper_witness(a));
    if (is_constant(a)) throw PreconditionError("constant formula: " + to_string(a));
    std::vector<Term> us, vs;
    std::vector<Prime> target;
    for (const auto& p : a.factors) {
        Stripped s = strip_prime(p);
        us.push_back(s.u);
        vs.push_back(s.uinv);
        target.insert(target.end(), s.target.factors.begin(), s.target.factors.end());
    }
    return {Alpha(target), smart_tensor(us), smart_tensor(vs)};
}

}  // namespace mlc
