#include <functional>
#include <set>

#include "mlc/terms.hpp"

namespace mlc {

const char* rule_name(Rule r) {
    switch (r) {
        case Rule::Cat1: return "cat1";
        case Rule::Cat2: return "cat2";
        case Rule::Fun1: return "fun1";
        case Rule::Fun2: return "fun2";
        case Rule::Nat: return "nat";
        case Rule::Iso: return "iso";
        case Rule::Coh: return "coh";
        case Rule::Fun2Str: return "fun2str";
        case Rule::NatEta: return "nateta";
        case Rule::Fun1Str: return "fun1str";
        case Rule::NatEps: return "nateps";
        case Rule::Triang1: return "triang1";
        case Rule::Triang2: return "triang2";
        case Rule::CII: return "cII";
    }
    return "?";
}

namespace {

using K = Term::Kind;
using Ctx = std::function<Term(const Term&)>;

struct Local {
    Term term;
    Rule rule;
    bool ltr;
};

std::vector<Term> factors_of(const Term& t) {
    if (t.kind() == K::Tensor) return t.kids();
    return {t};
}

Term join(const std::vector<Term>& fs, std::size_t from, std::size_t to, const Alpha& unit_side) {
    if (from == to) return Term::id(unit_side);
    return smart_tensor(std::vector<Term>(fs.begin() + from, fs.begin() + to));
}

bool is_id_of(const Term& t, const Alpha& a) { return t.kind() == K::Id && t.a() == a; }

// Splits the tensor factors of t into (left, right) groups whose targets (or sources) are a and b.
std::optional<std::pair<Term, Term>> split_by(const Term& t, const Alpha& a, bool by_target) {
    auto fs = factors_of(t);
    for (std::size_t i = 0; i <= fs.size(); ++i) {
        Term l = join(fs, 0, i, Alpha());
        const Alpha& side = by_target ? l.tgt() : l.src();
        if (side == a) return std::make_pair(l, join(fs, i, fs.size(), Alpha()));
    }
    return std::nullopt;
}

void local_moves(const Term& s, std::vector<Local>& out) {
    auto add = [&](Term t, Rule r, bool ltr) { out.push_back({std::move(t), r, ltr}); };

    // cat1
    if (s.kind() == K::Comp) {
        if (s.before().kind() == K::Id) add(s.after(), Rule::Cat1, true);
        if (s.after().kind() == K::Id) add(s.before(), Rule::Cat1, true);
    }
    add(Term::comp(Term::id(s.tgt()), s), Rule::Cat1, false);
    add(Term::comp(s, Term::id(s.src())), Rule::Cat1, false);

    // cat2
    if (s.kind() == K::Comp && s.before().kind() == K::Comp)
        add(Term::comp(Term::comp(s.after(), s.before().after()), s.before().before()), Rule::Cat2, true);
    if (s.kind() == K::Comp && s.after().kind() == K::Comp)
        add(Term::comp(s.after().after(), Term::comp(s.after().before(), s.before())), Rule::Cat2, false);

    // fun1
    if (s.kind() == K::Tensor) {
        const auto& fs = s.kids();
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            if (fs[i].kind() == K::Id && fs[i + 1].kind() == K::Id) {
                std::vector<Term> nf(fs.begin(), fs.begin() + i);
                nf.push_back(Term::id(tensor_alpha(fs[i].a(), fs[i + 1].a())));
                nf.insert(nf.end(), fs.begin() + i + 2, fs.end());
                add(smart_tensor(nf), Rule::Fun1, true);
            }
        }
    }
    if (s.kind() == K::Id)
        for (std::size_t k = 1; k < s.a().size(); ++k)
            add(Term::tensor({Term::id(s.a().slice(0, k)), Term::id(s.a().slice(k))}), Rule::Fun1, false);

    // fun2
    if (s.kind() == K::Comp) {
        auto gs = factors_of(s.after());
        auto fs = factors_of(s.before());
        if (gs.size() >= 2 || fs.size() >= 2) {
            for (std::size_t i = 1; i < gs.size() + 1; ++i) {
                for (std::size_t j = 1; j < fs.size() + 1; ++j) {
                    if (i == gs.size() && j == fs.size()) continue;
                    Term g1 = join(gs, 0, i, Alpha()), g2 = join(gs, i, gs.size(), Alpha());
                    Term f1 = join(fs, 0, j, Alpha()), f2 = join(fs, j, fs.size(), Alpha());
                    if (g1.src() == f1.tgt() && g2.src() == f2.tgt())
                        add(smart_tensor(Term::comp(g1, f1), Term::comp(g2, f2)), Rule::Fun2, true);
                }
            }
        }
    }
    if (s.kind() == K::Tensor) {
        const auto& fs = s.kids();
        for (std::size_t i = 1; i < fs.size(); ++i) {
            Term x = join(fs, 0, i, Alpha()), y = join(fs, i, fs.size(), Alpha());
            if (x.kind() == K::Comp && y.kind() == K::Comp)
                add(Term::comp(smart_tensor(x.after(), y.after()), smart_tensor(x.before(), y.before())), Rule::Fun2,
                    false);
        }
    }

    // nat
    if (s.kind() == K::Comp && s.after().kind() == K::Sym) {
        const Alpha& a2 = s.after().a();
        if (auto fg = split_by(s.before(), a2, true)) {
            const Term& f = fg->first;
            const Term& g = fg->second;
            add(Term::comp(smart_tensor(g, f), Term::sym(f.src(), g.src())), Rule::Nat, true);
        }
    }
    if (s.kind() == K::Comp && s.before().kind() == K::Sym) {
        const Alpha& b = s.before().b();
        if (auto gf = split_by(s.after(), b, false)) {
            const Term& g = gf->first;
            const Term& f = gf->second;
            add(Term::comp(Term::sym(f.tgt(), g.tgt()), smart_tensor(f, g)), Rule::Nat, false);
        }
    }

    // iso
    if (s.kind() == K::Comp && s.after().kind() == K::Sym && s.before().kind() == K::Sym &&
        s.after().a() == s.before().b() && s.after().b() == s.before().a())
        add(Term::id(s.src()), Rule::Iso, true);
    if (s.kind() == K::Id)
        for (std::size_t k = 1; k < s.a().size(); ++k) {
            Alpha x = s.a().slice(0, k), y = s.a().slice(k);
            add(Term::comp(Term::sym(y, x), Term::sym(x, y)), Rule::Iso, false);
        }

    // coh
    if (s.kind() == K::Sym) {
        const Alpha& ab = s.a();
        const Alpha& c = s.b();
        for (std::size_t k = 1; k < ab.size(); ++k) {
            Alpha a = ab.slice(0, k), b = ab.slice(k);
            add(Term::comp(smart_tensor(Term::sym(a, c), Term::id(b)), smart_tensor(Term::id(a), Term::sym(b, c))),
                Rule::Coh, true);
        }
    }
    if (s.kind() == K::Comp && s.after().kind() == K::Tensor && s.before().kind() == K::Tensor &&
        s.after().kids().size() == 2 && s.before().kids().size() == 2) {
        const Term& x = s.after().kids()[0];
        const Term& y = s.after().kids()[1];
        const Term& u = s.before().kids()[0];
        const Term& v = s.before().kids()[1];
        if (x.kind() == K::Sym && y.kind() == K::Id && u.kind() == K::Id && v.kind() == K::Sym && x.a() == u.a() &&
            y.a() == v.a() && x.b() == v.b())
            add(Term::sym(tensor_alpha(x.a(), y.a()), x.b()), Rule::Coh, false);
    }

    // fun2str
    if (s.kind() == K::ImpF && s.body().kind() == K::Comp)
        add(Term::comp(Term::imp(s.a(), s.body().after()), Term::imp(s.a(), s.body().before())), Rule::Fun2Str, true);
    if (s.kind() == K::Comp && s.after().kind() == K::ImpF && s.before().kind() == K::ImpF &&
        s.after().a() == s.before().a())
        add(Term::imp(s.after().a(), Term::comp(s.after().body(), s.before().body())), Rule::Fun2Str, false);

    // nateta
    if (s.kind() == K::Comp && s.after().kind() == K::Eta) {
        const Alpha& a = s.after().a();
        const Term& f = s.before();
        add(Term::comp(Term::imp(a, smart_tensor(Term::id(a), f)), Term::eta(a, f.src())), Rule::NatEta, true);
    }
    if (s.kind() == K::Comp && s.after().kind() == K::ImpF && s.before().kind() == K::Eta &&
        s.after().a() == s.before().a()) {
        const Alpha& a = s.before().a();
        const Term& body = s.after().body();
        std::optional<Term> f;
        if (a.is_unit()) {
            f = body;
        } else {
            auto fs = factors_of(body);
            if (is_id_of(fs[0], a)) f = join(fs, 1, fs.size(), Alpha());
        }
        if (f && f->src() == s.before().b()) add(Term::comp(Term::eta(a, f->tgt()), *f), Rule::NatEta, false);
    }

    // fun1str
    if (s.kind() == K::ImpF && s.body().kind() == K::Id) add(Term::id(s.src()), Rule::Fun1Str, true);
    if (s.kind() == K::Id && s.a().size() == 1 && !s.a().factors[0].is_letter()) {
        const Prime& p = s.a().factors[0];
        add(Term::imp(*p.dom, Term::id(*p.cod)), Rule::Fun1Str, false);
    }

    // nateps
    if (s.kind() == K::Comp && s.after().kind() == K::Eps) {
        const Alpha& a = s.after().a();
        auto fs = factors_of(s.before());
        std::optional<Term> box;
        if (a.is_unit() && fs.size() == 1) box = fs[0];
        else if (fs.size() == 2 && is_id_of(fs[0], a)) box = fs[1];
        if (box && box->kind() == K::ImpF && box->a() == a) {
            const Term& f = box->body();
            add(Term::comp(f, Term::eps(a, f.src())), Rule::NatEps, true);
        }
    }
    if (s.kind() == K::Comp && s.before().kind() == K::Eps) {
        const Alpha& a = s.before().a();
        const Term& f = s.after();
        add(Term::comp(Term::eps(a, f.tgt()), smart_tensor(Term::id(a), Term::imp(a, f))), Rule::NatEps, false);
    }

    // triang1
    if (s.kind() == K::Comp && s.after().kind() == K::Eps) {
        const Alpha& a = s.after().a();
        auto fs = factors_of(s.before());
        std::optional<Term> e;
        if (a.is_unit() && fs.size() == 1) e = fs[0];
        else if (fs.size() == 2 && is_id_of(fs[0], a)) e = fs[1];
        if (e && e->kind() == K::Eta && e->a() == a && tensor_alpha(a, e->b()) == s.after().b())
            add(Term::id(s.src()), Rule::Triang1, true);
    }
    if (s.kind() == K::Id) {
        for (std::size_t k = 0; k <= s.a().size(); ++k) {
            Alpha a = s.a().slice(0, k), b = s.a().slice(k);
            add(Term::comp(Term::eps(a, s.a()), smart_tensor(Term::id(a), Term::eta(a, b))), Rule::Triang1, false);
        }
    }

    // triang2
    if (s.kind() == K::Comp && s.after().kind() == K::ImpF && s.after().body().kind() == K::Eps &&
        s.before().kind() == K::Eta) {
        const Alpha& a = s.after().a();
        const Term& e = s.after().body();
        const Term& h = s.before();
        if (e.a() == a && h.a() == a && h.b() == Alpha::imp(a, e.b())) add(Term::id(s.src()), Rule::Triang2, true);
    }
    if (s.kind() == K::Id && s.a().size() == 1 && !s.a().factors[0].is_letter()) {
        const Prime& p = s.a().factors[0];
        add(Term::comp(Term::imp(*p.dom, Term::eps(*p.dom, *p.cod)), Term::eta(*p.dom, s.a())), Rule::Triang2, false);
    }

    // cII
    if (s.kind() == K::Sym && (s.a().is_unit() || s.b().is_unit())) add(Term::id(s.src()), Rule::CII, true);
    if (s.kind() == K::Id) {
        add(Term::sym(Alpha(), s.a()), Rule::CII, false);
        add(Term::sym(s.a(), Alpha()), Rule::CII, false);
    }
}

void walk(const Term& s, const Ctx& ctx, std::vector<Neighbor>& out) {
    std::vector<Local> loc;
    local_moves(s, loc);
    for (auto& l : loc) out.push_back({ctx(l.term), l.rule, l.ltr});

    switch (s.kind()) {
        case K::Comp: {
            Term after = s.after(), before = s.before();
            walk(after, [&](const Term& x) { return ctx(Term::comp(x, before)); }, out);
            walk(before, [&](const Term& x) { return ctx(Term::comp(after, x)); }, out);
            break;
        }
        case K::Tensor: {
            const auto fs = s.kids();
            for (std::size_t i = 0; i < fs.size(); ++i) {
                walk(fs[i],
                     [&, i](const Term& x) {
                         auto nf = fs;
                         nf[i] = x;
                         return ctx(smart_tensor(nf));
                     },
                     out);
            }
            for (std::size_t i = 0; i < fs.size(); ++i) {
                for (std::size_t j = i + 2; j <= fs.size(); ++j) {
                    if (i == 0 && j == fs.size()) continue;
                    Term block = Term::tensor(std::vector<Term>(fs.begin() + i, fs.begin() + j));
                    std::vector<Local> bl;
                    local_moves(block, bl);
                    for (auto& l : bl) {
                        std::vector<Term> nf(fs.begin(), fs.begin() + i);
                        nf.push_back(l.term);
                        nf.insert(nf.end(), fs.begin() + j, fs.end());
                        out.push_back({ctx(smart_tensor(nf)), l.rule, l.ltr});
                    }
                }
            }
            break;
        }
        case K::ImpF: {
            Alpha a = s.a();
            walk(s.body(), [&](const Term& x) { return ctx(Term::imp(a, x)); }, out);
            break;
        }
        default: break;
    }
}

}  // namespace

std::vector<Neighbor> rewrite_moves(const Term& t) {
    std::vector<Neighbor> raw;
    walk(t, [](const Term& x) { return x; }, raw);
    std::vector<Neighbor> out;
    std::set<std::string> seen{to_string(t)};
    for (auto& n : raw)
        if (seen.insert(to_string(n.term)).second) out.push_back(std::move(n));
    return out;
}

std::vector<Term> rewrite_neighbors(const Term& t) {
    std::vector<Term> out;
    for (auto& n : rewrite_moves(t)) out.push_back(n.term);
    return out;
}

}  // namespace mlc
