#include <cctype>

#include "mlc/terms.hpp"

namespace mlc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

std::size_t hash_alpha(const Alpha& a) {
    std::size_t h = 0xabcdef;
    for (const auto& p : a.factors) {
        if (p.is_letter()) h = mix(h, std::hash<std::string>{}(p.name));
        else h = mix(mix(h, 0x51 ^ hash_alpha(*p.dom)), hash_alpha(*p.cod));
    }
    return mix(h, a.size());
}

const char* kind_name(Term::Kind k) {
    switch (k) {
        case Term::Kind::Id: return "id";
        case Term::Kind::Sym: return "sym";
        case Term::Kind::Eta: return "eta";
        case Term::Kind::Eps: return "eps";
        case Term::Kind::Comp: return "comp";
        case Term::Kind::Tensor: return "tensor";
        case Term::Kind::ImpF: return "imp";
    }
    return "?";
}

}  // namespace

Term Term::make(Kind k, Alpha a, Alpha b, std::vector<Term> kids, SequentIL type) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    n->kids = std::move(kids);
    n->type = std::move(type);
    std::size_t h = mix(static_cast<std::size_t>(k) + 1, hash_alpha(n->a));
    h = mix(h, hash_alpha(n->b));
    for (const auto& c : n->kids) {
        n->size += c.size();
        h = mix(h, c.hash());
    }
    n->hash = h;
    return Term(std::move(n));
}

Term Term::id(const Alpha& a) { return make(Kind::Id, a, Alpha(), {}, {a, a}); }

Term Term::sym(const Alpha& a, const Alpha& b) {
    return make(Kind::Sym, a, b, {}, {tensor_alpha(a, b), tensor_alpha(b, a)});
}

Term Term::eta(const Alpha& a, const Alpha& b) {
    return make(Kind::Eta, a, b, {}, {b, Alpha::imp(a, tensor_alpha(a, b))});
}

Term Term::eps(const Alpha& a, const Alpha& b) {
    return make(Kind::Eps, a, b, {}, {tensor_alpha(a, Alpha::imp(a, b)), b});
}

Term Term::comp(const Term& after, const Term& before) {
    if (before.tgt() != after.src())
        throw TypeError("composition mismatch: " + to_string(before.tgt()) + " vs " + to_string(after.src()));
    return make(Kind::Comp, Alpha(), Alpha(), {after, before}, {before.src(), after.tgt()});
}

Term Term::tensor(std::vector<Term> factors) {
    if (factors.size() < 2) throw TypeError("tensor needs at least two factors");
    SequentIL ty;
    for (const auto& f : factors) {
        ty.ant = tensor_alpha(ty.ant, f.src());
        ty.con = tensor_alpha(ty.con, f.tgt());
    }
    return make(Kind::Tensor, Alpha(), Alpha(), std::move(factors), std::move(ty));
}

Term Term::imp(const Alpha& a, const Term& body) {
    return make(Kind::ImpF, a, Alpha(), {body}, {Alpha::imp(a, body.src()), Alpha::imp(a, body.tgt())});
}

int compare(const Term& x, const Term& y) {
    if (x.n_ == y.n_) return 0;
    if (x.kind() != y.kind()) return static_cast<int>(x.kind()) < static_cast<int>(y.kind()) ? -1 : 1;
    if (int c = compare(x.a(), y.a())) return c;
    if (int c = compare(x.b(), y.b())) return c;
    const auto& xs = x.kids();
    const auto& ys = y.kids();
    if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (int c = compare(xs[i], ys[i])) return c;
    return 0;
}

SequentIL type_of(const Term& t) { return t.type(); }

// ---------- smart constructors ----------

static void push_factor(std::vector<Term>& out, const Term& t) {
    if (t.kind() == Term::Kind::Tensor) {
        for (const auto& k : t.kids()) push_factor(out, k);
    } else if (!(t.kind() == Term::Kind::Id && t.a().is_unit())) {
        out.push_back(t);
    }
}

Term smart_tensor(const std::vector<Term>& fs) {
    std::vector<Term> out;
    for (const auto& f : fs) push_factor(out, f);
    if (out.empty()) return Term::id(Alpha());
    if (out.size() == 1) return out[0];
    return Term::tensor(std::move(out));
}

Term smart_tensor(const Term& f, const Term& g) { return smart_tensor(std::vector<Term>{f, g}); }
Term smart_comp(const Term& after, const Term& before) { return Term::comp(after, before); }
Term smart_imp(const Alpha& a, const Term& body) { return Term::imp(a, body); }

bool is_smart_normal(const Term& t) {
    if (t.kind() == Term::Kind::Tensor) {
        for (const auto& k : t.kids())
            if (k.kind() == Term::Kind::Tensor || (k.kind() == Term::Kind::Id && k.a().is_unit())) return false;
    }
    for (const auto& k : t.kids())
        if (!is_smart_normal(k)) return false;
    return true;
}

bool is_central(const Term& t) {
    if (t.kind() == Term::Kind::Eta || t.kind() == Term::Kind::Eps || t.kind() == Term::Kind::ImpF) return false;
    for (const auto& k : t.kids())
        if (!is_central(k)) return false;
    return true;
}

// ---------- printing ----------

static std::string idx(const Alpha& a) { return to_string(a); }

std::string to_string(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Id: return "1[" + idx(t.a()) + "]";
        case Term::Kind::Sym: return "sym[" + idx(t.a()) + "," + idx(t.b()) + "]";
        case Term::Kind::Eta: return "eta[" + idx(t.a()) + "," + idx(t.b()) + "]";
        case Term::Kind::Eps: return "eps[" + idx(t.a()) + "," + idx(t.b()) + "]";
        case Term::Kind::ImpF: return "imp[" + idx(t.a()) + "](" + to_string(t.body()) + ")";
        case Term::Kind::Comp: {
            auto wrap = [](const Term& k, bool comp_too) {
                bool paren = k.kind() == Term::Kind::Tensor || (comp_too && k.kind() == Term::Kind::Comp);
                return paren ? "(" + to_string(k) + ")" : to_string(k);
            };
            return wrap(t.after(), true) + " o " + wrap(t.before(), false);
        }
        case Term::Kind::Tensor: {
            std::string r;
            for (std::size_t i = 0; i < t.kids().size(); ++i) {
                if (i) r += " * ";
                const Term& k = t.kids()[i];
                r += k.kind() == Term::Kind::Comp || k.kind() == Term::Kind::Tensor ? "(" + to_string(k) + ")" : to_string(k);
            }
            return r;
        }
    }
    return "";
}

// ---------- parsing ----------

namespace {

struct TermParser {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool word(std::string_view w) {
        skip();
        if (s.substr(i, w.size()) != w) return false;
        std::size_t j = i + w.size();
        if (std::isalnum(static_cast<unsigned char>(w.back())) && j < s.size() &&
            (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
            return false;
        i = j;
        return true;
    }
    void expect(char c) {
        skip();
        if (i >= s.size() || s[i] != c) throw ParseError(i, std::string("expected '") + c + "'");
        ++i;
    }
    Alpha formula_until(const char* stops) {
        skip();
        std::size_t start = i;
        while (i < s.size() && std::string_view(stops).find(s[i]) == std::string_view::npos) ++i;
        if (i >= s.size()) throw ParseError(i, "unterminated index");
        try {
            return parse_alpha(s.substr(start, i - start));
        } catch (const ParseError& e) {
            throw ParseError(start + e.position(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
        }
    }
    std::pair<Alpha, Alpha> two_indices() {
        expect('[');
        Alpha a = formula_until(",]");
        expect(',');
        Alpha b = formula_until("]");
        expect(']');
        return {a, b};
    }

    Term primary() {
        skip();
        std::size_t at = i;
        try {
            if (i < s.size() && s[i] == '(') {
                ++i;
                Term t = expr();
                expect(')');
                return t;
            }
            if (word("1")) {
                expect('[');
                Alpha a = formula_until("]");
                expect(']');
                return Term::id(a);
            }
            if (word("sym")) {
                auto [a, b] = two_indices();
                return Term::sym(a, b);
            }
            if (word("eta")) {
                auto [a, b] = two_indices();
                return Term::eta(a, b);
            }
            if (word("eps")) {
                auto [a, b] = two_indices();
                return Term::eps(a, b);
            }
            if (word("imp")) {
                expect('[');
                Alpha a = formula_until("]");
                expect(']');
                expect('(');
                Term body = expr();
                expect(')');
                return Term::imp(a, body);
            }
        } catch (const TypeError& e) {
            throw TypeError("at column " + std::to_string(at + 1) + ": " + e.what());
        }
        throw ParseError(i, "expected a term");
    }

    Term tensor() {
        std::vector<Term> fs{primary()};
        for (;;) {
            skip();
            if (i < s.size() && s[i] == '*') {
                ++i;
                fs.push_back(primary());
            } else {
                break;
            }
        }
        return fs.size() == 1 ? fs[0] : smart_tensor(fs);
    }

    Term expr() {
        Term left = tensor();
        std::size_t at = i;
        if (word("o")) {
            Term right = expr();
            try {
                return Term::comp(left, right);
            } catch (const TypeError& e) {
                throw TypeError("at column " + std::to_string(at + 1) + ": " + e.what());
            }
        }
        return left;
    }
};

}  // namespace

Term parse_term(std::string_view text) {
    TermParser p{text};
    Term t = p.expr();
    p.skip();
    if (p.i != text.size()) throw ParseError(p.i, "trailing input");
    return t;
}

// ---------- leaf renaming ----------

static void alpha_leaves(const Alpha& a, std::vector<std::string>& out) {
    for (const auto& o : occurrences(a, Side::Ant)) out.push_back(o.letter);
}

void collect_index_leaves(const Term& t, std::vector<std::string>& out) {
    alpha_leaves(t.a(), out);
    alpha_leaves(t.b(), out);
    for (const auto& k : t.kids()) collect_index_leaves(k, out);
}

static Term rename_rec(const Term& t, const std::vector<std::string>& names, std::size_t& cur) {
    Alpha a = rename_leaves(t.a(), names, cur);
    Alpha b = rename_leaves(t.b(), names, cur);
    std::vector<Term> kids;
    for (const auto& k : t.kids()) kids.push_back(rename_rec(k, names, cur));
    switch (t.kind()) {
        case Term::Kind::Id: return Term::id(a);
        case Term::Kind::Sym: return Term::sym(a, b);
        case Term::Kind::Eta: return Term::eta(a, b);
        case Term::Kind::Eps: return Term::eps(a, b);
        case Term::Kind::Comp: return Term::comp(kids[0], kids[1]);
        case Term::Kind::Tensor: return Term::tensor(std::move(kids));
        case Term::Kind::ImpF: return Term::imp(a, kids[0]);
    }
    throw TypeError(std::string("unknown term kind ") + kind_name(t.kind()));
}

Term rename_term_leaves(const Term& t, const std::vector<std::string>& names) {
    std::size_t cur = 0;
    return rename_rec(t, names, cur);
}

}  // namespace mlc
