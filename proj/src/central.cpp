#include "mlc/central.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mlc {

Perm identity_perm(std::size_t m) {
    Perm p;
    p.images.resize(m);
    std::iota(p.images.begin(), p.images.end(), 1);
    return p;
}

bool is_perm(const std::vector<int>& images) {
    std::vector<bool> seen(images.size(), false);
    for (int x : images) {
        if (x < 1 || static_cast<std::size_t>(x) > images.size() || seen[x - 1]) return false;
        seen[x - 1] = true;
    }
    return true;
}

Perm compose(const Perm& after, const Perm& before) {
    if (after.degree() != before.degree()) throw PreconditionError("permutations of different degree");
    Perm r;
    for (int x : before.images) r.images.push_back(after.images[x - 1]);
    return r;
}

Perm inverse(const Perm& p) {
    Perm r;
    r.images.resize(p.degree());
    for (std::size_t s = 0; s < p.degree(); ++s) r.images[p.images[s] - 1] = static_cast<int>(s) + 1;
    return r;
}

Perm adjacent_transposition(std::size_t m, int k) {
    if (k < 1 || static_cast<std::size_t>(k) >= m) throw PreconditionError("transposition index out of range");
    Perm p = identity_perm(m);
    std::swap(p.images[k - 1], p.images[k]);
    return p;
}

std::vector<Perm> all_perms(std::size_t m) {
    std::vector<Perm> out;
    Perm p = identity_perm(m);
    do out.push_back(p);
    while (std::next_permutation(p.images.begin(), p.images.end()));
    return out;
}

// ---------- development ----------

namespace {

void swaps_of(const Term& t, int offset, std::vector<int>& out) {
    switch (t.kind()) {
        case Term::Kind::Id: return;
        case Term::Kind::Sym: {
            int m = static_cast<int>(t.a().size()), n = static_cast<int>(t.b().size());
            if (m == 0) return;
            for (int k = 1; k <= n; ++k)
                for (int pos = m + k - 1; pos >= k; --pos) out.push_back(offset + pos);
            return;
        }
        case Term::Kind::Comp:
            swaps_of(t.before(), offset, out);
            swaps_of(t.after(), offset, out);
            return;
        case Term::Kind::Tensor:
            for (const auto& k : t.kids()) {
                swaps_of(k, offset, out);
                offset += static_cast<int>(k.src().size());
            }
            return;
        default: throw PreconditionError("not a central term: " + to_string(t));
    }
}

std::vector<int> swaps_of(const Term& c) {
    std::vector<int> out;
    swaps_of(c, 0, out);
    return out;
}

std::vector<Layer> layers_of(const std::vector<int>& word, const Alpha& src) {
    std::vector<Layer> out;
    Alpha cur = src;
    for (int pos : word) {
        std::size_t i = static_cast<std::size_t>(pos) - 1;
        if (i + 1 >= cur.size()) throw PreconditionError("swap position out of range");
        Term t = smart_tensor({Term::id(cur.slice(0, i)), Term::sym(cur.slice(i, i + 1), cur.slice(i + 1, i + 2)),
                               Term::id(cur.slice(i + 2))});
        out.push_back({pos, t});
        cur = t.tgt();
    }
    return out;
}

Perm perm_of_word(const std::vector<int>& word, std::size_t m) {
    // at[t] = source position currently at target position t
    std::vector<int> at(m);
    std::iota(at.begin(), at.end(), 1);
    for (int pos : word) std::swap(at[pos - 1], at[pos]);
    Perm p;
    p.images.resize(m);
    for (std::size_t t = 0; t < m; ++t) p.images[at[t] - 1] = static_cast<int>(t) + 1;
    return p;
}

std::vector<std::size_t> nonconstant_positions(const Alpha& a) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_constant(a.factors[i])) out.push_back(i);
    return out;
}

struct Reduction {
    Alpha reduced;
    Term to, from;  // a |- reduced and back
};

Reduction reduce_side(const Alpha& a) {
    std::vector<Term> to, from;
    std::vector<Prime> kept, run;
    auto flush = [&] {
        if (run.empty()) return;
        to.push_back(Term::id(Alpha(run)));
        from.push_back(Term::id(Alpha(run)));
        run.clear();
    };
    for (const auto& p : a.factors) {
        if (is_constant(p)) {
            flush();
            auto [f, g] = iso_const(Alpha({p}));
            to.push_back(f);
            from.push_back(g);
        } else {
            kept.push_back(p);
            run.push_back(p);
        }
    }
    flush();
    return {Alpha(kept), smart_tensor(to), smart_tensor(from)};
}

}  // namespace

std::vector<Layer> develop(const Term& c) { return layers_of(swaps_of(c), c.src()); }

Term compose_layers(const std::vector<Layer>& layers, const Alpha& src) {
    if (layers.empty()) return Term::id(src);
    Term t = layers.front().term;
    for (std::size_t i = 1; i < layers.size(); ++i) t = smart_comp(layers[i].term, t);
    return t;
}

Perm wire_perm(const Term& c) { return perm_of_word(swaps_of(c), c.src().size()); }

// ---------- balance decomposition ----------

Term BalanceDecomposition::recompose() const { return smart_comp(vinv, smart_comp(cprime, u)); }

BalanceDecomposition balance_decompose(const Term& c) {
    Perm w = wire_perm(c);
    Reduction s = reduce_side(c.src()), t = reduce_side(c.tgt());
    std::vector<std::size_t> keep_s = nonconstant_positions(c.src()), keep_t = nonconstant_positions(c.tgt());
    std::vector<int> rank_t(c.tgt().size(), 0);
    for (std::size_t r = 0; r < keep_t.size(); ++r) rank_t[keep_t[r]] = static_cast<int>(r) + 1;
    Perm restricted;
    for (std::size_t pos : keep_s) restricted.images.push_back(rank_t[w.images[pos] - 1]);
    if (!is_perm(restricted.images)) throw std::logic_error("wire permutation does not preserve constant factors");
    Term cprime = central_of(restricted, s.reduced);
    if (cprime.tgt() != t.reduced) throw std::logic_error("reduced term has the wrong target");
    return {s.to, cprime, t.to, t.from};
}

bool is_reduced(const SequentIL& type) {
    if (type.ant.is_unit() && type.con.is_unit()) return true;
    auto has_const = [](const Alpha& a) {
        return std::any_of(a.factors.begin(), a.factors.end(), [](const Prime& p) { return is_constant(p); });
    };
    return !has_const(type.ant) && !has_const(type.con);
}

Perm perm_of(const Term& c) {
    if (!is_central(c)) throw PreconditionError("not a central term: " + to_string(c));
    if (!is_assorted(c.src())) throw PreconditionError("not assorted: " + to_string(c.src()));
    if (!is_reduced(c.type())) throw PreconditionError("not reduced: " + to_string(c.type()));
    return wire_perm(c);
}

Perm perm_by_matching(const Alpha& src, const Alpha& tgt) {
    if (!is_reduced({src, tgt}) || !is_assorted(src) || src.size() != tgt.size())
        throw PreconditionError("matching needs a reduced assorted type");
    Perm p;
    for (const auto& f : src.factors) {
        auto it = std::find(tgt.factors.begin(), tgt.factors.end(), f);
        if (it == tgt.factors.end()) throw PreconditionError("factor missing from target: " + to_string(f));
        p.images.push_back(static_cast<int>(it - tgt.factors.begin()) + 1);
    }
    if (!is_perm(p.images)) throw PreconditionError("factors do not match one to one");
    return p;
}

// ---------- normal form ----------

PermNormalForm perm_normal_form(const Perm& p) {
    if (!is_perm(p.images)) throw PreconditionError("not a permutation");
    std::vector<int> cur = p.images;
    PermNormalForm nf;
    for (int k = static_cast<int>(cur.size()); k >= 2; --k) {
        int j = static_cast<int>(std::find(cur.begin(), cur.end(), k) - cur.begin()) + 1;
        if (j < k) {
            nf.blocks.push_back({k - 1, j});
            // strip the run that carries j to k
            cur.erase(cur.begin() + (j - 1));
        } else {
            cur.pop_back();
        }
    }
    std::reverse(nf.blocks.begin(), nf.blocks.end());
    return nf;
}

std::vector<int> word_of(const PermNormalForm& nf) {
    std::vector<int> w;
    for (auto b = nf.blocks.rbegin(); b != nf.blocks.rend(); ++b)
        for (int a = b->j; a <= b->i; ++a) w.push_back(a);
    return w;
}

Perm perm_of_normal_form(const PermNormalForm& nf, std::size_t m) {
    for (const auto& b : nf.blocks)
        if (b.j < 1 || b.j > b.i || static_cast<std::size_t>(b.i) >= m)
            throw PreconditionError("block out of range: " + to_string(PermNormalForm{{b}}));
    return perm_of_word(word_of(nf), m);
}

Term central_of(const Perm& p, const Alpha& src) {
    if (p.degree() != src.size()) throw PreconditionError("permutation degree differs from factor count");
    return compose_layers(layers_of(word_of(perm_normal_form(p)), src), src);
}

bool central_equal(const Term& f, const Term& g) {
    for (const Term* t : {&f, &g}) {
        if (!is_central(*t)) throw PreconditionError("not a central term: " + to_string(*t));
        if (!is_assorted(t->src())) throw PreconditionError("not assorted: " + to_string(t->src()));
    }
    if (f.type() != g.type()) return false;
    Perm pf = perm_of(balance_decompose(f).cprime), pg = perm_of(balance_decompose(g).cprime);
    if (pf != pg) throw std::logic_error("assorted central terms of one type with different permutations");
    return true;
}

// ---------- text ----------

std::string to_string(const Perm& p) {
    std::string r = "[";
    for (std::size_t i = 0; i < p.images.size(); ++i) r += (i ? " " : "") + std::to_string(p.images[i]);
    return r + "]";
}

std::string to_string(const PermNormalForm& nf) {
    if (nf.blocks.empty()) return "1";
    std::string r;
    for (std::size_t k = 0; k < nf.blocks.size(); ++k)
        r += (k ? " s[" : "s[") + std::to_string(nf.blocks[k].i) + "," + std::to_string(nf.blocks[k].j) + "]";
    return r;
}

Perm parse_perm(std::string_view text) {
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
    };
    skip();
    if (i >= text.size() || text[i] != '[') throw ParseError(i, "expected '['");
    ++i;
    Perm p;
    for (;;) {
        skip();
        if (i < text.size() && text[i] == ']') break;
        std::size_t start = i;
        int v = 0;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
        if (i == start) throw ParseError(i, "expected a number or ']'");
        p.images.push_back(v);
    }
    ++i;
    skip();
    if (i != text.size()) throw ParseError(i, "trailing input");
    if (!is_perm(p.images)) throw ParseError(0, "not a permutation of 1.." + std::to_string(p.images.size()));
    return p;
}

}  // namespace mlc
