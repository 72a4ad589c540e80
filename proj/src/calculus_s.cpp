#include "mlc/calculus_s.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mlc {

using Seq = std::vector<Formula>;
using Rl = DerivS::Rule;

namespace {

Seq cat(const Seq& a, const Seq& b) {
    Seq r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Seq slice(const Seq& s, std::size_t from, std::size_t to) { return Seq(s.begin() + from, s.begin() + to); }
Seq slice(const Seq& s, std::size_t from) { return slice(s, from, s.size()); }

DerivSP make(Rl r, std::vector<std::size_t> params, SequentS concl, std::vector<DerivSP> kids) {
    auto d = std::make_shared<DerivS>();
    d->rule = r;
    d->params = std::move(params);
    d->concl = std::move(concl);
    d->kids = std::move(kids);
    return d;
}

[[noreturn]] void fail(Rl r, const std::string& msg) { throw DerivationError(std::string(rule_name(r)) + ": " + msg); }

}  // namespace

const char* rule_name(DerivS::Rule r) {
    switch (r) {
        case Rl::Ax: return "ax";
        case Rl::AxI: return "axi";
        case Rl::Weak: return "weak";
        case Rl::Int: return "int";
        case Rl::Cut: return "cut";
        case Rl::TL: return "tl";
        case Rl::TR: return "tr";
        case Rl::ImpL: return "impl";
        case Rl::ImpR: return "impr";
    }
    return "?";
}

DerivSP s_ax(const Formula& a) { return make(Rl::Ax, {}, {{a}, a}, {}); }

DerivSP s_axi() { return make(Rl::AxI, {}, {{}, Formula::unit()}, {}); }

DerivSP s_weak(const DerivSP& prem) {
    return make(Rl::Weak, {}, {cat({Formula::unit()}, prem->concl.ant), prem->concl.con}, {prem});
}

DerivSP s_int(const DerivSP& prem, std::size_t k) {
    Seq ant = prem->concl.ant;
    if (k + 2 > ant.size()) fail(Rl::Int, "position " + std::to_string(k) + " out of range in " + to_string(prem->concl));
    std::swap(ant[k], ant[k + 1]);
    return make(Rl::Int, {k}, {ant, prem->concl.con}, {prem});
}

DerivSP s_cut(const DerivSP& left, const DerivSP& right, std::size_t k) {
    const Seq& ant = right->concl.ant;
    if (k >= ant.size() || ant[k] != left->concl.con)
        fail(Rl::Cut, "cut formula " + to_string(left->concl.con) + " not at position " + std::to_string(k) + " of " +
                          to_string(right->concl));
    return make(Rl::Cut, {k}, {cat(cat(slice(ant, 0, k), left->concl.ant), slice(ant, k + 1)), right->concl.con},
                {left, right});
}

DerivSP s_tl(const DerivSP& prem, std::size_t k) {
    const Seq& ant = prem->concl.ant;
    if (k + 2 > ant.size()) fail(Rl::TL, "position " + std::to_string(k) + " out of range in " + to_string(prem->concl));
    Seq na = slice(ant, 0, k);
    na.push_back(Formula::tensor(ant[k], ant[k + 1]));
    na = cat(na, slice(ant, k + 2));
    return make(Rl::TL, {k}, {na, prem->concl.con}, {prem});
}

DerivSP s_tr(const DerivSP& left, const DerivSP& right) {
    return make(Rl::TR, {}, {cat(left->concl.ant, right->concl.ant), Formula::tensor(left->concl.con, right->concl.con)},
                {left, right});
}

DerivSP s_impl(const DerivSP& left, const DerivSP& right) {
    const Seq& ant = right->concl.ant;
    if (ant.empty()) fail(Rl::ImpL, "right premise has an empty antecedent");
    Seq na = left->concl.ant;
    na.push_back(Formula::imp(left->concl.con, ant[0]));
    return make(Rl::ImpL, {}, {cat(na, slice(ant, 1)), right->concl.con}, {left, right});
}

DerivSP s_impr(const DerivSP& prem) {
    const Seq& ant = prem->concl.ant;
    if (ant.empty()) fail(Rl::ImpR, "premise has an empty antecedent");
    return make(Rl::ImpR, {}, {slice(ant, 1), Formula::imp(ant[0], prem->concl.con)}, {prem});
}

namespace {

std::size_t arity(Rl r) {
    switch (r) {
        case Rl::Ax:
        case Rl::AxI: return 0;
        case Rl::Weak:
        case Rl::Int:
        case Rl::TL:
        case Rl::ImpR: return 1;
        default: return 2;
    }
}

std::size_t param_count(Rl r) { return r == Rl::Int || r == Rl::Cut || r == Rl::TL ? 1 : 0; }

DerivSP rebuild(Rl r, const std::vector<std::size_t>& p, const std::vector<DerivSP>& k, const SequentS& concl) {
    if (k.size() != arity(r)) fail(r, "expected " + std::to_string(arity(r)) + " premises");
    if (p.size() != param_count(r)) fail(r, "expected " + std::to_string(param_count(r)) + " parameters");
    switch (r) {
        case Rl::Ax:
            if (concl.ant.size() != 1 || concl.ant[0] != concl.con) fail(r, "not an axiom: " + to_string(concl));
            return s_ax(concl.con);
        case Rl::AxI: return s_axi();
        case Rl::Weak: return s_weak(k[0]);
        case Rl::Int: return s_int(k[0], p[0]);
        case Rl::Cut: return s_cut(k[0], k[1], p[0]);
        case Rl::TL: return s_tl(k[0], p[0]);
        case Rl::TR: return s_tr(k[0], k[1]);
        case Rl::ImpL: return s_impl(k[0], k[1]);
        case Rl::ImpR: return s_impr(k[0]);
    }
    fail(r, "unknown rule");
}

DerivSP check_rec(const DerivS& d, const std::string& where) {
    std::vector<DerivSP> kids;
    for (std::size_t i = 0; i < d.kids.size(); ++i) kids.push_back(check_rec(*d.kids[i], where + "." + std::to_string(i + 1)));
    DerivSP r;
    try {
        r = rebuild(d.rule, d.params, kids, d.concl);
    } catch (const DerivationError& e) {
        throw DerivationError("node " + where + ": " + e.what());
    }
    if (!(r->concl == d.concl))
        throw DerivationError("node " + where + ": " + rule_name(d.rule) + " yields " + to_string(r->concl) +
                              " but the node states " + to_string(d.concl));
    return r;
}

}  // namespace

SequentS check_derivation_s(const DerivS& d) { return check_rec(d, "root")->concl; }

bool is_cut_free(const DerivS& d) {
    if (d.rule == Rl::Cut) return false;
    return std::all_of(d.kids.begin(), d.kids.end(), [](const DerivSP& k) { return is_cut_free(*k); });
}

std::size_t node_count(const DerivS& d) {
    std::size_t n = 1;
    for (const auto& k : d.kids) n += node_count(*k);
    return n;
}

TreeText to_tree(const DerivS& d) {
    TreeText t;
    t.rule = rule_name(d.rule);
    t.ints = d.params;
    t.sequent = to_string(d.concl);
    for (const auto& k : d.kids) t.kids.push_back(to_tree(*k));
    return t;
}

DerivSP from_tree_s(const TreeText& t) {
    static const std::map<std::string, Rl> names = {{"ax", Rl::Ax},   {"axi", Rl::AxI},  {"weak", Rl::Weak},
                                                    {"int", Rl::Int}, {"cut", Rl::Cut},  {"tl", Rl::TL},
                                                    {"tr", Rl::TR},   {"impl", Rl::ImpL}, {"impr", Rl::ImpR}};
    auto it = names.find(t.rule);
    if (it == names.end()) throw DerivationError("unknown S rule '" + t.rule + "'");
    std::vector<DerivSP> kids;
    for (const auto& k : t.kids) kids.push_back(from_tree_s(k));
    SequentS stated = parse_sequent_s(t.sequent);
    DerivSP d = rebuild(it->second, t.ints, kids, stated);
    if (!(d->concl == stated))
        throw DerivationError(t.rule + ": yields " + to_string(d->concl) + " but the node states " + to_string(stated));
    return d;
}

std::string to_string(const DerivS& d) { return to_string(to_tree(d)); }

DerivSP parse_derivation_s(std::string_view text) { return from_tree_s(parse_tree_text(text)); }

DerivSP permute_to(const DerivSP& d, const Seq& target) {
    Seq cur = d->concl.ant;
    if (cur.size() != target.size()) throw std::invalid_argument("permute_to: antecedent sizes differ");
    DerivSP r = d;
    for (std::size_t i = 0; i < target.size(); ++i) {
        std::size_t j = i;
        while (j < cur.size() && cur[j] != target[i]) ++j;
        if (j == cur.size()) throw std::invalid_argument("permute_to: target is not a permutation of the antecedent");
        for (; j > i; --j) {
            r = s_int(r, j - 1);
            std::swap(cur[j - 1], cur[j]);
        }
    }
    return r;
}

// ---------- proof search ----------

namespace {

void polarity(const Formula& f, int sign, std::map<std::string, int>& m) {
    switch (f.kind()) {
        case Formula::Kind::Letter: m[f.name()] += sign; break;
        case Formula::Kind::Unit: break;
        case Formula::Kind::Tensor:
            polarity(f.left(), sign, m);
            polarity(f.right(), sign, m);
            break;
        case Formula::Kind::Imp:
            polarity(f.left(), -sign, m);
            polarity(f.right(), sign, m);
            break;
    }
}

// Each axiom pairs a positive with a negative occurrence, so derivable sequents balance.
bool polarity_balanced(const Seq& ant, const Formula& con) {
    std::map<std::string, int> m;
    for (const auto& f : ant) polarity(f, -1, m);
    polarity(con, 1, m);
    return std::all_of(m.begin(), m.end(), [](const auto& kv) { return kv.second == 0; });
}

Seq sorted(Seq s) {
    std::sort(s.begin(), s.end());
    return s;
}

Seq without(const Seq& s, std::size_t i) {
    Seq r = s;
    r.erase(r.begin() + static_cast<std::ptrdiff_t>(i));
    return r;
}

// Calls fn(left, right) for every split of a sorted multiset into two sorted sub-multisets,
// stopping when fn returns true.
template <class Fn>
bool for_each_split(const Seq& s, Fn&& fn) {
    std::vector<std::pair<std::size_t, std::size_t>> groups;  // start, count
    for (std::size_t i = 0; i < s.size();) {
        std::size_t j = i;
        while (j < s.size() && s[j] == s[i]) ++j;
        groups.emplace_back(i, j - i);
        i = j;
    }
    std::vector<std::size_t> take(groups.size(), 0);
    while (true) {
        Seq l, r;
        for (std::size_t g = 0; g < groups.size(); ++g)
            for (std::size_t c = 0; c < groups[g].second; ++c) (c < take[g] ? l : r).push_back(s[groups[g].first]);
        if (fn(l, r)) return true;
        std::size_t g = 0;
        while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
        if (g == groups.size()) return false;
        ++take[g];
    }
}

class SearchS {
public:
    std::optional<DerivSP> solve(const Seq& ant, const Formula& con) {
        if (!polarity_balanced(ant, con)) return std::nullopt;
        std::string key;
        for (const auto& f : ant) key += to_string(f) + ",";
        key += "|-" + to_string(con);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto r = attempt(ant, con);
        memo_.emplace(key, r);
        return r;
    }

private:
    std::optional<DerivSP> attempt(const Seq& ant, const Formula& con) {
        if (ant.size() == 1 && ant[0] == con) return s_ax(con);
        if (ant.empty() && con.is_unit()) return s_axi();

        // tensor on the left is invertible
        for (std::size_t i = 0; i < ant.size(); ++i) {
            if (!ant[i].is_tensor()) continue;
            Seq prem = without(ant, i);
            prem.push_back(ant[i].left());
            prem.push_back(ant[i].right());
            auto r = solve(sorted(prem), con);
            if (!r) return std::nullopt;
            Seq order = slice(ant, 0, i);
            order.push_back(ant[i].left());
            order.push_back(ant[i].right());
            return s_tl(permute_to(*r, cat(order, slice(ant, i + 1))), i);
        }

        if (con.is_tensor()) {
            std::optional<DerivSP> found;
            for_each_split(ant, [&](const Seq& l, const Seq& r) {
                auto dl = solve(l, con.left());
                if (!dl) return false;
                auto dr = solve(r, con.right());
                if (!dr) return false;
                found = permute_to(s_tr(*dl, *dr), ant);
                return true;
            });
            if (found) return found;
        }

        // implication on the right is invertible
        if (con.is_imp()) {
            auto r = solve(sorted(cat({con.left()}, ant)), con.right());
            if (!r) return std::nullopt;
            return s_impr(permute_to(*r, cat({con.left()}, ant)));
        }

        for (std::size_t i = 0; i < ant.size(); ++i) {
            if (!ant[i].is_imp() || (i > 0 && ant[i] == ant[i - 1])) continue;
            Seq rest = without(ant, i);
            const Formula& a = ant[i].left();
            const Formula& b = ant[i].right();
            std::optional<DerivSP> found;
            for_each_split(rest, [&](const Seq& g, const Seq& d) {
                auto dl = solve(g, a);
                if (!dl) return false;
                Seq rant = cat({b}, d);
                auto dr = solve(sorted(rant), con);
                if (!dr) return false;
                found = permute_to(s_impl(*dl, permute_to(*dr, rant)), ant);
                return true;
            });
            if (found) return found;
        }

        for (std::size_t i = 0; i < ant.size(); ++i) {
            if (!ant[i].is_unit()) continue;
            auto r = solve(without(ant, i), con);
            if (!r) return std::nullopt;
            return permute_to(s_weak(*r), ant);
        }
        return std::nullopt;
    }

    std::map<std::string, std::optional<DerivSP>> memo_;
};

}  // namespace

std::optional<DerivSP> derivable_s(const SequentS& s) {
    SearchS search;
    auto r = search.solve(sorted(s.ant), s.con);
    if (!r) return std::nullopt;
    return permute_to(*r, s.ant);
}

std::pair<DerivSP, DerivSP> const_iso_s(const Formula& a) {
    if (!is_constant(a)) throw PreconditionError("const_iso_s: " + to_string(a) + " is not constant");
    auto to_unit = derivable_s({{a}, Formula::unit()});
    auto from_unit = derivable_s({{Formula::unit()}, a});
    if (!to_unit || !from_unit) throw std::logic_error("const_iso_s: no derivation found for " + to_string(a));
    return {*to_unit, *from_unit};
}

DerivSP const_const_s(const Seq& g, const Formula& a) {
    for (const auto& f : g)
        if (!is_constant(f)) throw PreconditionError("const_const_s: " + to_string(f) + " is not constant");
    if (!is_constant(a)) throw PreconditionError("const_const_s: " + to_string(a) + " is not constant");
    auto d = derivable_s({g, a});
    if (!d) throw std::logic_error("const_const_s: no derivation found for " + to_string(SequentS{g, a}));
    return *d;
}

// ---------- constant consequents ----------

namespace {

bool all_constant(const Seq& s) {
    return std::all_of(s.begin(), s.end(), [](const Formula& f) { return is_constant(f); });
}

void const_proper_rec(const DerivS& d, const std::string& where, std::vector<std::string>& steps) {
    auto note = [&](const std::string& what) { steps.push_back(what + " at " + where); };
    auto kid = [&](std::size_t i) { return where + "." + std::to_string(i + 1); };
    switch (d.rule) {
        case Rl::Ax:
        case Rl::AxI: note("base"); break;
        case Rl::Int:
            note("interchange");
            const_proper_rec(*d.kids[0], kid(0), steps);
            break;
        case Rl::Weak:
            note("case 1");
            const_proper_rec(*d.kids[0], kid(0), steps);
            break;
        case Rl::TL:
            note("case 2");
            const_proper_rec(*d.kids[0], kid(0), steps);
            break;
        case Rl::TR:
            note("case 3");
            const_proper_rec(*d.kids[0], kid(0), steps);
            const_proper_rec(*d.kids[1], kid(1), steps);
            break;
        case Rl::ImpL: {
            note("case 4");
            const_proper_rec(*d.kids[1], kid(1), steps);
            const Formula& principal = d.concl.ant[d.kids[0]->concl.ant.size()];
            if (!is_constant(principal.left()))
                throw std::logic_error("constant consequent: " + to_string(principal) + " at " + where +
                                       " is not proper");
            const_proper_rec(*d.kids[0], kid(0), steps);
            break;
        }
        case Rl::ImpR:
            note("case 5");
            const_proper_rec(*d.kids[0], kid(0), steps);
            break;
        case Rl::Cut: throw PreconditionError("check_const_proper: derivation has a cut at " + where);
    }
    if (!all_constant(d.concl.ant))
        throw std::logic_error("constant consequent: antecedent of " + to_string(d.concl) + " at " + where +
                               " is not constant");
}

}  // namespace

ConstProperTrace check_const_proper(const DerivS& d) {
    SequentS s = check_derivation_s(d);
    if (!is_cut_free(d)) throw PreconditionError("check_const_proper: derivation is not cut-free");
    for (const auto& f : s.ant)
        if (!is_proper(f))
            throw PreconditionError("check_const_proper: antecedent is not proper (" + improper_witness(f) + ")");
    if (!is_constant(s.con)) throw PreconditionError("check_const_proper: consequent " + to_string(s.con) + " is not constant");
    ConstProperTrace t;
    const_proper_rec(d, "root", t.steps);
    t.constant = true;
    return t;
}

// ---------- splitting ----------

namespace {

using Mask = std::vector<bool>;
using Tags = std::vector<int>;

Seq pick(const Seq& s, const Mask& m, bool v) {
    Seq r;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (m[i] == v) r.push_back(s[i]);
    return r;
}

Seq pick(const Seq& s, const Tags& t, int v) {
    Seq r;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (t[i] == v) r.push_back(s[i]);
    return r;
}

template <class V>
V sub(const V& v, std::size_t from, std::size_t to) {
    return V(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(to));
}
template <class V>
V sub(const V& v, std::size_t from) {
    return sub(v, from, v.size());
}
template <class V, class T>
V prepend(T x, const V& v) {
    V r{x};
    r.insert(r.end(), v.begin(), v.end());
    return r;
}

Mask invert(const Mask& m) {
    Mask r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = !m[i];
    return r;
}

Mask tagged(const Tags& t, int v) {
    Mask r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = t[i] == v;
    return r;
}

template <class V>
V dup_at(const V& v, std::size_t k) {
    V r = v;
    r.insert(r.begin() + static_cast<std::ptrdiff_t>(k), v[k]);
    return r;
}

template <class V>
V swap_at(V v, std::size_t k) {
    typename V::value_type tmp = v[k];
    v[k] = v[k + 1];
    v[k + 1] = tmp;
    return v;
}

template <class V, class T>
std::size_t count_before(const V& v, std::size_t k, T x) {
    return static_cast<std::size_t>(std::count(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), x));
}

// From X |- I and Y |- C, a derivation of X, Y |- C through the cut with I * C |- C.
DerivSP absorb(const DerivSP& unit, const DerivSP& d) {
    if (unit->concl.ant.empty()) return d;
    DerivSP right = s_tl(s_weak(s_ax(d->concl.con)), 0);
    return s_cut(s_tr(unit, d), right, 0);
}

void tally(std::map<std::string, std::size_t>* cases, const std::string& name) {
    if (cases) ++(*cases)[name];
}

class Splitter {
public:
    explicit Splitter(std::map<std::string, std::size_t>* cases) : cases_(cases) {}

    // (D-part |- I, G-part |- con) with mask true marking D.
    SplitPair weak(const DerivSP& d, const Mask& m) {
        SplitPair r = weak_raw(d, m);
        const Seq& ant = d->concl.ant;
        return {permute_to(r.first, pick(ant, m, true)), permute_to(r.second, pick(ant, m, false))};
    }

    // (G-part |- A, D-part |- B) for con A * B, mask true marking D.
    SplitPair tensor(const DerivSP& d, const Mask& m) {
        SplitPair r = tensor_raw(d, m);
        const Seq& ant = d->concl.ant;
        return {permute_to(r.first, pick(ant, m, false)), permute_to(r.second, pick(ant, m, true))};
    }

    // (G-part |- A, B, D-part |- C); tags 0 = G, 1 = the implication A -o B, 2 = D.
    SplitPair imp(const DerivSP& d, const Tags& t) {
        SplitPair r = imp_raw(d, t);
        const Seq& ant = d->concl.ant;
        return {permute_to(r.first, pick(ant, t, 0)), permute_to(r.second, prepend(b_, pick(ant, t, 2)))};
    }

    Formula a_, b_;

private:
    SplitPair weak_raw(const DerivSP& d, const Mask& m) {
        const Seq& ant = d->concl.ant;
        const Formula& con = d->concl.con;
        switch (d->rule) {
            case Rl::Ax:
                tally(cases_, "weak: axiom");
                if (m[0]) return {const_iso_s(con).first, const_const_s({}, con)};
                return {s_axi(), d};
            case Rl::AxI: tally(cases_, "weak: axiom"); return {s_axi(), s_axi()};
            case Rl::Weak: {
                tally(cases_, "weak: case 1");
                SplitPair r = weak(d->kids[0], sub(m, 1));
                if (m[0]) return {s_weak(r.first), r.second};
                return {r.first, s_weak(r.second)};
            }
            case Rl::Int: tally(cases_, "weak: case 2"); return weak(d->kids[0], swap_at(m, d->params[0]));
            case Rl::TL: {
                tally(cases_, "weak: case 3");
                std::size_t k = d->params[0];
                SplitPair r = weak(d->kids[0], dup_at(m, k));
                std::size_t at = count_before(m, k, m[k]);
                if (m[k]) return {s_tl(r.first, at), r.second};
                return {r.first, s_tl(r.second, at)};
            }
            case Rl::TR: {
                tally(cases_, "weak: case 4");
                std::size_t n1 = d->kids[0]->concl.ant.size();
                SplitPair l = weak(d->kids[0], sub(m, 0, n1));
                SplitPair r = weak(d->kids[1], sub(m, n1));
                return {absorb(l.first, r.first), s_tr(l.second, r.second)};
            }
            case Rl::ImpL: {
                tally(cases_, "weak: case 5");
                std::size_t n1 = d->kids[0]->concl.ant.size();
                if (!m[n1]) {
                    SplitPair l = weak(d->kids[0], sub(m, 0, n1));
                    SplitPair r = weak(d->kids[1], prepend(false, sub(m, n1 + 1)));
                    return {absorb(l.first, r.first), s_impl(l.second, r.second)};
                }
                SplitPair l = weak(d->kids[0], invert(sub(m, 0, n1)));  // (G1 |- I, D1 |- A)
                SplitPair r = weak(d->kids[1], prepend(true, sub(m, n1 + 1)));
                return {s_impl(l.second, r.first), absorb(l.first, r.second)};
            }
            case Rl::ImpR: {
                tally(cases_, "weak: case 6");
                SplitPair r = weak(d->kids[0], prepend(false, m));
                return {r.first, s_impr(r.second)};
            }
            case Rl::Cut: break;
        }
        (void)ant;
        throw PreconditionError("split: derivation has a cut at " + to_string(d->concl) + " |- " + to_string(con));
    }

    SplitPair tensor_raw(const DerivSP& d, const Mask& m) {
        const Formula& con = d->concl.con;
        switch (d->rule) {
            case Rl::Ax: {
                tally(cases_, "tensor: axiom");
                const Formula &a = con.left(), &b = con.right();
                if (!m[0]) {
                    DerivSP g = s_tl(permute_to(absorb(const_iso_s(b).first, s_ax(a)), {a, b}), 0);
                    return {g, const_const_s({}, b)};
                }
                DerivSP dd = s_tl(absorb(const_iso_s(a).first, s_ax(b)), 0);
                return {const_const_s({}, a), dd};
            }
            case Rl::Weak: {
                tally(cases_, "tensor: weakening");
                SplitPair r = tensor(d->kids[0], sub(m, 1));
                if (m[0]) return {r.first, s_weak(r.second)};
                return {s_weak(r.first), r.second};
            }
            case Rl::Int: tally(cases_, "tensor: interchange"); return tensor(d->kids[0], swap_at(m, d->params[0]));
            case Rl::TL: {
                tally(cases_, "tensor: tensor-left");
                std::size_t k = d->params[0];
                SplitPair r = tensor(d->kids[0], dup_at(m, k));
                std::size_t at = count_before(m, k, m[k]);
                if (m[k]) return {r.first, s_tl(r.second, at)};
                return {s_tl(r.first, at), r.second};
            }
            case Rl::TR: {
                tally(cases_, "tensor: case 1");
                std::size_t n1 = d->kids[0]->concl.ant.size();
                SplitPair l = weak(d->kids[0], sub(m, 0, n1));          // (D1 |- I, G1 |- A)
                SplitPair r = weak(d->kids[1], invert(sub(m, n1)));     // (G2 |- I, D2 |- B)
                return {absorb(r.first, l.second), absorb(l.first, r.second)};
            }
            case Rl::ImpL: {
                tally(cases_, "tensor: case 2");
                std::size_t n1 = d->kids[0]->concl.ant.size();
                if (m[n1]) {
                    SplitPair l = weak(d->kids[0], invert(sub(m, 0, n1)));  // (G1 |- I, D1 |- X)
                    SplitPair r = tensor(d->kids[1], prepend(true, sub(m, n1 + 1)));
                    return {absorb(l.first, r.first), s_impl(l.second, r.second)};
                }
                SplitPair l = weak(d->kids[0], sub(m, 0, n1));  // (D1 |- I, G1 |- X)
                SplitPair r = tensor(d->kids[1], prepend(false, sub(m, n1 + 1)));
                return {s_impl(l.second, r.first), absorb(l.first, r.second)};
            }
            case Rl::AxI:
            case Rl::ImpR: throw std::logic_error("split_tensor: consequent is not a tensor");
            case Rl::Cut: break;
        }
        throw PreconditionError("split: derivation has a cut at " + to_string(d->concl));
    }

    SplitPair imp_raw(const DerivSP& d, const Tags& t) {
        const Seq& ant = d->concl.ant;
        const Formula& con = d->concl.con;
        switch (d->rule) {
            case Rl::Ax: {
                tally(cases_, "imp: axiom");
                DerivSP dd = s_impr(absorb(const_iso_s(a_).first, s_ax(b_)));
                return {const_const_s({}, a_), dd};
            }
            case Rl::Weak: {
                tally(cases_, "imp: weakening");
                SplitPair r = imp(d->kids[0], sub(t, 1));
                if (t[0] == 0) return {s_weak(r.first), r.second};
                return {r.first, s_weak(r.second)};
            }
            case Rl::Int: tally(cases_, "imp: interchange"); return imp(d->kids[0], swap_at(t, d->params[0]));
            case Rl::TL: {
                tally(cases_, "imp: tensor-left");
                std::size_t k = d->params[0];
                SplitPair r = imp(d->kids[0], dup_at(t, k));
                std::size_t at = count_before(t, k, t[k]);
                if (t[k] == 0) return {s_tl(r.first, at), r.second};
                return {r.first, s_tl(r.second, at + 1)};
            }
            case Rl::ImpR: {
                tally(cases_, "imp: imp-right");
                SplitPair r = imp(d->kids[0], prepend(2, t));
                Seq rest = pick(ant, t, 2);
                return {r.first, s_impr(permute_to(r.second, cat({con.left(), b_}, rest)))};
            }
            case Rl::TR: {
                tally(cases_, "imp: case 1");
                std::size_t n1 = d->kids[0]->concl.ant.size();
                std::size_t p = static_cast<std::size_t>(std::find(t.begin(), t.end(), 1) - t.begin());
                if (p < n1) {
                    SplitPair l = imp(d->kids[0], sub(t, 0, n1));
                    SplitPair r = weak(d->kids[1], tagged(sub(t, n1), 0));  // (G2 |- I, D2 |- C2)
                    return {absorb(r.first, l.first), s_tr(l.second, r.second)};
                }
                SplitPair l = weak(d->kids[0], tagged(sub(t, 0, n1), 0));  // (G1 |- I, D1 |- C1)
                SplitPair r = imp(d->kids[1], sub(t, n1));
                return {absorb(l.first, r.first), s_tr(l.second, r.second)};
            }
            case Rl::ImpL: return imp_left(d, t);
            case Rl::AxI:
            case Rl::Cut: break;
        }
        throw PreconditionError("split: derivation has a cut at " + to_string(d->concl));
    }

    SplitPair imp_left(const DerivSP& d, const Tags& t) {
        const DerivSP& left = d->kids[0];
        const DerivSP& right = d->kids[1];
        std::size_t n1 = left->concl.ant.size();
        const Formula& rule_imp = d->concl.ant[n1];
        Tags lt = sub(t, 0, n1), rt = sub(t, n1 + 1);
        bool in_left = std::find(lt.begin(), lt.end(), 1) != lt.end();
        int r_tag = t[n1];
        if (r_tag == 1) {
            tally(cases_, "imp: case 2.1");
            SplitPair l = weak(left, tagged(lt, 2));                    // (D1 |- I, G1 |- A)
            SplitPair r = weak(right, prepend(false, tagged(rt, 0)));   // (G2 |- I, B, D2 |- C)
            return {absorb(r.first, l.second), absorb(l.first, r.second)};
        }
        if (r_tag == 2) {
            if (!in_left) {
                tally(cases_, "imp: case 2.2 (D, right premise)");
                SplitPair l = weak(left, tagged(lt, 0));  // (G1 |- I, D1 |- D)
                SplitPair r = imp(right, prepend(2, rt));  // (G2 |- A, B, E, D2 |- C)
                Seq rest = pick(sub(right->concl.ant, 1), rt, 2);
                DerivSP moved = permute_to(r.second, cat({rule_imp.right(), b_}, rest));
                return {absorb(l.first, r.first), s_impl(l.second, moved)};
            }
            tally(cases_, "imp: case 2.2 (D, left premise)");
            SplitPair l = imp(left, lt);                                 // (G1 |- A, B, D1 |- D)
            SplitPair r = weak(right, prepend(false, tagged(rt, 0)));   // (G2 |- I, E, D2 |- C)
            return {absorb(r.first, l.first), s_impl(l.second, r.second)};
        }
        if (!in_left) {
            tally(cases_, "imp: case 2.2");
            SplitPair l = weak(left, tagged(lt, 2));  // (D1 |- I, G1 |- D)
            SplitPair r = imp(right, prepend(0, rt));  // (E, G2 |- A, B, D2 |- C)
            return {s_impl(l.second, r.first), absorb(l.first, r.second)};
        }
        tally(cases_, "imp: case 2.3");
        SplitPair r = weak(right, prepend(true, tagged(rt, 0)));  // (E, G2 |- I, D2 |- C)
        auto unit = derivable_s(r.first->concl);
        if (!unit) throw std::logic_error("split_imp: no cut-free derivation of " + to_string(r.first->concl));
        check_const_proper(**unit);
        if (!is_constant(rule_imp.left()))
            throw std::logic_error("split_imp: " + to_string(rule_imp) + " has a constant consequent only");
        check_const_proper(*left);
        const Seq& ant = d->concl.ant;
        DerivSP g = const_const_s(pick(ant, t, 0), a_);
        DerivSP bd = const_const_s(prepend(b_, pick(left->concl.ant, lt, 2)), Formula::unit());
        return {g, absorb(bd, r.second)};
    }

    std::map<std::string, std::size_t>* cases_;
};

std::set<std::string> letters_of(const Seq& s, std::initializer_list<const Formula*> extra) {
    std::set<std::string> r = letters(s);
    for (const Formula* f : extra) {
        auto l = letters(*f);
        r.insert(l.begin(), l.end());
    }
    return r;
}

void require_prime(const std::set<std::string>& x, const std::set<std::string>& y, const std::string& what) {
    for (const auto& l : x)
        if (y.count(l)) throw PreconditionError(what + ": letter " + l + " occurs on both sides");
}

// Assigns every antecedent position to one of the groups, matching multiplicities;
// a position may only join a group whose forbidden letters it avoids.
std::vector<int> assign_groups(const Seq& ant, const std::vector<Seq>& groups,
                               const std::vector<std::set<std::string>>& forbidden, const std::string& what) {
    std::vector<std::map<std::string, int>> need(groups.size());
    std::size_t total = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (const auto& f : groups[g]) ++need[g][to_string(f)];
        total += groups[g].size();
    }
    if (total != ant.size()) throw PreconditionError(what + ": antecedent is not a permutation of the given parts");
    std::vector<int> r;
    for (const auto& f : ant) {
        std::string key = to_string(f);
        auto ls = letters(f);
        int chosen = -1;
        for (std::size_t g = 0; g < groups.size() && chosen < 0; ++g) {
            if (need[g][key] == 0) continue;
            bool ok = std::none_of(ls.begin(), ls.end(), [&](const std::string& l) { return forbidden[g].count(l) > 0; });
            if (ok) chosen = static_cast<int>(g);
        }
        if (chosen < 0) throw PreconditionError(what + ": antecedent is not a permutation of the given parts");
        --need[static_cast<std::size_t>(chosen)][key];
        r.push_back(chosen);
    }
    return r;
}

void require_input(const DerivSP& d, const std::string& what) {
    check_derivation_s(*d);
    if (!is_cut_free(*d)) throw PreconditionError(what + ": derivation is not cut-free");
}

}  // namespace

SplitPair split_weak(const DerivSP& d, const Seq& g, const Seq& delta, std::map<std::string, std::size_t>* cases) {
    require_input(d, "split_weak");
    const Formula& a = d->concl.con;
    auto lg = letters_of(g, {&a});
    auto ld = letters(delta);
    require_prime(ld, lg, "split_weak");
    auto groups = assign_groups(d->concl.ant, {g, delta}, {ld, lg}, "split_weak");
    Mask m;
    for (int x : groups) m.push_back(x == 1);
    Splitter s(cases);
    SplitPair r = s.weak(d, m);
    return {permute_to(r.first, delta), permute_to(r.second, g)};
}

SplitPair split_tensor(const DerivSP& d, const Seq& g, const Seq& delta, std::map<std::string, std::size_t>* cases) {
    require_input(d, "split_tensor");
    const Formula& c = d->concl.con;
    if (!c.is_tensor()) throw PreconditionError("split_tensor: consequent " + to_string(c) + " is not a tensor");
    auto lg = letters_of(g, {&c.left()});
    auto ld = letters_of(delta, {&c.right()});
    require_prime(lg, ld, "split_tensor");
    auto groups = assign_groups(d->concl.ant, {g, delta}, {ld, lg}, "split_tensor");
    Mask m;
    for (int x : groups) m.push_back(x == 1);
    Splitter s(cases);
    SplitPair r = s.tensor(d, m);
    return {permute_to(r.first, g), permute_to(r.second, delta)};
}

SplitPair split_imp(const DerivSP& d, const Seq& g, const Formula& a, const Formula& b, const Seq& delta,
                    std::map<std::string, std::size_t>* cases) {
    require_input(d, "split_imp");
    const SequentS& s = d->concl;
    for (const auto& f : s.ant)
        if (!is_proper(f)) throw PreconditionError("split_imp: sequent is not proper (" + improper_witness(f) + ")");
    if (!is_proper(s.con)) throw PreconditionError("split_imp: sequent is not proper (" + improper_witness(s.con) + ")");
    auto left = letters_of(g, {&a});
    auto right = letters_of(delta, {&b, &s.con});
    require_prime(left, right, "split_imp");
    Formula ab = Formula::imp(a, b);
    auto tags = assign_groups(s.ant, {g, {ab}, delta}, {right, {}, left}, "split_imp");
    Splitter sp(cases);
    sp.a_ = a;
    sp.b_ = b;
    SplitPair r = sp.imp(d, tags);
    return {permute_to(r.first, g), permute_to(r.second, prepend(b, delta))};
}

}  // namespace mlc
