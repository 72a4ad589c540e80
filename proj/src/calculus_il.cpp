#include "mlc/calculus_il.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mlc {

namespace {

Alpha cat(const Alpha& a, const Alpha& b) { return tensor_alpha(a, b); }
Alpha cat(const Alpha& a, const Alpha& b, const Alpha& c) { return cat(cat(a, b), c); }
Alpha cat(const Alpha& a, const Alpha& b, const Alpha& c, const Alpha& d) { return cat(cat(a, b, c), d); }

DerivILP make(DerivIL::Rule r, std::vector<std::size_t> params, SequentIL concl, std::vector<DerivILP> kids) {
    auto d = std::make_shared<DerivIL>();
    d->rule = r;
    d->params = std::move(params);
    d->concl = std::move(concl);
    d->kids = std::move(kids);
    return d;
}

[[noreturn]] void fail(DerivIL::Rule r, const std::string& msg) {
    throw DerivationError(std::string(rule_name(r)) + ": " + msg);
}

}  // namespace

const char* rule_name(DerivIL::Rule r) {
    switch (r) {
        case DerivIL::Rule::Ax: return "ax";
        case DerivIL::Rule::Int: return "int";
        case DerivIL::Rule::Cut: return "cut";
        case DerivIL::Rule::ImpL: return "impl";
        case DerivIL::Rule::ImpR: return "impr";
        case DerivIL::Rule::TT: return "tt";
    }
    return "?";
}

DerivILP il_ax(const Alpha& a) { return make(DerivIL::Rule::Ax, {}, {a, a}, {}); }

DerivILP il_int(const DerivILP& prem, std::size_t g, std::size_t a, std::size_t b) {
    const Alpha& ant = prem->concl.ant;
    if (g + a + b > ant.size())
        fail(DerivIL::Rule::Int, "blocks " + std::to_string(g) + "+" + std::to_string(a) + "+" + std::to_string(b) +
                                     " exceed antecedent of " + to_string(prem->concl));
    Alpha na = cat(ant.slice(0, g), ant.slice(g + a, g + a + b), ant.slice(g, g + a), ant.slice(g + a + b));
    return make(DerivIL::Rule::Int, {g, a, b}, {na, prem->concl.con}, {prem});
}

DerivILP il_cut(const DerivILP& left, const DerivILP& right, std::size_t g) {
    const Alpha& a = left->concl.con;
    const Alpha& ant = right->concl.ant;
    if (g + a.size() > ant.size() || ant.slice(g, g + a.size()) != a)
        fail(DerivIL::Rule::Cut, "cut formula " + to_string(a) + " not found at factor " + std::to_string(g) + " of " +
                                     to_string(right->concl));
    Alpha na = cat(ant.slice(0, g), left->concl.ant, ant.slice(g + a.size()));
    return make(DerivIL::Rule::Cut, {g}, {na, right->concl.con}, {left, right});
}

DerivILP il_impl(const DerivILP& left, const DerivILP& right, std::size_t b) {
    const Alpha& ant = right->concl.ant;
    if (b > ant.size()) fail(DerivIL::Rule::ImpL, "block " + std::to_string(b) + " exceeds " + to_string(right->concl));
    Alpha imp = Alpha::imp(left->concl.con, ant.slice(0, b));
    Alpha na = cat(left->concl.ant, imp, ant.slice(b));
    return make(DerivIL::Rule::ImpL, {b}, {na, right->concl.con}, {left, right});
}

DerivILP il_impr(const DerivILP& prem, std::size_t a) {
    const Alpha& ant = prem->concl.ant;
    if (a > ant.size()) fail(DerivIL::Rule::ImpR, "block " + std::to_string(a) + " exceeds " + to_string(prem->concl));
    return make(DerivIL::Rule::ImpR, {a}, {ant.slice(a), Alpha::imp(ant.slice(0, a), prem->concl.con)}, {prem});
}

DerivILP il_tt(const DerivILP& left, const DerivILP& right) {
    return make(DerivIL::Rule::TT, {},
                {cat(left->concl.ant, right->concl.ant), cat(left->concl.con, right->concl.con)}, {left, right});
}

namespace {

std::size_t arity(DerivIL::Rule r) {
    switch (r) {
        case DerivIL::Rule::Ax: return 0;
        case DerivIL::Rule::Int:
        case DerivIL::Rule::ImpR: return 1;
        default: return 2;
    }
}

std::size_t param_count(DerivIL::Rule r) {
    switch (r) {
        case DerivIL::Rule::Ax:
        case DerivIL::Rule::TT: return 0;
        case DerivIL::Rule::Int: return 3;
        default: return 1;
    }
}

// Rebuilds one node from its (already built) kids, checking the figure.
DerivILP rebuild(DerivIL::Rule r, const std::vector<std::size_t>& p, const std::vector<DerivILP>& k,
                 const SequentIL& concl) {
    if (k.size() != arity(r)) fail(r, "expected " + std::to_string(arity(r)) + " premises");
    if (p.size() != param_count(r)) fail(r, "expected " + std::to_string(param_count(r)) + " parameters");
    switch (r) {
        case DerivIL::Rule::Ax:
            if (concl.ant != concl.con) fail(r, "not an axiom: " + to_string(concl));
            return il_ax(concl.ant);
        case DerivIL::Rule::Int: return il_int(k[0], p[0], p[1], p[2]);
        case DerivIL::Rule::Cut: return il_cut(k[0], k[1], p[0]);
        case DerivIL::Rule::ImpL: return il_impl(k[0], k[1], p[0]);
        case DerivIL::Rule::ImpR: return il_impr(k[0], p[0]);
        case DerivIL::Rule::TT: return il_tt(k[0], k[1]);
    }
    fail(r, "unknown rule");
}

DerivILP check_rec(const DerivIL& d, const std::string& where) {
    std::vector<DerivILP> kids;
    for (std::size_t i = 0; i < d.kids.size(); ++i) kids.push_back(check_rec(*d.kids[i], where + "." + std::to_string(i + 1)));
    DerivILP r;
    try {
        r = rebuild(d.rule, d.params, kids, d.concl);
    } catch (const DerivationError& e) {
        throw DerivationError("node " + where + ": " + e.what());
    }
    if (r->concl != d.concl)
        throw DerivationError("node " + where + ": " + rule_name(d.rule) + " yields " + to_string(r->concl) +
                              " but the node states " + to_string(d.concl));
    return r;
}

}  // namespace

SequentIL check_derivation_il(const DerivIL& d) { return check_rec(d, "root")->concl; }

bool is_cut_free(const DerivIL& d) { return cut_count(d) == 0; }

std::size_t node_count(const DerivIL& d) {
    std::size_t n = 1;
    for (const auto& k : d.kids) n += node_count(*k);
    return n;
}

std::size_t cut_count(const DerivIL& d) {
    std::size_t n = d.rule == DerivIL::Rule::Cut ? 1 : 0;
    for (const auto& k : d.kids) n += cut_count(*k);
    return n;
}

// ---------- text format ----------

TreeText to_tree(const DerivIL& d) {
    TreeText t;
    t.rule = rule_name(d.rule);
    t.ints = d.params;
    t.sequent = to_string(d.concl);
    for (const auto& k : d.kids) t.kids.push_back(to_tree(*k));
    return t;
}

DerivILP from_tree_il(const TreeText& t) {
    static const std::map<std::string, DerivIL::Rule> names = {
        {"ax", DerivIL::Rule::Ax},     {"int", DerivIL::Rule::Int},   {"cut", DerivIL::Rule::Cut},
        {"impl", DerivIL::Rule::ImpL}, {"impr", DerivIL::Rule::ImpR}, {"tt", DerivIL::Rule::TT}};
    auto it = names.find(t.rule);
    if (it == names.end()) throw DerivationError("unknown IL rule '" + t.rule + "'");
    std::vector<DerivILP> kids;
    for (const auto& k : t.kids) kids.push_back(from_tree_il(k));
    SequentIL stated = parse_sequent_il(t.sequent);
    DerivILP d = rebuild(it->second, t.ints, kids, stated);
    if (d->concl != stated)
        throw DerivationError(t.rule + ": yields " + to_string(d->concl) + " but the node states " + to_string(stated));
    return d;
}

std::string to_string(const DerivIL& d) { return to_string(to_tree(d)); }

DerivILP parse_derivation_il(std::string_view text) { return from_tree_il(parse_tree_text(text)); }

// ---------- coding ----------

Term code(const DerivIL& d) {
    const Alpha& ant = d.concl.ant;
    switch (d.rule) {
        case DerivIL::Rule::Ax: return Term::id(ant);
        case DerivIL::Rule::Int: {
            std::size_t g = d.params[0], a = d.params[1], b = d.params[2];
            // conclusion G*B*A*E
            Term swap = smart_tensor({Term::id(ant.slice(0, g)), Term::sym(ant.slice(g, g + b), ant.slice(g + b, g + b + a)),
                                      Term::id(ant.slice(g + a + b))});
            return smart_comp(code(*d.kids[0]), swap);
        }
        case DerivIL::Rule::Cut: {
            std::size_t g = d.params[0];
            const DerivIL& l = *d.kids[0];
            Term f = code(l);
            std::size_t c = l.concl.ant.size();
            Term mid = smart_tensor({Term::id(ant.slice(0, g)), f, Term::id(ant.slice(g + c))});
            return smart_comp(code(*d.kids[1]), mid);
        }
        case DerivIL::Rule::ImpL: {
            const DerivIL& l = *d.kids[0];
            const DerivIL& r = *d.kids[1];
            std::size_t c = l.concl.ant.size(), b = d.params[0];
            const Alpha& a = l.concl.con;
            Alpha bb = r.concl.ant.slice(0, b), e = r.concl.ant.slice(b);
            Term first = smart_tensor({code(l), Term::id(ant.slice(c, c + 1)), Term::id(e)});
            Term second = smart_tensor(Term::eps(a, bb), Term::id(e));
            return smart_comp(code(r), smart_comp(second, first));
        }
        case DerivIL::Rule::ImpR: {
            const DerivIL& p = *d.kids[0];
            Alpha a = p.concl.ant.slice(0, d.params[0]);
            return smart_comp(smart_imp(a, code(p)), Term::eta(a, ant));
        }
        case DerivIL::Rule::TT: return smart_tensor(code(*d.kids[0]), code(*d.kids[1]));
    }
    throw DerivationError("unknown rule");
}

DerivILP decode(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Id: return il_ax(t.a());
        case Term::Kind::Sym:  // a*b |- b*a from b*a |- b*a
            return il_int(il_ax(tensor_alpha(t.b(), t.a())), 0, t.b().size(), t.a().size());
        case Term::Kind::Eta: return il_impr(il_ax(tensor_alpha(t.a(), t.b())), t.a().size());
        case Term::Kind::Eps: return il_impl(il_ax(t.a()), il_ax(t.b()), t.b().size());
        case Term::Kind::Comp: return il_cut(decode(t.before()), decode(t.after()), 0);
        case Term::Kind::Tensor: {
            DerivILP d = decode(t.kids().back());
            for (std::size_t i = t.kids().size() - 1; i-- > 0;) d = il_tt(decode(t.kids()[i]), d);
            return d;
        }
        case Term::Kind::ImpF: {
            const Alpha& a = t.a();
            DerivILP body = decode(t.body());
            return il_impr(il_impl(il_ax(a), body, body->concl.ant.size()), a.size());
        }
    }
    throw DerivationError("unknown term kind");
}

// ---------- cut-free search ----------

namespace {

// Adjacent interchanges turning the antecedent of d into `target` (a permutation of it).
DerivILP permute_to(DerivILP d, const std::vector<Prime>& target) {
    std::vector<Prime> cur = d->concl.ant.factors;
    for (std::size_t i = 0; i < target.size(); ++i) {
        std::size_t j = i;
        while (cur[j] != target[i]) ++j;
        for (std::size_t k = j; k > i; --k) {
            d = il_int(d, k - 1, 1, 1);
            std::swap(cur[k - 1], cur[k]);
        }
    }
    return d;
}

class Prover {
public:
    std::optional<DerivILP> solve(std::vector<Prime> ant, const Alpha& con) {
        std::sort(ant.begin(), ant.end());
        std::string key = to_string(Alpha(ant)) + " |- " + to_string(con);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        auto r = attempt(ant, con);
        memo_[key] = r;
        return r;
    }

private:
    static std::vector<Prime> concat(const std::vector<Prime>& a, const std::vector<Prime>& b) {
        std::vector<Prime> r = a;
        r.insert(r.end(), b.begin(), b.end());
        return r;
    }

    // Calls fn(part, rest) once per distinct sub-multiset `part` of the sorted list.
    template <class Fn>
    static bool for_each_split(const std::vector<Prime>& ms, Fn fn) {
        std::set<std::string> seen;
        std::size_t n = ms.size();
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<Prime> part, rest;
            for (std::size_t i = 0; i < n; ++i) (mask >> i & 1 ? part : rest).push_back(ms[i]);
            if (!seen.insert(to_string(Alpha(part))).second) continue;
            if (fn(part, rest)) return true;
        }
        return false;
    }

    std::optional<DerivILP> attempt(const std::vector<Prime>& ant, const Alpha& con) {
        std::vector<Prime> sorted_con = con.factors;
        std::sort(sorted_con.begin(), sorted_con.end());
        if (sorted_con == ant) return permute_to(il_ax(con), ant);

        std::optional<DerivILP> found;
        // tt: split the consequent and the antecedent
        for (std::size_t k = 0; k <= con.size() && !found; ++k) {
            Alpha c1 = con.slice(0, k), c2 = con.slice(k);
            for_each_split(ant, [&](const std::vector<Prime>& g1, const std::vector<Prime>& g2) {
                if (c1.is_unit() && g1.empty()) return false;
                if (c2.is_unit() && g2.empty()) return false;
                auto l = solve(g1, c1);
                if (!l) return false;
                auto r = solve(g2, c2);
                if (!r) return false;
                found = permute_to(il_tt(permute_to(*l, g1), permute_to(*r, g2)), ant);
                return true;
            });
            if (con.is_unit()) break;
        }
        if (found) return found;

        // impr
        if (con.size() == 1 && !con.factors[0].is_letter()) {
            const Alpha& a = *con.factors[0].dom;
            if (auto p = solve(concat(a.factors, ant), *con.factors[0].cod))
                return il_impr(permute_to(*p, concat(a.factors, ant)), a.size());
        }

        // impl on each distinct implication of the antecedent
        for (std::size_t i = 0; i < ant.size() && !found; ++i) {
            if (ant[i].is_letter() || (i > 0 && ant[i] == ant[i - 1])) continue;
            std::vector<Prime> rest = ant;
            rest.erase(rest.begin() + static_cast<long>(i));
            const Alpha& a = *ant[i].dom;
            const Alpha& b = *ant[i].cod;
            for_each_split(rest, [&](const std::vector<Prime>& g1, const std::vector<Prime>& g2) {
                auto l = solve(g1, a);
                if (!l) return false;
                auto r = solve(concat(b.factors, g2), con);
                if (!r) return false;
                DerivILP d = il_impl(permute_to(*l, g1), permute_to(*r, concat(b.factors, g2)), b.size());
                found = permute_to(d, ant);
                return true;
            });
        }
        return found;
    }

    std::map<std::string, std::optional<DerivILP>> memo_;
};

}  // namespace

std::optional<DerivILP> derivable_il(const SequentIL& s) {
    Prover p;
    auto d = p.solve(s.ant.factors, s.con);
    if (!d) return std::nullopt;
    return permute_to(*d, s.ant.factors);
}

// ---------- cut measure ----------

namespace {

std::size_t rank_con(const DerivIL& d) {
    switch (d.rule) {
        case DerivIL::Rule::Ax:
        case DerivIL::Rule::ImpR: return 1;
        case DerivIL::Rule::Int: return 1 + rank_con(*d.kids[0]);
        case DerivIL::Rule::Cut:
        case DerivIL::Rule::ImpL: return 1 + rank_con(*d.kids[1]);
        case DerivIL::Rule::TT: {
            bool li = d.kids[0]->concl.con.is_unit(), ri = d.kids[1]->concl.con.is_unit();
            if (li && ri) return 1 + rank_con(*d.kids[0]) + rank_con(*d.kids[1]);
            if (li) return 1 + rank_con(*d.kids[1]);
            if (ri) return 1 + rank_con(*d.kids[0]);
            return 1;
        }
    }
    return 1;
}

// Rank of the prime factor at position i of the antecedent.
std::size_t rank_ant(const DerivIL& d, std::size_t i) {
    switch (d.rule) {
        case DerivIL::Rule::Ax: return 1;
        case DerivIL::Rule::Int: {
            std::size_t g = d.params[0], a = d.params[1], b = d.params[2];
            std::size_t j = i;
            if (i >= g && i < g + b) j = g + a + (i - g);
            else if (i >= g + b && i < g + b + a) j = g + (i - g - b);
            return 1 + rank_ant(*d.kids[0], j);
        }
        case DerivIL::Rule::Cut: {
            std::size_t g = d.params[0], c = d.kids[0]->concl.ant.size(), a = d.kids[0]->concl.con.size();
            if (i < g) return 1 + rank_ant(*d.kids[1], i);
            if (i < g + c) return 1 + rank_ant(*d.kids[0], i - g);
            return 1 + rank_ant(*d.kids[1], i - c + a);
        }
        case DerivIL::Rule::ImpL: {
            std::size_t c = d.kids[0]->concl.ant.size();
            if (i < c) return 1 + rank_ant(*d.kids[0], i);
            if (i == c) return 1;
            return 1 + rank_ant(*d.kids[1], d.params[0] + (i - c - 1));
        }
        case DerivIL::Rule::ImpR: return 1 + rank_ant(*d.kids[0], d.params[0] + i);
        case DerivIL::Rule::TT: {
            std::size_t n = d.kids[0]->concl.ant.size();
            return 1 + (i < n ? rank_ant(*d.kids[0], i) : rank_ant(*d.kids[1], i - n));
        }
    }
    return 1;
}

}  // namespace

CutMeasure cut_measure(const DerivIL& left, const DerivIL& right, std::size_t g) {
    CutMeasure m;
    const Alpha& a = left.concl.con;
    m.degree = connective_count(a);
    m.left_rank = rank_con(left);
    m.right_rank = a.size() == 1 ? rank_ant(right, g) : 1;
    m.rank = m.left_rank + m.right_rank;
    return m;
}

CutMeasure cut_measure(const DerivIL& d, const std::vector<std::size_t>& path) {
    const DerivIL* cur = &d;
    for (auto i : path) {
        if (i >= cur->kids.size()) throw std::out_of_range("cut_measure: bad path");
        cur = cur->kids[i].get();
    }
    if (cur->rule != DerivIL::Rule::Cut) throw std::invalid_argument("cut_measure: node is not a cut");
    return cut_measure(*cur->kids[0], *cur->kids[1], cur->params[0]);
}

// ---------- cut elimination ----------

const char* cut_case_name(CutCase c) {
    static const char* names[] = {"0", "1a", "1b", "1c", "2a", "2b", "2c", "2c'", "2d", "2e", "2e'", "2f", "2g", "2h"};
    return names[static_cast<std::size_t>(c)];
}

namespace {

class Eliminator {
public:
    explicit Eliminator(ElimStats* s) : stats_(s) {}

    DerivILP run(const DerivILP& d) {
        std::vector<DerivILP> kids;
        for (const auto& k : d->kids) kids.push_back(run(k));
        if (d->rule == DerivIL::Rule::Cut) return cut(kids[0], kids[1], d->params[0], nullptr, false);
        return rebuild(d->rule, d->params, kids, d->concl);
    }

private:
    void tally(CutCase c) {
        if (stats_) stats_->cases[static_cast<std::size_t>(c)]++;
    }

    // Eliminates a single cut whose premises are both cut-free.
    DerivILP cut(const DerivILP& L, const DerivILP& R, std::size_t g, const CutMeasure* parent, bool exempt) {
        const CutMeasure m = cut_measure(*L, *R, g);
        if (parent && stats_) {
            stats_->measure_checks++;
            if (!(m < *parent) && !exempt) stats_->measure_violations++;
        }
        using Rl = DerivIL::Rule;
        const Alpha& a = L->concl.con;
        const std::size_t c = L->concl.ant.size();

        // Left-premise cases.
        switch (L->rule) {
            case Rl::Int: {
                tally(CutCase::C2a);
                DerivILP x = cut(L->kids[0], R, g, &m, false);
                return il_int(x, g + L->params[0], L->params[1], L->params[2]);
            }
            case Rl::ImpL: {
                tally(CutCase::C2b);
                const DerivILP& l1 = L->kids[0];
                std::size_t b = L->params[0];
                DerivILP y = cut(L->kids[1], R, g, &m, false);  // G*C3*C4*E
                if (g > 0 && b > 0) y = il_int(y, 0, g, b);      // C3*G*C4*E
                DerivILP z = il_impl(l1, y, b);                  // C1*(C2 -o C3)*G*C4*E
                std::size_t c1 = l1->concl.ant.size();
                if (g > 0) z = il_int(z, 0, c1 + 1, g);
                return z;
            }
            case Rl::TT: {
                const DerivILP& l1 = L->kids[0];
                const DerivILP& l2 = L->kids[1];
                bool li = l1->concl.con.is_unit(), ri = l2->concl.con.is_unit();
                bool low_exempt = m.degree == 0;
                if (li && ri) {
                    tally(CutCase::C2d);
                    DerivILP x = cut(l1, R, g, &m, false);
                    return cut(l2, x, g + l1->concl.ant.size(), &m, false);
                }
                if (ri) {
                    tally(CutCase::C2c);
                    DerivILP x = cut(l1, R, g, &m, false);
                    return cut(l2, x, g + l1->concl.ant.size(), &m, low_exempt);
                }
                if (li) {
                    tally(CutCase::C2cMirror);
                    DerivILP x = cut(l2, R, g, &m, false);
                    return cut(l1, x, g, &m, low_exempt);
                }
                break;
            }
            case Rl::Cut: throw std::logic_error("cut elimination: premise contains a cut");
            default: break;
        }

        bool right_rank_one = a.size() != 1 || R->rule == Rl::Ax ||
                              (R->rule == Rl::ImpL && R->kids[0]->concl.ant.size() == g);
        if (right_rank_one) {
            if (L->rule == Rl::Ax || R->rule == Rl::Ax) {
                tally(m.degree == 0 ? CutCase::Zero : CutCase::C1a);
                if (L->rule == Rl::Ax) return R;
                // axiom G*A*E |- G*A*E: keep the context beside the left premise
                const Alpha& ant = R->concl.ant;
                DerivILP out = L;
                Alpha e = ant.slice(g + a.size());
                if (!e.is_unit()) out = il_tt(out, il_ax(e));
                if (g > 0) out = il_tt(il_ax(ant.slice(0, g)), out);
                return out;
            }
            if (L->rule == Rl::ImpR && R->rule == Rl::ImpL) {
                tally(CutCase::C1b);
                const DerivILP& d1 = L->kids[0];  // A1*C |- A2
                const DerivILP& d2 = R->kids[0];  // G |- A1
                const DerivILP& d3 = R->kids[1];  // A2*E |- D
                DerivILP d4 = cut(d1, d3, 0, &m, false);
                return cut(d2, d4, 0, &m, false);
            }
            if (L->rule == Rl::TT) {
                tally(CutCase::C1c);
                const DerivILP& d1 = L->kids[0];
                DerivILP d5 = cut(d1, R, g, &m, false);
                return cut(L->kids[1], d5, g + d1->concl.ant.size(), &m, false);
            }
            throw std::logic_error("cut elimination: no principal case for " + to_string(L->concl) + " against " +
                                   to_string(R->concl));
        }

        // Right-premise cases: the cut formula is a prime passed up by R's last rule.
        switch (R->rule) {
            case Rl::Int: {
                std::size_t g2 = R->params[0], a2 = R->params[1], b2 = R->params[2];
                const DerivILP& r1 = R->kids[0];
                if (g < g2) {
                    tally(CutCase::C2e);
                    return il_int(cut(L, r1, g, &m, false), g2 - 1 + c, a2, b2);
                }
                if (g >= g2 + a2 + b2) {
                    tally(CutCase::C2e);
                    return il_int(cut(L, r1, g, &m, false), g2, a2, b2);
                }
                tally(CutCase::C2eInside);
                if (g < g2 + b2) return il_int(cut(L, r1, g2 + a2 + (g - g2), &m, false), g2, a2, b2 - 1 + c);
                return il_int(cut(L, r1, g2 + (g - g2 - b2), &m, false), g2, a2 - 1 + c, b2);
            }
            case Rl::ImpL: {
                tally(CutCase::C2f);
                const DerivILP& r1 = R->kids[0];
                const DerivILP& r2 = R->kids[1];
                std::size_t c2 = r1->concl.ant.size(), b2 = R->params[0];
                if (g < c2) return il_impl(cut(L, r1, g, &m, false), r2, b2);
                return il_impl(r1, cut(L, r2, b2 + (g - c2 - 1), &m, false), b2);
            }
            case Rl::ImpR: {
                tally(CutCase::C2g);
                std::size_t a2 = R->params[0];
                return il_impr(cut(L, R->kids[0], a2 + g, &m, false), a2);
            }
            case Rl::TT: {
                tally(CutCase::C2h);
                const DerivILP& r1 = R->kids[0];
                const DerivILP& r2 = R->kids[1];
                std::size_t n1 = r1->concl.ant.size();
                if (g < n1) return il_tt(cut(L, r1, g, &m, false), r2);
                return il_tt(r1, cut(L, r2, g - n1, &m, false));
            }
            default: break;
        }
        throw std::logic_error("cut elimination: unhandled configuration");
    }

    ElimStats* stats_;
};

}  // namespace

DerivILP eliminate_cuts(const DerivILP& d, ElimStats* stats) {
    check_derivation_il(*d);
    return Eliminator(stats).run(d);
}

// ---------- cleaning ----------

namespace {

bool is_unit_sequent(const SequentIL& s) { return s.ant.is_unit() && s.con.is_unit(); }

}  // namespace

DerivILP clean(const DerivILP& d) {
    std::vector<DerivILP> kids;
    for (const auto& k : d->kids) kids.push_back(clean(k));
    if (d->rule == DerivIL::Rule::TT) {
        if (is_unit_sequent(kids[0]->concl)) return kids[1];
        if (is_unit_sequent(kids[1]->concl)) return kids[0];
    }
    if (d->rule == DerivIL::Rule::Int && (d->params[1] == 0 || d->params[2] == 0)) return kids[0];
    return rebuild(d->rule, d->params, kids, d->concl);
}

bool is_clean(const DerivIL& d) {
    if (d.rule == DerivIL::Rule::Cut) return false;
    if (d.rule == DerivIL::Rule::TT && (is_unit_sequent(d.kids[0]->concl) || is_unit_sequent(d.kids[1]->concl)))
        return false;
    if (d.rule == DerivIL::Rule::Int && (d.params[1] == 0 || d.params[2] == 0)) return false;
    for (const auto& k : d.kids)
        if (!is_clean(*k)) return false;
    return true;
}

}  // namespace mlc
