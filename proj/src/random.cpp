#include "mlc/random.hpp"

namespace mlc {

Formula random_formula(Rng& rng, int depth, const GenOptions& opt) {
    std::size_t roll = rng.below(depth > 0 ? 10 : 4);
    if (roll < 3) return opt.letters.empty() || rng.chance(opt.unit_percent) ? Formula::unit() : Formula::letter(rng.pick(opt.letters));
    if (roll < 4) return Formula::unit();
    if (roll < 7) return Formula::tensor(random_formula(rng, depth - 1, opt), random_formula(rng, depth - 1, opt));
    return Formula::imp(random_formula(rng, depth - 1, opt), random_formula(rng, depth - 1, opt));
}

static Prime random_prime(Rng& rng, int depth, const GenOptions& opt) {
    if (opt.letters.empty()) {
        if (depth <= 0) return Prime::imp(Alpha(), Alpha());
        return Prime::imp(random_alpha(rng, depth - 1, opt), random_alpha(rng, depth - 1, opt));
    }
    if (depth <= 0 || rng.below(3) != 0) return Prime::letter(rng.pick(opt.letters));
    return Prime::imp(random_alpha(rng, depth - 1, opt), random_alpha(rng, depth - 1, opt));
}

Alpha random_alpha(Rng& rng, int depth, const GenOptions& opt) {
    if (rng.chance(opt.unit_percent)) return Alpha();
    std::size_t n = 1 + rng.below(opt.max_factors);
    std::vector<Prime> fs;
    for (std::size_t i = 0; i < n; ++i) fs.push_back(random_prime(rng, depth, opt));
    return Alpha(std::move(fs));
}

Alpha random_constant_alpha(Rng& rng, int depth) {
    if (depth <= 0 || rng.below(3) == 0) return Alpha();
    std::size_t n = 1 + rng.below(2);
    std::vector<Prime> fs;
    for (std::size_t i = 0; i < n; ++i) fs.push_back(Prime::imp(random_constant_alpha(rng, depth - 1), random_constant_alpha(rng, depth - 1)));
    return Alpha(std::move(fs));
}

static Alpha small_alpha(Rng& rng, const GenOptions& opt) {
    GenOptions o = opt;
    o.max_factors = 1 + rng.below(2);
    return random_alpha(rng, 1, o);
}

Term random_term_from(Rng& rng, const Alpha& src, int budget, const GenOptions& opt) {
    std::size_t n = src.size();
    if (budget <= 1) {
        switch (rng.below(3)) {
            case 0: return Term::id(src);
            case 1: {
                std::size_t k = rng.below(n + 1);
                return Term::sym(src.slice(0, k), src.slice(k));
            }
            default: return Term::eta(small_alpha(rng, opt), src);
        }
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
        switch (rng.below(7)) {
            case 0: {
                std::size_t k = rng.below(n + 1);
                return Term::sym(src.slice(0, k), src.slice(k));
            }
            case 1: return Term::eta(small_alpha(rng, opt), src);
            case 2: {  // eps on a matching A * (A -o B) block
                std::vector<std::pair<std::size_t, std::size_t>> spots;
                for (std::size_t i = 0; i < n; ++i) {
                    const Prime& p = src.factors[i];
                    if (p.is_letter()) continue;
                    std::size_t na = p.dom->size();
                    if (na <= i && src.slice(i - na, i) == *p.dom) spots.push_back({i - na, i});
                }
                if (spots.empty()) break;
                auto [from, at] = spots[rng.below(spots.size())];
                const Prime& p = src.factors[at];
                return smart_tensor({Term::id(src.slice(0, from)), Term::eps(*p.dom, *p.cod), Term::id(src.slice(at + 1))});
            }
            case 3: {  // A -o (-) on an implication factor
                std::vector<std::size_t> spots;
                for (std::size_t i = 0; i < n; ++i)
                    if (!src.factors[i].is_letter()) spots.push_back(i);
                if (spots.empty()) break;
                std::size_t at = spots[rng.below(spots.size())];
                const Prime& p = src.factors[at];
                Term body = random_term_from(rng, *p.cod, budget - 1, opt);
                return smart_tensor({Term::id(src.slice(0, at)), Term::imp(*p.dom, body), Term::id(src.slice(at + 1))});
            }
            case 4: {
                if (n < 2) break;
                std::size_t k = 1 + rng.below(n - 1);
                int b1 = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(budget - 1)));
                Term f = random_term_from(rng, src.slice(0, k), b1, opt);
                Term g = random_term_from(rng, src.slice(k), budget - b1, opt);
                return smart_tensor(f, g);
            }
            default: {
                int b1 = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(budget - 1)));
                Term f = random_term_from(rng, src, b1, opt);
                Term g = random_term_from(rng, f.tgt(), budget - b1, opt);
                return Term::comp(g, f);
            }
        }
    }
    return Term::id(src);
}

Term random_term(Rng& rng, int budget, const GenOptions& opt) {
    return random_term_from(rng, random_alpha(rng, opt.max_depth, opt), budget, opt);
}

Term random_unit_term(Rng& rng, int budget) {
    GenOptions opt;
    opt.letters = {};
    Term f = random_term_from(rng, Alpha(), budget, opt);
    auto [to_unit, back] = iso_const(f.tgt());
    (void)back;
    return smart_comp(to_unit, f);
}

}  // namespace mlc

namespace mlc {

namespace {

GenOptions derivation_alphas(const GenOptions& opt) {
    GenOptions o = opt;
    o.max_factors = 2;
    o.unit_percent = 25;
    return o;
}

Alpha tiny_alpha(Rng& rng, const GenOptions& opt) {
    GenOptions o = derivation_alphas(opt);
    o.max_factors = 1 + rng.below(2);
    return random_alpha(rng, 1, o);
}

struct Placed {
    DerivILP d;
    std::size_t pos;  // start of the tracked block in the antecedent
};

// Interchange blocks around a tracked range [lo, hi) that never split it.
bool pick_interchange(Rng& rng, std::size_t n, std::size_t lo, std::size_t hi, std::size_t& g, std::size_t& a,
                      std::size_t& b) {
    if (n < 2) return false;
    for (int attempt = 0; attempt < 12; ++attempt) {
        g = rng.below(n - 1);
        a = 1 + rng.below(n - g - 1);
        b = 1 + rng.below(n - g - a);
        std::size_t cuts[] = {g, g + a, g + a + b};
        bool ok = true;
        for (auto c : cuts)
            if (c > lo && c < hi) ok = false;
        if (ok) return true;
    }
    return false;
}

std::size_t moved(std::size_t pos, std::size_t g, std::size_t a, std::size_t b) {
    if (pos >= g && pos < g + a) return pos + b;
    if (pos >= g + a && pos < g + a + b) return pos - a;
    return pos;
}

// Cut-free derivation whose antecedent contains `blk` as a contiguous block.
Placed gen_over(Rng& rng, const Alpha& blk, int height, const GenOptions& opt) {
    std::size_t w = blk.size();
    if (height <= 1) {
        Alpha x = rng.chance(60) ? Alpha() : tiny_alpha(rng, opt);
        Alpha y = rng.chance(60) ? Alpha() : tiny_alpha(rng, opt);
        return {il_ax(tensor_alpha(tensor_alpha(x, blk), y)), x.size()};
    }
    for (;;) {
        switch (rng.below(7)) {
            case 0: {  // principal implication on the left
                if (w != 1 || blk.factors[0].is_letter()) break;
                const Alpha& x = *blk.factors[0].dom;
                const Alpha& b = *blk.factors[0].cod;
                Placed r = gen_over(rng, b, height - 1, opt);
                DerivILP rd = r.d;
                if (r.pos > 0 && b.size() > 0) rd = il_int(rd, 0, r.pos, b.size());
                return {il_impl(il_ax(x), rd, b.size()), x.size()};
            }
            case 1: {
                Placed p = gen_over(rng, blk, height - 1, opt);
                std::size_t g, a, b;
                if (!pick_interchange(rng, p.d->concl.ant.size(), p.pos, p.pos + w, g, a, b)) return p;
                return {il_int(p.d, g, a, b), moved(p.pos, g, a, b)};
            }
            case 2: {
                Placed p = gen_over(rng, blk, height - 1, opt);
                std::size_t a = rng.below(p.pos + 1);
                return {il_impr(p.d, a), p.pos - a};
            }
            case 3: {  // tracked block in the right premise of impl
                Placed p = gen_over(rng, blk, height - 1, opt);
                DerivILP l = random_cut_free_il(rng, height - 1, opt);
                std::size_t b = rng.below(p.pos + 1);
                return {il_impl(l, p.d, b), l->concl.ant.size() + 1 + (p.pos - b)};
            }
            case 4: {  // tracked block in the left premise of impl
                Placed p = gen_over(rng, blk, height - 1, opt);
                DerivILP r = random_cut_free_il(rng, height - 1, opt);
                return {il_impl(p.d, r, rng.below(r->concl.ant.size() + 1)), p.pos};
            }
            case 5: {
                Placed p = gen_over(rng, blk, height - 1, opt);
                DerivILP q = random_cut_free_il(rng, height - 1, opt);
                if (rng.chance(50)) return {il_tt(p.d, q), p.pos};
                return {il_tt(q, p.d), q->concl.ant.size() + p.pos};
            }
            default: return gen_over(rng, blk, 1, opt);
        }
    }
}

}  // namespace

DerivILP random_cut_free_il(Rng& rng, int height, const GenOptions& opt) {
    if (height <= 1 || rng.chance(30)) return il_ax(tiny_alpha(rng, opt));
    switch (rng.below(4)) {
        case 0: {
            DerivILP p = random_cut_free_il(rng, height - 1, opt);
            std::size_t g, a, b;
            std::size_t n = p->concl.ant.size();
            if (!pick_interchange(rng, n, n, n, g, a, b)) return p;
            return il_int(p, g, a, b);
        }
        case 1: {
            DerivILP l = random_cut_free_il(rng, height - 1, opt);
            DerivILP r = random_cut_free_il(rng, height - 1, opt);
            return il_impl(l, r, rng.below(r->concl.ant.size() + 1));
        }
        case 2: {
            DerivILP p = random_cut_free_il(rng, height - 1, opt);
            return il_impr(p, rng.below(p->concl.ant.size() + 1));
        }
        default:
            return il_tt(random_cut_free_il(rng, height - 1, opt), random_cut_free_il(rng, height - 1, opt));
    }
}

DerivILP random_derivation_il(Rng& rng, int height, int cuts, const GenOptions& opt) {
    if (height < 2) height = 2;
    int hl = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(height - 1)));
    DerivILP left = cuts > 1 && hl >= 2 ? random_derivation_il(rng, hl, cuts - 1, opt) : random_cut_free_il(rng, hl, opt);
    if (cuts > 1 && cut_count(*left) < static_cast<std::size_t>(cuts - 1))
        left = random_derivation_il(rng, height - 1, cuts - 1, opt);
    int hr = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(height - 1)));
    Placed r = gen_over(rng, left->concl.con, hr, opt);
    return il_cut(left, r.d, r.pos);
}

}  // namespace mlc

namespace mlc {

namespace {

std::vector<Formula> as_sequence(const Alpha& a) {
    std::vector<Formula> r;
    for (const auto& p : a.factors) r.push_back(formula_of(Alpha({p})));
    return r;
}

GenOptions split_side(std::vector<std::string> letters) {
    GenOptions o;
    o.letters = std::move(letters);
    o.max_depth = 1;
    o.max_factors = 2;
    o.unit_percent = 10;
    return o;
}

std::vector<Formula> interleave(Rng& rng, const std::vector<Formula>& x, const std::vector<Formula>& y,
                                std::vector<Formula> middle = {}) {
    std::vector<Formula> r;
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        bool from_x = j == y.size() || (i < x.size() && rng.below(2) == 0);
        r.push_back(from_x ? x[i++] : y[j++]);
        if (!middle.empty() && i == x.size()) {
            r.insert(r.end(), middle.begin(), middle.end());
            middle.clear();
        }
    }
    r.insert(r.end(), middle.begin(), middle.end());
    return r;
}

// Sequence that entails I, over the letters r and s or constant.
std::vector<Formula> random_unit_sequence(Rng& rng) {
    static const char* pool[] = {"I", "I -o I", "(r -o r) -o I", "(I -o I) -o I", "s * (s -o I)", "I * I"};
    std::vector<Formula> r;
    std::size_t n = rng.below(3);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = rng.below(7);
        if (k == 6) {
            r.push_back(Formula::letter("r"));
            r.push_back(parse_formula("r -o I"));
        } else {
            r.push_back(parse_formula(pool[k]));
        }
    }
    return r;
}

DerivSP derive_or_throw(const SequentS& s) {
    auto d = derivable_s(s);
    if (!d) throw std::logic_error("generated sequent is not derivable: " + to_string(s));
    return *d;
}

}  // namespace

SequentS random_derivable_s(Rng& rng, int budget, const GenOptions& opt) {
    Term t = random_term(rng, budget, opt);
    return {as_sequence(t.src()), formula_of(t.tgt())};
}

SplitInstance random_weak_instance(Rng& rng) {
    SequentS left = random_derivable_s(rng, 2, split_side({"p", "q"}));
    std::vector<Formula> delta = random_unit_sequence(rng);
    SplitInstance in;
    in.g = left.ant;
    in.delta = delta;
    in.d = derive_or_throw({interleave(rng, left.ant, delta), left.con});
    return in;
}

SplitInstance random_tensor_instance(Rng& rng) {
    SequentS x = random_derivable_s(rng, 2, split_side({"p", "q"}));
    SequentS y = random_derivable_s(rng, 2, split_side({"r", "s"}));
    SplitInstance in;
    in.g = x.ant;
    in.delta = y.ant;
    in.a = x.con;
    in.b = y.con;
    in.d = derive_or_throw({interleave(rng, x.ant, y.ant), Formula::tensor(x.con, y.con)});
    return in;
}

SplitInstance random_imp_instance(Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        SequentS x = random_derivable_s(rng, 2, split_side({"p", "q"}));
        SequentS y = random_derivable_s(rng, 2, split_side({"r", "s"}));
        SplitInstance in;
        in.g = x.ant;
        in.a = x.con;
        if (y.ant.empty()) {
            in.b = Formula::unit();
        } else {
            in.b = y.ant[0];
            in.delta.assign(y.ant.begin() + 1, y.ant.end());
        }
        SequentS s{interleave(rng, x.ant, in.delta, {Formula::imp(in.a, in.b)}), y.con};
        if (!is_proper(s)) continue;
        in.d = derive_or_throw(s);
        return in;
    }
    throw std::logic_error("random_imp_instance: no proper instance found");
}

Term random_central(Rng& rng, const Alpha& src, int budget) {
    std::size_t n = src.size();
    std::size_t choice = budget <= 1 || n < 2 ? rng.below(2) : rng.below(4);
    if (n == 0 || choice == 0) return Term::id(src);
    if (choice == 1 || n < 2) {
        std::size_t k = rng.below(n + 1);
        return Term::sym(src.slice(0, k), src.slice(k));
    }
    if (choice == 2) {
        std::size_t k = 1 + rng.below(n - 1);
        return smart_tensor(random_central(rng, src.slice(0, k), budget / 2),
                            random_central(rng, src.slice(k), budget / 2));
    }
    Term first = random_central(rng, src, budget / 2);
    return smart_comp(random_central(rng, first.tgt(), budget / 2), first);
}

}  // namespace mlc
