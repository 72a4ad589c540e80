#include "mlc/syntax.hpp"

#include <cctype>
#include <map>

namespace mlc {

struct Formula::Node {
    Kind kind;
    std::string name;
    Formula left, right;
    Node(Kind k, std::string n) : kind(k), name(std::move(n)), left(nullptr), right(nullptr) {}
    Node(Kind k, Formula l, Formula r) : kind(k), left(std::move(l)), right(std::move(r)) {}
};

Formula::Formula() : n_(nullptr) {}

Formula Formula::letter(std::string name) { return Formula(std::make_shared<Node>(Kind::Letter, std::move(name))); }
Formula Formula::unit() { return Formula(); }
Formula Formula::tensor(Formula a, Formula b) { return Formula(std::make_shared<Node>(Kind::Tensor, std::move(a), std::move(b))); }
Formula Formula::imp(Formula a, Formula b) { return Formula(std::make_shared<Node>(Kind::Imp, std::move(a), std::move(b))); }

Formula::Kind Formula::kind() const { return n_ ? n_->kind : Kind::Unit; }
const std::string& Formula::name() const {
    static const std::string empty;
    return n_ ? n_->name : empty;
}
const Formula& Formula::left() const { return n_->left; }
const Formula& Formula::right() const { return n_->right; }

int compare(const Formula& a, const Formula& b) {
    if (a.n_ == b.n_) return 0;
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
    switch (a.kind()) {
        case Formula::Kind::Unit: return 0;
        case Formula::Kind::Letter: return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
        default: {
            int c = compare(a.left(), b.left());
            return c != 0 ? c : compare(a.right(), b.right());
        }
    }
}

// ---------- Alpha ----------

Prime Prime::letter(std::string n) {
    Prime p;
    p.name = std::move(n);
    return p;
}

Prime Prime::imp(Alpha d, Alpha c) {
    Prime p;
    p.dom = std::make_shared<const Alpha>(std::move(d));
    p.cod = std::make_shared<const Alpha>(std::move(c));
    return p;
}

Alpha Alpha::letter(const std::string& name) { return Alpha({Prime::letter(name)}); }
Alpha Alpha::imp(const Alpha& dom, const Alpha& cod) { return Alpha({Prime::imp(dom, cod)}); }

Alpha Alpha::slice(std::size_t from, std::size_t to) const {
    return Alpha(std::vector<Prime>(factors.begin() + static_cast<long>(from), factors.begin() + static_cast<long>(to)));
}

int compare(const Prime& a, const Prime& b) {
    if (a.is_letter() != b.is_letter()) return a.is_letter() ? -1 : 1;
    if (a.is_letter()) return a.name < b.name ? -1 : (a.name == b.name ? 0 : 1);
    if (a.dom == b.dom && a.cod == b.cod) return 0;
    int c = compare(*a.dom, *b.dom);
    return c != 0 ? c : compare(*a.cod, *b.cod);
}

int compare(const Alpha& a, const Alpha& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a.factors[i], b.factors[i]);
        if (c != 0) return c;
    }
    if (a.size() == b.size()) return 0;
    return a.size() < b.size() ? -1 : 1;
}

Alpha tensor_alpha(const Alpha& a, const Alpha& b) {
    if (a.is_unit()) return b;
    if (b.is_unit()) return a;
    Alpha r = a;
    r.factors.insert(r.factors.end(), b.factors.begin(), b.factors.end());
    return r;
}

Alpha alpha_normalize(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Unit: return Alpha();
        case Formula::Kind::Letter: return Alpha::letter(f.name());
        case Formula::Kind::Tensor: return tensor_alpha(alpha_normalize(f.left()), alpha_normalize(f.right()));
        case Formula::Kind::Imp: return Alpha::imp(alpha_normalize(f.left()), alpha_normalize(f.right()));
    }
    return Alpha();
}

Alpha alpha_of(const std::vector<Formula>& seq) {
    Alpha r;
    for (const auto& f : seq) r = tensor_alpha(r, alpha_normalize(f));
    return r;
}

static Formula formula_of(const Prime& p) {
    if (p.is_letter()) return Formula::letter(p.name);
    return Formula::imp(formula_of(*p.dom), formula_of(*p.cod));
}

Formula formula_of(const Alpha& a) {
    if (a.is_unit()) return Formula::unit();
    Formula r = formula_of(a.factors[0]);
    for (std::size_t i = 1; i < a.size(); ++i) r = Formula::tensor(r, formula_of(a.factors[i]));
    return r;
}

// ---------- Parser ----------

namespace {

struct Lexer {
    std::string_view s;
    std::size_t i = 0;

    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip();
        return i >= s.size();
    }
    bool peek(std::string_view tok) {
        skip();
        return s.substr(i, tok.size()) == tok;
    }
    bool accept(std::string_view tok) {
        if (!peek(tok)) return false;
        i += tok.size();
        return true;
    }
    void expect(std::string_view tok) {
        if (!accept(tok)) throw ParseError(i, "expected '" + std::string(tok) + "'");
    }
};

Formula parse_imp(Lexer& lx);

Formula parse_atom(Lexer& lx) {
    lx.skip();
    if (lx.i >= lx.s.size()) throw ParseError(lx.i, "unexpected end of input");
    char c = lx.s[lx.i];
    if (c == '(') {
        ++lx.i;
        Formula f = parse_imp(lx);
        lx.expect(")");
        return f;
    }
    if (c == 'I') {
        std::size_t j = lx.i + 1;
        if (j < lx.s.size() && std::isalnum(static_cast<unsigned char>(lx.s[j])))
            throw ParseError(lx.i, "malformed unit");
        lx.i = j;
        return Formula::unit();
    }
    if (c >= 'a' && c <= 'z') {
        std::size_t j = lx.i + 1;
        while (j < lx.s.size() && ((lx.s[j] >= 'a' && lx.s[j] <= 'z') || (lx.s[j] >= '0' && lx.s[j] <= '9'))) ++j;
        std::string name(lx.s.substr(lx.i, j - lx.i));
        lx.i = j;
        return Formula::letter(name);
    }
    throw ParseError(lx.i, std::string("unexpected character '") + c + "'");
}

Formula parse_tensor(Lexer& lx) {
    Formula f = parse_atom(lx);
    while (lx.accept("*")) f = Formula::tensor(f, parse_atom(lx));
    return f;
}

Formula parse_imp(Lexer& lx) {
    Formula f = parse_tensor(lx);
    if (lx.accept("-o")) return Formula::imp(f, parse_imp(lx));
    return f;
}

}  // namespace

Formula parse_formula(std::string_view text) {
    Lexer lx{text};
    Formula f = parse_imp(lx);
    if (!lx.at_end()) throw ParseError(lx.i, "trailing input");
    return f;
}

Alpha parse_alpha(std::string_view text) { return alpha_normalize(parse_formula(text)); }

static std::size_t find_turnstile(std::string_view text) {
    std::size_t p = text.find("|-");
    if (p == std::string_view::npos) throw ParseError(text.size(), "expected '|-'");
    return p;
}

SequentS parse_sequent_s(std::string_view text) {
    std::size_t t = find_turnstile(text);
    SequentS s;
    std::string_view lhs = text.substr(0, t);
    std::size_t start = 0, depth = 0;
    bool any = lhs.find_first_not_of(" \t\r\n") != std::string_view::npos;
    if (any) {
        for (std::size_t i = 0; i <= lhs.size(); ++i) {
            if (i == lhs.size() || (lhs[i] == ',' && depth == 0)) {
                try {
                    s.ant.push_back(parse_formula(lhs.substr(start, i - start)));
                } catch (const ParseError& e) {
                    throw ParseError(start + e.position(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
                }
                start = i + 1;
            } else if (lhs[i] == '(') {
                ++depth;
            } else if (lhs[i] == ')' && depth > 0) {
                --depth;
            }
        }
    }
    try {
        s.con = parse_formula(text.substr(t + 2));
    } catch (const ParseError& e) {
        throw ParseError(t + 2 + e.position(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
    return s;
}

SequentIL parse_sequent_il(std::string_view text) {
    SequentS s = parse_sequent_s(text);
    return SequentIL{alpha_of(s.ant), alpha_normalize(s.con)};
}

// ---------- Printer ----------

std::string to_string(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Unit: return "I";
        case Formula::Kind::Letter: return f.name();
        case Formula::Kind::Tensor: {
            std::string l = to_string(f.left());
            if (f.left().is_imp()) l = "(" + l + ")";
            std::string r = to_string(f.right());
            if (!f.right().is_letter() && !f.right().is_unit()) r = "(" + r + ")";
            return l + " * " + r;
        }
        case Formula::Kind::Imp: {
            std::string l = to_string(f.left());
            if (f.left().is_imp()) l = "(" + l + ")";
            return l + " -o " + to_string(f.right());
        }
    }
    return "";
}

std::string to_string(const Prime& p) {
    if (p.is_letter()) return p.name;
    std::string d = to_string(*p.dom);
    if (p.dom->size() == 1 && !p.dom->factors[0].is_letter()) d = "(" + d + ")";
    return d + " -o " + to_string(*p.cod);
}

std::string to_string(const Alpha& a) {
    if (a.is_unit()) return "I";
    if (a.size() == 1) return to_string(a.factors[0]);
    std::string r;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) r += " * ";
        const Prime& p = a.factors[i];
        r += p.is_letter() ? p.name : "(" + to_string(p) + ")";
    }
    return r;
}

std::string to_string(const SequentS& s) {
    std::string r;
    for (std::size_t i = 0; i < s.ant.size(); ++i) {
        if (i) r += ", ";
        r += to_string(s.ant[i]);
    }
    return r.empty() ? "|- " + to_string(s.con) : r + " |- " + to_string(s.con);
}

std::string to_string(const SequentIL& s) { return to_string(s.ant) + " |- " + to_string(s.con); }

// ---------- Predicates ----------

bool is_constant(const Formula& f) {
    switch (f.kind()) {
        case Formula::Kind::Unit: return true;
        case Formula::Kind::Letter: return false;
        default: return is_constant(f.left()) && is_constant(f.right());
    }
}

bool is_constant(const Prime& p) { return !p.is_letter() && is_constant(*p.dom) && is_constant(*p.cod); }

bool is_constant(const Alpha& a) {
    for (const auto& p : a.factors)
        if (!is_constant(p)) return false;
    return true;
}

std::string improper_witness(const Formula& f) {
    if (f.is_tensor() || f.is_imp()) {
        if (f.is_imp() && is_constant(f.right()) && !is_constant(f.left())) return to_string(f);
        std::string w = improper_witness(f.left());
        return w.empty() ? improper_witness(f.right()) : w;
    }
    return "";
}

std::string improper_witness(const Alpha& a) {
    for (const auto& p : a.factors) {
        if (p.is_letter()) continue;
        if (is_constant(*p.cod) && !is_constant(*p.dom)) return to_string(p);
        std::string w = improper_witness(*p.dom);
        if (w.empty()) w = improper_witness(*p.cod);
        if (!w.empty()) return w;
    }
    return "";
}

bool is_proper(const Formula& f) { return improper_witness(f).empty(); }
bool is_proper(const Alpha& a) { return improper_witness(a).empty(); }
bool is_proper(const SequentIL& s) { return is_proper(s.ant) && is_proper(s.con); }
bool is_proper(const SequentS& s) {
    for (const auto& f : s.ant)
        if (!is_proper(f)) return false;
    return is_proper(s.con);
}

bool is_assorted(const Alpha& a) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_constant(a.factors[i])) continue;
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a.factors[i] == a.factors[j]) return false;
    }
    return true;
}

bool is_i_free(const Alpha& a) {
    for (const auto& p : a.factors) {
        if (p.is_letter()) continue;
        if (p.dom->is_unit() || p.cod->is_unit() || !is_i_free(*p.dom) || !is_i_free(*p.cod)) return false;
    }
    return true;
}

std::size_t connective_count(const Alpha& a) {
    std::size_t n = a.size() > 1 ? a.size() - 1 : 0;
    for (const auto& p : a.factors)
        if (!p.is_letter()) n += 1 + connective_count(*p.dom) + connective_count(*p.cod);
    return n;
}

std::size_t connective_count(const Formula& f) {
    if (f.is_tensor() || f.is_imp()) return 1 + connective_count(f.left()) + connective_count(f.right());
    return 0;
}

static void collect_letters(const Formula& f, std::set<std::string>& out) {
    if (f.is_letter()) out.insert(f.name());
    if (f.is_tensor() || f.is_imp()) {
        collect_letters(f.left(), out);
        collect_letters(f.right(), out);
    }
}

static void collect_letters(const Alpha& a, std::set<std::string>& out) {
    for (const auto& p : a.factors) {
        if (p.is_letter()) {
            out.insert(p.name);
        } else {
            collect_letters(*p.dom, out);
            collect_letters(*p.cod, out);
        }
    }
}

std::set<std::string> letters(const Formula& f) {
    std::set<std::string> r;
    collect_letters(f, r);
    return r;
}

std::set<std::string> letters(const Alpha& a) {
    std::set<std::string> r;
    collect_letters(a, r);
    return r;
}

std::set<std::string> letters(const std::vector<Formula>& seq) {
    std::set<std::string> r;
    for (const auto& f : seq) collect_letters(f, r);
    return r;
}

// ---------- Occurrences ----------

std::string OccPath::str() const {
    std::string r = side == Side::Ant ? "ant" : "con";
    for (const auto& s : steps) {
        r += '.';
        if (s.kind == Step::Kind::Factor) r += std::to_string(s.index);
        else r += s.kind == Step::Kind::Dom ? "d" : "c";
    }
    return r;
}

int OccPath::dom_steps() const {
    int n = 0;
    for (const auto& s : steps) n += s.kind == Step::Kind::Dom;
    return n;
}

OccPath parse_occ_path(std::string_view text) {
    OccPath p;
    std::size_t i = 0;
    auto next = [&]() {
        std::size_t j = text.find('.', i);
        if (j == std::string_view::npos) j = text.size();
        std::string_view tok = text.substr(i, j - i);
        i = j + 1;
        return tok;
    };
    std::string_view head = next();
    if (head == "ant") p.side = Side::Ant;
    else if (head == "con") p.side = Side::Con;
    else throw ParseError(0, "bad occurrence side");
    while (i <= text.size()) {
        std::size_t at = i;
        std::string_view tok = next();
        if (tok == "d") p.steps.push_back({Step::Kind::Dom, 0});
        else if (tok == "c") p.steps.push_back({Step::Kind::Cod, 0});
        else {
            try {
                int k = std::stoi(std::string(tok));
                if (k < 1) throw ParseError(at, "factor index must be positive");
                p.steps.push_back({Step::Kind::Factor, k});
            } catch (const std::logic_error&) {
                throw ParseError(at, "bad occurrence step");
            }
        }
    }
    return p;
}

static void walk(const Alpha& a, OccPath& cur, int sign, std::vector<Occurrence>& out) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        cur.steps.push_back({Step::Kind::Factor, static_cast<int>(i + 1)});
        const Prime& p = a.factors[i];
        if (p.is_letter()) {
            out.push_back({cur, p.name, sign});
        } else {
            cur.steps.push_back({Step::Kind::Dom, 0});
            walk(*p.dom, cur, -sign, out);
            cur.steps.back() = {Step::Kind::Cod, 0};
            walk(*p.cod, cur, sign, out);
            cur.steps.pop_back();
        }
        cur.steps.pop_back();
    }
}

std::vector<Occurrence> occurrences(const Alpha& a, Side side) {
    std::vector<Occurrence> out;
    OccPath cur;
    cur.side = side;
    walk(a, cur, side == Side::Ant ? -1 : 1, out);
    return out;
}

std::vector<Occurrence> signed_occurrences(const SequentIL& s) {
    auto out = occurrences(s.ant, Side::Ant);
    auto con = occurrences(s.con, Side::Con);
    out.insert(out.end(), con.begin(), con.end());
    return out;
}

std::size_t leaf_count(const Alpha& a) {
    std::size_t n = 0;
    for (const auto& p : a.factors) n += p.is_letter() ? 1 : leaf_count(*p.dom) + leaf_count(*p.cod);
    return n;
}

bool is_balanced(const SequentIL& s) {
    std::map<std::string, std::vector<int>> signs;
    for (const auto& o : signed_occurrences(s)) signs[o.letter].push_back(o.sign);
    for (const auto& [l, v] : signs)
        if (v.size() != 2 || v[0] == v[1]) return false;
    return true;
}

Alpha rename_leaves(const Alpha& a, const std::vector<std::string>& names, std::size_t& cursor) {
    Alpha r;
    for (const auto& p : a.factors) {
        if (p.is_letter()) {
            r.factors.push_back(Prime::letter(names.at(cursor++)));
        } else {
            Alpha d = rename_leaves(*p.dom, names, cursor);
            Alpha c = rename_leaves(*p.cod, names, cursor);
            r.factors.push_back(Prime::imp(std::move(d), std::move(c)));
        }
    }
    return r;
}

}  // namespace mlc
