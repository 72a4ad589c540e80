#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "mlc/syntax.hpp"

namespace mlc {

class TypeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Immutable typed proof term; the type is computed at construction.
class Term {
public:
    enum class Kind { Id, Sym, Eta, Eps, Comp, Tensor, ImpF };

    static Term id(const Alpha& a);
    static Term sym(const Alpha& a, const Alpha& b);  // a*b |- b*a
    static Term eta(const Alpha& a, const Alpha& b);  // b |- a -o a*b
    static Term eps(const Alpha& a, const Alpha& b);  // a*(a -o b) |- b
    static Term comp(const Term& after, const Term& before);
    static Term tensor(std::vector<Term> factors);  // raw, at least two factors
    static Term imp(const Alpha& a, const Term& body);

    Kind kind() const { return n_->kind; }
    const Alpha& a() const { return n_->a; }
    const Alpha& b() const { return n_->b; }
    const std::vector<Term>& kids() const { return n_->kids; }
    const Term& after() const { return n_->kids[0]; }
    const Term& before() const { return n_->kids[1]; }
    const Term& body() const { return n_->kids[0]; }
    const SequentIL& type() const { return n_->type; }
    const Alpha& src() const { return n_->type.ant; }
    const Alpha& tgt() const { return n_->type.con; }
    std::size_t size() const { return n_->size; }
    std::size_t hash() const { return n_->hash; }
    bool same_node(const Term& o) const { return n_ == o.n_; }

    friend int compare(const Term& x, const Term& y);
    friend bool operator==(const Term& x, const Term& y) { return compare(x, y) == 0; }
    friend bool operator!=(const Term& x, const Term& y) { return compare(x, y) != 0; }
    friend bool operator<(const Term& x, const Term& y) { return compare(x, y) < 0; }

private:
    struct Node {
        Kind kind;
        Alpha a, b;
        std::vector<Term> kids;
        SequentIL type;
        std::size_t size = 1;
        std::size_t hash = 0;
    };
    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Term make(Kind k, Alpha a, Alpha b, std::vector<Term> kids, SequentIL type);
    std::shared_ptr<const Node> n_;
};

struct TypedTerm {
    Term term;
    SequentIL type;
};

SequentIL type_of(const Term& t);

// Strictness-respecting constructors.
Term smart_tensor(const Term& f, const Term& g);
Term smart_tensor(const std::vector<Term>& fs);
Term smart_comp(const Term& after, const Term& before);
Term smart_imp(const Alpha& a, const Term& body);

bool is_smart_normal(const Term& t);
bool is_central(const Term& t);

std::string to_string(const Term& t);
Term parse_term(std::string_view text);

// Letter renaming of every index formula, leaves visited in a fixed traversal order.
void collect_index_leaves(const Term& t, std::vector<std::string>& out);
Term rename_term_leaves(const Term& t, const std::vector<std::string>& names);

// ---------- Equational theory ----------

enum class Rule {
    Cat1, Cat2, Fun1, Fun2, Nat, Iso, Coh, Fun2Str, NatEta, Fun1Str, NatEps, Triang1, Triang2, CII
};
const char* rule_name(Rule r);

struct Neighbor {
    Term term;
    Rule rule;
    bool left_to_right;
};

// Literal one-step rewrites: every rule, both directions, every subterm position
// (contiguous tensor blocks included). Results are deduplicated by printed form.
std::vector<Neighbor> rewrite_moves(const Term& t);
std::vector<Term> rewrite_neighbors(const Term& t);

// Key of the string diagram of t: isomorphic diagrams, i.e. terms equal modulo the
// symmetric monoidal laws and the functor laws of A -o (-), share a key.
std::string diagram_key(const Term& t);

enum class OracleVerdict { Equal, Unknown };

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::Unknown;
    std::size_t visited_left = 0, visited_right = 0;
    bool exhausted_left = false, exhausted_right = false;  // component fully explored
    std::size_t distance = 0;                               // steps on the meeting path when Equal
};

constexpr std::size_t kDefaultOracleBudget = 200000;

// Bidirectional best-first search over diagram keys (smaller diagrams first); the moves are the
// remaining equalities (naturality of eta and eps, both triangle laws) in both directions.
OracleResult oracle_equal(const Term& f, const Term& g, std::size_t budget = kDefaultOracleBudget);

// Neighbor keys of t in the oracle's move graph (exposed for tests).
std::vector<std::string> oracle_neighbor_keys(const Term& t);

// ---------- Invertible terms ----------

std::pair<Term, Term> eta_eps_I_inverse(const Alpha& a);
std::pair<Term, Term> iso_const(const Alpha& a);

struct Stripped {
    Alpha target;
    Term u, uinv;
};
Stripped strip_const(const Alpha& a);

}  // namespace mlc
