#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlc {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error("at column " + std::to_string(pos + 1) + ": " + msg), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Standard formula tree (system S and parse boundary).
class Formula {
public:
    enum class Kind { Letter, Unit, Tensor, Imp };

    Formula();  // I
    static Formula letter(std::string name);
    static Formula unit();
    static Formula tensor(Formula a, Formula b);
    static Formula imp(Formula a, Formula b);

    Kind kind() const;
    const std::string& name() const;
    const Formula& left() const;
    const Formula& right() const;

    bool is_letter() const { return kind() == Kind::Letter; }
    bool is_unit() const { return kind() == Kind::Unit; }
    bool is_tensor() const { return kind() == Kind::Tensor; }
    bool is_imp() const { return kind() == Kind::Imp; }

    friend int compare(const Formula& a, const Formula& b);
    friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
    friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

struct Prime;

// Strict formula: flat list of prime factors, empty list is I.
struct Alpha {
    std::vector<Prime> factors;

    Alpha() = default;
    explicit Alpha(std::vector<Prime> f) : factors(std::move(f)) {}
    static Alpha letter(const std::string& name);
    static Alpha imp(const Alpha& dom, const Alpha& cod);

    bool is_unit() const { return factors.empty(); }
    std::size_t size() const { return factors.size(); }
    Alpha slice(std::size_t from, std::size_t to) const;
    Alpha slice(std::size_t from) const { return slice(from, factors.size()); }
};

struct Prime {
    std::string name;                      // set for letters
    std::shared_ptr<const Alpha> dom, cod;  // set for implications

    bool is_letter() const { return !dom; }
    static Prime letter(std::string n);
    static Prime imp(Alpha d, Alpha c);
};

int compare(const Alpha& a, const Alpha& b);
int compare(const Prime& a, const Prime& b);
inline bool operator==(const Alpha& a, const Alpha& b) { return compare(a, b) == 0; }
inline bool operator!=(const Alpha& a, const Alpha& b) { return compare(a, b) != 0; }
inline bool operator<(const Alpha& a, const Alpha& b) { return compare(a, b) < 0; }
inline bool operator==(const Prime& a, const Prime& b) { return compare(a, b) == 0; }
inline bool operator!=(const Prime& a, const Prime& b) { return compare(a, b) != 0; }
inline bool operator<(const Prime& a, const Prime& b) { return compare(a, b) < 0; }

struct SequentS {
    std::vector<Formula> ant;
    Formula con;
    friend bool operator==(const SequentS& a, const SequentS& b) { return a.ant == b.ant && a.con == b.con; }
};

struct SequentIL {
    Alpha ant, con;
    friend bool operator==(const SequentIL& a, const SequentIL& b) { return a.ant == b.ant && a.con == b.con; }
    friend bool operator!=(const SequentIL& a, const SequentIL& b) { return !(a == b); }
};

enum class Side { Ant, Con };

struct Step {
    enum class Kind { Factor, Dom, Cod } kind;
    int index = 0;  // 1-based, Factor only
    friend auto operator<=>(const Step&, const Step&) = default;
};

struct OccPath {
    Side side = Side::Ant;
    std::vector<Step> steps;
    std::string str() const;
    int dom_steps() const;
    friend auto operator<=>(const OccPath&, const OccPath&) = default;
    friend bool operator==(const OccPath&, const OccPath&) = default;
};

OccPath parse_occ_path(std::string_view text);

struct Occurrence {
    OccPath path;
    std::string letter;
    int sign;  // +1 or -1
};

// Parsing and printing.
Formula parse_formula(std::string_view text);
std::string to_string(const Formula& f);
std::string to_string(const Alpha& a);
std::string to_string(const Prime& p);
std::string to_string(const SequentS& s);
std::string to_string(const SequentIL& s);
SequentS parse_sequent_s(std::string_view text);
SequentIL parse_sequent_il(std::string_view text);
Alpha parse_alpha(std::string_view text);

// Strict normalization and operations.
Alpha alpha_normalize(const Formula& f);
Alpha alpha_of(const std::vector<Formula>& seq);
Alpha tensor_alpha(const Alpha& a, const Alpha& b);
Formula formula_of(const Alpha& a);

// Predicates.
bool is_constant(const Formula& f);
bool is_constant(const Alpha& a);
bool is_constant(const Prime& p);
bool is_proper(const Formula& f);
bool is_proper(const Alpha& a);
bool is_proper(const SequentIL& s);
bool is_proper(const SequentS& s);
bool is_assorted(const Alpha& a);
bool is_balanced(const SequentIL& s);
bool is_i_free(const Alpha& a);
std::size_t connective_count(const Alpha& a);
std::size_t connective_count(const Formula& f);

// Witness for a failure of propriety, empty when proper.
std::string improper_witness(const Alpha& a);
std::string improper_witness(const Formula& f);

std::set<std::string> letters(const Formula& f);
std::set<std::string> letters(const Alpha& a);
std::set<std::string> letters(const std::vector<Formula>& seq);

// Signed letter occurrences, antecedent first, leftmost-outermost.
std::vector<Occurrence> signed_occurrences(const SequentIL& s);
std::vector<Occurrence> occurrences(const Alpha& a, Side side);
std::size_t leaf_count(const Alpha& a);

// Renames letter leaves in left-to-right order.
Alpha rename_leaves(const Alpha& a, const std::vector<std::string>& names, std::size_t& cursor);

}  // namespace mlc
