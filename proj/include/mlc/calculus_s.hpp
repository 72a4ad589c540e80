#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mlc/derivation.hpp"
#include "mlc/syntax.hpp"

namespace mlc {

struct DerivS;
using DerivSP = std::shared_ptr<const DerivS>;

// Rule parameters (formula counts):
//   ax            A |- A
//   axi           |- I
//   weak          premise G |- A,  conclusion I, G |- A
//   int k         premise G, A, B, D |- C with |G| = k,  conclusion G, B, A, D |- C
//   cut k         premises G |- A and D, A, T |- B with |D| = k,  conclusion D, G, T |- B
//   tl k          premise G, A, B, D |- C with |G| = k,  conclusion G, A * B, D |- C
//   tr            premises G |- A and D |- B,  conclusion G, D |- A * B
//   impl          premises G |- A and B, D |- C,  conclusion G, A -o B, D |- C
//   impr          premise A, G |- B,  conclusion G |- A -o B
struct DerivS {
    enum class Rule { Ax, AxI, Weak, Int, Cut, TL, TR, ImpL, ImpR };
    Rule rule = Rule::Ax;
    std::vector<std::size_t> params;
    SequentS concl;
    std::vector<DerivSP> kids;
};

const char* rule_name(DerivS::Rule r);

DerivSP s_ax(const Formula& a);
DerivSP s_axi();
DerivSP s_weak(const DerivSP& prem);
DerivSP s_int(const DerivSP& prem, std::size_t k);
DerivSP s_cut(const DerivSP& left, const DerivSP& right, std::size_t k);
DerivSP s_tl(const DerivSP& prem, std::size_t k);
DerivSP s_tr(const DerivSP& left, const DerivSP& right);
DerivSP s_impl(const DerivSP& left, const DerivSP& right);
DerivSP s_impr(const DerivSP& prem);

SequentS check_derivation_s(const DerivS& d);
bool is_cut_free(const DerivS& d);
std::size_t node_count(const DerivS& d);

TreeText to_tree(const DerivS& d);
DerivSP from_tree_s(const TreeText& t);
std::string to_string(const DerivS& d);
DerivSP parse_derivation_s(std::string_view text);

// Appends adjacent interchanges so that the antecedent becomes `target`,
// which must be a permutation of it.
DerivSP permute_to(const DerivSP& d, const std::vector<Formula>& target);

// Cut-free backward search over antecedent multisets.
std::optional<DerivSP> derivable_s(const SequentS& s);

// Derivations of A |- I and I |- A for a constant A.
std::pair<DerivSP, DerivSP> const_iso_s(const Formula& a);
// Derivation of G |- A for constant G and A.
DerivSP const_const_s(const std::vector<Formula>& g, const Formula& a);

struct ConstProperTrace {
    bool constant = false;
    std::vector<std::string> steps;  // "case N at PATH", outermost first
};
// Replays the induction showing that a proper antecedent with a constant consequent is constant.
ConstProperTrace check_const_proper(const DerivS& d);

struct SplitPair {
    DerivSP first, second;
};

// The splitters tally the proof cases they pass through into `cases` when it is given.

// From a cut-free derivation of a permutation of G, D |- A with D prime to G, A:
// derivations of D |- I (first) and G |- A (second).
SplitPair split_weak(const DerivSP& d, const std::vector<Formula>& g, const std::vector<Formula>& delta,
                     std::map<std::string, std::size_t>* cases = nullptr);
// From a cut-free derivation of a permutation of G, D |- A * B with G, A prime to D, B:
// derivations of G |- A and D |- B.
SplitPair split_tensor(const DerivSP& d, const std::vector<Formula>& g, const std::vector<Formula>& delta,
                       std::map<std::string, std::size_t>* cases = nullptr);
// From a cut-free derivation of a proper permutation of G, A -o B, D |- C with G, A prime to B, D, C:
// derivations of G |- A and B, D |- C.
SplitPair split_imp(const DerivSP& d, const std::vector<Formula>& g, const Formula& a, const Formula& b,
                    const std::vector<Formula>& delta, std::map<std::string, std::size_t>* cases = nullptr);

}  // namespace mlc
