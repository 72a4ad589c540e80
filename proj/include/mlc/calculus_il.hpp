#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mlc/derivation.hpp"
#include "mlc/syntax.hpp"
#include "mlc/terms.hpp"

namespace mlc {

struct DerivIL;
using DerivILP = std::shared_ptr<const DerivIL>;

// Rule parameters (factor counts):
//   ax                       A |- A
//   int g a b   premise G*A*B*E |- D,  conclusion G*B*A*E |- D
//   cut g       premises C |- A and G*A*E |- D,  conclusion G*C*E |- D
//   impl b      premises C |- A and B*G |- D,  conclusion C*(A -o B)*G |- D
//   impr a      premise A*G |- C,  conclusion G |- A -o C
//   tt          premises A |- C and B |- E,  conclusion A*B |- C*E
struct DerivIL {
    enum class Rule { Ax, Int, Cut, ImpL, ImpR, TT };
    Rule rule = Rule::Ax;
    std::vector<std::size_t> params;
    SequentIL concl;
    std::vector<DerivILP> kids;
};

const char* rule_name(DerivIL::Rule r);

// Checked builders; each throws DerivationError when the figure does not apply.
DerivILP il_ax(const Alpha& a);
DerivILP il_int(const DerivILP& prem, std::size_t g, std::size_t a, std::size_t b);
DerivILP il_cut(const DerivILP& left, const DerivILP& right, std::size_t g);
DerivILP il_impl(const DerivILP& left, const DerivILP& right, std::size_t b);
DerivILP il_impr(const DerivILP& prem, std::size_t a);
DerivILP il_tt(const DerivILP& left, const DerivILP& right);

SequentIL check_derivation_il(const DerivIL& d);
bool is_cut_free(const DerivIL& d);
std::size_t node_count(const DerivIL& d);
std::size_t cut_count(const DerivIL& d);

TreeText to_tree(const DerivIL& d);
DerivILP from_tree_il(const TreeText& t);  // checks every node
std::string to_string(const DerivIL& d);
DerivILP parse_derivation_il(std::string_view text);

Term code(const DerivIL& d);
DerivILP decode(const Term& t);

std::optional<DerivILP> derivable_il(const SequentIL& s);

struct CutMeasure {
    std::size_t degree = 0, rank = 0, left_rank = 0, right_rank = 0;
    friend auto operator<=>(const CutMeasure& a, const CutMeasure& b) {
        if (auto c = a.degree <=> b.degree; c != 0) return c;
        return a.rank <=> b.rank;
    }
    friend bool operator==(const CutMeasure& a, const CutMeasure& b) { return a.degree == b.degree && a.rank == b.rank; }
};

// Measure of the cut at `path` (child indices from the root).
CutMeasure cut_measure(const DerivIL& d, const std::vector<std::size_t>& path);
// Measure of a cut of `left` against `right` at factor position g.
CutMeasure cut_measure(const DerivIL& left, const DerivIL& right, std::size_t g);

enum class CutCase { Zero, C1a, C1b, C1c, C2a, C2b, C2c, C2cMirror, C2d, C2e, C2eInside, C2f, C2g, C2h };
constexpr std::size_t kCutCaseCount = 14;
const char* cut_case_name(CutCase c);

struct ElimStats {
    std::array<std::size_t, kCutCaseCount> cases{};
    std::size_t measure_checks = 0;
    std::size_t measure_violations = 0;  // excluding the degree-0 lower cut of the tensor case
};

DerivILP eliminate_cuts(const DerivILP& d, ElimStats* stats = nullptr);
DerivILP clean(const DerivILP& d);
bool is_clean(const DerivIL& d);

}  // namespace mlc
