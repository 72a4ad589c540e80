#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mlc/syntax.hpp"
#include "mlc/terms.hpp"

namespace mlc {

// The 1-cobordism of a term: a perfect matching on the letter occurrences of its type
// plus the number of closed components created by gluing.
struct LinkSet {
    SequentIL type;
    std::vector<std::pair<OccPath, OccPath>> edges;  // smaller endpoint first, sorted
    std::size_t loops = 0;
    friend bool operator==(const LinkSet& a, const LinkSet& b) {
        return a.type == b.type && a.edges == b.edges && a.loops == b.loops;
    }
};

LinkSet links_of(const Term& t);

enum class EqVerdict { Equal, NotEqual, TypeMismatch, Unsupported };
const char* verdict_name(EqVerdict v);
EqVerdict eq_terms(const Term& f, const Term& g);

struct Generalized {
    Term term;                                  // balanced
    std::map<std::string, std::string> subst;   // fresh letter -> original letter
};

// One fresh letter per link edge (named a, b, c, ... in canonical edge order),
// then one per closed loop.
Generalized generalize(const Term& t);
SequentIL diversify_type(const Term& t);
std::string fresh_letter(std::size_t i);

enum class RenderFormat { Json, Dot, Tikz };
RenderFormat parse_render_format(const std::string& name);  // throws std::invalid_argument
std::string render(const LinkSet& l, RenderFormat f);
std::string to_json(const LinkSet& l);

}  // namespace mlc
