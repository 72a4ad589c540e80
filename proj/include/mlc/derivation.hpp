#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mlc {

// A derivation node violates its rule figure.
class DerivationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Generic parenthesized tree `(rule int* [sequent] child*)` shared by both calculi.
struct TreeText {
    std::string rule;
    std::vector<std::size_t> ints;
    std::string sequent;
    std::vector<TreeText> kids;
};

TreeText parse_tree_text(std::string_view text);  // throws ParseError
// One node per line, children indented by two spaces.
std::string to_string(const TreeText& t);

}  // namespace mlc
