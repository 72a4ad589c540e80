#include "mlc/derivation.hpp"

#include <cctype>

#include "mlc/syntax.hpp"

namespace mlc {

namespace {

class TreeParser {
public:
    explicit TreeParser(std::string_view s) : s_(s) {}

    TreeText tree() {
        skip();
        expect('(');
        TreeText t;
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && (std::islower(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
        if (start == i_) throw ParseError(i_, "expected a rule name");
        t.rule = std::string(s_.substr(start, i_ - start));
        skip();
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            std::size_t v = 0;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) v = v * 10 + (s_[i_++] - '0');
            t.ints.push_back(v);
            skip();
        }
        expect('[');
        std::size_t close = s_.find(']', i_);
        if (close == std::string_view::npos) throw ParseError(i_, "unterminated sequent");
        t.sequent = std::string(s_.substr(i_, close - i_));
        i_ = close + 1;
        skip();
        while (i_ < s_.size() && s_[i_] == '(') {
            t.kids.push_back(tree());
            skip();
        }
        expect(')');
        return t;
    }

    void finish() {
        skip();
        if (i_ != s_.size()) throw ParseError(i_, "trailing input");
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    void expect(char c) {
        if (i_ >= s_.size() || s_[i_] != c) throw ParseError(i_, std::string("expected '") + c + "'");
        ++i_;
    }
    std::string_view s_;
    std::size_t i_ = 0;
};

void print(const TreeText& t, int indent, std::string& out) {
    out.append(static_cast<std::size_t>(indent), ' ');
    out += "(" + t.rule;
    for (auto v : t.ints) out += " " + std::to_string(v);
    out += " [" + t.sequent + "]";
    for (const auto& k : t.kids) {
        out += "\n";
        print(k, indent + 2, out);
    }
    out += ")";
}

}  // namespace

TreeText parse_tree_text(std::string_view text) {
    TreeParser p(text);
    TreeText t = p.tree();
    p.finish();
    return t;
}

std::string to_string(const TreeText& t) {
    std::string out;
    print(t, 0, out);
    return out;
}

}  // namespace mlc
