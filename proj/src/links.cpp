#include "mlc/links.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace mlc {

namespace {

struct UnionFind {
    std::vector<int> parent;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Wires every index leaf of a term into a union-find; a term's source and target
// leaves are reported as the elements they are attached to.
struct Wiring {
    UnionFind uf;
    std::vector<int> index_leaf;  // element of each index leaf, in collect_index_leaves order

    std::vector<int> fresh(const Alpha& a) {
        std::vector<int> r(leaf_count(a));
        for (auto& x : r) {
            x = uf.add();
            index_leaf.push_back(x);
        }
        return r;
    }

    static std::vector<int> cat(std::vector<int> x, const std::vector<int>& y) {
        x.insert(x.end(), y.begin(), y.end());
        return x;
    }

    std::pair<std::vector<int>, std::vector<int>> build(const Term& t) {
        switch (t.kind()) {
            case Term::Kind::Id: {
                auto a = fresh(t.a());
                return {a, a};
            }
            case Term::Kind::Sym: {
                auto a = fresh(t.a());
                auto b = fresh(t.b());
                return {cat(a, b), cat(b, a)};
            }
            case Term::Kind::Eta: {  // b |- a -o a*b
                auto a = fresh(t.a());
                auto b = fresh(t.b());
                return {b, cat(cat(a, a), b)};
            }
            case Term::Kind::Eps: {  // a*(a -o b) |- b
                auto a = fresh(t.a());
                auto b = fresh(t.b());
                return {cat(cat(a, a), b), b};
            }
            case Term::Kind::ImpF: {
                auto a = fresh(t.a());
                auto [s, g] = build(t.body());
                return {cat(a, s), cat(a, g)};
            }
            case Term::Kind::Tensor: {
                std::vector<int> s, g;
                for (const auto& k : t.kids()) {
                    auto [ks, kg] = build(k);
                    s = cat(s, ks);
                    g = cat(g, kg);
                }
                return {s, g};
            }
            case Term::Kind::Comp: {
                auto [as, ag] = build(t.after());
                auto [bs, bg] = build(t.before());
                for (std::size_t i = 0; i < bg.size(); ++i) uf.unite(bg[i], as[i]);
                return {bs, ag};
            }
        }
        throw std::logic_error("unknown term kind");
    }
};

struct Analysis {
    LinkSet links;
    Wiring w;
    std::vector<int> boundary;  // element of each signed occurrence of the type
};

Analysis analyse(const Term& t) {
    Analysis an;
    Wiring& w = an.w;
    auto [s, g] = w.build(t);
    auto occ = signed_occurrences(t.type());
    an.boundary = Wiring::cat(s, g);
    const std::vector<int>& boundary = an.boundary;
    if (boundary.size() != occ.size()) throw std::logic_error("links: leaf count mismatch");
    std::map<int, std::vector<std::size_t>> by_root;
    for (std::size_t i = 0; i < boundary.size(); ++i) by_root[w.uf.find(boundary[i])].push_back(i);
    LinkSet& l = an.links;
    l.type = t.type();
    for (const auto& [root, members] : by_root) {
        if (members.size() != 2)
            throw std::logic_error("links: component with " + std::to_string(members.size()) + " boundary leaves");
        const Occurrence& x = occ[members[0]];
        const Occurrence& y = occ[members[1]];
        if (x.letter != y.letter || x.sign == y.sign) throw std::logic_error("links: ill-signed edge");
        l.edges.emplace_back(std::min(x.path, y.path), std::max(x.path, y.path));
    }
    std::sort(l.edges.begin(), l.edges.end());
    std::set<int> roots;
    for (std::size_t i = 0; i < w.uf.parent.size(); ++i) roots.insert(w.uf.find(static_cast<int>(i)));
    l.loops = roots.size() - by_root.size();
    return an;
}

}  // namespace

LinkSet links_of(const Term& t) { return analyse(t).links; }

const char* verdict_name(EqVerdict v) {
    switch (v) {
        case EqVerdict::Equal: return "Equal";
        case EqVerdict::NotEqual: return "NotEqual";
        case EqVerdict::TypeMismatch: return "TypeMismatch";
        case EqVerdict::Unsupported: return "Unsupported";
    }
    return "?";
}

EqVerdict eq_terms(const Term& f, const Term& g) {
    if (f.type() != g.type()) return EqVerdict::TypeMismatch;
    if (!is_proper(f.type())) return EqVerdict::Unsupported;
    return links_of(f) == links_of(g) ? EqVerdict::Equal : EqVerdict::NotEqual;
}

std::string fresh_letter(std::size_t i) {
    std::string s(1, static_cast<char>('a' + i % 26));
    if (i >= 26) s += std::to_string(i / 26);
    return s;
}

Generalized generalize(const Term& t) {
    Analysis an = analyse(t);
    auto occ = signed_occurrences(t.type());
    std::map<OccPath, std::size_t> occ_index;
    for (std::size_t i = 0; i < occ.size(); ++i) occ_index[occ[i].path] = i;
    std::map<std::string, std::string> subst;
    std::map<int, std::string> name_of_root;
    std::size_t next = 0;
    for (const auto& edge : an.links.edges) {
        std::size_t i = occ_index.at(edge.first);
        std::string name = fresh_letter(next++);
        name_of_root[an.w.uf.find(an.boundary[i])] = name;
        subst[name] = occ[i].letter;
    }
    std::vector<std::string> original;
    collect_index_leaves(t, original);
    std::vector<std::string> names(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        int root = an.w.uf.find(an.w.index_leaf[i]);
        auto it = name_of_root.find(root);
        if (it == name_of_root.end()) {  // closed loop
            std::string name = fresh_letter(next++);
            it = name_of_root.emplace(root, name).first;
            subst[name] = original[i];
        }
        names[i] = it->second;
    }
    return {rename_term_leaves(t, names), std::move(subst)};
}

SequentIL diversify_type(const Term& t) { return generalize(t).term.type(); }

RenderFormat parse_render_format(const std::string& name) {
    if (name == "json") return RenderFormat::Json;
    if (name == "dot") return RenderFormat::Dot;
    if (name == "tikz") return RenderFormat::Tikz;
    throw std::invalid_argument("unknown format '" + name + "' (expected json, dot or tikz)");
}

std::string to_json(const LinkSet& l) {
    nlohmann::ordered_json j;
    j["type"] = to_string(l.type);
    j["edges"] = nlohmann::ordered_json::array();
    for (const auto& [x, y] : l.edges) j["edges"].push_back({x.str(), y.str()});
    j["loops"] = l.loops;
    return j.dump();
}

namespace {

std::string node_id(const OccPath& p) {
    std::string s = p.str();
    std::replace(s.begin(), s.end(), '.', '_');
    return s;
}

std::string render_dot(const LinkSet& l) {
    auto occ = signed_occurrences(l.type);
    std::ostringstream o;
    o << "graph links {\n";
    o << "  label=\"" << to_string(l.type) << "\";\n";
    o << "  node [shape=plaintext];\n";
    for (Side side : {Side::Ant, Side::Con}) {
        o << "  { rank=" << (side == Side::Ant ? "source" : "sink") << ";";
        for (const auto& x : occ)
            if (x.path.side == side)
                o << " " << node_id(x.path) << " [label=\"" << x.letter << "@" << x.path.str() << "\"];";
        o << " }\n";
    }
    for (const auto& [x, y] : l.edges) o << "  " << node_id(x) << " -- " << node_id(y) << ";\n";
    if (l.loops) o << "  // closed loops: " << l.loops << "\n";
    o << "}\n";
    return o.str();
}

std::string render_tikz(const LinkSet& l) {
    auto occ = signed_occurrences(l.type);
    std::map<OccPath, std::pair<int, int>> pos;
    int xa = 0, xc = 0;
    std::ostringstream o;
    o << "\\begin{tikzpicture}\n";
    for (const auto& x : occ) {
        bool ant = x.path.side == Side::Ant;
        int col = ant ? xa++ : xc++;
        int row = ant ? 2 : 0;
        pos[x.path] = {col, row};
        o << "  \\node (" << node_id(x.path) << ") at (" << col << "," << row << ") {$" << x.letter
          << "^{" << (x.sign > 0 ? "+" : "-") << "}$};\n";
    }
    for (const auto& [x, y] : l.edges) {
        bool same_row = pos[x].second == pos[y].second;
        const char* bend = !same_row ? "" : pos[x].second == 0 ? "[bend left=60]" : "[bend right=60]";
        o << "  \\draw (" << node_id(x) << ") to" << bend << " (" << node_id(y) << ");\n";
    }
    o << "\\end{tikzpicture}\n";
    return o.str();
}

}  // namespace

std::string render(const LinkSet& l, RenderFormat f) {
    switch (f) {
        case RenderFormat::Json: return to_json(l) + "\n";
        case RenderFormat::Dot: return render_dot(l);
        case RenderFormat::Tikz: return render_tikz(l);
    }
    return "";
}

}  // namespace mlc
