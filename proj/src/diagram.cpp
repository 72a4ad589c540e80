#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "mlc/terms.hpp"

namespace mlc {

namespace {

// A port reference: node -1 is the diagram boundary (an input when used as a producer,
// an output when used as a consumer).
struct Ref {
    int node = -1;
    int port = 0;
    friend bool operator==(const Ref&, const Ref&) = default;
};

struct Diagram;
using DiagramP = std::shared_ptr<const Diagram>;

enum class NK { Eta, Eps, Box };

struct DNode {
    NK kind = NK::Eta;
    Alpha a, b;
    DiagramP inner;
    std::vector<Ref> in;
    bool dead = false;
};

struct Diagram {
    Alpha src, tgt;
    std::vector<DNode> nodes;
    std::vector<Ref> out;
    std::string key;  // filled by normalize
};

std::vector<Prime> out_types(const DNode& n) {
    switch (n.kind) {
        case NK::Eta: return {Prime::imp(n.a, tensor_alpha(n.a, n.b))};
        case NK::Eps: return n.b.factors;
        case NK::Box: return {Prime::imp(n.a, n.inner->tgt)};
    }
    return {};
}

std::size_t nout(const DNode& n) {
    switch (n.kind) {
        case NK::Eta: return 1;
        case NK::Eps: return n.b.size();
        case NK::Box: return 1;
    }
    return 0;
}

const Prime& ref_type(const Diagram& d, Ref r, std::vector<Prime>& scratch) {
    if (r.node < 0) return d.src.factors[static_cast<std::size_t>(r.port)];
    scratch = out_types(d.nodes[static_cast<std::size_t>(r.node)]);
    return scratch[static_cast<std::size_t>(r.port)];
}

Prime type_at(const Diagram& d, Ref r) {
    std::vector<Prime> s;
    return ref_type(d, r, s);
}

Alpha types_of(const Diagram& d, const std::vector<Ref>& refs) {
    std::vector<Prime> v;
    for (const auto& r : refs) v.push_back(type_at(d, r));
    return Alpha(std::move(v));
}

struct Consumers {
    std::vector<Ref> of_input;
    std::vector<std::vector<Ref>> of_node;
    Ref of(Ref producer) const {
        return producer.node < 0 ? of_input[static_cast<std::size_t>(producer.port)]
                                 : of_node[static_cast<std::size_t>(producer.node)][static_cast<std::size_t>(producer.port)];
    }
};

Consumers consumers(const Diagram& d) {
    Consumers c;
    c.of_input.assign(d.src.size(), Ref{-2, 0});
    c.of_node.resize(d.nodes.size());
    for (std::size_t i = 0; i < d.nodes.size(); ++i) c.of_node[i].assign(nout(d.nodes[i]), Ref{-2, 0});
    auto note = [&](Ref producer, Ref consumer) {
        if (producer.node < 0) c.of_input[static_cast<std::size_t>(producer.port)] = consumer;
        else c.of_node[static_cast<std::size_t>(producer.node)][static_cast<std::size_t>(producer.port)] = consumer;
    };
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].dead) continue;
        for (std::size_t k = 0; k < d.nodes[i].in.size(); ++k) note(d.nodes[i].in[k], Ref{static_cast<int>(i), static_cast<int>(k)});
    }
    for (std::size_t k = 0; k < d.out.size(); ++k) note(d.out[k], Ref{-1, static_cast<int>(k)});
    return c;
}

void set_src(Diagram& d, Ref consumer, Ref producer) {
    if (consumer.node < 0) d.out[static_cast<std::size_t>(consumer.port)] = producer;
    else d.nodes[static_cast<std::size_t>(consumer.node)].in[static_cast<std::size_t>(consumer.port)] = producer;
}

void remap(Diagram& d, const std::function<Ref(Ref)>& f) {
    for (auto& n : d.nodes)
        if (!n.dead)
            for (auto& r : n.in) r = f(r);
    for (auto& r : d.out) r = f(r);
}

int add_node(Diagram& d, DNode n) {
    d.nodes.push_back(std::move(n));
    return static_cast<int>(d.nodes.size()) - 1;
}

std::vector<Ref> boundary(std::size_t n, int offset = 0) {
    std::vector<Ref> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(Ref{-1, static_cast<int>(i) + offset});
    return v;
}

bool is_identity(const Diagram& d) {
    for (const auto& n : d.nodes)
        if (!n.dead) return false;
    for (std::size_t i = 0; i < d.out.size(); ++i)
        if (!(d.out[i] == Ref{-1, static_cast<int>(i)})) return false;
    return true;
}

// Copies the live nodes of x into d; x's boundary inputs are bound to `inputs`.
// Returns the producers of x's boundary outputs.
std::vector<Ref> splice(Diagram& d, const Diagram& x, const std::vector<Ref>& inputs) {
    std::vector<int> idx(x.nodes.size(), -1);
    for (std::size_t i = 0; i < x.nodes.size(); ++i)
        if (!x.nodes[i].dead) idx[i] = add_node(d, x.nodes[i]);
    auto map = [&](Ref r) { return r.node < 0 ? inputs[static_cast<std::size_t>(r.port)] : Ref{idx[static_cast<std::size_t>(r.node)], r.port}; };
    for (std::size_t i = 0; i < x.nodes.size(); ++i)
        if (idx[i] >= 0)
            for (auto& r : d.nodes[static_cast<std::size_t>(idx[i])].in) r = map(r);
    std::vector<Ref> outs;
    for (const auto& r : x.out) outs.push_back(map(r));
    return outs;
}

std::string compute_key(const Diagram& d);

// Merges chained boxes, drops identity boxes, compacts and computes the key.
DiagramP normalize(Diagram d) {
    bool changed = true;
    while (changed) {
        changed = false;
        Consumers c = consumers(d);
        for (std::size_t i = 0; i < d.nodes.size() && !changed; ++i) {
            DNode& b = d.nodes[i];
            if (b.dead || b.kind != NK::Box) continue;
            if (is_identity(*b.inner)) {
                set_src(d, c.of_node[i][0], b.in[0]);
                b.dead = true;
                changed = true;
                break;
            }
            Ref nx = c.of_node[i][0];
            if (nx.node < 0) continue;
            DNode& b2 = d.nodes[static_cast<std::size_t>(nx.node)];
            if (b2.kind != NK::Box || b2.a != b.a) continue;
            Diagram merged;
            merged.src = b.inner->src;
            merged.tgt = b2.inner->tgt;
            auto mid = splice(merged, *b.inner, boundary(b.inner->src.size()));
            merged.out = splice(merged, *b2.inner, mid);
            b.inner = normalize(std::move(merged));
            set_src(d, c.of_node[static_cast<std::size_t>(nx.node)][0], Ref{static_cast<int>(i), 0});
            b2.dead = true;
            changed = true;
        }
    }
    std::vector<int> idx(d.nodes.size(), -1);
    std::vector<DNode> kept;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].dead) continue;
        idx[i] = static_cast<int>(kept.size());
        kept.push_back(std::move(d.nodes[i]));
    }
    d.nodes = std::move(kept);
    remap(d, [&](Ref r) { return r.node < 0 ? r : Ref{idx[static_cast<std::size_t>(r.node)], r.port}; });
    d.key = compute_key(d);
    return std::make_shared<const Diagram>(std::move(d));
}

std::string label(const DNode& n) {
    switch (n.kind) {
        case NK::Eta: return "H[" + to_string(n.a) + "," + to_string(n.b) + "]";
        case NK::Eps: return "E[" + to_string(n.a) + "," + to_string(n.b) + "]";
        case NK::Box: return "B[" + to_string(n.a) + "]{" + n.inner->key + "}";
    }
    return "";
}

// Canonical text of the component(s) reachable from `starts`, numbering nodes in DFS order.
std::string traverse(const Diagram& d, const Consumers& c, const std::vector<int>& starts, std::vector<int>& num,
                     std::vector<int>& seq) {
    std::function<void(int)> visit = [&](int n) {
        if (n < 0 || num[static_cast<std::size_t>(n)] >= 0) return;
        num[static_cast<std::size_t>(n)] = static_cast<int>(seq.size());
        seq.push_back(n);
        const DNode& x = d.nodes[static_cast<std::size_t>(n)];
        for (const auto& r : x.in) visit(r.node);
        for (const auto& r : c.of_node[static_cast<std::size_t>(n)]) visit(r.node);
    };
    std::size_t first = seq.size();
    for (int s : starts) visit(s);
    std::string out;
    auto ref = [&](Ref r) {
        return r.node < 0 ? "i" + std::to_string(r.port)
                          : "n" + std::to_string(num[static_cast<std::size_t>(r.node)] - static_cast<int>(first)) + "." +
                                std::to_string(r.port);
    };
    for (std::size_t k = first; k < seq.size(); ++k) {
        const DNode& x = d.nodes[static_cast<std::size_t>(seq[k])];
        out += label(x) + "(";
        for (std::size_t j = 0; j < x.in.size(); ++j) out += (j ? "," : "") + ref(x.in[j]);
        out += ")";
    }
    return out;
}

std::string compute_key(const Diagram& d) {
    Consumers c = consumers(d);
    std::vector<int> num(d.nodes.size(), -1), seq;
    std::vector<int> starts;
    for (const auto& r : d.out) starts.push_back(r.node);
    for (const auto& r : c.of_input) starts.push_back(r.node);
    std::string k = to_string(d.src) + "=>" + to_string(d.tgt) + ":" + traverse(d, c, starts, num, seq) + "|";
    for (std::size_t i = 0; i < d.out.size(); ++i) {
        Ref r = d.out[i];
        k += (i ? "," : "") + (r.node < 0 ? "i" + std::to_string(r.port)
                                          : "n" + std::to_string(num[static_cast<std::size_t>(r.node)]) + "." + std::to_string(r.port));
    }
    std::vector<std::string> floating;
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (num[i] >= 0) continue;
        std::vector<int> comp_num = num, comp_seq = seq;
        traverse(d, c, {static_cast<int>(i)}, comp_num, comp_seq);
        std::vector<int> members(comp_seq.begin() + static_cast<long>(seq.size()), comp_seq.end());
        std::string best;
        for (int s : members) {
            std::vector<int> n2 = num, s2 = seq;
            std::string str = traverse(d, c, {s}, n2, s2);
            if (best.empty() || str < best) best = str;
        }
        for (int m : members) num[static_cast<std::size_t>(m)] = 0x40000000;
        floating.push_back(best);
    }
    std::sort(floating.begin(), floating.end());
    for (const auto& f : floating) k += "|{" + f + "}";
    return k;
}

// ---------- term to diagram ----------

std::vector<Ref> build(const Term& t, Diagram& d, std::vector<Ref> in);

DiagramP diagram_of(const Term& t) {
    Diagram d;
    d.src = t.src();
    d.tgt = t.tgt();
    d.out = build(t, d, boundary(t.src().size()));
    return normalize(std::move(d));
}

std::vector<Ref> build(const Term& t, Diagram& d, std::vector<Ref> in) {
    using K = Term::Kind;
    switch (t.kind()) {
        case K::Id: return in;
        case K::Sym: {
            std::size_t na = t.a().size();
            std::vector<Ref> out(in.begin() + static_cast<long>(na), in.end());
            out.insert(out.end(), in.begin(), in.begin() + static_cast<long>(na));
            return out;
        }
        case K::Eta: {
            int n = add_node(d, DNode{NK::Eta, t.a(), t.b(), nullptr, std::move(in)});
            return {Ref{n, 0}};
        }
        case K::Eps: {
            int n = add_node(d, DNode{NK::Eps, t.a(), t.b(), nullptr, std::move(in)});
            std::vector<Ref> out;
            for (std::size_t j = 0; j < t.b().size(); ++j) out.push_back(Ref{n, static_cast<int>(j)});
            return out;
        }
        case K::Comp: return build(t.after(), d, build(t.before(), d, std::move(in)));
        case K::Tensor: {
            std::vector<Ref> out;
            std::size_t at = 0;
            for (const auto& f : t.kids()) {
                std::vector<Ref> part(in.begin() + static_cast<long>(at), in.begin() + static_cast<long>(at + f.src().size()));
                at += f.src().size();
                auto o = build(f, d, std::move(part));
                out.insert(out.end(), o.begin(), o.end());
            }
            return out;
        }
        case K::ImpF: {
            int n = add_node(d, DNode{NK::Box, t.a(), Alpha(), diagram_of(t.body()), std::move(in)});
            return {Ref{n, 0}};
        }
    }
    return in;
}

// ---------- moves ----------

std::vector<bool> downstream(const Diagram& d, const Consumers& c, int from) {
    std::vector<bool> seen(d.nodes.size(), false);
    std::vector<int> stack{from};
    while (!stack.empty()) {
        int n = stack.back();
        stack.pop_back();
        for (const auto& r : c.of_node[static_cast<std::size_t>(n)]) {
            if (r.node >= 0 && !seen[static_cast<std::size_t>(r.node)]) {
                seen[static_cast<std::size_t>(r.node)] = true;
                stack.push_back(r.node);
            }
        }
    }
    return seen;
}

DiagramP box_of(const Alpha& src, const Alpha& tgt, std::vector<DNode> nodes, std::vector<Ref> out) {
    Diagram x;
    x.src = src;
    x.tgt = tgt;
    x.nodes = std::move(nodes);
    x.out = std::move(out);
    return normalize(std::move(x));
}

void moves(const Diagram& d, std::vector<DiagramP>& out);

// eta after f  ->  (A -o (1_A * f)) after eta, one node f at a time.
void nateta_in(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    for (std::size_t ei = 0; ei < d.nodes.size(); ++ei) {
        const DNode& e = d.nodes[ei];
        if (e.kind != NK::Eta) continue;
        auto down = downstream(d, c, static_cast<int>(ei));
        std::size_t na = e.a.size();
        for (std::size_t ni = 0; ni < d.nodes.size(); ++ni) {
            if (ni == ei || down[ni]) continue;
            const DNode& n = d.nodes[ni];
            bool all = true;
            for (const auto& r : c.of_node[ni])
                if (r.node != static_cast<int>(ei)) all = false;
            if (!all) continue;
            std::vector<Ref> L;
            std::vector<int> pos(e.in.size(), -1);
            int nstart = -1;
            for (std::size_t k = 0; k < e.in.size(); ++k) {
                if (e.in[k].node == static_cast<int>(ni)) {
                    if (nstart < 0) {
                        nstart = static_cast<int>(L.size());
                        L.insert(L.end(), n.in.begin(), n.in.end());
                    }
                } else {
                    pos[k] = static_cast<int>(L.size());
                    L.push_back(e.in[k]);
                }
            }
            if (nstart < 0) {
                nstart = static_cast<int>(L.size());
                L.insert(L.end(), n.in.begin(), n.in.end());
            }
            Alpha B = types_of(d, L);
            DNode inner_n = n;
            inner_n.in.clear();
            for (std::size_t i = 0; i < n.in.size(); ++i) inner_n.in.push_back(Ref{-1, static_cast<int>(na + nstart + i)});
            std::vector<Ref> iout = boundary(na);
            for (std::size_t k = 0; k < e.in.size(); ++k)
                iout.push_back(e.in[k].node == static_cast<int>(ni) ? Ref{0, e.in[k].port} : Ref{-1, static_cast<int>(na) + pos[k]});
            auto inner = box_of(tensor_alpha(e.a, B), tensor_alpha(e.a, e.b), {inner_n}, iout);
            Diagram x = d;
            Ref cons = c.of_node[ei][0];
            x.nodes[ei].in = L;
            x.nodes[ei].b = B;
            x.nodes[ni].dead = true;
            int bx = add_node(x, DNode{NK::Box, e.a, Alpha(), inner, {Ref{static_cast<int>(ei), 0}}});
            set_src(x, cons, Ref{bx, 0});
            out.push_back(normalize(std::move(x)));
        }
        // reorder the inputs of eta, compensating inside a box
        for (std::size_t k = 0; k + 1 < e.in.size(); ++k) {
            Diagram x = d;
            std::swap(x.nodes[ei].in[k], x.nodes[ei].in[k + 1]);
            auto f = e.b.factors;
            std::swap(f[k], f[k + 1]);
            x.nodes[ei].b = Alpha(f);
            std::vector<Ref> iout = boundary(na);
            for (std::size_t q = 0; q < e.in.size(); ++q) {
                std::size_t s = q == k ? k + 1 : q == k + 1 ? k : q;
                iout.push_back(Ref{-1, static_cast<int>(na + s)});
            }
            auto inner = box_of(tensor_alpha(e.a, Alpha(f)), tensor_alpha(e.a, e.b), {}, iout);
            Ref cons = c.of_node[ei][0];
            int bx = add_node(x, DNode{NK::Box, e.a, Alpha(), inner, {Ref{static_cast<int>(ei), 0}}});
            set_src(x, cons, Ref{bx, 0});
            out.push_back(normalize(std::move(x)));
        }
    }
}

// (A -o (1_A * f)) after eta  ->  eta after f, one node f at a time.
void nateta_out(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    for (std::size_t ei = 0; ei < d.nodes.size(); ++ei) {
        const DNode& e = d.nodes[ei];
        if (e.kind != NK::Eta) continue;
        Ref cb = c.of_node[ei][0];
        if (cb.node < 0) continue;
        const DNode& b = d.nodes[static_cast<std::size_t>(cb.node)];
        if (b.kind != NK::Box || b.a != e.a) continue;
        const Diagram& I = *b.inner;
        int na = static_cast<int>(e.a.size());
        for (std::size_t mi = 0; mi < I.nodes.size(); ++mi) {
            const DNode& m = I.nodes[mi];
            bool ok = true;
            std::vector<bool> used(e.in.size(), false);
            for (const auto& r : m.in) {
                if (r.node >= 0 || r.port < na) ok = false;
                else used[static_cast<std::size_t>(r.port - na)] = true;
            }
            if (!ok) continue;
            Diagram x = d;
            DNode outer_m = m;
            outer_m.in.clear();
            for (const auto& r : m.in) outer_m.in.push_back(e.in[static_cast<std::size_t>(r.port - na)]);
            int mo = add_node(x, outer_m);
            std::size_t mout = nout(m);
            std::vector<Ref> L;
            std::vector<int> newpos(e.in.size(), -1);
            int mstart = -1;
            for (std::size_t q = 0; q < e.in.size(); ++q) {
                if (used[q]) {
                    if (mstart < 0) {
                        mstart = static_cast<int>(L.size());
                        for (std::size_t j = 0; j < mout; ++j) L.push_back(Ref{mo, static_cast<int>(j)});
                    }
                } else {
                    newpos[q] = static_cast<int>(L.size());
                    L.push_back(e.in[q]);
                }
            }
            if (mstart < 0) {
                mstart = static_cast<int>(L.size());
                for (std::size_t j = 0; j < mout; ++j) L.push_back(Ref{mo, static_cast<int>(j)});
            }
            Alpha B = types_of(x, L);
            Diagram ni = I;
            ni.nodes[mi].dead = true;
            ni.src = tensor_alpha(e.a, B);
            remap(ni, [&](Ref r) {
                if (r.node < 0) return r.port < na ? r : Ref{-1, na + newpos[static_cast<std::size_t>(r.port - na)]};
                if (r.node == static_cast<int>(mi)) return Ref{-1, na + mstart + r.port};
                return r;
            });
            x.nodes[ei].in = L;
            x.nodes[ei].b = B;
            x.nodes[static_cast<std::size_t>(cb.node)].inner = normalize(std::move(ni));
            out.push_back(normalize(std::move(x)));
        }
    }
}

// eps after (1_A * (A -o f))  ->  f after eps: whole box, one node, or a swap of outputs.
void nateps_out(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    for (std::size_t ei = 0; ei < d.nodes.size(); ++ei) {
        const DNode& e = d.nodes[ei];
        if (e.kind != NK::Eps) continue;
        std::size_t na = e.a.size();
        Ref p = e.in[na];
        if (p.node >= 0) {
            const DNode& b = d.nodes[static_cast<std::size_t>(p.node)];
            if (b.kind == NK::Box && b.a == e.a) {
                const Diagram& I = *b.inner;
                if (I.nodes.size() > 1) {
                    Diagram x = d;
                    x.nodes[ei].in[na] = b.in[0];
                    x.nodes[ei].b = I.src;
                    x.nodes[static_cast<std::size_t>(p.node)].dead = true;
                    std::vector<Ref> eouts;
                    for (std::size_t j = 0; j < I.src.size(); ++j) eouts.push_back(Ref{static_cast<int>(ei), static_cast<int>(j)});
                    auto res = splice(x, I, eouts);
                    for (std::size_t r = 0; r < e.b.size(); ++r) set_src(x, c.of_node[ei][r], res[r]);
                    out.push_back(normalize(std::move(x)));
                }
                Consumers ci = consumers(I);
                for (std::size_t mi = 0; mi < I.nodes.size(); ++mi) {
                    const DNode& m = I.nodes[mi];
                    bool ok = true;
                    std::vector<bool> from_m(e.b.size(), false);
                    std::vector<int> mport(e.b.size(), -1);
                    for (std::size_t j = 0; j < ci.of_node[mi].size(); ++j) {
                        Ref r = ci.of_node[mi][j];
                        if (r.node >= 0) ok = false;
                        else {
                            from_m[static_cast<std::size_t>(r.port)] = true;
                            mport[static_cast<std::size_t>(r.port)] = static_cast<int>(j);
                        }
                    }
                    if (!ok) continue;
                    std::vector<Ref> iout;
                    std::vector<int> newpos(e.b.size(), -1);
                    int mstart = -1;
                    for (std::size_t r = 0; r < e.b.size(); ++r) {
                        if (from_m[r]) {
                            if (mstart < 0) {
                                mstart = static_cast<int>(iout.size());
                                iout.insert(iout.end(), m.in.begin(), m.in.end());
                            }
                        } else {
                            newpos[r] = static_cast<int>(iout.size());
                            iout.push_back(I.out[r]);
                        }
                    }
                    if (mstart < 0) {
                        mstart = static_cast<int>(iout.size());
                        iout.insert(iout.end(), m.in.begin(), m.in.end());
                    }
                    Diagram ni = I;
                    ni.out = iout;
                    ni.tgt = types_of(I, iout);
                    ni.nodes[mi].dead = true;
                    Alpha newb = ni.tgt;
                    Diagram x = d;
                    x.nodes[static_cast<std::size_t>(p.node)].inner = normalize(std::move(ni));
                    x.nodes[ei].b = newb;
                    DNode outer_m = m;
                    outer_m.in.clear();
                    for (std::size_t i = 0; i < m.in.size(); ++i) outer_m.in.push_back(Ref{static_cast<int>(ei), mstart + static_cast<int>(i)});
                    int mo = add_node(x, outer_m);
                    for (std::size_t r = 0; r < e.b.size(); ++r) {
                        Ref cons = c.of_node[ei][r];
                        set_src(x, cons, from_m[r] ? Ref{mo, mport[r]} : Ref{static_cast<int>(ei), newpos[r]});
                    }
                    out.push_back(normalize(std::move(x)));
                }
            }
        }
        // swap two outputs of eps, compensating with a box on its implication input
        for (std::size_t k = 0; k + 1 < e.b.size(); ++k) {
            auto f = e.b.factors;
            std::swap(f[k], f[k + 1]);
            std::vector<Ref> iout;
            for (std::size_t q = 0; q < f.size(); ++q) {
                std::size_t s = q == k ? k + 1 : q == k + 1 ? k : q;
                iout.push_back(Ref{-1, static_cast<int>(s)});
            }
            auto inner = box_of(e.b, Alpha(f), {}, iout);
            Diagram x = d;
            int bx = add_node(x, DNode{NK::Box, e.a, Alpha(), inner, {e.in[na]}});
            x.nodes[ei].in[na] = Ref{bx, 0};
            x.nodes[ei].b = Alpha(f);
            set_src(x, c.of_node[ei][k], Ref{static_cast<int>(ei), static_cast<int>(k + 1)});
            set_src(x, c.of_node[ei][k + 1], Ref{static_cast<int>(ei), static_cast<int>(k)});
            out.push_back(normalize(std::move(x)));
        }
    }
}

// f after eps  ->  eps after (1_A * (A -o f)), one node f at a time.
void nateps_in(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    for (std::size_t ei = 0; ei < d.nodes.size(); ++ei) {
        const DNode& e = d.nodes[ei];
        if (e.kind != NK::Eps) continue;
        std::size_t na = e.a.size();
        for (std::size_t mi = 0; mi < d.nodes.size(); ++mi) {
            if (mi == ei) continue;
            const DNode& m = d.nodes[mi];
            bool ok = true;
            std::vector<bool> used(e.b.size(), false);
            for (const auto& r : m.in) {
                if (r.node != static_cast<int>(ei)) ok = false;
                else used[static_cast<std::size_t>(r.port)] = true;
            }
            if (!ok) continue;
            if (m.in.empty() && downstream(d, c, static_cast<int>(mi))[ei]) continue;
            std::size_t mout = nout(m);
            std::vector<int> newpos(e.b.size(), -1);
            std::vector<Ref> iout;
            int mstart = -1;
            for (std::size_t r = 0; r < e.b.size(); ++r) {
                if (used[r]) {
                    if (mstart < 0) {
                        mstart = static_cast<int>(iout.size());
                        for (std::size_t j = 0; j < mout; ++j) iout.push_back(Ref{0, static_cast<int>(j)});
                    }
                } else {
                    newpos[r] = static_cast<int>(iout.size());
                    iout.push_back(Ref{-1, static_cast<int>(r)});
                }
            }
            if (mstart < 0) {
                mstart = static_cast<int>(iout.size());
                for (std::size_t j = 0; j < mout; ++j) iout.push_back(Ref{0, static_cast<int>(j)});
            }
            DNode inner_m = m;
            inner_m.in.clear();
            for (const auto& r : m.in) inner_m.in.push_back(Ref{-1, r.port});
            Diagram tmp;
            tmp.src = e.b;
            tmp.nodes = {inner_m};
            Alpha newb = types_of(tmp, iout);
            auto inner = box_of(e.b, newb, {inner_m}, iout);
            Diagram x = d;
            int bx = add_node(x, DNode{NK::Box, e.a, Alpha(), inner, {e.in[na]}});
            x.nodes[ei].in[na] = Ref{bx, 0};
            x.nodes[ei].b = newb;
            x.nodes[mi].dead = true;
            for (std::size_t r = 0; r < e.b.size(); ++r)
                if (!used[r]) set_src(x, c.of_node[ei][r], Ref{static_cast<int>(ei), newpos[r]});
            for (std::size_t j = 0; j < mout; ++j) set_src(x, c.of_node[mi][j], Ref{static_cast<int>(ei), mstart + static_cast<int>(j)});
            out.push_back(normalize(std::move(x)));
        }
    }
}

void triangles(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    for (std::size_t ei = 0; ei < d.nodes.size(); ++ei) {
        const DNode& e = d.nodes[ei];
        // eps after (1_A * eta) = 1
        if (e.kind == NK::Eps) {
            std::size_t na = e.a.size();
            Ref p = e.in[na];
            if (p.node >= 0 && d.nodes[static_cast<std::size_t>(p.node)].kind == NK::Eta) {
                const DNode& h = d.nodes[static_cast<std::size_t>(p.node)];
                Diagram x = d;
                for (std::size_t r = 0; r < e.b.size(); ++r)
                    set_src(x, c.of_node[ei][r], r < na ? e.in[r] : h.in[r - na]);
                x.nodes[ei].dead = true;
                x.nodes[static_cast<std::size_t>(p.node)].dead = true;
                out.push_back(normalize(std::move(x)));
            }
        }
        // (A -o eps) after eta = 1
        if (e.kind == NK::Eta && e.b.size() == 1 && !e.b.factors[0].is_letter() && *e.b.factors[0].dom == e.a) {
            Ref cb = c.of_node[ei][0];
            if (cb.node < 0) continue;
            const DNode& b = d.nodes[static_cast<std::size_t>(cb.node)];
            if (b.kind != NK::Box || b.a != e.a) continue;
            const Diagram& I = *b.inner;
            std::size_t na = e.a.size();
            for (std::size_t k = 0; k < I.nodes.size(); ++k) {
                const DNode& x0 = I.nodes[k];
                if (x0.kind != NK::Eps || x0.a != e.a) continue;
                bool ok = true;
                for (std::size_t i = 0; i <= na; ++i)
                    if (!(x0.in[i] == Ref{-1, static_cast<int>(i)})) ok = false;
                if (!ok) continue;
                Diagram ni = I;
                ni.nodes[k].dead = true;
                ni.src = x0.b;
                remap(ni, [&](Ref r) { return r.node == static_cast<int>(k) ? Ref{-1, r.port} : r; });
                Diagram x = d;
                x.nodes[static_cast<std::size_t>(cb.node)].inner = normalize(std::move(ni));
                x.nodes[static_cast<std::size_t>(cb.node)].in = {e.in[0]};
                x.nodes[ei].dead = true;
                out.push_back(normalize(std::move(x)));
            }
        }
    }
}

// Right-to-left triangle laws, inserted on single wires.
void insertions(const Diagram& d, const Consumers& c, std::vector<DiagramP>& out) {
    std::vector<std::pair<Ref, Ref>> wires;  // (producer, consumer)
    for (std::size_t i = 0; i < c.of_input.size(); ++i) wires.push_back({Ref{-1, static_cast<int>(i)}, c.of_input[i]});
    for (std::size_t n = 0; n < c.of_node.size(); ++n)
        for (std::size_t j = 0; j < c.of_node[n].size(); ++j) wires.push_back({Ref{static_cast<int>(n), static_cast<int>(j)}, c.of_node[n][j]});
    for (const auto& [p, q] : wires) {
        Prime t = type_at(d, p);
        Alpha X({t});
        {
            Diagram x = d;
            int h = add_node(x, DNode{NK::Eta, X, Alpha(), nullptr, {}});
            int e = add_node(x, DNode{NK::Eps, X, X, nullptr, {p, Ref{h, 0}}});
            set_src(x, q, Ref{e, 0});
            out.push_back(normalize(std::move(x)));
        }
        {
            Diagram x = d;
            int h = add_node(x, DNode{NK::Eta, Alpha(), X, nullptr, {p}});
            int e = add_node(x, DNode{NK::Eps, Alpha(), X, nullptr, {Ref{h, 0}}});
            set_src(x, q, Ref{e, 0});
            out.push_back(normalize(std::move(x)));
        }
        if (!t.is_letter()) {
            const Alpha& A = *t.dom;
            const Alpha& B = *t.cod;
            std::vector<Ref> ein = boundary(A.size() + 1);
            std::vector<Ref> eout;
            for (std::size_t j = 0; j < B.size(); ++j) eout.push_back(Ref{0, static_cast<int>(j)});
            auto inner = box_of(tensor_alpha(A, X), B, {DNode{NK::Eps, A, B, nullptr, ein}}, eout);
            Diagram x = d;
            int h = add_node(x, DNode{NK::Eta, A, X, nullptr, {p}});
            int bx = add_node(x, DNode{NK::Box, A, Alpha(), inner, {Ref{h, 0}}});
            set_src(x, q, Ref{bx, 0});
            out.push_back(normalize(std::move(x)));
        }
    }
    Diagram x = d;
    int h = add_node(x, DNode{NK::Eta, Alpha(), Alpha(), nullptr, {}});
    add_node(x, DNode{NK::Eps, Alpha(), Alpha(), nullptr, {Ref{h, 0}}});
    out.push_back(normalize(std::move(x)));
}

void moves(const Diagram& d, std::vector<DiagramP>& out) {
    Consumers c = consumers(d);
    triangles(d, c, out);
    nateta_in(d, c, out);
    nateta_out(d, c, out);
    nateps_out(d, c, out);
    nateps_in(d, c, out);
    insertions(d, c, out);
    for (std::size_t i = 0; i < d.nodes.size(); ++i) {
        if (d.nodes[i].kind != NK::Box) continue;
        std::vector<DiagramP> inner;
        moves(*d.nodes[i].inner, inner);
        for (auto& in : inner) {
            Diagram x = d;
            x.nodes[i].inner = in;
            out.push_back(normalize(std::move(x)));
        }
    }
}

}  // namespace

std::string diagram_key(const Term& t) { return diagram_of(t)->key; }

std::vector<std::string> oracle_neighbor_keys(const Term& t) {
    auto d = diagram_of(t);
    std::vector<DiagramP> out;
    moves(*d, out);
    std::set<std::string> seen;
    std::vector<std::string> keys;
    for (const auto& x : out)
        if (x->key != d->key && seen.insert(x->key).second) keys.push_back(x->key);
    return keys;
}

static constexpr std::size_t kWeightFactor = 4;

static std::size_t weight(const Diagram& d) {
    std::size_t w = 0;
    for (const auto& n : d.nodes) w += 1 + (n.inner ? weight(*n.inner) : 0);
    return w;
}

OracleResult oracle_equal(const Term& f, const Term& g, std::size_t budget) {
    if (f.type() != g.type())
        throw TypeError("oracle: types differ: " + to_string(f.type()) + " vs " + to_string(g.type()));
    OracleResult res;
    // Best-first from both ends: smaller diagrams first, ties broken by distance.
    struct Item {
        std::size_t prio, dist;
        DiagramP d;
        bool operator<(const Item& o) const { return prio != o.prio ? prio > o.prio : dist > o.dist; }
    };
    struct Side {
        std::unordered_map<std::string, std::size_t> dist;
        std::priority_queue<Item> open;
        bool exhausted = false;
    } side[2];
    auto df = diagram_of(f), dg = diagram_of(g);
    if (df->key == dg->key) {
        res.verdict = OracleVerdict::Equal;
        res.visited_left = res.visited_right = 1;
        return res;
    }
    auto push = [&](Side& sd, DiagramP d, std::size_t dist) {
        if (sd.dist.emplace(d->key, dist).second) sd.open.push({kWeightFactor * weight(*d) + dist, dist, std::move(d)});
    };
    push(side[0], df, 0);
    push(side[1], dg, 0);
    auto finish = [&]() {
        res.visited_left = side[0].dist.size();
        res.visited_right = side[1].dist.size();
        res.exhausted_left = side[0].exhausted;
        res.exhausted_right = side[1].exhausted;
    };
    for (;;) {
        bool can0 = !side[0].open.empty() && side[0].dist.size() < budget;
        bool can1 = !side[1].open.empty() && side[1].dist.size() < budget;
        side[0].exhausted = side[0].open.empty();
        side[1].exhausted = side[1].open.empty();
        if (!can0 && !can1) break;
        int s = can0 && can1 ? (side[0].dist.size() <= side[1].dist.size() ? 0 : 1) : (can0 ? 0 : 1);
        Side& me = side[s];
        Side& other = side[1 - s];
        Item cur = me.open.top();
        me.open.pop();
        std::vector<DiagramP> nb;
        moves(*cur.d, nb);
        for (auto& n : nb) {
            auto it = other.dist.find(n->key);
            if (it != other.dist.end()) {
                res.verdict = OracleVerdict::Equal;
                res.distance = cur.dist + 1 + it->second;
                finish();
                return res;
            }
            push(me, n, cur.dist + 1);
        }
    }
    finish();
    return res;
}

}  // namespace mlc
