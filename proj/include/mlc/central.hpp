#pragma once

#include <string>
#include <vector>

#include "mlc/terms.hpp"

namespace mlc {

// Bijection on {1..m} in one-line notation: images[s-1] is the image of s.
struct Perm {
    std::vector<int> images;
    std::size_t degree() const { return images.size(); }
    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;
};

// Descending run s_i s_(i-1) ... s_j of adjacent transpositions.
struct PermBlock {
    int i = 0, j = 0;
    friend bool operator==(const PermBlock&, const PermBlock&) = default;
    friend auto operator<=>(const PermBlock&, const PermBlock&) = default;
};

// Product of blocks with strictly increasing i; empty for the identity.
struct PermNormalForm {
    std::vector<PermBlock> blocks;
    friend bool operator==(const PermNormalForm&, const PermNormalForm&) = default;
    friend auto operator<=>(const PermNormalForm&, const PermNormalForm&) = default;
};

// One step of a developed central term: 1 * c[P,Q] * 1 swapping prime factors pos and pos+1 (1-based).
struct Layer {
    int pos = 0;
    Term term;
};

Perm identity_perm(std::size_t m);
bool is_perm(const std::vector<int>& images);
Perm compose(const Perm& after, const Perm& before);
Perm inverse(const Perm& p);
// s_k as a permutation of {1..m}.
Perm adjacent_transposition(std::size_t m, int k);
std::vector<Perm> all_perms(std::size_t m);

// Layers in application order; their composite has exactly the type of c.
std::vector<Layer> develop(const Term& c);
Term compose_layers(const std::vector<Layer>& layers, const Alpha& src);

// Prime-factor wire permutation of any central term (source position to target position).
Perm wire_perm(const Term& c);

struct BalanceDecomposition {
    Term u;       // src |- src with constant factors removed
    Term cprime;  // reduced central term
    Term v;       // tgt |- tgt with constant factors removed
    Term vinv;
    // v^-1 o cprime o u
    Term recompose() const;
};
BalanceDecomposition balance_decompose(const Term& c);

bool is_reduced(const SequentIL& type);
Perm perm_of(const Term& c);
// Permutation forced by the distinct prime factors of a reduced assorted type.
Perm perm_by_matching(const Alpha& src, const Alpha& tgt);

PermNormalForm perm_normal_form(const Perm& p);
Perm perm_of_normal_form(const PermNormalForm& nf, std::size_t m);
// Adjacent transposition indices, applied first to last.
std::vector<int> word_of(const PermNormalForm& nf);
// Central term on `src` whose wire permutation is p.
Term central_of(const Perm& p, const Alpha& src);

bool central_equal(const Term& f, const Term& g);

std::string to_string(const Perm& p);
std::string to_string(const PermNormalForm& nf);
Perm parse_perm(std::string_view text);

}  // namespace mlc
