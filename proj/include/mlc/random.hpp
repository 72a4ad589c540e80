#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mlc/calculus_il.hpp"
#include "mlc/calculus_s.hpp"
#include "mlc/syntax.hpp"
#include "mlc/terms.hpp"

namespace mlc {

// Deterministic generator; draws use plain modulo so sequences are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(eng_() % n); }
    bool chance(unsigned percent) { return below(100) < percent; }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 eng_;
};

struct GenOptions {
    std::vector<std::string> letters{"p", "q"};
    int max_depth = 2;       // nesting of -o
    std::size_t max_factors = 3;
    unsigned unit_percent = 15;
};

Formula random_formula(Rng& rng, int depth, const GenOptions& opt = {});
Alpha random_alpha(Rng& rng, int depth, const GenOptions& opt = {});
Alpha random_constant_alpha(Rng& rng, int depth);

// Random term with the given source; `budget` bounds the number of constructors drawn.
Term random_term_from(Rng& rng, const Alpha& src, int budget, const GenOptions& opt = {});
Term random_term(Rng& rng, int budget, const GenOptions& opt = {});
// Random term of type I |- I.
Term random_unit_term(Rng& rng, int budget);
// Symmetries, tensors and composites only.
Term random_central(Rng& rng, const Alpha& src, int budget);

// Random cut-free IL derivation of height at most `height`.
DerivILP random_cut_free_il(Rng& rng, int height, const GenOptions& opt = {});
// Random IL derivation of height at most `height` whose cuts (exactly `cuts` >= 1 of them)
// form a chain through the left premises; every cut has both premises otherwise random.
DerivILP random_derivation_il(Rng& rng, int height, int cuts, const GenOptions& opt = {});

// A derivable sequent of S read off the type of a random term: one antecedent formula per prime factor.
SequentS random_derivable_s(Rng& rng, int budget, const GenOptions& opt = {});

// Splitting instance: a cut-free derivation of an interleaving of `g` and `delta`
// (plus the implication a -o b for the implication splitter) meeting the primeness hypothesis.
struct SplitInstance {
    DerivSP d;
    std::vector<Formula> g, delta;
    Formula a, b;
};
SplitInstance random_weak_instance(Rng& rng);
SplitInstance random_tensor_instance(Rng& rng);
SplitInstance random_imp_instance(Rng& rng);  // the sequent is also proper

}  // namespace mlc
