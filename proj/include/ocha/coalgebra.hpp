#pragma once

#include "ocha/family.hpp"

#include <compare>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace ocha {

// Basis word of the mixed coalgebra C(Hc) (x) T^c(Ho): a multiset of closed
// letters (stored sorted by canon_rank) followed by an ordered tuple of
// open letters. Plain tensor-coalgebra words have an empty closed part,
// symmetric-coalgebra words an empty open part. Words with a repeated
// odd-degree closed letter are zero and never stored.
struct Word {
    std::vector<int> closed;
    std::vector<int> open;

    int length() const { return (int)(closed.size() + open.size()); }
    auto operator<=>(const Word&) const = default;

    static Word single_closed(int i) { return {{i}, {}}; }
    static Word single_open(int j) { return {{}, {j}}; }
};

using WordSum = std::map<Word, Scalar>;

int word_degree(const SpacePtr& hc, const SpacePtr& ho, const Word& w);
std::string word_str(const SpacePtr& hc, const SpacePtr& ho, const Word& w);

// Sorts the closed part into canonical order; returns the Koszul sign, or
// nullopt when the word vanishes (repeated odd closed letter).
std::optional<std::pair<Word, int>> canonicalize_word(const GradedSpace& hc, Word w);

void add_word(WordSum& sum, const SpacePtr& hc, Word w, const Scalar& coeff);

// All canonical basis words with n closed and m open letters.
std::vector<Word> enumerate_words(const SpacePtr& hc, const SpacePtr& ho, int n, int m);

// Deconcatenation-unshuffle coproduct of the mixed coalgebra: the closed
// part splits through (p, n-p)-unshuffles, the open part by deconcatenation,
// with the interchange sign eta(p,q) = deg(right closed) * deg(left open).
std::vector<std::tuple<Word, Word, Scalar>>
coproduct(const SpacePtr& hc, const SpacePtr& ho, const Word& w);

// Lift of a map family as a coderivation of C(Hc) (x) T^c(Ho), applied to a
// word. Closed-output components consume an unshuffled leading block; open-
// output components consume an unshuffled closed block plus a consecutive
// open sub-block, with the sign of eq. (eta_pi)-type interchanges generated
// by the tensor rule. Constant terms (weak families) insert letters, so the
// result is capped at max_len.
WordSum apply_coderivation(const Family& fam, const Word& w, int max_len);

// Lift of a degree-zero morphism family as a coalgebra map: sums over all
// decompositions of the word into component blocks (closed blocks unordered
// between themselves, open blocks ordered with their consecutive open
// intervals). Weak families insert f_0 / f_{0,0} blocks with the symmetric
// power coefficient 1/t!.
WordSum apply_morphism_lift(const Family& fam, const Word& w, int max_len);

// Coderivation law check: Delta D = (D (x) 1 + 1 (x) D) Delta on every
// basis word of length <= bound.
bool check_coderivation(const Family& fam, int bound);

// Coalgebra-map law: (F (x) F) Delta = Delta F on every word <= bound.
// Target spaces are read off the component maps.
bool check_morphism_lift(const Family& fam, const SpacePtr& tgt_hc, const SpacePtr& tgt_ho,
                         int bound);

// Projection of a word sum onto the cogenerators (length-one words),
// split by sector. Degrees must be supplied since the zero element carries
// one.
std::pair<Element, Element> corolla_project(const WordSum& s, const SpacePtr& hc,
                                            const SpacePtr& ho, int degree);

struct CorollaResidual {
    int n, m;
    Word word;
    Element closed_part, open_part;
};

// Cogenerator components of D.D for the lifted coderivation: the structure
// satisfies its defining relations up to (n_max, m_max) iff all residuals
// vanish. This is the executable form of (l+n)^2 = 0. total_max >= 0
// additionally caps n+m.
std::vector<CorollaResidual> square_as_corollas(const Family& fam, int n_max, int m_max,
                                                int total_max = -1);

// Gerstenhaber bracket of two families on the plain tensor coalgebra
// T^c(Ho) (no closed letters): [f,g] = f o g - (-1)^{|f||g|} g o f where
// o extracts cogenerator components of the composed lifts. Constant terms
// are supported; arities 0..bound are produced.
Family gerstenhaber_bracket(const Family& f, const Family& g, int bound);

// Corolla components of g-lift composed with f-lift (target spaces of f
// must be the source spaces of g); result components map f's sources to
// g's targets. Used for morphism composition.
Family compose_families(const Family& g, const SpacePtr& g_tgt_hc, const SpacePtr& g_tgt_ho,
                        const Family& f, int bound);

} // namespace ocha
