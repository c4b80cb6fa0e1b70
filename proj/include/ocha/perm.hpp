#pragma once

#include "ocha/rational.hpp"

#include <stdexcept>
#include <vector>

namespace ocha {

// 1-indexed permutation of {1..n}, stored as the image array:
// image[i-1] = sigma(i).
struct Permutation {
    std::vector<int> image;

    Permutation() = default;
    explicit Permutation(std::vector<int> img) : image(std::move(img)) { validate(); }

    static Permutation identity(int n) {
        std::vector<int> img(n);
        for (int i = 0; i < n; ++i) img[i] = i + 1;
        return Permutation(std::move(img));
    }

    int size() const { return (int)image.size(); }
    int operator()(int i) const { return image.at(i - 1); }

    void validate() const {
        std::vector<char> seen(image.size(), 0);
        for (int v : image) {
            if (v < 1 || v > (int)image.size() || seen[v - 1])
                throw std::invalid_argument("image array is not a bijection");
            seen[v - 1] = 1;
        }
    }
};

// Koszul sign (-1)^{eps(sigma)} of rearranging graded elements:
// (x_1,...,x_n) = (-1)^eps (x_{sigma(1)},...,x_{sigma(n)}).
// eps = #{ inversions i<j, sigma(i)>sigma(j) with both degrees odd }.
int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees);

// Independent oracle: decompose sigma into adjacent transpositions and
// apply tau(x (x) y) = (-1)^{|x||y|} y (x) x step by step. Used by tests
// and the acceptance suite; kept here so both see one definition.
int koszul_sign_by_transpositions(const Permutation& sigma, const std::vector<int>& degrees);

// All (k_1,...,k_i)-unshuffles: permutations preserving the order within
// each consecutive block of the domain. Deterministic lexicographic order
// of the image arrays. Cardinality = multinomial(sum; k_1,...,k_i).
std::vector<Permutation> unshuffles(const std::vector<int>& blocks);

// All ways to choose a k-subset of {0..n-1}; each result is (chosen, rest),
// both increasing. Convenience built on unshuffles' combinatorics.
std::vector<std::pair<std::vector<int>, std::vector<int>>> subsets_with_complement(int n, int k);

// Set partitions of {0..n-1} into exactly `blocks` nonempty unordered
// blocks; each partition lists blocks sorted by least element, elements
// increasing within a block.
std::vector<std::vector<std::vector<int>>> set_partitions(int n, int blocks);

// All ordered compositions of n into k parts, each part >= minpart.
std::vector<std::vector<int>> compositions(int n, int k, int minpart = 1);

} // namespace ocha
