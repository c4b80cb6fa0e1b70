#include "ocha/perm.hpp"

#include <algorithm>
#include <functional>

namespace ocha {

int koszul_sign(const Permutation& sigma, const std::vector<int>& degrees) {
    const int n = sigma.size();
    if ((int)degrees.size() != n)
        throw std::invalid_argument("koszul_sign: degree list size mismatch");
    long odd_inversions = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (sigma(i) > sigma(j) && (degrees[sigma(i) - 1] & 1) && (degrees[sigma(j) - 1] & 1))
                ++odd_inversions;
    return (odd_inversions & 1) ? -1 : 1;
}

int koszul_sign_by_transpositions(const Permutation& sigma, const std::vector<int>& degrees) {
    const int n = sigma.size();
    if ((int)degrees.size() != n)
        throw std::invalid_argument("koszul_sign: degree list size mismatch");
    // Bubble the target sequence (x_{sigma(1)},...) back to (x_1,...),
    // picking up (-1)^{|x||y|} per adjacent swap; the sign relating the two
    // orders is symmetric, so this equals the sign of sigma itself.
    std::vector<int> seq = sigma.image;
    int sign = 1;
    for (int pass = 0; pass < n; ++pass)
        for (int i = 0; i + 1 < n; ++i)
            if (seq[i] > seq[i + 1]) {
                if ((degrees[seq[i] - 1] & 1) && (degrees[seq[i + 1] - 1] & 1)) sign = -sign;
                std::swap(seq[i], seq[i + 1]);
            }
    return sign;
}

std::vector<Permutation> unshuffles(const std::vector<int>& blocks) {
    int n = 0;
    for (int k : blocks) {
        if (k < 0) throw std::invalid_argument("negative block length");
        n += k;
    }
    // Assign each value 1..n to a block; within a block, values appear in
    // increasing order at that block's domain positions.
    std::vector<Permutation> out;
    std::vector<int> image(n, 0);
    std::vector<int> starts(blocks.size(), 0);
    for (size_t b = 1; b < blocks.size(); ++b) starts[b] = starts[b - 1] + blocks[b - 1];
    std::vector<int> fill(blocks.size(), 0);

    std::function<void(int)> rec = [&](int value) {
        if (value > n) {
            out.emplace_back(image);
            return;
        }
        for (size_t b = 0; b < blocks.size(); ++b) {
            if (fill[b] == blocks[b]) continue;
            image[starts[b] + fill[b]] = value;
            ++fill[b];
            rec(value + 1);
            --fill[b];
        }
    };
    rec(1);
    // Lexicographic order of image arrays, independent of generation order.
    std::sort(out.begin(), out.end(),
              [](const Permutation& a, const Permutation& b) { return a.image < b.image; });
    return out;
}

std::vector<std::pair<std::vector<int>, std::vector<int>>> subsets_with_complement(int n, int k) {
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
        if ((int)pick.size() == k) {
            std::vector<int> rest;
            size_t p = 0;
            for (int i = 0; i < n; ++i) {
                if (p < pick.size() && pick[p] == i) { ++p; continue; }
                rest.push_back(i);
            }
            out.emplace_back(pick, rest);
            return;
        }
        for (int i = from; i <= n - (k - (int)pick.size()); ++i) {
            pick.push_back(i);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<std::vector<int>>> set_partitions(int n, int blocks) {
    std::vector<std::vector<std::vector<int>>> out;
    if (blocks <= 0 || blocks > n) return out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int elem) {
        if (elem == n) {
            if ((int)cur.size() == blocks) out.push_back(cur);
            return;
        }
        if ((int)cur.size() + (n - elem) < blocks) return; // cannot reach enough blocks
        for (auto& blk : cur) {
            blk.push_back(elem);
            rec(elem + 1);
            blk.pop_back();
        }
        if ((int)cur.size() < blocks) {
            cur.push_back({elem});
            rec(elem + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

std::vector<std::vector<int>> compositions(int n, int k, int minpart) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    std::vector<int> cur(k, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == k - 1) {
            if (left >= minpart) {
                cur[pos] = left;
                out.push_back(cur);
            }
            return;
        }
        for (int v = minpart; v <= left - minpart * (k - 1 - pos); ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
    return out;
}

} // namespace ocha
