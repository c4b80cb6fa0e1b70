#pragma once

#include "ocha/rational.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocha {

enum class Sector { Closed, Open, Plain };

inline const char* sector_name(Sector s) {
    switch (s) {
        case Sector::Closed: return "closed";
        case Sector::Open: return "open";
        default: return "plain";
    }
}

struct BasisElement {
    std::string name;
    int degree = 0;
};

// Finite named graded basis. Immutable after construction. `canon_rank`
// orders basis indices by (degree, name); symmetric multi-indices are
// stored sorted by this rank.
class GradedSpace {
public:
    GradedSpace() = default;
    GradedSpace(Sector sector, std::vector<BasisElement> basis)
        : sector_(sector), basis_(std::move(basis)) {
        for (int i = 0; i < (int)basis_.size(); ++i) {
            if (!by_name_.emplace(basis_[i].name, i).second)
                throw std::invalid_argument("duplicate basis name: " + basis_[i].name);
        }
        canon_rank_.resize(basis_.size());
        std::vector<int> order(basis_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (basis_[a].degree != basis_[b].degree) return basis_[a].degree < basis_[b].degree;
            return basis_[a].name < basis_[b].name;
        });
        for (int r = 0; r < (int)order.size(); ++r) canon_rank_[order[r]] = r;
    }

    Sector sector() const { return sector_; }
    int dim() const { return (int)basis_.size(); }
    const BasisElement& at(int i) const { return basis_.at(i); }
    int degree(int i) const { return basis_.at(i).degree; }
    const std::string& name(int i) const { return basis_.at(i).name; }
    int canon_rank(int i) const { return canon_rank_.at(i); }

    int index_of(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) throw std::invalid_argument("unknown basis name: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return by_name_.count(name) != 0; }

    std::vector<int> indices_of_degree(int d) const {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (degree(i) == d) out.push_back(i);
        return out;
    }
    std::vector<int> degrees_present() const {
        std::map<int, int> seen;
        for (const auto& b : basis_) seen[b.degree]++;
        std::vector<int> out;
        for (auto& [d, _] : seen) out.push_back(d);
        return out;
    }

private:
    Sector sector_ = Sector::Plain;
    std::vector<BasisElement> basis_;
    std::map<std::string, int> by_name_;
    std::vector<int> canon_rank_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

inline SpacePtr make_space(Sector sector, std::vector<BasisElement> basis) {
    return std::make_shared<GradedSpace>(sector, std::move(basis));
}

// Shifts every basis degree; translates between the suspended convention
// (structure maps of degree +1) and classical gradings.
inline SpacePtr suspension_shift(const SpacePtr& sp, int shift) {
    std::vector<BasisElement> b;
    b.reserve(sp->dim());
    for (int i = 0; i < sp->dim(); ++i) b.push_back({sp->name(i), sp->degree(i) + shift});
    return make_space(sp->sector(), std::move(b));
}

// Homogeneous element of a graded space over the coefficient ring R
// (exact rationals, or truncated polynomials for formal deformations).
// The zero element carries a declared degree so that degree bookkeeping
// stays total.
template <class R>
struct ElementT {
    SpacePtr space;
    int degree = 0;
    std::map<int, R> coeffs; // basis index -> coefficient, no explicit zeros

    ElementT() = default;
    ElementT(SpacePtr sp, int deg) : space(std::move(sp)), degree(deg) {}

    static ElementT basis(const SpacePtr& sp, int i) {
        ElementT e(sp, sp->degree(i));
        e.coeffs[i] = R(1);
        return e;
    }
    static ElementT zero(const SpacePtr& sp, int deg) { return ElementT(sp, deg); }

    bool is_zero() const {
        for (const auto& [i, c] : coeffs)
            if (!(c == R(0))) return false;
        return true;
    }

    void add(int i, const R& c) {
        if (c == R(0)) return;
        if (space->degree(i) != degree)
            throw std::invalid_argument("inhomogeneous element: basis " + space->name(i));
        auto [it, fresh] = coeffs.emplace(i, c);
        if (!fresh) {
            it->second += c;
            if (it->second == R(0)) coeffs.erase(it);
        }
    }

    ElementT& operator+=(const ElementT& o) {
        if (o.is_zero()) return *this;
        if (is_zero() && coeffs.empty()) degree = o.degree;
        if (degree != o.degree) throw std::invalid_argument("degree mismatch in element sum");
        for (const auto& [i, c] : o.coeffs) add(i, c);
        return *this;
    }

    ElementT& operator*=(const R& s) {
        if (s == R(0)) { coeffs.clear(); return *this; }
        for (auto& [i, c] : coeffs) c *= s;
        return *this;
    }

    friend ElementT operator*(const R& s, ElementT e) { e *= s; return e; }
    friend ElementT operator+(ElementT a, const ElementT& b) { a += b; return a; }

    bool operator==(const ElementT& o) const {
        if (is_zero() && o.is_zero()) return true;
        return degree == o.degree && coeffs == o.coeffs;
    }

    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [i, c] : coeffs) {
            if (!first) out += " + ";
            out += "(" + coeff_str(c) + ")*" + space->name(i);
            first = false;
        }
        return out;
    }

private:
    static std::string coeff_str(const Scalar& c) { return c.get_str(); }
    template <class T>
    static std::string coeff_str(const T& c) { return c.str(); }
};

using Element = ElementT<Scalar>;

} // namespace ocha
