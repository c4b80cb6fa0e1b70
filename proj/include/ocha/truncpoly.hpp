#pragma once

#include "ocha/rational.hpp"

#include <string>
#include <vector>

namespace ocha {

// Element of Q[hbar]/(hbar^N): coefficient vector c[i] <-> c_i hbar^i,
// truncated to length N. order == 0 means "no truncation fixed yet" (used
// for embedded rational constants); combining two values takes the finer
// of the declared truncations. hbar carries degree zero, so these scalars
// never disturb the grading.
class TruncPoly {
public:
    TruncPoly() = default;
    TruncPoly(int k) : c_{Scalar(k)} { normalize(); }                 // embed integers
    explicit TruncPoly(const Scalar& s) : c_{s} { normalize(); }      // embed rationals
    TruncPoly(std::vector<Scalar> coeffs, int order) : c_(std::move(coeffs)), order_(order) {
        truncate();
        normalize();
    }

    static TruncPoly hbar_power(const Scalar& coeff, int power, int order) {
        std::vector<Scalar> c(power + 1, Scalar(0));
        c[power] = coeff;
        return TruncPoly(std::move(c), order);
    }

    int order() const { return order_; }
    bool is_zero() const { return c_.empty(); }
    const Scalar& coeff(int i) const {
        static const Scalar zero(0);
        return i < (int)c_.size() ? c_[i] : zero;
    }
    int length() const { return (int)c_.size(); }

    // Smallest power with nonzero coefficient; -1 for the zero polynomial.
    int valuation() const {
        for (int i = 0; i < (int)c_.size(); ++i)
            if (c_[i] != 0) return i;
        return -1;
    }
    bool in_maximal_ideal() const { return is_zero() || valuation() >= 1; }

    TruncPoly truncated(int new_order) const {
        TruncPoly r = *this;
        r.order_ = combine_order(order_, new_order);
        r.truncate();
        r.normalize();
        return r;
    }

    TruncPoly& operator+=(const TruncPoly& o) {
        order_ = combine_order(order_, o.order_);
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        truncate();
        normalize();
        return *this;
    }
    TruncPoly& operator-=(const TruncPoly& o) {
        TruncPoly neg = o;
        for (auto& x : neg.c_) x = -x;
        return *this += neg;
    }
    TruncPoly& operator*=(const TruncPoly& o) {
        order_ = combine_order(order_, o.order_);
        if (c_.empty() || o.c_.empty()) {
            c_.clear();
            return *this;
        }
        std::vector<Scalar> r(c_.size() + o.c_.size() - 1, Scalar(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        c_ = std::move(r);
        truncate();
        normalize();
        return *this;
    }

    friend TruncPoly operator+(TruncPoly a, const TruncPoly& b) { return a += b; }
    friend TruncPoly operator-(TruncPoly a, const TruncPoly& b) { return a -= b; }
    friend TruncPoly operator*(TruncPoly a, const TruncPoly& b) { return a *= b; }

    // Equality ignores the declared order: values are compared as truncated
    // coefficient lists (normalized, no trailing zeros).
    friend bool operator==(const TruncPoly& a, const TruncPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const TruncPoly& a, const TruncPoly& b) { return !(a == b); }
    friend bool operator<(const TruncPoly& a, const TruncPoly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        for (int i = 0; i < (int)c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += c_[i].get_str();
            if (i == 1) out += "*h";
            else if (i > 1) out += "*h^" + std::to_string(i);
        }
        return out;
    }

private:
    static int combine_order(int a, int b) {
        if (a == 0) return b;
        if (b == 0) return a;
        return a < b ? a : b;
    }
    void truncate() {
        if (order_ > 0 && (int)c_.size() > order_) c_.resize(order_);
    }
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Scalar> c_;
    int order_ = 0;
};

} // namespace ocha
