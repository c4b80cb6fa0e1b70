#pragma once

#include "ocha/graded.hpp"
#include "ocha/perm.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ocha {

enum class Flavor { Ordered, Symmetric, Mixed };

// Canonicalizes a tuple of basis indices of a symmetric block: sorts by
// canon_rank, returns the Koszul sign of the sorting permutation, or
// nullopt when the tuple contains a repeated odd-degree index (the
// graded-symmetric extension vanishes there).
inline std::optional<std::pair<std::vector<int>, int>>
canonicalize_symmetric(const GradedSpace& sp, std::vector<int> idx) {
    int sign = 1;
    const int n = (int)idx.size();
    for (int pass = 0; pass < n; ++pass)
        for (int i = 0; i + 1 < n; ++i) {
            if (sp.canon_rank(idx[i]) > sp.canon_rank(idx[i + 1])) {
                if ((sp.degree(idx[i]) & 1) && (sp.degree(idx[i + 1]) & 1)) sign = -sign;
                std::swap(idx[i], idx[i + 1]);
            }
        }
    for (int i = 0; i + 1 < n; ++i)
        if (idx[i] == idx[i + 1] && (sp.degree(idx[i]) & 1)) return std::nullopt;
    return std::make_pair(std::move(idx), sign);
}

// Sparse structure-constant table of a graded multilinear map
//   in_closed^{(x)p} (x) in_open^{(x)q}  ->  out,
// graded symmetric in the closed block, ordered in the open block.
// A_infinity maps m_k sit at (p,q)=(0,k) on the open side, L_infinity maps
// l_k at (p,q)=(k,0) on the closed side, n_{p,q} in between. Entries are
// normally stored on canonical (rank-sorted) closed multi-indices with the
// sorting sign folded in; set_entry_raw bypasses that so check_symmetry
// has corrupt tables to reject.
template <class R>
class MultiMapT {
public:
    using Elem = ElementT<R>;
    using Key = std::pair<std::vector<int>, std::vector<int>>;

    MultiMapT() = default;
    MultiMapT(SpacePtr in_c, SpacePtr in_o, SpacePtr out, int p, int q, int degree)
        : in_closed_(std::move(in_c)), in_open_(std::move(in_o)), out_(std::move(out)),
          p_(p), q_(q), degree_(degree) {}

    static MultiMapT closed_map(SpacePtr sp_c, SpacePtr out, int p, int degree) {
        return MultiMapT(std::move(sp_c), nullptr, std::move(out), p, 0, degree);
    }
    static MultiMapT open_map(SpacePtr sp_c, SpacePtr sp_o, SpacePtr out, int p, int q, int degree) {
        return MultiMapT(std::move(sp_c), std::move(sp_o), std::move(out), p, q, degree);
    }
    static MultiMapT identity(const SpacePtr& sp) {
        bool closed = sp->sector() == Sector::Closed;
        MultiMapT m(closed ? sp : nullptr, closed ? nullptr : sp, sp, closed ? 1 : 0,
                    closed ? 0 : 1, 0);
        for (int i = 0; i < sp->dim(); ++i)
            m.set_entry(closed ? std::vector<int>{i} : std::vector<int>{},
                        closed ? std::vector<int>{} : std::vector<int>{i}, Elem::basis(sp, i));
        return m;
    }

    int closed_arity() const { return p_; }
    int open_arity() const { return q_; }
    int arity() const { return p_ + q_; }
    int intrinsic_degree() const { return degree_; }
    const SpacePtr& in_closed() const { return in_closed_; }
    const SpacePtr& in_open() const { return in_open_; }
    const SpacePtr& out() const { return out_; }
    Flavor flavor() const {
        if (p_ > 0 && q_ > 0) return Flavor::Mixed;
        return p_ > 0 ? Flavor::Symmetric : Flavor::Ordered;
    }
    const std::map<Key, Elem>& table() const { return table_; }
    bool is_zero() const {
        for (const auto& [k, v] : table_)
            if (!v.is_zero()) return false;
        return true;
    }

    int input_degree(const std::vector<int>& ci, const std::vector<int>& oi) const {
        int d = 0;
        for (int i : ci) d += in_closed_->degree(i);
        for (int j : oi) d += in_open_->degree(j);
        return d;
    }

    // Accumulates `value` at the canonical key; the Koszul sign of sorting
    // the closed indices multiplies the value.
    void set_entry(std::vector<int> ci, std::vector<int> oi, Elem value) {
        check_key(ci, oi);
        auto canon = canonicalize_symmetric(*effective_closed_space(), ci);
        if (!canon) {
            if (!value.is_zero())
                throw std::invalid_argument("nonzero value on repeated odd symmetric index");
            return;
        }
        if (!value.is_zero() && value.degree != input_degree(ci, oi) + degree_)
            throw std::invalid_argument("table entry violates the degree constraint");
        Elem v = value;
        v *= R(canon->second);
        Key key{std::move(canon->first), std::move(oi)};
        auto it = table_.find(key);
        if (it == table_.end()) {
            if (!v.is_zero()) table_.emplace(std::move(key), std::move(v));
        } else {
            it->second += v;
            if (it->second.is_zero()) table_.erase(it);
        }
    }

    // Stores exactly the given key; no canonicalization, no degree check.
    void set_entry_raw(std::vector<int> ci, std::vector<int> oi, Elem value) {
        check_key(ci, oi);
        table_[Key{std::move(ci), std::move(oi)}] = std::move(value);
    }

    // Value on a basis tuple: raw key if present, else the symmetric
    // extension of the canonical entry.
    Elem lookup(const std::vector<int>& ci, const std::vector<int>& oi) const {
        check_key(ci, oi);
        auto it = table_.find(Key{ci, oi});
        if (it != table_.end()) return it->second;
        Elem zero = Elem::zero(out_, input_degree(ci, oi) + degree_);
        auto canon = canonicalize_symmetric(*effective_closed_space(), ci);
        if (!canon) return zero;
        it = table_.find(Key{canon->first, oi});
        if (it == table_.end()) return zero;
        Elem v = it->second;
        v *= R(canon->second);
        return v;
    }

    // Multilinear extension to homogeneous elements.
    Elem evaluate(const std::vector<Elem>& closed_args, const std::vector<Elem>& open_args) const {
        if ((int)closed_args.size() != p_ || (int)open_args.size() != q_)
            throw std::invalid_argument("evaluate: arity mismatch");
        int deg = degree_;
        for (const auto& a : closed_args) {
            if (a.space.get() != in_closed_.get())
                throw std::invalid_argument("evaluate: closed-sector argument space mismatch");
            deg += a.degree;
        }
        for (const auto& a : open_args) {
            if (a.space.get() != in_open_.get())
                throw std::invalid_argument("evaluate: open-sector argument space mismatch");
            deg += a.degree;
        }
        Elem acc = Elem::zero(out_, deg);
        std::vector<int> ci(p_), oi(q_);
        expand(closed_args, open_args, 0, ci, oi, R(1), acc);
        return acc;
    }

    MultiMapT& operator*=(const R& s) {
        for (auto& [k, v] : table_) v *= s;
        return *this;
    }
    MultiMapT& operator+=(const MultiMapT& o) {
        for (const auto& [k, v] : o.table_) {
            auto it = table_.find(k);
            if (it == table_.end()) table_.emplace(k, v);
            else {
                it->second += v;
                if (it->second.is_zero()) table_.erase(it);
            }
        }
        return *this;
    }

    bool same_table(const MultiMapT& o) const {
        auto norm = [](const std::map<Key, Elem>& t) {
            std::map<Key, Elem> r;
            for (const auto& [k, v] : t)
                if (!v.is_zero()) r.emplace(k, v);
            return r;
        };
        return norm(table_) == norm(o.table_);
    }

private:
    const GradedSpace* effective_closed_space() const {
        static const GradedSpace empty;
        return in_closed_ ? in_closed_.get() : &empty;
    }
    void check_key(const std::vector<int>& ci, const std::vector<int>& oi) const {
        if ((int)ci.size() != p_ || (int)oi.size() != q_)
            throw std::invalid_argument("multi-index arity mismatch");
    }
    void expand(const std::vector<Elem>& ca, const std::vector<Elem>& oa, int slot,
                std::vector<int>& ci, std::vector<int>& oi, R coeff, Elem& acc) const {
        if (slot == p_ + q_) {
            Elem v = lookup(ci, oi);
            v *= coeff;
            acc += v;
            return;
        }
        const Elem& arg = slot < p_ ? ca[slot] : oa[slot - p_];
        for (const auto& [i, c] : arg.coeffs) {
            if (slot < p_) ci[slot] = i;
            else oi[slot - p_] = i;
            R next = coeff;
            next *= c;
            expand(ca, oa, slot + 1, ci, oi, next, acc);
        }
    }

    SpacePtr in_closed_, in_open_, out_;
    int p_ = 0, q_ = 0;
    int degree_ = 0;
    std::map<Key, Elem> table_;
};

using MultiMap = MultiMapT<Scalar>;

// True iff the stored table extends consistently to a graded symmetric map
// on the closed block: every stored key agrees with the sign-adjusted
// canonical representative. Ordered maps pass vacuously.
template <class R>
bool check_symmetry(const MultiMapT<R>& m) {
    if (m.closed_arity() == 0) return true;
    const auto& sp = *m.in_closed();
    for (const auto& [key, val] : m.table()) {
        auto canon = canonicalize_symmetric(sp, key.first);
        if (!canon) {
            if (!val.is_zero()) return false;
            continue;
        }
        auto ref = m.lookup(canon->first, key.second);
        ref *= R(canon->second);
        if (!(ref == val)) return false;
    }
    return true;
}

// Applies (g_1 (x) g_2 (x) ... (x) g_t) to consecutive blocks of homogeneous
// arguments with the interchange rule (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y):
// each map picks up the total degree of the argument blocks to its left.
// The accumulated sign is folded into the first output.
template <class R>
struct MapSlot {
    const MultiMapT<R>* map = nullptr; // null = identity on `space`
    SpacePtr space;                    // used when map == nullptr

    static MapSlot of(const MultiMapT<R>& m) { return {&m, nullptr}; }
    static MapSlot id(SpacePtr sp) { return {nullptr, std::move(sp)}; }
    int arity() const { return map ? map->arity() : 1; }
    int degree() const { return map ? map->intrinsic_degree() : 0; }
};

template <class R>
std::vector<ElementT<R>> tensor_apply(const std::vector<MapSlot<R>>& maps,
                                      const std::vector<ElementT<R>>& args) {
    int total = 0;
    for (const auto& s : maps) total += s.arity();
    if (total != (int)args.size()) throw std::invalid_argument("tensor_apply: arity mismatch");

    long sign_exp = 0;
    int pos = 0, left_degree = 0;
    std::vector<ElementT<R>> out;
    for (const auto& s : maps) {
        sign_exp += (long)(s.degree() & 1) * (left_degree & 1);
        if (!s.map) {
            out.push_back(args[pos]);
            left_degree += args[pos].degree;
            ++pos;
            continue;
        }
        std::vector<ElementT<R>> ca(args.begin() + pos, args.begin() + pos + s.map->closed_arity());
        pos += s.map->closed_arity();
        std::vector<ElementT<R>> oa(args.begin() + pos, args.begin() + pos + s.map->open_arity());
        pos += s.map->open_arity();
        for (const auto& a : ca) left_degree += a.degree;
        for (const auto& a : oa) left_degree += a.degree;
        out.push_back(s.map->evaluate(ca, oa));
    }
    if ((sign_exp & 1) && !out.empty()) out.front() *= R(-1);
    return out;
}

} // namespace ocha
