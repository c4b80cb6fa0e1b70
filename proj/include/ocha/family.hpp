#pragma once

#include "ocha/multimap.hpp"

#include <map>
#include <utility>

namespace ocha {

// A family of graded multilinear maps of one intrinsic degree:
//   closed-output components  l_k : Hc^{(x)k} -> Hc          (k >= 1)
//   open-output components    n_{p,q} : Hc^p (x) Ho^q -> Ho  ((p,q) != (0,0))
// plus optional constant terms l_0 in Hc, n_{0,0} in Ho for weak structures.
// The same shape carries OCHA structures (degree 1), morphism components
// (degree 0, f_k / f_{k,l}), strong homotopy derivations and adjoint maps.
// A_infinity data is the Hc-empty case, L_infinity the Ho-empty case.
template <class R>
struct FamilyT {
    SpacePtr hc, ho; // either may be null
    int degree = 1;
    std::map<int, MultiMapT<R>> l;
    std::map<std::pair<int, int>, MultiMapT<R>> n;
    ElementT<R> l0, n00; // zero unless weak

    bool has_l(int k) const { return l.count(k) && !l.at(k).is_zero(); }
    bool has_n(int p, int q) const { return n.count({p, q}) && !n.at({p, q}).is_zero(); }
    const MultiMapT<R>& l_at(int k) const { return l.at(k); }
    const MultiMapT<R>& n_at(int p, int q) const { return n.at({p, q}); }

    MultiMapT<R>& ensure_l(int k) {
        auto it = l.find(k);
        if (it == l.end())
            it = l.emplace(k, MultiMapT<R>::closed_map(hc, hc, k, degree)).first;
        return it->second;
    }
    MultiMapT<R>& ensure_n(int p, int q) {
        auto it = n.find({p, q});
        if (it == n.end())
            it = n.emplace(std::make_pair(p, q),
                           MultiMapT<R>::open_map(p > 0 ? hc : nullptr, ho, ho, p, q, degree))
                     .first;
        return it->second;
    }

    bool has_constant() const { return !l0.is_zero() || !n00.is_zero(); }

    int max_l_arity() const {
        int m = 0;
        for (const auto& [k, mm] : l)
            if (!mm.is_zero()) m = std::max(m, k);
        return m;
    }
    int max_n_arity() const {
        int m = 0;
        for (const auto& [pq, mm] : n)
            if (!mm.is_zero()) m = std::max(m, pq.first + pq.second);
        return m;
    }
};

using Family = FamilyT<Scalar>;

// An OCHA (Hc + Ho, l, n) given by structure constants, with its degenerate
// cases: Hc empty = A_infinity algebra, Ho empty = L_infinity algebra.
// `bound` is the arity bound B the tables are trusted to; checkers refuse
// to run past it. Weak structures may carry l_0 / n_{0,0}.
template <class R>
struct OchaStructureT {
    SpacePtr hc, ho;
    FamilyT<R> ops;
    int bound = 4;
    bool weak = false;

    static OchaStructureT make(SpacePtr hc, SpacePtr ho, int bound = 4, bool weak = false) {
        OchaStructureT s;
        s.hc = std::move(hc);
        s.ho = std::move(ho);
        s.ops.hc = s.hc;
        s.ops.ho = s.ho;
        s.ops.degree = 1;
        s.bound = bound;
        s.weak = weak;
        if (s.hc) s.ops.l0 = ElementT<R>::zero(s.hc, 1);
        if (s.ho) s.ops.n00 = ElementT<R>::zero(s.ho, 1);
        return s;
    }

    bool closed_only() const { return !ho || ho->dim() == 0; }
    bool open_only() const { return !hc || hc->dim() == 0; }
};

using OchaStructure = OchaStructureT<Scalar>;

// A morphism of (weak) OCHAs: degree-zero components f_k, f_{k,l} between
// the underlying spaces, closed block graded symmetric.
template <class R>
struct OchaMorphismT {
    OchaStructureT<R> source, target;
    FamilyT<R> f; // degree 0; f.hc/f.ho are the SOURCE spaces, outputs in target
    bool weak = false;

    static OchaMorphismT make(const OchaStructureT<R>& src, const OchaStructureT<R>& tgt,
                              bool weak = false) {
        OchaMorphismT m;
        m.source = src;
        m.target = tgt;
        m.f.hc = src.hc;
        m.f.ho = src.ho;
        m.f.degree = 0;
        m.weak = weak;
        if (tgt.hc) m.f.l0 = ElementT<R>::zero(tgt.hc, 0);
        if (tgt.ho) m.f.n00 = ElementT<R>::zero(tgt.ho, 0);
        return m;
    }

    MultiMapT<R>& ensure_fc(int k) {
        auto it = f.l.find(k);
        if (it == f.l.end())
            it = f.l.emplace(k, MultiMapT<R>::closed_map(source.hc, target.hc, k, 0)).first;
        return it->second;
    }
    MultiMapT<R>& ensure_fo(int p, int q) {
        auto it = f.n.find({p, q});
        if (it == f.n.end())
            it = f.n
                     .emplace(std::make_pair(p, q),
                              MultiMapT<R>::open_map(p > 0 ? source.hc : nullptr, source.ho,
                                                     target.ho, p, q, 0))
                     .first;
        return it->second;
    }

    static OchaMorphismT identity(const OchaStructureT<R>& s) {
        OchaMorphismT m = make(s, s);
        if (s.hc && s.hc->dim() > 0) m.ensure_fc(1) = MultiMapT<R>::identity(s.hc);
        if (s.ho && s.ho->dim() > 0) m.ensure_fo(0, 1) = MultiMapT<R>::identity(s.ho);
        return m;
    }
};

using OchaMorphism = OchaMorphismT<Scalar>;

// Lifts a rational structure to a larger coefficient ring (keeps spaces).
template <class R>
ElementT<R> to_ring(const Element& e) {
    ElementT<R> out(e.space, e.degree);
    for (const auto& [i, c] : e.coeffs) out.add(i, R(c));
    return out;
}

template <class R>
MultiMapT<R> to_ring(const MultiMap& m) {
    MultiMapT<R> out(m.in_closed(), m.in_open(), m.out(), m.closed_arity(), m.open_arity(),
                     m.intrinsic_degree());
    for (const auto& [key, val] : m.table()) out.set_entry_raw(key.first, key.second, to_ring<R>(val));
    return out;
}

template <class R>
OchaStructureT<R> to_ring(const OchaStructure& s) {
    OchaStructureT<R> out = OchaStructureT<R>::make(s.hc, s.ho, s.bound, s.weak);
    out.ops.degree = s.ops.degree;
    for (const auto& [k, m] : s.ops.l) out.ops.l.emplace(k, to_ring<R>(m));
    for (const auto& [pq, m] : s.ops.n) out.ops.n.emplace(pq, to_ring<R>(m));
    if (s.hc) out.ops.l0 = to_ring<R>(s.ops.l0);
    if (s.ho) out.ops.n00 = to_ring<R>(s.ops.n00);
    return out;
}

} // namespace ocha
