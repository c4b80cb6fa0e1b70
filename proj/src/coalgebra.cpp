#include "ocha/coalgebra.hpp"

#include <functional>

namespace ocha {

int word_degree(const SpacePtr& hc, const SpacePtr& ho, const Word& w) {
    int d = 0;
    for (int i : w.closed) d += hc->degree(i);
    for (int j : w.open) d += ho->degree(j);
    return d;
}

std::string word_str(const SpacePtr& hc, const SpacePtr& ho, const Word& w) {
    std::string out = "(";
    for (size_t i = 0; i < w.closed.size(); ++i)
        out += (i ? " " : "") + hc->name(w.closed[i]);
    out += ";";
    for (size_t j = 0; j < w.open.size(); ++j)
        out += (j ? " " : " ") + ho->name(w.open[j]);
    out += ")";
    return out;
}

std::optional<std::pair<Word, int>> canonicalize_word(const GradedSpace& hc, Word w) {
    auto canon = canonicalize_symmetric(hc, std::move(w.closed));
    if (!canon) return std::nullopt;
    w.closed = std::move(canon->first);
    return std::make_pair(std::move(w), canon->second);
}

void add_word(WordSum& sum, const SpacePtr& hc, Word w, const Scalar& coeff) {
    if (coeff == 0) return;
    int sign = 1;
    if (hc && w.closed.size() > 1) {
        auto canon = canonicalize_word(*hc, std::move(w));
        if (!canon) return;
        w = std::move(canon->first);
        sign = canon->second;
    }
    Scalar c = coeff * sign;
    auto [it, fresh] = sum.emplace(std::move(w), c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) sum.erase(it);
    }
}

std::vector<Word> enumerate_words(const SpacePtr& hc, const SpacePtr& ho, int n, int m) {
    std::vector<std::vector<int>> closed_parts, open_parts;
    // closed: multisets, nondecreasing canon_rank, no repeated odd letter
    {
        std::vector<int> by_rank(hc && hc->dim() ? hc->dim() : 0);
        if (hc)
            for (int i = 0; i < hc->dim(); ++i) by_rank[hc->canon_rank(i)] = i;
        std::vector<int> cur;
        std::function<void(int)> rec = [&](int from) {
            if ((int)cur.size() == n) {
                closed_parts.push_back(cur);
                return;
            }
            for (int r = from; r < (int)by_rank.size(); ++r) {
                int idx = by_rank[r];
                if (!cur.empty() && cur.back() == idx && (hc->degree(idx) & 1)) continue;
                cur.push_back(idx);
                rec(r);
                cur.pop_back();
            }
        };
        if (n == 0) closed_parts.push_back({});
        else if (hc && hc->dim() > 0) rec(0);
    }
    {
        std::vector<int> cur;
        std::function<void()> rec = [&]() {
            if ((int)cur.size() == m) {
                open_parts.push_back(cur);
                return;
            }
            for (int j = 0; j < ho->dim(); ++j) {
                cur.push_back(j);
                rec();
                cur.pop_back();
            }
        };
        if (m == 0) open_parts.push_back({});
        else if (ho && ho->dim() > 0) rec();
    }
    std::vector<Word> out;
    for (const auto& c : closed_parts)
        for (const auto& o : open_parts) out.push_back(Word{c, o});
    return out;
}

namespace {

int deg_sum(const SpacePtr& sp, const std::vector<int>& letters, size_t from, size_t to) {
    int d = 0;
    for (size_t i = from; i < to && i < letters.size(); ++i) d += sp->degree(letters[i]);
    return d;
}

int positions_deg(const SpacePtr& sp, const std::vector<int>& letters, const std::vector<int>& pos) {
    int d = 0;
    for (int p : pos) d += sp->degree(letters[p]);
    return d;
}

// Koszul sign of the unshuffle moving `first` positions before `second`
// (both increasing position lists covering 0..m-1).
int unshuffle_sign(const SpacePtr& sp, const std::vector<int>& letters,
                   const std::vector<int>& first, const std::vector<int>& second) {
    std::vector<int> image;
    image.reserve(first.size() + second.size());
    for (int p : first) image.push_back(p + 1);
    for (int p : second) image.push_back(p + 1);
    std::vector<int> degs(letters.size());
    for (size_t i = 0; i < letters.size(); ++i) degs[i] = sp->degree(letters[i]);
    return koszul_sign(Permutation(std::move(image)), degs);
}

// Expansion of e^{(x)t} into unordered letter multisets with the symmetric
// power coefficient prod c_b^{m_b} / m_b!.
std::vector<std::pair<std::vector<int>, Scalar>> symmetric_power(const Element& e, int t) {
    std::vector<std::pair<std::vector<int>, Scalar>> out;
    std::vector<std::pair<int, Scalar>> supp(e.coeffs.begin(), e.coeffs.end());
    std::vector<int> mult(supp.size(), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == (int)supp.size()) {
            if (left != 0) return;
            Scalar coeff = 1;
            std::vector<int> letters;
            for (size_t b = 0; b < supp.size(); ++b)
                for (int r = 0; r < mult[b]; ++r) {
                    coeff *= supp[b].second;
                    coeff /= (r + 1);
                    letters.push_back(supp[b].first);
                }
            out.emplace_back(std::move(letters), coeff);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            mult[pos] = k;
            rec(pos + 1, left - k);
        }
        mult[pos] = 0;
    };
    if (t == 0) {
        out.emplace_back(std::vector<int>{}, Scalar(1));
        return out;
    }
    rec(0, t);
    return out;
}

} // namespace

std::vector<std::tuple<Word, Word, Scalar>>
coproduct(const SpacePtr& hc, const SpacePtr& ho, const Word& w) {
    std::vector<std::tuple<Word, Word, Scalar>> out;
    const int m = (int)w.closed.size(), n = (int)w.open.size();
    for (int p = 0; p <= m; ++p) {
        for (const auto& [left_pos, right_pos] : subsets_with_complement(m, p)) {
            int eps = hc ? unshuffle_sign(hc, w.closed, left_pos, right_pos) : 1;
            int right_cdeg = hc ? positions_deg(hc, w.closed, right_pos) : 0;
            for (int q = 0; q <= n; ++q) {
                int left_odeg = deg_sum(ho, w.open, 0, q);
                int sign = eps;
                if ((right_cdeg & 1) && (left_odeg & 1)) sign = -sign;
                Word left, right;
                for (int pos : left_pos) left.closed.push_back(w.closed[pos]);
                for (int pos : right_pos) right.closed.push_back(w.closed[pos]);
                left.open.assign(w.open.begin(), w.open.begin() + q);
                right.open.assign(w.open.begin() + q, w.open.end());
                out.emplace_back(std::move(left), std::move(right), Scalar(sign));
            }
        }
    }
    return out;
}

WordSum apply_coderivation(const Family& fam, const Word& w, int max_len) {
    WordSum out;
    const SpacePtr& hc = fam.hc;
    const SpacePtr& ho = fam.ho;
    const int m = (int)w.closed.size(), n = (int)w.open.size();
    const int fdeg = fam.degree & 1;

    // closed-output components: l_k replaces the leading unshuffle block
    for (const auto& [k, lk] : fam.l) {
        if (k < 1 || k > m || lk.is_zero()) continue;
        for (const auto& [sel, rest] : subsets_with_complement(m, k)) {
            int eps = unshuffle_sign(hc, w.closed, sel, rest);
            std::vector<int> args;
            for (int p : sel) args.push_back(w.closed[p]);
            Element val = lk.lookup(args, {});
            if (val.is_zero()) continue;
            for (const auto& [b, c] : val.coeffs) {
                Word nw;
                nw.closed.push_back(b);
                for (int p : rest) nw.closed.push_back(w.closed[p]);
                nw.open = w.open;
                if (nw.length() <= max_len) add_word(out, hc, std::move(nw), c * eps);
            }
        }
    }
    // weak constant l_0: one more closed letter
    if (!fam.l0.is_zero() && w.length() + 1 <= max_len) {
        for (const auto& [b, c] : fam.l0.coeffs) {
            Word nw = w;
            nw.closed.insert(nw.closed.begin(), b);
            add_word(out, hc, std::move(nw), c);
        }
    }
    // open-output components: n_{r,s} consumes the trailing unshuffle block
    // plus a consecutive open sub-block
    for (const auto& [pq, nrs] : fam.n) {
        const auto [r, s] = pq;
        if (r > m || s > n || nrs.is_zero()) continue;
        for (const auto& [sel, kept] : subsets_with_complement(m, r)) {
            int eps = unshuffle_sign(hc, w.closed, kept, sel);
            int kept_deg = positions_deg(hc, w.closed, kept);
            int sel_deg = positions_deg(hc, w.closed, sel);
            std::vector<int> cargs;
            for (int p : sel) cargs.push_back(w.closed[p]);
            for (int i = 0; i + s <= n; ++i) {
                std::vector<int> oargs(w.open.begin() + i, w.open.begin() + i + s);
                Element val = nrs.lookup(cargs, oargs);
                if (val.is_zero()) continue;
                int prefix = deg_sum(ho, w.open, 0, i);
                long ex = (long)(fdeg & 1) * ((kept_deg + prefix) & 1) + (long)(prefix & 1) * (sel_deg & 1);
                int sign = (ex & 1) ? -eps : eps;
                for (const auto& [b, c] : val.coeffs) {
                    Word nw;
                    for (int p : kept) nw.closed.push_back(w.closed[p]);
                    nw.open.assign(w.open.begin(), w.open.begin() + i);
                    nw.open.push_back(b);
                    nw.open.insert(nw.open.end(), w.open.begin() + i + s, w.open.end());
                    if (nw.length() <= max_len) add_word(out, hc, std::move(nw), c * sign);
                }
            }
        }
    }
    // weak constant n_{0,0}: insert an open letter at every slot
    if (!fam.n00.is_zero() && w.length() + 1 <= max_len) {
        int call = hc ? deg_sum(hc, w.closed, 0, w.closed.size()) : 0;
        for (int i = 0; i <= n; ++i) {
            int prefix = deg_sum(ho, w.open, 0, i);
            int sign = ((fdeg & 1) && ((call + prefix) & 1)) ? -1 : 1;
            for (const auto& [b, c] : fam.n00.coeffs) {
                Word nw;
                nw.closed = w.closed;
                nw.open.assign(w.open.begin(), w.open.begin() + i);
                nw.open.push_back(b);
                nw.open.insert(nw.open.end(), w.open.begin() + i, w.open.end());
                add_word(out, hc, std::move(nw), c * sign);
            }
        }
    }
    return out;
}

WordSum apply_morphism_lift(const Family& fam, const Word& w, int max_len) {
    WordSum out;
    const SpacePtr& hc = fam.hc;
    const SpacePtr& ho = fam.ho;
    const int m = (int)w.closed.size(), n = (int)w.open.size();
    const bool weak_c = !fam.l0.is_zero();
    const bool weak_o = !fam.n00.is_zero();
    SpacePtr tgt_hc, tgt_ho;
    for (const auto& [k, mm] : fam.l)
        if (mm.out()) { tgt_hc = mm.out(); break; }
    if (!tgt_hc && !fam.l0.is_zero()) tgt_hc = fam.l0.space;
    for (const auto& [pq, mm] : fam.n)
        if (mm.out()) { tgt_ho = mm.out(); break; }
    if (!tgt_ho && !fam.n00.is_zero()) tgt_ho = fam.n00.space;

    // one decomposition: closed positions split into unordered blocks for the
    // closed-output components plus ordered blocks (with consecutive open
    // intervals) for the open-output components
    struct OpenBlock {
        std::vector<int> cpos; // increasing positions into w.closed
        int ofrom = 0, olen = 0;
    };

    auto emit = [&](const std::vector<std::vector<int>>& cblocks,
                    const std::vector<OpenBlock>& oblocks) {
        // component availability
        std::vector<const MultiMap*> cmaps, omaps;
        for (const auto& blk : cblocks) {
            int r = (int)blk.size();
            if (!fam.l.count(r)) return;
            cmaps.push_back(&fam.l.at(r));
        }
        for (const auto& ob : oblocks) {
            int p = (int)ob.cpos.size(), q = ob.olen;
            if (p == 0 && q == 0) {
                omaps.push_back(nullptr); // f_{0,0} insertion
                if (!weak_o) return;
                continue;
            }
            if (!fam.n.count({p, q})) return;
            omaps.push_back(&fam.n.at({p, q}));
        }
        int t_max = weak_c ? max_len - (int)(cblocks.size() + oblocks.size()) : 0;
        if (t_max < 0) t_max = 0;

        // unshuffle sign for [cblocks..., oblocks' closed parts...]
        std::vector<int> image;
        for (const auto& blk : cblocks)
            for (int p : blk) image.push_back(p + 1);
        for (const auto& ob : oblocks)
            for (int p : ob.cpos) image.push_back(p + 1);
        std::vector<int> degs(m);
        for (int i = 0; i < m; ++i) degs[i] = hc->degree(w.closed[i]);
        int eps = m ? koszul_sign(Permutation(image), degs) : 1;

        // tau: each open block's closed part moves past the opens consumed
        // by the blocks before it
        long tau = 0;
        {
            int odeg_before = 0;
            for (const auto& ob : oblocks) {
                int cdeg = positions_deg(hc, w.closed, ob.cpos);
                tau += (long)(cdeg & 1) * (odeg_before & 1);
                odeg_before += deg_sum(ho, w.open, ob.ofrom, ob.ofrom + ob.olen);
            }
        }
        int base_sign = ((tau & 1) ? -1 : 1) * eps;

        // evaluate all component maps on their blocks
        std::vector<Element> cvals, ovals;
        for (size_t a = 0; a < cblocks.size(); ++a) {
            std::vector<int> args;
            for (int p : cblocks[a]) args.push_back(w.closed[p]);
            cvals.push_back(cmaps[a]->lookup(args, {}));
            if (cvals.back().is_zero()) return;
        }
        for (size_t b = 0; b < oblocks.size(); ++b) {
            if (!omaps[b]) {
                ovals.push_back(fam.n00);
                continue;
            }
            std::vector<int> cargs, oargs;
            for (int p : oblocks[b].cpos) cargs.push_back(w.closed[p]);
            for (int q = 0; q < oblocks[b].olen; ++q)
                oargs.push_back(w.open[oblocks[b].ofrom + q]);
            ovals.push_back(omaps[b]->lookup(cargs, oargs));
            if (ovals.back().is_zero()) return;
        }

        for (int t = 0; t <= t_max; ++t) {
            if ((int)(t + cblocks.size() + oblocks.size()) > max_len) break;
            auto powers = symmetric_power(fam.l0, t);
            for (const auto& [f0letters, f0coeff] : powers) {
                // expand the product of output elements into words
                std::function<void(size_t, Word&, Scalar)> expand = [&](size_t idx, Word& acc,
                                                                        Scalar coeff) {
                    if (idx == cvals.size() + ovals.size()) {
                        Word nw = acc;
                        add_word(out, tgt_hc, std::move(nw), coeff * base_sign * f0coeff);
                        return;
                    }
                    if (idx < cvals.size()) {
                        for (const auto& [bb, cc] : cvals[idx].coeffs) {
                            acc.closed.push_back(bb);
                            expand(idx + 1, acc, coeff * cc);
                            acc.closed.pop_back();
                        }
                    } else {
                        for (const auto& [bb, cc] : ovals[idx - cvals.size()].coeffs) {
                            acc.open.push_back(bb);
                            expand(idx + 1, acc, coeff * cc);
                            acc.open.pop_back();
                        }
                    }
                };
                Word acc;
                acc.closed = f0letters;
                Scalar one = 1;
                expand(0, acc, one);
            }
            if (!weak_c) break;
        }
    };

    // enumerate: subset for closed-output blocks, its partitions, then the
    // ordered open blocks over the remaining closed positions
    for (int csize = 0; csize <= m; ++csize) {
        for (const auto& [sc, rc] : subsets_with_complement(m, csize)) {
            std::vector<std::vector<std::vector<int>>> partitions;
            if (csize == 0) partitions.push_back({});
            else
                for (int i = 1; i <= csize; ++i)
                    for (const auto& part : set_partitions(csize, i)) {
                        std::vector<std::vector<int>> mapped;
                        for (const auto& blk : part) {
                            std::vector<int> b;
                            for (int e : blk) b.push_back(sc[e]);
                            mapped.push_back(std::move(b));
                        }
                        partitions.push_back(std::move(mapped));
                    }
            for (const auto& cblocks : partitions) {
                int jmax = max_len - (int)cblocks.size();
                for (int j = 0; j <= jmax; ++j) {
                    if (j == 0) {
                        if (rc.empty() && n == 0) emit(cblocks, {});
                        continue;
                    }
                    // distribute remaining closed positions over j ordered blocks
                    std::vector<int> assign(rc.size(), 0);
                    std::function<void(size_t)> rec_assign = [&](size_t pos) {
                        if (pos == rc.size()) {
                            for (const auto& comp : compositions(n, j, 0)) {
                                std::vector<OpenBlock> oblocks(j);
                                for (size_t e = 0; e < rc.size(); ++e)
                                    oblocks[assign[e]].cpos.push_back(rc[e]);
                                int from = 0;
                                bool ok = true;
                                for (int b = 0; b < j; ++b) {
                                    oblocks[b].ofrom = from;
                                    oblocks[b].olen = comp[b];
                                    from += comp[b];
                                    if (oblocks[b].cpos.empty() && comp[b] == 0 && !weak_o)
                                        ok = false;
                                }
                                if (ok) emit(cblocks, oblocks);
                            }
                            return;
                        }
                        for (int b = 0; b < j; ++b) {
                            assign[pos] = b;
                            rec_assign(pos + 1);
                        }
                    };
                    rec_assign(0);
                }
            }
        }
    }
    return out;
}

bool check_coderivation(const Family& fam, int bound) {
    const SpacePtr& hc = fam.hc;
    const SpacePtr& ho = fam.ho;
    using PairSum = std::map<std::pair<Word, Word>, Scalar>;
    auto add_pair = [&](PairSum& s, const Word& a, const Word& b, const Scalar& c) {
        if (c == 0) return;
        auto key = std::make_pair(a, b);
        auto [it, fresh] = s.emplace(key, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) s.erase(it);
        }
    };
    int max_len = bound + 1;
    for (int n = 0; n <= (hc ? bound : 0); ++n)
        for (int mm = 0; mm <= (ho ? bound - n : 0); ++mm) {
            if (n + mm == 0 || n + mm > bound) continue;
            for (const Word& w : enumerate_words(hc, ho, n, mm)) {
                PairSum lhs, rhs;
                for (const auto& [dw, c] : apply_coderivation(fam, w, max_len))
                    for (const auto& [a, b, s] : coproduct(hc, ho, dw)) add_pair(lhs, a, b, c * s);
                for (const auto& [a, b, s] : coproduct(hc, ho, w)) {
                    for (const auto& [da, c] : apply_coderivation(fam, a, max_len))
                        add_pair(rhs, da, b, s * c);
                    int adeg = word_degree(hc, ho, a);
                    int sg = ((fam.degree & 1) && (adeg & 1)) ? -1 : 1;
                    for (const auto& [db, c] : apply_coderivation(fam, b, max_len))
                        add_pair(rhs, a, db, s * c * sg);
                }
                if (lhs != rhs) return false;
            }
        }
    return true;
}

bool check_morphism_lift(const Family& fam, const SpacePtr& tgt_hc, const SpacePtr& tgt_ho,
                         int bound) {
    const SpacePtr& hc = fam.hc;
    const SpacePtr& ho = fam.ho;
    using PairSum = std::map<std::pair<Word, Word>, Scalar>;
    auto add_pair = [&](PairSum& s, const Word& a, const Word& b, const Scalar& c) {
        if (c == 0) return;
        auto [it, fresh] = s.emplace(std::make_pair(a, b), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) s.erase(it);
        }
    };
    int max_len = bound + 1;
    for (int n = 0; n <= (hc ? bound : 0); ++n)
        for (int mm = 0; mm <= (ho ? bound - n : 0); ++mm) {
            if (n + mm == 0 || n + mm > bound) continue;
            for (const Word& w : enumerate_words(hc, ho, n, mm)) {
                PairSum lhs, rhs;
                for (const auto& [a, b, s] : coproduct(hc, ho, w))
                    for (const auto& [fa, ca] : apply_morphism_lift(fam, a, max_len))
                        for (const auto& [fb, cb] : apply_morphism_lift(fam, b, max_len))
                            add_pair(lhs, fa, fb, s * ca * cb);
                for (const auto& [fw, c] : apply_morphism_lift(fam, w, max_len))
                    for (const auto& [a, b, s] : coproduct(tgt_hc, tgt_ho, fw))
                        add_pair(rhs, a, b, c * s);
                if (lhs != rhs) return false;
            }
        }
    return true;
}

std::pair<Element, Element> corolla_project(const WordSum& s, const SpacePtr& hc,
                                            const SpacePtr& ho, int degree) {
    Element cpart = hc ? Element::zero(hc, degree) : Element();
    Element opart = ho ? Element::zero(ho, degree) : Element();
    for (const auto& [w, c] : s) {
        if (w.length() != 1) continue;
        if (!w.closed.empty()) cpart.add(w.closed[0], c);
        else opart.add(w.open[0], c);
    }
    return {cpart, opart};
}

std::vector<CorollaResidual> square_as_corollas(const Family& fam, int n_max, int m_max,
                                                int total_max) {
    std::vector<CorollaResidual> out;
    const SpacePtr& hc = fam.hc;
    const SpacePtr& ho = fam.ho;
    bool weak = fam.has_constant();
    for (int n = 0; n <= (hc ? n_max : 0); ++n)
        for (int m = 0; m <= (ho ? m_max : 0); ++m) {
            if (total_max >= 0 && n + m > total_max) continue;
            if (n + m == 0 && !weak) continue;
            int max_len = n + m + 1;
            for (const Word& w : enumerate_words(hc, ho, n, m)) {
                WordSum dd;
                for (const auto& [dw, c] : apply_coderivation(fam, w, max_len))
                    for (const auto& [ddw, c2] : apply_coderivation(fam, dw, max_len)) {
                        auto [it, fresh] = dd.emplace(ddw, c * c2);
                        if (!fresh) {
                            it->second += c * c2;
                            if (it->second == 0) dd.erase(it);
                        }
                    }
                int deg = word_degree(hc, ho, w) + 2 * fam.degree;
                auto [cpart, opart] = corolla_project(dd, hc, ho, deg);
                if ((hc && !cpart.is_zero()) || (ho && !opart.is_zero()))
                    out.push_back({n, m, w, cpart, opart});
            }
        }
    return out;
}

Family gerstenhaber_bracket(const Family& f, const Family& g, int bound) {
    if ((f.hc && f.hc->dim() > 0) || (g.hc && g.hc->dim() > 0))
        throw std::invalid_argument("gerstenhaber_bracket: plain tensor-coalgebra families only");
    const SpacePtr& ho = f.ho;
    Family out;
    out.ho = ho;
    out.degree = f.degree + g.degree;
    out.n00 = Element::zero(ho, out.degree);
    int sgn = ((f.degree & 1) && (g.degree & 1)) ? -1 : 1;
    for (int q = 0; q <= bound; ++q) {
        MultiMap comp = MultiMap::open_map(nullptr, ho, ho, 0, q, out.degree);
        for (const Word& w : enumerate_words(nullptr, ho, 0, q)) {
            int max_len = q + 2;
            auto one_way = [&](const Family& a, const Family& b) {
                WordSum acc;
                for (const auto& [bw, c] : apply_coderivation(b, w, max_len))
                    for (const auto& [aw, c2] : apply_coderivation(a, bw, max_len)) {
                        auto [it, fresh] = acc.emplace(aw, c * c2);
                        if (!fresh) {
                            it->second += c * c2;
                            if (it->second == 0) acc.erase(it);
                        }
                    }
                return corolla_project(acc, nullptr, ho,
                                       word_degree(nullptr, ho, w) + a.degree + b.degree)
                    .second;
            };
            Element fg = one_way(f, g);
            Element gf = one_way(g, f);
            gf *= Scalar(-sgn);
            fg += gf;
            if (fg.is_zero()) continue;
            if (q == 0) out.n00 += fg;
            else comp.set_entry({}, w.open, fg);
        }
        if (q > 0 && !comp.is_zero()) out.n.emplace(std::make_pair(0, q), std::move(comp));
    }
    return out;
}

Family compose_families(const Family& g, const SpacePtr& g_tgt_hc, const SpacePtr& g_tgt_ho,
                        const Family& f, int bound) {
    Family out;
    out.hc = f.hc;
    out.ho = f.ho;
    out.degree = f.degree + g.degree;
    if (g_tgt_hc) out.l0 = Element::zero(g_tgt_hc, out.degree);
    if (g_tgt_ho) out.n00 = Element::zero(g_tgt_ho, out.degree);
    int max_len = bound + 1;
    for (int n = 0; n <= (f.hc ? bound : 0); ++n)
        for (int m = 0; m <= (f.ho ? bound - n : 0); ++m) {
            if (n + m == 0 || n + m > bound) continue;
            bool have_c = g_tgt_hc && m == 0 && n >= 1;
            bool have_o = (bool)g_tgt_ho;
            MultiMap lcomp =
                have_c ? MultiMap::closed_map(f.hc, g_tgt_hc, n, out.degree) : MultiMap();
            MultiMap ncomp = have_o ? MultiMap::open_map(n > 0 ? f.hc : nullptr, f.ho, g_tgt_ho,
                                                         n, m, out.degree)
                                    : MultiMap();
            for (const Word& w : enumerate_words(f.hc, f.ho, n, m)) {
                WordSum acc;
                for (const auto& [fw, c] : apply_morphism_lift(f, w, max_len))
                    for (const auto& [gw, c2] : apply_morphism_lift(g, fw, max_len)) {
                        auto [it, fresh] = acc.emplace(gw, c * c2);
                        if (!fresh) {
                            it->second += c * c2;
                            if (it->second == 0) acc.erase(it);
                        }
                    }
                int deg = word_degree(f.hc, f.ho, w) + out.degree;
                auto [cpart, opart] = corolla_project(acc, g_tgt_hc, g_tgt_ho, deg);
                if (have_c && !cpart.is_zero()) lcomp.set_entry(w.closed, {}, cpart);
                if (have_o && !opart.is_zero()) ncomp.set_entry(w.closed, w.open, opart);
            }
            if (have_c && !lcomp.is_zero()) out.l.emplace(n, std::move(lcomp));
            if (have_o && !ncomp.is_zero()) out.n.emplace(std::make_pair(n, m), std::move(ncomp));
        }
    return out;
}

} // namespace ocha
