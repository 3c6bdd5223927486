#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocle/surface.hpp"

namespace monocle {

/*
  Multicurve arrangement on the disk-with-bands surface.

  A curve is a cyclic sequence of passages (handle, direction).  Between
  consecutive passages the curve crosses the base disk P along a chord.
  All data beyond the passage sequences is the strand order: for every
  band, a total order over the passage instances running through it.
  The order is recorded at the e+ interval; the untwisted band gluing
  mirrors it at e-.

  Everything else is derived:
    - slot positions on the boundary circle of P,
    - chords (pairs of slots),
    - crossings (a pair of chords crosses iff their endpoints interleave
      in the cyclic slot order; strands never cross inside a band).

  Curves are embedded: chords of one curve never interleave.  reduce()
  drives the arrangement to a fixpoint of crossing-decreasing local
  moves, after which passage words are cyclically reduced and pairwise
  crossing counts are the geometric intersection numbers the rest of
  the engine consumes.
*/

struct Passage {
    int handle = 0;  // 1..2g
    int dir = 0;     // +1: enter at e+, exit at e-;  -1: the reverse
    bool operator==(const Passage& o) const { return handle == o.handle && dir == o.dir; }
};

struct Curve {
    std::string name;
    std::vector<Passage> passages;  // cyclic
    bool trivial() const { return passages.empty(); }
};

struct StrandRef {
    int curve = -1;
    int passage = -1;
    bool operator==(const StrandRef& o) const { return curve == o.curve && passage == o.passage; }
};

// Position of a slot on the boundary circle of P: interval rank in the
// fixed counterclockwise interval order, then ccw index inside it.
struct SlotPos {
    int rank = -1;
    int idx = -1;
    bool operator==(const SlotPos& o) const { return rank == o.rank && idx == o.idx; }
    bool operator<(const SlotPos& o) const {
        return rank != o.rank ? rank < o.rank : idx < o.idx;
    }
};

// x strictly inside the ccw arc from a to b.
inline bool in_open_arc(const SlotPos& a, const SlotPos& b, const SlotPos& x) {
    if (a == b) return false;
    if (a < b) return a < x && x < b;
    return a < x || x < b;
}

struct Chord {
    int curve = -1;
    int index = -1;  // chord i runs exit(passage i) -> entry(passage i+1)
    SlotPos from, to;
};

inline bool chords_cross(const Chord& c1, const Chord& c2) {
    return in_open_arc(c1.from, c1.to, c2.from) != in_open_arc(c1.from, c1.to, c2.to);
}

struct Verdict {
    bool ok = true;
    std::string witness;
};

class Arrangement {
public:
    SurfaceModel surface;

    Arrangement() = default;
    explicit Arrangement(const SurfaceModel& s)
        : surface(s), strands_(s.handle_count() + 1) {}

    // ---- curve access ------------------------------------------------

    int curve_count() const { return static_cast<int>(curves_.size()); }

    const Curve& curve(int id) const { return curves_.at(id); }

    int curve_id(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw std::invalid_argument("unknown curve: " + name);
        return it->second;
    }

    bool has_curve(const std::string& name) const { return index_.count(name) != 0; }

    const Curve& curve(const std::string& name) const { return curves_[curve_id(name)]; }

    std::vector<std::string> curve_names() const {
        std::vector<std::string> r;
        for (const auto& c : curves_) r.push_back(c.name);
        return r;
    }

    // Adds a curve; each passage comes with an insertion spot in the
    // strand order of its handle ("position" = index in the final order
    // among the pre-existing strands, clamped).  Positions are applied
    // in passage order.
    int add_curve(const std::string& name, const std::vector<Passage>& ps,
                  const std::vector<int>& positions) {
        if (index_.count(name)) throw std::invalid_argument("duplicate curve name: " + name);
        if (positions.size() != ps.size())
            throw std::invalid_argument("positions/passages size mismatch");
        int id = curve_count();
        curves_.push_back(Curve{name, ps});
        index_[name] = id;
        for (size_t t = 0; t < ps.size(); ++t) {
            check_passage(ps[t]);
            auto& lst = strands_[ps[t].handle];
            int pos = std::clamp(positions[t], 0, static_cast<int>(lst.size()));
            lst.insert(lst.begin() + pos, StrandRef{id, static_cast<int>(t)});
        }
        return id;
    }

    // Convenience: append each passage at the end of its strand order.
    int add_curve(const std::string& name, const std::vector<Passage>& ps) {
        std::vector<int> pos(ps.size(), 1 << 28);
        return add_curve(name, ps, pos);
    }

    void remove_curve(int id) {
        for (auto& lst : strands_)
            lst.erase(std::remove_if(lst.begin(), lst.end(),
                                     [&](const StrandRef& r) { return r.curve == id; }),
                      lst.end());
        // Keep ids stable: leave a tombstone (empty name, no passages).
        index_.erase(curves_[id].name);
        curves_[id] = Curve{};
    }

    void rename_curve(int id, const std::string& nm) {
        if (index_.count(nm)) throw std::invalid_argument("duplicate curve name: " + nm);
        index_.erase(curves_[id].name);
        curves_[id].name = nm;
        index_[nm] = id;
    }

    bool is_tombstone(int id) const { return curves_[id].name.empty() && curves_[id].passages.empty(); }

    const std::vector<StrandRef>& strand_order(int handle) const { return strands_.at(handle); }

    // ---- derived geometry ---------------------------------------------

    int strand_position(int curveId, int passage) const {
        int h = curves_[curveId].passages[passage].handle;
        const auto& lst = strands_[h];
        for (size_t i = 0; i < lst.size(); ++i)
            if (lst[i].curve == curveId && lst[i].passage == passage) return static_cast<int>(i);
        throw std::logic_error("strand entry missing");
    }

    SlotPos entry_slot(int curveId, int passage) const {
        const Passage& p = curves_[curveId].passages[passage];
        int pos = strand_position(curveId, passage);
        int k = static_cast<int>(strands_[p.handle].size());
        if (p.dir > 0) return SlotPos{surface.interval_rank(p.handle, true), pos};
        return SlotPos{surface.interval_rank(p.handle, false), k - 1 - pos};
    }

    SlotPos exit_slot(int curveId, int passage) const {
        const Passage& p = curves_[curveId].passages[passage];
        int pos = strand_position(curveId, passage);
        int k = static_cast<int>(strands_[p.handle].size());
        if (p.dir > 0) return SlotPos{surface.interval_rank(p.handle, false), k - 1 - pos};
        return SlotPos{surface.interval_rank(p.handle, true), pos};
    }

    Chord chord(int curveId, int index) const {
        const auto& ps = curves_[curveId].passages;
        int m = static_cast<int>(ps.size());
        Chord c;
        c.curve = curveId;
        c.index = index;
        c.from = exit_slot(curveId, index);
        c.to = entry_slot(curveId, (index + 1) % m);
        return c;
    }

    std::vector<Chord> chords_of(int curveId) const {
        std::vector<Chord> r;
        int m = static_cast<int>(curves_[curveId].passages.size());
        for (int i = 0; i < m; ++i) r.push_back(chord(curveId, i));
        return r;
    }

    std::vector<Chord> all_chords() const {
        std::vector<Chord> r;
        for (int id = 0; id < curve_count(); ++id) {
            if (is_tombstone(id)) continue;
            auto cs = chords_of(id);
            r.insert(r.end(), cs.begin(), cs.end());
        }
        return r;
    }

    long long total_crossings() const {
        auto cs = all_chords();
        long long n = 0;
        for (size_t i = 0; i < cs.size(); ++i)
            for (size_t j = i + 1; j < cs.size(); ++j)
                if (chords_cross(cs[i], cs[j])) ++n;
        return n;
    }

    long long crossings_between(int c, int d) const {
        if (c == d) return 0;
        auto cc = chords_of(c), dd = chords_of(d);
        long long n = 0;
        for (const auto& a : cc)
            for (const auto& b : dd)
                if (chords_cross(a, b)) ++n;
        return n;
    }

    // ---- algebraic shadows ---------------------------------------------

    std::vector<long long> homology_class(int curveId) const {
        std::vector<long long> v(2 * surface.genus, 0);
        for (const auto& p : curves_[curveId].passages) v[p.handle - 1] += p.dir;
        return v;
    }

    // Letters are +-handle (1..2g); reading order follows the passage
    // sequence.  Odd handles print as x_i, even as y_i.
    std::vector<int> crossing_word(int curveId) const {
        std::vector<int> w;
        for (const auto& p : curves_[curveId].passages) w.push_back(p.dir * p.handle);
        return w;
    }

    // ---- validation ------------------------------------------------------

    Verdict validate() const {
        for (int id = 0; id < curve_count(); ++id) {
            if (is_tombstone(id)) continue;
            const auto& c = curves_[id];
            for (size_t t = 0; t < c.passages.size(); ++t) {
                const auto& p = c.passages[t];
                if (p.handle < 1 || p.handle > surface.handle_count() || (p.dir != 1 && p.dir != -1))
                    return {false, "curve " + c.name + " has a malformed passage"};
                int n = 0;
                for (const auto& r : strands_[p.handle])
                    if (r.curve == id && r.passage == static_cast<int>(t)) ++n;
                if (n != 1)
                    return {false, "curve " + c.name + " passage " + std::to_string(t) +
                                       " mis-registered in the strand order"};
            }
        }
        for (const auto& lst : strands_)
            for (const auto& r : lst) {
                if (r.curve < 0 || r.curve >= curve_count())
                    return {false, "stale strand entry"};
                if (r.passage < 0 ||
                    r.passage >= static_cast<int>(curves_[r.curve].passages.size()))
                    return {false, "stale strand entry for curve " + curves_[r.curve].name};
            }
        // Embeddedness: chords of one curve never interleave.
        for (int id = 0; id < curve_count(); ++id) {
            if (is_tombstone(id)) continue;
            auto cs = chords_of(id);
            for (size_t i = 0; i < cs.size(); ++i)
                for (size_t j = i + 1; j < cs.size(); ++j)
                    if (chords_cross(cs[i], cs[j]))
                        return {false, "curve " + curves_[id].name +
                                           " is not embedded: chords " + std::to_string(i) +
                                           " and " + std::to_string(j) + " interleave"};
        }
        return {true, ""};
    }

    // ---- reduction ------------------------------------------------------

    // Fixpoint of: backtrack removal (a passage immediately undone
    // through the same band with no strand between) and strand swaps
    // that strictly lower the crossing count.  Plateau crossings are
    // transported along parallel runs and committed only when the total
    // strictly drops, so the fixpoint is bigon-free in practice.
    void reduce() {
        bool progress = true;
        while (progress) {
            progress = remove_one_backtrack();
            if (progress) continue;
            progress = apply_one_negative_swap();
            if (progress) continue;
            progress = transport_one_crossing();
        }
    }

    bool reduced() const {
        Arrangement tmp = *this;
        long long c0 = total_crossings();
        size_t p0 = total_passages();
        tmp.reduce();
        return tmp.total_crossings() == c0 && tmp.total_passages() == p0;
    }

    size_t total_passages() const {
        size_t n = 0;
        for (const auto& c : curves_) n += c.passages.size();
        return n;
    }

    // ---- spec'd queries ---------------------------------------------------

    long long geometric_intersection(const std::string& a, const std::string& b) const {
        Arrangement tmp = *this;
        tmp.reduce();
        return tmp.crossings_between(tmp.curve_id(a), tmp.curve_id(b));
    }

    // Canonical cyclic passage word: the lexicographically least among
    // all rotations of the word and of the reversed word with flipped
    // signs.  Two embedded essential curves are isotopic iff these agree.
    std::vector<int> canonical_word(int curveId) const {
        std::vector<int> w = crossing_word(curveId);
        return canonical_cyclic(w);
    }

    static std::vector<int> canonical_cyclic(const std::vector<int>& w) {
        if (w.empty()) return {};
        auto best = w;
        bool first = true;
        auto consider = [&](const std::vector<int>& cand) {
            for (size_t r = 0; r < cand.size(); ++r) {
                std::vector<int> rot(cand.begin() + r, cand.end());
                rot.insert(rot.end(), cand.begin(), cand.begin() + r);
                if (first || rot < best) { best = rot; first = false; }
            }
        };
        consider(w);
        std::vector<int> rev(w.rbegin(), w.rend());
        for (int& x : rev) x = -x;
        consider(rev);
        return best;
    }

    bool curves_equal(const std::string& a, const std::string& b) const {
        Arrangement tmp = *this;
        tmp.reduce();
        int ia = tmp.curve_id(a), ib = tmp.curve_id(b);
        if (tmp.canonical_word(ia) != tmp.canonical_word(ib)) return false;
        return tmp.homology_class(ia) == tmp.homology_class(ib);
    }

    // Essential: not contractible and not parallel to the boundary.
    bool essential(int curveId) const {
        Arrangement tmp = *this;
        tmp.reduce();
        auto w = tmp.canonical_word(curveId);
        if (w.empty()) return false;
        return w != tmp.canonical_cyclic(boundary_word(surface));
    }

    static std::vector<int> boundary_word(const SurfaceModel& s) {
        std::vector<int> w;
        for (int i = 1; i <= s.genus; ++i) {
            int A = 2 * i - 1, B = 2 * i;
            w.push_back(A);
            w.push_back(-B);
            w.push_back(-A);
            w.push_back(B);
        }
        return w;
    }

    // The boundary-parallel curve: per block (A,+)(B,-)(A,-)(B,+), with
    // outermost strand placement so it crosses nothing.
    int add_boundary_curve(const std::string& name) {
        std::vector<Passage> ps;
        std::vector<int> pos;
        for (int i = 1; i <= surface.genus; ++i) {
            int A = 2 * i - 1, B = 2 * i;
            ps.push_back({A, +1});
            ps.push_back({B, -1});
            ps.push_back({A, -1});
            ps.push_back({B, +1});
        }
        // (A,+) entered at the ccw-start of e+: position 0.  (A,-) entered
        // at the ccw-start of e-: highest strand position.
        for (size_t t = 0; t < ps.size(); ++t) pos.push_back(ps[t].dir > 0 ? 0 : (1 << 28));
        return add_curve(name, ps, pos);
    }

    // Parallel push-off: new curve with the same passages, inserted next
    // to src on its left (dir-relative) or right side.
    int parallel_copy(int src, const std::string& name, bool left_side) {
        const auto& ps = curves_[src].passages;
        int id = curve_count();
        curves_.push_back(Curve{name, ps});
        index_[name] = id;
        for (size_t t = 0; t < ps.size(); ++t) {
            int pos = strand_position(src, static_cast<int>(t));
            bool above = left_of_is_above(ps[t].dir) == left_side;
            auto& lst = strands_[ps[t].handle];
            lst.insert(lst.begin() + (above ? pos + 1 : pos), StrandRef{id, static_cast<int>(t)});
        }
        return id;
    }

    // Strand-order side convention: for a passage with dir=+1 the left
    // of the curve is the higher strand position; dir=-1 the lower.
    static bool left_of_is_above(int dir) { return dir > 0; }

    // ---- structural edits (used by the surgery layer) ---------------------

    // Replaces the passages of curve `id`.  `tokens` describes the new
    // cyclic sequence: {old passage index, -1 for new}; `fresh` lists the
    // new passages in token order; `fresh_pos` gives, for each new
    // passage, its insertion index within the handle's strand order
    // (computed against the order *after* old entries are kept in place).
    void rewrite_curve(int id, const std::vector<int>& tokens,
                       const std::vector<Passage>& fresh,
                       const std::vector<int>& fresh_pos) {
        const auto& old = curves_[id].passages;
        std::vector<Passage> np;
        std::vector<int> old2new(old.size(), -1);
        std::vector<std::pair<int, int>> inserts;  // (fresh index, new passage index)
        int fi = 0;
        for (int tok : tokens) {
            if (tok >= 0) {
                old2new[tok] = static_cast<int>(np.size());
                np.push_back(old[tok]);
            } else {
                inserts.push_back({fi, static_cast<int>(np.size())});
                np.push_back(fresh[fi]);
                ++fi;
            }
        }
        if (fi != static_cast<int>(fresh.size()))
            throw std::logic_error("rewrite_curve: token/fresh mismatch");
        // Remap kept strand entries, drop removed ones.
        for (auto& lst : strands_) {
            std::vector<StrandRef> keep;
            for (const auto& r : lst) {
                if (r.curve != id) { keep.push_back(r); continue; }
                int nw = old2new[r.passage];
                if (nw >= 0) keep.push_back(StrandRef{id, nw});
            }
            lst = keep;
        }
        curves_[id].passages = np;
        // Insert fresh entries at the requested positions, in fresh order.
        for (const auto& [f, npi] : inserts) {
            auto& lst = strands_[fresh[f].handle];
            int pos = std::clamp(fresh_pos[f], 0, static_cast<int>(lst.size()));
            lst.insert(lst.begin() + pos, StrandRef{id, npi});
        }
    }

    // Raw structural access for the surgery layer.  Callers must leave
    // the arrangement in a validate()-clean state.
    std::vector<StrandRef>& strands_raw(int handle) { return strands_[handle]; }
    void set_passages_raw(int id, std::vector<Passage> ps) {
        curves_[id].passages = std::move(ps);
    }

    // Removes passages t1 < t2 of a curve and fixes the strand tables.
    void remove_passage_pair(int id, int t1, int t2) {
        auto& ps = curves_[id].passages;
        int m = static_cast<int>(ps.size());
        std::vector<int> old2new(m, -1);
        int k = 0;
        for (int t = 0; t < m; ++t)
            if (t != t1 && t != t2) old2new[t] = k++;
        for (auto& lst : strands_) {
            std::vector<StrandRef> keep;
            for (const auto& r : lst) {
                if (r.curve != id) { keep.push_back(r); continue; }
                int nw = old2new[r.passage];
                if (nw >= 0) keep.push_back(StrandRef{id, nw});
            }
            lst = keep;
        }
        std::vector<Passage> np;
        for (int t = 0; t < m; ++t)
            if (t != t1 && t != t2) np.push_back(ps[t]);
        ps = np;
    }

private:
    std::vector<Curve> curves_;
    std::map<std::string, int> index_;
    std::vector<std::vector<StrandRef>> strands_;  // per handle, 1-based

    void check_passage(const Passage& p) const {
        if (p.handle < 1 || p.handle > surface.handle_count())
            throw std::invalid_argument("passage handle out of range");
        if (p.dir != 1 && p.dir != -1) throw std::invalid_argument("passage dir must be +-1");
    }

    // -- backtracks --------------------------------------------------------

    // Undoes a passage immediately reversed through the same band.  With
    // no strand between the two slots this is the plain bigon move; with
    // strands inside the pocket the removal is still an isotopy of the
    // one curve, applied whenever the recounted crossing total does not
    // grow.  Passage count strictly drops, so this always terminates.
    bool remove_one_backtrack() {
        long long base = total_crossings();
        for (int id = 0; id < curve_count(); ++id) {
            if (is_tombstone(id)) continue;
            auto& ps = curves_[id].passages;
            int m = static_cast<int>(ps.size());
            if (m < 2) continue;
            for (int t = 0; t < m; ++t) {
                int u = (t + 1) % m;
                if (u == t) continue;
                if (ps[t].handle != ps[u].handle || ps[t].dir != -ps[u].dir) continue;
                int pt = strand_position(id, t), pu = strand_position(id, u);
                if (std::abs(pt - pu) == 1) {
                    remove_passage_pair(id, std::min(t, u), std::max(t, u));
                    return true;
                }
                Arrangement probe = *this;
                probe.remove_passage_pair(id, std::min(t, u), std::max(t, u));
                if (probe.total_crossings() <= base) {
                    *this = probe;
                    return true;
                }
            }
        }
        return false;
    }

    // -- swaps ---------------------------------------------------------------

    // Chords incident to either strand of the candidate swap; crossing
    // changes are confined to this set because the swapped slots are
    // adjacent at both ends of the band.
    long long local_crossings(int handle, int i) const {
        const auto& lst = strands_[handle];
        std::set<std::pair<int, int>> keys;
        std::vector<Chord> cs;
        for (int w = i; w <= i + 1; ++w) {
            const auto& r = lst[w];
            int m = static_cast<int>(curves_[r.curve].passages.size());
            for (int ci : {(r.passage + m - 1) % m, r.passage}) {
                if (keys.insert({r.curve, ci}).second) cs.push_back(chord(r.curve, ci));
            }
        }
        long long n = 0;
        for (size_t a = 0; a < cs.size(); ++a)
            for (size_t b = a + 1; b < cs.size(); ++b)
                if (chords_cross(cs[a], cs[b])) ++n;
        return n;
    }

    long long swap_delta(int handle, int i) {
        long long before = local_crossings(handle, i);
        std::swap(strands_[handle][i], strands_[handle][i + 1]);
        long long after = local_crossings(handle, i);
        std::swap(strands_[handle][i], strands_[handle][i + 1]);
        return after - before;
    }

    bool apply_one_negative_swap() {
        for (int h = 1; h <= surface.handle_count(); ++h) {
            auto& lst = strands_[h];
            for (int i = 0; i + 1 < static_cast<int>(lst.size()); ++i) {
                if (swap_delta(h, i) < 0) {
                    std::swap(lst[i], lst[i + 1]);
                    return true;
                }
            }
        }
        return false;
    }

    // -- plateau transport ----------------------------------------------------

    // Walks a crossing along a parallel run of two curves through the
    // bands via zero-cost swaps; commits only if the total strictly
    // drops (the far end of the run held the matching bigon crossing).
    bool transport_one_crossing() {
        long long base = total_crossings();
        for (int h = 1; h <= surface.handle_count(); ++h) {
            int k = static_cast<int>(strands_[h].size());
            for (int i = 0; i + 1 < k; ++i) {
                Arrangement probe = *this;
                if (probe.walk_transport(h, i, base)) {
                    *this = probe;
                    return true;
                }
            }
        }
        return false;
    }

    bool walk_transport(int h, int i, long long base) {
        size_t guard = total_passages() + 8;
        int ch = h, ci = i;
        for (size_t step = 0; step < guard; ++step) {
            long long d = swap_delta(ch, ci);
            if (d > 0) return false;
            std::swap(strands_[ch][ci], strands_[ch][ci + 1]);
            if (total_crossings() < base) return true;
            // Continue along the pair: find another handle where the same
            // two curves sit adjacently (ignoring the position we just left).
            StrandRef a = strands_[ch][ci], b = strands_[ch][ci + 1];
            bool found = false;
            for (int h2 = 1; h2 <= surface.handle_count() && !found; ++h2) {
                const auto& lst = strands_[h2];
                for (int j = 0; j + 1 < static_cast<int>(lst.size()); ++j) {
                    if (h2 == ch && j == ci) continue;
                    const auto& x = lst[j];
                    const auto& y = lst[j + 1];
                    bool same_pair = (x.curve == a.curve && y.curve == b.curve) ||
                                     (x.curve == b.curve && y.curve == a.curve);
                    if (!same_pair) continue;
                    if (swap_delta(h2, j) <= 0) { ch = h2; ci = j; found = true; break; }
                }
            }
            if (!found) return false;
        }
        return false;
    }
};

// Spec'd free functions mirroring the member operations.

inline Verdict validate(const Arrangement& a) { return a.validate(); }

inline Arrangement reduce(const Arrangement& a) {
    Arrangement r = a;
    r.reduce();
    return r;
}

inline long long geometric_intersection(const Arrangement& a, const std::string& c,
                                        const std::string& d) {
    return a.geometric_intersection(c, d);
}

inline std::vector<long long> homology_class(const Arrangement& a, const std::string& c) {
    Arrangement r = a;
    r.reduce();
    return r.homology_class(r.curve_id(c));
}

inline std::vector<int> crossing_word(const Arrangement& a, const std::string& c) {
    return a.crossing_word(a.curve_id(c));
}

inline bool curves_equal(const Arrangement& a, const std::string& c, const std::string& d) {
    return a.curves_equal(c, d);
}

// Standard skew pairing <alpha_i, beta_i> = +1 in the (a1,b1,...,ag,bg) basis.
inline long long intersection_form(const std::vector<long long>& x,
                                   const std::vector<long long>& y) {
    long long s = 0;
    for (size_t i = 0; 2 * i + 1 < x.size(); ++i)
        s += x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i];
    return s;
}

inline std::string letter_name(int letter) {
    int h = std::abs(letter);
    int block = (h - 1) / 2 + 1;
    std::string base = (h % 2 == 1 ? "x" : "y") + std::to_string(block);
    return letter > 0 ? base : base + "^-1";
}

} // namespace monocle
