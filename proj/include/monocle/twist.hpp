#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monocle/arrangement.hpp"

namespace monocle {

/*
  Dehn twist surgery.

  A positive twist about c reroutes every crossing of a target with c
  into a full wrap travelling parallel to c.  The wrap strands of all
  rerouted crossings stay on the left side of c (left of c's own
  orientation), nested by how far around the wrap has travelled, and
  each wrap crosses c exactly once, next to the crossing it replaced.
  Arriving on the left side the wrap is traversed with c's orientation;
  arriving on the right side, against it.  Negative twists mirror the
  construction.
*/

struct TwistLetter {
    std::string curve;
    int exp = 1;  // +-1
};

// Letters stored in application order (first applied first).  The
// conventional product notation t_{v_m} ... t_{v_1} reads right to left.
struct TwistWord {
    std::vector<TwistLetter> letters;

    static TwistWord from_rightmost_first(std::vector<TwistLetter> rl) {
        std::reverse(rl.begin(), rl.end());
        return TwistWord{std::move(rl)};
    }

    TwistWord inverse() const {
        TwistWord w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->curve, -it->exp});
        return w;
    }

    TwistWord then(const TwistWord& next) const {
        TwistWord w = *this;
        w.letters.insert(w.letters.end(), next.letters.begin(), next.letters.end());
        return w;
    }

    TwistWord power(int k) const {
        TwistWord base = k >= 0 ? *this : inverse();
        TwistWord w;
        for (int i = 0; i < std::abs(k); ++i) w = w.then(base);
        return w;
    }

    size_t size() const { return letters.size(); }
};

namespace detail {

struct WrapElem {
    Passage passage;   // passage of the new curve
    int anchor = -1;   // c-passage the strand runs beside
    long long sortkey = 0;  // smaller = nearer to c
    int target = -1;
    int new_index = -1;  // index in the target's new passage list
};

struct CrossingRec {
    int target = -1;
    int t_chord = -1;  // chord of the target
    int c_chord = -1;  // chord of the twisting curve
    SlotPos wkey;      // ordering endpoint along the target chord
    long long event = 0;  // position along c's event cycle
    bool forward = true;  // wrap traversal direction
};

}  // namespace detail

// t_c^k applied to the named targets; c itself and all other curves are
// unchanged.  Positive k turns targets left into the wrap.
inline Arrangement dehn_twist(const Arrangement& arr0, const std::string& c_name, int k,
                              const std::vector<std::string>& target_names) {
    if (k == 0) throw std::invalid_argument("twist exponent must be nonzero");
    Arrangement arr = arr0;
    arr.reduce();
    {
        Verdict v = arr.validate();
        if (!v.ok) throw std::invalid_argument("twist on invalid arrangement: " + v.witness);
    }
    int cid = arr.curve_id(c_name);
    if (arr.curve(cid).trivial()) return arr;  // twist about a trivial curve

    std::vector<int> targets;
    for (const auto& nm : target_names) {
        int id = arr.curve_id(nm);
        if (id == cid) continue;  // t_c fixes c
        targets.push_back(id);
    }
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    int sign = k > 0 ? 1 : -1;
    for (int rep = 0; rep < std::abs(k); ++rep) {
        const auto& cps = arr.curve(cid).passages;
        int r = static_cast<int>(cps.size());
        auto cchords = arr.chords_of(cid);

        // Crossings grouped by c-chord, ordered along each chord.
        std::vector<std::vector<detail::CrossingRec>> on_c(r);
        std::map<int, std::vector<detail::CrossingRec>> on_target;
        for (int d : targets) {
            auto dchords = arr.chords_of(d);
            for (const auto& p : dchords) {
                for (const auto& q : cchords) {
                    if (!chords_cross(p, q)) continue;
                    detail::CrossingRec rec;
                    rec.target = d;
                    rec.t_chord = p.index;
                    rec.c_chord = q.index;
                    // endpoint of p inside the ccw arc (q.from -> q.to)
                    rec.wkey = in_open_arc(q.from, q.to, p.from) ? p.from : p.to;
                    // left side of c's chord = ccw arc from q.to to q.from
                    bool a_left = in_open_arc(q.to, q.from, p.from);
                    rec.forward = (sign > 0) ? a_left : !a_left;
                    on_c[q.index].push_back(rec);
                }
            }
        }
        long long M = 0;
        for (auto& v : on_c) M += static_cast<long long>(v.size());
        if (M == 0) break;

        // Order along each c-chord by the crossing chord's endpoint in the
        // ccw arc of the c-chord; then enumerate the event cycle along c.
        std::vector<long long> ev_passage(r, 0);
        long long next_ev = 0;
        for (int j = 0; j < r; ++j) {
            ev_passage[j] = next_ev++;
            auto& lst = on_c[j];
            const Chord& q = cchords[j];
            auto key_in_arc = [&](const SlotPos& w) {
                // endpoint of the crossing chord inside arc(q.from->q.to)
                return w;
            };
            std::sort(lst.begin(), lst.end(), [&](const auto& x, const auto& y) {
                return in_open_arc(q.from, key_in_arc(y.wkey), key_in_arc(x.wkey));
            });
            for (auto& rec : lst) rec.event = next_ev++;
        }
        long long total_ev = next_ev;
        auto fwd_dist = [&](long long from, long long to) {
            return ((to - from) % total_ev + total_ev) % total_ev;
        };

        // Per-target crossings keyed by target chord, ordered along it.
        for (auto& v : on_c)
            for (auto& rec : v) on_target[rec.target].push_back(rec);
        for (auto& [d, lst] : on_target) {
            std::sort(lst.begin(), lst.end(), [&](const auto& x, const auto& y) {
                if (x.t_chord != y.t_chord) return x.t_chord < y.t_chord;
                Chord p = arr.chord(d, x.t_chord);
                return in_open_arc(p.from, y.wkey, x.wkey);
            });
        }

        // Assemble new passage lists and wrap strand plans.
        std::map<int, std::vector<Passage>> new_passages;
        std::map<int, std::vector<int>> old2new;
        // wrap elements grouped by anchor c-passage
        std::vector<std::vector<detail::WrapElem>> anchored(r);

        for (int d : targets) {
            const auto& dps = arr.curve(d).passages;
            int m = static_cast<int>(dps.size());
            auto& np = new_passages[d];
            auto& o2n = old2new[d];
            o2n.assign(m, -1);
            auto it = on_target.find(d);
            const std::vector<detail::CrossingRec> none;
            const auto& recs = it == on_target.end() ? none : it->second;
            size_t ri = 0;
            for (int t = 0; t < m; ++t) {
                o2n[t] = static_cast<int>(np.size());
                np.push_back(dps[t]);
                while (ri < recs.size() && recs[ri].t_chord == t) {
                    const auto& rec = recs[ri++];
                    for (int s = 0; s < r; ++s) {
                        int j = rec.forward ? (rec.c_chord + 1 + s) % r
                                            : ((rec.c_chord - s) % r + r) % r;
                        detail::WrapElem we;
                        we.passage.handle = cps[j].handle;
                        we.passage.dir = rec.forward ? cps[j].dir : -cps[j].dir;
                        we.anchor = j;
                        we.sortkey = fwd_dist(ev_passage[j], rec.event);
                        we.target = d;
                        we.new_index = static_cast<int>(np.size());
                        np.push_back(we.passage);
                        anchored[j].push_back(we);
                    }
                }
            }
        }

        // Rebuild strand tables: keep existing entries (remapped), and
        // inject wrap strands beside c on the twist side.
        for (auto& grp : anchored)
            std::sort(grp.begin(), grp.end(),
                      [](const auto& x, const auto& y) { return x.sortkey < y.sortkey; });

        for (int h = 1; h <= arr.surface.handle_count(); ++h) {
            const auto old = arr.strand_order(h);
            std::vector<StrandRef> nl;
            for (const auto& ref : old) {
                bool is_anchor = (ref.curve == cid);
                bool above_side = false;
                const std::vector<detail::WrapElem>* grp = nullptr;
                if (is_anchor) {
                    int j = ref.passage;
                    grp = &anchored[j];
                    bool left_above = Arrangement::left_of_is_above(cps[j].dir);
                    above_side = (sign > 0) ? left_above : !left_above;
                }
                if (is_anchor && grp && !grp->empty() && !above_side) {
                    // farthest first, nearest (smallest key) adjacent to c
                    for (auto it2 = grp->rbegin(); it2 != grp->rend(); ++it2)
                        nl.push_back(StrandRef{it2->target, it2->new_index});
                }
                if (new_passages.count(ref.curve))
                    nl.push_back(StrandRef{ref.curve, old2new[ref.curve][ref.passage]});
                else
                    nl.push_back(ref);
                if (is_anchor && grp && !grp->empty() && above_side) {
                    for (const auto& we : *grp)
                        nl.push_back(StrandRef{we.target, we.new_index});
                }
            }
            arr.strands_raw(h) = nl;
        }
        for (auto& [d, np] : new_passages) arr.set_passages_raw(d, np);

        Verdict v = arr.validate();
        if (!v.ok) {
#ifdef MONOCLE_TWIST_DUMP
            for (int id = 0; id < arr.curve_count(); ++id) {
                if (arr.is_tombstone(id)) continue;
                fprintf(stderr, "%s:", arr.curve(id).name.c_str());
                for (auto& p : arr.curve(id).passages) fprintf(stderr, " %+d", p.dir * p.handle);
                fprintf(stderr, "\n");
            }
            for (int h = 1; h <= arr.surface.handle_count(); ++h) {
                fprintf(stderr, "H%d:", h);
                for (auto& rr : arr.strand_order(h))
                    fprintf(stderr, " (%s,%d)", arr.curve(rr.curve).name.c_str(), rr.passage);
                fprintf(stderr, "\n");
            }
#endif
            throw std::logic_error("twist produced invalid arrangement: " + v.witness);
        }
        arr.reduce();
    }
    return arr;
}

inline Arrangement apply_word(const Arrangement& arr0, const TwistWord& w,
                              const std::vector<std::string>& targets) {
    Arrangement arr = arr0;
    for (const auto& l : w.letters) arr = dehn_twist(arr, l.curve, l.exp, targets);
    return arr;
}

// ---- homological shadow ----------------------------------------------------

struct SymplecticMatrix {
    int n = 0;  // 2g
    std::vector<long long> a;  // row-major n*n

    static SymplecticMatrix identity(int n) {
        SymplecticMatrix m;
        m.n = n;
        m.a.assign(static_cast<size_t>(n) * n, 0);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    long long& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    long long at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    SymplecticMatrix operator*(const SymplecticMatrix& o) const {
        SymplecticMatrix r = identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long long s = 0;
                for (int k = 0; k < n; ++k) s += at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    std::vector<long long> apply(const std::vector<long long>& x) const {
        std::vector<long long> y(n, 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

    bool is_identity() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    bool operator==(const SymplecticMatrix& o) const { return n == o.n && a == o.a; }

    // M^T J M = J for the standard skew form.
    bool preserves_form() const {
        auto form = [&](int i, int j) -> long long {
            if (i / 2 != j / 2) return 0;
            if (i % 2 == 0 && j % 2 == 1) return 1;
            if (i % 2 == 1 && j % 2 == 0) return -1;
            return 0;
        };
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                long long s = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) s += at(i, p) * form(i, j) * at(j, q);
                if (s != form(p, q)) return false;
            }
        return true;
    }
};

// x -> x + sign <x, v> v
inline SymplecticMatrix transvection(const std::vector<long long>& v, int sign) {
    int n = static_cast<int>(v.size());
    SymplecticMatrix m = SymplecticMatrix::identity(n);
    for (int j = 0; j < n; ++j) {
        std::vector<long long> e(n, 0);
        e[j] = 1;
        long long coef = sign * intersection_form(e, v);
        for (int i = 0; i < n; ++i) m.at(i, j) += coef * v[i];
    }
    return m;
}

inline SymplecticMatrix homology_action(const Arrangement& arr, const TwistWord& w) {
    int n = 2 * arr.surface.genus;
    SymplecticMatrix M = SymplecticMatrix::identity(n);
    Arrangement red = arr;
    red.reduce();
    for (const auto& l : w.letters) {
        auto v = red.homology_class(red.curve_id(l.curve));
        M = transvection(v, l.exp) * M;
    }
    return M;
}

// Materializes the curves phi(v_i) and returns the word on them together
// with the enlarged arrangement.  Image curves are named
// "<name>@<tag>".
inline std::pair<Arrangement, TwistWord> conjugate_word(const Arrangement& arr0,
                                                        const TwistWord& phi,
                                                        const TwistWord& V,
                                                        const std::string& tag = "conj") {
    Arrangement arr = arr0;
    std::map<std::string, std::string> img;
    std::vector<std::string> copies;
    for (const auto& l : V.letters) {
        if (img.count(l.curve)) continue;
        std::string nm = l.curve + "@" + tag;
        int src = arr.curve_id(l.curve);
        arr.parallel_copy(src, nm, true);
        img[l.curve] = nm;
        copies.push_back(nm);
    }
    arr = apply_word(arr, phi, copies);
    TwistWord out;
    for (const auto& l : V.letters) out.letters.push_back({img[l.curve], l.exp});
    return {arr, out};
}

// Trivial on homology and pointwise on the battery up to isotopy.
inline bool acts_trivially(const Arrangement& arr0, const TwistWord& w,
                           const std::vector<std::string>& battery) {
    if (!homology_action(arr0, w).is_identity()) return false;
    Arrangement arr = arr0;
    std::vector<std::string> copies;
    for (const auto& nm : battery) {
        std::string cp = nm + "@im";
        arr.parallel_copy(arr.curve_id(nm), cp, true);
        copies.push_back(cp);
    }
    arr = apply_word(arr, w, copies);
    for (const auto& nm : battery)
        if (!arr.curves_equal(nm, nm + "@im")) return false;
    return true;
}

// ---- external word format ---------------------------------------------------
// Whitespace-separated tokens NAME^+1 NAME^-1 ..., rightmost applied first.

inline TwistWord parse_twist_word(const std::string& text) {
    std::vector<TwistLetter> rl;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i >= text.size()) break;
        size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string tok = text.substr(i, j - i);
        i = j;
        auto caret = tok.rfind('^');
        if (caret == std::string::npos || caret + 1 >= tok.size())
            throw std::invalid_argument("malformed twist token: " + tok);
        std::string nm = tok.substr(0, caret);
        std::string e = tok.substr(caret + 1);
        int exp;
        if (e == "+1" || e == "1") exp = 1;
        else if (e == "-1") exp = -1;
        else throw std::invalid_argument("malformed twist exponent: " + tok);
        rl.push_back({nm, exp});
    }
    return TwistWord::from_rightmost_first(std::move(rl));
}

inline std::string format_twist_word(const TwistWord& w) {
    std::string out;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        if (!out.empty()) out += ' ';
        out += it->curve + (it->exp > 0 ? "^+1" : "^-1");
    }
    return out;
}

} // namespace monocle
