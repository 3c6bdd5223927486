#pragma once

// Test-only utilities: independent brute-force oracles and curve
// placement search.  These deliberately avoid the engine's reduce()
// machinery so they can serve as a second opinion on it.

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

#include "monocle/arrangement.hpp"

namespace testutil {

using monocle::Arrangement;
using monocle::Passage;
using monocle::SurfaceModel;

// Inserts a curve choosing strand positions by exhaustive search:
// the curve must come out embedded, and among embedded placements the
// total added crossing count is minimized.  Exponential; test sizes only.
inline int add_curve_embedded(Arrangement& arr, const std::string& name,
                              const std::vector<Passage>& ps) {
    int m = static_cast<int>(ps.size());
    std::vector<int> sizes(m);
    for (int t = 0; t < m; ++t) sizes[t] = static_cast<int>(arr.strand_order(ps[t].handle).size());
    // Positions among pre-existing strands; passages through the same
    // handle inserted earlier shift later choices, handled by add_curve's
    // sequential semantics.
    std::vector<int> choice(m, 0), best_choice;
    long long best = std::numeric_limits<long long>::max();
    long long before = arr.total_crossings();

    std::vector<int> limit(m);
    {
        std::vector<int> seen(arr.surface.handle_count() + 1, 0);
        for (int t = 0; t < m; ++t) {
            limit[t] = sizes[t] + seen[ps[t].handle] + 1;
            ++seen[ps[t].handle];
        }
    }
    while (true) {
        Arrangement probe = arr;
        int id = probe.add_curve(name, ps, choice);
        bool selfok = true;
        auto cs = probe.chords_of(id);
        for (size_t i = 0; i < cs.size() && selfok; ++i)
            for (size_t j = i + 1; j < cs.size() && selfok; ++j)
                if (chords_cross(cs[i], cs[j])) selfok = false;
        if (selfok) {
            long long tot = probe.total_crossings() - before;
            if (tot < best) { best = tot; best_choice = choice; }
        }
        int t = m - 1;
        while (t >= 0 && choice[t] + 1 >= limit[t]) { choice[t] = 0; --t; }
        if (t < 0) break;
        ++choice[t];
    }
    if (best_choice.empty() && m > 0)
        throw std::runtime_error("no embedded placement found for " + name);
    return arr.add_curve(name, ps, best_choice);
}

// Independent minimal-position oracle: builds a fresh arrangement with
// only the two passage words and scans every strand order of every
// handle for the fewest crossings between embedded placements.
inline long long brute_min_crossings(const SurfaceModel& s, const std::vector<Passage>& a,
                                     const std::vector<Passage>& b) {
    Arrangement base(s);
    base.add_curve("A", a);
    base.add_curve("B", b);
    int H = s.handle_count();
    std::vector<std::vector<monocle::StrandRef>> lists(H + 1);
    for (int h = 1; h <= H; ++h) lists[h] = base.strand_order(h);

    long long best = std::numeric_limits<long long>::max();
    // Enumerate permutations of each handle's strands jointly.
    std::vector<std::vector<int>> perms(H + 1);
    std::vector<int> idx(H + 1, 0);
    std::vector<std::vector<std::vector<monocle::StrandRef>>> all(H + 1);
    for (int h = 1; h <= H; ++h) {
        auto lst = lists[h];
        std::sort(lst.begin(), lst.end(), [](const auto& x, const auto& y) {
            return x.curve != y.curve ? x.curve < y.curve : x.passage < y.passage;
        });
        do all[h].push_back(lst);
        while (std::next_permutation(lst.begin(), lst.end(), [](const auto& x, const auto& y) {
            return x.curve != y.curve ? x.curve < y.curve : x.passage < y.passage;
        }));
    }
    std::vector<size_t> pick(H + 1, 0);
    while (true) {
        Arrangement probe = base;
        for (int h = 1; h <= H; ++h) probe.strands_raw(h) = all[h][pick[h]];
        if (probe.validate().ok) best = std::min(best, probe.crossings_between(0, 1));
        int h = H;
        while (h >= 1 && pick[h] + 1 >= all[h].size()) { pick[h] = 0; --h; }
        if (h < 1) break;
        ++pick[h];
    }
    return best;
}

// Torus oracle: two classes (p,q), (r,s) intersect minimally in |ps-qr|.
inline long long torus_min(long long p, long long q, long long r, long long s) {
    long long d = p * s - q * r;
    return d < 0 ? -d : d;
}

} // namespace testutil
