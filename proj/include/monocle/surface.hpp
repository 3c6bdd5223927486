#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace monocle {

// Combinatorial model of a genus-g surface with one boundary circle:
// a base disk P with 2g bands H_1..H_2g attached along 4g intervals of
// the boundary circle of P.  Walking the boundary of P counterclockwise,
// the attaching intervals appear grouped per genus block i = 1..g as
//
//     e+(2i-1)  e+(2i)  e-(2i-1)  e-(2i)
//
// Band H_b connects e+(b) to e-(b) without a twist, so that a strand
// crossing the band meets the two intervals at mirrored positions.
// Bands with odd index 2i-1 are dual to the alpha_i generator, bands
// with even index 2i to beta_i.
struct SurfaceModel {
    int genus = 0;

    SurfaceModel() = default;
    explicit SurfaceModel(int g) : genus(g) {
        if (g < 1) throw std::invalid_argument("surface genus must be >= 1");
    }

    int handle_count() const { return 2 * genus; }

    // Intervals are ranked 0..4g-1 in the counterclockwise order above.
    // Handles are 1-based.
    int interval_rank(int handle, bool plus_end) const {
        check_handle(handle);
        int block = (handle - 1) / 2;        // 0-based genus block
        int odd = (handle - 1) % 2 == 0;     // H_{2i-1} ?
        if (plus_end) return 4 * block + (odd ? 0 : 1);
        return 4 * block + (odd ? 2 : 3);
    }

    bool is_alpha_handle(int handle) const {
        check_handle(handle);
        return (handle - 1) % 2 == 0;
    }

    // alpha*_i / beta*_i names of the dotted dual arcs.
    std::string dual_arc_name(int handle) const {
        check_handle(handle);
        int block = (handle - 1) / 2 + 1;
        return (is_alpha_handle(handle) ? "alpha*" : "beta*") + std::to_string(block);
    }

    int handle_of_dual_arc(const std::string& name) const {
        for (int h = 1; h <= handle_count(); ++h)
            if (dual_arc_name(h) == name) return h;
        throw std::invalid_argument("unknown dual arc name: " + name);
    }

    // Euler characteristic of the surface: one disk plus 2g bands.
    int euler_characteristic() const { return 1 - 2 * genus; }

    // Number of boundary circles of the disk-with-bands, traced
    // combinatorially.  The block pattern always yields exactly one.
    int boundary_circles() const {
        // Corners: each interval has a ccw-start and a ccw-end corner.
        // Boundary arcs of P join interval ends to the next interval's
        // start; band edges join e+(b) start<->e-(b) end and
        // e+(b) end<->e-(b) start (mirror gluing).
        int n = 4 * genus;
        // Edge following on 2n corner points: corner (r, 0) = start of
        // interval r, (r, 1) = end.  Arc step: (r,1) -> (r+1,0).  Band
        // step: (rank+,0) <-> (rank-,1) and (rank+,1) <-> (rank-,0).
        std::vector<int> bandmate(2 * n, -1);
        for (int h = 1; h <= handle_count(); ++h) {
            int rp = interval_rank(h, true), rm = interval_rank(h, false);
            bandmate[2 * rp + 0] = 2 * rm + 1;
            bandmate[2 * rm + 1] = 2 * rp + 0;
            bandmate[2 * rp + 1] = 2 * rm + 0;
            bandmate[2 * rm + 0] = 2 * rp + 1;
        }
        std::vector<bool> seen(2 * n, false);
        int circles = 0;
        for (int c = 0; c < 2 * n; ++c) {
            if (seen[c]) continue;
            ++circles;
            int cur = c;
            while (!seen[cur]) {
                seen[cur] = true;
                // Cross the band, then walk the boundary arc of P to the
                // start of the next interval.
                int other = bandmate[cur];
                seen[other] = true;
                int rank = other / 2, endpt = other % 2;
                int next_rank, next_end;
                if (endpt == 1) { next_rank = (rank + 1) % n; next_end = 0; }
                else { next_rank = (rank + n - 1) % n; next_end = 1; }
                cur = 2 * next_rank + next_end;
            }
        }
        return circles;
    }

private:
    void check_handle(int handle) const {
        if (handle < 1 || handle > handle_count())
            throw std::invalid_argument("handle index out of range");
    }
};

inline SurfaceModel build_surface(int g) { return SurfaceModel(g); }

} // namespace monocle
