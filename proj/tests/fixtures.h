#pragma once

// Cell-set builders shared by the tests and the acceptance run.

#include "carver/grid.h"
#include "carver/random.h"

#include <deque>
#include <set>

namespace carver::testing {

inline CellSet cells2(std::initializer_list<std::pair<int, int>> xs) {
    std::vector<CellIndex> v;
    for (auto [x, y] : xs) v.push_back(make_cell({x, y}));
    return CellSet::from_unsorted(2, std::move(v));
}

inline CellSet block(int x0, int y0, int w, int h) {
    std::vector<CellIndex> v;
    for (int x = x0; x < x0 + w; ++x)
        for (int y = y0; y < y0 + h; ++y) v.push_back(make_cell({x, y}));
    return CellSet::from_unsorted(2, std::move(v));
}

/// Random connected set grown from a seed cell inside [0,R)^2.
inline CellSet random_connected(Rng& rng, int R, std::size_t target) {
    std::set<CellIndex> in{make_cell({static_cast<int>(rng.below(R)), static_cast<int>(rng.below(R))})};
    std::vector<CellIndex> frontier(in.begin(), in.end());
    while (in.size() < target) {
        const CellIndex base = frontier[rng.below(frontier.size())];
        CellIndex next = base;
        const int axis = static_cast<int>(rng.below(2));
        next[axis] += rng.below(2) ? 1 : -1;
        if (next[axis] < 0 || next[axis] >= R) continue;
        if (in.insert(next).second) frontier.push_back(next);
    }
    return CellSet::from_unsorted(2, std::vector<CellIndex>(in.begin(), in.end()));
}

/// Breadth-first reachability written independently of the library.
inline std::size_t reachable_count(const std::set<CellIndex>& cells, const CellIndex& start, int d) {
    std::set<CellIndex> seen{start};
    std::deque<CellIndex> queue{start};
    while (!queue.empty()) {
        const CellIndex c = queue.front();
        queue.pop_front();
        for (int a = 0; a < d; ++a) {
            for (int delta : {-1, 1}) {
                CellIndex n = c;
                n[a] += delta;
                if (cells.count(n) && seen.insert(n).second) queue.push_back(n);
            }
        }
    }
    return seen.size();
}

}  // namespace carver::testing
