#pragma once

#include <algorithm>

#include "authkit/authcode.hpp"
#include "authkit/design.hpp"
#include "authkit/transform.hpp"

// The four reference constructions used across the test suites.

namespace fixtures {

using namespace authkit;

inline AuthCode fano() { return make_authcode(develop(Row{{0}, {1}, {3}}, 7)); }

inline AuthCode edf19() { return make_authcode(develop(Row{{1, 7, 11}, {4, 6, 9}, {5, 16, 17}}, 19)); }

inline AuthCode split25() { return make_authcode(develop(Row{{0, 1}, {2, 4}, {12, 20}}, 25)); }

inline std::vector<Cell> bibd13_blocks() {
    OrderedDesign both = develop(std::vector<Row>{Row{{0}, {1}, {4}}, Row{{0}, {2}, {8}}}, 13);
    std::vector<Cell> blocks;
    for (const Row& row : both.rows) {
        Cell blk;
        for (const Cell& cell : row) blk.push_back(cell[0]);
        std::sort(blk.begin(), blk.end());
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

inline AuthCode bibd13() { return make_authcode(equitable_order(bibd13_blocks(), 13, 3)); }

}  // namespace fixtures
