#pragma once

#include <string>
#include <vector>

namespace authkit {

using Cell = std::vector<int>;  // sorted distinct points
using Row = std::vector<Cell>;  // pairwise disjoint cells

/// Rows of ordered cells over points 0..v-1. One shape serves three roles:
/// a block list (row = block partitioned into cells), a base-block list, and
/// an authentication-code encoding matrix (row = key, cell = column entry).
struct OrderedDesign {
    int v = 0;  // point count
    int u = 0;  // cells per row
    std::vector<Row> rows;

    bool operator==(const OrderedDesign&) const = default;
};

/// Throws std::invalid_argument naming the offending row if a cell is empty,
/// unsorted/duplicated, out of 0..v-1, or overlaps another cell of its row.
void require_well_formed(const OrderedDesign& d);

struct DesignParams {
    long long v = 0, b = 0, r = 0, k = 0, lambda = 0, u = 0, c = 0;
    bool operator==(const DesignParams&) const = default;
};

/// Develops one ordered base row through Z_n: row t adds t to every point
/// mod n, keeping cell order and sizes. Row 0 is the base itself.
OrderedDesign develop(const Row& base_row, int n);

/// Concatenation of the full orbits of several base rows (all cells must
/// share one u).
OrderedDesign develop(const std::vector<Row>& base_rows, int n);

struct BibdCheck {
    bool ok = false;
    DesignParams params;
    std::string error;
};

/// Checks that the blocks form a (v,b,r,k,lambda)-BIBD: constant block size,
/// constant replication, and every unordered point pair covered the same
/// number of times. The error message carries a witness.
BibdCheck validate_bibd(const std::vector<Cell>& blocks, int v);
BibdCheck validate_bibd(const OrderedDesign& d);  // rows flattened, cell order ignored

struct EdfSpec {
    int n = 0;                   // group Z_n
    std::vector<Cell> sets;      // k c-subsets of 0..n-1
};

struct EdfCheck {
    bool ok = false;
    long long lambda = 0;
    std::string error;
};

/// Tallies all external differences x - y mod n (x in D_i, y in D_j, i != j).
/// ok iff the tally is a constant lambda on every nonzero value and zero at 0.
EdfCheck validate_edf(const EdfSpec& spec);

struct SplittingCheck {
    bool ok = false;
    DesignParams params;
    std::string error;
};

/// Checks a (v, u x c, 1)-splitting BIBD: every row has u cells of size c and
/// every unordered pair of distinct points lies in different cells of exactly
/// one row.
SplittingCheck validate_splitting_bibd(const OrderedDesign& d, int u, int c);

struct EquitableCheck {
    bool ok = false;
    long long multiplicity = 0;  // common per-position count r/u when ok
    int position = -1, point = -1;
    long long count = 0;  // witness count when not ok
};

/// ok iff for every cell position i the position-i cells over all rows cover
/// every point the same number of times.
EquitableCheck check_equitable(const OrderedDesign& d);

/// Orders each block of a BIBD with k | r into k positions so that every
/// point occurs exactly r/k times in every position (a Youden square when
/// r = k). Peels one position per round via a degree-constrained bipartite
/// matching; failure is impossible for valid input and raises std::logic_error.
/// Throws std::invalid_argument if the blocks are not a BIBD or k does not
/// divide r.
OrderedDesign equitable_order(const std::vector<Cell>& blocks, int v, int k);

enum class OrderingStatus { found, none_found, infeasible };

struct SplittingOrdering {
    OrderingStatus status = OrderingStatus::none_found;
    OrderedDesign design;  // passes check_equitable when status == found
    std::string error;     // set when status == infeasible
};

inline constexpr long long kDefaultOrderingBudget = 2'000'000;

/// Equitably orders a (v, u x c, 1)-splitting BIBD given as position-free
/// blocks (each row: u disjoint c-cells in arbitrary order).
/// infeasible when v != 1 mod u(u-1)c^2 (a necessary condition) or the blocks
/// are not a splitting BIBD. Group-developed inputs with full orbits are
/// ordered directly from orbit representatives; otherwise a budgeted
/// backtracking search runs, and exhausting it yields none_found, which is
/// not a proof of nonexistence.
SplittingOrdering equitable_order_splitting(const std::vector<Row>& blocks, int v, int u, int c,
                                            long long node_budget = kDefaultOrderingBudget);

}  // namespace authkit
