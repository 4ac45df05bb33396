#include "authkit/design.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace authkit {

namespace {

std::string row_label(size_t idx) { return "row " + std::to_string(idx); }

void check_cells(const Row& row, int v, const std::string& where) {
    std::vector<char> seen(static_cast<size_t>(v), 0);
    for (const Cell& cell : row) {
        if (cell.empty()) throw std::invalid_argument(where + ": empty cell");
        for (size_t i = 0; i < cell.size(); ++i) {
            int p = cell[i];
            if (p < 0 || p >= v)
                throw std::invalid_argument(where + ": point " + std::to_string(p) + " out of range 0.." +
                                            std::to_string(v - 1));
            if (i > 0 && cell[i - 1] >= p)
                throw std::invalid_argument(where + ": cell not sorted strictly ascending");
            if (seen[static_cast<size_t>(p)])
                throw std::invalid_argument(where + ": point " + std::to_string(p) +
                                            " appears in two cells of one row");
            seen[static_cast<size_t>(p)] = 1;
        }
    }
}

// Dinic maximum flow on a small graph; deterministic for a fixed edge order.
class MaxFlow {
public:
    explicit MaxFlow(int n) : adj_(static_cast<size_t>(n)) {}

    int add_edge(int from, int to, int cap) {
        int id = static_cast<int>(edges_.size());
        adj_[static_cast<size_t>(from)].push_back(id);
        edges_.push_back({to, cap});
        adj_[static_cast<size_t>(to)].push_back(id + 1);
        edges_.push_back({from, 0});
        return id;
    }

    int flow_on(int id) const { return edges_[static_cast<size_t>(id ^ 1)].cap; }

    long long run(int source, int sink) {
        long long total = 0;
        while (bfs(source, sink)) {
            iter_.assign(adj_.size(), 0);
            while (long long pushed = dfs(source, sink, 1 << 30)) total += pushed;
        }
        return total;
    }

private:
    struct Edge {
        int to, cap;
    };

    bool bfs(int source, int sink) {
        level_.assign(adj_.size(), -1);
        std::queue<int> q;
        level_[static_cast<size_t>(source)] = 0;
        q.push(source);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int id : adj_[static_cast<size_t>(x)]) {
                const Edge& e = edges_[static_cast<size_t>(id)];
                if (e.cap > 0 && level_[static_cast<size_t>(e.to)] < 0) {
                    level_[static_cast<size_t>(e.to)] = level_[static_cast<size_t>(x)] + 1;
                    q.push(e.to);
                }
            }
        }
        return level_[static_cast<size_t>(sink)] >= 0;
    }

    long long dfs(int x, int sink, long long limit) {
        if (x == sink || limit == 0) return limit;
        for (size_t& i = iter_[static_cast<size_t>(x)]; i < adj_[static_cast<size_t>(x)].size(); ++i) {
            int id = adj_[static_cast<size_t>(x)][i];
            Edge& e = edges_[static_cast<size_t>(id)];
            if (e.cap <= 0 || level_[static_cast<size_t>(e.to)] != level_[static_cast<size_t>(x)] + 1) continue;
            long long pushed = dfs(e.to, sink, std::min<long long>(limit, e.cap));
            if (pushed > 0) {
                e.cap -= static_cast<int>(pushed);
                edges_[static_cast<size_t>(id ^ 1)].cap += static_cast<int>(pushed);
                return pushed;
            }
        }
        return 0;
    }

    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<size_t> iter_;
};

Cell shifted(const Cell& cell, int t, int n) {
    Cell out;
    out.reserve(cell.size());
    for (int p : cell) out.push_back((p + t) % n);
    std::sort(out.begin(), out.end());
    return out;
}

Row shifted_row(const Row& row, int t, int n) {
    Row out;
    out.reserve(row.size());
    for (const Cell& cell : row) out.push_back(shifted(cell, t, n));
    return out;
}

Row canonical_row(Row row) {
    for (Cell& cell : row) std::sort(cell.begin(), cell.end());
    std::sort(row.begin(), row.end());
    return row;
}

}  // namespace

void require_well_formed(const OrderedDesign& d) {
    if (d.v < 1) throw std::invalid_argument("design: point count must be positive");
    for (size_t i = 0; i < d.rows.size(); ++i) {
        if (static_cast<int>(d.rows[i].size()) != d.u)
            throw std::invalid_argument(row_label(i) + ": has " + std::to_string(d.rows[i].size()) +
                                        " cells, header says " + std::to_string(d.u));
        check_cells(d.rows[i], d.v, row_label(i));
    }
}

OrderedDesign develop(const Row& base_row, int n) {
    if (n < 1) throw std::invalid_argument("develop: group order must be positive");
    if (base_row.empty()) throw std::invalid_argument("develop: base row has no cells");
    check_cells(base_row, n, "base row");
    OrderedDesign d;
    d.v = n;
    d.u = static_cast<int>(base_row.size());
    d.rows.reserve(static_cast<size_t>(n));
    for (int t = 0; t < n; ++t) d.rows.push_back(shifted_row(base_row, t, n));
    return d;
}

OrderedDesign develop(const std::vector<Row>& base_rows, int n) {
    if (base_rows.empty()) throw std::invalid_argument("develop: no base rows");
    OrderedDesign d = develop(base_rows[0], n);
    for (size_t i = 1; i < base_rows.size(); ++i) {
        OrderedDesign next = develop(base_rows[i], n);
        if (next.u != d.u)
            throw std::invalid_argument("develop: base rows disagree on cell count (" + std::to_string(d.u) +
                                        " vs " + std::to_string(next.u) + ")");
        d.rows.insert(d.rows.end(), next.rows.begin(), next.rows.end());
    }
    return d;
}

BibdCheck validate_bibd(const std::vector<Cell>& blocks, int v) {
    BibdCheck out;
    if (v < 1) {
        out.error = "point count must be positive";
        return out;
    }
    if (blocks.empty()) {
        out.error = "no blocks";
        return out;
    }
    const long long b = static_cast<long long>(blocks.size());
    const long long k = static_cast<long long>(blocks[0].size());
    if (k == 0) {
        out.error = "block 0 is empty";
        return out;
    }
    std::vector<long long> replication(static_cast<size_t>(v), 0);
    for (size_t i = 0; i < blocks.size(); ++i) {
        const Cell& blk = blocks[i];
        if (static_cast<long long>(blk.size()) != k) {
            out.error = "block " + std::to_string(i) + " has size " + std::to_string(blk.size()) +
                        ", block 0 has size " + std::to_string(k);
            return out;
        }
        std::vector<char> seen(static_cast<size_t>(v), 0);
        for (int p : blk) {
            if (p < 0 || p >= v) {
                out.error = "block " + std::to_string(i) + ": point " + std::to_string(p) + " out of range";
                return out;
            }
            if (seen[static_cast<size_t>(p)]) {
                out.error = "block " + std::to_string(i) + ": repeated point " + std::to_string(p);
                return out;
            }
            seen[static_cast<size_t>(p)] = 1;
            ++replication[static_cast<size_t>(p)];
        }
    }
    for (int p = 1; p < v; ++p) {
        if (replication[static_cast<size_t>(p)] != replication[0]) {
            out.error = "point " + std::to_string(p) + " lies in " + std::to_string(replication[static_cast<size_t>(p)]) +
                        " blocks, point 0 lies in " + std::to_string(replication[0]);
            return out;
        }
    }
    // Pair coverage; lambda is fixed by the first pair and every other pair must match.
    std::vector<long long> pairs(static_cast<size_t>(v) * static_cast<size_t>(v), 0);
    for (const Cell& blk : blocks)
        for (size_t a = 0; a < blk.size(); ++a)
            for (size_t bidx = a + 1; bidx < blk.size(); ++bidx) {
                int x = blk[a], y = blk[bidx];
                ++pairs[static_cast<size_t>(x) * static_cast<size_t>(v) + static_cast<size_t>(y)];
            }
    long long lambda = v >= 2 ? pairs[1] : 0;
    for (int x = 0; x < v; ++x)
        for (int y = x + 1; y < v; ++y) {
            long long got = pairs[static_cast<size_t>(x) * static_cast<size_t>(v) + static_cast<size_t>(y)];
            if (got != lambda) {
                out.error = "pair (" + std::to_string(x) + "," + std::to_string(y) + ") covered " +
                            std::to_string(got) + " times, pair (0,1) covered " + std::to_string(lambda) + " times";
                return out;
            }
        }
    out.ok = true;
    out.params = {v, b, replication[0], k, lambda, k, 1};
    return out;
}

BibdCheck validate_bibd(const OrderedDesign& d) {
    std::vector<Cell> blocks;
    blocks.reserve(d.rows.size());
    for (const Row& row : d.rows) {
        Cell blk;
        for (const Cell& cell : row) blk.insert(blk.end(), cell.begin(), cell.end());
        std::sort(blk.begin(), blk.end());
        blocks.push_back(std::move(blk));
    }
    return validate_bibd(blocks, d.v);
}

EdfCheck validate_edf(const EdfSpec& spec) {
    EdfCheck out;
    if (spec.n < 1) {
        out.error = "group order must be positive";
        return out;
    }
    if (spec.sets.empty()) {
        out.error = "no sets";
        return out;
    }
    const size_t c = spec.sets[0].size();
    if (c == 0) {
        out.error = "set 0 is empty";
        return out;
    }
    for (size_t i = 0; i < spec.sets.size(); ++i) {
        const Cell& s = spec.sets[i];
        if (s.size() != c) {
            out.error = "set " + std::to_string(i) + " has size " + std::to_string(s.size()) +
                        ", set 0 has size " + std::to_string(c);
            return out;
        }
        for (size_t j = 0; j < s.size(); ++j) {
            if (s[j] < 0 || s[j] >= spec.n) {
                out.error = "set " + std::to_string(i) + ": element " + std::to_string(s[j]) + " out of range";
                return out;
            }
            if (j > 0 && s[j - 1] >= s[j]) {
                out.error = "set " + std::to_string(i) + ": not sorted strictly ascending";
                return out;
            }
        }
    }
    std::vector<long long> tally(static_cast<size_t>(spec.n), 0);
    for (size_t i = 0; i < spec.sets.size(); ++i)
        for (size_t j = 0; j < spec.sets.size(); ++j) {
            if (i == j) continue;
            for (int x : spec.sets[i])
                for (int y : spec.sets[j]) ++tally[static_cast<size_t>(((x - y) % spec.n + spec.n) % spec.n)];
        }
    if (tally[0] > 0) {
        for (size_t i = 0; i < spec.sets.size(); ++i)
            for (size_t j = i + 1; j < spec.sets.size(); ++j)
                for (int x : spec.sets[i])
                    for (int y : spec.sets[j])
                        if (x == y) {
                            out.error = "difference 0 from " + std::to_string(x) + "-" + std::to_string(y) +
                                        " (sets " + std::to_string(i) + " and " + std::to_string(j) + " intersect)";
                            return out;
                        }
        out.error = "difference 0 occurs " + std::to_string(tally[0]) + " times";
        return out;
    }
    long long lambda = spec.n >= 2 ? tally[1] : 0;
    for (int d = 1; d < spec.n; ++d)
        if (tally[static_cast<size_t>(d)] != lambda) {
            out.error = "difference " + std::to_string(d) + " occurs " + std::to_string(tally[static_cast<size_t>(d)]) +
                        " times, difference 1 occurs " + std::to_string(lambda) + " times";
            return out;
        }
    out.ok = true;
    out.lambda = lambda;
    return out;
}

SplittingCheck validate_splitting_bibd(const OrderedDesign& d, int u, int c) {
    SplittingCheck out;
    if (d.u != u) {
        out.error = "design has " + std::to_string(d.u) + " cells per row, expected " + std::to_string(u);
        return out;
    }
    try {
        require_well_formed(d);
    } catch (const std::invalid_argument& e) {
        out.error = e.what();
        return out;
    }
    for (size_t i = 0; i < d.rows.size(); ++i)
        for (const Cell& cell : d.rows[i])
            if (static_cast<int>(cell.size()) != c) {
                out.error = row_label(i) + ": cell of size " + std::to_string(cell.size()) + ", expected " +
                            std::to_string(c);
                return out;
            }
    const int v = d.v;
    std::vector<long long> cross(static_cast<size_t>(v) * static_cast<size_t>(v), 0);
    std::vector<long long> replication(static_cast<size_t>(v), 0);
    for (const Row& row : d.rows) {
        for (const Cell& cell : row)
            for (int p : cell) ++replication[static_cast<size_t>(p)];
        for (size_t a = 0; a < row.size(); ++a)
            for (size_t bidx = a + 1; bidx < row.size(); ++bidx)
                for (int x : row[a])
                    for (int y : row[bidx]) {
                        int lo = std::min(x, y), hi = std::max(x, y);
                        ++cross[static_cast<size_t>(lo) * static_cast<size_t>(v) + static_cast<size_t>(hi)];
                    }
    }
    for (int x = 0; x < v; ++x)
        for (int y = x + 1; y < v; ++y) {
            long long got = cross[static_cast<size_t>(x) * static_cast<size_t>(v) + static_cast<size_t>(y)];
            if (got != 1) {
                out.error = "pair (" + std::to_string(x) + "," + std::to_string(y) + ") lies in different cells of " +
                            std::to_string(got) + " rows, expected exactly 1";
                return out;
            }
        }
    for (int p = 1; p < v; ++p)
        if (replication[static_cast<size_t>(p)] != replication[0]) {
            out.error = "point " + std::to_string(p) + " has replication " +
                        std::to_string(replication[static_cast<size_t>(p)]) + ", point 0 has " +
                        std::to_string(replication[0]);
            return out;
        }
    out.ok = true;
    out.params = {v, static_cast<long long>(d.rows.size()), replication[0],
                  static_cast<long long>(u) * c, 1, u, c};
    return out;
}

EquitableCheck check_equitable(const OrderedDesign& d) {
    EquitableCheck out;
    if (d.rows.empty() || d.u == 0) return out;
    std::vector<std::vector<long long>> count(static_cast<size_t>(d.u),
                                              std::vector<long long>(static_cast<size_t>(d.v), 0));
    for (const Row& row : d.rows)
        for (size_t i = 0; i < row.size(); ++i)
            for (int p : row[i]) ++count[i][static_cast<size_t>(p)];
    long long expected = count[0][0];
    for (int i = 0; i < d.u; ++i)
        for (int p = 0; p < d.v; ++p)
            if (count[static_cast<size_t>(i)][static_cast<size_t>(p)] != expected) {
                out.position = i;
                out.point = p;
                out.count = count[static_cast<size_t>(i)][static_cast<size_t>(p)];
                out.multiplicity = expected;
                return out;
            }
    out.ok = true;
    out.multiplicity = expected;
    return out;
}

OrderedDesign equitable_order(const std::vector<Cell>& blocks, int v, int k) {
    BibdCheck check = validate_bibd(blocks, v);
    if (!check.ok) throw std::invalid_argument("equitable_order: not a BIBD: " + check.error);
    if (check.params.k != k)
        throw std::invalid_argument("equitable_order: blocks have size " + std::to_string(check.params.k) +
                                    ", expected " + std::to_string(k));
    if (k == 0 || check.params.r % k != 0)
        throw std::invalid_argument("equitable_order: r = " + std::to_string(check.params.r) +
                                    " is not divisible by k = " + std::to_string(k));
    const int b = static_cast<int>(blocks.size());
    const int quota = static_cast<int>(check.params.r / k);

    // One matching round per position: each block contributes one unused point,
    // each point lands quota times. The leftover incidence graph stays
    // semi-regular, so every round saturates (Hall), or the input was invalid.
    std::vector<std::vector<char>> used(static_cast<size_t>(b));
    for (int i = 0; i < b; ++i) used[static_cast<size_t>(i)].assign(blocks[static_cast<size_t>(i)].size(), 0);
    std::vector<Row> rows(static_cast<size_t>(b), Row(static_cast<size_t>(k)));
    for (int round = 0; round < k; ++round) {
        const int source = 0, sink = b + v + 1;
        MaxFlow flow(b + v + 2);
        std::vector<std::vector<std::pair<int, int>>> block_edges(static_cast<size_t>(b));  // (edge id, point)
        for (int i = 0; i < b; ++i) {
            flow.add_edge(source, 1 + i, 1);
            const Cell& blk = blocks[static_cast<size_t>(i)];
            for (size_t j = 0; j < blk.size(); ++j)
                if (!used[static_cast<size_t>(i)][j]) {
                    int id = flow.add_edge(1 + i, 1 + b + blk[j], 1);
                    block_edges[static_cast<size_t>(i)].push_back({id, static_cast<int>(j)});
                }
        }
        for (int p = 0; p < v; ++p) flow.add_edge(1 + b + p, sink, quota);
        if (flow.run(source, sink) != b)
            throw std::logic_error("equitable_order: position " + std::to_string(round) +
                                   " admits no assignment; input check missed an invalid design");
        for (int i = 0; i < b; ++i) {
            bool assigned = false;
            for (auto [id, j] : block_edges[static_cast<size_t>(i)])
                if (flow.flow_on(id) == 1) {
                    rows[static_cast<size_t>(i)][static_cast<size_t>(round)] = {
                        blocks[static_cast<size_t>(i)][static_cast<size_t>(j)]};
                    used[static_cast<size_t>(i)][static_cast<size_t>(j)] = 1;
                    assigned = true;
                    break;
                }
            if (!assigned) throw std::logic_error("equitable_order: block left unassigned after a saturating flow");
        }
    }
    OrderedDesign d;
    d.v = v;
    d.u = k;
    d.rows = std::move(rows);
    return d;
}

namespace {

struct SplitSearch {
    const std::vector<Row>& rows;
    int v, u, c;
    long long quota;
    long long budget;
    std::vector<std::vector<long long>> cnt;  // position x point
    std::vector<long long> remaining;         // unplaced rows containing the point
    std::vector<std::vector<int>> choice;     // chosen cell order per placed row

    // Each unplaced row hands every point it contains to exactly one position,
    // so the per-point, per-position deficit can never exceed the number of
    // unplaced rows still carrying that point.
    bool feasible_for(const Row& row) const {
        for (const Cell& cell : row)
            for (int p : cell)
                for (int i = 0; i < u; ++i)
                    if (quota - cnt[static_cast<size_t>(i)][static_cast<size_t>(p)] >
                        remaining[static_cast<size_t>(p)])
                        return false;
        return true;
    }

    bool place(size_t idx) {
        if (idx == rows.size()) return true;
        const Row& row = rows[idx];
        for (const Cell& cell : row)
            for (int p : cell) --remaining[static_cast<size_t>(p)];
        std::vector<int> perm(static_cast<size_t>(u));
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::pair<int, int>> applied;  // (position, point) increments to undo
        do {
            if (--budget < 0) break;
            applied.clear();
            bool ok = true;
            for (int i = 0; i < u && ok; ++i)
                for (int p : row[static_cast<size_t>(perm[static_cast<size_t>(i)])]) {
                    auto& slot = cnt[static_cast<size_t>(i)][static_cast<size_t>(p)];
                    if (slot + 1 > quota) {
                        ok = false;
                        break;
                    }
                    ++slot;
                    applied.push_back({i, p});
                }
            if (ok && feasible_for(row)) {
                choice.push_back(perm);
                if (place(idx + 1)) return true;
                choice.pop_back();
            }
            for (auto [i, p] : applied) --cnt[static_cast<size_t>(i)][static_cast<size_t>(p)];
        } while (std::next_permutation(perm.begin(), perm.end()) && budget >= 0);
        for (const Cell& cell : row)
            for (int p : cell) ++remaining[static_cast<size_t>(p)];
        return false;
    }
};

}  // namespace

SplittingOrdering equitable_order_splitting(const std::vector<Row>& blocks, int v, int u, int c,
                                            long long node_budget) {
    SplittingOrdering out;
    std::vector<Row> canonical;
    canonical.reserve(blocks.size());
    for (const Row& row : blocks) canonical.push_back(canonical_row(row));

    OrderedDesign probe{v, u, canonical};
    SplittingCheck check = validate_splitting_bibd(probe, u, c);
    if (!check.ok) {
        out.status = OrderingStatus::infeasible;
        out.error = "not a splitting design: " + check.error;
        return out;
    }
    const long long modulus = static_cast<long long>(u) * (u - 1) * c * c;
    if (modulus == 0 || (v - 1) % modulus != 0) {
        out.status = OrderingStatus::infeasible;
        out.error = "necessary condition fails: v - 1 = " + std::to_string(v - 1) +
                    " is not divisible by u(u-1)c^2 = " + std::to_string(modulus);
        return out;
    }

    // Plain BIBD case: the matching construction is guaranteed to succeed.
    if (c == 1) {
        std::vector<Cell> flat;
        flat.reserve(canonical.size());
        for (const Row& row : canonical) {
            Cell blk;
            for (const Cell& cell : row) blk.push_back(cell[0]);
            std::sort(blk.begin(), blk.end());
            flat.push_back(std::move(blk));
        }
        out.status = OrderingStatus::found;
        out.design = equitable_order(flat, v, u);
        return out;
    }

    // Group-developed shortcut: when the block multiset is closed under +1 mod v
    // and every orbit is full, any fixed cell order of the orbit representatives
    // develops into an equitable ordering.
    {
        std::map<Row, long long> bag;
        for (const Row& row : canonical) ++bag[row];
        bool closed = true;
        for (const auto& [row, count] : bag) {
            auto it = bag.find(canonical_row(shifted_row(row, 1, v)));
            if (it == bag.end() || it->second != count) {
                closed = false;
                break;
            }
        }
        if (closed) {
            bool full_orbits = true;
            std::map<Row, long long> reps;  // orbit representative -> multiplicity
            for (const auto& [row, count] : bag) {
                Row best = row;
                std::vector<Row> orbit;
                for (int t = 0; t < v; ++t) {
                    Row shifted_t = canonical_row(shifted_row(row, t, v));
                    orbit.push_back(shifted_t);
                    if (shifted_t < best) best = shifted_t;
                }
                std::sort(orbit.begin(), orbit.end());
                if (std::adjacent_find(orbit.begin(), orbit.end()) != orbit.end()) {
                    full_orbits = false;
                    break;
                }
                reps[best] = count;
            }
            if (full_orbits) {
                std::vector<Row> bases;
                for (const auto& [rep, count] : reps)
                    for (long long m = 0; m < count; ++m) bases.push_back(rep);
                out.design = develop(bases, v);
                EquitableCheck eq = check_equitable(out.design);
                if (!eq.ok)
                    throw std::logic_error("equitable_order_splitting: developed ordering failed its own check");
                out.status = OrderingStatus::found;
                return out;
            }
        }
    }

    SplitSearch search{canonical, v, u, c, check.params.r / u, node_budget,
                       std::vector<std::vector<long long>>(static_cast<size_t>(u),
                                                           std::vector<long long>(static_cast<size_t>(v), 0)),
                       std::vector<long long>(static_cast<size_t>(v), 0),
                       {}};
    for (const Row& row : canonical)
        for (const Cell& cell : row)
            for (int p : cell) ++search.remaining[static_cast<size_t>(p)];
    if (!search.place(0)) {
        out.status = OrderingStatus::none_found;  // budget hit or search space exhausted
        return out;
    }
    OrderedDesign d;
    d.v = v;
    d.u = u;
    d.rows.reserve(canonical.size());
    for (size_t idx = 0; idx < canonical.size(); ++idx) {
        Row row(static_cast<size_t>(u));
        for (int i = 0; i < u; ++i)
            row[static_cast<size_t>(i)] = canonical[idx][static_cast<size_t>(search.choice[idx][static_cast<size_t>(i)])];
        d.rows.push_back(std::move(row));
    }
    EquitableCheck eq = check_equitable(d);
    if (!eq.ok) throw std::logic_error("equitable_order_splitting: search returned a non-equitable ordering");
    out.status = OrderingStatus::found;
    out.design = std::move(d);
    return out;
}

}  // namespace authkit
