// Arbitrary finite groups as Cayley tables: validation, center and derived
// subgroup scans, abelian structure recognition, the factorized commutator
// form on G/Z(G), maximal abelian subgroups, the Heisenberg recognition
// algorithm, and 2-cocycles from sections.  The scans here are direct table
// computations, independent of the Heisenberg formulas they serve to check.

#pragma once

#include "heiskit/heisenberg.hpp"

#include <iostream>
#include <memory>
#include <random>
#include <sstream>

namespace heiskit {

/**
 * A finite group given by its full multiplication table.  Construction
 * validates everything: index ranges, the Latin-square property, a two-sided
 * identity, two-sided inverses, and associativity (O(n^3)); tables beyond
 * order 512 or the enumeration bound are rejected.  Copies share the table.
 */
class TableGroup {
public:
    explicit TableGroup(std::vector<std::vector<int>> table) {
        auto impl = std::make_shared<Impl>();
        impl->n = static_cast<int>(table.size());
        int n = impl->n;
        if (n == 0) throw input_error("TableGroup: empty table");
        if (n > 512) throw bound_error("TableGroup: order exceeds the table bound 512");
        check_bound(n, "TableGroup");
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != n)
                throw input_error("TableGroup: table is not square");
            for (int v : row)
                if (v < 0 || v >= n) throw input_error("TableGroup: entry out of range");
        }
        // Latin square: rows and columns are permutations.
        for (int a = 0; a < n; ++a) {
            std::vector<char> seen_row(n, 0), seen_col(n, 0);
            for (int b = 0; b < n; ++b) {
                if (seen_row[table[a][b]]++)
                    throw input_error("TableGroup: row " + std::to_string(a) +
                                      " is not a permutation");
                if (seen_col[table[b][a]]++)
                    throw input_error("TableGroup: column " + std::to_string(a) +
                                      " is not a permutation");
            }
        }
        impl->identity = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                if (table[e][x] != x || table[x][e] != x) ok = false;
            if (ok) {
                impl->identity = e;
                break;
            }
        }
        if (impl->identity < 0) throw input_error("TableGroup: no two-sided identity");
        impl->inverses.assign(n, -1);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                if (table[a][b] == impl->identity && table[b][a] == impl->identity) {
                    impl->inverses[a] = b;
                    break;
                }
            if (impl->inverses[a] < 0)
                throw input_error("TableGroup: element " + std::to_string(a) +
                                  " has no two-sided inverse");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]])
                        throw input_error("TableGroup: operation is not associative at (" +
                                          std::to_string(a) + "," + std::to_string(b) + "," +
                                          std::to_string(c) + ")");
        impl->table = std::move(table);
        impl_ = std::move(impl);
    }

    int order() const { return impl_->n; }
    int identity() const { return impl_->identity; }
    int op(int a, int b) const { return impl_->table[a][b]; }
    int inverse(int a) const { return impl_->inverses[a]; }
    const std::vector<std::vector<int>>& table() const { return impl_->table; }

    int commutator(int a, int b) const {
        return op(op(inverse(a), inverse(b)), op(a, b));
    }

    int element_order(int a) const {
        int k = 1, x = a;
        while (x != identity()) {
            x = op(x, a);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (int a = 0; a < order(); ++a)
            for (int b = a + 1; b < order(); ++b)
                if (op(a, b) != op(b, a)) return false;
        return true;
    }

private:
    struct Impl {
        int n = 0;
        std::vector<std::vector<int>> table;
        int identity = 0;
        std::vector<int> inverses;
    };
    std::shared_ptr<const Impl> impl_;
};

// Cayley-table file format: first line n, then n lines of n space-separated
// 0-based indices; the identity must be index 0.

inline TableGroup read_cayley_table(std::istream& in) {
    std::int64_t n = 0;
    if (!(in >> n) || n < 1) throw input_error("cayley table: missing or invalid order");
    if (n > 512) throw bound_error("cayley table: order exceeds the table bound 512");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) {
            std::int64_t v;
            if (!(in >> v))
                throw input_error("cayley table: truncated at row " + std::to_string(a));
            if (v < 0 || v >= n)
                throw input_error("cayley table: entry out of range at row " +
                                  std::to_string(a));
            t[a][b] = static_cast<int>(v);
        }
    TableGroup g(std::move(t));
    if (g.identity() != 0) throw input_error("cayley table: identity must be index 0");
    return g;
}

inline void write_cayley_table(const TableGroup& g, std::ostream& out) {
    out << g.order() << "\n";
    for (int a = 0; a < g.order(); ++a) {
        for (int b = 0; b < g.order(); ++b) {
            if (b) out << ' ';
            out << g.op(a, b);
        }
        out << "\n";
    }
}

/// Cayley table of a Heisenberg group in its flat element order (identity
/// first), suitable for export and re-recognition.
inline TableGroup cayley_table(const HeisenbergGroup& h) {
    std::int64_t n = h.order();
    if (n > 512) throw bound_error("cayley_table: group order exceeds the table bound 512");
    check_bound(n, "cayley_table");
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (std::int64_t r = 0; r < n; ++r) {
        HeisenbergElement u = h.element_at(r);
        for (std::int64_t s = 0; s < n; ++s)
            t[r][s] = static_cast<int>(h.index_of(h.multiply(u, h.element_at(s))));
    }
    return TableGroup(std::move(t));
}

struct TableSubgroup {
    TableGroup parent;
    std::vector<int> members; ///< sorted indices, closed, containing the identity

    bool contains(int x) const {
        return std::binary_search(members.begin(), members.end(), x);
    }
    int order() const { return static_cast<int>(members.size()); }
};

inline std::vector<int> table_closure(const TableGroup& g, std::vector<int> gens) {
    std::set<int> seen{g.identity()};
    std::vector<int> frontier{g.identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (int gen : gens) {
                int y = g.op(x, gen);
                if (seen.insert(y).second) next.push_back(y);
            }
        frontier = std::move(next);
    }
    return std::vector<int>(seen.begin(), seen.end());
}

struct GroupBasics {
    std::vector<int> center;  ///< sorted member list of Z(G)
    std::vector<int> derived; ///< sorted member list of [G, G]
    bool is_class2;
};

/// Center by a commuting-with-all scan, derived subgroup by closing the set
/// of all commutators; class 2 means derived is contained in the center.
inline GroupBasics group_basics(const TableGroup& g) {
    int n = g.order();
    GroupBasics out;
    for (int a = 0; a < n; ++a) {
        bool central = true;
        for (int b = 0; b < n && central; ++b)
            if (g.op(a, b) != g.op(b, a)) central = false;
        if (central) out.center.push_back(a);
    }
    std::set<int> comms;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) comms.insert(g.commutator(a, b));
    out.derived = table_closure(g, std::vector<int>(comms.begin(), comms.end()));
    out.is_class2 = std::includes(out.center.begin(), out.center.end(), out.derived.begin(),
                                  out.derived.end());
    return out;
}

/**
 * All subgroups of g that contain `base` and consist of members of
 * `universe`, of order at most max_order, by breadth-first lattice extension.
 * Sorted member lists, deterministic order.
 */
inline std::vector<std::vector<int>> table_subgroups(const TableGroup& g,
                                                     const std::vector<int>& universe,
                                                     const std::vector<int>& base,
                                                     int max_order) {
    std::vector<int> start = table_closure(g, base);
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier;
    if (static_cast<int>(start.size()) <= max_order) {
        found.insert(start);
        frontier.push_back(start);
    }
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier) {
            if (static_cast<int>(s.size()) >= max_order) continue;
            for (int x : universe) {
                if (std::binary_search(s.begin(), s.end(), x)) continue;
                std::vector<int> gens = s;
                gens.push_back(x);
                std::vector<int> bigger = table_closure(g, std::move(gens));
                if (static_cast<int>(bigger.size()) > max_order) continue;
                if (found.insert(bigger).second) next.push_back(std::move(bigger));
            }
        }
        frontier = std::move(next);
    }
    return std::vector<std::vector<int>>(found.begin(), found.end());
}

/**
 * The abstract abelian structure of a closed abelian member set: a basis is
 * extracted by repeatedly taking a least element of maximal order and
 * splitting its cyclic subgroup off with an exhaustive complement search.
 * The resulting coordinate map is validated pointwise as a bijective
 * homomorphism.  Factor orders come out as ascending invariant factors.
 */
struct AbelianStructure {
    FiniteAbelianGroup group;
    std::vector<int> basis;                ///< table indices, aligned with group.orders()
    std::vector<int> to_table;             ///< flat coordinate index -> table index
    std::vector<std::int64_t> from_table;  ///< table index -> flat coordinate index, -1 outside

    GroupElement coords_of(int table_index) const {
        if (table_index < 0 || table_index >= static_cast<int>(from_table.size()) ||
            from_table[table_index] < 0)
            throw input_error("AbelianStructure: index outside the subgroup");
        return group.element_at(from_table[table_index]);
    }

    int index_of(const GroupElement& x) const { return to_table[group.index_of(x)]; }
};

inline AbelianStructure abelian_structure(const TableGroup& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    for (int a : members)
        for (int b : members) {
            if (!std::binary_search(members.begin(), members.end(), g.op(a, b)))
                throw input_error("abelian_structure: member set is not closed");
            if (g.op(a, b) != g.op(b, a))
                throw input_error("abelian_structure: member set is not abelian");
        }
    if (!std::binary_search(members.begin(), members.end(), g.identity()))
        throw input_error("abelian_structure: member set lacks the identity");

    std::vector<int> basis;
    std::vector<std::int64_t> orders;
    std::vector<int> remaining = members;
    while (remaining.size() > 1) {
        int best = -1, best_order = 0;
        for (int a : remaining) {
            int o = g.element_order(a);
            if (o > best_order) {
                best_order = o;
                best = a;
            }
        }
        basis.push_back(best);
        orders.push_back(best_order);
        std::vector<int> cyclic = table_closure(g, {best});
        int target = static_cast<int>(remaining.size()) / best_order;
        // exhaustive complement search inside the current piece
        std::vector<int> complement;
        bool found = false;
        for (const auto& c : table_subgroups(g, remaining, {g.identity()}, target)) {
            if (static_cast<int>(c.size()) != target) continue;
            bool trivial_meet = true;
            for (int x : c)
                if (x != g.identity() && std::binary_search(cyclic.begin(), cyclic.end(), x)) {
                    trivial_meet = false;
                    break;
                }
            if (trivial_meet) {
                complement = c;
                found = true;
                break;
            }
        }
        if (!found)
            throw internal_error("abelian_structure: a maximal-order cyclic subgroup "
                                 "admits no complement");
        remaining = std::move(complement);
    }
    // ascending invariant factors
    std::reverse(basis.begin(), basis.end());
    std::reverse(orders.begin(), orders.end());

    AbelianStructure out;
    out.group = orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(orders);
    out.basis = basis;
    std::int64_t total = out.group.order();
    if (total != static_cast<std::int64_t>(members.size()))
        throw internal_error("abelian_structure: basis does not span the subgroup");
    out.to_table.assign(total, g.identity());
    out.from_table.assign(g.order(), -1);
    for (std::int64_t r = 0; r < total; ++r) {
        GroupElement coords = out.group.element_at(r);
        int acc = g.identity();
        for (std::size_t t = 0; t < basis.size(); ++t)
            for (std::int64_t k = 0; k < coords.coord(t); ++k) acc = g.op(acc, basis[t]);
        out.to_table[r] = acc;
        if (out.from_table[acc] != -1)
            throw internal_error("abelian_structure: coordinate map is not injective");
        out.from_table[acc] = r;
    }
    // pointwise validation: the coordinate map is a homomorphism
    for (std::int64_t r = 0; r < total; ++r)
        for (std::int64_t s = 0; s < total; ++s) {
            GroupElement sum = out.group.element_at(r) + out.group.element_at(s);
            if (out.to_table[out.group.index_of(sum)] !=
                g.op(out.to_table[r], out.to_table[s]))
                throw internal_error("abelian_structure: coordinate map is not a homomorphism");
        }
    return out;
}

/**
 * The factorized commutator data of a class-2 group: the quotient K = G/Z(G)
 * as a Cayley table, recognized abelian structures for Z(G) and K, the full
 * commutator table B indexed by coset pairs, and B expressed as a bilinear
 * form in those coordinates.  Well-definedness on cosets, bilinearity,
 * alternation and separatedness are asserted exhaustively.
 */
struct FactorizedCommutator {
    TableGroup g;
    TableGroup k;
    std::vector<int> coset_of;  ///< g index -> coset index
    std::vector<int> coset_rep; ///< coset index -> least member
    std::vector<int> center;
    AbelianStructure z_struct;
    AbelianStructure k_struct;
    std::vector<std::vector<int>> commutator; ///< B: coset pair -> central g index
    BilinearForm form;                        ///< B on k_struct.group, values in z_struct.group

    std::vector<int> coset_members(int c) const {
        std::vector<int> out;
        for (int a = 0; a < g.order(); ++a)
            if (coset_of[a] == c) out.push_back(a);
        return out;
    }
};

inline FactorizedCommutator factorized_commutator(const TableGroup& g) {
    GroupBasics basics = group_basics(g);
    if (!basics.is_class2)
        throw input_error("factorized_commutator: group is not nilpotent of class 2");
    int n = g.order();

    std::vector<int> coset_of(n, -1), coset_rep;
    for (int a = 0; a < n; ++a) {
        if (coset_of[a] >= 0) continue;
        int c = static_cast<int>(coset_rep.size());
        for (int z : basics.center) coset_of[g.op(a, z)] = c;
        coset_rep.push_back(a); // a is least in its coset: smaller members were already visited
    }
    int nk = static_cast<int>(coset_rep.size());
    std::vector<std::vector<int>> kt(nk, std::vector<int>(nk));
    for (int c1 = 0; c1 < nk; ++c1)
        for (int c2 = 0; c2 < nk; ++c2) kt[c1][c2] = coset_of[g.op(coset_rep[c1], coset_rep[c2])];
    TableGroup k(std::move(kt));
    if (!k.is_abelian())
        throw internal_error("factorized_commutator: the central quotient is not abelian");

    std::vector<std::vector<int>> b(nk, std::vector<int>(nk));
    for (int c1 = 0; c1 < nk; ++c1)
        for (int c2 = 0; c2 < nk; ++c2)
            b[c1][c2] = g.commutator(coset_rep[c1], coset_rep[c2]);
    // well-definedness: [x, y] depends only on the cosets of x and y
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v = g.commutator(x, y);
            if (v != b[coset_of[x]][coset_of[y]])
                throw internal_error("factorized_commutator: B is not well defined on cosets");
            if (!std::binary_search(basics.center.begin(), basics.center.end(), v))
                throw internal_error("factorized_commutator: commutator value is not central");
        }
    // bilinear, alternating, separated over K
    for (int x = 0; x < nk; ++x) {
        if (b[x][x] != g.identity())
            throw internal_error("factorized_commutator: B is not alternating");
        for (int y = 0; y < nk; ++y)
            for (int z = 0; z < nk; ++z) {
                if (b[k.op(x, y)][z] != g.op(b[x][z], b[y][z]) ||
                    b[x][k.op(y, z)] != g.op(b[x][y], b[x][z]))
                    throw internal_error("factorized_commutator: B is not bilinear");
            }
        if (x != k.identity()) {
            bool hit = false;
            for (int y = 0; y < nk && !hit; ++y)
                if (b[x][y] != g.identity()) hit = true;
            if (!hit) throw internal_error("factorized_commutator: B is not separated");
        }
    }

    AbelianStructure z_struct = abelian_structure(g, basics.center);
    std::vector<int> all_k(nk);
    for (int c = 0; c < nk; ++c) all_k[c] = c;
    AbelianStructure k_struct = abelian_structure(k, all_k);

    std::vector<std::vector<GroupElement>> w;
    for (std::size_t i = 0; i < k_struct.basis.size(); ++i) {
        std::vector<GroupElement> row;
        for (std::size_t j = 0; j < k_struct.basis.size(); ++j)
            row.push_back(z_struct.coords_of(b[k_struct.basis[i]][k_struct.basis[j]]));
        w.push_back(std::move(row));
    }
    BilinearForm form(k_struct.group, k_struct.group, z_struct.group, std::move(w));
    return FactorizedCommutator{g,
                                std::move(k),
                                std::move(coset_of),
                                std::move(coset_rep),
                                basics.center,
                                std::move(z_struct),
                                std::move(k_struct),
                                std::move(b),
                                std::move(form)};
}

/// All isotropic subgroups of K with respect to B, as sorted coset-index
/// lists, found by lattice extension restricted to isotropy-preserving steps.
inline std::vector<std::vector<int>> isotropic_subgroups(const FactorizedCommutator& fc) {
    const TableGroup& k = fc.k;
    int nk = k.order();
    int e = fc.g.identity();
    auto isotropic_with = [&](const std::vector<int>& s, int x) {
        if (fc.commutator[x][x] != e) return false;
        for (int m : s)
            if (fc.commutator[x][m] != e || fc.commutator[m][x] != e) return false;
        return true;
    };
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier;
    std::vector<int> trivial{k.identity()};
    found.insert(trivial);
    frontier.push_back(trivial);
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& s : frontier)
            for (int x = 0; x < nk; ++x) {
                if (std::binary_search(s.begin(), s.end(), x)) continue;
                if (!isotropic_with(s, x)) continue;
                std::vector<int> gens = s;
                gens.push_back(x);
                std::vector<int> bigger = table_closure(k, std::move(gens));
                if (found.insert(bigger).second) next.push_back(std::move(bigger));
            }
        frontier = std::move(next);
    }
    return std::vector<std::vector<int>>(found.begin(), found.end());
}

struct MaximalAbelian {
    std::vector<TableSubgroup> abelians;       ///< maximal abelian subgroups containing Z(G)
    std::vector<std::vector<int>> isotropics;  ///< the corresponding isotropic subgroups of K
};

/**
 * All maximal abelian subgroups of a class-2 group (each automatically
 * contains the center), via the one-to-one monotone correspondence with
 * maximal isotropic subgroups of K.  Maximality is certified exhaustively on
 * both sides.
 */
inline MaximalAbelian maximal_abelian_subgroups(const FactorizedCommutator& fc) {
    auto isos = isotropic_subgroups(fc);
    MaximalAbelian out;
    for (const auto& l : isos) {
        bool maximal = true;
        for (const auto& l2 : isos)
            if (l2.size() > l.size() &&
                std::includes(l2.begin(), l2.end(), l.begin(), l.end())) {
                maximal = false;
                break;
            }
        if (!maximal) continue;
        std::vector<int> members;
        for (int a = 0; a < fc.g.order(); ++a)
            if (std::binary_search(l.begin(), l.end(), fc.coset_of[a])) members.push_back(a);
        // certificates: the pullback is abelian and maximally so
        for (int a : members)
            for (int b : members)
                if (fc.g.op(a, b) != fc.g.op(b, a))
                    throw internal_error("maximal_abelian_subgroups: pullback is not abelian");
        for (int x = 0; x < fc.g.order(); ++x) {
            if (std::binary_search(members.begin(), members.end(), x)) continue;
            bool witness = false;
            for (int m : members)
                if (fc.g.op(x, m) != fc.g.op(m, x)) {
                    witness = true;
                    break;
                }
            if (!witness)
                throw internal_error("maximal_abelian_subgroups: pullback is not maximal");
        }
        out.abelians.push_back(TableSubgroup{fc.g, std::move(members)});
        out.isotropics.push_back(l);
    }
    return out;
}

struct RecognizedHeisenberg {
    TableSubgroup m1, m2;
    AbelianStructure e_struct, f_struct, z_struct;
    BilinearForm omega;
    HeisenbergGroup group;
    std::vector<int> iso; ///< flat Heisenberg index -> table index, verified isomorphism
};

struct RecognitionResult {
    std::optional<RecognizedHeisenberg> decomposition;
    int pairs_total = 0;
    int pairs_cond1_failed = 0;
    int pairs_cond2_failed = 0;
    int pairs_cond12 = 0;       ///< pairs satisfying the intersection and product conditions
    int pairs_cond3_failed = 0; ///< of those, pairs where the center fails to split off
};

/**
 * The recognition algorithm: search ordered pairs of maximal abelian
 * subgroups for (1) M1 meet M2 = Z(G), (2) G = M1 * M2, (3) Z(G) splitting as
 * a direct summand of both; on success extract complements E, F, build
 * omega(x, y) = [i(x), j(y)] and the Heisenberg group H(E, F, Z(G), omega),
 * and return the reconstruction phi(x,y,z) = j(y) i(x) z verified pointwise.
 * The pair search is lexicographic and exhaustive, so a miss is definite.
 */
inline RecognitionResult recognize_heisenberg(const TableGroup& g) {
    FactorizedCommutator fc = factorized_commutator(g);
    MaximalAbelian max = maximal_abelian_subgroups(fc);
    RecognitionResult result;
    int n = g.order();
    const std::vector<int>& center = fc.center;

    for (std::size_t i1 = 0; i1 < max.abelians.size(); ++i1) {
        for (std::size_t i2 = 0; i2 < max.abelians.size(); ++i2) {
            ++result.pairs_total;
            const auto& m1 = max.abelians[i1].members;
            const auto& m2 = max.abelians[i2].members;
            std::vector<int> meet;
            std::set_intersection(m1.begin(), m1.end(), m2.begin(), m2.end(),
                                  std::back_inserter(meet));
            if (meet != center) {
                ++result.pairs_cond1_failed;
                continue;
            }
            std::vector<char> covered(n, 0);
            std::int64_t count = 0;
            for (int a : m1)
                for (int b : m2) {
                    int p = g.op(a, b);
                    if (!covered[p]) {
                        covered[p] = 1;
                        ++count;
                    }
                }
            if (count != n) {
                ++result.pairs_cond2_failed;
                continue;
            }
            ++result.pairs_cond12;

            AbelianStructure a1 = abelian_structure(g, m1);
            AbelianStructure a2 = abelian_structure(g, m2);
            auto center_view = [&](const AbelianStructure& a) {
                std::vector<GroupElement> els;
                for (int z : center) els.push_back(a.coords_of(z));
                std::sort(els.begin(), els.end());
                return SubgroupView(a.group, els, els);
            };
            auto c1 = find_complement(a1.group, center_view(a1));
            auto c2 = find_complement(a2.group, center_view(a2));
            if (!c1 || !c2) {
                ++result.pairs_cond3_failed;
                continue;
            }

            auto pull = [&](const AbelianStructure& a, const SubgroupView& c) {
                std::vector<int> members;
                for (const auto& x : c.elements()) members.push_back(a.index_of(x));
                std::sort(members.begin(), members.end());
                return members;
            };
            AbelianStructure e_struct = abelian_structure(g, pull(a1, *c1));
            AbelianStructure f_struct = abelian_structure(g, pull(a2, *c2));
            const AbelianStructure& z_struct = fc.z_struct;

            std::vector<std::vector<GroupElement>> w;
            for (int be : e_struct.basis) {
                std::vector<GroupElement> row;
                for (int bf : f_struct.basis) row.push_back(z_struct.coords_of(g.commutator(be, bf)));
                w.push_back(std::move(row));
            }
            HeisenbergGroup h = [&]() {
                try {
                    return HeisenbergGroup(
                        BilinearForm(e_struct.group, f_struct.group, z_struct.group, std::move(w)));
                } catch (const input_error& err) {
                    throw internal_error(std::string("recognize_heisenberg: reconstructed "
                                                     "commutator form is invalid: ") +
                                         err.what());
                }
            }();
            if (h.order() != n)
                throw internal_error("recognize_heisenberg: order arithmetic violated");

            std::vector<int> iso(n);
            std::vector<char> hit(n, 0);
            for (std::int64_t r = 0; r < n; ++r) {
                HeisenbergElement u = h.element_at(r);
                int jx = f_struct.index_of(u.y);
                int ix = e_struct.index_of(u.x);
                int zx = z_struct.index_of(u.z);
                int img = g.op(g.op(jx, ix), zx);
                iso[r] = img;
                if (hit[img]++)
                    throw internal_error("recognize_heisenberg: phi is not injective");
            }
            for (std::int64_t r = 0; r < n; ++r)
                for (std::int64_t s = 0; s < n; ++s) {
                    HeisenbergElement prod = h.multiply(h.element_at(r), h.element_at(s));
                    if (iso[h.index_of(prod)] != g.op(iso[r], iso[s]))
                        throw internal_error("recognize_heisenberg: phi is not a homomorphism");
                }

            result.decomposition = RecognizedHeisenberg{max.abelians[i1],
                                                        max.abelians[i2],
                                                        std::move(e_struct),
                                                        std::move(f_struct),
                                                        z_struct,
                                                        h.omega(),
                                                        std::move(h),
                                                        std::move(iso)};
            return result;
        }
    }
    return result;
}

struct SectionCocycle {
    std::vector<int> section;             ///< coset -> representative, identity coset -> identity
    std::vector<std::vector<int>> values; ///< gamma(k, k') = s(k) s(k') s(kk')^-1, central
};

/**
 * The 2-cocycle of a normalized section.  Every value is checked central and
 * the cocycle identity gamma(k,k') + gamma(kk',k'') = gamma(k',k'') +
 * gamma(k,k'k'') is validated pointwise.  Non-normalized sections are
 * rejected, not corrected.
 */
inline SectionCocycle cocycle_from_section(const FactorizedCommutator& fc,
                                           std::vector<int> section) {
    const TableGroup& g = fc.g;
    const TableGroup& k = fc.k;
    int nk = k.order();
    if (static_cast<int>(section.size()) != nk)
        throw input_error("cocycle_from_section: section size does not match the quotient");
    for (int c = 0; c < nk; ++c)
        if (fc.coset_of[section[c]] != c)
            throw input_error("cocycle_from_section: section value lies in the wrong coset");
    if (section[fc.coset_of[g.identity()]] != g.identity())
        throw input_error("cocycle_from_section: section is not normalized");

    std::vector<std::vector<int>> gamma(nk, std::vector<int>(nk));
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b) {
            int v = g.op(g.op(section[a], section[b]), g.inverse(section[k.op(a, b)]));
            if (!std::binary_search(fc.center.begin(), fc.center.end(), v))
                throw internal_error("cocycle_from_section: cocycle value is not central");
            gamma[a][b] = v;
        }
    for (int a = 0; a < nk; ++a)
        for (int b = 0; b < nk; ++b)
            for (int c = 0; c < nk; ++c)
                if (g.op(gamma[a][b], gamma[k.op(a, b)][c]) !=
                    g.op(gamma[b][c], gamma[a][k.op(b, c)]))
                    throw internal_error("cocycle_from_section: 2-cocycle identity fails");
    return SectionCocycle{std::move(section), std::move(gamma)};
}

inline std::vector<int> least_rep_section(const FactorizedCommutator& fc) {
    std::vector<int> s = fc.coset_rep;
    s[fc.coset_of[fc.g.identity()]] = fc.g.identity();
    return s;
}

inline std::vector<int> random_section(const FactorizedCommutator& fc, std::mt19937& rng) {
    std::vector<int> s(fc.k.order());
    for (int c = 0; c < fc.k.order(); ++c) {
        std::vector<int> members = fc.coset_members(c);
        s[c] = members[rng() % members.size()];
    }
    s[fc.coset_of[fc.g.identity()]] = fc.g.identity();
    return s;
}

/**
 * The Mumford pairing recovered from a cocycle by the five-term expression
 *   -gamma(x,-x) - gamma(y,-y) + gamma(-x,-y) + gamma(x,y) + gamma(-x-y,x+y),
 * asserted equal to the factorized commutator B at every point (and hence
 * independent of the section).
 */
inline std::vector<std::vector<int>> mumford_from_cocycle(const FactorizedCommutator& fc,
                                                          const SectionCocycle& sc) {
    const TableGroup& g = fc.g;
    const TableGroup& k = fc.k;
    int nk = k.order();
    const auto& gm = sc.values;
    std::vector<std::vector<int>> out(nk, std::vector<int>(nk));
    for (int x = 0; x < nk; ++x) {
        int mx = k.inverse(x);
        for (int y = 0; y < nk; ++y) {
            int my = k.inverse(y);
            int v = g.inverse(gm[x][mx]);
            v = g.op(v, g.inverse(gm[y][my]));
            v = g.op(v, gm[mx][my]);
            v = g.op(v, gm[x][y]);
            v = g.op(v, gm[k.op(mx, my)][k.op(x, y)]);
            if (v != fc.commutator[x][y])
                throw internal_error("mumford_from_cocycle: expression disagrees with the "
                                     "factorized commutator");
            out[x][y] = v;
        }
    }
    return out;
}

} // namespace heiskit
