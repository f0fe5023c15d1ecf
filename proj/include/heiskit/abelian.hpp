// Exact arithmetic for finite abelian groups presented as products of cyclic
// groups: elements, homomorphisms as integer matrices, Hom-groups, Pontryagin
// duals at finite scale, subgroup closures and complements.

#pragma once

#include "heiskit/core.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>

namespace heiskit {

class GroupElement;

/**
 * A finite abelian group presented as Z_{n_1} x ... x Z_{n_k} with every
 * n_i >= 2; the empty presentation is the trivial group.  Presentations keep
 * the user's factor order: operator== is same-shape equality, abstract
 * isomorphism goes through canonical_form.
 */
class FiniteAbelianGroup {
public:
    FiniteAbelianGroup() = default;

    explicit FiniteAbelianGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
        for (std::int64_t n : orders_)
            if (n < 2) throw input_error("FiniteAbelianGroup: every factor order must be >= 2");
    }

    /// Z_n for n >= 2; the trivial group for n = 1.
    static FiniteAbelianGroup cyclic(std::int64_t n) {
        if (n < 1) throw input_error("cyclic: order must be positive");
        if (n == 1) return FiniteAbelianGroup();
        return FiniteAbelianGroup({n});
    }

    const std::vector<std::int64_t>& orders() const { return orders_; }
    std::size_t rank() const { return orders_.size(); }
    bool is_trivial() const { return orders_.empty(); }

    std::int64_t order() const {
        std::int64_t n = 1;
        for (std::int64_t m : orders_) n = checked_mul(n, m, "group order");
        return n;
    }

    std::int64_t exponent() const {
        std::int64_t e = 1;
        for (std::int64_t m : orders_) {
            e = e / std::gcd(e, m);
            e = checked_mul(e, m, "group exponent");
        }
        return e;
    }

    bool operator==(const FiniteAbelianGroup& o) const { return orders_ == o.orders_; }
    bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

    GroupElement zero() const;
    GroupElement element(std::vector<std::int64_t> coords) const;

    /// Element with the given flat index; indices enumerate coordinate tuples
    /// lexicographically (last coordinate fastest), so index 0 is zero.
    GroupElement element_at(std::int64_t index) const;
    std::int64_t index_of(const GroupElement& x) const;

    std::string to_string() const {
        if (orders_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < orders_.size(); ++i) {
            if (i) s += " x ";
            s += "Z" + std::to_string(orders_[i]);
        }
        return s;
    }

private:
    std::vector<std::int64_t> orders_;
};

inline FiniteAbelianGroup product(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    std::vector<std::int64_t> orders = a.orders();
    orders.insert(orders.end(), b.orders().begin(), b.orders().end());
    return orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(std::move(orders));
}

class GroupElement {
public:
    GroupElement(FiniteAbelianGroup parent, std::vector<std::int64_t> coords)
        : parent_(std::move(parent)), coords_(std::move(coords)) {
        if (coords_.size() != parent_.rank())
            throw input_error("GroupElement: coordinate count does not match rank");
        for (std::size_t i = 0; i < coords_.size(); ++i)
            coords_[i] = mod_floor(coords_[i], parent_.orders()[i]);
    }

    const FiniteAbelianGroup& parent() const { return parent_; }
    const std::vector<std::int64_t>& coords() const { return coords_; }
    std::int64_t coord(std::size_t i) const { return coords_[i]; }

    bool is_zero() const {
        return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t c) { return c == 0; });
    }

    GroupElement operator+(const GroupElement& o) const {
        require_same_parent(o);
        std::vector<std::int64_t> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = mod_floor(coords_[i] + o.coords_[i], parent_.orders()[i]);
        return GroupElement(parent_, std::move(c));
    }

    GroupElement operator-() const {
        std::vector<std::int64_t> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = mod_floor(-coords_[i], parent_.orders()[i]);
        return GroupElement(parent_, std::move(c));
    }

    GroupElement operator-(const GroupElement& o) const { return *this + (-o); }

    GroupElement scaled(std::int64_t k) const {
        std::vector<std::int64_t> c(coords_.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = mul_mod(mod_floor(k, parent_.orders()[i]), coords_[i], parent_.orders()[i]);
        return GroupElement(parent_, std::move(c));
    }

    /// Additive order: lcm over coordinates of n_i / gcd(n_i, c_i).
    std::int64_t order() const {
        std::int64_t e = 1;
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            std::int64_t o = parent_.orders()[i] / std::gcd(parent_.orders()[i], coords_[i]);
            e = std::lcm(e, o);
        }
        return e;
    }

    bool operator==(const GroupElement& o) const {
        return parent_ == o.parent_ && coords_ == o.coords_;
    }
    bool operator!=(const GroupElement& o) const { return !(*this == o); }
    bool operator<(const GroupElement& o) const { return coords_ < o.coords_; }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords_[i]);
        }
        return s + ")";
    }

private:
    void require_same_parent(const GroupElement& o) const {
        if (parent_ != o.parent_) throw input_error("GroupElement: parent mismatch");
    }

    FiniteAbelianGroup parent_;
    std::vector<std::int64_t> coords_;
};

inline GroupElement FiniteAbelianGroup::zero() const {
    return GroupElement(*this, std::vector<std::int64_t>(rank(), 0));
}

inline GroupElement FiniteAbelianGroup::element(std::vector<std::int64_t> coords) const {
    return GroupElement(*this, std::move(coords));
}

inline GroupElement FiniteAbelianGroup::element_at(std::int64_t index) const {
    std::vector<std::int64_t> c(rank());
    for (std::size_t i = rank(); i-- > 0;) {
        c[i] = index % orders_[i];
        index /= orders_[i];
    }
    return GroupElement(*this, std::move(c));
}

inline std::int64_t FiniteAbelianGroup::index_of(const GroupElement& x) const {
    if (x.parent() != *this) throw input_error("index_of: parent mismatch");
    std::int64_t r = 0;
    for (std::size_t i = 0; i < rank(); ++i) r = r * orders_[i] + x.coord(i);
    return r;
}

/**
 * A homomorphism between products of cyclic groups, stored as the integer
 * matrix of generator images: entries[j][i] is the j-th target coordinate of
 * the image of the i-th source generator, reduced modulo the j-th target
 * order.  Compatibility (source order e_i kills every image) is checked at
 * construction, so any stored matrix really is a homomorphism.
 */
class Homomorphism {
public:
    Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target,
                 std::vector<std::vector<std::int64_t>> entries)
        : source_(std::move(source)), target_(std::move(target)), entries_(std::move(entries)) {
        if (entries_.size() != target_.rank())
            throw input_error("Homomorphism: row count does not match target rank");
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (entries_[j].size() != source_.rank())
                throw input_error("Homomorphism: column count does not match source rank");
            std::int64_t aj = target_.orders()[j];
            for (std::size_t i = 0; i < entries_[j].size(); ++i) {
                entries_[j][i] = mod_floor(entries_[j][i], aj);
                if (mul_mod(mod_floor(source_.orders()[i], aj), entries_[j][i], aj) != 0)
                    throw input_error("Homomorphism: entry (" + std::to_string(j) + "," +
                                      std::to_string(i) + ") is not killed by the source order");
            }
        }
    }

    static Homomorphism zero(FiniteAbelianGroup source, FiniteAbelianGroup target) {
        std::vector<std::vector<std::int64_t>> e(target.rank(),
                                                 std::vector<std::int64_t>(source.rank(), 0));
        return Homomorphism(std::move(source), std::move(target), std::move(e));
    }

    static Homomorphism identity(const FiniteAbelianGroup& g) {
        std::vector<std::vector<std::int64_t>> e(g.rank(), std::vector<std::int64_t>(g.rank(), 0));
        for (std::size_t i = 0; i < g.rank(); ++i) e[i][i] = 1;
        return Homomorphism(g, g, std::move(e));
    }

    const FiniteAbelianGroup& source() const { return source_; }
    const FiniteAbelianGroup& target() const { return target_; }
    const std::vector<std::vector<std::int64_t>>& entries() const { return entries_; }

    GroupElement apply(const GroupElement& x) const {
        if (x.parent() != source_) throw input_error("Homomorphism::apply: parent mismatch");
        std::vector<std::int64_t> c(target_.rank(), 0);
        for (std::size_t j = 0; j < target_.rank(); ++j) {
            std::int64_t aj = target_.orders()[j];
            __int128 acc = 0;
            for (std::size_t i = 0; i < source_.rank(); ++i)
                acc += static_cast<__int128>(entries_[j][i]) * x.coord(i);
            c[j] = static_cast<std::int64_t>(acc % aj);
        }
        return GroupElement(target_, std::move(c));
    }

    Homomorphism operator+(const Homomorphism& o) const {
        if (source_ != o.source_ || target_ != o.target_)
            throw input_error("Homomorphism: shape mismatch in addition");
        auto e = entries_;
        for (std::size_t j = 0; j < e.size(); ++j)
            for (std::size_t i = 0; i < e[j].size(); ++i)
                e[j][i] = mod_floor(e[j][i] + o.entries_[j][i], target_.orders()[j]);
        return Homomorphism(source_, target_, std::move(e));
    }

    bool operator==(const Homomorphism& o) const {
        return source_ == o.source_ && target_ == o.target_ && entries_ == o.entries_;
    }

    std::int64_t kernel_size() const;
    bool is_injective() const { return kernel_size() == 1; }
    bool is_bijective() const { return source_.order() == target_.order() && is_injective(); }
    bool is_surjective() const;

    /// Inverse of a bijective homomorphism, built from least preimages of the
    /// target generators and validated by composition.
    Homomorphism inverse() const;

private:
    FiniteAbelianGroup source_;
    FiniteAbelianGroup target_;
    std::vector<std::vector<std::int64_t>> entries_;
};

inline Homomorphism compose(const Homomorphism& outer, const Homomorphism& inner) {
    if (inner.target() != outer.source())
        throw input_error("compose: inner target does not match outer source");
    const auto& g = outer.entries();
    const auto& f = inner.entries();
    std::vector<std::vector<std::int64_t>> e(outer.target().rank(),
                                             std::vector<std::int64_t>(inner.source().rank(), 0));
    for (std::size_t j = 0; j < e.size(); ++j) {
        std::int64_t aj = outer.target().orders()[j];
        for (std::size_t i = 0; i < e[j].size(); ++i) {
            __int128 acc = 0;
            for (std::size_t k = 0; k < outer.source().rank(); ++k)
                acc += static_cast<__int128>(g[j][k]) * f[k][i];
            e[j][i] = static_cast<std::int64_t>(acc % aj);
        }
    }
    return Homomorphism(inner.source(), outer.target(), std::move(e));
}

/**
 * A subgroup of a FiniteAbelianGroup carried as its full element set, closed
 * under addition and negation, sorted lexicographically by coordinates.
 */
class SubgroupView {
public:
    SubgroupView(FiniteAbelianGroup parent, std::vector<GroupElement> generators,
                 std::vector<GroupElement> elements)
        : parent_(std::move(parent)), generators_(std::move(generators)),
          elements_(std::move(elements)) {}

    const FiniteAbelianGroup& parent() const { return parent_; }
    const std::vector<GroupElement>& generators() const { return generators_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::int64_t order() const { return static_cast<std::int64_t>(elements_.size()); }

    bool contains(const GroupElement& x) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
        return it != elements_.end() && *it == x;
    }

    bool is_full() const { return order() == parent_.order(); }

private:
    FiniteAbelianGroup parent_;
    std::vector<GroupElement> generators_;
    std::vector<GroupElement> elements_;
};

/// Smallest subgroup containing the generators, by breadth-first closure.
inline SubgroupView subgroup_closure(const FiniteAbelianGroup& g,
                                     std::vector<GroupElement> gens) {
    for (const auto& x : gens)
        if (x.parent() != g) throw input_error("subgroup_closure: generator parent mismatch");
    std::set<std::vector<std::int64_t>> seen;
    std::vector<GroupElement> frontier;
    seen.insert(g.zero().coords());
    frontier.push_back(g.zero());
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& x : frontier) {
            for (const auto& gen : gens) {
                GroupElement y = x + gen;
                if (seen.insert(y.coords()).second) {
                    check_bound(static_cast<std::int64_t>(seen.size()), "subgroup_closure");
                    next.push_back(std::move(y));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<GroupElement> elements;
    elements.reserve(seen.size());
    for (const auto& c : seen) elements.push_back(GroupElement(g, c));
    return SubgroupView(g, std::move(gens), std::move(elements));
}

inline std::int64_t Homomorphism::kernel_size() const {
    std::int64_t n = source_.order();
    check_bound(n, "kernel");
    std::int64_t k = 0;
    for (std::int64_t r = 0; r < n; ++r)
        if (apply(source_.element_at(r)).is_zero()) ++k;
    return k;
}

inline SubgroupView kernel(const Homomorphism& h) {
    std::int64_t n = h.source().order();
    check_bound(n, "kernel");
    std::vector<GroupElement> ker;
    for (std::int64_t r = 0; r < n; ++r) {
        GroupElement x = h.source().element_at(r);
        if (h.apply(x).is_zero()) ker.push_back(std::move(x));
    }
    std::sort(ker.begin(), ker.end());
    return SubgroupView(h.source(), ker, ker);
}

inline SubgroupView image(const Homomorphism& h) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < h.source().rank(); ++i) {
        std::vector<std::int64_t> c(h.source().rank(), 0);
        c[i] = 1;
        gens.push_back(h.apply(h.source().element(std::move(c))));
    }
    return subgroup_closure(h.target(), std::move(gens));
}

inline bool Homomorphism::is_surjective() const {
    return image(*this).order() == target_.order();
}

inline Homomorphism Homomorphism::inverse() const {
    if (!is_bijective()) throw input_error("Homomorphism::inverse: map is not bijective");
    std::int64_t n = source_.order();
    std::vector<std::vector<std::int64_t>> cols(target_.rank());
    for (std::size_t j = 0; j < target_.rank(); ++j) {
        std::vector<std::int64_t> gen(target_.rank(), 0);
        gen[j] = 1;
        GroupElement want = target_.element(std::move(gen));
        bool found = false;
        for (std::int64_t r = 0; r < n && !found; ++r) {
            GroupElement x = source_.element_at(r);
            if (apply(x) == want) {
                cols[j] = x.coords();
                found = true;
            }
        }
        if (!found) throw internal_error("Homomorphism::inverse: no preimage for a generator");
    }
    std::vector<std::vector<std::int64_t>> e(source_.rank(),
                                             std::vector<std::int64_t>(target_.rank(), 0));
    for (std::size_t j = 0; j < target_.rank(); ++j)
        for (std::size_t i = 0; i < source_.rank(); ++i) e[i][j] = cols[j][i];
    Homomorphism inv(target_, source_, std::move(e));
    if (!(compose(inv, *this) == Homomorphism::identity(source_)))
        throw internal_error("Homomorphism::inverse: composition is not the identity");
    return inv;
}

/**
 * All subgroups of g of order at most max_order, generated by breadth-first
 * lattice extension (adding one element at a time and closing).  The result
 * is sorted by (order, element list), so the enumeration order is stable.
 */
inline std::vector<SubgroupView> all_subgroups(const FiniteAbelianGroup& g,
                                               std::int64_t max_order = -1) {
    std::int64_t n = g.order();
    check_bound(n, "all_subgroups");
    if (max_order < 0) max_order = n;
    std::vector<GroupElement> universe;
    universe.reserve(n);
    for (std::int64_t r = 0; r < n; ++r) universe.push_back(g.element_at(r));

    std::map<std::vector<std::vector<std::int64_t>>, SubgroupView> found;
    auto key_of = [](const SubgroupView& s) {
        std::vector<std::vector<std::int64_t>> k;
        k.reserve(s.elements().size());
        for (const auto& e : s.elements()) k.push_back(e.coords());
        return k;
    };
    SubgroupView trivial = subgroup_closure(g, {});
    std::vector<SubgroupView> frontier{trivial};
    found.emplace(key_of(trivial), trivial);
    while (!frontier.empty()) {
        std::vector<SubgroupView> next;
        for (const auto& s : frontier) {
            if (s.order() >= max_order) continue;
            for (const auto& x : universe) {
                if (s.contains(x)) continue;
                auto gens = s.generators();
                gens.push_back(x);
                SubgroupView bigger = subgroup_closure(g, std::move(gens));
                if (bigger.order() > max_order) continue;
                auto k = key_of(bigger);
                if (found.emplace(k, bigger).second) next.push_back(std::move(bigger));
            }
        }
        frontier = std::move(next);
    }
    std::vector<SubgroupView> out;
    out.reserve(found.size());
    for (auto& [k, s] : found) out.push_back(std::move(s));
    std::stable_sort(out.begin(), out.end(), [](const SubgroupView& a, const SubgroupView& b) {
        return a.order() < b.order();
    });
    return out;
}

/**
 * A complement of Z in M: the first subgroup C (in the stable enumeration
 * order) with Z meet C trivial and Z + C = M, or nullopt after exhausting the
 * subgroup lattice.  The search is exhaustive, so nullopt is a proof.
 */
inline std::optional<SubgroupView> find_complement(const FiniteAbelianGroup& m,
                                                   const SubgroupView& z) {
    if (z.parent() != m) throw input_error("find_complement: subgroup parent mismatch");
    std::int64_t target = m.order() / z.order();
    for (const auto& c : all_subgroups(m, target)) {
        if (c.order() != target) continue;
        bool trivial_meet = true;
        for (const auto& x : c.elements())
            if (!x.is_zero() && z.contains(x)) { trivial_meet = false; break; }
        if (!trivial_meet) continue;
        // |Z||C| = |M| with trivial intersection forces Z + C = M.
        auto gens = z.generators();
        gens.insert(gens.end(), c.generators().begin(), c.generators().end());
        if (subgroup_closure(m, gens).order() != m.order())
            throw internal_error("find_complement: size arithmetic violated");
        return c;
    }
    return std::nullopt;
}

struct CanonicalForm {
    FiniteAbelianGroup group; ///< invariant factors d_1 | d_2 | ... | d_r
    Homomorphism iso;         ///< bijective map from the input onto the canonical form
};

/**
 * Invariant-factor presentation with an explicit isomorphism witness.  Prime
 * powers of the input factors are regrouped with the Chinese remainder
 * theorem; ties are broken by source index, which makes the map the identity
 * on inputs that are already in canonical form.
 */
inline CanonicalForm canonical_form(const FiniteAbelianGroup& g) {
    if (g.is_trivial())
        return {FiniteAbelianGroup(), Homomorphism(g, FiniteAbelianGroup(), {})};

    struct PrimePart {
        std::int64_t p;
        std::int64_t pe;
        std::size_t source;
        std::size_t slot = 0;
    };
    std::map<std::int64_t, std::vector<PrimePart>> per_prime;
    for (std::size_t i = 0; i < g.rank(); ++i) {
        for (auto [p, e] : factorize(g.orders()[i])) {
            std::int64_t pe = 1;
            for (int t = 0; t < e; ++t) pe = checked_mul(pe, p, "prime power");
            per_prime[p].push_back({p, pe, i});
        }
    }
    std::size_t slots = 0;
    for (auto& [p, parts] : per_prime) slots = std::max(slots, parts.size());
    // Ascending powers, right-aligned: the largest powers land in the last
    // slot, so the invariant factors come out in ascending divisibility order.
    for (auto& [p, parts] : per_prime) {
        std::stable_sort(parts.begin(), parts.end(),
                         [](const PrimePart& a, const PrimePart& b) { return a.pe < b.pe; });
        for (std::size_t k = 0; k < parts.size(); ++k)
            parts[k].slot = slots - parts.size() + k;
    }
    std::vector<std::int64_t> factors(slots, 1);
    for (auto& [p, parts] : per_prime)
        for (auto& part : parts)
            factors[part.slot] = checked_mul(factors[part.slot], part.pe, "invariant factor");
    FiniteAbelianGroup canon(factors);

    std::vector<std::vector<std::int64_t>> e(slots, std::vector<std::int64_t>(g.rank(), 0));
    for (auto& [p, parts] : per_prime) {
        for (auto& part : parts) {
            std::int64_t d = factors[part.slot];
            std::int64_t cofactor = d / part.pe;
            std::int64_t c = cofactor == 1
                                 ? 1
                                 : mul_mod(cofactor, mod_inverse(cofactor, part.pe), d);
            e[part.slot][part.source] = mod_floor(e[part.slot][part.source] + c, d);
        }
    }
    Homomorphism iso(g, canon, std::move(e));
    for (std::size_t t = 0; t + 1 < factors.size(); ++t)
        if (factors[t + 1] % factors[t] != 0)
            throw internal_error("canonical_form: divisibility chain violated");
    if (canon.order() != g.order())
        throw internal_error("canonical_form: order mismatch");
    return {std::move(canon), std::move(iso)};
}

/**
 * Hom(E, A) as a finite abelian group: one cyclic factor Z_{gcd(e_i, a_j)} per
 * generator pair with nontrivial gcd, with coordinate c mapping to the matrix
 * entry c * (a_j / gcd(e_i, a_j)).  The indexing is a group isomorphism onto
 * the set of all homomorphisms E -> A.
 */
struct HomGroup {
    FiniteAbelianGroup group;
    FiniteAbelianGroup source;
    FiniteAbelianGroup target;
    std::vector<std::pair<std::size_t, std::size_t>> coord_pairs; ///< (i, j) per retained factor
    std::vector<std::int64_t> strides;                            ///< a_j / gcd(e_i, a_j)

    Homomorphism hom_at(const GroupElement& idx) const {
        if (idx.parent() != group) throw input_error("HomGroup::hom_at: index parent mismatch");
        std::vector<std::vector<std::int64_t>> e(target.rank(),
                                                 std::vector<std::int64_t>(source.rank(), 0));
        for (std::size_t k = 0; k < coord_pairs.size(); ++k) {
            auto [i, j] = coord_pairs[k];
            e[j][i] = mul_mod(idx.coord(k), strides[k], target.orders()[j]);
        }
        return Homomorphism(source, target, std::move(e));
    }

    GroupElement index_of(const Homomorphism& h) const {
        if (h.source() != source || h.target() != target)
            throw input_error("HomGroup::index_of: shape mismatch");
        std::vector<std::int64_t> c(coord_pairs.size(), 0);
        for (std::size_t k = 0; k < coord_pairs.size(); ++k) {
            auto [i, j] = coord_pairs[k];
            std::int64_t entry = h.entries()[j][i];
            if (entry % strides[k] != 0)
                throw internal_error("HomGroup::index_of: entry is not a multiple of the stride");
            c[k] = entry / strides[k];
        }
        return group.element(std::move(c));
    }
};

inline HomGroup hom_group(const FiniteAbelianGroup& e, const FiniteAbelianGroup& a) {
    HomGroup hg;
    hg.source = e;
    hg.target = a;
    std::vector<std::int64_t> orders;
    for (std::size_t i = 0; i < e.rank(); ++i) {
        for (std::size_t j = 0; j < a.rank(); ++j) {
            std::int64_t g = std::gcd(e.orders()[i], a.orders()[j]);
            if (g < 2) continue;
            orders.push_back(g);
            hg.coord_pairs.emplace_back(i, j);
            hg.strides.push_back(a.orders()[j] / g);
        }
    }
    hg.group = orders.empty() ? FiniteAbelianGroup() : FiniteAbelianGroup(std::move(orders));
    return hg;
}

/**
 * The Pontryagin dual at finite scale: Hom(E, Z_N) with N = exponent(E),
 * together with the pairing that reads a character value v as the residue
 * v/N in Q/Z.  The pairing separates the points of E.
 */
struct DualGroup {
    HomGroup homs;
    std::int64_t modulus; ///< N = exponent of the source

    const FiniteAbelianGroup& group() const { return homs.group; }

    RationalResidue pair(const GroupElement& chi, const GroupElement& x) const {
        GroupElement v = homs.hom_at(chi).apply(x);
        if (modulus == 1) return RationalResidue();
        return RationalResidue(v.coord(0), modulus);
    }
};

inline DualGroup dual_group(const FiniteAbelianGroup& e) {
    std::int64_t n = e.exponent();
    return DualGroup{hom_group(e, FiniteAbelianGroup::cyclic(n)), n};
}

} // namespace heiskit
