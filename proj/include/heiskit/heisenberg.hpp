// The generalized Heisenberg construction H(E, F, A, omega): group law,
// commutators, center and derived subgroup, the Mumford map and Mumford-group
// predicate, standard Heisenberg and Mackey-Weil groups, embeddings into
// standard groups, and A-reflexivity.

#pragma once

#include "heiskit/bilinear.hpp"

#include <functional>

namespace heiskit {

struct HeisenbergElement {
    GroupElement x;
    GroupElement y;
    GroupElement z;

    bool operator==(const HeisenbergElement& o) const {
        return x == o.x && y == o.y && z == o.z;
    }
    bool operator!=(const HeisenbergElement& o) const { return !(*this == o); }
    bool operator<(const HeisenbergElement& o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }

    std::string to_string() const {
        return "(" + x.to_string() + "," + y.to_string() + "," + z.to_string() + ")";
    }
};

/**
 * The group H(omega) on E x F x A with
 *   (x,y,z) (x',y',z') = (x+x', y+y', z+z'+omega(x,y')).
 * The constructor rejects non-separated omega: the construction presumes a
 * separated form, and the center formula below depends on it.
 */
class HeisenbergGroup {
public:
    explicit HeisenbergGroup(BilinearForm omega) : omega_(std::move(omega)) {
        if (!is_separated(omega_))
            throw input_error("HeisenbergGroup: the bilinear form is not separated");
    }

    const FiniteAbelianGroup& E() const { return omega_.E(); }
    const FiniteAbelianGroup& F() const { return omega_.F(); }
    const FiniteAbelianGroup& A() const { return omega_.A(); }
    const BilinearForm& omega() const { return omega_; }

    std::int64_t order() const {
        return checked_mul(checked_mul(E().order(), F().order(), "Heisenberg order"),
                           A().order(), "Heisenberg order");
    }

    HeisenbergElement identity() const { return {E().zero(), F().zero(), A().zero()}; }

    HeisenbergElement element(GroupElement x, GroupElement y, GroupElement z) const {
        if (x.parent() != E() || y.parent() != F() || z.parent() != A())
            throw input_error("HeisenbergGroup::element: component parent mismatch");
        return {std::move(x), std::move(y), std::move(z)};
    }

    HeisenbergElement multiply(const HeisenbergElement& g, const HeisenbergElement& h) const {
        return {g.x + h.x, g.y + h.y, g.z + h.z + omega_.evaluate(g.x, h.y)};
    }

    HeisenbergElement inverse(const HeisenbergElement& g) const {
        return {-g.x, -g.y, -g.z + omega_.evaluate(g.x, g.y)};
    }

    /// [g, h] = g^-1 h^-1 g h = (0, 0, omega(x, y') - omega(x', y)).
    HeisenbergElement commutator(const HeisenbergElement& g, const HeisenbergElement& h) const {
        return {E().zero(), F().zero(),
                omega_.evaluate(g.x, h.y) - omega_.evaluate(h.x, g.y)};
    }

    /// Flat index over (E, F, A) coordinates, lexicographic; identity is 0.
    HeisenbergElement element_at(std::int64_t index) const {
        std::int64_t na = A().order(), nf = F().order();
        GroupElement z = A().element_at(index % na);
        index /= na;
        GroupElement y = F().element_at(index % nf);
        index /= nf;
        return {E().element_at(index), std::move(y), std::move(z)};
    }

    std::int64_t index_of(const HeisenbergElement& g) const {
        return (E().index_of(g.x) * F().order() + F().index_of(g.y)) * A().order() +
               A().index_of(g.z);
    }

private:
    BilinearForm omega_;
};

struct CenterDerived {
    SubgroupView center;  ///< subgroup of A; the center is {0} x {0} x (this)
    SubgroupView derived; ///< subgroup of A generated by the values of omega
    bool verified;        ///< enumeration cross-check ran (group order within bound)
};

/**
 * Center {0} x {0} x A and derived subgroup {0} x {0} x <im omega>.  Under the
 * enumeration bound the center formula is cross-checked by a commuting-with-all
 * scan and the derived subgroup by closing the set of actual commutators;
 * above the bound the theorem-backed formulas are returned flagged unverified.
 */
inline CenterDerived center_and_derived(const HeisenbergGroup& g) {
    std::vector<GroupElement> omega_values;
    for (std::size_t i = 0; i < g.E().rank(); ++i)
        for (std::size_t j = 0; j < g.F().rank(); ++j) omega_values.push_back(g.omega().entry(i, j));
    SubgroupView derived = subgroup_closure(g.A(), std::move(omega_values));
    std::vector<GroupElement> a_gens;
    for (std::size_t k = 0; k < g.A().rank(); ++k) {
        std::vector<std::int64_t> c(g.A().rank(), 0);
        c[k] = 1;
        a_gens.push_back(g.A().element(std::move(c)));
    }
    SubgroupView center = subgroup_closure(g.A(), std::move(a_gens));

    std::int64_t n = g.order();
    bool verified = n <= enumeration_bound();
    if (verified) {
        // Scan pass: centrality by commuting with everything, the derived
        // subgroup by closing the set of all commutators g^-1 h^-1 g h.
        std::vector<HeisenbergElement> els;
        std::vector<HeisenbergElement> invs;
        els.reserve(n);
        invs.reserve(n);
        for (std::int64_t r = 0; r < n; ++r) {
            els.push_back(g.element_at(r));
            invs.push_back(g.inverse(els.back()));
        }
        std::set<std::vector<std::int64_t>> comm_values;
        for (std::int64_t r = 0; r < n; ++r) {
            bool central = true;
            for (std::int64_t s = 0; s < n; ++s) {
                if (!(g.multiply(els[r], els[s]) == g.multiply(els[s], els[r]))) central = false;
                HeisenbergElement c =
                    g.multiply(g.multiply(invs[r], invs[s]), g.multiply(els[r], els[s]));
                if (!c.x.is_zero() || !c.y.is_zero())
                    throw internal_error("center_and_derived: commutator is not central");
                comm_values.insert(c.z.coords());
            }
            bool formula = els[r].x.is_zero() && els[r].y.is_zero();
            if (central != formula)
                throw internal_error("center_and_derived: center formula scan mismatch");
        }
        std::vector<GroupElement> comms;
        for (const auto& c : comm_values) comms.push_back(g.A().element(c));
        SubgroupView scanned = subgroup_closure(g.A(), std::move(comms));
        if (scanned.elements() != derived.elements())
            throw internal_error("center_and_derived: derived subgroup scan mismatch");
    }
    return CenterDerived{std::move(center), std::move(derived), verified};
}

struct MumfordData {
    FiniteAbelianGroup K; ///< E x F, identified with G/Z(G) by construction
    HomGroup homs;        ///< Hom(K, A)
    Homomorphism map;     ///< M: K -> homs.group, M(x,y)(x',y') = omega(x,y') - omega(x',y)
};

inline MumfordData mumford_map(const HeisenbergGroup& g) {
    FiniteAbelianGroup k = product(g.E(), g.F());
    HomGroup homs = hom_group(k, g.A());
    std::size_t re = g.E().rank(), rf = g.F().rank(), ra = g.A().rank();
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t i = 0; i < re + rf; ++i) {
        std::vector<std::vector<std::int64_t>> e(ra, std::vector<std::int64_t>(re + rf, 0));
        if (i < re) {
            // M(u_i, 0) sends (x', y') to omega(u_i, y').
            for (std::size_t j = 0; j < rf; ++j)
                for (std::size_t t = 0; t < ra; ++t) e[t][re + j] = g.omega().entry(i, j).coord(t);
        } else {
            // M(0, v_j) sends (x', y') to -omega(x', v_j).
            std::size_t j = i - re;
            for (std::size_t p = 0; p < re; ++p) {
                GroupElement neg = -g.omega().entry(p, j);
                for (std::size_t t = 0; t < ra; ++t) e[t][p] = neg.coord(t);
            }
        }
        cols.push_back(homs.index_of(Homomorphism(k, g.A(), std::move(e))).coords());
    }
    std::vector<std::vector<std::int64_t>> entries(homs.group.rank(),
                                                   std::vector<std::int64_t>(re + rf, 0));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t t = 0; t < homs.group.rank(); ++t) entries[t][i] = cols[i][t];
    Homomorphism m(k, homs.group, std::move(entries));
    return MumfordData{std::move(k), std::move(homs), std::move(m)};
}

struct MumfordStatus {
    bool mumford;
    bool omega_E_bijective;
    bool omega_F_bijective;
};

/// The Mumford predicate: M bijective, asserted equal to both curried maps
/// being bijective (the finite analogue of the Mumford criterion).
inline MumfordStatus is_mumford_group(const HeisenbergGroup& g) {
    bool e_bij = curry(g.omega(), Side::left).map.is_bijective();
    bool f_bij = curry(g.omega(), Side::right).map.is_bijective();
    bool m_bij = mumford_map(g).map.is_bijective();
    if (m_bij != (e_bij && f_bij))
        throw internal_error("is_mumford_group: predicate coherence violated");
    return MumfordStatus{m_bij, e_bij, f_bij};
}

/// The standard Heisenberg group H(E, A) = H(E, Hom(E,A), A, evaluation).
/// The evaluation form is separated iff omega_E is injective; otherwise no
/// Heisenberg group exists and construction fails.
inline HeisenbergGroup standard_heisenberg(const FiniteAbelianGroup& e,
                                           const FiniteAbelianGroup& a) {
    HomGroup homs = hom_group(e, a);
    BilinearForm eval = evaluation_form(e, homs);
    if (!curry(eval, Side::left).map.is_injective())
        throw input_error("standard_heisenberg: omega_E is not injective, "
                          "the evaluation form is not separated");
    return HeisenbergGroup(std::move(eval));
}

/// The Mackey-Weil group H(E): the standard group over E and its finite-scale
/// Pontryagin dual, with A = Z_N for N the exponent of E.
inline HeisenbergGroup mackey_weil(const FiniteAbelianGroup& e) {
    return standard_heisenberg(e, FiniteAbelianGroup::cyclic(e.exponent()));
}

struct Embedding {
    HeisenbergGroup target;     ///< a standard Heisenberg group
    Homomorphism component;     ///< omega_F (side E) resp. omega_E (side F)
    bool bijective;
    bool verified;              ///< pointwise homomorphism check ran
    std::function<HeisenbergElement(const HeisenbergElement&)> apply;
};

/**
 * Embedding into a standard Heisenberg group.  Side E is
 * (x,y,z) -> (x, omega_F(y), z) into H(E, A).  For side F the analogous
 * slot-flip (x,y,z) -> (y, omega_E(x), z) reverses products, so it is
 * composed with inversion to obtain a genuine injective homomorphism
 * (x,y,z) -> (-y, -omega_E(x), -z + omega(x,y)) into H(F, A).
 * Each embedding is bijective iff its curried component is; both are
 * bijective iff the group is Mumford.
 */
inline Embedding embed_standard(const HeisenbergGroup& g, Side side) {
    const bool side_e = side == Side::left;
    CurriedForm c = curry(g.omega(), side_e ? Side::right : Side::left);
    HeisenbergGroup target = standard_heisenberg(side_e ? g.E() : g.F(), g.A());
    if (target.F() != c.homs.group)
        throw internal_error("embed_standard: hom group presentation mismatch");
    Homomorphism comp = c.map;
    BilinearForm omega = g.omega();
    std::function<HeisenbergElement(const HeisenbergElement&)> fn;
    if (side_e) {
        fn = [comp](const HeisenbergElement& h) {
            return HeisenbergElement{h.x, comp.apply(h.y), h.z};
        };
    } else {
        fn = [comp, omega](const HeisenbergElement& h) {
            return HeisenbergElement{-h.y, -comp.apply(h.x), -h.z + omega.evaluate(h.x, h.y)};
        };
    }
    bool bijective = comp.is_bijective();
    std::int64_t n = g.order();
    bool verified = n <= enumeration_bound();
    if (verified) {
        std::vector<HeisenbergElement> els;
        std::vector<HeisenbergElement> imgs;
        els.reserve(n);
        imgs.reserve(n);
        for (std::int64_t r = 0; r < n; ++r) {
            els.push_back(g.element_at(r));
            imgs.push_back(fn(els.back()));
        }
        for (std::int64_t r = 0; r < n; ++r) {
            for (std::int64_t s = 0; s < n; ++s)
                if (!(fn(g.multiply(els[r], els[s])) == target.multiply(imgs[r], imgs[s])))
                    throw internal_error("embed_standard: map is not a homomorphism");
            if (r > 0 && imgs[r] == imgs[0])
                throw internal_error("embed_standard: map is not injective");
        }
    }
    return Embedding{std::move(target), std::move(comp), bijective, verified, std::move(fn)};
}

/// The double-curry map E -> Hom(Hom(E, A), A), x -> (f -> f(x)).
inline Homomorphism reflexivity_map(const FiniteAbelianGroup& e, const FiniteAbelianGroup& a) {
    HomGroup inner = hom_group(e, a);
    HomGroup outer = hom_group(inner.group, a);
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t i = 0; i < e.rank(); ++i) {
        std::vector<std::int64_t> c(e.rank(), 0);
        c[i] = 1;
        GroupElement ui = e.element(std::move(c));
        std::vector<std::vector<std::int64_t>> mat(a.rank(),
                                                   std::vector<std::int64_t>(inner.group.rank(), 0));
        for (std::size_t j = 0; j < inner.group.rank(); ++j) {
            std::vector<std::int64_t> idx(inner.group.rank(), 0);
            idx[j] = 1;
            GroupElement val = inner.hom_at(inner.group.element(std::move(idx))).apply(ui);
            for (std::size_t t = 0; t < a.rank(); ++t) mat[t][j] = val.coord(t);
        }
        cols.push_back(outer.index_of(Homomorphism(inner.group, a, std::move(mat))).coords());
    }
    std::vector<std::vector<std::int64_t>> entries(outer.group.rank(),
                                                   std::vector<std::int64_t>(e.rank(), 0));
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (std::size_t t = 0; t < outer.group.rank(); ++t) entries[t][i] = cols[i][t];
    return Homomorphism(e, outer.group, std::move(entries));
}

inline bool is_reflexive(const FiniteAbelianGroup& e, const FiniteAbelianGroup& a) {
    return reflexivity_map(e, a).is_bijective();
}

} // namespace heiskit
