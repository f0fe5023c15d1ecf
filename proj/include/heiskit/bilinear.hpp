// A-valued bilinear maps on E x F stored by their generator matrix, their
// curried homomorphisms, classification (separated / alternating / symmetric)
// and exhaustive isomorphism testing of square forms.

#pragma once

#include "heiskit/abelian.hpp"

namespace heiskit {

/**
 * A bilinear map omega: E x F -> A given by the matrix of generator values
 * W[i][j] = omega(u_i, v_j).  Compatibility (the order of W[i][j] divides
 * gcd(e_i, f_j)) is checked at construction; it makes evaluation well defined
 * and the representation unique: every bilinear map arises from exactly one
 * compatible matrix.
 */
class BilinearForm {
public:
    BilinearForm(FiniteAbelianGroup e, FiniteAbelianGroup f, FiniteAbelianGroup a,
                 std::vector<std::vector<GroupElement>> matrix)
        : e_(std::move(e)), f_(std::move(f)), a_(std::move(a)), w_(std::move(matrix)) {
        if (w_.size() != e_.rank())
            throw input_error("BilinearForm: row count does not match rank of E");
        for (std::size_t i = 0; i < w_.size(); ++i) {
            if (w_[i].size() != f_.rank())
                throw input_error("BilinearForm: column count does not match rank of F");
            for (std::size_t j = 0; j < w_[i].size(); ++j) {
                if (w_[i][j].parent() != a_)
                    throw input_error("BilinearForm: entry parent is not A");
                std::int64_t g = std::gcd(e_.orders()[i], f_.orders()[j]);
                if (g % w_[i][j].order() != 0)
                    throw input_error("BilinearForm: entry (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + ") has order " +
                                      std::to_string(w_[i][j].order()) +
                                      " not dividing gcd of the generator orders " +
                                      std::to_string(g));
            }
        }
    }

    static BilinearForm zero(const FiniteAbelianGroup& e, const FiniteAbelianGroup& f,
                             const FiniteAbelianGroup& a) {
        std::vector<std::vector<GroupElement>> w(e.rank(),
                                                 std::vector<GroupElement>(f.rank(), a.zero()));
        return BilinearForm(e, f, a, std::move(w));
    }

    const FiniteAbelianGroup& E() const { return e_; }
    const FiniteAbelianGroup& F() const { return f_; }
    const FiniteAbelianGroup& A() const { return a_; }
    const GroupElement& entry(std::size_t i, std::size_t j) const { return w_[i][j]; }

    GroupElement evaluate(const GroupElement& x, const GroupElement& y) const {
        if (x.parent() != e_ || y.parent() != f_)
            throw input_error("BilinearForm::evaluate: parent mismatch");
        std::vector<std::int64_t> acc(a_.rank(), 0);
        for (std::size_t i = 0; i < e_.rank(); ++i) {
            if (x.coord(i) == 0) continue;
            for (std::size_t j = 0; j < f_.rank(); ++j) {
                if (y.coord(j) == 0) continue;
                const GroupElement& w = w_[i][j];
                for (std::size_t k = 0; k < a_.rank(); ++k) {
                    std::int64_t ak = a_.orders()[k];
                    std::int64_t s = mul_mod(mul_mod(x.coord(i), y.coord(j), ak), w.coord(k), ak);
                    acc[k] = mod_floor(acc[k] + s, ak);
                }
            }
        }
        return a_.is_trivial() ? a_.zero() : a_.element(std::move(acc));
    }

    bool operator==(const BilinearForm& o) const {
        return e_ == o.e_ && f_ == o.f_ && a_ == o.a_ && w_ == o.w_;
    }

private:
    FiniteAbelianGroup e_, f_, a_;
    std::vector<std::vector<GroupElement>> w_;
};

enum class Side { left, right };

struct CurriedForm {
    HomGroup homs;   ///< Hom(F, A) for the left curry, Hom(E, A) for the right
    Homomorphism map; ///< omega_E: E -> homs.group, resp. omega_F: F -> homs.group
};

/// The curried homomorphism omega_E (left) or omega_F (right), expressed
/// through the hom_group indexing so that evaluating through the index agrees
/// with evaluate at every point.
inline CurriedForm curry(const BilinearForm& w, Side side) {
    const FiniteAbelianGroup& from = side == Side::left ? w.E() : w.F();
    const FiniteAbelianGroup& to = side == Side::left ? w.F() : w.E();
    HomGroup hg = hom_group(to, w.A());
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t i = 0; i < from.rank(); ++i) {
        std::vector<std::vector<std::int64_t>> e(w.A().rank(),
                                                 std::vector<std::int64_t>(to.rank(), 0));
        for (std::size_t j = 0; j < to.rank(); ++j) {
            const GroupElement& v = side == Side::left ? w.entry(i, j) : w.entry(j, i);
            for (std::size_t k = 0; k < w.A().rank(); ++k) e[k][j] = v.coord(k);
        }
        cols.push_back(hg.index_of(Homomorphism(to, w.A(), std::move(e))).coords());
    }
    std::vector<std::vector<std::int64_t>> entries(hg.group.rank(),
                                                   std::vector<std::int64_t>(from.rank(), 0));
    for (std::size_t i = 0; i < from.rank(); ++i)
        for (std::size_t k = 0; k < hg.group.rank(); ++k) entries[k][i] = cols[i][k];
    Homomorphism map(from, hg.group, std::move(entries));
    return CurriedForm{std::move(hg), std::move(map)};
}

inline bool is_separated(const BilinearForm& w) {
    return curry(w, Side::left).map.is_injective() &&
           curry(w, Side::right).map.is_injective();
}

struct FormClass {
    bool separated = false;
    std::optional<bool> alternating; ///< set only for square forms (E = F)
    std::optional<bool> symmetric;   ///< set only for square forms (E = F)
};

/// Separatedness via the curried kernels; for square forms the alternating
/// test uses the generator criterion (zero diagonal plus antisymmetry), which
/// is equivalent to omega(x, x) = 0 for bilinear maps.
inline FormClass classify_form(const BilinearForm& w) {
    FormClass out;
    out.separated = is_separated(w);
    if (w.E() != w.F()) return out;
    bool alt = true, sym = true;
    for (std::size_t i = 0; i < w.E().rank(); ++i) {
        if (!w.entry(i, i).is_zero()) alt = false;
        for (std::size_t j = i + 1; j < w.E().rank(); ++j) {
            if (w.entry(i, j) != -w.entry(j, i)) alt = false;
            if (w.entry(i, j) != w.entry(j, i)) sym = false;
        }
    }
    out.alternating = alt;
    out.symmetric = sym;
    return out;
}

/// The evaluation pairing E x Hom(E, A) -> A, (x, f) -> f(x).
inline BilinearForm evaluation_form(const FiniteAbelianGroup& e, const HomGroup& homs) {
    if (homs.source != e) throw input_error("evaluation_form: hom group source mismatch");
    std::vector<std::vector<GroupElement>> w;
    for (std::size_t i = 0; i < e.rank(); ++i) {
        std::vector<std::int64_t> gen(e.rank(), 0);
        gen[i] = 1;
        GroupElement ui = e.element(std::move(gen));
        std::vector<GroupElement> row;
        for (std::size_t j = 0; j < homs.group.rank(); ++j) {
            std::vector<std::int64_t> idx(homs.group.rank(), 0);
            idx[j] = 1;
            row.push_back(homs.hom_at(homs.group.element(std::move(idx))).apply(ui));
        }
        w.push_back(std::move(row));
    }
    return BilinearForm(e, homs.group, homs.target, std::move(w));
}

namespace detail {

inline bool forms_agree_on_generators(const BilinearForm& w, const BilinearForm& w1,
                                      const std::vector<GroupElement>& images,
                                      std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i) {
        std::vector<std::int64_t> ci(w.E().rank(), 0);
        ci[i] = 1;
        GroupElement ui = w.E().element(std::move(ci));
        for (std::size_t j = 0; j < upto; ++j) {
            std::vector<std::int64_t> cj(w.E().rank(), 0);
            cj[j] = 1;
            GroupElement uj = w.E().element(std::move(cj));
            if (w1.evaluate(images[i], images[j]) != w.evaluate(ui, uj)) return false;
        }
    }
    return true;
}

inline bool extend_form_witness(const BilinearForm& w, const BilinearForm& w1,
                                std::vector<GroupElement>& images) {
    std::size_t i = images.size();
    if (i == w.E().rank()) return true;
    std::int64_t n1 = w1.E().order();
    std::int64_t want_order = w.E().orders()[i];
    std::int64_t partial = 1;
    for (std::size_t t = 0; t < i; ++t) partial *= w.E().orders()[t];
    for (std::int64_t r = 0; r < n1; ++r) {
        GroupElement cand = w1.E().element_at(r);
        if (cand.order() != want_order) continue;
        images.push_back(cand);
        // Independence: the chosen images must span a subgroup of the size
        // the source generators span, or the map cannot be injective.
        if (subgroup_closure(w1.E(), images).order() == partial * want_order &&
            forms_agree_on_generators(w, w1, images, images.size()) &&
            extend_form_witness(w, w1, images))
            return true;
        images.pop_back();
    }
    return false;
}

} // namespace detail

/**
 * Exhaustive isomorphism test for square forms over the same value group: a
 * witness xi with w1(xi x, xi y) = w(x, y) everywhere, or nullopt (a definite
 * negative: the generator-image search is exhaustive).  Candidates are tried
 * in lexicographic element order, so the first witness is deterministic.
 */
inline std::optional<Homomorphism> forms_isomorphic(const BilinearForm& w,
                                                    const BilinearForm& w1) {
    if (w.E() != w.F() || w1.E() != w1.F())
        throw input_error("forms_isomorphic: both forms must be square");
    if (w.A() != w1.A())
        throw input_error("forms_isomorphic: forms take values in different groups");
    if (w.E().order() != w1.E().order()) return std::nullopt;
    check_bound(w.E().order(), "forms_isomorphic");

    std::vector<GroupElement> images;
    if (!detail::extend_form_witness(w, w1, images)) return std::nullopt;
    std::vector<std::vector<std::int64_t>> e(w1.E().rank(),
                                             std::vector<std::int64_t>(w.E().rank(), 0));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t k = 0; k < w1.E().rank(); ++k) e[k][i] = images[i].coord(k);
    Homomorphism xi(w.E(), w1.E(), std::move(e));
    if (!xi.is_bijective())
        throw internal_error("forms_isomorphic: witness candidate is not bijective");
    std::int64_t n = w.E().order();
    for (std::int64_t r = 0; r < n; ++r) {
        GroupElement x = w.E().element_at(r);
        for (std::int64_t s = 0; s < n; ++s) {
            GroupElement y = w.E().element_at(s);
            if (w1.evaluate(xi.apply(x), xi.apply(y)) != w.evaluate(x, y))
                throw internal_error("forms_isomorphic: witness fails pointwise validation");
        }
    }
    return xi;
}

} // namespace heiskit
