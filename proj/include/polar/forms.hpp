#pragma once

#include "polar/field.hpp"
#include "polar/linalg.hpp"
#include "polar/rng.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polar {

// ---------------------------------------------------------------------------
// Quadratic and bilinear forms. A quadratic form is stored by its
// upper-triangular coefficient matrix Q with phi(x) = sum_{i<=j} Q[i][j] x_i x_j.
// In characteristic 2 the upper-triangular matrix is the faithful
// representation; the Gram symmetrization loses the diagonal.
// ---------------------------------------------------------------------------

template <class F>
struct QuadraticForm {
    const F* field = nullptr;
    size_t dim = 0;
    Mat<F> coeffs; // upper triangular

    typename F::Element eval(std::span<const typename F::Element> v) const {
        const F& f = *field;
        if (v.size() != dim) throw Error("eval_form: vector length does not match form dimension");
        auto acc = f.zero();
        for (size_t i = 0; i < dim; ++i) {
            if (f.is_zero(v[i])) continue;
            for (size_t j = i; j < dim; ++j) {
                if (f.is_zero(coeffs.at(i, j)) || f.is_zero(v[j])) continue;
                acc = f.add(acc, f.mul(coeffs.at(i, j), f.mul(v[i], v[j])));
            }
        }
        return acc;
    }
};

template <class F>
QuadraticForm<F> make_form(const F& f, size_t dim) {
    return {&f, dim, Mat<F>(dim, dim, f.zero())};
}

template <class F>
struct BilinearForm {
    const F* field = nullptr;
    size_t dim = 0;
    Mat<F> gram; // symmetric

    typename F::Element eval(std::span<const typename F::Element> v,
                             std::span<const typename F::Element> w) const {
        const F& f = *field;
        if (v.size() != dim || w.size() != dim)
            throw Error("eval_bilinear: vector length does not match form dimension");
        auto acc = f.zero();
        for (size_t i = 0; i < dim; ++i) {
            if (f.is_zero(v[i])) continue;
            for (size_t j = 0; j < dim; ++j) {
                if (f.is_zero(gram.at(i, j)) || f.is_zero(w[j])) continue;
                acc = f.add(acc, f.mul(v[i], f.mul(gram.at(i, j), w[j])));
            }
        }
        return acc;
    }
};

/// f(x,y) = phi(x+y) - phi(x) - phi(y); concretely gram = Q + Q^T.
template <class F>
BilinearForm<F> bilinearize(const QuadraticForm<F>& q) {
    const F& f = *q.field;
    BilinearForm<F> b{q.field, q.dim, Mat<F>(q.dim, q.dim, f.zero())};
    for (size_t i = 0; i < q.dim; ++i)
        for (size_t j = 0; j < q.dim; ++j)
            b.gram.at(i, j) = f.add(q.coeffs.at(i, j), q.coeffs.at(j, i));
    return b;
}

template <class F>
Subspace<F> radical_bilinear(const BilinearForm<F>& b) {
    Mat<F> g = b.gram;
    return Subspace<F>{b.dim, nullspace(*b.field, std::move(g))};
}

namespace detail {

/// Kernel of the Frobenius-semilinear functional x -> phi(x) on a subspace
/// where the bilinearization vanishes identically (phi is additive there).
/// Exact in every supported field:
///   - odd characteristic: phi vanishes on the whole radical;
///   - GF(2^s): phi(sum a_i r_i) = (sum a_i u_i^(1/2))^2, a linear condition;
///   - F2(t): phi(sum a_i r_i) = A(a)^2 + t B(a)^2 with A, B linear.
inline Subspace<FiniteField> singular_part_of_radical(const FiniteField& f,
                                                      const QuadraticForm<FiniteField>& q,
                                                      const Subspace<FiniteField>& rad) {
    if (rad.dim() == 0) return rad;
    if (f.characteristic() != 2) return rad; // phi = f(r,r)/2 = 0 on the radical
    Mat<FiniteField> cond(1, rad.dim(), f.zero());
    for (size_t i = 0; i < rad.dim(); ++i) {
        auto u = q.eval(rad.basis.row(i));
        cond.at(0, i) = f.pth_root(u);
    }
    Mat<FiniteField> ker = nullspace(f, std::move(cond));
    Mat<FiniteField> rows(ker.rows, rad.ambient, f.zero());
    for (size_t r = 0; r < ker.rows; ++r)
        for (size_t c = 0; c < rad.ambient; ++c) {
            auto acc = f.zero();
            for (size_t i = 0; i < rad.dim(); ++i)
                acc = f.add(acc, f.mul(ker.at(r, i), rad.basis.at(i, c)));
            rows.at(r, c) = acc;
        }
    return Subspace<FiniteField>::from_rows(f, std::move(rows));
}

inline Subspace<FunctionField> singular_part_of_radical(const FunctionField& f,
                                                        const QuadraticForm<FunctionField>& q,
                                                        const Subspace<FunctionField>& rad) {
    if (rad.dim() == 0) return rad;
    Mat<FunctionField> cond(2, rad.dim(), f.zero());
    for (size_t i = 0; i < rad.dim(); ++i) {
        auto [A, B] = f.square_parts(q.eval(rad.basis.row(i)));
        cond.at(0, i) = A;
        cond.at(1, i) = B;
    }
    Mat<FunctionField> ker = nullspace(f, std::move(cond));
    Mat<FunctionField> rows(ker.rows, rad.ambient, f.zero());
    for (size_t r = 0; r < ker.rows; ++r)
        for (size_t c = 0; c < rad.ambient; ++c) {
            auto acc = f.zero();
            for (size_t i = 0; i < rad.dim(); ++i)
                acc = f.add(acc, f.mul(ker.at(r, i), rad.basis.at(i, c)));
            rows.at(r, c) = acc;
        }
    return Subspace<FunctionField>::from_rows(f, std::move(rows));
}

} // namespace detail

/// Rad(phi) = { r in Rad(f) : phi(r) = 0 }. phi is non-degenerate iff this is zero.
template <class F>
Subspace<F> radical_form(const QuadraticForm<F>& q) {
    auto rad = radical_bilinear(bilinearize(q));
    return detail::singular_part_of_radical(*q.field, q, rad);
}

template <class F>
bool non_degenerate(const QuadraticForm<F>& q) {
    return radical_form(q).dim() == 0;
}

/// Form induced on the row space of S, in coordinates of its rref basis.
template <class F>
QuadraticForm<F> restrict_form(const QuadraticForm<F>& q, const Subspace<F>& s) {
    const F& f = *q.field;
    auto b = bilinearize(q);
    QuadraticForm<F> out = make_form(f, s.dim());
    for (size_t i = 0; i < s.dim(); ++i) {
        out.coeffs.at(i, i) = q.eval(s.basis.row(i));
        for (size_t j = i + 1; j < s.dim(); ++j)
            out.coeffs.at(i, j) = b.eval(s.basis.row(i), s.basis.row(j));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Singular-vector search. Over finite fields the search is exhaustive over
// projective representatives (first nonzero coordinate = 1), enumerated by
// counting with coordinate 0 least significant. Over F2(t) the result is
// three-valued: exact certificates where available, bounded search otherwise.
// ---------------------------------------------------------------------------

enum class SearchStatus { Found, None, Inconclusive };

template <class F>
struct SearchResult {
    SearchStatus status = SearchStatus::None;
    VecE<F> vec;
};

struct F2TSearchOptions {
    uint32_t coordinate_degree = 2; // bounded-search degree budget per coordinate
};

namespace detail {

/// Advance a base-q counter; returns false after wrapping to zero.
inline bool next_counting(std::vector<uint8_t>& digits, uint32_t q) {
    for (auto& d : digits) {
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

inline bool normalized_rep(const FiniteField& f, std::span<const uint8_t> v) {
    for (auto c : v) {
        if (f.is_zero(c)) continue;
        return c == f.one();
    }
    return false;
}

} // namespace detail

/// First singular vector (projective representative) not in `avoid`, or None.
inline SearchResult<FiniteField> find_singular_vector(const QuadraticForm<FiniteField>& q,
                                                      const Subspace<FiniteField>& avoid) {
    const FiniteField& f = *q.field;
    std::vector<uint8_t> v(q.dim, 0);
    while (detail::next_counting(v, f.q())) {
        if (!detail::normalized_rep(f, v)) continue;
        if (!f.is_zero(q.eval(v))) continue;
        if (avoid.contains(f, std::span<const uint8_t>(v))) continue;
        return {SearchStatus::Found, v};
    }
    return {SearchStatus::None, {}};
}

SearchResult<FunctionField> find_singular_vector(const QuadraticForm<FunctionField>& q,
                                                 const Subspace<FunctionField>& avoid,
                                                 const F2TSearchOptions& opts = {});

/// Roots z of a*z^2 + b*z + c = 0 over F2(t), exactly (square test when b = 0,
/// an Artin-Schreier linear system otherwise).
std::vector<Frac> solve_quadratic_f2t(const FunctionField& f, const Frac& a, const Frac& b,
                                      const Frac& c);

// ---------------------------------------------------------------------------
// Witt-style splitting and the gap invariants.
// ---------------------------------------------------------------------------

template <class F>
struct WittDecomposition {
    std::vector<std::pair<VecE<F>, VecE<F>>> pairs; // (v_i, w_i): phi = 0, f(v_i, w_i) = 1
    Subspace<F> anisotropic;                        // V0'
    Subspace<F> radical;                            // Rad(f)
    uint32_t n = 0;                                 // Witt index
};

struct GapReport {
    uint32_t n = 0, e = 0, p = 0, r = 0;

    std::string label() const {
        if (e == 0 && p == 0) return "hyperbolic";
        if (p == 0) return "elliptic";
        if (e == 0) return "parabolic";
        return "(" + std::to_string(e) + "," + std::to_string(p) + ")-orthogonal";
    }
    friend bool operator==(const GapReport&, const GapReport&) = default;
};

namespace detail {

/// Singular vector of phi inside the subspace W, excluding `avoid`; the search
/// runs on the restricted form in W-coordinates and maps back to the ambient
/// space. Deterministic: first hit in the restricted enumeration order.
template <class F>
SearchResult<F> singular_in_subspace(const QuadraticForm<F>& q, const Subspace<F>& w,
                                     const Subspace<F>& avoid) {
    const F& f = *q.field;
    QuadraticForm<F> restricted = restrict_form(q, w);
    // avoid, expressed in W-coordinates (only the part inside W matters)
    Mat<F> avoid_rows(0, w.dim(), f.zero());
    for (size_t r = 0; r < avoid.basis.rows; ++r) {
        if (!w.contains(f, avoid.basis.row(r))) continue;
        auto coords = coordinates_in(f, w, avoid.basis.row(r));
        avoid_rows.a.insert(avoid_rows.a.end(), coords.begin(), coords.end());
        ++avoid_rows.rows;
    }
    auto avoid_sub = Subspace<F>::from_rows(f, std::move(avoid_rows));
    auto res = find_singular_vector(restricted, avoid_sub);
    if (res.status != SearchStatus::Found) return res;
    VecE<F> ambient = zero_vec(f, w.ambient);
    for (size_t i = 0; i < w.dim(); ++i) {
        if (f.is_zero(res.vec[i])) continue;
        for (size_t c = 0; c < w.ambient; ++c)
            ambient[c] = f.add(ambient[c], f.mul(res.vec[i], w.basis.at(i, c)));
    }
    return {SearchStatus::Found, ambient};
}

} // namespace detail

/// Split phi into hyperbolic pairs, an anisotropic complement and the radical
/// of the bilinearization. Requires phi non-degenerate. The loop repeatedly
/// picks the enumeration-first singular vector outside Rad(f), completes it to
/// a hyperbolic pair, and restricts to the pair's orthogonal complement; the
/// final complement of Rad(f) is anisotropic together with the radical.
template <class F>
WittDecomposition<F> witt_decompose(const QuadraticForm<F>& q) {
    const F& f = *q.field;
    {
        auto rad_phi = radical_form(q);
        if (rad_phi.dim() != 0)
            throw DegenerateFormError("degenerate form: Rad(phi) has dimension " +
                                      std::to_string(rad_phi.dim()));
    }
    auto b = bilinearize(q);
    WittDecomposition<F> out;
    out.radical = radical_bilinear(b);
    Subspace<F> w = Subspace<F>::full(f, q.dim);
    while (true) {
        auto res = detail::singular_in_subspace(q, w, out.radical);
        if (res.status == SearchStatus::Inconclusive)
            throw InconclusiveError("cannot certify anisotropy of the remaining complement over " +
                                    std::string("F2(t); degree budget exhausted"));
        if (res.status == SearchStatus::None) break;
        VecE<F> v = res.vec;
        // Partner with f(v, w) != 0: first basis row of the current complement.
        std::optional<VecE<F>> partner;
        for (size_t r = 0; r < w.basis.rows; ++r) {
            auto val = b.eval(v, w.basis.row(r));
            if (f.is_zero(val)) continue;
            VecE<F> p(w.basis.row(r).begin(), w.basis.row(r).end());
            auto scale = f.inv(val);
            for (auto& x : p) x = f.mul(x, scale);
            partner = std::move(p);
            break;
        }
        if (!partner) throw InvariantViolation("singular vector outside Rad(f) has no partner");
        // Make the partner singular: phi(p + lambda v) = phi(p) + lambda with f(v,p) = 1.
        auto lambda = f.neg(q.eval(*partner));
        for (size_t c = 0; c < q.dim; ++c)
            (*partner)[c] = f.add((*partner)[c], f.mul(lambda, v[c]));
        out.pairs.emplace_back(v, *partner);
        // Shrink to the f-orthogonal complement of the pair within w.
        Mat<F> cond(2, w.dim(), f.zero());
        for (size_t i = 0; i < w.dim(); ++i) {
            cond.at(0, i) = b.eval(w.basis.row(i), v);
            cond.at(1, i) = b.eval(w.basis.row(i), *partner);
        }
        Mat<F> ker = nullspace(f, std::move(cond));
        Mat<F> rows(ker.rows, q.dim, f.zero());
        for (size_t r = 0; r < ker.rows; ++r)
            for (size_t c = 0; c < q.dim; ++c) {
                auto acc = f.zero();
                for (size_t i = 0; i < w.dim(); ++i)
                    acc = f.add(acc, f.mul(ker.at(r, i), w.basis.at(i, c)));
                rows.at(r, c) = acc;
            }
        w = Subspace<F>::from_rows(f, std::move(rows));
    }
    out.anisotropic = complement_within(f, out.radical, w);
    out.n = uint32_t(out.pairs.size());
    return out;
}

template <class F>
GapReport gaps(const QuadraticForm<F>& q) {
    auto wd = witt_decompose(q);
    GapReport g;
    g.n = wd.n;
    g.e = uint32_t(wd.anisotropic.dim());
    g.p = uint32_t(wd.radical.dim());
    g.r = g.e + g.p;
    return g;
}

/// phi composed with the change of coordinates P: x -> phi(P x), folded back to
/// upper-triangular form (fold the strictly-lower part of P^T Q P into the
/// upper part; evaluations are preserved).
template <class F>
QuadraticForm<F> transform_form(const QuadraticForm<F>& q, const Mat<F>& p) {
    const F& f = *q.field;
    size_t n = q.dim;
    Mat<F> qp(n, n, f.zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto acc = f.zero();
            for (size_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(q.coeffs.at(i, k), p.at(k, j)));
            qp.at(i, j) = acc;
        }
    Mat<F> m(n, n, f.zero());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto acc = f.zero();
            for (size_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(p.at(k, i), qp.at(k, j)));
            m.at(i, j) = acc;
        }
    QuadraticForm<F> out = make_form(f, n);
    for (size_t i = 0; i < n; ++i) {
        out.coeffs.at(i, i) = m.at(i, i);
        for (size_t j = i + 1; j < n; ++j) out.coeffs.at(i, j) = f.add(m.at(i, j), m.at(j, i));
    }
    return out;
}

/// phi composed with a seeded random invertible change of coordinates,
/// re-canonicalized to upper-triangular form (evaluations are preserved).
QuadraticForm<FiniteField> random_equivalent(const QuadraticForm<FiniteField>& q, uint64_t seed);

} // namespace polar
