#pragma once

#include "polar/field.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace polar {

// Dense matrices and reduced-row-echelon machinery over an exact field.
// The echelon form is the canonical representative of a row space: two
// subspaces are equal iff their rref bases are identical.

template <class F>
struct Mat {
    using Element = typename F::Element;
    size_t rows = 0, cols = 0;
    std::vector<Element> a;

    Mat() = default;
    Mat(size_t r, size_t c, const Element& fill) : rows(r), cols(c), a(r * c, fill) {}

    Element& at(size_t r, size_t c) { return a[r * cols + c]; }
    const Element& at(size_t r, size_t c) const { return a[r * cols + c]; }
    std::span<const Element> row(size_t r) const { return {a.data() + r * cols, cols}; }

    friend bool operator==(const Mat&, const Mat&) = default;
};

template <class F>
using VecE = std::vector<typename F::Element>;

template <class F>
VecE<F> zero_vec(const F& f, size_t n) {
    return VecE<F>(n, f.zero());
}

template <class F>
bool vec_is_zero(const F& f, std::span<const typename F::Element> v) {
    for (const auto& x : v)
        if (!f.is_zero(x)) return false;
    return true;
}

template <class F>
void rref_inplace(const F& f, Mat<F>& m, std::vector<size_t>* pivots = nullptr) {
    size_t lead = 0;
    for (size_t col = 0; col < m.cols && lead < m.rows; ++col) {
        size_t pivot = lead;
        while (pivot < m.rows && f.is_zero(m.at(pivot, col))) ++pivot;
        if (pivot == m.rows) continue;
        if (pivot != lead)
            for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(lead, c));
        auto piv_inv = f.inv(m.at(lead, col));
        for (size_t c = 0; c < m.cols; ++c) m.at(lead, c) = f.mul(m.at(lead, c), piv_inv);
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == lead || f.is_zero(m.at(r, col))) continue;
            auto factor = m.at(r, col);
            for (size_t c = 0; c < m.cols; ++c)
                m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(lead, c)));
        }
        if (pivots) pivots->push_back(col);
        ++lead;
    }
    m.rows = lead;
    m.a.resize(lead * m.cols);
}

/// Echelonized basis of the solution space of m*x = 0 (rows are basis vectors).
template <class F>
Mat<F> nullspace(const F& f, Mat<F> m) {
    size_t n = m.cols;
    std::vector<size_t> pivots;
    rref_inplace(f, m, &pivots);
    std::vector<char> is_pivot(n, 0);
    for (size_t c : pivots) is_pivot[c] = 1;
    Mat<F> basis(0, n, f.zero());
    for (size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        VecE<F> v = zero_vec(f, n);
        v[c] = f.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = f.neg(m.at(r, c));
        basis.a.insert(basis.a.end(), v.begin(), v.end());
        ++basis.rows;
    }
    rref_inplace(f, basis);
    return basis;
}

template <class F>
struct Subspace {
    using Element = typename F::Element;
    size_t ambient = 0;
    Mat<F> basis; // rref, no zero rows

    size_t dim() const { return basis.rows; }

    static Subspace zero(size_t ambient_dim) {
        Subspace s;
        s.ambient = ambient_dim;
        s.basis.cols = ambient_dim;
        return s;
    }

    static Subspace full(const F& f, size_t ambient_dim) {
        Subspace s;
        s.ambient = ambient_dim;
        s.basis = Mat<F>(ambient_dim, ambient_dim, f.zero());
        for (size_t i = 0; i < ambient_dim; ++i) s.basis.at(i, i) = f.one();
        return s;
    }

    static Subspace from_rows(const F& f, Mat<F> rows) {
        Subspace s;
        s.ambient = rows.cols;
        rref_inplace(f, rows);
        s.basis = std::move(rows);
        return s;
    }

    /// Residual of v after elimination against the basis.
    VecE<F> reduce(const F& f, std::span<const Element> v) const {
        VecE<F> r(v.begin(), v.end());
        for (size_t i = 0; i < basis.rows; ++i) {
            size_t lead = 0;
            while (lead < ambient && f.is_zero(basis.at(i, lead))) ++lead;
            if (lead == ambient || f.is_zero(r[lead])) continue;
            auto factor = r[lead]; // pivot is 1 in rref
            for (size_t c = 0; c < ambient; ++c)
                r[c] = f.sub(r[c], f.mul(factor, basis.at(i, c)));
        }
        return r;
    }

    bool contains(const F& f, std::span<const Element> v) const {
        return vec_is_zero<F>(f, reduce(f, v));
    }

    friend bool operator==(const Subspace&, const Subspace&) = default;
};

template <class F>
Subspace<F> subspace_sum(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
    Mat<F> rows(a.basis.rows + b.basis.rows, a.ambient, f.zero());
    rows.a = a.basis.a;
    rows.a.insert(rows.a.end(), b.basis.a.begin(), b.basis.a.end());
    return Subspace<F>::from_rows(f, std::move(rows));
}

template <class F>
Subspace<F> extend_by_vector(const F& f, const Subspace<F>& s, std::span<const typename F::Element> v) {
    Mat<F> rows(s.basis.rows + 1, s.ambient, f.zero());
    rows.a = s.basis.a;
    rows.a.insert(rows.a.end(), v.begin(), v.end());
    return Subspace<F>::from_rows(f, std::move(rows));
}

/// Direct complement of `inner` within `outer`, spanned by residuals of
/// outer's basis rows. Deterministic: rows are taken in basis order.
template <class F>
Subspace<F> complement_within(const F& f, const Subspace<F>& inner, const Subspace<F>& outer) {
    Mat<F> acc = inner.basis;
    Mat<F> comp(0, outer.ambient, f.zero());
    Subspace<F> span = inner;
    for (size_t r = 0; r < outer.basis.rows; ++r) {
        auto row = outer.basis.row(r);
        VecE<F> residual = span.reduce(f, row);
        if (vec_is_zero<F>(f, residual)) continue;
        comp.a.insert(comp.a.end(), row.begin(), row.end());
        ++comp.rows;
        span = extend_by_vector(f, span, row);
    }
    return Subspace<F>::from_rows(f, std::move(comp));
}

/// Coordinates of v in terms of the rref basis of s; v must lie in s.
template <class F>
VecE<F> coordinates_in(const F& f, const Subspace<F>& s, std::span<const typename F::Element> v) {
    VecE<F> coords = zero_vec(f, s.basis.rows);
    VecE<F> r(v.begin(), v.end());
    for (size_t i = 0; i < s.basis.rows; ++i) {
        size_t lead = 0;
        while (lead < s.ambient && f.is_zero(s.basis.at(i, lead))) ++lead;
        if (lead == s.ambient) continue;
        coords[i] = r[lead];
        if (f.is_zero(coords[i])) continue;
        for (size_t c = 0; c < s.ambient; ++c)
            r[c] = f.sub(r[c], f.mul(coords[i], s.basis.at(i, c)));
    }
    if (!vec_is_zero<F>(f, r))
        throw Error("vector does not lie in the subspace");
    return coords;
}

} // namespace polar
