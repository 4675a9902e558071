#include "polar/forms.hpp"

#include <algorithm>
#include <map>

namespace polar {

// ---------------------------------------------------------------------------
// Exact equation solving over F2(t)
// ---------------------------------------------------------------------------

namespace {

/// Solve y^2 + y = u exactly. Writing y = g/h in lowest terms forces
/// u = (g^2 + gh)/h^2 already reduced, so the denominator of u must be a
/// square h^2 and g solves the F2-linear system g^2 + h g = n coefficientwise.
std::optional<Frac> artin_schreier_solve(const FunctionField& f, const Frac& u) {
    if (f.is_zero(u)) return f.zero();
    if (!u.den.is_square()) return std::nullopt;
    Poly2 h = u.den.sqrt_exact();
    const Poly2& n = u.num;
    int dh = h.degree(), dn = n.degree();
    int D = std::max(dh, (dn + 1) / 2);
    int kmax = std::max({2 * D, D + dh, dn});
    // Row r = equation for the coefficient of t^r; column i = unknown g_i.
    size_t cols = size_t(D + 1);
    std::vector<std::vector<uint8_t>> m(size_t(kmax + 1), std::vector<uint8_t>(cols + 1, 0));
    for (int k = 0; k <= kmax; ++k) {
        if (k % 2 == 0 && k / 2 <= D) m[size_t(k)][size_t(k / 2)] ^= 1;
        for (int i = 0; i <= D; ++i) {
            int j = k - i;
            if (j >= 0 && j <= dh && h.bit(size_t(j))) m[size_t(k)][size_t(i)] ^= 1;
        }
        m[size_t(k)][cols] = n.bit(size_t(k)) ? 1 : 0;
    }
    // GF(2) elimination.
    size_t lead = 0;
    for (size_t col = 0; col < cols && lead < m.size(); ++col) {
        size_t pivot = lead;
        while (pivot < m.size() && !m[pivot][col]) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[pivot], m[lead]);
        for (size_t r = 0; r < m.size(); ++r) {
            if (r == lead || !m[r][col]) continue;
            for (size_t c = col; c <= cols; ++c) m[r][c] ^= m[lead][c];
        }
        ++lead;
    }
    // Inconsistent?
    for (size_t r = lead; r < m.size(); ++r)
        if (m[r][cols]) return std::nullopt;
    // Back-read a particular solution (free unknowns set to zero).
    Poly2 g;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < lead; ++col) {
        if (!m[row][col]) continue;
        if (m[row][cols]) g.flip_bit(col);
        ++row;
    }
    Frac y = f.make(g, h);
    // The system above is necessary; verify to be safe against bound slack.
    Frac check = f.add(f.mul(y, y), y);
    if (!(check == u)) return std::nullopt;
    return y;
}

Frac frac_of(const FunctionField& f, Poly2 num) { return f.make(std::move(num), Poly2::one()); }

} // namespace

std::vector<Frac> solve_quadratic_f2t(const FunctionField& f, const Frac& a, const Frac& b,
                                      const Frac& c) {
    std::vector<Frac> roots;
    if (f.is_zero(a)) {
        if (f.is_zero(b)) return roots; // constant equation
        roots.push_back(f.div(c, b));
        return roots;
    }
    if (f.is_zero(b)) {
        auto r = f.square_root(f.div(c, a));
        if (r) roots.push_back(*r);
        return roots;
    }
    // z = (b/a) y reduces to y^2 + y = ca/b^2.
    Frac scale = f.div(b, a);
    Frac u = f.div(f.mul(c, a), f.mul(b, b));
    auto y = artin_schreier_solve(f, u);
    if (!y) return roots;
    roots.push_back(f.mul(scale, *y));
    roots.push_back(f.mul(scale, f.add(*y, f.one())));
    return roots;
}

// ---------------------------------------------------------------------------
// F2(t) singular-vector search
// ---------------------------------------------------------------------------

namespace {

struct Block {
    std::vector<size_t> coords; // ascending
};

int frac_parity(const Frac& a) {
    int d = a.num.degree() - a.den.degree();
    return ((d % 2) + 2) % 2;
}

/// Connected components of the coordinate-coupling graph (i ~ j when a cross
/// term x_i x_j is present); the form splits as an orthogonal sum over them.
std::vector<Block> coupling_blocks(const QuadraticForm<FunctionField>& q) {
    size_t n = q.dim;
    std::vector<size_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const FunctionField& f = *q.field;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (!f.is_zero(q.coeffs.at(i, j))) parent[find(i)] = find(j);
    std::map<size_t, Block> comp;
    for (size_t i = 0; i < n; ++i) comp[find(i)].coords.push_back(i);
    std::vector<Block> out;
    for (auto& [root, blk] : comp) out.push_back(std::move(blk));
    return out;
}

struct BlockAnalysis {
    bool exact = false;       // anisotropy decided exactly
    bool anisotropic = false; // valid when exact
    std::vector<VecE<FunctionField>> roots; // nonzero local roots when isotropic
    int parity = -1;          // certified value parity, -1 when uncertified
};

BlockAnalysis analyze_block(const QuadraticForm<FunctionField>& q, const Block& blk) {
    const FunctionField& f = *q.field;
    BlockAnalysis out;
    if (blk.coords.size() == 1) {
        Frac c = q.coeffs.at(blk.coords[0], blk.coords[0]);
        out.exact = true;
        if (f.is_zero(c)) {
            out.anisotropic = false;
            out.roots.push_back({f.one()});
        } else {
            out.anisotropic = true;
            out.parity = frac_parity(c);
        }
        return out;
    }
    if (blk.coords.size() == 2) {
        Frac a = q.coeffs.at(blk.coords[0], blk.coords[0]);
        Frac b = q.coeffs.at(blk.coords[0], blk.coords[1]);
        Frac c = q.coeffs.at(blk.coords[1], blk.coords[1]);
        out.exact = true;
        if (f.is_zero(a)) out.roots.push_back({f.one(), f.zero()});
        for (const Frac& z : solve_quadratic_f2t(f, a, b, c))
            out.roots.push_back({z, f.one()});
        out.anisotropic = out.roots.empty();
        if (out.anisotropic && a == b && b == c) out.parity = frac_parity(a); // scaled norm form
        return out;
    }
    return out; // undecided
}

} // namespace

SearchResult<FunctionField> find_singular_vector(const QuadraticForm<FunctionField>& q,
                                                 const Subspace<FunctionField>& avoid,
                                                 const F2TSearchOptions& opts) {
    const FunctionField& f = *q.field;
    if (q.dim == 0) return {SearchStatus::None, {}};

    auto b = bilinearize(q);
    bool gram_zero = true;
    for (const auto& e : b.gram.a)
        if (!f.is_zero(e)) {
            gram_zero = false;
            break;
        }
    if (gram_zero) {
        // phi is additive here; its kernel is exactly the singular set.
        auto rad = Subspace<FunctionField>::full(f, q.dim);
        auto ker = detail::singular_part_of_radical(f, q, rad);
        for (size_t r = 0; r < ker.basis.rows; ++r) {
            VecE<FunctionField> v(ker.basis.row(r).begin(), ker.basis.row(r).end());
            if (!avoid.contains(f, v)) return {SearchStatus::Found, v};
        }
        return {SearchStatus::None, {}};
    }

    auto blocks = coupling_blocks(q);
    std::vector<BlockAnalysis> analysis;
    analysis.reserve(blocks.size());
    bool all_exact_anisotropic = true;
    for (const auto& blk : blocks) {
        analysis.push_back(analyze_block(q, blk));
        const auto& an = analysis.back();
        if (!an.exact || !an.anisotropic) all_exact_anisotropic = false;
    }

    // Roots found inside a block lift to singular vectors of the whole form.
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        for (const auto& local : analysis[bi].roots) {
            VecE<FunctionField> v = zero_vec(f, q.dim);
            for (size_t i = 0; i < blocks[bi].coords.size(); ++i) v[blocks[bi].coords[i]] = local[i];
            if (!avoid.contains(f, v)) return {SearchStatus::Found, v};
        }
    }

    if (all_exact_anisotropic) {
        if (blocks.size() == 1) return {SearchStatus::None, {}};
        // Values of distinct parity cannot cancel; with at most one block per
        // parity class every nonzero value stays nonzero.
        bool parity_ok = true;
        int seen[2] = {0, 0};
        for (const auto& an : analysis) {
            if (an.parity < 0) {
                parity_ok = false;
                break;
            }
            seen[an.parity]++;
        }
        if (parity_ok && seen[0] <= 1 && seen[1] <= 1) return {SearchStatus::None, {}};
    }

    // Bounded search over polynomial coordinate vectors.
    uint32_t deg = std::min<uint32_t>(opts.coordinate_degree, 6);
    uint32_t base = 1u << (deg + 1);
    std::vector<uint8_t> counter(q.dim, 0);
    while (detail::next_counting(counter, base)) {
        VecE<FunctionField> v(q.dim, f.zero());
        for (size_t i = 0; i < q.dim; ++i) {
            Poly2 p;
            for (uint32_t bit = 0; bit <= deg; ++bit)
                if (counter[i] & (1u << bit)) p.flip_bit(bit);
            v[i] = frac_of(f, p);
        }
        if (!f.is_zero(q.eval(v))) continue;
        if (avoid.contains(f, v)) continue;
        return {SearchStatus::Found, v};
    }
    return {SearchStatus::Inconclusive, {}};
}

// ---------------------------------------------------------------------------
// Seeded random equivalents (finite fields)
// ---------------------------------------------------------------------------

QuadraticForm<FiniteField> random_equivalent(const QuadraticForm<FiniteField>& q, uint64_t seed) {
    const FiniteField& f = *q.field;
    size_t n = q.dim;
    Rng rng(seed);
    Mat<FiniteField> p(n, n, f.zero());
    while (true) {
        for (auto& e : p.a) e = FiniteField::Element(rng.below(f.q()));
        Mat<FiniteField> copy = p;
        rref_inplace(f, copy);
        if (copy.rows == n) break;
    }
    return transform_form(q, p);
}

} // namespace polar
