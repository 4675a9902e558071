#pragma once

#include "polar/field.hpp"
#include "polar/forms.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace polar {

// ---------------------------------------------------------------------------
// Synthetic polar spaces over finite fields: enumerated singular points,
// totally singular lines, collinearity and perps.
// ---------------------------------------------------------------------------

struct DynBitset {
    size_t n = 0;
    std::vector<uint64_t> w;

    DynBitset() = default;
    explicit DynBitset(size_t bits) : n(bits), w((bits + 63) / 64, 0) {}

    void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
    void reset(size_t i) { w[i / 64] &= ~(uint64_t(1) << (i % 64)); }
    bool test(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    size_t count() const;
    bool any() const;
    bool subset_of(const DynBitset& o) const;
    bool intersects(const DynBitset& o) const;
    void and_with(const DynBitset& o);
    void or_with(const DynBitset& o);
    static DynBitset all(size_t bits);
    std::vector<uint32_t> to_indices() const;
    /// First set bit at position >= from, or n when none.
    size_t next(size_t from) const;

    friend bool operator==(const DynBitset&, const DynBitset&) = default;
};

struct BuildOptions {
    uint64_t point_budget = 1'000'000;
};

struct Frame {
    // points a[i], b[i] with a[i] collinear with b[j] exactly when i != j
    std::vector<uint32_t> a, b;
    size_t rank() const { return a.size(); }
    std::vector<uint32_t> all_points() const;
};

class PolarSpace {
public:
    FieldPtr field_handle;
    const FiniteField* f = nullptr;
    QuadraticForm<FiniteField> form;
    BilinearForm<FiniteField> bil;
    WittDecomposition<FiniteField> witt;
    GapReport gap;
    uint32_t rank = 0;

    std::vector<std::vector<uint8_t>> pts; // normalized coordinates, canonical order
    std::vector<DynBitset> perp_rows;      // x^perp as a bitset, includes x itself
    std::vector<std::vector<uint32_t>> lines;         // sorted point indices, lines sorted
    std::vector<std::vector<uint32_t>> lines_through; // per point

    size_t npoints() const { return pts.size(); }
    bool collinear(uint32_t a, uint32_t b) const { return a != b && perp_rows[a].test(b); }
    std::optional<uint32_t> index_of(std::span<const uint8_t> coords) const;
    /// Normalize an arbitrary nonzero vector to its point representative.
    std::vector<uint8_t> normalize(std::span<const uint8_t> v) const;

    DynBitset perp(const DynBitset& xs) const; // perp(empty) = all points
    DynBitset perp_pair(uint32_t a, uint32_t b) const;

    /// The line through two distinct collinear points.
    uint32_t pair_line(uint32_t a, uint32_t b) const;
    void ensure_pair_lines() const;

private:
    friend PolarSpace build_polar_space(FieldPtr field, QuadraticForm<FiniteField> form,
                                        const BuildOptions& opts);
    std::vector<uint64_t> keys_;
    std::vector<uint32_t> key_index_;
    mutable std::vector<uint32_t> pair_line_;
};

/// Enumerate the space of a non-degenerate form of Witt index >= 1.
/// Points stream in lead-coordinate order over normalized representatives.
PolarSpace build_polar_space(FieldPtr field, QuadraticForm<FiniteField> form,
                             const BuildOptions& opts = {});

enum class HypMethod { Synthetic, Algebraic };

/// The hyperbolic line {a,b}^perp-perp of two non-collinear points: double
/// perp (synthetic) or the singular points of span(a, b, Rad(f)) (algebraic).
DynBitset hyperbolic_line(const PolarSpace& ps, uint32_t a, uint32_t b,
                          HypMethod method = HypMethod::Synthetic);

// ---------------------------------------------------------------------------
// Subspaces of the point-line geometry, carried together with their linear span.
// ---------------------------------------------------------------------------

struct GeoSubspace {
    const PolarSpace* space = nullptr;
    DynBitset points;
    Subspace<FiniteField> span;

    size_t dim() const { return span.dim(); }
};

/// Points of the space lying in the given linear subspace.
GeoSubspace subspace_from_span(const PolarSpace& ps, Subspace<FiniteField> w);

/// Smallest line-closed point set containing xs, with the linear span of the
/// result attached.
GeoSubspace span_closure(const PolarSpace& ps, const DynBitset& xs);

/// Whether points = singular points of [span]; holds for every subspace this
/// library constructs (line-closed sets of non-degenerate rank >= 2 arise from
/// linear sections, and the small closures used here do as well).
bool section_coherent(const GeoSubspace& s);

/// The frame cut out by the Witt decomposition of the defining form.
Frame find_frame(const PolarSpace& ps);
bool frame_valid(const PolarSpace& ps, const Frame& fr);

/// Rank of the induced polar space on S: Witt index of the regular part of
/// the restricted form plus the dimension of its singular radical.
uint32_t subspace_rank(const GeoSubspace& s);

/// A subspace is nice when it contains a frame of the ambient space, i.e. the
/// restricted form is non-degenerate with full Witt index; the witness frame
/// is produced from the restricted Witt decomposition.
bool is_nice(const GeoSubspace& s);
std::optional<Frame> frame_within(const GeoSubspace& s);

enum class SubspaceClass { Hyperbolic, Elliptic, Other };
std::string to_string(SubspaceClass c);

/// Classification of a nice subspace: hyperbolic iff it equals the closure of
/// one of its frames; elliptic iff not hyperbolic and every hyperbolic line
/// computed inside S has exactly 2 points. Cross-checked against the radical
/// of the restricted bilinearization.
SubspaceClass classify_subspace(const GeoSubspace& s);

// ---------------------------------------------------------------------------
// Maximal singular subspaces and the two-point embedding criterion.
// ---------------------------------------------------------------------------

struct SingularSubspace {
    DynBitset points;
    Subspace<FiniteField> span;
};

/// All maximal totally singular subspaces whose points lie in `allowed`
/// (allowed must be the point set of a linear section, e.g. a perp).
std::vector<SingularSubspace> maximal_singulars(const PolarSpace& ps, const DynBitset& allowed);

/// All maximal singular subspaces of the whole space containing `base`.
std::vector<SingularSubspace> maximal_singulars_above(const PolarSpace& ps,
                                                      const SingularSubspace& base);

struct ConditionAWitness {
    uint32_t a = 0, b = 0;
    std::vector<uint32_t> n_points, m_points;
};

struct ConditionAResult {
    bool holds = true;
    std::optional<ConditionAWitness> witness;
};

/// For all non-collinear a, b; all maximal singular N of {a,b}^perp; all
/// maximal singular M of the space with N inside M: M must meet {a,b}^pp.
/// `work_budget` caps the number of (pair, N, M) probes.
ConditionAResult check_condition_A(const PolarSpace& ps, uint64_t work_budget = 400'000'000);

/// Deterministic text dump: header, form rows, point list, line list.
std::string export_geometry(const PolarSpace& ps);

} // namespace polar
