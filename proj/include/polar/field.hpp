#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace polar {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Usage errors at the field level: mismatched fields, division by zero,
/// invalid construction parameters, degree-cap overflow.
class FieldError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DegenerateFormError : public Error {
public:
    using Error::Error;
};

/// A bounded search over F2(t) ran out of budget without a certificate.
class InconclusiveError : public Error {
public:
    using Error::Error;
};

class BudgetError : public Error {
public:
    using Error::Error;
};

/// A property that must hold by theory failed in computation.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Polynomials over GF(2), bit-packed little-endian (bit i = coefficient of t^i).
// ---------------------------------------------------------------------------

class Poly2 {
public:
    Poly2() = default;

    static Poly2 one();
    static Poly2 t();
    static Poly2 monomial(size_t d);
    /// Parse a coefficient string, constant term first: "011" = t + t^2.
    static Poly2 parse_bits(std::string_view s);

    bool is_zero() const { return words_.empty(); }
    int degree() const; // -1 for the zero polynomial
    bool bit(size_t i) const;
    void flip_bit(size_t i);
    Poly2 shifted_left(size_t s) const;

    /// True iff the polynomial lies in GF(2)[t^2], i.e. all odd coefficients vanish.
    bool is_square() const;
    /// Square root of a square polynomial (coefficient compression).
    Poly2 sqrt_exact() const;
    /// Split p = E(t^2) + t*O(t^2) and return (sqrt(E), sqrt(O)).
    std::pair<Poly2, Poly2> even_odd_sqrt() const;

    std::string bits() const; // constant term first; "0" for zero

    friend bool operator==(const Poly2&, const Poly2&) = default;
    static int cmp(const Poly2& a, const Poly2& b); // by degree, then coefficients
    friend bool operator<(const Poly2& a, const Poly2& b) { return cmp(a, b) < 0; }

    Poly2& operator^=(const Poly2& o);
    friend Poly2 operator+(Poly2 a, const Poly2& b) { a ^= b; return a; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b);

    static Poly2 mod(const Poly2& a, const Poly2& b);
    static Poly2 gcd(Poly2 a, Poly2 b);

private:
    std::vector<uint64_t> words_; // invariant: no trailing zero word
    void trim();
};

struct Poly2DivMod {
    Poly2 quot, rem;
};
Poly2DivMod poly2_divmod(const Poly2& a, const Poly2& b);

// ---------------------------------------------------------------------------
// F2(t): reduced fractions of GF(2)-polynomials.
// ---------------------------------------------------------------------------

/// Canonical fraction: gcd(num, den) = 1, den nonzero. Zero is 0/1.
struct Frac {
    Poly2 num;
    Poly2 den = Poly2::one();
    friend bool operator==(const Frac&, const Frac&) = default;
};

class FunctionField {
public:
    using Element = Frac;
    static constexpr bool finite = false;

    explicit FunctionField(uint32_t degree_cap = 64) : cap_(degree_cap) {}

    uint32_t characteristic() const { return 2; }
    uint32_t degree_cap() const { return cap_; }

    Element zero() const { return Frac{}; }
    Element one() const { return Frac{Poly2::one()}; }
    Element t() const { return Frac{Poly2::t()}; }

    /// Canonicalize num/den; throws on zero denominator or degree overflow.
    Element make(Poly2 num, Poly2 den) const;

    bool is_zero(const Element& a) const { return a.num.is_zero(); }
    Element add(const Element& a, const Element& b) const;
    Element sub(const Element& a, const Element& b) const { return add(a, b); }
    Element neg(const Element& a) const { return a; }
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }

    /// Square witness: u is a square iff both num and den lie in GF(2)[t^2].
    std::optional<Element> square_root(const Element& a) const;
    /// Exact decomposition u = A^2 + t*B^2 over the square subfield basis {1, t}.
    std::pair<Element, Element> square_parts(const Element& a) const;

    std::string format(const Element& a) const;
    Element parse(std::string_view s) const;

private:
    uint32_t cap_;
    void check_cap(const Element& a) const;
};

// ---------------------------------------------------------------------------
// Finite fields GF(p^k), p^k <= 64, with full arithmetic tables.
// Elements are enumeration indices: index = sum c_i * p^i over the coefficient
// vector (c_0, ..., c_{k-1}), so 0 is zero and 1 is one, zero first overall.
// ---------------------------------------------------------------------------

class FiniteField {
public:
    using Element = uint8_t;
    static constexpr bool finite = true;
    static constexpr uint32_t max_order = 64;

    /// Prime field GF(p).
    explicit FiniteField(uint32_t p);
    /// Extension field GF(p^k) with monic irreducible modulus, constant term first,
    /// length k+1. Irreducibility is verified by trial division.
    FiniteField(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus);

    uint32_t p() const { return p_; }
    uint32_t degree() const { return k_; }
    uint32_t q() const { return q_; }
    uint32_t characteristic() const { return p_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    Element zero() const { return 0; }
    Element one() const { return 1; }
    bool is_zero(Element a) const { return a == 0; }

    Element add(Element a, Element b) const { return add_[size_t(a) * q_ + b]; }
    Element sub(Element a, Element b) const { return add(a, neg(b)); }
    Element mul(Element a, Element b) const { return mul_[size_t(a) * q_ + b]; }
    Element neg(Element a) const { return neg_[a]; }
    Element inv(Element a) const;
    Element div(Element a, Element b) const { return mul(a, inv(b)); }
    Element pow(Element a, uint64_t e) const;

    /// Coefficient vector over GF(p), length k, constant term first.
    std::vector<uint32_t> digits(Element a) const;
    Element from_digits(std::span<const uint32_t> d) const;

    std::optional<Element> square_root(Element a) const;
    /// Inverse of the Frobenius x -> x^p (finite fields are perfect).
    Element pth_root(Element a) const { return proot_[a]; }

    std::string format(Element a) const;
    Element parse(std::string_view s) const;

private:
    uint32_t p_ = 0, k_ = 1, q_ = 0;
    std::vector<uint32_t> modulus_;
    std::vector<Element> add_, mul_, neg_, inv_, sqrt_, proot_;
    std::vector<uint8_t> has_sqrt_;
    void build_tables();
};

// ---------------------------------------------------------------------------
// Field descriptor + runtime facade over the two implementations.
// ---------------------------------------------------------------------------

enum class FieldKind { Prime, Extension, RationalFunction };

struct FieldSpec {
    FieldKind kind = FieldKind::Prime;
    uint32_t p = 2;
    uint32_t degree = 1;
    std::vector<uint32_t> modulus;   // extension only, constant term first
    uint32_t f2t_degree_cap = 64;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Text syntax: "GF p", "GF p^k c0,c1,...,ck", "F2T".
FieldSpec parse_field_spec(std::string_view text);
std::string format_field_spec(const FieldSpec& spec);

class Field {
public:
    static std::shared_ptr<const Field> make(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }
    bool is_finite() const { return spec_.kind != FieldKind::RationalFunction; }
    uint32_t characteristic() const;
    const FiniteField& finite_field() const;
    const FunctionField& function_field() const;
    std::string describe() const { return format_field_spec(spec_); }

private:
    FieldSpec spec_;
    std::optional<FiniteField> fin_;
    std::optional<FunctionField> fun_;
    Field() = default;
};

using FieldPtr = std::shared_ptr<const Field>;

// ---------------------------------------------------------------------------
// Checked element values for the API boundary (file parsing, CLI, tests).
// Arithmetic kernels operate on raw Element types through the field objects;
// Scalar adds owner tracking so misuse is reported with the offending operands.
// ---------------------------------------------------------------------------

struct Scalar {
    FieldPtr owner;
    std::variant<FiniteField::Element, Frac> value;
};

Scalar add(const Scalar& a, const Scalar& b);
Scalar sub(const Scalar& a, const Scalar& b);
Scalar mul(const Scalar& a, const Scalar& b);
Scalar div(const Scalar& a, const Scalar& b);
Scalar neg(const Scalar& a);
Scalar inv(const Scalar& a);
bool is_zero(const Scalar& a);
bool equal(const Scalar& a, const Scalar& b);
std::string to_string(const Scalar& a);

Scalar make_scalar(const FieldPtr& f, FiniteField::Element e);
Scalar make_scalar(const FieldPtr& f, Frac e);
Scalar parse_scalar(const FieldPtr& f, std::string_view literal);

/// All elements of a finite field in canonical order, zero first.
/// Throws FieldError("not enumerable") for F2(t).
std::vector<Scalar> enumerate_elements(const FieldPtr& f);

/// Square decision with witness b, b*b = a.
std::optional<Scalar> square_root(const Scalar& a);

/// [K:K^2] as a K^2-vector-space dimension: 1 for finite fields of
/// characteristic 2, 2 for F2(t). Undefined (throws) in odd characteristic.
uint32_t square_class_degree(const Field& f);

} // namespace polar
