#include "polar/field.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

namespace polar {

// ---------------------------------------------------------------------------
// Poly2
// ---------------------------------------------------------------------------

void Poly2::trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

Poly2 Poly2::one() {
    Poly2 r;
    r.words_ = {1};
    return r;
}

Poly2 Poly2::t() {
    Poly2 r;
    r.words_ = {2};
    return r;
}

Poly2 Poly2::monomial(size_t d) {
    Poly2 r;
    r.flip_bit(d);
    return r;
}

int Poly2::degree() const {
    if (words_.empty()) return -1;
    return int(64 * (words_.size() - 1) + (63 - std::countl_zero(words_.back())));
}

bool Poly2::bit(size_t i) const {
    size_t w = i / 64;
    if (w >= words_.size()) return false;
    return (words_[w] >> (i % 64)) & 1;
}

void Poly2::flip_bit(size_t i) {
    size_t w = i / 64;
    if (w >= words_.size()) words_.resize(w + 1, 0);
    words_[w] ^= uint64_t(1) << (i % 64);
    trim();
}

Poly2& Poly2::operator^=(const Poly2& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (size_t i = 0; i < o.words_.size(); ++i) words_[i] ^= o.words_[i];
    trim();
    return *this;
}

Poly2 Poly2::shifted_left(size_t s) const {
    if (is_zero() || s == 0) {
        Poly2 r = *this;
        return r;
    }
    Poly2 r;
    size_t wshift = s / 64, bshift = s % 64;
    r.words_.assign(words_.size() + wshift + 1, 0);
    for (size_t i = 0; i < words_.size(); ++i) {
        r.words_[i + wshift] |= words_[i] << bshift;
        if (bshift) r.words_[i + wshift + 1] |= words_[i] >> (64 - bshift);
    }
    r.trim();
    return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 r;
    if (a.is_zero() || b.is_zero()) return r;
    int da = a.degree();
    for (int i = 0; i <= da; ++i)
        if (a.bit(size_t(i))) r ^= b.shifted_left(size_t(i));
    return r;
}

Poly2DivMod poly2_divmod(const Poly2& a, const Poly2& b) {
    if (b.is_zero()) throw FieldError("polynomial division by zero");
    Poly2 q, r = a;
    int db = b.degree();
    while (r.degree() >= db) {
        size_t s = size_t(r.degree() - db);
        q.flip_bit(s);
        r ^= b.shifted_left(s);
    }
    return {q, r};
}

Poly2 Poly2::mod(const Poly2& a, const Poly2& b) { return poly2_divmod(a, b).rem; }

Poly2 Poly2::gcd(Poly2 a, Poly2 b) {
    while (!b.is_zero()) {
        Poly2 r = mod(a, b);
        a = b;
        b = r;
    }
    if (a.is_zero()) return Poly2::one(); // gcd(0,0) treated as 1 to keep fractions sane
    return a;
}

bool Poly2::is_square() const {
    int d = degree();
    for (int i = 1; i <= d; i += 2)
        if (bit(size_t(i))) return false;
    return true;
}

Poly2 Poly2::sqrt_exact() const {
    Poly2 r;
    int d = degree();
    for (int i = 0; i <= d; i += 2)
        if (bit(size_t(i))) r.flip_bit(size_t(i) / 2);
    return r;
}

std::pair<Poly2, Poly2> Poly2::even_odd_sqrt() const {
    Poly2 e, o;
    int d = degree();
    for (int i = 0; i <= d; ++i) {
        if (!bit(size_t(i))) continue;
        if (i % 2 == 0)
            e.flip_bit(size_t(i) / 2);
        else
            o.flip_bit(size_t(i - 1) / 2);
    }
    return {e, o};
}

std::string Poly2::bits() const {
    if (is_zero()) return "0";
    int d = degree();
    std::string s(size_t(d) + 1, '0');
    for (int i = 0; i <= d; ++i)
        if (bit(size_t(i))) s[size_t(i)] = '1';
    return s;
}

Poly2 Poly2::parse_bits(std::string_view s) {
    if (s.empty()) throw ParseError("empty polynomial literal");
    Poly2 r;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1')
            r.flip_bit(i);
        else if (s[i] != '0')
            throw ParseError("bad polynomial literal '" + std::string(s) + "': expected bits");
    }
    return r;
}

int Poly2::cmp(const Poly2& a, const Poly2& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db ? -1 : 1;
    for (int i = da; i >= 0; --i) {
        bool ba = a.bit(size_t(i)), bb = b.bit(size_t(i));
        if (ba != bb) return bb ? -1 : 1;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// FunctionField
// ---------------------------------------------------------------------------

void FunctionField::check_cap(const Element& a) const {
    if (a.num.degree() > int(cap_) || a.den.degree() > int(cap_))
        throw FieldError("F2(t) degree cap " + std::to_string(cap_) +
                         " exceeded by " + format(a));
}

FunctionField::Element FunctionField::make(Poly2 num, Poly2 den) const {
    if (den.is_zero()) throw FieldError("F2(t) fraction with zero denominator");
    if (num.is_zero()) return Frac{};
    Poly2 g = Poly2::gcd(num, den);
    Frac r{poly2_divmod(num, g).quot, poly2_divmod(den, g).quot};
    check_cap(r);
    return r;
}

FunctionField::Element FunctionField::add(const Element& a, const Element& b) const {
    return make(a.num * b.den + b.num * a.den, a.den * b.den);
}

FunctionField::Element FunctionField::mul(const Element& a, const Element& b) const {
    return make(a.num * b.num, a.den * b.den);
}

FunctionField::Element FunctionField::inv(const Element& a) const {
    if (a.num.is_zero())
        throw FieldError("division by zero in F2(t)");
    return make(a.den, a.num);
}

std::optional<FunctionField::Element> FunctionField::square_root(const Element& a) const {
    if (!a.num.is_square() || !a.den.is_square()) return std::nullopt;
    return make(a.num.sqrt_exact(), a.den.sqrt_exact());
}

std::pair<FunctionField::Element, FunctionField::Element>
FunctionField::square_parts(const Element& a) const {
    // a = (num*den)/den^2; split the numerator over {1, t}.
    Poly2 nd = a.num * a.den;
    auto [se, so] = nd.even_odd_sqrt();
    Element A = make(se, a.den);
    Element B = make(so, a.den);
    return {A, B};
}

std::string FunctionField::format(const Element& a) const {
    if (a.den == Poly2::one()) return a.num.bits();
    return a.num.bits() + "/" + a.den.bits();
}

FunctionField::Element FunctionField::parse(std::string_view s) const {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return make(Poly2::parse_bits(s), Poly2::one());
    return make(Poly2::parse_bits(s.substr(0, slash)), Poly2::parse_bits(s.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// FiniteField
// ---------------------------------------------------------------------------

namespace {

bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Digit-vector polynomial arithmetic over GF(p), constant term first.
using PolyP = std::vector<uint32_t>;

void ptrim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP pmul(const PolyP& a, const PolyP& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    ptrim(r);
    return r;
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
    // p is a small prime
    uint32_t r = 1;
    for (uint32_t e = p - 2; e; e >>= 1) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
    }
    return r;
}

PolyP pmod(PolyP a, const PolyP& m, uint32_t p) {
    ptrim(a);
    uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        uint32_t c = a.back() * lead_inv % p;
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) {
            uint32_t sub = c * m[i] % p;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        ptrim(a);
        if (a.empty()) break;
    }
    return a;
}

std::string render_polyp(const PolyP& a) {
    std::string s;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(a[i]);
    }
    return s.empty() ? "0" : s;
}

} // namespace

FiniteField::FiniteField(uint32_t p) : p_(p), k_(1), q_(p) {
    if (!is_prime(p)) throw FieldError("GF(" + std::to_string(p) + "): characteristic is not prime");
    if (q_ > max_order)
        throw FieldError("GF(" + std::to_string(p) + ") exceeds the supported order " +
                         std::to_string(max_order));
    build_tables();
}

FiniteField::FiniteField(uint32_t p, uint32_t k, const std::vector<uint32_t>& modulus)
    : p_(p), k_(k), modulus_(modulus) {
    if (!is_prime(p)) throw FieldError("GF(" + std::to_string(p) + "^" + std::to_string(k) +
                                       "): characteristic is not prime");
    if (k < 2) throw FieldError("extension degree must be at least 2");
    uint64_t q = 1;
    for (uint32_t i = 0; i < k; ++i) q *= p;
    if (q > max_order)
        throw FieldError("GF(" + std::to_string(p) + "^" + std::to_string(k) +
                         ") exceeds the supported order " + std::to_string(max_order));
    q_ = uint32_t(q);
    if (modulus_.size() != k + 1)
        throw FieldError("modulus must have degree " + std::to_string(k) + " (" +
                         std::to_string(k + 1) + " coefficients)");
    for (uint32_t c : modulus_)
        if (c >= p) throw FieldError("modulus coefficient out of range for GF(" + std::to_string(p) + ")");
    if (modulus_.back() != 1) throw FieldError("modulus must be monic");

    // Irreducibility by trial division against every monic polynomial of
    // degree 1..k/2.
    for (uint32_t d = 1; d <= k / 2; ++d) {
        uint64_t count = 1;
        for (uint32_t i = 0; i < d; ++i) count *= p;
        for (uint64_t idx = 0; idx < count; ++idx) {
            PolyP g(d + 1, 0);
            uint64_t v = idx;
            for (uint32_t i = 0; i < d; ++i) {
                g[i] = uint32_t(v % p);
                v /= p;
            }
            g[d] = 1;
            if (pmod(modulus_, g, p).empty())
                throw FieldError("modulus " + render_polyp(modulus_) + " is reducible: divisible by " +
                                 render_polyp(g));
        }
    }
    build_tables();
}

std::vector<uint32_t> FiniteField::digits(Element a) const {
    std::vector<uint32_t> d(k_, 0);
    uint32_t v = a;
    for (uint32_t i = 0; i < k_; ++i) {
        d[i] = v % p_;
        v /= p_;
    }
    return d;
}

FiniteField::Element FiniteField::from_digits(std::span<const uint32_t> d) const {
    uint32_t v = 0, scale = 1;
    for (size_t i = 0; i < k_; ++i) {
        uint32_t c = i < d.size() ? d[i] : 0;
        if (c >= p_) throw FieldError("digit out of range for GF(" + std::to_string(p_) + ")");
        v += c * scale;
        scale *= p_;
    }
    return Element(v);
}

void FiniteField::build_tables() {
    add_.assign(size_t(q_) * q_, 0);
    mul_.assign(size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    sqrt_.assign(q_, 0);
    has_sqrt_.assign(q_, 0);
    proot_.assign(q_, 0);

    PolyP mod_poly(modulus_.begin(), modulus_.end());
    for (uint32_t a = 0; a < q_; ++a) {
        auto da = digits(Element(a));
        // negation
        std::vector<uint32_t> nd(k_);
        for (uint32_t i = 0; i < k_; ++i) nd[i] = (p_ - da[i]) % p_;
        neg_[a] = from_digits(nd);
        for (uint32_t b = 0; b < q_; ++b) {
            auto db = digits(Element(b));
            std::vector<uint32_t> sum(k_);
            for (uint32_t i = 0; i < k_; ++i) sum[i] = (da[i] + db[i]) % p_;
            add_[size_t(a) * q_ + b] = from_digits(sum);

            PolyP pa(da.begin(), da.end());
            ptrim(pa);
            PolyP pb(db.begin(), db.end());
            ptrim(pb);
            PolyP prod = pmul(pa, pb, p_);
            if (k_ > 1 && !prod.empty()) prod = pmod(prod, mod_poly, p_);
            if (k_ == 1 && !prod.empty()) prod = {prod[0] % p_};
            std::vector<uint32_t> pd(prod.begin(), prod.end());
            mul_[size_t(a) * q_ + b] = from_digits(pd);
        }
    }
    for (uint32_t a = 1; a < q_; ++a)
        for (uint32_t b = 1; b < q_; ++b)
            if (mul_[size_t(a) * q_ + b] == 1) {
                inv_[a] = Element(b);
                break;
            }
    // Canonical square root: least witness in enumeration order.
    for (uint32_t b = q_; b-- > 0;) {
        Element sq = mul_[size_t(b) * q_ + b];
        sqrt_[sq] = Element(b);
        has_sqrt_[sq] = 1;
    }
    for (uint32_t a = 0; a < q_; ++a) {
        Element r = Element(a);
        for (uint32_t i = 1; i < k_; ++i) r = pow(r, p_);
        proot_[a] = r; // r^p = a^(p^k) = a
    }
}

FiniteField::Element FiniteField::inv(Element a) const {
    if (a == 0) throw FieldError("division by zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

FiniteField::Element FiniteField::pow(Element a, uint64_t e) const {
    Element r = 1, base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

std::optional<FiniteField::Element> FiniteField::square_root(Element a) const {
    if (!has_sqrt_[a]) return std::nullopt;
    return sqrt_[a];
}

std::string FiniteField::format(Element a) const {
    if (k_ == 1) return std::to_string(uint32_t(a));
    auto d = digits(a);
    std::string s;
    for (uint32_t i = 0; i < k_; ++i) {
        if (i) s += ":";
        s += std::to_string(d[i]);
    }
    return s;
}

FiniteField::Element FiniteField::parse(std::string_view s) const {
    if (s.empty()) throw ParseError("empty field element literal");
    std::vector<uint32_t> d;
    size_t start = 0;
    while (start <= s.size()) {
        auto colon = s.find(':', start);
        std::string_view part = colon == std::string_view::npos ? s.substr(start)
                                                                : s.substr(start, colon - start);
        uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc() || ptr != part.data() + part.size())
            throw ParseError("bad field element literal '" + std::string(s) + "'");
        d.push_back(v % p_);
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (d.size() > k_)
        throw ParseError("element literal '" + std::string(s) + "' has more than " +
                         std::to_string(k_) + " coordinates");
    d.resize(k_, 0);
    return from_digits(d);
}

// ---------------------------------------------------------------------------
// FieldSpec parsing / facade
// ---------------------------------------------------------------------------

FieldSpec parse_field_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string head;
    in >> head;
    FieldSpec spec;
    if (head == "F2T") {
        std::string rest;
        if (in >> rest) throw ParseError("unexpected token '" + rest + "' after F2T");
        spec.kind = FieldKind::RationalFunction;
        spec.p = 2;
        return spec;
    }
    if (head != "GF") throw ParseError("unknown field kind '" + head + "' (expected GF or F2T)");
    std::string order;
    if (!(in >> order)) throw ParseError("missing field order after GF");
    auto caret = order.find('^');
    auto parse_u32 = [](std::string_view s, const char* what) {
        uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ParseError(std::string("bad ") + what + " '" + std::string(s) + "'");
        return v;
    };
    if (caret == std::string::npos) {
        spec.kind = FieldKind::Prime;
        spec.p = parse_u32(order, "characteristic");
        spec.degree = 1;
        std::string rest;
        if (in >> rest) throw ParseError("unexpected token '" + rest + "' after prime field spec");
        return spec;
    }
    spec.kind = FieldKind::Extension;
    spec.p = parse_u32(std::string_view(order).substr(0, caret), "characteristic");
    spec.degree = parse_u32(std::string_view(order).substr(caret + 1), "extension degree");
    std::string mods;
    if (!(in >> mods)) throw ParseError("extension field needs a modulus coefficient list");
    size_t start = 0;
    while (start <= mods.size()) {
        auto comma = mods.find(',', start);
        std::string part = comma == std::string::npos ? mods.substr(start)
                                                      : mods.substr(start, comma - start);
        spec.modulus.push_back(parse_u32(part, "modulus coefficient"));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return spec;
}

std::string format_field_spec(const FieldSpec& spec) {
    switch (spec.kind) {
    case FieldKind::Prime:
        return "GF " + std::to_string(spec.p);
    case FieldKind::Extension: {
        std::string s = "GF " + std::to_string(spec.p) + "^" + std::to_string(spec.degree) + " ";
        for (size_t i = 0; i < spec.modulus.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(spec.modulus[i]);
        }
        return s;
    }
    case FieldKind::RationalFunction:
        return "F2T";
    }
    return "?";
}

std::shared_ptr<const Field> Field::make(const FieldSpec& spec) {
    auto f = std::shared_ptr<Field>(new Field());
    f->spec_ = spec;
    switch (spec.kind) {
    case FieldKind::Prime:
        f->fin_.emplace(spec.p);
        break;
    case FieldKind::Extension:
        f->fin_.emplace(spec.p, spec.degree, spec.modulus);
        break;
    case FieldKind::RationalFunction:
        if (spec.p != 2)
            throw FieldError("rational function fields are only supported in characteristic 2");
        f->fun_.emplace(spec.f2t_degree_cap);
        break;
    }
    return f;
}

uint32_t Field::characteristic() const { return is_finite() ? fin_->characteristic() : 2; }

const FiniteField& Field::finite_field() const {
    if (!fin_) throw FieldError(describe() + " is not a finite field");
    return *fin_;
}

const FunctionField& Field::function_field() const {
    if (!fun_) throw FieldError(describe() + " is not a rational function field");
    return *fun_;
}

// ---------------------------------------------------------------------------
// Scalar layer
// ---------------------------------------------------------------------------

namespace {

void ensure_same_field(const Scalar& a, const Scalar& b, const char* op) {
    if (!a.owner || !b.owner) throw FieldError("scalar without an owning field");
    if (!(a.owner->spec() == b.owner->spec()))
        throw FieldError(std::string("mismatched fields in ") + op + ": " + to_string(a) + " in " +
                         a.owner->describe() + " vs " + to_string(b) + " in " + b.owner->describe());
}

template <class FinOp, class FunOp>
Scalar binary(const Scalar& a, const Scalar& b, const char* op, FinOp fin, FunOp fun) {
    ensure_same_field(a, b, op);
    if (a.owner->is_finite()) {
        const auto& f = a.owner->finite_field();
        return {a.owner, fin(f, std::get<FiniteField::Element>(a.value),
                             std::get<FiniteField::Element>(b.value))};
    }
    const auto& f = a.owner->function_field();
    return {a.owner, fun(f, std::get<Frac>(a.value), std::get<Frac>(b.value))};
}

} // namespace

Scalar add(const Scalar& a, const Scalar& b) {
    return binary(a, b, "add", [](auto& f, auto x, auto y) { return f.add(x, y); },
                  [](auto& f, auto& x, auto& y) { return f.add(x, y); });
}
Scalar sub(const Scalar& a, const Scalar& b) {
    return binary(a, b, "sub", [](auto& f, auto x, auto y) { return f.sub(x, y); },
                  [](auto& f, auto& x, auto& y) { return f.sub(x, y); });
}
Scalar mul(const Scalar& a, const Scalar& b) {
    return binary(a, b, "mul", [](auto& f, auto x, auto y) { return f.mul(x, y); },
                  [](auto& f, auto& x, auto& y) { return f.mul(x, y); });
}
Scalar div(const Scalar& a, const Scalar& b) {
    ensure_same_field(a, b, "div");
    if (is_zero(b))
        throw FieldError("division by zero: " + to_string(a) + " / " + to_string(b) + " in " +
                         a.owner->describe());
    return binary(a, b, "div", [](auto& f, auto x, auto y) { return f.div(x, y); },
                  [](auto& f, auto& x, auto& y) { return f.div(x, y); });
}
Scalar neg(const Scalar& a) {
    if (!a.owner) throw FieldError("scalar without an owning field");
    if (a.owner->is_finite())
        return {a.owner, a.owner->finite_field().neg(std::get<FiniteField::Element>(a.value))};
    return {a.owner, a.owner->function_field().neg(std::get<Frac>(a.value))};
}
Scalar inv(const Scalar& a) {
    if (!a.owner) throw FieldError("scalar without an owning field");
    if (is_zero(a))
        throw FieldError("inverse of zero in " + a.owner->describe());
    if (a.owner->is_finite())
        return {a.owner, a.owner->finite_field().inv(std::get<FiniteField::Element>(a.value))};
    return {a.owner, a.owner->function_field().inv(std::get<Frac>(a.value))};
}

bool is_zero(const Scalar& a) {
    if (a.owner->is_finite()) return std::get<FiniteField::Element>(a.value) == 0;
    return std::get<Frac>(a.value).num.is_zero();
}

bool equal(const Scalar& a, const Scalar& b) {
    ensure_same_field(a, b, "equal");
    return a.value == b.value;
}

std::string to_string(const Scalar& a) {
    if (!a.owner) return "?";
    if (a.owner->is_finite())
        return a.owner->finite_field().format(std::get<FiniteField::Element>(a.value));
    return a.owner->function_field().format(std::get<Frac>(a.value));
}

Scalar make_scalar(const FieldPtr& f, FiniteField::Element e) { return {f, e}; }
Scalar make_scalar(const FieldPtr& f, Frac e) { return {f, std::move(e)}; }

Scalar parse_scalar(const FieldPtr& f, std::string_view literal) {
    if (f->is_finite()) return {f, f->finite_field().parse(literal)};
    return {f, f->function_field().parse(literal)};
}

std::vector<Scalar> enumerate_elements(const FieldPtr& f) {
    if (!f->is_finite()) throw FieldError(f->describe() + " is not enumerable");
    const auto& ff = f->finite_field();
    std::vector<Scalar> out;
    out.reserve(ff.q());
    for (uint32_t i = 0; i < ff.q(); ++i) out.push_back({f, FiniteField::Element(i)});
    return out;
}

std::optional<Scalar> square_root(const Scalar& a) {
    if (a.owner->is_finite()) {
        auto r = a.owner->finite_field().square_root(std::get<FiniteField::Element>(a.value));
        if (!r) return std::nullopt;
        return Scalar{a.owner, *r};
    }
    auto r = a.owner->function_field().square_root(std::get<Frac>(a.value));
    if (!r) return std::nullopt;
    return Scalar{a.owner, *r};
}

uint32_t square_class_degree(const Field& f) {
    if (f.characteristic() != 2)
        throw FieldError("square-class degree undefined in odd characteristic (" + f.describe() + ")");
    return f.is_finite() ? 1 : 2;
}

} // namespace polar
