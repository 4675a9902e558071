#include "doctest.h"

#include "polar/field.hpp"
#include "polar/rng.hpp"

#include <set>

using namespace polar;

namespace {

// Independent oracle: naive bit-loop polynomial multiplication over GF(2),
// kept deliberately separate from Poly2's shifted-word implementation.
std::vector<int> naive_mul(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] ^= a[i] & b[j];
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<int> coeffs_of(const Poly2& p) {
    std::vector<int> r;
    for (int i = 0; i <= p.degree(); ++i) r.push_back(p.bit(size_t(i)) ? 1 : 0);
    return r;
}

FieldPtr gf(uint32_t p) { return Field::make({FieldKind::Prime, p, 1, {}, 64}); }

FieldPtr gf4() { return Field::make({FieldKind::Extension, 2, 2, {1, 1, 1}, 64}); }

FieldPtr f2t() { return Field::make({FieldKind::RationalFunction, 2, 1, {}, 64}); }

} // namespace

TEST_CASE("prime field arithmetic") {
    auto f3 = gf(3);
    auto two = parse_scalar(f3, "2");
    CHECK(to_string(add(two, two)) == "1");
    CHECK(to_string(mul(two, two)) == "1");
    CHECK(to_string(neg(two)) == "1");

    // a * inv(a) = 1 for every nonzero element of several fields
    for (uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
        auto fp = gf(p);
        auto elems = enumerate_elements(fp);
        CHECK(elems.size() == p);
        CHECK(is_zero(elems[0]));
        for (size_t i = 1; i < elems.size(); ++i)
            CHECK(to_string(mul(elems[i], inv(elems[i]))) == "1");
    }
}

TEST_CASE("extension field GF(4)") {
    auto f = gf4();
    auto x = parse_scalar(f, "0:1");
    CHECK(to_string(mul(x, x)) == "1:1"); // x^2 = x + 1 mod x^2+x+1
    auto elems = enumerate_elements(f);
    CHECK(elems.size() == 4);
    std::set<std::string> seen;
    for (const auto& e : elems) seen.insert(to_string(e));
    CHECK(seen.size() == 4);
    CHECK(is_zero(elems[0]));
    for (size_t i = 1; i < 4; ++i) CHECK(to_string(mul(elems[i], inv(elems[i]))) == "1:0");
}

TEST_CASE("field construction rejects bad input") {
    CHECK_THROWS_AS(Field::make({FieldKind::Prime, 6, 1, {}, 64}), FieldError);
    CHECK_THROWS_AS(Field::make({FieldKind::Extension, 2, 2, {1, 0, 1}, 64}), FieldError); // (x+1)^2
    CHECK_THROWS_AS(Field::make({FieldKind::Extension, 2, 7, {1, 1, 0, 0, 0, 0, 0, 1}, 64}),
                    FieldError); // 128 > 64
    CHECK_THROWS_AS(Field::make({FieldKind::Extension, 3, 2, {1, 1, 2}, 64}), FieldError); // not monic
    CHECK_NOTHROW(Field::make({FieldKind::Extension, 2, 6, {1, 1, 0, 0, 0, 0, 1}, 64}));   // GF(64)
}

TEST_CASE("F2(t) fraction arithmetic") {
    auto f = f2t();
    const auto& ff = f->function_field();
    auto inv_t = parse_scalar(f, "1/01");        // 1/t
    auto inv_t1 = parse_scalar(f, "1/11");       // 1/(t+1)
    auto sum = add(inv_t, inv_t1);
    CHECK(to_string(sum) == "1/011"); // 1/(t^2+t)

    // cross-multiplication oracle with independent naive polynomial product:
    // num(sum)*den(a)*den(b) == den(sum)*(num(a)*den(b) + num(b)*den(a))
    Frac a = std::get<Frac>(inv_t.value), b = std::get<Frac>(inv_t1.value),
         s = std::get<Frac>(sum.value);
    auto lhs = naive_mul(coeffs_of(s.num), naive_mul(coeffs_of(a.den), coeffs_of(b.den)));
    auto cross1 = naive_mul(coeffs_of(a.num), coeffs_of(b.den));
    auto cross2 = naive_mul(coeffs_of(b.num), coeffs_of(a.den));
    std::vector<int> cross(std::max(cross1.size(), cross2.size()), 0);
    for (size_t i = 0; i < cross1.size(); ++i) cross[i] ^= cross1[i];
    for (size_t i = 0; i < cross2.size(); ++i) cross[i] ^= cross2[i];
    while (!cross.empty() && cross.back() == 0) cross.pop_back();
    auto rhs = naive_mul(coeffs_of(s.den), cross);
    CHECK(lhs == rhs);

    CHECK_THROWS_AS(enumerate_elements(f), FieldError);
    CHECK_THROWS_WITH_AS(enumerate_elements(f), "F2T is not enumerable", FieldError);
    CHECK_THROWS_AS(inv(make_scalar(f, Frac{})), FieldError);

    // degree cap overflow is an error, not silent growth
    Frac t40 = ff.make(Poly2::monomial(40), Poly2::one());
    CHECK_THROWS_AS(ff.mul(t40, t40), FieldError);
}

TEST_CASE("F2(t) canonicalization is idempotent under random expressions") {
    auto f = f2t();
    const auto& ff = f->function_field();
    std::vector<Frac> pool;
    for (int i = 0; i < 8; ++i) {
        Poly2 n, d;
        Rng rng(1000 + uint64_t(i));
        for (int bit = 0; bit < 5; ++bit) {
            if (rng.below(2)) n.flip_bit(size_t(bit));
            if (rng.below(2)) d.flip_bit(size_t(bit));
        }
        if (d.is_zero()) d = Poly2::one();
        pool.push_back(ff.make(n, d));
    }
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        Frac acc = pool[rng.below(pool.size())];
        for (int step = 0; step < 5; ++step) {
            const Frac& next = pool[rng.below(pool.size())];
            acc = rng.below(2) ? ff.add(acc, next) : ff.mul(acc, next);
        }
        Frac recanon = ff.make(acc.num, acc.den);
        CHECK(recanon == acc);
        CHECK(Poly2::gcd(acc.num, acc.den) == Poly2::one());
    }
}

TEST_CASE("square testing") {
    SUBCASE("finite characteristic 2: Frobenius is onto") {
        for (auto f : {gf(2), gf4()}) {
            for (const auto& a : enumerate_elements(f)) {
                auto w = square_root(a);
                REQUIRE(w.has_value());
                CHECK(equal(mul(*w, *w), a));
            }
        }
    }
    SUBCASE("GF(3): squares enumerate to {0,1}") {
        auto f3 = gf(3);
        // oracle: squares by explicit enumeration
        std::set<std::string> squares;
        for (const auto& a : enumerate_elements(f3)) squares.insert(to_string(mul(a, a)));
        CHECK(squares == std::set<std::string>{"0", "1"});
        CHECK(!square_root(parse_scalar(f3, "2")).has_value());
        CHECK(square_root(parse_scalar(f3, "1")).has_value());
    }
    SUBCASE("odd characteristic counts: (p+1)/2 squares including zero") {
        for (uint32_t p : {3u, 5u, 7u, 11u}) {
            auto fp = gf(p);
            size_t count = 0;
            for (const auto& a : enumerate_elements(fp))
                if (square_root(a)) ++count;
            CHECK(count == (p + 1) / 2);
        }
    }
    SUBCASE("F2(t): t is not a square; squares have exact witnesses") {
        auto f = f2t();
        const auto& ff = f->function_field();
        CHECK(!ff.square_root(ff.t()).has_value());
        Frac t2 = ff.mul(ff.t(), ff.t());
        auto w = ff.square_root(t2);
        REQUIRE(w.has_value());
        CHECK(*w == ff.t());
    }
}

TEST_CASE("square_class_degree") {
    auto f8 = Field::make({FieldKind::Extension, 2, 3, {1, 1, 0, 1}, 64});
    CHECK(square_class_degree(*f8) == 1);
    CHECK(square_class_degree(*f2t()) == 2);
    CHECK_THROWS_AS(square_class_degree(*gf(3)), FieldError);
}

TEST_CASE("F2(t) square-class basis {1, t}: sampled decompositions a^2 + t b^2") {
    auto f = f2t();
    const auto& ff = f->function_field();
    // 1 and t are independent over the squares: t itself is not a square.
    CHECK(!ff.square_root(ff.t()).has_value());
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        Poly2 n, d;
        for (int bit = 0; bit < 7; ++bit) {
            if (rng.below(2)) n.flip_bit(size_t(bit));
            if (rng.below(2)) d.flip_bit(size_t(bit));
        }
        if (d.is_zero()) d = Poly2::one();
        Frac u = ff.make(n, d);
        auto [A, B] = ff.square_parts(u);
        Frac back = ff.add(ff.mul(A, A), ff.mul(ff.t(), ff.mul(B, B)));
        CHECK(back == u);
    }
}

TEST_CASE("usage errors carry the offending operands") {
    auto f2 = gf(2);
    auto f3 = gf(3);
    auto a = parse_scalar(f2, "1");
    auto b = parse_scalar(f3, "2");
    CHECK_THROWS_AS(add(a, b), FieldError);
    try {
        add(a, b);
    } catch (const FieldError& e) {
        std::string msg = e.what();
        CHECK(msg.find("GF 2") != std::string::npos);
        CHECK(msg.find("GF 3") != std::string::npos);
    }
    CHECK_THROWS_AS(div(a, parse_scalar(f2, "0")), FieldError);
}

TEST_CASE("field spec text round trip") {
    for (const char* text : {"GF 2", "GF 13", "GF 2^2 1,1,1", "GF 3^2 2,2,1", "F2T"}) {
        auto spec = parse_field_spec(text);
        CHECK(format_field_spec(spec) == text);
    }
    CHECK_THROWS_AS(parse_field_spec("QQ"), ParseError);
    CHECK_THROWS_AS(parse_field_spec("GF"), ParseError);
    CHECK_THROWS_AS(parse_field_spec("GF 2^2"), ParseError);
}
