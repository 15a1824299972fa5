#include "qeuclid/algebra.hpp"
#include "qeuclid/constants.hpp"

#include <doctest.h>

#include <memory>
#include <random>

using namespace qeuclid;

namespace {

template <class F>
std::unique_ptr<Algebra<F>> make_algebra(int N, const F& f)
{
    IndexData idx(N);
    auto P = spectral_projectors(build_rhat(idx, f), idx, f);
    return std::make_unique<Algebra<F>>(idx, f, P.anti);
}

template <class F>
Element<F> random_poly(const Algebra<F>& A, std::mt19937& rng, int terms, int degree)
{
    const auto& labels = A.index().labels();
    Element<F> out;
    for (int t = 0; t < terms; ++t) {
        Element<F> m = A.constant(A.field().from_int(static_cast<long>(rng() % 7) - 3));
        for (int d = 0; d < degree; ++d) {
            m = A.mul(m, A.x(labels[rng() % labels.size()]));
        }
        out += m;
    }
    return out;
}

}  // namespace

TEST_CASE("x rules at N = 3")
{
    SymbolicField f;
    auto A = make_algebra(3, f);
    const auto& rules = A->x_rules();
    REQUIRE(rules.size() == 3);
    const auto& r1 = rules.at({-1, 0});
    CHECK(r1.swap);
    CHECK(r1.rhs[0].first == f.q_pow(1));
    const auto& r2 = rules.at({0, 1});
    CHECK(r2.swap);
    CHECK(r2.rhs[0].first == f.q_pow(1));
    const auto& r3 = rules.at({-1, 1});
    CHECK_FALSE(r3.swap);
    CHECK(r3.rhs.size() == 2);
    bool has_mixed = false, has_square = false;
    for (const auto& [c, kl] : r3.rhs) {
        has_mixed |= kl == std::array<int, 2>{1, -1};
        has_square |= kl == std::array<int, 2>{0, 0};
    }
    CHECK(has_mixed);
    CHECK(has_square);

    // x^i x^j = q x^j x^i for i < j, j != -i, in the multiplication itself.
    CHECK(A->mul(A->x(0), A->x(1)) == A->mul(A->x(1), A->x(0)).scaled(f.q_pow(1)));
}

TEST_CASE("x rules at N = 4 and the classical limit")
{
    SymbolicField f;
    auto A = make_algebra(4, f);
    CHECK(A->x_rules().size() == 6);
    const auto& r = A->x_rules().at({-2, 2});
    CHECK(r.rhs.size() == 2);
    bool mixes = false;
    for (const auto& [c, kl] : r.rhs) {
        mixes |= kl == std::array<int, 2>{1, -1};
    }
    CHECK(mixes);
    CHECK(A->x_rules().at({-1, 1}).swap);

    NumericField one(Gauss(1));
    for (int N = 3; N <= 5; ++N) {
        IndexData idx(N);
        auto flip = build_rhat(idx, one);
        auto anti = (BraidTensor<NumericField>::identity(idx, one) - flip).scaled(Gauss(mpq_class(1, 2)));
        Algebra<NumericField> C(idx, one, anti);
        for (const auto& [ij, rule] : C.x_rules()) {
            CHECK(rule.swap);
            CHECK(rule.rhs[0].first == Gauss(1));
        }
    }
}

TEST_CASE("confluence of degree-3 overlaps")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        auto A = make_algebra(N, f);
        auto w = A->check_confluence();
        CHECK_FALSE(w.has_value());
    }
}

TEST_CASE("extended exchange rules")
{
    SymbolicField f;
    auto A = make_algebra(5, f);
    CHECK(A->mul(A->x(2), A->r(1)) == A->mul(A->r(1), A->x(2)).scaled(f.q_pow(-1)));
    CHECK(A->mul(A->x(-2), A->r(1)) == A->mul(A->r(1), A->x(-2)).scaled(f.q_pow(1)));
    CHECK(A->mul(A->x(1), A->r(1)) == A->mul(A->r(1), A->x(1)));
    CHECK(A->mul(A->x(-2), A->r(2)) == A->mul(A->r(2), A->x(-2)));
    for (int i : A->index().labels()) {
        CHECK(A->mul(A->lambda(), A->x(i)) == A->mul(A->x(i), A->lambda()).scaled(f.q_pow(-1)));
    }
    CHECK(A->mul(A->r(1), A->r(2)) == A->mul(A->r(2), A->r(1)));
    CHECK(A->mul(A->r(1), A->lambda()) == A->mul(A->lambda(), A->r(1)).scaled(f.q_pow(1)));

    auto B = make_algebra(4, f);
    CHECK(B->mul(B->kappa(), B->x(1)) == B->mul(B->x(1), B->kappa()).scaled(f.q_pow(1)));
    CHECK(B->mul(B->kappa(), B->x(-1)) == B->mul(B->x(-1), B->kappa()).scaled(f.q_pow(-1)));
    CHECK(B->mul(B->kappa(), B->x(2)) == B->mul(B->x(2), B->kappa()));
    CHECK(B->mul(B->kappa(), B->lambda()) == B->mul(B->lambda(), B->kappa()));
    CHECK(B->mul(B->kappa(), B->r(2)) == B->mul(B->r(2), B->kappa()));
    CHECK_THROWS_AS(A->kappa(), AlgebraError);
    CHECK_THROWS_AS(A->x(1, -1), AlgebraError);
    CHECK(A->r(0) == A->x(0));
}

TEST_CASE("normal form examples")
{
    SymbolicField f;
    auto A = make_algebra(3, f);
    CHECK(A->parse("x0*L") == A->parse("q*L*x0"));
    CHECK(A->to_string(A->parse("x0*L")) == "((s^2)/(1))*L*x0");
    CHECK(A->to_string(A->parse("x1*x1")) == "x1^2");

    auto e = A->parse("x1*x-1 - x-1*x1");
    REQUIRE(e.size() == 1);
    const auto& [m, c] = *e.terms().begin();
    CHECK(A->monomial_string(m) == "x0^2");
    CHECK_FALSE(c.is_zero());

    auto g = A->parse("x1*x-1 + 3*L^2*x0^-1*x-1");
    CHECK(A->parse(A->to_string(g)) == g);

    CHECK_THROWS_AS(A->parse("x2"), AlgebraError);
    CHECK_THROWS_AS(A->parse("x1 +"), std::invalid_argument);
}

TEST_CASE("exponent cap guards runaway input")
{
    SymbolicField f;
    auto A = make_algebra(3, f);
    A->set_exponent_cap(4);
    CHECK_THROWS_AS(A->pow(A->x(1), 5), AlgebraError);
}

TEST_CASE("zero test")
{
    SymbolicField f;
    auto A = make_algebra(3, f);
    const auto& g = A->metric();
    Element<SymbolicField> q;
    for (int k : A->index().labels()) {
        for (int l : A->index().labels()) {
            q += A->mul(A->x(k), A->x(l)).scaled(g.at(k, l));
        }
    }
    CHECK(A->is_zero(A->r(1, 2) - q));
    CHECK(A->is_zero(A->radius_sq(1) - q));
    CHECK_FALSE(A->is_zero(A->parse("x1*x-1 - q^2*x-1*x1")));
    CHECK(A->is_zero(A->mul(A->lambda(), A->lambda(-1)) - A->one()));
    CHECK(A->is_zero(A->mul(A->r(1, -1), q) - A->r(1)));
    CHECK(A->is_zero(A->mul(A->mul(A->r(1, -1), A->x(1)), A->r(1)) - A->x(1)));
    CHECK(A->is_zero(A->mul(A->x(0, -1), A->x(0)) - A->one()));
}

TEST_CASE("defining relations and radius exchange")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        IndexData idx(N);
        auto P = spectral_projectors(build_rhat(idx, f), idx, f);
        Algebra<SymbolicField> A(idx, f, P.anti);
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                Element<SymbolicField> rel;
                for (const auto& [kl, c] : P.anti.row(i, j)) {
                    rel += A.mul(A.x(kl[0]), A.x(kl[1])).scaled(c);
                }
                CHECK(A.is_zero(rel));
            }
        }
        CHECK_FALSE(A.check_radius_exchange().has_value());
    }
}

TEST_CASE("grading is preserved")
{
    SymbolicField f;
    auto A = make_algebra(4, f);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = A->mul(A->parse("L^2*K^-1*r1^-1"), random_poly(*A, rng, 3, 2));
        auto b = A->mul(random_poly(*A, rng, 3, 1), A->parse("K*r2*x1^-1"));
        auto p = A->mul(a, b);
        for (const auto& [m, c] : p.terms()) {
            auto d = A->degree(m);
            CHECK(d[0] == 2);
            CHECK(d[1] == 0);
            CHECK(d[2] == 2);
        }
    }
}

TEST_CASE("multiplication is associative")
{
    SymbolicField f;
    for (int N = 3; N <= 4; ++N) {
        auto A = make_algebra(N, f);
        std::mt19937 rng(N);
        for (int trial = 0; trial < 6; ++trial) {
            auto a = A->mul(random_poly(*A, rng, 2, 2), A->parse(N == 3 ? "L*r1^-1" : "L^-1*K*r1^-1*x1^-1"));
            auto b = random_poly(*A, rng, 2, 2);
            auto c = A->mul(A->r(1), random_poly(*A, rng, 2, 1));
            CHECK(A->is_zero(A->mul(A->mul(a, b), c) - A->mul(a, A->mul(b, c))));
        }
    }
}

TEST_CASE("star structure")
{
    NumericField f(Gauss(mpq_class(3, 2)));
    for (int N = 3; N <= 4; ++N) {
        auto A = make_algebra(N, f);
        const auto& g = A->metric();
        for (int i : A->index().labels()) {
            CHECK(A->star(A->x(i)) == A->x(-i).scaled(g.at(-i, i)));
            CHECK(A->star(A->star(A->x(i))) == A->x(i));
        }
        for (const auto& [ij, rule] : A->x_rules()) {
            auto image = A->mul(A->star(A->x(ij[1])), A->star(A->x(ij[0])));
            for (const auto& [c, kl] : rule.rhs) {
                image -= A->mul(A->star(A->x(kl[1])), A->star(A->x(kl[0]))).scaled(c.conj());
            }
            CHECK(A->is_zero(image));
        }
        std::mt19937 rng(5);
        for (int trial = 0; trial < 5; ++trial) {
            auto a = A->mul(A->parse("L*r1^-1"), random_poly(*A, rng, 2, 2));
            auto b = random_poly(*A, rng, 2, 2);
            CHECK(A->is_zero(A->star(A->mul(a, b)) - A->mul(A->star(b), A->star(a))));
            CHECK(A->is_zero(A->star(A->star(a)) - a));
        }
    }
    auto A3 = make_algebra(3, f);
    CHECK(A3->star(A3->x(0)) == A3->x(0));
    CHECK(A3->star(A3->x(1)) == A3->x(-1).scaled(f.s_pow(-1)));
    CHECK(A3->star(A3->lambda()) == A3->lambda(-1));

    NumericField complex_q(Gauss(1, 1));
    auto C = make_algebra(3, complex_q);
    CHECK_THROWS_AS(C->star(C->x(1)), AlgebraError);
}

TEST_CASE("numeric mode agrees with symbolic mode")
{
    SymbolicField f;
    auto A = make_algebra(4, f);
    auto e = A->parse("x-2*x2*x1 + L*r2^-1*x-1*x2 - K^-1*x-2*x-1^-1");
    for (long s0 : {2L, 5L, -3L}) {
        NumericField nf(Gauss(mpq_class(s0, 7)));
        auto B = make_algebra(4, nf);
        auto en = B->parse("x-2*x2*x1 + L*r2^-1*x-1*x2 - K^-1*x-2*x-1^-1");
        Element<NumericField> lifted;
        for (const auto& [m, c] : e.terms()) {
            lifted.add_term(m, nf.lift(c));
        }
        CHECK(lifted == en);
    }
}
