#include "qeuclid/calculus.hpp"

#include <doctest.h>

#include <memory>

using namespace qeuclid;

namespace {

template <class F>
struct Setup {
    IndexData idx;
    BraidTensor<F> rhat;
    Projectors<F> P;
    std::unique_ptr<Algebra<F>> A;
    std::unique_ptr<Calculus<F>> un;
    std::unique_ptr<Calculus<F>> bar;

    Setup(int N, const F& f)
        : idx(N), rhat(build_rhat(idx, f)), P(spectral_projectors(rhat, idx, f))
    {
        A = std::make_unique<Algebra<F>>(idx, f, P.anti);
        un = std::make_unique<Calculus<F>>(*A, rhat, P, CalculusKind::unbarred);
        bar = std::make_unique<Calculus<F>>(*A, rhat, P, CalculusKind::barred);
    }
};

}  // namespace

TEST_CASE("cross relations at N = 3")
{
    SymbolicField f;
    Setup<SymbolicField> S(3, f);
    auto& C = *S.un;
    auto& A = *S.A;
    auto right = C.to_right(C.mul(A.x(1), C.xi(1)));
    REQUIRE(right.size() == 1);
    CHECK(right.at(1) == A.x(1).scaled(f.q_pow(2)));
    CHECK(C.from_right(right) == C.mul(A.x(1), C.xi(1)));

    // x^i xi^j = q R^{ij}_{kl} xi^k x^l for every pair
    for (int i : S.idx.labels()) {
        for (int j : S.idx.labels()) {
            FormElement<SymbolicField> rhs(1);
            for (const auto& [kl, c] : S.rhat.row(i, j)) {
                rhs += C.mul(C.xi(kl[0]), A.x(kl[1])).scaled(c * f.q_pow(1));
            }
            CHECK(C.is_zero(C.mul(A.x(i), C.xi(j)) - rhs));
        }
    }
    // Lambda and xi commute; Lambda d = q d Lambda.
    CHECK(C.mul(C.xi(1), A.lambda()) == C.mul(A.lambda(), C.xi(1)));
    CHECK(C.d(A.mul(A.lambda(), A.x(0))) == C.mul(A.lambda(), C.xi(0)).scaled(f.q_pow(-1)));
    CHECK(S.bar->d(A.mul(A.lambda(), A.x(0))) == S.bar->mul(A.lambda(), S.bar->xi(0)).scaled(f.q_pow(1)));
}

TEST_CASE("classical limit commutes")
{
    NumericField one(Gauss(1));
    IndexData idx(3);
    auto flip = build_rhat(idx, one);
    auto anti = (BraidTensor<NumericField>::identity(idx, one) - flip).scaled(Gauss(mpq_class(1, 2)));
    Projectors<NumericField> P{BraidTensor<NumericField>::identity(idx, one) - anti, anti,
                               BraidTensor<NumericField>(idx)};
    Algebra<NumericField> A(idx, one, anti);
    Calculus<NumericField> C(A, flip, P, CalculusKind::unbarred);
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            CHECK(C.mul(A.x(i), C.xi(j)) == C.mul(C.xi(j), A.x(i)));
            CHECK(C.is_zero(C.mul(C.xi(i), C.xi(j)) + C.mul(C.xi(j), C.xi(i))));
        }
    }
}

TEST_CASE("wedge relations")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        Setup<SymbolicField> S(N, f);
        for (auto* C : {S.un.get(), S.bar.get()}) {
            CHECK(C->basis().size() == static_cast<std::size_t>(N * (N - 1) / 2));
            const auto& g = S.A->metric();
            FormElement<SymbolicField> trace(2);
            for (int i : S.idx.labels()) {
                trace += C->mul(C->xi(i), C->xi(-i)).scaled(g.at(i, -i));
            }
            CHECK(C->is_zero(trace));
            // xi^n xi^n is purely symmetric
            CHECK(C->is_zero(C->mul(C->xi(S.idx.n()), C->xi(S.idx.n()))));
            // symmetric projector kills, antisymmetric projector reproduces
            for (int i : S.idx.labels()) {
                for (int j : S.idx.labels()) {
                    FormElement<SymbolicField> sym(2), anti(2);
                    for (const auto& [kl, c] : S.P.sym.row(i, j)) {
                        sym += C->wedge(S.A->constant(c), kl[0], kl[1]);
                    }
                    for (const auto& [kl, c] : S.P.anti.row(i, j)) {
                        anti += C->wedge(S.A->constant(c), kl[0], kl[1]);
                    }
                    CHECK(C->is_zero(sym));
                    CHECK(C->is_zero(anti - C->wedge(S.A->one(), i, j)));
                }
            }
            auto w = C->mul(C->mul(S.A->x(1), C->xi(S.idx.n())), C->xi(-1));
            CHECK(C->wedge_reduce(w) == w);
        }
    }
    Setup<SymbolicField> S(3, f);
    CHECK(S.un->mul(S.un->xi(1), S.un->xi(1)).empty());
}

TEST_CASE("exterior derivative")
{
    SymbolicField f;
    for (int N = 3; N <= 4; ++N) {
        Setup<SymbolicField> S(N, f);
        auto& A = *S.A;
        for (auto* C : {S.un.get(), S.bar.get()}) {
            for (int i : S.idx.labels()) {
                CHECK(C->d(A.x(i)) == C->xi(i));
                for (int j : S.idx.labels()) {
                    auto xij = A.mul(A.x(i), A.x(j));
                    auto leibniz = C->mul(C->xi(i), A.x(j)) + C->mul(A.x(i), C->xi(j));
                    CHECK(C->is_zero(C->d(xij) - leibniz));
                    CHECK(C->is_zero(C->d(C->d(xij))));
                    for (int k : S.idx.labels()) {
                        auto e = A.mul(A.lambda(2), A.mul(xij, A.x(k)));
                        CHECK(C->is_zero(C->d(C->d(e))));
                    }
                }
            }
            // d of a relation vanishes
            for (int i : S.idx.labels()) {
                for (int j : S.idx.labels()) {
                    FormElement<SymbolicField> rel(1);
                    for (const auto& [kl, c] : S.P.anti.row(i, j)) {
                        rel += (C->mul(C->xi(kl[0]), A.x(kl[1])) + C->mul(A.x(kl[0]), C->xi(kl[1]))).scaled(c);
                    }
                    CHECK(C->is_zero(rel));
                }
            }
            // d(r_n^2) = g_{kl}(xi^k x^l + x^k xi^l)
            const auto& g = A.metric();
            FormElement<SymbolicField> expect(1);
            for (int k : S.idx.labels()) {
                expect += (C->mul(C->xi(k), A.x(-k)) + C->mul(A.x(k), C->xi(-k))).scaled(g.at(k, -k));
            }
            CHECK(C->is_zero(C->d(A.radius_sq(S.idx.n())) - expect));
        }
        CHECK_THROWS_AS(S.un->d(A.x(1, -1)), AlgebraError);
        if (N == 4) {
            CHECK_THROWS_AS(S.un->d(A.kappa()), AlgebraError);
        }
    }
}

TEST_CASE("radius and 1-forms")
{
    SymbolicField f;
    Setup<SymbolicField> S3(3, f);
    CHECK_FALSE(S3.un->check_radius_exchange().has_value());
    CHECK_FALSE(S3.bar->check_radius_exchange().has_value());
    CHECK(S3.un->mul(S3.un->xi(1), S3.A->r(1)) == S3.un->mul(S3.A->r(1), S3.un->xi(1)).scaled(f.q_pow(-1)));

    Setup<SymbolicField> S4(4, f);
    auto w = S4.un->check_radius_exchange();
    REQUIRE(w.has_value());
    CHECK(w->i == 1);
    CHECK(std::abs(w->j) == 2);
    CHECK_THROWS_AS(S4.un->mul(S4.un->xi(2), S4.A->r(1)), AlgebraError);
    // K xi^{+-1} = q^{+-1} xi^{+-1} K
    auto& C = *S4.un;
    CHECK(C.mul(S4.A->kappa(), C.xi(1)) == C.mul(C.xi(1), S4.A->kappa()).scaled(f.q_pow(1)));
    CHECK(C.mul(S4.A->kappa(), C.xi(-1)) == C.mul(C.xi(-1), S4.A->kappa()).scaled(f.q_pow(-1)));
    CHECK(C.mul(S4.A->kappa(), C.xi(2)) == C.mul(C.xi(2), S4.A->kappa()));
}

TEST_CASE("conjugation exchanges the calculi")
{
    NumericField f(Gauss(mpq_class(3, 2)));
    for (int N = 3; N <= 4; ++N) {
        Setup<NumericField> S(N, f);
        auto& A = *S.A;
        auto& U = *S.un;
        auto& B = *S.bar;
        const auto& g = A.metric();
        for (int i : S.idx.labels()) {
            CHECK(conjugate(U.xi(i), U, B) == B.xi(-i).scaled(g.at(-i, i)));
            CHECK(conjugate(conjugate(U.xi(i), U, B), B, U) == U.xi(i));
            for (int j : S.idx.labels()) {
                // star of x^i xi^j - q R xi^k x^l is zero in the barred calculus
                std::vector<Letter> lhs{{Gen::x, i, 1}, {Gen::xi, j, 1}};
                auto image = conjugate_word(lhs, Gauss(1), B);
                for (const auto& [kl, c] : S.rhat.row(i, j)) {
                    std::vector<Letter> w{{Gen::xi, kl[0], 1}, {Gen::x, kl[1], 1}};
                    image -= conjugate_word(w, c * f.q_pow(1), B);
                }
                CHECK(B.is_zero(image));

                auto a = U.mul(A.mul(A.x(i), A.x(j)), U.xi(-i));
                CHECK(conjugate(conjugate(a, U, B), B, U) == a);
            }
        }
        if (N == 3) {
            CHECK(conjugate(U.xi(0), U, B) == B.xi(0));
        }
        CHECK_THROWS_AS(conjugate(U.xi(1), U, U), AlgebraError);
    }
}

TEST_CASE("form text round trip")
{
    SymbolicField f;
    Setup<SymbolicField> S(3, f);
    auto& C = *S.un;
    auto a = C.parse("x1*xi0 - q*L^-1*x0*xi1 + 2*x1*x-1*xi-1");
    CHECK(C.parse(C.to_string(a)) == a);
    auto b = C.mul(C.parse("x1*xi0"), C.parse("xi-1"));
    CHECK(C.parse(C.to_string(b)) == b);
    CHECK(C.parse("xi1*x1") == C.mul(C.xi(1), S.A->x(1)));
    CHECK(C.parse("0").empty());
    CHECK_THROWS_AS(C.parse("xibar1"), AlgebraError);
    CHECK(S.bar->parse("xibar1*x1") == S.bar->mul(S.bar->xi(1), S.A->x(1)));
}
