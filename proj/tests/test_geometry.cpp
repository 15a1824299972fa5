#include "qeuclid/geometry.hpp"

#include <doctest.h>

#include <memory>

using namespace qeuclid;

namespace {

template <class F>
struct Geo {
    IndexData idx;
    F f;
    BraidTensor<F> rhat;
    Projectors<F> P;
    BraidTensor<F> rinv;
    std::unique_ptr<Algebra<F>> A;

    Geo(int N, const F& field)
        : idx(N), f(field), rhat(build_rhat(idx, f)), P(spectral_projectors(rhat, idx, f)),
          rinv(rhat_inverse(P, idx, f)), A(std::make_unique<Algebra<F>>(idx, f, P.anti))
    {
    }

    BraidTensor<F> sigma(SigmaVariant v) const { return build_sigma(idx, f, rhat, rinv, v).S; }
};

const SigmaVariant variants[] = {SigmaVariant::q_rhat, SigmaVariant::q_rhat_inverse};
const CalculusKind kinds[] = {CalculusKind::unbarred, CalculusKind::barred};

}  // namespace

TEST_CASE("sigma spectrum and torsion bilinearity")
{
    SymbolicField f;
    for (int N = 3; N <= 4; ++N) {
        Geo<SymbolicField> G(N, f);
        for (auto v : variants) {
            auto S = G.sigma(v);
            CHECK_FALSE(check_torsion_bilinearity(S, G.P, G.idx, f).has_value());
            CHECK_FALSE(verify_braid(S, G.idx).has_value());
            auto mu = sigma_plus_one_spectrum(S, G.P);
            REQUIRE(mu.has_value());
            CHECK((*mu)[1] == Scalar(0));
            if (v == SigmaVariant::q_rhat) {
                CHECK((*mu)[0] == f.q_pow(2) + Scalar(1));
                CHECK((*mu)[2] == f.q_pow(2 - N) + Scalar(1));
            }
        }
        // S = q^2 R-hat leaves a P_a component
        CHECK(check_torsion_bilinearity(G.rhat.scaled(f.q_pow(2)), G.P, G.idx, f).has_value());
        CHECK(check_torsion_bilinearity(G.rhat, G.P, G.idx, f).has_value());
    }
    CHECK(to_string(SigmaVariant::q_rhat_inverse) == "(qR)^-1");
    CHECK(parse_sigma_variant("qR") == SigmaVariant::q_rhat);
    CHECK_THROWS(parse_sigma_variant("R"));
}

TEST_CASE("metric compatibility up to q^{+-2}")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        Geo<SymbolicField> G(N, f);
        auto up = metric_compatibility(G.sigma(SigmaVariant::q_rhat), G.A->metric(), G.idx);
        auto down = metric_compatibility(G.sigma(SigmaVariant::q_rhat_inverse), G.A->metric(), G.idx);
        REQUIRE(up.factor.has_value());
        REQUIRE(down.factor.has_value());
        CHECK(*up.factor == f.q_pow(2));
        CHECK(*down.factor == f.q_pow(-2));
        CHECK_FALSE(up.factor_swapped.has_value());
        CHECK_FALSE(down.factor_swapped.has_value());
    }
    // classical limit: the flip is exactly compatible
    NumericField one(Gauss(1));
    IndexData idx(3);
    auto flip = build_rhat(idx, one);
    auto c = metric_compatibility(flip, build_metric(idx, one), idx);
    REQUIRE(c.factor.has_value());
    CHECK(*c.factor == Gauss(1));
}

TEST_CASE("torsion, Leibniz and curvature")
{
    SymbolicField f;
    for (int N = 3; N <= 4; ++N) {
        Geo<SymbolicField> G(N, f);
        for (auto kind : kinds) {
            Calculus<SymbolicField> C(*G.A, G.rhat, G.P, kind);
            auto lam = build_lambda(*G.A, kind, resolve_gammas(G.idx, kind, {}));
            auto fr = build_frame(C, lam);
            CHECK_FALSE(check_coordinate_metric(C, lam).has_value());
            for (auto v : variants) {
                CAPTURE(N);
                CAPTURE(to_string(v));
                auto S = G.sigma(v);
                CHECK_FALSE(check_torsion(C, lam, fr, S).has_value());
                CHECK_FALSE(check_right_leibniz(*G.A, lam, S).has_value());
                CHECK_FALSE(check_curvature(*G.A, G.P, lam, S).has_value());
                CHECK_FALSE(check_coordinate_sigma(*G.A, lam, S).has_value());
            }
            auto wrong = check_curvature(*G.A, G.P, lam, G.rhat);
            REQUIRE(wrong.has_value());
            CHECK(wrong->find("Curv(theta^") == 0);
            CHECK(check_torsion(C, lam, fr, G.rhat.scaled(f.q_pow(2))).has_value());
        }
    }
}

TEST_CASE("curvature numerically at N = 5")
{
    Geo<NumericField> G(5, NumericField(Gauss(mpq_class(3, 2))));
    for (auto kind : kinds) {
        auto lam = build_lambda(*G.A, kind, resolve_gammas(G.idx, kind, {}));
        for (auto v : variants) {
            CHECK_FALSE(check_curvature(*G.A, G.P, lam, G.sigma(v)).has_value());
        }
    }
}

TEST_CASE("connection coefficients")
{
    Geo<SymbolicField> G(3, SymbolicField{});
    auto lam = build_lambda(*G.A, CalculusKind::unbarred, resolve_gammas(G.idx, CalculusKind::unbarred, {}));
    auto S = G.sigma(SigmaVariant::q_rhat);
    auto conn = connection(*G.A, lam, S);
    // A^a_{cd} = lambda_c delta^a_d - lambda_b S^{ab}_{cd}
    for (int a : G.idx.labels()) {
        for (int c : G.idx.labels()) {
            for (int d : G.idx.labels()) {
                Element<SymbolicField> want = a == d ? lam.lambda.at(c) : Element<SymbolicField>();
                for (int b : G.idx.labels()) {
                    want -= lam.lambda.at(b).scaled(S.at(a, b, c, d));
                }
                auto it = conn.find({a, c, d});
                auto got = it == conn.end() ? Element<SymbolicField>() : it->second;
                CHECK(got == want);
            }
        }
    }
}
