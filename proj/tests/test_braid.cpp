#include "qeuclid/braid.hpp"
#include "qeuclid/constants.hpp"

#include <doctest.h>

using namespace qeuclid;

TEST_CASE("metric entries")
{
    SymbolicField f;
    // Our orientation has rho_i < 0 for i > 0, so g_{1,-1} = q^{1/2} at N = 3.
    auto g3 = build_metric(IndexData(3), f);
    CHECK(g3.entries.size() == 3);
    CHECK(g3.at(1, -1) == f.s_pow(1));
    CHECK(g3.at(0, 0) == Scalar(1));
    CHECK(g3.at(-1, 1) == f.s_pow(-1));
    CHECK(g3.at(1, 1).is_zero());

    auto g4 = build_metric(IndexData(4), f);
    CHECK(g4.at(2, -2) == f.q_pow(1));
    CHECK(g4.at(1, -1) == Scalar(1));
    CHECK(g4.at(-1, 1) == Scalar(1));
    CHECK(g4.at(-2, 2) == f.q_pow(-1));

    for (int N = 3; N <= 6; ++N) {
        IndexData idx(N);
        auto g = build_metric(idx, f);
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                Scalar acc;
                for (int k : idx.labels()) {
                    acc += g.at(i, k) * g.at(k, j);
                }
                CHECK(acc == Scalar(i == j ? 1 : 0));
            }
        }
    }

    NumericField one(Gauss(1));
    auto gc = build_metric(IndexData(5), one);
    for (const auto& [ij, v] : gc.entries) {
        CHECK(v == Gauss(1));
        CHECK(ij[0] == -ij[1]);
    }
}

TEST_CASE("braid and characteristic identities, N = 3..5")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        IndexData idx(N);
        auto R = build_rhat(idx, f);
        CHECK_FALSE(verify_braid(R, idx).has_value());
        CHECK_FALSE(verify_characteristic(R, idx, f).has_value());
    }
}

TEST_CASE("projector ranks and resolution of identity")
{
    SymbolicField f;
    for (int N = 3; N <= 5; ++N) {
        IndexData idx(N);
        auto R = build_rhat(idx, f);
        auto P = spectral_projectors(R, idx, f);
        long s = N * (N + 1) / 2 - 1, a = N * (N - 1) / 2;
        CHECK(trace(P.sym, idx, f) == Scalar(s));
        CHECK(trace(P.anti, idx, f) == Scalar(a));
        CHECK(trace(P.trace, idx, f) == Scalar(1));
        if (N == 3) {
            CHECK(rank(P.sym, idx, f) == 5);
            CHECK(rank(P.anti, idx, f) == 3);
            CHECK(rank(P.trace, idx, f) == 1);
        }
        auto one = BraidTensor<SymbolicField>::identity(idx, f);
        CHECK(P.sym + P.anti + P.trace == one);
        CHECK(P.sym * P.sym == P.sym);
        CHECK(P.anti * P.anti == P.anti);
        CHECK((P.sym * P.anti).is_zero());
        CHECK((P.anti * P.trace).is_zero());
        CHECK((P.trace * P.sym).is_zero());
        CHECK(R * rhat_inverse(P, idx, f) == one);
    }
}

TEST_CASE("trace projector is g (x) g over the norm")
{
    SymbolicField f;
    CHECK(metric_norm(IndexData(3), f) == f.q_pow(1) + Scalar(1) + f.q_pow(-1));
    for (int N = 3; N <= 5; ++N) {
        IndexData idx(N);
        auto P = spectral_projectors(build_rhat(idx, f), idx, f);
        auto g = build_metric(idx, f);
        Scalar norm = metric_norm(idx, f);
        for (int i : idx.labels()) {
            for (int j : idx.labels()) {
                for (int k : idx.labels()) {
                    for (int l : idx.labels()) {
                        CHECK(P.trace.at(i, j, k, l) == g.at(i, j) * g.at(k, l) / norm);
                    }
                }
            }
        }
    }
}

TEST_CASE("highest weight vector and classical limit")
{
    SymbolicField f;
    IndexData idx(4);
    auto R = build_rhat(idx, f);
    int n = idx.n();
    for (int i : idx.labels()) {
        for (int j : idx.labels()) {
            Scalar expect = (i == n && j == n) ? f.q_pow(1) : Scalar(0);
            CHECK(R.at(i, j, n, n) == expect);
        }
    }

    NumericField classical(Gauss(1));
    for (int N = 3; N <= 6; ++N) {
        IndexData id(N);
        auto Rc = build_rhat(id, classical);
        for (const auto& [key, v] : Rc.entries()) {
            CHECK(key[0] == key[3]);
            CHECK(key[1] == key[2]);
            CHECK(v == Gauss(1));
        }
        CHECK(Rc.entries().size() == static_cast<std::size_t>(N * N));
        CHECK_THROWS_AS(spectral_projectors(Rc, id, classical), DegenerateQ);
    }
}

TEST_CASE("numeric mode agrees with symbolic mode")
{
    SymbolicField f;
    for (long s0 : {2L, 3L, -5L}) {
        NumericField nf(Gauss(mpq_class(s0, 3)));
        IndexData idx(4);
        auto R = build_rhat(idx, f);
        auto Rn = build_rhat(idx, nf);
        for (const auto& [key, v] : R.entries()) {
            CHECK(nf.lift(v) == Rn.at(key[0], key[1], key[2], key[3]));
        }
        CHECK_FALSE(verify_braid(Rn, idx).has_value());
        CHECK_FALSE(verify_characteristic(Rn, idx, nf).has_value());
    }
}

TEST_CASE("perturbed entry breaks the braid relation")
{
    SymbolicField f;
    IndexData idx(3);
    auto R = build_rhat(idx, f);
    R.add(1, 0, 0, 1, const_k(f));
    auto w = verify_braid(R, idx);
    REQUIRE(w.has_value());
    CHECK(w->component.size() == 6);
    CHECK(verify_characteristic(R, idx, f).has_value());
}

TEST_CASE("json round trip")
{
    SymbolicField f;
    IndexData idx(3);
    auto R = build_rhat(idx, f);
    auto text = braid_to_json(R);
    auto back = braid_from_json(text);
    CHECK(back == R);
    CHECK(back.N() == 3);
    CHECK(braid_to_json(back) == text);
}
