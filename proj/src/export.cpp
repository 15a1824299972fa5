#include "qeuclid/export.hpp"

#include <json.hpp>

#include <memory>
#include <stdexcept>

namespace qeuclid {

namespace {

using nlohmann::ordered_json;

struct Built {
    IndexData idx;
    SymbolicField f;
    BraidTensor<SymbolicField> rhat;
    Projectors<SymbolicField> P;
    std::unique_ptr<Algebra<SymbolicField>> A;

    explicit Built(int N)
        : idx(N), rhat(build_rhat(idx, f)), P(spectral_projectors(rhat, idx, f)),
          A(std::make_unique<Algebra<SymbolicField>>(idx, f, P.anti))
    {
    }
};

ordered_json tensor_entries(const BraidTensor<SymbolicField>& t)
{
    auto arr = ordered_json::array();
    for (const auto& [k, v] : t.entries()) {
        arr.push_back({k[0], k[1], k[2], k[3], v.to_string()});
    }
    return arr;
}

BraidTensor<SymbolicField> tensor_from(const IndexData& idx, const ordered_json& arr)
{
    BraidTensor<SymbolicField> out(idx);
    for (const auto& e : arr) {
        out.add(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), e.at(3).get<int>(),
                Scalar::parse(e.at(4).get<std::string>()));
    }
    return out;
}

CalculusKind kind_from(const std::string& s)
{
    if (s == "unbarred") {
        return CalculusKind::unbarred;
    }
    if (s == "barred") {
        return CalculusKind::barred;
    }
    throw std::invalid_argument("unknown calculus '" + s + "'");
}

// Per-calculus objects: lambda_a, theta^a_l or L^i_j as nested label maps.
ordered_json family_json(const Built& B, CalculusKind kind, const std::string& what, const GammaChoice& gamma)
{
    const auto& A = *B.A;
    ordered_json fam;
    fam["calculus"] = to_string(kind);
    auto lam = build_lambda(A, kind, resolve_gammas(B.idx, kind, gamma));
    if (what == "lambda") {
        ordered_json g, e;
        for (int a : B.idx.labels()) {
            g[std::to_string(a)] = lam.gamma.at(a).to_string();
            e[std::to_string(a)] = A.to_string(lam.lambda.at(a));
        }
        fam["gamma"] = g;
        fam["entries"] = e;
        return fam;
    }
    ordered_json e;
    if (what == "theta") {
        Calculus<SymbolicField> C(A, B.rhat, B.P, kind);
        auto fr = build_frame(C, lam);
        for (int a : B.idx.labels()) {
            for (int l : B.idx.labels()) {
                e[std::to_string(a)][std::to_string(l)] = A.to_string(fr.comp.at(a).at(l));
            }
        }
    } else {
        auto L = build_L(A, lam);
        for (int i : B.idx.labels()) {
            for (int j : B.idx.labels()) {
                e[std::to_string(i)][std::to_string(j)] = A.to_string(L.entries.at(i).at(j));
            }
        }
    }
    fam["entries"] = e;
    return fam;
}

}  // namespace

const std::vector<std::string>& export_kinds()
{
    static const std::vector<std::string> k{"rhat", "metric", "projectors", "lambda", "theta", "L"};
    return k;
}

std::string export_json(int N, const std::string& what, const std::vector<CalculusKind>& calculi,
                        const GammaChoice& gamma)
{
    Built B(N);
    ordered_json j;
    j["N"] = N;
    j["what"] = what;
    if (what == "rhat") {
        j["entries"] = tensor_entries(B.rhat);
    } else if (what == "metric") {
        auto arr = ordered_json::array();
        for (const auto& [k, v] : B.A->metric().entries) {
            arr.push_back({k[0], k[1], v.to_string()});
        }
        j["entries"] = arr;
    } else if (what == "projectors") {
        j["sym"] = tensor_entries(B.P.sym);
        j["anti"] = tensor_entries(B.P.anti);
        j["trace"] = tensor_entries(B.P.trace);
    } else if (what == "lambda" || what == "theta" || what == "L") {
        auto fams = ordered_json::array();
        for (auto k : calculi) {
            fams.push_back(family_json(B, k, what, gamma));
        }
        j["families"] = fams;
    } else {
        throw std::invalid_argument("unknown export kind '" + what + "'");
    }
    return j.dump(2) + "\n";
}

std::optional<std::string> check_roundtrip(const std::string& json, const GammaChoice& gamma)
{
    auto j = ordered_json::parse(json);
    int N = j.at("N").get<int>();
    std::string what = j.at("what").get<std::string>();
    Built B(N);
    const auto& A = *B.A;
    if (what == "rhat") {
        if (!(tensor_from(B.idx, j.at("entries")) == B.rhat)) {
            return std::string("rhat differs");
        }
    } else if (what == "metric") {
        for (const auto& e : j.at("entries")) {
            auto v = Scalar::parse(e.at(2).get<std::string>());
            if (!(v == B.A->metric().at(e.at(0).get<int>(), e.at(1).get<int>()))) {
                return "metric entry " + e.dump() + " differs";
            }
        }
        if (j.at("entries").size() != B.A->metric().entries.size()) {
            return std::string("metric entry count differs");
        }
    } else if (what == "projectors") {
        if (!(tensor_from(B.idx, j.at("sym")) == B.P.sym) || !(tensor_from(B.idx, j.at("anti")) == B.P.anti) ||
            !(tensor_from(B.idx, j.at("trace")) == B.P.trace)) {
            return std::string("projectors differ");
        }
    } else {
        for (const auto& fam : j.at("families")) {
            auto kind = kind_from(fam.at("calculus").get<std::string>());
            auto fresh = family_json(B, kind, what, gamma);
            auto cmp = [&](const std::string& got, const std::string& want, const std::string& where)
                -> std::optional<std::string> {
                if (A.parse(got) == A.parse(want)) {
                    return std::nullopt;
                }
                return what + " " + where + " differs";
            };
            for (const auto& [k, v] : fam.at("entries").items()) {
                if (v.is_string()) {
                    if (auto w = cmp(v.get<std::string>(), fresh["entries"][k].get<std::string>(), k)) {
                        return w;
                    }
                    continue;
                }
                for (const auto& [k2, v2] : v.items()) {
                    if (auto w = cmp(v2.get<std::string>(), fresh["entries"][k][k2].get<std::string>(),
                                     k + "," + k2)) {
                        return w;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace qeuclid
