#include "hodgelab/form_io.hpp"

#include <fstream>

namespace hodgelab {
namespace {

std::string kindName(ValueKind k) {
    switch (k) {
        case ValueKind::Scalar: return "scalar";
        case ValueKind::Tangent: return "tangent";
        case ValueKind::DualTangent: return "dual-tangent";
    }
    return "scalar";
}

ValueKind kindFromName(const std::string& s) {
    if (s == "scalar") return ValueKind::Scalar;
    if (s == "tangent") return ValueKind::Tangent;
    if (s == "dual-tangent") return ValueKind::DualTangent;
    throw std::invalid_argument("form json: unknown valueKind '" + s + "'");
}

std::vector<int> maskToOneBased(IndexMask m) {
    std::vector<int> out;
    for (int i : maskToList(m)) out.push_back(i + 1);
    return out;
}

IndexMask maskFromOneBased(const std::vector<int>& xs, int n, const char* which) {
    IndexMask m = 0;
    int prev = 0;
    for (int x : xs) {
        if (x < 1 || x > n) throw std::invalid_argument(std::string("form json: ") + which +
                                                        " index out of range");
        if (x <= prev)
            throw std::invalid_argument(std::string("form json: ") + which +
                                        " indices must be strictly increasing");
        prev = x;
        m |= IndexMask(1) << (x - 1);
    }
    return m;
}

} // namespace

nlohmann::json toJson(const FourierForm& f) {
    const TorusGeometry& g = f.geometry();
    nlohmann::json j;
    j["geometry"] = {{"n", g.n}, {"K", g.K}, {"oversample", g.oversample}};
    j["bidegree"] = {f.p(), f.q()};
    j["valueKind"] = kindName(f.kind());
    j["band"] = f.band();
    nlohmann::json entries = nlohmann::json::array();
    ModeLayout lay = f.layout();
    std::vector<int> coords(2 * lay.n);
    for (const auto& [key, v] : f.components()) {
        for (std::int64_t i = 0; i < v.size(); ++i) {
            if (v[i] == Complex(0, 0)) continue;
            lay.decode(i, coords.data());
            nlohmann::json e;
            e["I"] = maskToOneBased(key.holo);
            e["J"] = maskToOneBased(key.anti);
            if (key.value >= 0) e["tangent"] = key.value + 1;
            e["mode"] = {std::vector<int>(coords.begin(), coords.begin() + lay.n),
                         std::vector<int>(coords.begin() + lay.n, coords.end())};
            e["re"] = v[i].real();
            e["im"] = v[i].imag();
            entries.push_back(std::move(e));
        }
    }
    j["entries"] = std::move(entries);
    return j;
}

FourierForm fromJson(const nlohmann::json& j) {
    TorusGeometry g;
    g.n = j.at("geometry").at("n").get<int>();
    g.K = j.at("geometry").at("K").get<int>();
    g.oversample = j.at("geometry").at("oversample").get<int>();
    g.validate();
    auto bd = j.at("bidegree");
    int p = bd.at(0).get<int>(), q = bd.at(1).get<int>();
    ValueKind kind = kindFromName(j.at("valueKind").get<std::string>());
    int band = j.value("band", g.K);
    FourierForm f(g, p, q, kind, band);
    for (const auto& e : j.at("entries")) {
        ComponentKey key;
        key.holo = maskFromOneBased(e.at("I").get<std::vector<int>>(), g.n, "I");
        key.anti = maskFromOneBased(e.at("J").get<std::vector<int>>(), g.n, "J");
        if (kind != ValueKind::Scalar) {
            int t = e.at("tangent").get<int>();
            if (t < 1 || t > g.n) throw std::invalid_argument("form json: tangent index out of range");
            key.value = t - 1;
        }
        auto mode = e.at("mode");
        ModeIndex m;
        m.a = mode.at(0).get<std::vector<int>>();
        m.b = mode.at(1).get<std::vector<int>>();
        Complex val(e.at("re").get<Real>(), e.at("im").get<Real>());
        f.setCoeff(key, m, f.coeff(key, m) + val);
    }
    return f;
}

void writeFormJson(const std::string& path, const FourierForm& f) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << toJson(f).dump(2) << "\n";
}

FourierForm readFormJson(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    nlohmann::json j;
    in >> j;
    return fromJson(j);
}

} // namespace hodgelab
