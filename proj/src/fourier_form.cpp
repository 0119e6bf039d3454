#include "hodgelab/fourier_form.hpp"

#include <cmath>

namespace hodgelab {

std::vector<ComponentKey> FormShape::componentKeys() const {
    std::vector<ComponentKey> keys;
    std::vector<int> values;
    if (kind == ValueKind::Scalar)
        values = {-1};
    else
        for (int v = 0; v < n; ++v) values.push_back(v);
    for (IndexMask i : masksOfRank(n, p))
        for (IndexMask j : masksOfRank(n, q))
            for (int v : values) keys.push_back(ComponentKey{i, j, v});
    return keys;
}

Real FormShape::weight() const {
    Real w = std::pow(2.0, p + q);
    if (kind == ValueKind::Tangent) w *= 0.5;
    if (kind == ValueKind::DualTangent) w *= 2.0;
    return w;
}

FourierForm::FourierForm(TorusGeometry g, int p, int q, ValueKind kind, int band)
    : geom_(g), shape_{g.n, p, q, kind}, band_(band) {
    geom_.validate();
    // p or q may leave [0, n] by one: such forms are identically zero (no
    // components) but keep operator words total.
    if (p < -1 || p > g.n + 1 || q < -1 || q > g.n + 1)
        throw std::invalid_argument("FourierForm: bidegree out of range");
    if (band < 0 || band > g.K)
        throw std::invalid_argument("FourierForm: band outside [0, K]");
}

bool FourierForm::isZero(Real tol) const {
    for (const auto& [k, v] : comps_)
        if (v.lpNorm<Eigen::Infinity>() > tol) return false;
    return true;
}

void FourierForm::checkKey(const ComponentKey& key) const {
    if (maskRank(key.holo) != shape_.p || maskRank(key.anti) != shape_.q)
        throw std::invalid_argument("FourierForm: component rank mismatch");
    if (key.holo >= (IndexMask(1) << shape_.n) || key.anti >= (IndexMask(1) << shape_.n))
        throw std::invalid_argument("FourierForm: component index out of range");
    bool scalar = shape_.kind == ValueKind::Scalar;
    if (scalar != (key.value < 0) || key.value >= shape_.n)
        throw std::invalid_argument("FourierForm: component value index mismatch");
}

VectorXcd& FourierForm::component(const ComponentKey& key) {
    checkKey(key);
    auto it = comps_.find(key);
    if (it == comps_.end())
        it = comps_.emplace(key, VectorXcd::Zero(layout().size())).first;
    return it->second;
}

const VectorXcd* FourierForm::findComponent(const ComponentKey& key) const {
    auto it = comps_.find(key);
    return it == comps_.end() ? nullptr : &it->second;
}

std::int64_t FourierForm::modeOffset(const ModeIndex& m) const {
    if (static_cast<int>(m.a.size()) != shape_.n || static_cast<int>(m.b.size()) != shape_.n)
        throw std::invalid_argument("FourierForm: mode dimension mismatch");
    std::vector<int> coords(2 * shape_.n);
    for (int j = 0; j < shape_.n; ++j) {
        coords[j] = m.a[j];
        coords[shape_.n + j] = m.b[j];
    }
    ModeLayout lay = layout();
    if (!lay.inBand(coords.data(), band_))
        throw std::invalid_argument("FourierForm: mode outside band");
    return lay.encode(coords.data());
}

Complex FourierForm::coeff(const ComponentKey& key, const ModeIndex& m) const {
    const VectorXcd* v = findComponent(key);
    if (!v) return Complex(0, 0);
    return (*v)[modeOffset(m)];
}

void FourierForm::setCoeff(const ComponentKey& key, const ModeIndex& m, Complex v) {
    component(key)[modeOffset(m)] = v;
}

void FourierForm::pruneZeroComponents(Real tol) {
    for (auto it = comps_.begin(); it != comps_.end();)
        it = (it->second.lpNorm<Eigen::Infinity>() <= tol) ? comps_.erase(it) : std::next(it);
}

FourierForm& FourierForm::operator+=(const FourierForm& o) {
    if (!(geom_ == o.geom_) || !(shape_ == o.shape_))
        throw std::invalid_argument("FourierForm: shape mismatch in addition");
    if (o.band_ > band_) *this = embed(*this, o.band_);
    FourierForm rhs = (o.band_ < band_) ? embed(o, band_) : o;
    for (const auto& [k, v] : rhs.comps_) component(k) += v;
    return *this;
}

FourierForm& FourierForm::operator-=(const FourierForm& o) {
    FourierForm neg = o;
    neg *= Complex(-1, 0);
    return *this += neg;
}

FourierForm& FourierForm::operator*=(Complex s) {
    for (auto& [k, v] : comps_) v *= s;
    return *this;
}

FourierForm operator+(FourierForm a, const FourierForm& b) { return a += b; }
FourierForm operator-(FourierForm a, const FourierForm& b) { return a -= b; }
FourierForm operator*(Complex s, FourierForm a) { return a *= s; }

FourierForm embed(const FourierForm& f, int newBand) {
    if (newBand < f.band()) throw std::invalid_argument("embed: band shrink");
    if (newBand == f.band()) return f;
    FourierForm out(f.geometry(), f.p(), f.q(), f.kind(), newBand);
    ModeLayout src = f.layout();
    ModeLayout dst = out.layout();
    std::vector<int> coords(2 * src.n);
    for (const auto& [k, v] : f.components()) {
        VectorXcd& o = out.component(k);
        for (std::int64_t i = 0; i < src.size(); ++i) {
            src.decode(i, coords.data());
            o[dst.encode(coords.data())] = v[i];
        }
    }
    return out;
}

std::pair<FourierForm, TruncationReceipt> truncate(const FourierForm& f, int newBand) {
    if (newBand >= f.band()) return {f, TruncationReceipt{0, newBand}};
    FourierForm out(f.geometry(), f.p(), f.q(), f.kind(), newBand);
    ModeLayout src = f.layout();
    ModeLayout dst = out.layout();
    Real w = f.shape().weight();
    Real dropped = 0;
    std::vector<int> coords(2 * src.n);
    for (const auto& [k, v] : f.components()) {
        VectorXcd& o = out.component(k);
        for (std::int64_t i = 0; i < src.size(); ++i) {
            src.decode(i, coords.data());
            if (src.inBand(coords.data(), newBand))
                o[dst.encode(coords.data())] = v[i];
            else
                dropped += w * std::norm(v[i]);
        }
    }
    return {out, TruncationReceipt{std::sqrt(dropped), newBand}};
}

Complex l2Inner(const FourierForm& a, const FourierForm& b) {
    if (!(a.geometry() == b.geometry()) || !(a.shape() == b.shape()))
        throw std::invalid_argument("l2Inner: shape mismatch");
    int band = std::max(a.band(), b.band());
    const FourierForm& ae = (a.band() == band) ? a : embed(a, band);
    FourierForm be = (b.band() == band) ? b : embed(b, band);
    Real w = a.shape().weight();
    Complex acc(0, 0);
    for (const auto& [k, v] : ae.components()) {
        const VectorXcd* u = be.findComponent(k);
        if (u) acc += w * u->dot(v); // dot conjugates its argument
    }
    return acc;
}

Real l2NormSq(const FourierForm& f) {
    Real w = f.shape().weight();
    Real acc = 0;
    for (const auto& [k, v] : f.components()) acc += w * v.squaredNorm();
    return acc;
}

Real l2Norm(const FourierForm& f) { return std::sqrt(l2NormSq(f)); }

FourierForm randomForm(const TorusGeometry& g, int band, int p, int q, ValueKind kind,
                       std::mt19937_64& rng) {
    FourierForm out(g, p, q, kind, band);
    std::normal_distribution<Real> dist(0.0, 1.0);
    for (const ComponentKey& key : out.shape().componentKeys()) {
        VectorXcd& v = out.component(key);
        for (std::int64_t i = 0; i < v.size(); ++i) {
            Real re = dist(rng), im = dist(rng);
            v[i] = Complex(re, im);
        }
    }
    return out;
}

} // namespace hodgelab
