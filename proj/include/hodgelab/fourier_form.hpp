#pragma once

#include <Eigen/Dense>
#include <compare>
#include <map>
#include <random>

#include "hodgelab/geometry.hpp"
#include "hodgelab/index_algebra.hpp"

namespace hodgelab {

using Eigen::VectorXcd;

enum class ValueKind { Scalar, Tangent, DualTangent };

// One exterior-frame component dz^I ^ dzbar^J, optionally tensored with
// d/dz^value (Tangent) or dz^value (DualTangent); value = -1 for Scalar.
struct ComponentKey {
    IndexMask holo = 0;
    IndexMask anti = 0;
    int value = -1;
    auto operator<=>(const ComponentKey&) const = default;
};

struct FormShape {
    int n = 1;
    int p = 0;
    int q = 0;
    ValueKind kind = ValueKind::Scalar;

    std::vector<ComponentKey> componentKeys() const;
    // Frame weight of every component of this shape:
    // 2^(p+q) * (1/2 for Tangent, 2 for DualTangent, 1 for Scalar).
    Real weight() const;
    bool operator==(const FormShape&) const = default;
};

struct TruncationReceipt {
    Real discardedMass = 0; // L2 norm of the part dropped beyond the band cap
    int capUsed = 0;
    TruncationReceipt& operator+=(const TruncationReceipt& o) {
        discardedMass += o.discardedMass;
        capUsed = std::max(capUsed, o.capUsed);
        return *this;
    }
};

// Band-limited section of the (p,q)-forms (optionally tangent- or
// dual-tangent-valued) on a flat torus.  Coefficients are stored per
// component as a dense vector over the modes of a ModeLayout of the form's
// own band; absent components are zero.  band() never exceeds geometry().K.
class FourierForm {
public:
    FourierForm() = default;
    FourierForm(TorusGeometry g, int p, int q, ValueKind kind, int band);

    const TorusGeometry& geometry() const { return geom_; }
    const FormShape& shape() const { return shape_; }
    int p() const { return shape_.p; }
    int q() const { return shape_.q; }
    ValueKind kind() const { return shape_.kind; }
    int band() const { return band_; }
    ModeLayout layout() const { return ModeLayout{shape_.n, band_}; }

    bool isZero(Real tol = 0) const;

    std::map<ComponentKey, VectorXcd>& components() { return comps_; }
    const std::map<ComponentKey, VectorXcd>& components() const { return comps_; }

    // Creates the component (zero-filled) if absent.
    VectorXcd& component(const ComponentKey& key);
    const VectorXcd* findComponent(const ComponentKey& key) const;

    Complex coeff(const ComponentKey& key, const ModeIndex& m) const;
    void setCoeff(const ComponentKey& key, const ModeIndex& m, Complex v);

    void pruneZeroComponents(Real tol = 0);

    FourierForm& operator+=(const FourierForm& o);
    FourierForm& operator-=(const FourierForm& o);
    FourierForm& operator*=(Complex s);

private:
    TorusGeometry geom_;
    FormShape shape_;
    int band_ = 0;
    std::map<ComponentKey, VectorXcd> comps_;

    void checkKey(const ComponentKey& key) const;
    std::int64_t modeOffset(const ModeIndex& m) const;
};

FourierForm operator+(FourierForm a, const FourierForm& b);
FourierForm operator-(FourierForm a, const FourierForm& b);
FourierForm operator*(Complex s, FourierForm a);

// Re-layout to a wider band (newBand >= band; exact) .
FourierForm embed(const FourierForm& f, int newBand);
// Drop modes beyond newBand, reporting the discarded L2 norm.
std::pair<FourierForm, TruncationReceipt> truncate(const FourierForm& f, int newBand);

// Parseval inner product: sum over components of the frame weight times the
// coefficient dot product.  Conjugate-linear in the second argument.
Complex l2Inner(const FourierForm& a, const FourierForm& b);
Real l2Norm(const FourierForm& f);
Real l2NormSq(const FourierForm& f);

// Every component filled with independent standard complex Gaussians, modes
// within `band`.  Components and modes are drawn in canonical order.
FourierForm randomForm(const TorusGeometry& g, int band, int p, int q, ValueKind kind,
                       std::mt19937_64& rng);

} // namespace hodgelab
