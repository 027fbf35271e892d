#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "roughint/geometry.hpp"

namespace roughint {

class FieldImpl {
public:
    virtual ~FieldImpl() = default;
    virtual double eval(Point2 p) const = 0;
    virtual void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const {
        for (std::size_t i = 0; i < n; ++i) out[i] = eval({x1[i], x2[i]});
    }
};

enum class FieldKind { Affine, Polynomial, Trig, Weierstrass, Composed };

std::string to_string(FieldKind k);
FieldKind field_kind_from_string(const std::string& s);

/// Serializable description of a built-in field: {"kind": ..., "params": {...}}.
struct FieldSpec {
    FieldKind kind = FieldKind::Affine;
    nlohmann::json params = nlohmann::json::object();

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

nlohmann::json to_json(const FieldSpec& spec);
FieldSpec field_spec_from_json(const nlohmann::json& j);

/// Evaluable field R^2 -> R with a Hoelder exponent and certified bounds on
/// a working box. Cheap to copy; the implementation is shared and immutable.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(std::shared_ptr<const FieldImpl> impl, double exponent, double seminorm, double sup,
                Box box, std::string description);

    double operator()(Point2 p) const { return impl_->eval(p); }
    double eval(Point2 p) const { return impl_->eval(p); }
    void eval_many(const double* x1, const double* x2, double* out, std::size_t n) const {
        impl_->eval_many(x1, x2, out, n);
    }

    double hoelder_exponent() const { return exponent_; }
    double seminorm_bound() const { return seminorm_; }
    double sup_bound() const { return sup_; }
    const Box& box() const { return box_; }
    const std::string& description() const { return description_; }
    bool valid() const { return static_cast<bool>(impl_); }

    /// Present for fields built from a FieldSpec.
    const std::optional<FieldSpec>& spec() const { return spec_; }
    ScalarField with_spec(FieldSpec s) const;

    static ScalarField constant(double c, const Box& box = kWorkingBox);
    static ScalarField coordinate(int i, const Box& box = kWorkingBox);
    static ScalarField from_function(std::function<double(Point2)> fn, double exponent, double seminorm,
                                     double sup, const Box& box, std::string description);

private:
    std::shared_ptr<const FieldImpl> impl_;
    double exponent_ = 1.0;
    double seminorm_ = 0.0;
    double sup_ = 0.0;
    Box box_ = kWorkingBox;
    std::string description_;
    std::optional<FieldSpec> spec_;
};

struct WeierstrassOptions {
    double beta = 0.5;
    int base = 2;
    int terms = 1;
    std::uint64_t seed = 0;
    /// Fixed direction angle for every term; random per term when empty.
    std::optional<double> direction;
    /// Added to every phase. A pair with shifts 0 and -pi/2 is a conjugate
    /// (sine/cosine) pair.
    double phase_shift = 0.0;
    bool random_phase = true;
    double amplitude = 1.0;
};

ScalarField make_weierstrass(const WeierstrassOptions& opt, const Box& box = kWorkingBox);
ScalarField make_weierstrass(double beta, int base, int terms, std::uint64_t seed, const Box& box = kWorkingBox);

/// sup over 0 < r <= rmax of r^-beta * sum_k amp_k * min(2, base^k r),
/// bounded from above piecewise; the certified seminorm of a finite
/// Weierstrass sum with unit direction vectors.
double weierstrass_seminorm_bound(double beta, int base, int terms, double rmax);

ScalarField field_from_spec(const FieldSpec& spec, const Box& box = kWorkingBox);

/// Linear combination a*u + b*v with summed bounds; exponent is the smaller.
ScalarField linear_combination(double a, const ScalarField& u, double b, const ScalarField& v);

/// phi(u(x)) for a smooth outer function with Lipschitz constant lip on the
/// range of u and |phi| <= sup there.
ScalarField compose(std::function<double(double)> phi, const ScalarField& u, double lip, double sup,
                    std::string description);

/// Largest |f(v)-f(u)| / |v-u|^alpha over random pairs in box with
/// |v-u| between scale_min and the box half-diameter.
double estimate_seminorm(const ScalarField& f, const Box& box, int samples, double scale_min,
                         std::uint64_t seed = 1);

/// Portable uniform double in [0,1) from a 64-bit generator state.
double unit_uniform(std::uint64_t bits);

} // namespace roughint
