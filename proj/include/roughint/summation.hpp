#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace roughint {

/// Error-free transformation a + b = s + e.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    const double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

/// Error-free transformation a * b = p + e (requires a correctly rounded fma).
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}

/// Double-double accumulator. Sums of products are exact up to ~2^-104
/// relative, which is what makes telescoping identities hold to a few ulps
/// at 2^14 terms.
class DDSum {
public:
    void add(double x) {
        double s, e;
        two_sum(hi_, x, s, e);
        lo_ += e;
        renorm(s);
    }
    void add_product(double a, double b) {
        double p, pe;
        two_prod(a, b, p, pe);
        double s, e;
        two_sum(hi_, p, s, e);
        lo_ += e + pe;
        renorm(s);
    }
    void add(const DDSum& o) {
        double s, e;
        two_sum(hi_, o.hi_, s, e);
        lo_ += e + o.lo_;
        renorm(s);
    }
    double value() const { return hi_ + lo_; }

private:
    void renorm(double s) {
        double h, l;
        two_sum(s, lo_, h, l);
        hi_ = h;
        lo_ = l;
    }
    double hi_ = 0.0;
    double lo_ = 0.0;
};

/// Neumaier's improved Kahan summation.
class NeumaierSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise (tree) sum with a fixed split point; the result depends only on
/// the input order, never on how the work was scheduled.
double pairwise_sum(std::span<const double> xs);

} // namespace roughint
