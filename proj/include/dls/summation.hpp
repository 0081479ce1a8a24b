#pragma once

#include <cstddef>

namespace dls {

// Compensated accumulator (Neumaier variant with an exact error term per
// add). Keeps potential sums stable to <= 1e-12 relative regardless of
// platform or term count, and makes results independent of harmless
// reorderings in practice.
class CompensatedSum {
public:
    void add(double x) {
        const double s = hi_ + x;
        const double bv = s - hi_;
        // exact rounding error of the addition above
        const double err = (hi_ - (s - bv)) + (x - bv);
        hi_ = s;
        lo_ += err;
    }

    double value() const { return hi_ + lo_; }

private:
    double hi_ = 0.0;
    double lo_ = 0.0;
};

template <typename It>
double compensated_total(It first, It last) {
    CompensatedSum acc;
    for (; first != last; ++first) acc.add(*first);
    return acc.value();
}

}  // namespace dls
