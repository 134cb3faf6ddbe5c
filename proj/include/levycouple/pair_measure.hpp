#pragma once

#include "levycouple/family.hpp"

#include <vector>

namespace lc {

// The rescaled pair (X^t, Z) laid out on the union of their direction atoms.
// Z is the target viewed at t = 1, g = 1. Both families must outlive this object.
struct PairMeasure {
    ScaledView X, Z;
    std::vector<Vec> dirs;
    std::vector<int> ix, iz;  // atom index in X / Z, or -1
    std::vector<PointMass> pm_diff;  // point masses of nu_X - nu_Z (signed mass)

    PairMeasure(const ScaledView& x, const ScaledView& z);

    size_t size() const { return dirs.size(); }
    double density_X(size_t k, double y) const;
    double density_Z(size_t k, double y) const;
    // nu_X - nu_Z density along atom k, computed without cancellation where possible
    double density_diff(size_t k, double y) const;
    // dnu_X / dnu_Z along atom k (requires the atom in Z)
    double ratio(size_t k, double y) const;

    // int_a^b y^p |nu_X - nu_Z|(dy) along atom k
    double abs_diff_moment(size_t k, double p, double a, double b) const;
    // summed over atoms plus X-only point masses with |w| in [a,b)
    double abs_diff_moment_all(double p, double a, double b) const;
    // int y^p |nu_X - nu_Z| over the point masses with |w| in [a,b)
    double pert_moment(double p, double a, double b) const;
    // int_{|w| in [a,b)} w (nu_X - nu_Z)(dw); throws NumericalError when divergent
    Vec signed_first_moment(double a, double b) const;

    std::vector<double> breaks(size_t k) const;
};

}  // namespace lc
