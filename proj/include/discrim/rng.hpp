#pragma once

#include "discrim/types.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace discrim {

/// Seeded random stream with hand-rolled variate transforms.
///
/// std::mt19937_64 output is specified by the standard, but the
/// distribution adaptors are not; rolling uniform/gaussian here keeps
/// every generated ensemble reproducible from its seed across standard
/// library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in (0, 1].
    double uniform() {
        // 53 significant bits; add 1 ulp so log() is always finite.
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = uniform();
        const double v = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        have_spare_ = true;
        spare_ = r * std::sin(2.0 * M_PI * v);
        return r * std::cos(2.0 * M_PI * v);
    }

    /// Complex entry with independent standard normal parts.
    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

    Vector gaussian_vector(Eigen::Index dim) {
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            v(i) = complex_gaussian();
        return v;
    }

    Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        Matrix g(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j)
                g(i, j) = complex_gaussian();
        return g;
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace discrim
