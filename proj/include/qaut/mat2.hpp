#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qaut {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row major.
struct Mat2 {
    std::array<Complex, 4> m{Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)};

    Complex& at(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
    const Complex& at(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

    static Mat2 identity() { return Mat2{}; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                r.at(i, j) = a.at(i, 0) * b.at(0, j) + a.at(i, 1) * b.at(1, j);
            }
        }
        return r;
    }

    friend bool operator==(const Mat2&, const Mat2&) = default;
};

inline double max_abs_diff(const Mat2& a, const Mat2& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
    }
    return worst;
}

inline bool is_unitary(const Mat2& u, double tol = 1e-9) {
    // U * U^dagger == I
    Mat2 p;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            p.at(i, j) = u.at(i, 0) * std::conj(u.at(j, 0)) + u.at(i, 1) * std::conj(u.at(j, 1));
        }
    }
    return max_abs_diff(p, Mat2::identity()) <= tol;
}

}  // namespace qaut
