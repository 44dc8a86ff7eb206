#pragma once

#include <array>
#include <complex>

namespace qumeas {

// Dense 3x3 matrix, row-major. Instantiated with double for the measurement
// propagators and with std::complex<double> for tilted products.
template <class T>
struct Matrix3 {
    std::array<T, 9> m{};

    T& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
    const T& operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

    friend Matrix3 operator+(const Matrix3& a, const Matrix3& b) {
        Matrix3 c;
        for (std::size_t k = 0; k < 9; ++k) c.m[k] = a.m[k] + b.m[k];
        return c;
    }

    friend Matrix3 operator*(const Matrix3& a, const Matrix3& b) {
        Matrix3 c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                c(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j) + a(i, 2) * b(2, j);
        return c;
    }

    friend std::array<T, 3> operator*(const Matrix3& a, const std::array<T, 3>& v) {
        return {a.m[0] * v[0] + a.m[1] * v[1] + a.m[2] * v[2],
                a.m[3] * v[0] + a.m[4] * v[1] + a.m[5] * v[2],
                a.m[6] * v[0] + a.m[7] * v[1] + a.m[8] * v[2]};
    }

    T trace() const { return m[0] + m[4] + m[8]; }

    T det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }
};

using Mat3 = Matrix3<double>;
using CMat3 = Matrix3<std::complex<double>>;

}  // namespace qumeas
