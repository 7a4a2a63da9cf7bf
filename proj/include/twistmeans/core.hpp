#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>

namespace twistmeans {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr int kMaxComplexDim = 4;
inline constexpr int kMaxRealDim = 8;

/// Raised when a numerical procedure cannot deliver its contract
/// (lost root bracket, degenerate evaluation point, non-integrable input).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point of C^n, n <= kMaxComplexDim. Layout is n complex numbers,
/// i.e. 2n reals (Re z_1, Im z_1, Re z_2, ...).
class ComplexPoint {
public:
    ComplexPoint() = default;
    explicit ComplexPoint(int n) : n_(n) {
        if (n < 1 || n > kMaxComplexDim)
            throw std::invalid_argument("ComplexPoint: dimension out of range");
    }
    ComplexPoint(std::initializer_list<Complex> coords) : ComplexPoint(static_cast<int>(coords.size())) {
        int j = 0;
        for (const Complex& c : coords) z_[j++] = c;
    }

    int dim() const { return n_; }
    Complex& operator[](int j) { return z_[j]; }
    const Complex& operator[](int j) const { return z_[j]; }

    double norm_sq() const {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += std::norm(z_[j]);
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    ComplexPoint& operator+=(const ComplexPoint& o) {
        for (int j = 0; j < n_; ++j) z_[j] += o.z_[j];
        return *this;
    }
    ComplexPoint& operator-=(const ComplexPoint& o) {
        for (int j = 0; j < n_; ++j) z_[j] -= o.z_[j];
        return *this;
    }
    ComplexPoint& operator*=(double s) {
        for (int j = 0; j < n_; ++j) z_[j] *= s;
        return *this;
    }
    friend ComplexPoint operator+(ComplexPoint a, const ComplexPoint& b) { return a += b; }
    friend ComplexPoint operator-(ComplexPoint a, const ComplexPoint& b) { return a -= b; }
    friend ComplexPoint operator*(double s, ComplexPoint a) { return a *= s; }

private:
    int n_ = 0;
    std::array<Complex, kMaxComplexDim> z_{};
};

/// z . conj(w) = sum_j z_j conj(w_j)
inline Complex dot_conj(const ComplexPoint& z, const ComplexPoint& w) {
    Complex s = 0.0;
    for (int j = 0; j < z.dim(); ++j) s += z[j] * std::conj(w[j]);
    return s;
}

/// Im(z . conj(w)), the symplectic form entering every twist factor.
inline double symplectic(const ComplexPoint& z, const ComplexPoint& w) {
    double s = 0.0;
    for (int j = 0; j < z.dim(); ++j) s += z[j].imag() * w[j].real() - z[j].real() * w[j].imag();
    return s;
}

/// A point of R^n, n <= kMaxRealDim.
class RealPoint {
public:
    RealPoint() = default;
    explicit RealPoint(int n) : n_(n) {
        if (n < 1 || n > kMaxRealDim) throw std::invalid_argument("RealPoint: dimension out of range");
    }
    RealPoint(std::initializer_list<double> coords) : RealPoint(static_cast<int>(coords.size())) {
        int j = 0;
        for (double c : coords) x_[j++] = c;
    }

    int dim() const { return n_; }
    double& operator[](int j) { return x_[j]; }
    double operator[](int j) const { return x_[j]; }

    double norm_sq() const {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += x_[j] * x_[j];
        return s;
    }
    double norm() const { return std::sqrt(norm_sq()); }

    RealPoint& operator+=(const RealPoint& o) {
        for (int j = 0; j < n_; ++j) x_[j] += o.x_[j];
        return *this;
    }
    RealPoint& operator-=(const RealPoint& o) {
        for (int j = 0; j < n_; ++j) x_[j] -= o.x_[j];
        return *this;
    }
    RealPoint& operator*=(double s) {
        for (int j = 0; j < n_; ++j) x_[j] *= s;
        return *this;
    }
    friend RealPoint operator+(RealPoint a, const RealPoint& b) { return a += b; }
    friend RealPoint operator-(RealPoint a, const RealPoint& b) { return a -= b; }
    friend RealPoint operator*(double s, RealPoint a) { return a *= s; }

private:
    int n_ = 0;
    std::array<double, kMaxRealDim> x_{};
};

using Field = std::function<Complex(const ComplexPoint&)>;
using RealField = std::function<Complex(const RealPoint&)>;

}  // namespace twistmeans
