#pragma once

#include <array>
#include <complex>

namespace qwalk {

using Complex = std::complex<double>;

/// 2x2 unitary acting on the coin register, stored row-major.
///
/// Construction validates unitarity (U U^dagger = I to 1e-12), so every
/// CoinOperator in circulation is safe to hand to the walk engine.
class CoinOperator {
public:
    static constexpr double kUnitarityTolerance = 1e-12;

    CoinOperator(Complex a00, Complex a01, Complex a10, Complex a11);

    Complex operator()(int row, int col) const { return m_[2 * row + col]; }

    CoinOperator adjoint() const;
    CoinOperator operator*(const CoinOperator& rhs) const;

    /// Largest entrywise deviation of U U^dagger from the identity.
    double unitarity_defect() const;

    const std::array<Complex, 4>& entries() const { return m_; }

private:
    struct Unchecked {};
    CoinOperator(Unchecked, std::array<Complex, 4> m) : m_(m) {}

    std::array<Complex, 4> m_;
};

/// (1/sqrt2) [[1, 1], [1, -1]]
CoinOperator hadamard();
CoinOperator identity_coin();

bool is_unitary(const std::array<Complex, 4>& m,
                double tol = CoinOperator::kUnitarityTolerance);

}  // namespace qwalk
