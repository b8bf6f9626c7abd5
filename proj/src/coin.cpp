#include "qwalk/coin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qwalk/errors.hpp"

namespace qwalk {

namespace {

double defect(const std::array<Complex, 4>& m) {
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Complex s = m[2 * r] * std::conj(m[2 * c]) + m[2 * r + 1] * std::conj(m[2 * c + 1]);
            if (r == c) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

}  // namespace

bool is_unitary(const std::array<Complex, 4>& m, double tol) {
    return defect(m) <= tol;
}

CoinOperator::CoinOperator(Complex a00, Complex a01, Complex a10, Complex a11)
    : m_{a00, a01, a10, a11} {
    const double d = defect(m_);
    if (!(d <= kUnitarityTolerance)) {
        std::ostringstream os;
        os << "coin matrix is not unitary (|UU^dagger - I| = " << d << ")";
        throw DomainError(os.str());
    }
}

CoinOperator CoinOperator::adjoint() const {
    return CoinOperator(Unchecked{}, {std::conj(m_[0]), std::conj(m_[2]),
                                      std::conj(m_[1]), std::conj(m_[3])});
}

CoinOperator CoinOperator::operator*(const CoinOperator& rhs) const {
    std::array<Complex, 4> out{};
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            out[2 * r + c] = m_[2 * r] * rhs.m_[c] + m_[2 * r + 1] * rhs.m_[2 + c];
    return CoinOperator(Unchecked{}, out);
}

double CoinOperator::unitarity_defect() const { return defect(m_); }

CoinOperator hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return CoinOperator(h, h, h, -h);
}

CoinOperator identity_coin() { return CoinOperator(1.0, 0.0, 0.0, 1.0); }

}  // namespace qwalk
