#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pittlab {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double infinity = std::numeric_limits<double>::infinity();

/// Rejection of parameters or data outside the domain of an operation.
/// `condition()` names the violated requirement.
class DomainError : public std::domain_error {
public:
    DomainError(std::string condition, const std::string& detail = {})
        : std::domain_error(detail.empty() ? condition : condition + ": " + detail),
          condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

inline void require(bool ok, const char* condition, const std::string& detail = {}) {
    if (!ok) throw DomainError(condition, detail);
}

/// Conjugate exponent, 1 <-> infinity.
inline double conjugate_exponent(double r) {
    if (r == 1.0) return infinity;
    if (std::isinf(r)) return 1.0;
    return r / (r - 1.0);
}

inline bool near(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

enum class IndexNorm { euclid, max };

/// Multi-index in Z^d for d in {1, 2}; unused trailing slots are zero.
struct LatticePoint {
    std::array<long, 2> k{0, 0};

    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

inline double index_norm(const LatticePoint& n, int d, IndexNorm kind) {
    if (d == 1) return static_cast<double>(std::labs(n.k[0]));
    const double a = static_cast<double>(std::labs(n.k[0]));
    const double b = static_cast<double>(std::labs(n.k[1]));
    return kind == IndexNorm::max ? std::max(a, b) : std::hypot(a, b);
}

/// The cube {n in Z^d : max_j |n_j| <= N}, enumerated lexicographically.
class LatticeBox {
public:
    LatticeBox(int d, long N) : d_(d), N_(N) {
        require(d == 1 || d == 2, "d in {1,2}");
        require(N >= 0, "N >= 0");
    }

    int dimension() const noexcept { return d_; }
    long radius() const noexcept { return N_; }
    long side() const noexcept { return 2 * N_ + 1; }
    std::size_t size() const noexcept {
        return d_ == 1 ? static_cast<std::size_t>(side()) : static_cast<std::size_t>(side() * side());
    }

    LatticePoint at(std::size_t i) const {
        const long s = side();
        const long ii = static_cast<long>(i);
        if (d_ == 1) return {{ii - N_, 0}};
        return {{ii / s - N_, ii % s - N_}};
    }

    std::size_t offset(const LatticePoint& n) const {
        const long s = side();
        if (d_ == 1) return static_cast<std::size_t>(n.k[0] + N_);
        return static_cast<std::size_t>((n.k[0] + N_) * s + (n.k[1] + N_));
    }

    bool contains(const LatticePoint& n) const {
        if (std::labs(n.k[0]) > N_) return false;
        return d_ == 1 ? n.k[1] == 0 : std::labs(n.k[1]) <= N_;
    }

    std::vector<LatticePoint> points() const {
        std::vector<LatticePoint> out(size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
        return out;
    }

private:
    int d_;
    long N_;
};

/// Neumaier compensated accumulator.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            c_ += (sum_ - t) + x;
        else
            c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + c_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

}  // namespace pittlab
