#ifndef SCTK_COMPLEXES_HPP
#define SCTK_COMPLEXES_HPP

#include "sctk/derham.hpp"

#include <string>
#include <vector>

namespace sctk {

/// Dense exact-rational matrix with just enough elimination for kernels,
/// ranks and induced maps.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {}

    static QMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rat& at(int r, int c) { return a_[static_cast<size_t>(r * cols_ + c)]; }
    const Rat& at(int r, int c) const { return a_[static_cast<size_t>(r * cols_ + c)]; }

    bool is_zero() const;
    QMatrix operator*(const QMatrix& rhs) const;
    QMatrix operator-() const;
    bool operator==(const QMatrix& rhs) const;
    QMatrix transposed() const;
    QMatrix scaled(const Rat& c) const;

    /// Reduced row echelon form of a copy; returns pivot column indices.
    QMatrix rref(std::vector<int>* pivots = nullptr) const;
    int rank() const;
    /// Columns spanning the kernel (canonical: free variables set to 1).
    QMatrix kernel_basis() const;
    /// Solves A x = b for each column b of rhs; throws if inconsistent.
    QMatrix solve(const QMatrix& rhs) const;
    /// [a | b] side by side.
    static QMatrix hcat(const QMatrix& a, const QMatrix& b);

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

/// Finite complex of finite-dimensional Q-vector spaces with named bases:
/// V^lo -> ... -> V^hi with d^i : V^i -> V^{i+1} and d^{i+1} d^i = 0.
struct FreeComplex {
    int lo = 0;
    std::vector<std::vector<std::string>> basis; // basis[i] names V^{lo+i}
    std::vector<QMatrix> diff;                   // diff[i] : V^{lo+i} -> V^{lo+i+1}

    int hi() const { return lo + static_cast<int>(basis.size()) - 1; }
    bool in_range(int n) const { return n >= lo && n <= hi(); }
    int dim(int n) const {
        return in_range(n) ? static_cast<int>(basis[static_cast<size_t>(n - lo)].size()) : 0;
    }
    const std::vector<std::string>& names(int n) const;
    QMatrix d(int n) const; // zero-sized matrices off range

    void validate() const; // shapes and d^2 = 0

    /// X[k]^n = X^{n+k} with differential (-1)^k d.
    FreeComplex shifted(int k) const;
    /// Unsigned-transpose dual: (V*)^n = (V^{-n})*, an involution.
    FreeComplex dualized() const;

    static FreeComplex empty() { return FreeComplex{0, {}, {}}; }
};

/// Chain map f^i : X^i -> Y^{i+shift} with d_Y f = (-1)^shift f d_X,
/// verified at construction.
struct ComplexMap {
    FreeComplex source;
    FreeComplex target;
    int shift = 0;
    std::vector<QMatrix> blocks; // indexed by source degree - source.lo

    QMatrix block(int n) const;
    void validate() const;
};

FreeComplex cone(const ComplexMap& f);
FreeComplex cocone(const ComplexMap& f); // = cone shifted by -1

FreeComplex strict_kernel(const ComplexMap& f);
FreeComplex strict_cokernel(const ComplexMap& f);
/// The natural inclusion ker(f) -> Cocone(f), x -> (x, 0).
ComplexMap kernel_into_cocone(const ComplexMap& f);

std::vector<std::pair<int, int>> homology_ranks(const FreeComplex& C);

/// Quasi-isomorphism test: cone(f) acyclic; per-degree cone ranks reported.
Report is_quasi_iso(const ComplexMap& f);

/// Restriction of the Kaehler differentials to a point: basis D(v) in
/// degree |v|, entries evaluate(d(dv)/dw, p). Requires the restriction to
/// be a complex (p on the truncation); validated.
FreeComplex restrict_cotangent(const Cdga& A, const Point& p);
/// Degree-wise dual with basis d/dv in degree -|v|.
FreeComplex restrict_tangent(const Cdga& A, const Point& p);

} // namespace sctk

#endif
