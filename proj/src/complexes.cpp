#include "sctk/complexes.hpp"

#include <algorithm>
#include <sstream>

namespace sctk {

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool QMatrix::is_zero() const {
    for (const Rat& x : a_)
        if (x != 0) return false;
    return true;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw Error("shape-mismatch", "matrix product shape mismatch");
    QMatrix out(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += v * rhs.at(k, j);
        }
    return out;
}

QMatrix QMatrix::operator-() const {
    QMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = -a_[i];
    return out;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

QMatrix QMatrix::transposed() const {
    QMatrix out(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
    return out;
}

QMatrix QMatrix::scaled(const Rat& c) const {
    QMatrix out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * c;
    return out;
}

QMatrix QMatrix::rref(std::vector<int>* pivots) const {
    QMatrix m = *this;
    if (pivots) pivots->clear();
    int row = 0;
    for (int col = 0; col < m.cols_ && row < m.rows_; ++col) {
        int piv = -1;
        for (int r = row; r < m.rows_; ++r)
            if (m.at(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols_; ++j) std::swap(m.at(row, j), m.at(piv, j));
        Rat inv = Rat(1) / m.at(row, col);
        for (int j = 0; j < m.cols_; ++j) m.at(row, j) *= inv;
        for (int r = 0; r < m.rows_; ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            Rat f = m.at(r, col);
            for (int j = 0; j < m.cols_; ++j) m.at(r, j) -= f * m.at(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

int QMatrix::rank() const {
    std::vector<int> piv;
    rref(&piv);
    return static_cast<int>(piv.size());
}

QMatrix QMatrix::kernel_basis() const {
    std::vector<int> piv;
    QMatrix r = rref(&piv);
    std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
    for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
    int nfree = cols_ - static_cast<int>(piv.size());
    QMatrix out(cols_, nfree);
    int idx = 0;
    for (int c = 0; c < cols_; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        out.at(c, idx) = 1;
        for (size_t pr = 0; pr < piv.size(); ++pr)
            out.at(piv[pr], idx) = -r.at(static_cast<int>(pr), c);
        ++idx;
    }
    return out;
}

QMatrix QMatrix::hcat(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_) throw Error("shape-mismatch", "hcat row mismatch");
    QMatrix out(a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols_; ++j) out.at(i, a.cols_ + j) = b.at(i, j);
    }
    return out;
}

QMatrix QMatrix::solve(const QMatrix& rhs) const {
    if (rhs.rows() != rows_) throw Error("shape-mismatch", "solve shape mismatch");
    QMatrix aug = hcat(*this, rhs);
    std::vector<int> piv;
    QMatrix r = aug.rref(&piv);
    for (int c : piv)
        if (c >= cols_) throw Error("inconsistent-system", "linear system has no solution");
    QMatrix x(cols_, rhs.cols());
    for (size_t pr = 0; pr < piv.size(); ++pr)
        for (int j = 0; j < rhs.cols(); ++j)
            x.at(piv[pr], j) = r.at(static_cast<int>(pr), cols_ + j);
    return x;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (int j = 0; j < cols_; ++j) {
            if (j) os << ", ";
            os << rat_to_string(at(i, j));
        }
    }
    os << "]";
    return os.str();
}

const std::vector<std::string>& FreeComplex::names(int n) const {
    static const std::vector<std::string> none;
    return in_range(n) ? basis[static_cast<size_t>(n - lo)] : none;
}

QMatrix FreeComplex::d(int n) const {
    if (n >= lo && n < hi()) return diff[static_cast<size_t>(n - lo)];
    return QMatrix(dim(n + 1), dim(n));
}

void FreeComplex::validate() const {
    if (basis.empty()) return;
    if (diff.size() + 1 != basis.size())
        throw Error("shape-mismatch", "complex with wrong number of differentials");
    for (size_t i = 0; i < diff.size(); ++i) {
        if (diff[i].cols() != static_cast<int>(basis[i].size()) ||
            diff[i].rows() != static_cast<int>(basis[i + 1].size()))
            throw Error("shape-mismatch", "differential shape mismatch at degree " +
                                              std::to_string(lo + static_cast<int>(i)));
    }
    for (size_t i = 0; i + 1 < diff.size(); ++i)
        if (!(diff[i + 1] * diff[i]).is_zero())
            throw Error("not-a-complex", "d^2 != 0 at degree " +
                                             std::to_string(lo + static_cast<int>(i)));
}

FreeComplex FreeComplex::shifted(int k) const {
    FreeComplex out;
    out.lo = lo - k;
    out.basis = basis;
    out.diff = diff;
    if (k % 2 != 0)
        for (auto& m : out.diff) m = -m;
    return out;
}

FreeComplex FreeComplex::dualized() const {
    FreeComplex out;
    if (basis.empty()) return out;
    out.lo = -hi();
    out.basis.resize(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        const auto& src = basis[basis.size() - 1 - i];
        out.basis[i].reserve(src.size());
        for (const auto& n : src) out.basis[i].push_back(n + "*");
    }
    out.diff.resize(diff.size());
    for (size_t i = 0; i < diff.size(); ++i)
        out.diff[i] = diff[diff.size() - 1 - i].transposed();
    return out;
}

QMatrix ComplexMap::block(int n) const {
    if (n >= source.lo && n <= source.hi()) {
        const QMatrix& b = blocks[static_cast<size_t>(n - source.lo)];
        if (b.rows() != target.dim(n + shift) || b.cols() != source.dim(n))
            throw Error("shape-mismatch", "chain map block shape mismatch");
        return b;
    }
    return QMatrix(target.dim(n + shift), source.dim(n));
}

void ComplexMap::validate() const {
    source.validate();
    target.validate();
    if (!source.basis.empty() && blocks.size() != source.basis.size())
        throw Error("shape-mismatch", "chain map with wrong number of blocks");
    const int sgn = (shift % 2 == 0) ? 1 : -1;
    for (int n = source.lo - 1; n <= source.hi(); ++n) {
        QMatrix lhs = target.d(n + shift) * block(n);
        QMatrix rhs = (block(n + 1) * source.d(n)).scaled(sgn);
        if (!(lhs == rhs))
            throw Error("not-a-chain-map", "chain map identity fails at degree " +
                                               std::to_string(n));
    }
}

static FreeComplex make_complex(int lo, std::vector<std::vector<std::string>> basis,
                                std::vector<QMatrix> diff) {
    FreeComplex c{lo, std::move(basis), std::move(diff)};
    // trim empty edges for canonical ranges
    while (!c.basis.empty() && c.basis.front().empty()) {
        c.basis.erase(c.basis.begin());
        if (!c.diff.empty()) c.diff.erase(c.diff.begin());
        ++c.lo;
    }
    while (!c.basis.empty() && c.basis.back().empty()) {
        c.basis.pop_back();
        if (!c.diff.empty()) c.diff.pop_back();
    }
    if (c.basis.empty()) { c.lo = 0; c.diff.clear(); }
    c.validate();
    return c;
}

FreeComplex cone(const ComplexMap& f) {
    f.validate();
    // Align the source to the target grading: X' = X[-shift] carries the
    // differential (-1)^shift dX and f becomes an unshifted chain map.
    // Then C^n = X'^{n+1} (+) Y^n with d = [[-dX', 0], [f, dY]].
    const FreeComplex x = f.source.shifted(-f.shift);
    const FreeComplex& y = f.target;
    if (x.basis.empty() && y.basis.empty()) return FreeComplex::empty();
    int lo, hi;
    if (x.basis.empty()) { lo = y.lo; hi = y.hi(); }
    else if (y.basis.empty()) { lo = x.lo - 1; hi = x.hi() - 1; }
    else { lo = std::min(x.lo - 1, y.lo); hi = std::max(x.hi() - 1, y.hi()); }
    std::vector<std::vector<std::string>> basis;
    std::vector<QMatrix> diff;
    for (int n = lo; n <= hi; ++n) {
        std::vector<std::string> names;
        for (const auto& s : x.names(n + 1)) names.push_back("s(" + s + ")");
        for (const auto& s : y.names(n)) names.push_back(s);
        basis.push_back(std::move(names));
    }
    for (int n = lo; n < hi; ++n) {
        int xs = x.dim(n + 1), ys = y.dim(n);
        int xt = x.dim(n + 2), yt = y.dim(n + 1);
        QMatrix m(xt + yt, xs + ys);
        QMatrix dx = x.d(n + 1);
        QMatrix fb = f.block(n + 1 - f.shift); // X^{n+1-shift} -> Y^{n+1}
        QMatrix dy = y.d(n);
        for (int i = 0; i < xt; ++i)
            for (int j = 0; j < xs; ++j) m.at(i, j) = -dx.at(i, j);
        for (int i = 0; i < yt; ++i) {
            for (int j = 0; j < xs; ++j) m.at(xt + i, j) = fb.at(i, j);
            for (int j = 0; j < ys; ++j) m.at(xt + i, xs + j) = dy.at(i, j);
        }
        diff.push_back(std::move(m));
    }
    return make_complex(lo, std::move(basis), std::move(diff));
}

FreeComplex cocone(const ComplexMap& f) { return cone(f).shifted(-1); }

FreeComplex strict_kernel(const ComplexMap& f) {
    f.validate();
    const FreeComplex& x = f.source;
    if (x.basis.empty()) return FreeComplex::empty();
    std::vector<QMatrix> kb; // kernel bases per degree
    std::vector<std::vector<std::string>> basis;
    for (int n = x.lo; n <= x.hi(); ++n) {
        QMatrix k = f.block(n).kernel_basis();
        std::vector<std::string> names;
        for (int j = 0; j < k.cols(); ++j)
            names.push_back("k" + std::to_string(n) + "_" + std::to_string(j + 1));
        kb.push_back(k);
        basis.push_back(std::move(names));
    }
    std::vector<QMatrix> diff;
    for (int n = x.lo; n < x.hi(); ++n) {
        // induced differential: solve K_{n+1} c = d K_n
        const QMatrix& kn = kb[static_cast<size_t>(n - x.lo)];
        const QMatrix& kn1 = kb[static_cast<size_t>(n + 1 - x.lo)];
        QMatrix rhs = x.d(n) * kn;
        QMatrix c = kn1.solve(rhs); // throws if d does not restrict
        diff.push_back(std::move(c));
    }
    return make_complex(x.lo, std::move(basis), std::move(diff));
}

namespace {

/// Per-degree complement data of im(f) inside Y: rows = projection to the
/// chosen complementary coordinates.
struct Quotient {
    std::vector<int> kept; // indices of basis vectors spanning the complement
    QMatrix proj;          // dim(kept) x dim(Y): projection along im(f)
};

Quotient quotient_of(const QMatrix& image_cols, int ydim) {
    Quotient q;
    // Row-reduce image^T: pivot columns are the leading coordinates of the
    // image inside Y; the complementary standard vectors span the quotient.
    std::vector<int> lead_coords;
    QMatrix rt = image_cols.transposed().rref(&lead_coords); // rows span the image
    std::vector<bool> is_lead(static_cast<size_t>(ydim), false);
    for (int c : lead_coords) is_lead[static_cast<size_t>(c)] = true;
    for (int i = 0; i < ydim; ++i)
        if (!is_lead[static_cast<size_t>(i)]) q.kept.push_back(i);
    // Change of basis B = [image basis | e_kept]; quotient coordinates are
    // the kept rows of B^{-1}.
    const int rk = static_cast<int>(lead_coords.size());
    QMatrix basis(ydim, ydim);
    for (int i = 0; i < rk; ++i)
        for (int j = 0; j < ydim; ++j) basis.at(j, i) = rt.at(i, j);
    for (size_t j = 0; j < q.kept.size(); ++j)
        basis.at(q.kept[j], rk + static_cast<int>(j)) = 1;
    QMatrix inv = basis.solve(QMatrix::identity(ydim));
    q.proj = QMatrix(static_cast<int>(q.kept.size()), ydim);
    for (size_t i = 0; i < q.kept.size(); ++i)
        for (int j = 0; j < ydim; ++j)
            q.proj.at(static_cast<int>(i), j) = inv.at(rk + static_cast<int>(i), j);
    return q;
}

} // namespace

FreeComplex strict_cokernel(const ComplexMap& f) {
    f.validate();
    const FreeComplex& y = f.target;
    if (y.basis.empty()) return FreeComplex::empty();
    std::vector<Quotient> qs;
    std::vector<std::vector<std::string>> basis;
    for (int n = y.lo; n <= y.hi(); ++n) {
        Quotient q = quotient_of(f.block(n - f.shift), y.dim(n));
        std::vector<std::string> names;
        for (int i : q.kept) names.push_back("[" + y.names(n)[static_cast<size_t>(i)] + "]");
        qs.push_back(std::move(q));
        basis.push_back(std::move(names));
    }
    std::vector<QMatrix> diff;
    for (int n = y.lo; n < y.hi(); ++n) {
        const Quotient& qn = qs[static_cast<size_t>(n - y.lo)];
        const Quotient& qn1 = qs[static_cast<size_t>(n + 1 - y.lo)];
        // induced map on representatives e_kept
        QMatrix reps(y.dim(n), static_cast<int>(qn.kept.size()));
        for (size_t j = 0; j < qn.kept.size(); ++j) reps.at(qn.kept[j], static_cast<int>(j)) = 1;
        diff.push_back(qn1.proj * (y.d(n) * reps));
    }
    return make_complex(y.lo, std::move(basis), std::move(diff));
}

ComplexMap kernel_into_cocone(const ComplexMap& f) {
    if (f.shift != 0)
        throw Error("shape-mismatch", "kernel-into-cocone needs an unshifted chain map");
    FreeComplex k = strict_kernel(f);
    FreeComplex cc = cocone(f);
    // Rebuild the kernel bases to express the inclusion in cocone coordinates:
    // cocone^n = X^n (+) Y^{n-1+shift graded}; the X part comes first.
    // (cone aligned x = source shifted; after shifting back by -1 the X block
    // sits at the original source degree.)
    ComplexMap inc;
    inc.source = k;
    inc.target = cc;
    inc.shift = 0;
    std::vector<QMatrix> kb;
    for (int n = f.source.lo; n <= f.source.hi(); ++n) kb.push_back(f.block(n).kernel_basis());
    for (int n = k.lo; n <= k.hi(); ++n) {
        QMatrix m(cc.dim(n), k.dim(n));
        if (k.dim(n) > 0) {
            const QMatrix& basis = kb[static_cast<size_t>(n - f.source.lo)];
            for (int i = 0; i < basis.rows(); ++i)
                for (int j = 0; j < basis.cols(); ++j) m.at(i, j) = basis.at(i, j);
        }
        inc.blocks.push_back(std::move(m));
    }
    if (k.basis.empty()) inc.blocks.clear();
    inc.validate();
    return inc;
}

std::vector<std::pair<int, int>> homology_ranks(const FreeComplex& C) {
    C.validate();
    std::vector<std::pair<int, int>> out;
    for (int n = C.lo; n <= C.hi(); ++n) {
        int h = C.dim(n) - C.d(n).rank() - C.d(n - 1).rank();
        out.push_back({n, h});
    }
    return out;
}

Report is_quasi_iso(const ComplexMap& f) {
    Report r;
    FreeComplex c = cone(f);
    auto ranks = homology_ranks(c);
    bool ok = true;
    std::ostringstream detail;
    for (const auto& [deg, rk] : ranks) {
        if (rk != 0) {
            ok = false;
            if (detail.tellp() > 0) detail << ", ";
            detail << "H^" << deg << "(cone) rank " << rk;
        }
    }
    r.add("quasi-iso", ok, ok ? "" : detail.str());
    return r;
}

FreeComplex restrict_cotangent(const Cdga& A, const Point& p) {
    p.validate(*A.alg);
    const Algebra& alg = *A.alg;
    int n = A.max_depth();
    FreeComplex c;
    c.lo = -n;
    c.basis.resize(static_cast<size_t>(n) + 1);
    std::vector<std::vector<int>> ids(static_cast<size_t>(n) + 1);
    for (int id : alg.sorted_ids()) {
        if (!alg.var(id).counts_for_vdim) continue; // adjoined inverses are not generators
        int deg = alg.degree(id);
        c.basis[static_cast<size_t>(deg + n)].push_back("D(" + alg.name(id) + ")");
        ids[static_cast<size_t>(deg + n)].push_back(id);
    }
    for (int i = 0; i < n; ++i) {
        const auto& cols = ids[static_cast<size_t>(i)];
        const auto& rows = ids[static_cast<size_t>(i) + 1];
        QMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        for (size_t j = 0; j < cols.size(); ++j) {
            Poly dv = A.d.image(cols[j]);
            if (dv.is_zero()) continue;
            for (size_t r = 0; r < rows.size(); ++r)
                m.at(static_cast<int>(r), static_cast<int>(j)) =
                    evaluate(partial(dv, rows[r]), p);
        }
        c.diff.push_back(std::move(m));
    }
    try {
        return make_complex(c.lo, std::move(c.basis), std::move(c.diff));
    } catch (const Error&) {
        throw Error("point-off-truncation",
                    "restriction at this point is not a complex (the point does not lie on "
                    "spec H^0(A))");
    }
}

FreeComplex restrict_tangent(const Cdga& A, const Point& p) {
    FreeComplex cot = restrict_cotangent(A, p);
    FreeComplex t = cot.dualized();
    for (auto& names : t.basis)
        for (auto& s : names) {
            // D(v)* -> d/dv
            std::string inner = s.substr(2, s.size() - 4);
            s = "∂/∂" + inner;
        }
    return t;
}

} // namespace sctk
