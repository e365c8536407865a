#pragma once

#include <cstddef>
#include <vector>

namespace corrclust {

// Dense rectangular matrix, row-major. Used for feature rows and as
// scratch inside the eigensolver.
struct RowMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;  // rows*cols

    RowMatrix() = default;
    RowMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};

// Dense symmetric matrix with full row-major storage. Exact symmetry is an
// invariant: constructors symmetrize (or reject asymmetry above 1e-12) and
// set() writes both triangles.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n);

    // Builds from full row-major data. Asymmetry up to 1e-12 (absolute) is
    // repaired by averaging with the transpose; anything larger is an error,
    // as are non-finite entries.
    SymMatrix(int n, const std::vector<double>& rowmajor);

    static SymMatrix identity(int n);
    static SymMatrix diag(const std::vector<double>& d);

    int n() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) {
        a_[static_cast<size_t>(i) * n_ + j] = v;
        a_[static_cast<size_t>(j) * n_ + i] = v;
    }
    void add(int i, int j, double v) {
        a_[static_cast<size_t>(i) * n_ + j] += v;
        if (i != j) a_[static_cast<size_t>(j) * n_ + i] += v;
    }

    const std::vector<double>& raw() const { return a_; }
    std::vector<double>& raw() { return a_; }

    std::vector<double> diagonal() const;
    double trace() const;
    double frob_norm() const;
    double max_abs() const;
    double min_entry() const;
    double max_entry() const;

    bool all_finite() const;

    SymMatrix submatrix(const std::vector<int>& idx) const;

    friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
    friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
    SymMatrix& operator+=(const SymMatrix& b);
    SymMatrix& operator-=(const SymMatrix& b);
    SymMatrix scaled(double s) const;

private:
    int n_ = 0;
    std::vector<double> a_;
};

// <A, B> = trace(A^T B).
double inner(const SymMatrix& a, const SymMatrix& b);

// Eigendecomposition M = Q diag(lambda) Q^T with eigenvalues sorted
// non-increasing; column j of Q is the eigenvector for eigenvalues[j].
struct EigenDecomp {
    int n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> q;  // row-major n*n, columns are eigenvectors
    double vec(int i, int j) const { return q[static_cast<size_t>(i) * n + j]; }
    std::vector<double> eigenvector(int j) const;
};

// Cyclic Jacobi with off-diagonal Frobenius threshold 1e-13*||M||_F and at
// most 100 sweeps. Deterministic for a fixed input.
EigenDecomp eig_sym(const SymMatrix& m);

// Euclidean projection onto the PSD cone: clamps negative eigenvalues.
SymMatrix project_psd(const SymMatrix& m);

double min_eigenvalue(const SymMatrix& m);

// Internal eigensolver state reusable across nearby inputs: the previous
// basis pre-rotates the matrix so the Jacobi sweeps start almost diagonal.
// Used by the SDP solver where consecutive iterates differ by O(step).
class JacobiWorkspace {
public:
    // Decomposes m; eigenvalues unsorted (paired with basis columns).
    // The internal basis is carried to the next call.
    void decompose(const SymMatrix& m);

    int n() const { return n_; }
    const std::vector<double>& eigenvalues() const { return vals_; }
    const std::vector<double>& basis() const { return q_; }  // row-major, columns

    // Reconstructs sum over eigenpairs with lambda > 0, exactly symmetric.
    SymMatrix assemble_positive_part() const;
    double min_eigenvalue() const;

    void reset() { n_ = 0; }

private:
    int n_ = 0;
    std::vector<double> vals_;
    std::vector<double> q_;     // current basis
    std::vector<double> b_;     // scratch: Q^T M Q
    std::vector<double> tmp_;   // scratch for products
};

namespace detail {
// C = A * B for square row-major n*n buffers.
void matmul(const double* a, const double* b, double* c, int n);
// C = A^T * B.
void matmul_tn(const double* a, const double* b, double* c, int n);
// In-place cyclic Jacobi on row-major symmetric buffer a (n*n), rotations
// accumulated into v (must hold an orthogonal start basis, e.g. identity).
// Returns the number of sweeps used.
int jacobi_inplace(double* a, double* v, int n, double off_threshold, int max_sweeps);
}  // namespace detail

}  // namespace corrclust
