#ifndef SELFSPEC_LINALG_H
#define SELFSPEC_LINALG_H

#include <vector>

namespace selfspec {

// Dense square matrix, row-major. Small-dimension workhorse for the
// oracle paths and for pencil reduction; nothing here is tuned for
// large sizes.
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {}

    int dim() const { return dim_; }
    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    double max_abs() const;
    void symmetrize();

    static DenseMatrix identity(int dim);

private:
    int dim_ = 0;
    std::vector<double> a_;
};

// A = L·Lᵀ with L lower triangular. Returns false if a pivot is not
// strictly positive (A not numerically positive definite).
bool cholesky(const DenseMatrix& a, DenseMatrix& l);

// Solve L·x = b (lower) or Lᵀ·x = b in place.
void solve_lower(const DenseMatrix& l, std::vector<double>& b);
void solve_lower_transposed(const DenseMatrix& l, std::vector<double>& b);

// Inverse of a symmetric positive definite matrix via Cholesky.
// Returns false when the factorization fails.
bool spd_inverse(const DenseMatrix& a, DenseMatrix& inv);

// det(A) for symmetric positive definite A (product of squared Cholesky
// pivots). Returns 0 when the factorization fails.
double spd_determinant(const DenseMatrix& a);

// Solve A·x = b with partial pivoting; A is overwritten. Returns false
// on a (numerically) singular pivot.
bool lu_solve(DenseMatrix a, std::vector<double> b, std::vector<double>& x);

// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi
// rotations with a threshold sweep strategy.
std::vector<double> jacobi_eigenvalues(DenseMatrix a);

// Eigenvalues of the symmetric pencil A - λ·B with A positive definite:
// values λ where A·v = λ·B·v has a nontrivial solution. Reduction by the
// Cholesky factor of A, then Jacobi on the congruent form of B; only the
// rank(B) finite eigenvalues are returned (ascending). `rank_rel_tol`
// separates zero eigenvalues of the reduced matrix from finite ones.
// Throws Error(NotPositiveDefinite) when A fails its Cholesky check.
std::vector<double> generalized_eigs_spd(const DenseMatrix& a, const DenseMatrix& b,
                                         double rank_rel_tol = 1e-13);

// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int point_count);

} // namespace selfspec

#endif
