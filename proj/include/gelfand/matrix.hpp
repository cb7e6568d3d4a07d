#ifndef GELFAND_MATRIX_HPP
#define GELFAND_MATRIX_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "gelfand/ff.hpp"
#include "gelfand/rng.hpp"

namespace gelfand::matrix {

using ff::FqElem;
using ff::Field;

inline constexpr int kMaxDim = 8;

/// Dense rectangular matrix of F_q element codes, at most kMaxDim x kMaxDim.
/// Zero rows or columns are legal. Entries are indexed from 0; the 1-based
/// convention lives in IndexSet. Comparison is dimensions first, then the
/// row-major codes.
class Mat {
 public:
  Mat() = default;
  /// Zero matrix of the given shape; throws DimensionError above kMaxDim.
  Mat(int rows, int cols);

  static Mat zero(int rows, int cols) { return Mat(rows, cols); }
  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  FqElem at(int i, int j) const { return FqElem::from_code(codes_[i * cols_ + j]); }
  std::uint8_t code(int i, int j) const { return codes_[i * cols_ + j]; }
  void set(int i, int j, FqElem v) { codes_[i * cols_ + j] = v.code(); }
  void set_code(int i, int j, std::uint8_t v) { codes_[i * cols_ + j] = v; }

  std::uint8_t* data() { return codes_.data(); }
  const std::uint8_t* data() const { return codes_.data(); }
  int size() const { return rows_ * cols_; }

  std::size_t hash() const;

  friend bool operator==(const Mat&, const Mat&) = default;
  friend auto operator<=>(const Mat&, const Mat&) = default;

 private:
  std::uint8_t rows_ = 0;
  std::uint8_t cols_ = 0;
  // Row-major with stride cols_; unused tail stays zero so the defaulted
  // comparisons are exact.
  std::array<std::uint8_t, kMaxDim * kMaxDim> codes_{};
};

struct MatHash {
  std::size_t operator()(const Mat& m) const { return m.hash(); }
};

/// A subset of [N] = {1, ..., N}, members strictly increasing.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and validates; throws DimensionError on duplicates or members
  /// outside [1, universe].
  IndexSet(int universe, std::vector<int> members);

  /// {lo, lo+1, ..., hi} inside [N]; empty when hi < lo.
  static IndexSet range(int universe, int lo, int hi);

  int universe() const { return universe_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  /// The i-th smallest member, 1-based i.
  int operator[](int i) const { return members_[i - 1]; }
  bool contains(int x) const;
  IndexSet complement() const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  int universe_ = 0;
  std::vector<int> members_;
};

// ----------------------------------------------------------- arithmetic

Mat add(const Field& F, const Mat& a, const Mat& b);
Mat sub(const Field& F, const Mat& a, const Mat& b);
Mat neg(const Field& F, const Mat& a);
Mat mul(const Field& F, const Mat& a, const Mat& b);
Mat scale(const Field& F, FqElem c, const Mat& a);
Mat transpose(const Mat& a);
Mat scalar(int n, FqElem c);

FqElem trace(const Field& F, const Mat& a);
FqElem det(const Field& F, const Mat& a);
bool is_invertible(const Field& F, const Mat& a);
int rank(const Field& F, const Mat& a);
/// Throws DomainError for singular input.
Mat inverse(const Field& F, const Mat& a);
bool is_zero(const Mat& a);

// ----------------------------------------------------------- blocks

/// The r x c block whose top-left entry is (r0, c0), 0-based.
Mat extract(const Mat& a, int r0, int c0, int r, int c);
void place(Mat& dst, int r0, int c0, const Mat& block);
/// Assembles a block grid. Every row of blocks must agree in height and every
/// column in width; empty blocks carry their dimensions.
Mat assemble(const std::vector<std::vector<Mat>>& grid);
Mat block_diag(std::initializer_list<Mat> blocks);

/// Splits a into the blocks of the partition rows x cols (sizes, summing to
/// the dimensions); blocks numbered row-major from 0.
std::vector<Mat> partition(const Mat& a, const std::vector<int>& rows,
                           const std::vector<int>& cols);

// ----------------------------------------------------------- structure

/// Anti-diagonal k x k permutation matrix.
Mat w(int k);
/// Row i (1-based) is the unit vector e_{sigma(i)}. sigma is given as its
/// image list sigma(1), ..., sigma(n). Throws DimensionError unless
/// bijective.
Mat perm_matrix(const std::vector<int>& sigma);
bool is_permutation_matrix(const Mat& a);

/// E_{S1,S2}(A): the N x N matrix with A_{ij} at ((S1)_i, (S2)_j).
Mat embed(const IndexSet& s1, const IndexSet& s2, const Mat& a);
/// A (+)_{S1,S2} B = E_{S1,S2}(A) + E_{S1^c,S2^c}(B).
Mat weld(const IndexSet& s1, const IndexSet& s2, const Mat& a, const Mat& b);
/// Rows S1, columns S2 of x (the inverse of embed on its image).
Mat restrict(const Mat& x, const IndexSet& s1, const IndexSet& s2);

/// diag(w_d, I) g^t diag(w_d, I) for square g with d <= dim g.
Mat tau_general(const Mat& g, int d);
/// The anti-involution attached to (n, m): tau_general(g, 2n).
Mat tau(const Mat& g, int n, int m);

/// Least X in GL (enumeration order) with X M X^{-1} = M^t. Throws
/// BudgetExceeded when |GL_dim| exceeds budget.
Mat transpose_similarity_witness(const Field& F, const Mat& m,
                                 std::uint64_t budget = 100000);

// ----------------------------------------------------------- enumeration

/// |GL_n(F_q)|, or UINT64_MAX when it overflows.
std::uint64_t gl_order(int q, int n);
/// q^(r c), saturating at UINT64_MAX.
std::uint64_t matrix_count(int q, int r, int c);

/// GL_n(F_q) in lexicographic order of row-major codes. Throws
/// BudgetExceeded when the order exceeds budget.
std::vector<Mat> gl_elements(const Field& F, int n, std::uint64_t budget);
/// Streams GL_n(F_q) in the same order; stops early (returning false) once
/// fn returns false.
bool for_each_gl(const Field& F, int n, const std::function<bool(const Mat&)>& fn);
/// Calls fn on every r x c matrix, first entry most significant.
void for_each_matrix(const Field& F, int r, int c,
                     const std::function<void(const Mat&)>& fn);
/// The idx-th matrix in that order.
Mat matrix_from_index(const Field& F, int r, int c, std::uint64_t idx);

Mat random_matrix(const Field& F, int r, int c, Rng& rng);
Mat random_gl(const Field& F, int n, Rng& rng);

// ----------------------------------------------------------- text format

/// "q:RxC:[e,e;e,e]"; entries as Field::format.
std::string format(const Field& F, const Mat& a);
/// Inverse of format. Throws ConfigError on malformed input or a field
/// mismatch.
Mat parse(const Field& F, std::string_view text);

}  // namespace gelfand::matrix

#endif  // GELFAND_MATRIX_HPP
