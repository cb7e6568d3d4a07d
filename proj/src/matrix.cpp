#include "gelfand/matrix.hpp"

#include <algorithm>
#include <charconv>

#include "gelfand/errors.hpp"

namespace gelfand::matrix {

namespace {

void require_dims(bool ok, const char* what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace

Mat::Mat(int rows, int cols) {
  if (rows < 0 || cols < 0 || rows > kMaxDim || cols > kMaxDim)
    throw DimensionError("matrix shape " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " outside supported range");
  rows_ = static_cast<std::uint8_t>(rows);
  cols_ = static_cast<std::uint8_t>(cols);
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.set_code(i, i, 1);
  return m;
}

std::size_t Mat::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ULL;
  };
  mix(rows_);
  mix(cols_);
  for (int i = 0; i < size(); ++i) mix(codes_[i]);
  return static_cast<std::size_t>(h);
}

// -------------------------------------------------------------- IndexSet

IndexSet::IndexSet(int universe, std::vector<int> members)
    : universe_(universe), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1 || members_[i] > universe_)
      throw DimensionError("index " + std::to_string(members_[i]) +
                           " outside [1, " + std::to_string(universe_) + "]");
    if (i > 0 && members_[i] == members_[i - 1])
      throw DimensionError("duplicate index in index set");
  }
}

IndexSet IndexSet::range(int universe, int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return IndexSet(universe, std::move(v));
}

bool IndexSet::contains(int x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

IndexSet IndexSet::complement() const {
  std::vector<int> v;
  for (int i = 1; i <= universe_; ++i)
    if (!contains(i)) v.push_back(i);
  return IndexSet(universe_, std::move(v));
}

// ------------------------------------------------------------ arithmetic

Mat add(const Field& F, const Mat& a, const Mat& b) {
  require_dims(a.rows() == b.rows() && a.cols() == b.cols(),
               "add: dimension mismatch");
  Mat r(a.rows(), a.cols());
  const std::uint8_t* t = F.add_table();
  const int q = F.q();
  for (int i = 0; i < a.size(); ++i) r.data()[i] = t[a.data()[i] * q + b.data()[i]];
  return r;
}

Mat neg(const Field& F, const Mat& a) {
  Mat r(a.rows(), a.cols());
  const std::uint8_t* t = F.neg_table();
  for (int i = 0; i < a.size(); ++i) r.data()[i] = t[a.data()[i]];
  return r;
}

Mat sub(const Field& F, const Mat& a, const Mat& b) { return add(F, a, neg(F, b)); }

Mat mul(const Field& F, const Mat& a, const Mat& b) {
  require_dims(a.cols() == b.rows(), "mul: dimension mismatch");
  const int R = a.rows(), K = a.cols(), C = b.cols();
  Mat r(R, C);
  if (F.is_prime_field()) {
    const int p = F.p();
    for (int i = 0; i < R; ++i) {
      for (int j = 0; j < C; ++j) {
        int acc = 0;
        for (int k = 0; k < K; ++k) acc += a.code(i, k) * b.code(k, j);
        r.set_code(i, j, static_cast<std::uint8_t>(acc % p));
      }
    }
    return r;
  }
  const std::uint8_t* at = F.add_table();
  const std::uint8_t* mt = F.mul_table();
  const int q = F.q();
  for (int i = 0; i < R; ++i) {
    for (int j = 0; j < C; ++j) {
      std::uint8_t acc = 0;
      for (int k = 0; k < K; ++k)
        acc = at[acc * q + mt[a.code(i, k) * q + b.code(k, j)]];
      r.set_code(i, j, acc);
    }
  }
  return r;
}

Mat scale(const Field& F, FqElem c, const Mat& a) {
  Mat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, F.mul(c, a.at(i, j)));
  return r;
}

Mat transpose(const Mat& a) {
  Mat r(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set_code(j, i, a.code(i, j));
  return r;
}

Mat scalar(int n, FqElem c) {
  Mat r(n, n);
  for (int i = 0; i < n; ++i) r.set(i, i, c);
  return r;
}

FqElem trace(const Field& F, const Mat& a) {
  require_dims(a.is_square(), "trace: matrix not square");
  FqElem acc = F.zero();
  for (int i = 0; i < a.rows(); ++i) acc = F.add(acc, a.at(i, i));
  return acc;
}

namespace {

// Row-reduces a copy of a; returns the rank and accumulates the determinant
// of the leading square part when a is square.
int eliminate(const Field& F, Mat& a, FqElem* det_out) {
  const int R = a.rows(), C = a.cols();
  FqElem det = F.one();
  int rank = 0;
  for (int c = 0; c < C && rank < R; ++c) {
    int piv = -1;
    for (int r = rank; r < R; ++r)
      if (a.code(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != rank) {
      for (int j = 0; j < C; ++j) {
        const std::uint8_t t = a.code(piv, j);
        a.set_code(piv, j, a.code(rank, j));
        a.set_code(rank, j, t);
      }
      det = F.neg(det);
    }
    const FqElem pv = a.at(rank, c);
    det = F.mul(det, pv);
    const FqElem pinv = F.inv(pv);
    for (int r = rank + 1; r < R; ++r) {
      const FqElem f = F.mul(a.at(r, c), pinv);
      if (f.is_zero()) continue;
      for (int j = c; j < C; ++j)
        a.set(r, j, F.sub(a.at(r, j), F.mul(f, a.at(rank, j))));
    }
    ++rank;
  }
  if (det_out) *det_out = (rank == R && R == C) ? det : F.zero();
  return rank;
}

}  // namespace

FqElem det(const Field& F, const Mat& a) {
  require_dims(a.is_square(), "det: matrix not square");
  if (a.rows() == 0) return F.one();
  Mat w = a;
  FqElem d;
  eliminate(F, w, &d);
  return d;
}

int rank(const Field& F, const Mat& a) {
  Mat w = a;
  return eliminate(F, w, nullptr);
}

bool is_invertible(const Field& F, const Mat& a) {
  return a.is_square() && rank(F, a) == a.rows();
}

Mat inverse(const Field& F, const Mat& a) {
  require_dims(a.is_square(), "inverse: matrix not square");
  const int n = a.rows();
  Mat l = a;
  Mat r = Mat::identity(n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i)
      if (l.code(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) throw DomainError("inverse of a singular matrix");
    if (piv != c) {
      for (int j = 0; j < n; ++j) {
        std::uint8_t t = l.code(piv, j);
        l.set_code(piv, j, l.code(c, j));
        l.set_code(c, j, t);
        t = r.code(piv, j);
        r.set_code(piv, j, r.code(c, j));
        r.set_code(c, j, t);
      }
    }
    const FqElem pinv = F.inv(l.at(c, c));
    for (int j = 0; j < n; ++j) {
      l.set(c, j, F.mul(l.at(c, j), pinv));
      r.set(c, j, F.mul(r.at(c, j), pinv));
    }
    for (int i = 0; i < n; ++i) {
      if (i == c) continue;
      const FqElem f = l.at(i, c);
      if (f.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        l.set(i, j, F.sub(l.at(i, j), F.mul(f, l.at(c, j))));
        r.set(i, j, F.sub(r.at(i, j), F.mul(f, r.at(c, j))));
      }
    }
  }
  return r;
}

bool is_zero(const Mat& a) {
  for (int i = 0; i < a.size(); ++i)
    if (a.data()[i] != 0) return false;
  return true;
}

// ---------------------------------------------------------------- blocks

Mat extract(const Mat& a, int r0, int c0, int r, int c) {
  require_dims(r0 >= 0 && c0 >= 0 && r >= 0 && c >= 0 && r0 + r <= a.rows() &&
                   c0 + c <= a.cols(),
               "extract: block outside matrix");
  Mat b(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) b.set_code(i, j, a.code(r0 + i, c0 + j));
  return b;
}

void place(Mat& dst, int r0, int c0, const Mat& block) {
  require_dims(r0 >= 0 && c0 >= 0 && r0 + block.rows() <= dst.rows() &&
                   c0 + block.cols() <= dst.cols(),
               "place: block outside matrix");
  for (int i = 0; i < block.rows(); ++i)
    for (int j = 0; j < block.cols(); ++j)
      dst.set_code(r0 + i, c0 + j, block.code(i, j));
}

Mat assemble(const std::vector<std::vector<Mat>>& grid) {
  if (grid.empty()) return Mat(0, 0);
  const std::size_t nc = grid[0].size();
  std::vector<int> heights, widths(nc);
  for (std::size_t j = 0; j < nc; ++j) widths[j] = grid[0][j].cols();
  for (const auto& row : grid) {
    require_dims(row.size() == nc, "assemble: ragged block grid");
    heights.push_back(row.empty() ? 0 : row[0].rows());
    for (std::size_t j = 0; j < nc; ++j)
      require_dims(row[j].rows() == heights.back() && row[j].cols() == widths[j],
                   "assemble: inconsistent block sizes");
  }
  int R = 0, C = 0;
  for (int h : heights) R += h;
  for (int w : widths) C += w;
  Mat out(R, C);
  int r0 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    int c0 = 0;
    for (std::size_t j = 0; j < nc; ++j) {
      place(out, r0, c0, grid[i][j]);
      c0 += widths[j];
    }
    r0 += heights[i];
  }
  return out;
}

Mat block_diag(std::initializer_list<Mat> blocks) {
  int R = 0, C = 0;
  for (const Mat& b : blocks) {
    R += b.rows();
    C += b.cols();
  }
  Mat out(R, C);
  int r0 = 0, c0 = 0;
  for (const Mat& b : blocks) {
    place(out, r0, c0, b);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

std::vector<Mat> partition(const Mat& a, const std::vector<int>& rows,
                           const std::vector<int>& cols) {
  int R = 0, C = 0;
  for (int r : rows) R += r;
  for (int c : cols) C += c;
  require_dims(R == a.rows() && C == a.cols(),
               "partition: sizes do not match the matrix");
  std::vector<Mat> out;
  int r0 = 0;
  for (int r : rows) {
    int c0 = 0;
    for (int c : cols) {
      out.push_back(extract(a, r0, c0, r, c));
      c0 += c;
    }
    r0 += r;
  }
  return out;
}

// ------------------------------------------------------------- structure

Mat w(int k) {
  Mat m(k, k);
  for (int i = 0; i < k; ++i) m.set_code(i, k - 1 - i, 1);
  return m;
}

Mat perm_matrix(const std::vector<int>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(n + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[v])
      throw DimensionError("perm_matrix: input is not a permutation");
    seen[v] = true;
  }
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.set_code(i, sigma[i] - 1, 1);
  return m;
}

bool is_permutation_matrix(const Mat& a) {
  if (!a.is_square()) return false;
  const int n = a.rows();
  std::vector<int> col_count(n, 0);
  for (int i = 0; i < n; ++i) {
    int ones = 0;
    for (int j = 0; j < n; ++j) {
      const std::uint8_t c = a.code(i, j);
      if (c == 1) {
        ++ones;
        ++col_count[j];
      } else if (c != 0) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(),
                     [](int c) { return c == 1; });
}

Mat embed(const IndexSet& s1, const IndexSet& s2, const Mat& a) {
  require_dims(s1.universe() == s2.universe(),
               "embed: index sets in different universes");
  require_dims(a.rows() == s1.size() && a.cols() == s2.size(),
               "embed: block size does not match index sets");
  const int N = s1.universe();
  Mat out(N, N);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.set_code(s1.members()[i] - 1, s2.members()[j] - 1, a.code(i, j));
  return out;
}

Mat weld(const IndexSet& s1, const IndexSet& s2, const Mat& a, const Mat& b) {
  const IndexSet c1 = s1.complement(), c2 = s2.complement();
  require_dims(b.rows() == c1.size() && b.cols() == c2.size(),
               "weld: second block does not match the complements");
  Mat out = embed(s1, s2, a);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      out.set_code(c1.members()[i] - 1, c2.members()[j] - 1, b.code(i, j));
  return out;
}

Mat restrict(const Mat& x, const IndexSet& s1, const IndexSet& s2) {
  require_dims(x.rows() == s1.universe() && x.cols() == s2.universe(),
               "restrict: universe does not match the matrix");
  Mat out(s1.size(), s2.size());
  for (int i = 0; i < s1.size(); ++i)
    for (int j = 0; j < s2.size(); ++j)
      out.set_code(i, j, x.code(s1.members()[i] - 1, s2.members()[j] - 1));
  return out;
}

Mat tau_general(const Mat& g, int d) {
  require_dims(g.is_square() && d >= 0 && d <= g.rows(),
               "tau: matrix not square or reversal block too large");
  const int N = g.rows();
  auto pi = [d](int i) { return i < d ? d - 1 - i : i; };
  Mat out(N, N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) out.set_code(i, j, g.code(pi(j), pi(i)));
  return out;
}

Mat tau(const Mat& g, int n, int m) {
  require_dims(g.rows() == n + m && g.cols() == n + m && n <= m,
               "tau: matrix is not (n+m) x (n+m)");
  return tau_general(g, 2 * n);
}

Mat transpose_similarity_witness(const Field& F, const Mat& m,
                                 std::uint64_t budget) {
  require_dims(m.is_square(), "transpose_similarity_witness: not square");
  const Mat mt = transpose(m);
  for (const Mat& x : gl_elements(F, m.rows(), budget)) {
    if (mul(F, x, m) == mul(F, mt, x)) return x;
  }
  throw DomainError("no transpose similarity found; arithmetic is broken");
}

// ----------------------------------------------------------- enumeration

std::uint64_t gl_order(int q, int n) {
  unsigned __int128 order = 1;
  unsigned __int128 qn = 1;
  for (int i = 0; i < n; ++i) qn *= q;
  unsigned __int128 qi = 1;
  for (int i = 0; i < n; ++i) {
    order *= (qn - qi);
    qi *= q;
    if (order > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(order);
}

std::uint64_t matrix_count(int q, int r, int c) {
  std::uint64_t out = 1;
  for (int i = 0; i < r * c; ++i) {
    if (out > UINT64_MAX / static_cast<std::uint64_t>(q)) return UINT64_MAX;
    out *= static_cast<std::uint64_t>(q);
  }
  return out;
}

namespace {

struct Echelon {
  // Rows normalized to pivot 1, pivot columns strictly increasing; a row's
  // entries left of its pivot are zero.
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<int> pivots;
};

bool reduce_against(const Field& F, const Echelon& e,
                    std::vector<std::uint8_t>& v) {
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    const FqElem f = FqElem::from_code(v[e.pivots[r]]);
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = F.sub(FqElem::from_code(v[j]),
                   F.mul(f, FqElem::from_code(e.rows[r][j])))
                 .code();
  }
  return std::any_of(v.begin(), v.end(), [](std::uint8_t c) { return c != 0; });
}

void push_row(const Field& F, Echelon& e, std::vector<std::uint8_t> v) {
  int piv = 0;
  while (v[piv] == 0) ++piv;
  const FqElem inv = F.inv(FqElem::from_code(v[piv]));
  for (auto& c : v) c = F.mul(FqElem::from_code(c), inv).code();
  // Clear the new pivot column from existing rows to stay reduced.
  for (auto& row : e.rows) {
    const FqElem f = FqElem::from_code(row[piv]);
    if (f.is_zero()) continue;
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = F.sub(FqElem::from_code(row[j]),
                     F.mul(f, FqElem::from_code(v[j])))
                   .code();
  }
  e.rows.push_back(std::move(v));
  e.pivots.push_back(piv);
}

bool gl_dfs(const Field& F, int n, int row, Mat& cur, const Echelon& e,
            const std::vector<std::vector<std::uint8_t>>& vectors,
            const std::function<bool(const Mat&)>& fn) {
  if (row == n) return fn(cur);
  for (const auto& v : vectors) {
    std::vector<std::uint8_t> red = v;
    if (!reduce_against(F, e, red)) continue;
    Echelon next = e;
    push_row(F, next, red);
    for (int j = 0; j < n; ++j) cur.set_code(row, j, v[j]);
    if (!gl_dfs(F, n, row + 1, cur, next, vectors, fn)) return false;
  }
  return true;
}

}  // namespace

bool for_each_gl(const Field& F, int n, const std::function<bool(const Mat&)>& fn) {
  if (n == 0) return fn(Mat(0, 0));
  std::vector<std::vector<std::uint8_t>> vectors;
  for (std::uint64_t idx = 0; idx < matrix_count(F.q(), 1, n); ++idx) {
    const Mat r = matrix_from_index(F, 1, n, idx);
    vectors.emplace_back(r.data(), r.data() + n);
  }
  Mat cur(n, n);
  return gl_dfs(F, n, 0, cur, Echelon{}, vectors, fn);
}

std::vector<Mat> gl_elements(const Field& F, int n, std::uint64_t budget) {
  const std::uint64_t order = gl_order(F.q(), n);
  if (order > budget)
    throw BudgetExceeded("|GL_" + std::to_string(n) + "(F_" +
                         std::to_string(F.q()) + ")| = " +
                         std::to_string(order) + " exceeds the budget " +
                         std::to_string(budget));
  std::vector<Mat> out;
  out.reserve(order);
  for_each_gl(F, n, [&](const Mat& g) {
    out.push_back(g);
    return true;
  });
  return out;
}

Mat matrix_from_index(const Field& F, int r, int c, std::uint64_t idx) {
  Mat m(r, c);
  const int q = F.q();
  for (int i = r * c - 1; i >= 0; --i) {
    m.data()[i] = static_cast<std::uint8_t>(idx % q);
    idx /= q;
  }
  return m;
}

void for_each_matrix(const Field& F, int r, int c,
                     const std::function<void(const Mat&)>& fn) {
  Mat m(r, c);
  const int q = F.q();
  const int sz = r * c;
  while (true) {
    fn(m);
    int i = sz - 1;
    while (i >= 0 && m.data()[i] == q - 1) {
      m.data()[i] = 0;
      --i;
    }
    if (i < 0) return;
    ++m.data()[i];
  }
}

Mat random_matrix(const Field& F, int r, int c, Rng& rng) {
  Mat m(r, c);
  for (int i = 0; i < r * c; ++i)
    m.data()[i] = static_cast<std::uint8_t>(rng.uniform_int(F.q()));
  return m;
}

Mat random_gl(const Field& F, int n, Rng& rng) {
  while (true) {
    Mat m = random_matrix(F, n, n, rng);
    if (is_invertible(F, m)) return m;
  }
}

// ----------------------------------------------------------- text format

std::string format(const Field& F, const Mat& a) {
  std::string s = std::to_string(F.q()) + ":" + std::to_string(a.rows()) +
                  "x" + std::to_string(a.cols()) + ":[";
  for (int i = 0; i < a.rows(); ++i) {
    if (i) s += ';';
    for (int j = 0; j < a.cols(); ++j) {
      if (j) s += ',';
      s += F.format(a.at(i, j));
    }
  }
  s += ']';
  return s;
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw ConfigError("malformed matrix text '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Mat parse(const Field& F, std::string_view text) {
  const auto bad = [&] {
    return ConfigError("malformed matrix text '" + std::string(text) + "'");
  };
  const auto c1 = text.find(':');
  if (c1 == std::string_view::npos) throw bad();
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw bad();
  if (parse_int(text.substr(0, c1), text) != F.q())
    throw ConfigError("matrix text field order does not match");
  const std::string_view shape = text.substr(c1 + 1, c2 - c1 - 1);
  const auto x = shape.find('x');
  if (x == std::string_view::npos) throw bad();
  const int R = parse_int(shape.substr(0, x), text);
  const int C = parse_int(shape.substr(x + 1), text);
  std::string_view body = text.substr(c2 + 1);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']') throw bad();
  body = body.substr(1, body.size() - 2);
  Mat m(R, C);
  if (R * C == 0) {
    for (char ch : body)
      if (ch != ';') throw bad();
    return m;
  }
  // Tokenize entries; parentheses group extension-field coordinates.
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == ';') {
      rows.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (static_cast<int>(rows.size()) != R) throw bad();
  for (int i = 0; i < R; ++i) {
    std::vector<std::string_view> entries;
    int depth = 0;
    std::size_t st = 0;
    const std::string_view row = rows[i];
    for (std::size_t j = 0; j <= row.size(); ++j) {
      if (j < row.size() && row[j] == '(') ++depth;
      if (j < row.size() && row[j] == ')') --depth;
      if (j == row.size() || (row[j] == ',' && depth == 0)) {
        entries.push_back(row.substr(st, j - st));
        st = j + 1;
      }
    }
    if (static_cast<int>(entries.size()) != C) throw bad();
    for (int j = 0; j < C; ++j) {
      const std::string_view e = entries[j];
      if (F.is_prime_field()) {
        const int v = parse_int(e, text);
        if (v < 0 || v >= F.q()) throw bad();
        m.set(i, j, F.from_code(v));
        continue;
      }
      if (e.size() < 2 || e.front() != '(' || e.back() != ')') throw bad();
      std::vector<int> coeffs;
      std::string_view inner = e.substr(1, e.size() - 2);
      std::size_t s = 0;
      for (std::size_t t = 0; t <= inner.size(); ++t) {
        if (t == inner.size() || inner[t] == ',') {
          const int v = parse_int(inner.substr(s, t - s), text);
          if (v < 0 || v >= F.p()) throw bad();
          coeffs.push_back(v);
          s = t + 1;
        }
      }
      if (static_cast<int>(coeffs.size()) != F.k()) throw bad();
      m.set(i, j, F.from_coeffs(coeffs));
    }
  }
  return m;
}

}  // namespace gelfand::matrix
