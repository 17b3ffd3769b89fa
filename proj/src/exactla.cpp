#include "rgk/exactla.hpp"

#include "rgk/errors.hpp"

#include <fstream>
#include <sstream>
#include <utility>

namespace rgk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows[0].size() : 0;
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw InvalidInput("from_rows: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidInput("matrix product: shape mismatch");
    IntMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const BigInt& x = a(i, k);
            if (sign(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                mpz_addmul(r(i, j).get_mpz_t(), x.get_mpz_t(), b(k, j).get_mpz_t());
        }
    return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("matrix difference: shape mismatch");
    IntMatrix r = a;
    for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
}

namespace {

// Row-operation bookkeeping shared by the work matrix, U and tracked vectors.
class SnfWork {
public:
    SnfWork(const IntMatrix& m, const SnfOptions& opt)
        : a_(m), rows_(m.rows()), cols_(m.cols()), tracked_(opt.track) {
        for (const auto& v : tracked_)
            if (v.size() != rows_) throw InvalidInput("snf: tracked vector has wrong length");
        if (opt.keep_u) u_ = IntMatrix::identity(rows_);
        if (opt.keep_v) v_ = IntMatrix::identity(cols_);
    }

    SnfResult run() {
        const std::size_t lim = std::min(rows_, cols_);
        std::size_t rank = 0;
        for (std::size_t t = 0; t < lim; ++t) {
            std::size_t pi, pj;
            if (!smallest_in_submatrix(t, pi, pj)) break;
            move_pivot(t, pi, pj);
            clear_cross(t);
            rank = t + 1;
        }
        for (std::size_t t = 0; t < rank; ++t)
            if (sign(a_(t, t)) < 0) negate_row(t);
        fix_divisibility(rank);

        SnfResult res;
        res.d.resize(lim);
        for (std::size_t t = 0; t < lim; ++t) res.d[t] = a_(t, t);
        res.u_det_sign = u_sign_;
        res.v_det_sign = v_sign_;
        res.u = std::move(u_);
        res.v = std::move(v_);
        res.tracked = std::move(tracked_);
        return res;
    }

private:
    BigInt& at(std::size_t i, std::size_t j) { return a_(i, j); }

    bool smallest_in_submatrix(std::size_t t, std::size_t& pi, std::size_t& pj) {
        mpz_srcptr best = nullptr;
        for (std::size_t i = t; i < rows_; ++i)
            for (std::size_t j = t; j < cols_; ++j) {
                const BigInt& x = a_(i, j);
                if (sign(x) == 0) continue;
                if (!best || mpz_cmpabs(x.get_mpz_t(), best) < 0) {
                    best = x.get_mpz_t();
                    pi = i;
                    pj = j;
                }
            }
        return best != nullptr;
    }

    void move_pivot(std::size_t t, std::size_t pi, std::size_t pj) {
        if (pi != t) swap_rows(t, pi);
        if (pj != t) swap_cols(t, pj);
    }

    // Nearest-integer quotient: x - q*p has magnitude at most |p|/2.
    static void round_quotient(mpz_t q, const mpz_t x, const mpz_t p, mpz_t r) {
        mpz_fdiv_qr(q, r, x, p);
        mpz_mul_2exp(r, r, 1);
        if (mpz_cmpabs(r, p) > 0) mpz_add_ui(q, q, 1);
    }

    void clear_cross(std::size_t t) {
        BigInt q, r;
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows_; ++i) {
                if (sign(at(i, t)) == 0) continue;
                round_quotient(q.get_mpz_t(), at(i, t).get_mpz_t(), at(t, t).get_mpz_t(), r.get_mpz_t());
                if (sign(q) != 0) add_row_multiple(i, t, q, t);
                if (sign(at(i, t)) != 0) clean = false;
            }
            if (!clean) {
                repivot(t);
                continue;
            }
            for (std::size_t j = t + 1; j < cols_; ++j) {
                if (sign(at(t, j)) == 0) continue;
                round_quotient(q.get_mpz_t(), at(t, j).get_mpz_t(), at(t, t).get_mpz_t(), r.get_mpz_t());
                if (sign(q) != 0) add_col_multiple(j, t, q, t);
                if (sign(at(t, j)) != 0) clean = false;
            }
            if (clean) return;
            repivot(t);
        }
    }

    // Bring the smallest nonzero entry of row t / column t to (t, t).
    void repivot(std::size_t t) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows_; ++i)
            if (sign(at(i, t)) != 0 && mpz_cmpabs(at(i, t).get_mpz_t(), at(bi, bj).get_mpz_t()) < 0) {
                bi = i;
                bj = t;
            }
        for (std::size_t j = t + 1; j < cols_; ++j)
            if (sign(at(t, j)) != 0 && mpz_cmpabs(at(t, j).get_mpz_t(), at(bi, bj).get_mpz_t()) < 0) {
                bi = t;
                bj = j;
            }
        move_pivot(t, bi, bj);
    }

    // row_i -= q * row_src on columns >= from (earlier columns are zero there).
    void add_row_multiple(std::size_t i, std::size_t src, const BigInt& q, std::size_t from) {
        for (std::size_t j = from; j < cols_; ++j) {
            const BigInt& s = at(src, j);
            if (sign(s) != 0) mpz_submul(at(i, j).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
        }
        if (u_)
            for (std::size_t j = 0; j < rows_; ++j)
                mpz_submul((*u_)(i, j).get_mpz_t(), q.get_mpz_t(), (*u_)(src, j).get_mpz_t());
        for (auto& v : tracked_) mpz_submul(v[i].get_mpz_t(), q.get_mpz_t(), v[src].get_mpz_t());
    }

    // col_j -= q * col_src on rows >= from.
    void add_col_multiple(std::size_t j, std::size_t src, const BigInt& q, std::size_t from) {
        for (std::size_t i = from; i < rows_; ++i) {
            const BigInt& s = at(i, src);
            if (sign(s) != 0) mpz_submul(at(i, j).get_mpz_t(), q.get_mpz_t(), s.get_mpz_t());
        }
        if (v_)
            for (std::size_t i = 0; i < cols_; ++i)
                mpz_submul((*v_)(i, j).get_mpz_t(), q.get_mpz_t(), (*v_)(i, src).get_mpz_t());
    }

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j) mpz_swap(at(i, j).get_mpz_t(), at(k, j).get_mpz_t());
        if (u_)
            for (std::size_t j = 0; j < rows_; ++j) mpz_swap((*u_)(i, j).get_mpz_t(), (*u_)(k, j).get_mpz_t());
        for (auto& v : tracked_) mpz_swap(v[i].get_mpz_t(), v[k].get_mpz_t());
        u_sign_ = -u_sign_;
    }

    void swap_cols(std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < rows_; ++i) mpz_swap(at(i, j).get_mpz_t(), at(i, k).get_mpz_t());
        if (v_)
            for (std::size_t i = 0; i < cols_; ++i) mpz_swap((*v_)(i, j).get_mpz_t(), (*v_)(i, k).get_mpz_t());
        v_sign_ = -v_sign_;
    }

    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) mpz_neg(at(i, j).get_mpz_t(), at(i, j).get_mpz_t());
        if (u_)
            for (std::size_t j = 0; j < rows_; ++j) mpz_neg((*u_)(i, j).get_mpz_t(), (*u_)(i, j).get_mpz_t());
        for (auto& v : tracked_) mpz_neg(v[i].get_mpz_t(), v[i].get_mpz_t());
        u_sign_ = -u_sign_;
    }

    // Diagonal, positive entries on [0, rank). Replace each non-dividing
    // pair (a, b) by (g, ab/g) with determinant-one transforms
    //   U2 = [[s, t], [-b/g, a/g]],  V2 = [[1, -t b/g], [1, s a/g]],  s a + t b = g.
    void fix_divisibility(std::size_t rank) {
        BigInt g, s, t, ag, bg, tmp;
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = i + 1; j < rank; ++j) {
                BigInt& a = at(i, i);
                BigInt& b = at(j, j);
                if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) continue;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
                ag = a / g;
                bg = b / g;
                combine_rows(i, j, s, t, -bg, ag);
                // Column combination: new_i = col_i + col_j, new_j = -t b/g col_i + s a/g col_j.
                if (v_) {
                    BigInt c01 = -t * bg, c11 = s * ag;
                    for (std::size_t r = 0; r < cols_; ++r) {
                        BigInt ci = (*v_)(r, i), cj = (*v_)(r, j);
                        (*v_)(r, i) = ci + cj;
                        (*v_)(r, j) = c01 * ci + c11 * cj;
                    }
                }
                tmp = a * bg;
                a = g;
                b = tmp;
            }
    }

    // (row_i, row_j) <- (x*row_i + y*row_j, z*row_i + w*row_j) on U and tracked vectors.
    void combine_rows(std::size_t i, std::size_t j, const BigInt& x, const BigInt& y, const BigInt& z,
                      const BigInt& w) {
        auto mix = [&](BigInt& ri, BigInt& rj) {
            BigInt ni = x * ri + y * rj;
            BigInt nj = z * ri + w * rj;
            ri = std::move(ni);
            rj = std::move(nj);
        };
        if (u_)
            for (std::size_t c = 0; c < rows_; ++c) mix((*u_)(i, c), (*u_)(j, c));
        for (auto& v : tracked_) mix(v[i], v[j]);
    }

    IntMatrix a_;
    std::size_t rows_, cols_;
    std::vector<std::vector<BigInt>> tracked_;
    std::optional<IntMatrix> u_;
    std::optional<IntMatrix> v_;
    int u_sign_ = 1;
    int v_sign_ = 1;
};

} // namespace

SnfResult snf(const IntMatrix& m, const SnfOptions& options) { return SnfWork(m, options).run(); }

SnfResult snf(const IntMatrix& m, bool keep_transforms) {
    SnfOptions opt;
    opt.keep_u = keep_transforms;
    opt.keep_v = keep_transforms;
    return snf(m, opt);
}

FinAbGroup cokernel(const IntMatrix& m) {
    if (!m.is_square()) throw InvalidInput("cokernel: matrix must be square");
    return from_diagonal(std::span<const BigInt>(snf(m, false).d));
}

std::size_t kernel_rank(const IntMatrix& m) {
    if (!m.is_square()) throw InvalidInput("kernel_rank: matrix must be square");
    std::size_t zeros = 0;
    for (const auto& d : snf(m, false).d)
        if (sign(d) == 0) ++zeros;
    return zeros;
}

BigInt det_signed(const IntMatrix& m) {
    if (!m.is_square()) throw InvalidInput("det_signed: matrix must be square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt prev = 1;
    int s = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sign(a(k, k)) == 0) {
            std::size_t r = k + 1;
            while (r < n && sign(a(r, k)) == 0) ++r;
            if (r == n) return 0;
            for (std::size_t j = 0; j < n; ++j) mpz_swap(a(k, j).get_mpz_t(), a(r, j).get_mpz_t());
            s = -s;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // a_ij = (a_kk a_ij - a_ik a_kj) / prev, exact.
                mpz_mul(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), a(k, k).get_mpz_t());
                mpz_submul(a(i, j).get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
                mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a(k, k);
    }
    BigInt d = a(n - 1, n - 1);
    return s < 0 ? BigInt(-d) : d;
}

MatrixParseError::MatrixParseError(std::size_t line_no, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}

namespace {

std::vector<BigInt> parse_ints(const std::string& text, std::size_t line_no) {
    std::istringstream is(text);
    std::vector<BigInt> out;
    std::string tok;
    while (is >> tok) {
        BigInt v;
        std::string digits = tok[0] == '+' ? tok.substr(1) : tok;
        if (digits.empty() || v.set_str(digits, 10) != 0)
            throw MatrixParseError(line_no, "not an integer: '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

} // namespace

IntMatrix read_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) break;
    }
    if (line_no == 0 || blank(line)) throw MatrixParseError(line_no == 0 ? 1 : line_no, "missing header");
    auto header = parse_ints(line, line_no);
    if (header.size() != 2 || header[0] < 1 || header[1] < 1 || !header[0].fits_ulong_p() ||
        !header[1].fits_ulong_p())
        throw MatrixParseError(line_no, "header must be 'rows cols' with positive integers");
    const std::size_t rows = header[0].get_ui(), cols = header[1].get_ui();
    IntMatrix m(rows, cols);
    std::size_t r = 0;
    while (r < rows && std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        auto vals = parse_ints(line, line_no);
        if (vals.size() != cols)
            throw MatrixParseError(line_no, "expected " + std::to_string(cols) + " entries, found " +
                                                std::to_string(vals.size()));
        for (std::size_t j = 0; j < cols; ++j) m(r, j) = vals[j];
        ++r;
    }
    if (r < rows) throw MatrixParseError(line_no + 1, "expected " + std::to_string(rows) + " rows, found " +
                                                         std::to_string(r));
    while (std::getline(in, line)) {
        ++line_no;
        if (!blank(line)) throw MatrixParseError(line_no, "trailing data after last row");
    }
    return m;
}

IntMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot open matrix file: " + path);
    return read_matrix(f);
}

void write_matrix(std::ostream& out, const IntMatrix& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).get_str();
        out << '\n';
    }
}

} // namespace rgk
