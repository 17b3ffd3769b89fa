#pragma once

// Exact integer linear algebra: Smith normal form, determinant, kernel rank.

#include "rgk/abelian.hpp"
#include "rgk/bigint.hpp"

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rgk {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    IntMatrix operator-() const;
    bool operator==(const IntMatrix&) const = default;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

struct SnfOptions {
    bool keep_u = false;
    bool keep_v = false;
    // Column vectors (length rows) to which every row operation is applied,
    // so each comes back as U*v without materialising U.
    std::vector<std::vector<BigInt>> track;
};

// U*M*V = diag(d) with d ascending under divisibility, zeros last.
struct SnfResult {
    std::vector<BigInt> d;
    int u_det_sign = 1;
    int v_det_sign = 1;
    std::optional<IntMatrix> u;
    std::optional<IntMatrix> v;
    std::vector<std::vector<BigInt>> tracked;
};

SnfResult snf(const IntMatrix& m, bool keep_transforms);
SnfResult snf(const IntMatrix& m, const SnfOptions& options);

FinAbGroup cokernel(const IntMatrix& m);

// n - rank(M), read off the SNF.
std::size_t kernel_rank(const IntMatrix& m);

// Bareiss fraction-free elimination; independent of snf.
BigInt det_signed(const IntMatrix& m);

// Text format: "rows cols" on the first line, then one row per line.
struct MatrixParseError : std::runtime_error {
    MatrixParseError(std::size_t line, const std::string& what);
    std::size_t line;
};

IntMatrix read_matrix(std::istream& in);
IntMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const IntMatrix& m);

} // namespace rgk
