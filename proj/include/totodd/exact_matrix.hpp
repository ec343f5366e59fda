#pragma once

#include <totodd/numbers.hpp>

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace totodd {

/// Dense matrix of arbitrary-precision integers. Row/column indices refer to
/// positions in the lex-decreasing totally odd index tables whenever the
/// matrix was produced by the factory.
class ExactMatrix {
public:
    ExactMatrix() = default;

    ExactMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ExactMatrix identity(std::size_t n) {
        ExactMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static ExactMatrix from_rows(const std::vector<std::vector<Int>>& rows) {
        if (rows.empty()) return ExactMatrix();
        ExactMatrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("ExactMatrix::from_rows: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
    }

    void append_row(const std::vector<Int>& row) {
        if (rows_ == 0 && cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) throw std::invalid_argument("ExactMatrix::append_row: width mismatch");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("ExactMatrix: product dimension mismatch");
        ExactMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Int& aik = a(i, k);
                if (aik.is_zero()) continue;  // block matrices are mostly zero
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Int& bkj = b(k, j);
                    if (!bkj.is_zero()) c(i, j) += aik * bkj;
                }
            }
        }
        return c;
    }

    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("ExactMatrix: sum dimension mismatch");
        ExactMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }

    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("ExactMatrix: difference dimension mismatch");
        ExactMatrix c = a;
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

/// Identification of a cached matrix: family tag plus parameters.
struct MatrixMeta {
    std::string kind;  // "E", "Ej", "C" or "F"
    int weight = 0;
    int depth = 0;
    int j = -1;  // only meaningful for kind == "Ej"

    std::string header_line() const {
        std::string s = kind + " " + std::to_string(weight) + " " + std::to_string(depth);
        if (j >= 0) s += " " + std::to_string(j);
        return s;
    }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string matrix_body_text(const ExactMatrix& m, const MatrixMeta& meta) {
    std::ostringstream out;
    out << meta.header_line() << "\n" << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << " ";
            out << m(i, j);
        }
        out << "\n";
    }
    return out.str();
}

inline std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

}  // namespace detail

inline std::uint64_t matrix_checksum(const ExactMatrix& m, const MatrixMeta& meta) {
    return detail::fnv1a64(detail::matrix_body_text(m, meta));
}

/// Canonical text format:
///   totodd-matrix v1
///   <kind> <N> <r> [<j>]
///   <rows> <cols>
///   <row of decimal integers> ...
///   checksum <16 hex digits>
/// The checksum covers everything after the version line and lets the cache
/// detect truncated or hand-edited files.
inline void write_matrix(std::ostream& out, const ExactMatrix& m, const MatrixMeta& meta) {
    const std::string body = detail::matrix_body_text(m, meta);
    out << "totodd-matrix v1\n"
        << body << "checksum " << detail::hex64(detail::fnv1a64(body)) << "\n";
}

struct LoadedMatrix {
    ExactMatrix matrix;
    MatrixMeta meta;
    std::uint64_t checksum = 0;
};

inline LoadedMatrix read_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "totodd-matrix v1")
        throw std::runtime_error("matrix file: bad or missing version line");

    if (!std::getline(in, line)) throw std::runtime_error("matrix file: missing kind line");
    LoadedMatrix result;
    {
        std::istringstream hs(line);
        hs >> result.meta.kind >> result.meta.weight >> result.meta.depth;
        if (!hs) throw std::runtime_error("matrix file: malformed kind line");
        if (!(hs >> result.meta.j)) result.meta.j = -1;
    }

    std::size_t rows = 0, cols = 0;
    if (!std::getline(in, line)) throw std::runtime_error("matrix file: missing size line");
    {
        std::istringstream ss(line);
        ss >> rows >> cols;
        if (!ss) throw std::runtime_error("matrix file: malformed size line");
    }

    result.matrix = ExactMatrix(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line)) throw std::runtime_error("matrix file: truncated rows");
        std::istringstream rs(line);
        std::string tok;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(rs >> tok)) throw std::runtime_error("matrix file: short row");
            result.matrix(i, j) = Int(tok);
        }
        if (rs >> tok) throw std::runtime_error("matrix file: long row");
    }

    result.checksum = matrix_checksum(result.matrix, result.meta);
    if (std::getline(in, line) && !line.empty()) {
        std::istringstream cs(line);
        std::string tag, hex;
        cs >> tag >> hex;
        if (tag != "checksum" || hex != detail::hex64(result.checksum))
            throw std::runtime_error("matrix file: checksum mismatch");
    }
    return result;
}

}  // namespace totodd
