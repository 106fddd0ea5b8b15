#include "tikreg/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tikreg {

std::string fmt_g9(double x) {
    char buf[40];
    for (int prec = 1; prec <= 9; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for write: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_matrix_market(const std::string& path, const Matrix& a) {
    std::ostringstream out;
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << " " << a.cols() << "\n";
    for (Index j = 0; j < a.cols(); ++j)
        for (Index i = 0; i < a.rows(); ++i) out << fmt_g9(a(i, j)) << "\n";
    write_text_file(path, out.str());
}

Matrix read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string header;
    if (!std::getline(in, header)) throw IoError("empty MatrixMarket file: " + path);
    const bool coordinate = header.find("coordinate") != std::string::npos;
    if (header.rfind("%%MatrixMarket", 0) != 0 || header.find("real") == std::string::npos)
        throw IoError("unsupported MatrixMarket header in " + path);

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sizes(line);
    Index rows = 0, cols = 0;
    sizes >> rows >> cols;
    if (rows < 1 || cols < 1) throw IoError("bad MatrixMarket sizes in " + path);
    Matrix a = Matrix::Zero(rows, cols);
    if (coordinate) {
        long nnz = 0;
        sizes >> nnz;
        Index i, j;
        double v;
        for (long k = 0; k < nnz; ++k) {
            if (!(in >> i >> j >> v)) throw IoError("truncated MatrixMarket data in " + path);
            if (i < 1 || i > rows || j < 1 || j > cols) throw IoError("index out of range in " + path);
            a(i - 1, j - 1) = v;
        }
    } else {
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
                if (!(in >> a(i, j))) throw IoError("truncated MatrixMarket data in " + path);
    }
    if (!all_finite(a)) throw IoError("non-finite entries in " + path);
    return a;
}

void write_matrix_csv(const std::string& path, const Matrix& a) {
    std::ostringstream out;
    for (Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << "c" << j;
    out << "\n";
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) out << (j ? "," : "") << fmt_g9(a(i, j));
        out << "\n";
    }
    write_text_file(path, out.str());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

Matrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV: " + path);
    const Index cols = static_cast<Index>(split_csv_line(line).size());
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (static_cast<Index>(fields.size()) != cols) throw IoError("ragged CSV row in " + path);
        std::vector<double> row(fields.size());
        for (std::size_t k = 0; k < fields.size(); ++k) row[k] = std::strtod(fields[k].c_str(), nullptr);
        rows.push_back(std::move(row));
    }
    Matrix a(static_cast<Index>(rows.size()), cols);
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < cols; ++j) a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return a;
}

void write_vector_csv(const std::string& path, const Vector& v, const std::string& header) {
    std::ostringstream out;
    out << header << "\n";
    for (Index i = 0; i < v.size(); ++i) out << fmt_g9(v[i]) << "\n";
    write_text_file(path, out.str());
}

Vector read_vector_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV: " + path);
    std::vector<double> vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        vals.push_back(std::strtod(line.c_str(), nullptr));
    }
    Vector v(static_cast<Index>(vals.size()));
    for (Index i = 0; i < v.size(); ++i) v[i] = vals[static_cast<std::size_t>(i)];
    return v;
}

}  // namespace tikreg
