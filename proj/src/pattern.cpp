#include "ssco/pattern.hpp"

#include <sstream>

#include "ssco/errors.hpp"

namespace ssco {

ParseError::ParseError(const std::string& message, int line, int column)
    : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

char entry_symbol(Entry e) {
    switch (e) {
    case Entry::Zero: return '0';
    case Entry::Nonzero: return 'x';
    case Entry::Free: return '*';
    }
    return '?';
}

Pattern::Pattern(int rows, int cols, Entry fill) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw DimensionError("negative pattern dimension");
    cells_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Pattern Pattern::identity(int n) {
    Pattern p(n, n);
    for (int i = 0; i < n; ++i) p(i, i) = Entry::Nonzero;
    return p;
}

Pattern Pattern::transpose() const {
    Pattern t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

Pattern Pattern::rows_subset(const std::vector<int>& rows) const {
    Pattern s(static_cast<int>(rows.size()), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int c = 0; c < cols_; ++c) s(static_cast<int>(i), c) = (*this)(rows[i], c);
    return s;
}

Pattern Pattern::cols_subset(const std::vector<int>& cols) const {
    Pattern s(rows_, static_cast<int>(cols.size()));
    for (int r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) s(r, static_cast<int>(j)) = (*this)(r, cols[j]);
    return s;
}

Pattern Pattern::permuted(const std::vector<int>& row_perm, const std::vector<int>& col_perm) const {
    return rows_subset(row_perm).cols_subset(col_perm);
}

Pattern Pattern::hcat(const Pattern& left, const Pattern& right) {
    if (left.rows() != right.rows()) throw DimensionError("hcat: row counts differ");
    Pattern p(left.rows(), left.cols() + right.cols());
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < left.cols(); ++c) p(r, c) = left(r, c);
        for (int c = 0; c < right.cols(); ++c) p(r, left.cols() + c) = right(r, c);
    }
    return p;
}

Pattern Pattern::vcat(const Pattern& top, const Pattern& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vcat: column counts differ");
    Pattern p(top.rows() + bottom.rows(), top.cols());
    for (int c = 0; c < p.cols(); ++c) {
        for (int r = 0; r < top.rows(); ++r) p(r, c) = top(r, c);
        for (int r = 0; r < bottom.rows(); ++r) p(top.rows() + r, c) = bottom(r, c);
    }
    return p;
}

std::uint64_t Pattern::row_support(int r) const {
    if (cols_ > 64) throw DimensionError("row masks support at most 64 columns");
    std::uint64_t m = 0;
    for (int c = 0; c < cols_; ++c)
        if ((*this)(r, c) != Entry::Zero) m |= std::uint64_t{1} << c;
    return m;
}

std::uint64_t Pattern::row_nonzero(int r) const {
    if (cols_ > 64) throw DimensionError("row masks support at most 64 columns");
    std::uint64_t m = 0;
    for (int c = 0; c < cols_; ++c)
        if ((*this)(r, c) == Entry::Nonzero) m |= std::uint64_t{1} << c;
    return m;
}

int Pattern::count(Entry e) const {
    int k = 0;
    for (Entry x : cells_) k += (x == e);
    return k;
}

void PencilPattern::validate() const {
    if (e.rows() != e.cols()) throw DimensionError("E pattern is not square");
    if (a.rows() != a.cols()) throw DimensionError("A pattern is not square");
    if (e.rows() != a.rows())
        throw DimensionError("E is " + std::to_string(e.rows()) + "x" + std::to_string(e.cols()) +
                             " but A is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

Pattern lambda_pattern(const PencilPattern& pencil) {
    pencil.validate();
    const int n = pencil.n();
    Pattern out(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Entry a = pencil.a(i, j);
            const Entry e = pencil.e(i, j);
            if (a == Entry::Zero && e == Entry::Zero)
                out(i, j) = Entry::Zero;
            else if (a == Entry::Nonzero && e == Entry::Zero)
                out(i, j) = Entry::Nonzero;
            else
                out(i, j) = Entry::Free;
        }
    }
    return out;
}

Pattern dedicated_columns(int n, const std::vector<int>& states) {
    Pattern p(n, static_cast<int>(states.size()));
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (states[j] < 0 || states[j] >= n) throw DimensionError("dedicated column outside the state range");
        p(states[j], static_cast<int>(j)) = Entry::Nonzero;
    }
    return p;
}

Pattern dedicated_rows(int n, const std::vector<int>& states) {
    return dedicated_columns(n, states).transpose();
}

Pattern parse_pattern(std::string_view text) {
    std::vector<std::vector<Entry>> rows;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        ++line_no;
        pos = end + 1;

        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos) {
            if (end == text.size()) break;
            continue;
        }
        std::vector<Entry> row;
        std::istringstream in{std::string(line)};
        std::string token;
        int column = 0;
        while (in >> token) {
            ++column;
            if (token == "0")
                row.push_back(Entry::Zero);
            else if (token == "x" || token == "X")
                row.push_back(Entry::Nonzero);
            else if (token == "*")
                row.push_back(Entry::Free);
            else
                throw ParseError("unknown symbol '" + token + "' (expected 0, x or *)", line_no, column);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("ragged row: expected " + std::to_string(rows.front().size()) + " cells, found " +
                                 std::to_string(row.size()),
                             line_no, static_cast<int>(row.size()));
        rows.push_back(std::move(row));
        if (end == text.size()) break;
    }
    if (rows.empty()) throw ParseError("empty pattern", line_no, 0);
    Pattern p(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int r = 0; r < p.rows(); ++r)
        for (int c = 0; c < p.cols(); ++c) p(r, c) = rows[r][c];
    return p;
}

std::string serialize_pattern(const Pattern& p) {
    std::string out;
    for (int r = 0; r < p.rows(); ++r) {
        for (int c = 0; c < p.cols(); ++c) {
            if (c) out += ' ';
            out += entry_symbol(p(r, c));
        }
        out += '\n';
    }
    return out;
}

} // namespace ssco
