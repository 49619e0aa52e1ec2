#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ssco {

/// One cell of a selective structural matrix: forced zero, forced nonzero, or free.
enum class Entry : std::uint8_t { Zero = 0, Nonzero = 1, Free = 2 };

/// Text symbol of an entry: '0', 'x' or '*'.
char entry_symbol(Entry e);

/// Dense rows x cols matrix over {Zero, Nonzero, Free}.
class Pattern {
public:
    Pattern() = default;
    Pattern(int rows, int cols, Entry fill = Entry::Zero);

    /// n x n pattern with Nonzero diagonal and Zero elsewhere.
    static Pattern identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Entry operator()(int r, int c) const { return cells_[index(r, c)]; }
    Entry& operator()(int r, int c) { return cells_[index(r, c)]; }

    bool operator==(const Pattern& other) const = default;

    Pattern transpose() const;
    Pattern rows_subset(const std::vector<int>& rows) const;
    Pattern cols_subset(const std::vector<int>& cols) const;
    Pattern permuted(const std::vector<int>& row_perm, const std::vector<int>& col_perm) const;

    /// Horizontal concatenation [left | right].
    static Pattern hcat(const Pattern& left, const Pattern& right);
    /// Vertical concatenation [top; bottom].
    static Pattern vcat(const Pattern& top, const Pattern& bottom);

    /// Bitmask of non-Zero columns in row r (requires cols <= 64).
    std::uint64_t row_support(int r) const;
    /// Bitmask of Nonzero columns in row r (requires cols <= 64).
    std::uint64_t row_nonzero(int r) const;

    int count(Entry e) const;

private:
    std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<Entry> cells_;
};

/// The pair (E, A) of square patterns of a descriptor system.
struct PencilPattern {
    Pattern e;
    Pattern a;

    int n() const { return a.rows(); }
    /// Throws DimensionError unless both patterns are square and of equal size.
    void validate() const;
    PencilPattern transpose() const { return {e.transpose(), a.transpose()}; }
};

/// Builds the pattern of A - lambda E: Nonzero iff A is Nonzero and E is Zero,
/// Free iff A is Free or E is not Zero, Zero iff both are Zero.
Pattern lambda_pattern(const PencilPattern& pencil);

/// n x |states| pattern with one Nonzero per column at the given state rows.
Pattern dedicated_columns(int n, const std::vector<int>& states);
/// |states| x n pattern with one Nonzero per row at the given state columns.
Pattern dedicated_rows(int n, const std::vector<int>& states);

/// Parses the whitespace separated text format ('0', 'x', '*'; '#' comments).
Pattern parse_pattern(std::string_view text);
/// Inverse of parse_pattern.
std::string serialize_pattern(const Pattern& p);

/// Reads a pattern file in text or JSON form (JSON if the first token is '{').
Pattern load_pattern_file(const std::string& path);

} // namespace ssco
