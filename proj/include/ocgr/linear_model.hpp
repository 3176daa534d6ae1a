#ifndef OCGR_LINEAR_MODEL_HPP
#define OCGR_LINEAR_MODEL_HPP

#include "ocgr/errors.hpp"
#include "ocgr/rational.hpp"

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ocgr {

/*
  Minimization LP/IP in the shape the recognition heuristics need:
  nonnegative columns (optionally with finite upper bounds, used by branch
  and bound), rows with optional lower/upper bounds, rational coefficients
  so both the double and the exact solver read the same data.
*/
struct Column {
    std::string name;
    Rational lower = Rational(0);
    std::optional<Rational> upper; // nullopt = +infinity
    Rational objective = Rational(0);
};

struct Row {
    std::string name;
    std::vector<std::pair<int, Rational>> coeffs; // column -> coefficient
    std::optional<Rational> lower;
    std::optional<Rational> upper;
};

struct LinearModel {
    std::vector<Column> columns;
    std::vector<Row> rows;
    /*
      Columns 0..num_operator_columns-1 are the operator-count variables
      Y_o, one per task operator in operator-index order. Observation
      columns Y^Omega_o follow, also in operator-index order; obs_columns
      maps operator index -> column.
    */
    int num_operator_columns = 0;
    std::unordered_map<int, int> obs_columns;
    /// Set when a goal-derived landmark target is relaxed-unreachable;
    /// solvers report Infeasible without looking at the rows.
    bool infeasible_marker = false;

    int add_column(Column col) {
        columns.push_back(std::move(col));
        return (int)columns.size() - 1;
    }

    int add_row(Row row) {
        for (const auto &[col, coeff] : row.coeffs) {
            (void)coeff;
            if (col < 0 || col >= (int)columns.size())
                raise(ErrorKind::InvalidArgument,
                      "row references missing column");
        }
        rows.push_back(std::move(row));
        return (int)rows.size() - 1;
    }
};

namespace detail {

inline std::string mps_number(const Rational &r) {
    if (r.is_integer())
        return std::to_string(r.num());
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", r.to_double());
    return buf;
}

} // namespace detail

/*
  Fixed-format MPS export for external-solver cross-checks. Ordering is
  bit-stable: columns in model order (operator index order by
  construction), rows in insertion order. Names are the generated C####/
  R#### identifiers so they fit classic 8-character fields; the original
  names go into a comment block.
*/
inline std::string write_mps(const LinearModel &model,
                             const std::string &name = "OCGR",
                             bool integral = false) {
    std::ostringstream out;
    out << "* Columns: " << model.columns.size()
        << " Rows: " << model.rows.size() << "\n";
    for (std::size_t j = 0; j < model.columns.size(); ++j)
        out << "* C" << j << " = " << model.columns[j].name << "\n";
    for (std::size_t i = 0; i < model.rows.size(); ++i)
        out << "* R" << i << " = " << model.rows[i].name << "\n";
    char buf[128];
    out << "NAME          " << name << "\n";
    out << "ROWS\n";
    out << " N  COST\n";
    auto row_id = [](std::size_t i) {
        return "R" + std::to_string(i);
    };
    auto col_id = [](std::size_t j) {
        return "C" + std::to_string(j);
    };
    for (std::size_t i = 0; i < model.rows.size(); ++i) {
        const Row &row = model.rows[i];
        char type;
        if (row.lower && row.upper)
            type = (*row.lower == *row.upper) ? 'E' : 'L'; // ranged via RANGES
        else if (row.lower)
            type = 'G';
        else if (row.upper)
            type = 'L';
        else
            type = 'N';
        std::snprintf(buf, sizeof(buf), " %c  %s\n", type, row_id(i).c_str());
        out << buf;
    }
    out << "COLUMNS\n";
    if (integral)
        out << "    MARKER    'MARKER'                 'INTORG'\n";
    for (std::size_t j = 0; j < model.columns.size(); ++j) {
        const Column &col = model.columns[j];
        if (!col.objective.is_zero()) {
            std::snprintf(buf, sizeof(buf), "    %-9s %-9s %s\n",
                          col_id(j).c_str(), "COST",
                          detail::mps_number(col.objective).c_str());
            out << buf;
        }
        for (std::size_t i = 0; i < model.rows.size(); ++i) {
            for (const auto &[c, coeff] : model.rows[i].coeffs) {
                if (c == (int)j && !coeff.is_zero()) {
                    std::snprintf(buf, sizeof(buf), "    %-9s %-9s %s\n",
                                  col_id(j).c_str(), row_id(i).c_str(),
                                  detail::mps_number(coeff).c_str());
                    out << buf;
                }
            }
        }
    }
    if (integral)
        out << "    MARKER    'MARKER'                 'INTEND'\n";
    out << "RHS\n";
    for (std::size_t i = 0; i < model.rows.size(); ++i) {
        const Row &row = model.rows[i];
        std::optional<Rational> rhs;
        if (row.lower && row.upper)
            rhs = *row.upper == *row.lower ? *row.lower : *row.upper;
        else if (row.lower)
            rhs = *row.lower;
        else if (row.upper)
            rhs = *row.upper;
        if (rhs && !rhs->is_zero()) {
            std::snprintf(buf, sizeof(buf), "    %-9s %-9s %s\n", "RHS",
                          row_id(i).c_str(), detail::mps_number(*rhs).c_str());
            out << buf;
        }
    }
    bool has_range = false;
    for (const Row &row : model.rows)
        if (row.lower && row.upper && !(*row.lower == *row.upper))
            has_range = true;
    if (has_range) {
        out << "RANGES\n";
        for (std::size_t i = 0; i < model.rows.size(); ++i) {
            const Row &row = model.rows[i];
            if (row.lower && row.upper && !(*row.lower == *row.upper)) {
                Rational range = *row.upper - *row.lower;
                std::snprintf(buf, sizeof(buf), "    %-9s %-9s %s\n", "RNG",
                              row_id(i).c_str(),
                              detail::mps_number(range).c_str());
                out << buf;
            }
        }
    }
    out << "BOUNDS\n";
    for (std::size_t j = 0; j < model.columns.size(); ++j) {
        const Column &col = model.columns[j];
        if (!col.lower.is_zero()) {
            std::snprintf(buf, sizeof(buf), " LO %-9s %-9s %s\n", "BND",
                          col_id(j).c_str(),
                          detail::mps_number(col.lower).c_str());
            out << buf;
        }
        if (col.upper) {
            std::snprintf(buf, sizeof(buf), " UP %-9s %-9s %s\n", "BND",
                          col_id(j).c_str(),
                          detail::mps_number(*col.upper).c_str());
            out << buf;
        }
    }
    out << "ENDATA\n";
    return out.str();
}

} // namespace ocgr

#endif
