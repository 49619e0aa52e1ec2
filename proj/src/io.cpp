#include "ssco/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ssco/errors.hpp"

namespace ssco {

namespace {

Json one_based(const std::vector<int>& v) {
    Json out = Json::array();
    for (int x : v) out.push_back(x + 1);
    return out;
}

std::vector<int> zero_based(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array", 0, 0);
    std::vector<int> out;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<int>() < 1)
            throw ParseError(std::string(what) + " must hold positive integers", 0, 0);
        out.push_back(x.get<int>() - 1);
    }
    return out;
}

Json pairs_json(const std::vector<std::pair<int, int>>& v) {
    Json out = Json::array();
    for (auto [a, b] : v) out.push_back({a + 1, b + 1});
    return out;
}

std::vector<std::pair<int, int>> pairs_from(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + " must be an array", 0, 0);
    std::vector<std::pair<int, int>> out;
    for (const auto& x : j) {
        const std::vector<int> v = zero_based(x, what);
        if (v.size() != 2) throw ParseError(std::string(what) + " entries must be pairs", 0, 0);
        out.emplace_back(v[0], v[1]);
    }
    return out;
}

Json complex_json(cd z) { return {z.real(), z.imag()}; }

cd complex_from(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex numbers are [re, im] pairs", 0, 0);
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

Json to_json(const Pattern& p) {
    Json cells = Json::array();
    for (int r = 0; r < p.rows(); ++r) {
        std::string row;
        for (int c = 0; c < p.cols(); ++c) row += entry_symbol(p(r, c));
        cells.push_back(row);
    }
    return {{"rows", p.rows()}, {"cols", p.cols()}, {"cells", cells}};
}

Pattern pattern_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("cells"))
        throw ParseError("pattern JSON needs rows, cols and cells", 1, 1);
    const int rows = j["rows"].get<int>();
    const int cols = j["cols"].get<int>();
    const Json& cells = j["cells"];
    if (rows < 0 || cols < 0 || !cells.is_array() || static_cast<int>(cells.size()) != rows)
        throw ParseError("cells must hold one string per row", 1, 1);
    Pattern p(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const std::string row = cells[r].get<std::string>();
        if (static_cast<int>(row.size()) != cols)
            throw ParseError("ragged row " + std::to_string(r + 1) + ": expected " + std::to_string(cols) + " cells",
                             r + 1, static_cast<int>(row.size()));
        for (int c = 0; c < cols; ++c) {
            switch (row[c]) {
            case '0': p(r, c) = Entry::Zero; break;
            case 'x':
            case 'X': p(r, c) = Entry::Nonzero; break;
            case '*': p(r, c) = Entry::Free; break;
            default: throw ParseError(std::string("unknown symbol '") + row[c] + "' in row " + std::to_string(r + 1), r + 1, c + 1);
            }
        }
    }
    return p;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Pattern load_pattern_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            Json j;
            try {
                j = Json::parse(text);
            } catch (const Json::parse_error& e) {
                throw ParseError(e.what(), 1, static_cast<int>(e.byte));
            }
            return pattern_from_json(j);
        }
        return parse_pattern(text);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line(), e.column());
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what(), 1, 1);
    }
}

Json to_json(const StairForm& form) {
    Json steps = Json::array();
    for (const Step& s : form.steps) steps.push_back({s.height, s.length});
    return {{"row_perm", one_based(form.row_perm)},
            {"col_perm", one_based(form.col_perm)},
            {"steps", steps},
            {"maximality_certified", form.maximality_certified},
            {"matrix", to_json(form.permuted())}};
}

namespace {

Json pivots_json(const std::vector<Pivot>& pivots) {
    Json out = Json::array();
    for (const Pivot& p : pivots) out.push_back({p.row + 1, p.col + 1, p.orig_row + 1, p.orig_col + 1, p.step + 1});
    return out;
}

} // namespace

Json to_json(const DedicatedSolution& s) {
    std::vector<int> pivot_rows;
    for (const Pivot& p : s.pivots) pivot_rows.push_back(s.kind == SolutionKind::Actuation ? p.orig_row : p.orig_col);
    std::sort(pivot_rows.begin(), pivot_rows.end());
    Json form = to_json(s.form);
    form["pivots"] = pivots_json(s.pivots);
    return {{"kind", to_string(s.kind)}, {"indices", one_based(s.indices)}, {"pivot_rows", one_based(pivot_rows)},
            {"cost", s.cost},            {"k", s.k},                         {"base", one_based(s.base)},
            {"form", form},              {"diagnostics", s.diagnostics}};
}

Json to_json(const CodesignResult& r) {
    Json mates = Json::array();
    for (const IndexMate& m : r.info.mates)
        mates.push_back({{"actuator", m.actuator + 1},
                         {"sensor", m.sensor + 1},
                         {"actuator_state", m.actuator_state + 1},
                         {"sensor_state", m.sensor_state + 1},
                         {"diagonal_cell", {m.diagonal_cell.first + 1, m.diagonal_cell.second + 1}},
                         {"channel_cost", m.channel_cost}});
    return {{"k", r.actuation.k},
            {"actuation", to_json(r.actuation)},
            {"sensing", to_json(r.sensing)},
            {"information",
             {{"actuators", r.info.p}, {"sensors", r.info.m}, {"channels", pairs_json(r.info.channels)}, {"mates", mates}}},
            {"total_cost", r.total_cost},
            {"diagnostics", r.diagnostics}};
}

CodesignResult design_from_json(const Json& j) {
    try {
        CodesignResult r;
        r.actuation.kind = SolutionKind::Actuation;
        r.sensing.kind = SolutionKind::Sensing;
        r.actuation.k = r.sensing.k = j.at("k").get<int>();
        r.actuation.indices = zero_based(j.at("actuation").at("indices"), "actuation.indices");
        r.sensing.indices = zero_based(j.at("sensing").at("indices"), "sensing.indices");
        r.info.p = static_cast<int>(r.actuation.indices.size());
        r.info.m = static_cast<int>(r.sensing.indices.size());
        r.info.channels = pairs_from(j.at("information").at("channels"), "information.channels");
        r.total_cost = j.value("total_cost", 0.0);
        for (auto [a, s] : r.info.channels)
            if (a >= r.info.p || s >= r.info.m) throw DimensionError("channel refers to a missing actuator or sensor");
        return r;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("design JSON: ") + e.what(), 1, 1);
    }
}

Json to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const Json& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows) throw ParseError("matrix data has the wrong row count", 1, 1);
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(data[r].size()) != cols)
            throw ParseError("matrix row " + std::to_string(r + 1) + " has the wrong length", static_cast<int>(r + 1), 1);
        for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[r][c].get<double>();
    }
    return m;
}

Json to_json(const Counterexample& cx) {
    const Realization& r = cx.realization;
    return {{"kind", cx.kind},
            {"phase", cx.phase},
            {"trial", cx.trial},
            {"lambda", complex_json(cx.lambda)},
            {"ratio", cx.ratio},
            {"tolerance", cx.tolerance},
            {"realization", {{"E", to_json(r.e)}, {"A", to_json(r.a)}, {"B", to_json(r.b)}, {"C", to_json(r.c)}}},
            {"scenario",
             {{"actuators", one_based(cx.scenario.actuators)},
              {"sensors", one_based(cx.scenario.sensors)},
              {"channels", pairs_json(cx.scenario.channels)}}},
            {"subset", one_based(cx.subset)},
            {"retained_sensors", one_based(cx.retained_sensors)},
            {"channels", pairs_json(cx.channels)}};
}

Counterexample counterexample_from_json(const Json& j) {
    try {
        Counterexample cx;
        cx.kind = j.at("kind").get<std::string>();
        cx.phase = j.value("phase", std::string());
        cx.trial = j.value("trial", std::int64_t{0});
        cx.lambda = complex_from(j.at("lambda"));
        cx.ratio = j.value("ratio", 0.0);
        cx.tolerance = j.at("tolerance").get<double>();
        const Json& r = j.at("realization");
        cx.realization.e = matrix_from_json(r.at("E"));
        cx.realization.a = matrix_from_json(r.at("A"));
        cx.realization.b = matrix_from_json(r.at("B"));
        cx.realization.c = matrix_from_json(r.at("C"));
        if (j.contains("scenario")) {
            const Json& s = j["scenario"];
            cx.scenario.actuators = zero_based(s.at("actuators"), "scenario.actuators");
            cx.scenario.sensors = zero_based(s.at("sensors"), "scenario.sensors");
            cx.scenario.channels = pairs_from(s.at("channels"), "scenario.channels");
        }
        cx.subset = zero_based(j.value("subset", Json::array()), "subset");
        cx.retained_sensors = zero_based(j.value("retained_sensors", Json::array()), "retained_sensors");
        cx.channels = pairs_from(j.value("channels", Json::array()), "channels");
        return cx;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("counterexample JSON: ") + e.what(), 1, 1);
    }
}

Json to_json(const OracleVerdict& v) {
    Json out = {{"outcome", to_string(v.outcome)}, {"trials_run", v.trials_run}, {"notes", v.notes}};
    out["counterexample"] = v.counterexample ? to_json(*v.counterexample) : Json();
    return out;
}

CostMatrix load_cost(const std::string& source) {
    CostMatrix cost;
    if (source == "uniform") return cost;
    const std::string text = read_file(source);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '[' || text[first] == '{')) {
        Json j;
        try {
            j = Json::parse(text);
        } catch (const Json::parse_error& e) {
            throw ParseError(source + ": " + e.what(), 1, static_cast<int>(e.byte));
        }
        const Json& rows = j.is_object() ? j.at("weights") : j;
        const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
        const Eigen::Index m = n ? static_cast<Eigen::Index>(rows[0].size()) : 0;
        cost.weights.resize(n, m);
        for (Eigen::Index r = 0; r < n; ++r) {
            if (static_cast<Eigen::Index>(rows[r].size()) != m)
                throw ParseError(source + ": ragged cost row " + std::to_string(r + 1), static_cast<int>(r + 1), 1);
            for (Eigen::Index c = 0; c < m; ++c) cost.weights(r, c) = rows[r][c].get<double>();
        }
        return cost;
    }
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        int column = 0;
        bool header = false;
        while (std::getline(cells, cell, ',')) {
            ++column;
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                if (rows.empty() && row.empty()) {
                    header = true;
                    break;
                }
                throw ParseError(source + ": '" + cell + "' is not a number", line_no, column);
            }
        }
        if (header) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError(source + ": ragged row with " + std::to_string(row.size()) + " values, expected " +
                                 std::to_string(rows.front().size()),
                             line_no, column);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(source + ": empty cost file", line_no, 0);
    cost.weights.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) cost.weights(r, c) = rows[r][c];
    return cost;
}

std::string to_dot(const InformationPattern& info) {
    std::ostringstream out;
    out << "digraph information_pattern {\n  rankdir=LR;\n";
    for (int s = 0; s < info.m; ++s) out << "  y" << s + 1 << " [shape=box,label=\"sensor " << s + 1 << "\"];\n";
    for (int a = 0; a < info.p; ++a) out << "  u" << a + 1 << " [shape=ellipse,label=\"actuator " << a + 1 << "\"];\n";
    for (std::size_t i = 0; i < info.channels.size(); ++i) {
        const auto [a, s] = info.channels[i];
        double cost = 0.0;
        for (const IndexMate& m : info.mates)
            if (m.actuator == a && m.sensor == s) cost = m.channel_cost;
        out << "  y" << s + 1 << " -> u" << a + 1 << " [label=\"" << cost << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ssco
