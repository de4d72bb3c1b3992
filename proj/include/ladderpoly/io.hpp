#pragma once

// JSON and CSV rendering of reports. Doubles are written in shortest round-trip
// form in both.

#include "ladderpoly/ladder.hpp"
#include "ladderpoly/limits.hpp"
#include "ladderpoly/oracle.hpp"

#include "json.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ladderpoly {

using Json = nlohmann::ordered_json;

inline Json params_json(const std::vector<std::pair<std::string, std::string>>& params)
{
    Json j = Json::object();
    for (const auto& [k, v] : params)
        j[k] = v;
    return j;
}

inline Json to_json(const CertificateCheck& c)
{
    Json j{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"mode", to_string(c.mode)}};
    if (c.first_failure)
        j["first_failure"] = *c.first_failure;
    if (c.mode == CheckMode::floating) {
        j["max_error"] = c.max_error;
        j["tolerance"] = c.tolerance;
    }
    return j;
}

inline Json to_json(const CertificateReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back(to_json(c));
    Json j{{"family", to_string(r.family)},
           {"params", params_json(r.params)},
           {"n_max", r.n_max},
           {"status", r.passed() ? "pass" : "fail"},
           {"checks", checks}};
    if (auto f = r.first_failure())
        j["first_failure"] = *f;
    return j;
}

inline Json to_json(const LadderMatrix& m)
{
    Json triplets = Json::array();
    for (const auto& [r, c, v] : m.triplets())
        triplets.push_back(Json::array({r, c, v}));
    Json j{{"family", m.wigner() ? "wigner" : to_string(m.family)},
           {"operator", to_string(m.op)},
           {"dim", m.dim},
           {"triplets", triplets}};
    if (m.wigner())
        j["two_j"] = m.two_j;
    return j;
}

inline Json to_json(const AlgebraCheck& c, double tol)
{
    return Json{{"relation", c.relation},
                {"status", c.holds(tol) ? "pass" : "fail"},
                {"expected_coefficient", c.expected},
                {"measured_coefficient", c.fitted},
                {"max_deviation", c.max_deviation},
                {"deviation_from_measured", c.fitted_deviation},
                {"compared_block", c.compared},
                {"edge_excluded", c.edge_excluded}};
}

inline Json to_json(const DriftReport& d)
{
    return Json{{"max_drift", d.max_drift},
                {"worst_n", d.worst_n},
                {"worst_point", d.worst_point},
                {"evaluations", d.evaluations}};
}

inline Json to_json(const ErrorMetrics& e) { return Json{{"sup", e.sup}, {"rms", e.rms}}; }

/// Comma-separated table with optional leading "# " comment lines.
class CsvWriter
{
public:
    explicit CsvWriter(std::vector<std::string> columns)
        : columns_(std::move(columns))
    {
    }

    void comment(std::string line) { comments_.push_back(std::move(line)); }

    CsvWriter& row() { return rows_.emplace_back(), *this; }

    CsvWriter& cell(const std::string& v) { return rows_.back().push_back(v), *this; }
    CsvWriter& cell(const char* v) { return cell(std::string(v)); }
    CsvWriter& cell(double v) { return cell(format_double(v)); }
    CsvWriter& cell(int v) { return cell(std::to_string(v)); }

    std::size_t size() const { return rows_.size(); }

    void write(std::ostream& os) const
    {
        for (const auto& c : comments_)
            os << "# " << c << '\n';
        write_line(os, columns_);
        for (const auto& r : rows_) {
            if (r.size() != columns_.size())
                throw std::logic_error("csv row width differs from header");
            write_line(os, r);
        }
    }

    Json to_json() const
    {
        Json rows = Json::array();
        for (const auto& r : rows_) {
            Json o = Json::object();
            for (std::size_t i = 0; i < columns_.size(); ++i)
                o[columns_[i]] = r[i];
            rows.push_back(o);
        }
        return Json{{"columns", columns_}, {"rows", rows}};
    }

private:
    static void write_line(std::ostream& os, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << '\n';
    }

    std::vector<std::string> columns_;
    std::vector<std::string> comments_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace ladderpoly
