// SPDX-License-Identifier: Apache-2.0
//
// cachedof: delivery-time analysis for multi-antenna coded caching
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "cachedof/io.hpp"
#include "cachedof/caching.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <type_traits>

namespace cachedof
{

namespace
{

std::string trim(const std::string &s)
{
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool skip_line(const std::string &t)
{
    return t.empty() || t.front() == '#';
}

double parse_value(const std::string &token, const std::string &where)
{
    try
    {
        return parse_fraction(token);
    }
    catch (const std::invalid_argument &e)
    {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace

LengthVector read_lengths(std::istream &in, int users)
{
    const GroupIndex g(users);
    LengthVector f = LengthVector::Zero(g.size());
    std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
    std::string line;
    for (int no = 1; std::getline(in, line); ++no)
    {
        const std::string t = trim(line);
        if (skip_line(t))
            continue;
        const std::string where = "line " + std::to_string(no);
        std::istringstream ls(t);
        std::string label, value, extra;
        if (!(ls >> label >> value) || (ls >> extra))
            throw ParseError(where + ": expected '<label> <value>'");
        UserSet s = 0;
        try
        {
            s = parse_set_label(label, users);
        }
        catch (const std::exception &e)
        {
            throw ParseError(where + ": " + e.what());
        }
        if (s == 0)
            throw ParseError(where + ": the empty set carries no message");
        const int idx = g.index_of(s);
        if (seen[std::size_t(idx)])
            throw ParseError(where + ": group " + label + " listed twice");
        seen[std::size_t(idx)] = true;
        f[idx] = parse_value(value, where);
        if (!(f[idx] >= 0.0) || !std::isfinite(f[idx]))
            throw ParseError(where + ": lengths must be finite and nonnegative");
    }
    return f;
}

LengthVector read_lengths_file(const std::string &path, int users)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open length file '" + path + "'");
    try
    {
        return read_lengths(in, users);
    }
    catch (const ParseError &e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

LengthVector parse_lengths_inline(const std::string &text, int users)
{
    const GroupIndex g(users);
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
    {
        const double x = parse_value(trim(item), "inline lengths, entry " + std::to_string(v.size() + 1));
        if (!(x >= 0.0) || !std::isfinite(x))
            throw ParseError("inline lengths: entry " + std::to_string(v.size() + 1) + " is negative or not finite");
        v.push_back(x);
    }
    if (int(v.size()) != g.size())
        throw ParseError("inline lengths: got " + std::to_string(v.size()) + " values, expected " +
                         std::to_string(g.size()) + " for " + std::to_string(users) + " users");
    return Eigen::Map<const LengthVector>(v.data(), Eigen::Index(v.size()));
}

std::map<std::string, std::string> read_key_values(std::istream &in)
{
    std::map<std::string, std::string> kv;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no)
    {
        const std::string t = trim(line);
        if (skip_line(t))
            continue;
        auto cut = t.find('=');
        if (cut == std::string::npos)
            cut = t.find_first_of(" \t");
        if (cut == std::string::npos)
            throw ParseError("config line " + std::to_string(no) + ": expected 'key = value'");
        std::string key = trim(t.substr(0, cut)), value = trim(t.substr(cut + 1));
        while (!key.empty() && key.front() == '-')
            key.erase(key.begin());
        if (key.empty() || value.empty())
            throw ParseError("config line " + std::to_string(no) + ": empty key or value");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> read_key_values_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file '" + path + "'");
    try
    {
        return read_key_values(in);
    }
    catch (const ParseError &e)
    {
        throw ParseError(path + ": " + e.what());
    }
}

SystemConfig apply_config(const std::map<std::string, std::string> &kv, SystemConfig base)
{
    auto integer = [&](const std::string &key, auto &field) {
        if (auto it = kv.find(key); it != kv.end())
        {
            const double v = parse_value(it->second, "config key '" + key + "'");
            if (v != std::floor(v))
                throw ParseError("config key '" + key + "' must be an integer");
            field = static_cast<std::remove_reference_t<decltype(field)>>(v);
        }
    };
    integer("k", base.users);
    integer("m", base.tx_antennas);
    integer("n", base.rx_antennas);
    integer("l", base.library_size);
    integer("f", base.file_bits);
    if (auto it = kv.find("mu"); it != kv.end())
        base.cache_size = parse_value(it->second, "config key 'mu'");
    if (auto it = kv.find("p"); it != kv.end())
        base.power = parse_value(it->second, "config key 'p'");
    return base;
}

std::vector<double> parse_list(const std::string &text)
{
    std::vector<double> v;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        v.push_back(parse_value(trim(item), "list entry " + std::to_string(v.size() + 1)));
    if (v.empty())
        throw ParseError("empty list");
    return v;
}

std::string format_number(double v)
{
    if (v == 0.0)
        return "0";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string format_rational(double v, int max_den)
{
    if (!std::isfinite(v))
        return format_number(v);
    for (int q = 1; q <= max_den; ++q)
    {
        const double p = std::round(v * q);
        if (std::abs(v - p / q) <= 1e-9)
        {
            if (q == 1)
                return std::to_string(static_cast<long long>(p));
            return std::to_string(static_cast<long long>(p)) + "/" + std::to_string(q);
        }
    }
    return format_number(v);
}

void write_csv_header(std::ostream &out, const std::string &schema, const std::vector<std::string> &columns,
                      bool stamp)
{
    out << "# cachedof " << schema << " csv v" << kCsvSchemaVersion << '\n';
    if (stamp)
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm utc{};
        gmtime_r(&now, &utc);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
        out << "# generated " << buf << '\n';
    }
    write_csv_row(out, columns);
}

void write_csv_row(std::ostream &out, const std::vector<std::string> &cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i)
    {
        if (cells[i].find(',') != std::string::npos)
            throw std::invalid_argument("CSV cell contains a comma: '" + cells[i] + "'");
        out << (i ? "," : "") << cells[i];
    }
    out << '\n';
}

namespace
{

// Labels inside CSV cells use ';' as the member separator.
std::string csv_label(const GroupIndex &g, int idx)
{
    std::string s = g.label(idx);
    for (char &c : s)
        if (c == ',')
            c = ';';
    return s;
}

} // namespace

void write_corner_points(std::ostream &out, const CornerPointSet &corners, int users, bool stamp)
{
    const GroupIndex g(users);
    std::vector<std::string> cols{"index", "source"};
    for (int a = 0; a < g.size(); ++a)
        cols.push_back("d" + csv_label(g, a));
    write_csv_header(out, "corners", cols, stamp);
    for (int k = 0; k < corners.size(); ++k)
    {
        std::vector<std::string> row{std::to_string(k + 1), to_string(corners.sources[std::size_t(k)])};
        for (int a = 0; a < g.size(); ++a)
            row.push_back(format_rational(corners.points[std::size_t(k)][a]));
        write_csv_row(out, row);
    }
}

void write_polytope(std::ostream &out, const Polytope &poly, const std::string &name, bool stamp)
{
    if (poly.users < 2)
        throw std::invalid_argument("write_polytope: needs a polytope over canonical groups");
    const GroupIndex g(poly.users);
    if (poly.dimension() != g.size())
        throw DimensionMismatch("write_polytope: column count does not match the group count");
    std::vector<std::string> cols{"region", "row", "kind", "gated"};
    for (int a = 0; a < g.size(); ++a)
        cols.push_back("a" + csv_label(g, a));
    cols.push_back("rhs");
    write_csv_header(out, "polytope", cols, stamp);
    for (Eigen::Index r = 0; r < poly.A.rows(); ++r)
    {
        std::string what = describe(poly.rows[std::size_t(r)], g);
        for (char &c : what)
            if (c == ',')
                c = ';';
        std::vector<std::string> row{name, std::to_string(r + 1), what,
                                     poly.rows[std::size_t(r)].gated ? "1" : "0"};
        for (int a = 0; a < g.size(); ++a)
            row.push_back(format_rational(poly.A(r, a)));
        row.push_back(format_rational(poly.c[r]));
        write_csv_row(out, row);
    }
}

nlohmann::json to_json(const DofTuple &d)
{
    nlohmann::json j = nlohmann::json::array();
    for (Eigen::Index a = 0; a < d.size(); ++a)
        j.push_back(d[a]);
    return j;
}

nlohmann::json to_json(const NdtBounds &b)
{
    nlohmann::json j{{"tau_a", b.tau_a}, {"tau_l", b.tau_l}, {"rho", b.rho}};
    j["tau_u"] = b.tau_u ? nlohmann::json(*b.tau_u) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const DeliveryPlan &plan)
{
    nlohmann::json phases = nlohmann::json::array();
    for (const Phase &p : plan.phases)
        phases.push_back({{"point", to_json(p.point)}, {"weight", p.weight}});
    return {{"tau", plan.tau}, {"d_star", to_json(plan.d_star)}, {"phases", phases}};
}

} // namespace cachedof
