#pragma once

#include "phonolase/config.hpp"
#include "phonolase/errors.hpp"
#include "phonolase/point.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace phonolase {

struct SweepAxis {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int steps = 2;

    /// start + (stop − start)·k/(steps − 1); the last sample is exactly `stop`.
    double value(int k) const {
        if (k == steps - 1) return stop;
        return start + (stop - start) * static_cast<double>(k) / static_cast<double>(steps - 1);
    }

    std::vector<double> values() const {
        std::vector<double> v(static_cast<std::size_t>(steps));
        for (int k = 0; k < steps; ++k) v[static_cast<std::size_t>(k)] = value(k);
        return v;
    }
};

struct SweepSpec {
    SweepAxis axis;
    std::optional<SweepAxis> second;
    std::vector<std::string> outputs;  // empty: every column
    std::vector<double> contour_levels;
    unsigned threads = 1;
};

inline void check_axis(const SweepAxis& a) {
    if (!is_axis(a.name)) throw InvalidConfig("unknown axis '" + a.name + "'");
    if (a.steps < 2) throw InvalidConfig("axis '" + a.name + "' needs at least 2 steps");
    if (!std::isfinite(a.start) || !std::isfinite(a.stop))
        throw InvalidConfig("axis '" + a.name + "' bounds must be finite");
}

inline void check_spec(const SweepSpec& spec) {
    check_axis(spec.axis);
    if (spec.second) {
        check_axis(*spec.second);
        if (spec.second->name == spec.axis.name) throw InvalidConfig("grid axes must differ");
    }
    for (const auto& o : spec.outputs)
        if (!find_column(o)) throw InvalidConfig("unknown output '" + o + "'");
    for (double l : spec.contour_levels)
        if (!std::isfinite(l)) throw InvalidConfig("contour levels must be finite");
}

/// Evaluates every config; results keep input order whatever the thread count.
inline std::vector<PointResult> evaluate_all(const std::vector<Config>& configs, unsigned threads = 1) {
    std::vector<PointResult> out(configs.size());
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(configs.size())));
    if (threads == 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) out[i] = evaluate_point(configs[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < configs.size(); i = next++) out[i] = evaluate_point(configs[i]);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

// -------------------------------------------------------------------- tables

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline void write_csv(std::ostream& os, const Table& t) {
    auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
}

inline std::vector<const Column*> select_columns(const std::vector<std::string>& outputs) {
    std::vector<const Column*> cols;
    if (outputs.empty()) {
        for (const auto& c : point_columns()) cols.push_back(&c);
        return cols;
    }
    // fixed order regardless of how the list was written
    for (const auto& c : point_columns())
        if (std::find(outputs.begin(), outputs.end(), c.name) != outputs.end()) cols.push_back(&c);
    return cols;
}

/// One row per axis value: the axis value followed by the requested columns.
inline Table run_sweep(const Config& base, const SweepSpec& spec) {
    check_spec(spec);
    std::vector<Config> configs;
    for (double v : spec.axis.values()) {
        Config c = base;
        set_axis(c, spec.axis.name, v);
        configs.push_back(c);
    }
    const auto results = evaluate_all(configs, spec.threads);
    const auto cols = select_columns(spec.outputs);

    Table t;
    t.header.push_back("axis_" + spec.axis.name);
    for (const auto* c : cols) t.header.push_back(c->name);
    const auto values = spec.axis.values();
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<std::string> row{format_double(values[i])};
        for (const auto* c : cols) row.push_back(c->render(results[i]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Laser columns: delta_phi, w1, w2, detuning, gp12_abs, gain, n_b, n_threshold,
/// p_threshold, branch, f1 (beam-splitter supermodes), preceded by the axis.
inline Table run_laser_sweep(const Config& base, const SweepAxis& axis, unsigned threads = 1) {
    check_axis(axis);
    static const std::vector<std::pair<std::string, std::string>> aliases{
        {"delta_phi", "delta_phi"}, {"w1", "bs_w1"},       {"w2", "bs_w2"},
        {"detuning", "detuning"},   {"gp12_abs", "bs_gp12_abs"}, {"gain", "gain"},
        {"n_b", "n_b"},             {"n_threshold", "n_threshold"}, {"p_threshold", "p_threshold"},
        {"branch", "branch"},       {"f1", "f1"},
    };
    std::vector<Config> configs;
    for (double v : axis.values()) {
        Config c = base;
        set_axis(c, axis.name, v);
        configs.push_back(c);
    }
    const auto results = evaluate_all(configs, threads);
    Table t;
    t.header.push_back("axis_" + axis.name);
    for (const auto& [name, source] : aliases) t.header.push_back(name);
    t.header.push_back("error");
    const auto values = axis.values();
    for (std::size_t i = 0; i < results.size(); ++i) {
        std::vector<std::string> row{format_double(values[i])};
        for (const auto& [name, source] : aliases) row.push_back(find_column(source)->render(results[i]));
        row.push_back(find_column("error")->render(results[i]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --------------------------------------------------------------------- grids

/// Dense scalar fields on a rectilinear grid, indexed [field][iy][ix]. Failed
/// points hold NaN.
struct Grid {
    std::string x_name;
    std::string y_name;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<std::string> fields;
    std::vector<std::vector<std::vector<double>>> values;

    std::size_t field_index(const std::string& name) const {
        auto it = std::find(fields.begin(), fields.end(), name);
        if (it == fields.end()) throw InvalidConfig("grid has no field '" + name + "'");
        return static_cast<std::size_t>(it - fields.begin());
    }

    const std::vector<std::vector<double>>& field(const std::string& name) const {
        return values[field_index(name)];
    }
};

inline Grid run_grid(const Config& base, const SweepSpec& spec) {
    check_spec(spec);
    if (!spec.second) throw InvalidConfig("grid needs two axes");
    const auto cols = select_columns(spec.outputs.empty() ? std::vector<std::string>{"f1", "f2"} : spec.outputs);
    for (const auto* c : cols)
        if (!c->numeric()) throw InvalidConfig("grid field '" + c->name + "' is not numeric");

    Grid g;
    g.x_name = spec.axis.name;
    g.y_name = spec.second->name;
    g.xs = spec.axis.values();
    g.ys = spec.second->values();
    std::vector<Config> configs;
    for (double y : g.ys) {
        for (double x : g.xs) {
            Config c = base;
            set_axis(c, g.x_name, x);
            set_axis(c, g.y_name, y);
            configs.push_back(c);
        }
    }
    const auto results = evaluate_all(configs, spec.threads);
    for (const auto* c : cols) {
        g.fields.push_back(c->name);
        std::vector<std::vector<double>> f(g.ys.size(), std::vector<double>(g.xs.size()));
        for (std::size_t iy = 0; iy < g.ys.size(); ++iy)
            for (std::size_t ix = 0; ix < g.xs.size(); ++ix)
                f[iy][ix] = c->number(results[iy * g.xs.size() + ix]);
        g.values.push_back(std::move(f));
    }
    return g;
}

/// Long format: x, y, then one column per field; y outer, x inner.
inline void write_grid_csv(std::ostream& os, const Grid& g) {
    os << g.x_name << ',' << g.y_name;
    for (const auto& f : g.fields) os << ',' << f;
    os << '\n';
    for (std::size_t iy = 0; iy < g.ys.size(); ++iy) {
        for (std::size_t ix = 0; ix < g.xs.size(); ++ix) {
            os << format_double(g.xs[ix]) << ',' << format_double(g.ys[iy]);
            for (const auto& f : g.values) os << ',' << format_double(f[iy][ix]);
            os << '\n';
        }
    }
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

inline double parse_number(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw InvalidConfig("bad number '" + s + "' in grid file");
        return v;
    } catch (const std::logic_error&) {
        throw InvalidConfig("bad number '" + s + "' in grid file");
    }
}

inline void insert_unique(std::vector<double>& axis, double v) {
    if (std::find(axis.begin(), axis.end(), v) == axis.end()) axis.push_back(v);
}

} // namespace detail

/// Reads what write_grid_csv produced.
inline Grid read_grid_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidConfig("grid file is empty");
    const auto header = detail::split_csv_line(line);
    if (header.size() < 3) throw InvalidConfig("grid file needs x, y and at least one field");
    Grid g;
    g.x_name = header[0];
    g.y_name = header[1];
    g.fields.assign(header.begin() + 2, header.end());

    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size()) throw InvalidConfig("ragged row in grid file");
        std::vector<double> r;
        for (const auto& c : cells) r.push_back(detail::parse_number(c));
        detail::insert_unique(g.xs, r[0]);
        detail::insert_unique(g.ys, r[1]);
        rows.push_back(std::move(r));
    }
    if (g.xs.size() < 2 || g.ys.size() < 2 || rows.size() != g.xs.size() * g.ys.size())
        throw InvalidConfig("grid file is not a complete rectilinear grid");
    g.values.assign(g.fields.size(),
                    std::vector<std::vector<double>>(g.ys.size(), std::vector<double>(g.xs.size())));
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::size_t iy = k / g.xs.size(), ix = k % g.xs.size();
        if (rows[k][0] != g.xs[ix] || rows[k][1] != g.ys[iy])
            throw InvalidConfig("grid file rows are not in y-outer, x-inner order");
        for (std::size_t f = 0; f < g.fields.size(); ++f) g.values[f][iy][ix] = rows[k][f + 2];
    }
    return g;
}

} // namespace phonolase
