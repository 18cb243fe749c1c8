#include "extsum/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <nlohmann/json.hpp>

#include "extsum/errors.hpp"

namespace extsum {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, const char* what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw TraceFormatError(std::string("cannot parse ") + what + ": '" +
                               std::string(text) + "'");
    }
    return value;
}

long parse_long(std::string_view text, const char* what) {
    long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw TraceFormatError(std::string("cannot parse ") + what + ": '" +
                               std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

json meta_to_json(const TraceMeta& meta) {
    json j;
    j["problem_id"] = meta.problem_id;
    j["algorithm"] = meta.algorithm;
    j["schedule"] = {{"kind", meta.schedule_kind},
                     {"c", meta.schedule_c},
                     {"p", meta.schedule_p},
                     {"q", meta.schedule_q}};
    j["strategy"] = meta.strategy;
    j["seed"] = meta.seed;
    j["max_iter"] = meta.max_iter;
    j["record_every"] = meta.record_every;
    j["dimension"] = meta.dimension;
    j["schedule_valid"] = meta.schedule_valid;
    j["schedule_override"] = meta.schedule_override;
    j["h1_running_sup"] = meta.h1_running_sup;
    j["error"] = meta.error ? json(*meta.error) : json(nullptr);
    return j;
}

TraceMeta meta_from_json(const json& j) {
    TraceMeta meta;
    meta.problem_id = j.value("problem_id", std::string());
    meta.algorithm = j.value("algorithm", std::string());
    if (j.contains("schedule")) {
        const json& s = j.at("schedule");
        meta.schedule_kind = s.value("kind", std::string("power"));
        meta.schedule_c = s.value("c", 0.0);
        meta.schedule_p = s.value("p", 0.0);
        meta.schedule_q = s.value("q", 0.0);
    }
    meta.strategy = j.value("strategy", std::string("min_norm"));
    meta.seed = j.value("seed", std::uint64_t{0});
    meta.max_iter = j.value("max_iter", 0L);
    meta.record_every = j.value("record_every", 1L);
    meta.dimension = j.value("dimension", std::size_t{0});
    meta.schedule_valid = j.value("schedule_valid", false);
    meta.schedule_override = j.value("schedule_override", false);
    meta.h1_running_sup = j.value("h1_running_sup", 0.0);
    if (j.contains("error") && !j.at("error").is_null()) {
        meta.error = j.at("error").get<std::string>();
    }
    return meta;
}

std::size_t row_dimension(const ConvergenceTrace& trace) {
    if (trace.meta.dimension > 0) return trace.meta.dimension;
    return trace.rows.empty() ? 1 : trace.rows.front().x.dim();
}

} // namespace

std::string format_double(double v) {
    // Shortest representation that parses back to the same bit pattern.
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("double formatting failed");
    return std::string(buf, ptr);
}

void write_trace_csv(const ConvergenceTrace& trace, std::ostream& out) {
    const std::size_t d = row_dimension(trace);
    out << "# extsum trace v1\n";
    out << "# meta " << meta_to_json(trace.meta).dump() << "\n";
    out << "n,lambda,eps";
    for (std::size_t i = 0; i < d; ++i) out << ",x" << i;
    for (std::size_t i = 0; i < d; ++i) out << ",xbar" << i;
    out << ",eps_u_norm,dist_to_solution\n";
    for (const TraceRow& row : trace.rows) {
        out << row.n << ',' << format_double(row.lambda) << ',' << format_double(row.eps);
        for (std::size_t i = 0; i < d; ++i) out << ',' << format_double(row.x[i]);
        for (std::size_t i = 0; i < d; ++i) out << ',' << format_double(row.xbar[i]);
        out << ',' << format_double(row.eps_u_norm) << ',';
        if (row.dist_to_solution) out << format_double(*row.dist_to_solution);
        out << '\n';
    }
}

ConvergenceTrace read_trace_csv(std::istream& in) {
    ConvergenceTrace trace;
    std::string line;
    bool have_header = false;
    std::size_t d = 0;
    long prev_n = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string prefix = "# meta ";
            if (line.rfind(prefix, 0) == 0) {
                try {
                    trace.meta = meta_from_json(json::parse(line.substr(prefix.size())));
                } catch (const json::exception& e) {
                    throw TraceFormatError(std::string("bad meta line: ") + e.what());
                }
            }
            continue;
        }
        if (!have_header) {
            const auto cols = split_csv(line);
            if (cols.size() < 7 || cols[0] != "n" || (cols.size() - 5) % 2 != 0) {
                throw TraceFormatError("unrecognized trace header: '" + line + "'");
            }
            d = (cols.size() - 5) / 2;
            have_header = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 5 + 2 * d) {
            throw TraceFormatError("row has " + std::to_string(fields.size()) +
                                   " fields, expected " + std::to_string(5 + 2 * d));
        }
        TraceRow row;
        row.n = parse_long(fields[0], "n");
        row.lambda = parse_double(fields[1], "lambda");
        row.eps = parse_double(fields[2], "eps");
        row.x = Point::zeros(d);
        row.xbar = Point::zeros(d);
        for (std::size_t i = 0; i < d; ++i) row.x[i] = parse_double(fields[3 + i], "x");
        for (std::size_t i = 0; i < d; ++i) {
            row.xbar[i] = parse_double(fields[3 + d + i], "xbar");
        }
        row.eps_u_norm = parse_double(fields[3 + 2 * d], "eps_u_norm");
        const auto dist = fields[4 + 2 * d];
        if (!dist.empty()) row.dist_to_solution = parse_double(dist, "dist_to_solution");
        if (row.n <= prev_n) throw TraceFormatError("row indices must be strictly increasing");
        prev_n = row.n;
        trace.rows.push_back(std::move(row));
    }
    if (!have_header) throw TraceFormatError("trace has no header row");
    if (trace.meta.dimension == 0) trace.meta.dimension = d;
    return trace;
}

void write_trace_json(const ConvergenceTrace& trace, std::ostream& out) {
    json j;
    j["meta"] = meta_to_json(trace.meta);
    json rows = json::array();
    for (const TraceRow& row : trace.rows) {
        json r;
        r["n"] = row.n;
        r["lambda"] = row.lambda;
        r["eps"] = row.eps;
        r["x"] = row.x.coords();
        r["xbar"] = row.xbar.coords();
        r["eps_u_norm"] = row.eps_u_norm;
        r["dist_to_solution"] = row.dist_to_solution ? json(*row.dist_to_solution) : json(nullptr);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << "\n";
}

ConvergenceTrace read_trace_json(std::istream& in) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("bad trace json: ") + e.what());
    }
    ConvergenceTrace trace;
    try {
        trace.meta = meta_from_json(j.at("meta"));
        long prev_n = -1;
        for (const json& r : j.at("rows")) {
            TraceRow row;
            row.n = r.at("n").get<long>();
            row.lambda = r.at("lambda").get<double>();
            row.eps = r.at("eps").get<double>();
            row.x = Point(r.at("x").get<std::vector<double>>());
            row.xbar = Point(r.at("xbar").get<std::vector<double>>());
            row.eps_u_norm = r.at("eps_u_norm").get<double>();
            if (!r.at("dist_to_solution").is_null()) {
                row.dist_to_solution = r.at("dist_to_solution").get<double>();
            }
            if (row.n <= prev_n) {
                throw TraceFormatError("row indices must be strictly increasing");
            }
            prev_n = row.n;
            trace.rows.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw TraceFormatError(std::string("bad trace json: ") + e.what());
    }
    if (trace.meta.dimension == 0 && !trace.rows.empty()) {
        trace.meta.dimension = trace.rows.front().x.dim();
    }
    return trace;
}

void write_trace_file(const ConvergenceTrace& trace, const std::string& path,
                      const std::string& format) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    if (format == "csv") {
        write_trace_csv(trace, out);
    } else if (format == "json") {
        write_trace_json(trace, out);
    } else {
        throw std::invalid_argument("unknown trace format '" + format + "'");
    }
    out.flush();
    if (!out) throw Error("failed writing '" + path + "'");
}

ConvergenceTrace read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    char first = 0;
    in >> std::ws;
    if (!in.get(first)) throw TraceFormatError("trace file '" + path + "' is empty");
    in.unget();
    return first == '{' ? read_trace_json(in) : read_trace_csv(in);
}

} // namespace extsum
