#pragma once

// Machine-readable verification reports: configuration echo, per-check
// records and deterministic JSON/CSV serialization (17 significant digits,
// locale independent).

#include "bsdom/disc.hpp"
#include "bsdom/domain.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <optional>

namespace bsdom {

enum class Command {
    verify_identities,
    verify_norms,
    verify_moebius,
    bohr_sum,
    extremal_sweep,
    disc_search
};

inline const char* command_name(Command c) {
    switch (c) {
        case Command::verify_identities: return "verify-identities";
        case Command::verify_norms: return "verify-norms";
        case Command::verify_moebius: return "verify-moebius";
        case Command::bohr_sum: return "bohr-sum";
        case Command::extremal_sweep: return "extremal-sweep";
        case Command::disc_search: return "disc-search";
    }
    return "?";
}

enum class OutputFormat { json, csv };

struct Tolerances {
    double identity{1e-10};
    double norm{1e-9};
    double sampling_rel{1e-3};
    double derivative_rel{1e-6};
};

struct RunConfig {
    Command command{Command::verify_identities};
    std::optional<DomainSpec> domain;
    std::uint64_t seed{0};
    int samples{50};
    Tolerances tolerances;
    OutputFormat output{OutputFormat::json};
    std::string output_path;

    // bohr-sum / extremal-sweep
    std::string map_kind{"extremal"};  // extremal | constant | identity
    std::vector<Complex> u_coords;
    std::vector<Complex> z_coords;
    int k_max{64};
    int quad_points{0};
    disc::Grid a_grid{0.3, 0.45, 16};

    // disc-search
    disc::DiscFamilySpec family;
    disc::Grid r_grid{0.25, 0.75, 501};
    disc::Grid param_grid{0.5, 0.99, 50};
};

struct CheckRecord {
    std::string name;
    std::string anchor;  // identity / lemma tag the check exercises
    double value{0};
    double bound{0};
    bool pass{false};
};

struct Report {
    RunConfig config;
    std::vector<CheckRecord> records;
    std::vector<std::pair<std::string, std::string>> results;  // named outputs
    double wall_ms{0};  // console only, never serialized

    int passed() const {
        int n = 0;
        for (const auto& r : records) n += r.pass ? 1 : 0;
        return n;
    }
    int failed() const { return int(records.size()) - passed(); }
    bool all_passed() const { return failed() == 0; }
};

namespace detail {

inline std::string fmt_double(double v) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string complex_list_json(const std::vector<Complex>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += "[" + fmt_double(v[i].real()) + "," + fmt_double(v[i].imag()) + "]";
    }
    return out + "]";
}

}  // namespace detail

inline std::string serialize_config(const RunConfig& c) {
    using detail::fmt_double;
    std::string s = "{";
    s += "\"command\":\"" + std::string(command_name(c.command)) + "\"";
    if (c.domain) {
        s += ",\"domain\":{\"kind\":\"" + std::string(kind_name(c.domain->kind)) + "\"";
        if (c.domain->kind == DomainKind::type_i)
            s += ",\"p\":" + std::to_string(c.domain->p) + ",\"q\":" + std::to_string(c.domain->q);
        else
            s += ",\"n\":" + std::to_string(c.domain->q);
        s += "}";
    }
    s += ",\"seed\":" + std::to_string(c.seed);
    s += ",\"samples\":" + std::to_string(c.samples);
    s += ",\"tolerances\":{\"identity\":" + fmt_double(c.tolerances.identity) +
         ",\"norm\":" + fmt_double(c.tolerances.norm) +
         ",\"sampling_rel\":" + fmt_double(c.tolerances.sampling_rel) +
         ",\"derivative_rel\":" + fmt_double(c.tolerances.derivative_rel) + "}";
    if (c.command == Command::bohr_sum || c.command == Command::extremal_sweep) {
        s += ",\"map\":\"" + c.map_kind + "\"";
        s += ",\"u\":" + detail::complex_list_json(c.u_coords);
        if (c.command == Command::bohr_sum)
            s += ",\"z\":" + detail::complex_list_json(c.z_coords);
        s += ",\"k_max\":" + std::to_string(c.k_max);
        if (c.command == Command::extremal_sweep)
            s += ",\"a_grid\":[" + fmt_double(c.a_grid.lo) + "," + fmt_double(c.a_grid.hi) +
                 "," + std::to_string(c.a_grid.count) + "]";
    }
    if (c.command == Command::disc_search) {
        const char* cls = "F0";
        switch (c.family.cls) {
            case disc::DiscClass::f0: cls = "F0"; break;
            case disc::DiscClass::f0_alpha: cls = "F0a"; break;
            case disc::DiscClass::fm: cls = "Fm"; break;
            case disc::DiscClass::fm_alpha: cls = "Fma"; break;
        }
        s += ",\"class\":\"" + std::string(cls) + "\"";
        s += ",\"m\":" + std::to_string(c.family.m);
        s += ",\"alpha\":" + fmt_double(c.family.alpha);
        s += ",\"r_grid\":[" + fmt_double(c.r_grid.lo) + "," + fmt_double(c.r_grid.hi) + "," +
             std::to_string(c.r_grid.count) + "]";
        s += ",\"param_grid\":[" + fmt_double(c.param_grid.lo) + "," +
             fmt_double(c.param_grid.hi) + "," + std::to_string(c.param_grid.count) + "]";
    }
    return s + "}";
}

// JSON schema "1": config echo, records, named results, summary. Identical
// config and seed produce byte-identical output.
inline std::string serialize_report(const Report& rep, OutputFormat fmt) {
    using detail::fmt_double;
    if (fmt == OutputFormat::csv) {
        std::string out = "name,anchor,value,bound,pass\n";
        for (const auto& r : rep.records) {
            out += r.name + "," + r.anchor + "," + fmt_double(r.value) + "," +
                   fmt_double(r.bound) + "," + (r.pass ? "true" : "false") + "\n";
        }
        return out;
    }
    std::string out = "{\"schema\":\"1\",\"config\":" + serialize_config(rep.config);
    out += ",\"records\":[";
    for (std::size_t i = 0; i < rep.records.size(); ++i) {
        const auto& r = rep.records[i];
        if (i) out += ",";
        out += "{\"name\":\"" + detail::json_escape(r.name) + "\",\"anchor\":\"" +
               detail::json_escape(r.anchor) + "\",\"value\":" + fmt_double(r.value) +
               ",\"bound\":" + fmt_double(r.bound) +
               ",\"pass\":" + (r.pass ? "true" : "false") + "}";
    }
    out += "]";
    if (!rep.results.empty()) {
        out += ",\"results\":{";
        for (std::size_t i = 0; i < rep.results.size(); ++i) {
            if (i) out += ",";
            out += "\"" + detail::json_escape(rep.results[i].first) + "\":\"" +
                   detail::json_escape(rep.results[i].second) + "\"";
        }
        out += "}";
    }
    out += ",\"summary\":{\"total\":" + std::to_string(rep.records.size()) +
           ",\"passed\":" + std::to_string(rep.passed()) +
           ",\"failed\":" + std::to_string(rep.failed()) + "}}";
    out += "\n";
    return out;
}

inline void emit_report(const Report& rep, OutputFormat fmt, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output path: " + path);
    os << serialize_report(rep, fmt);
    if (!os) throw std::runtime_error("failed writing report to: " + path);
}

}  // namespace bsdom
