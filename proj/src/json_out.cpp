#include "kreinkit/json_out.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "kreinkit/errors.hpp"

namespace kreinkit::jsonout {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void dump_rec(const Value& v, std::string& out, int indent) {
    const std::string pad(2 * indent, ' ');
    const std::string pad_in(2 * (indent + 1), ' ');
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += x ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                out += std::to_string(x);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(x);
            } else if constexpr (std::is_same_v<T, std::string>) {
                append_escaped(out, x);
            } else if constexpr (std::is_same_v<T, Array>) {
                if (x.empty()) {
                    out += "[]";
                    return;
                }
                out += "[\n";
                for (std::size_t i = 0; i < x.size(); ++i) {
                    out += pad_in;
                    dump_rec(x[i], out, indent + 1);
                    if (i + 1 < x.size()) out += ',';
                    out += '\n';
                }
                out += pad + "]";
            } else if constexpr (std::is_same_v<T, Object>) {
                if (x.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                for (std::size_t i = 0; i < x.size(); ++i) {
                    out += pad_in;
                    append_escaped(out, x[i].first);
                    out += ": ";
                    dump_rec(x[i].second, out, indent + 1);
                    if (i + 1 < x.size()) out += ',';
                    out += '\n';
                }
                out += pad + "}";
            }
        },
        v.data());
}

}  // namespace

std::string format_double(double d) {
    if (!std::isfinite(d))
        fail(ErrorCode::SolveFailed, "non-finite value in a report");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

std::string dump(const Value& v) {
    std::string out;
    dump_rec(v, out, 0);
    out += '\n';
    return out;
}

void write_file(const std::string& path, const Value& v) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::ConfigInvalid, "cannot open output file: " + path);
    f << dump(v);
    if (!f)
        fail(ErrorCode::ConfigInvalid, "failed writing output file: " + path);
}

Value complex_value(Complex z) { return Array{Value(z.real()), Value(z.imag())}; }

Value vector_value(const Vector& v) {
    Array out;
    out.reserve(static_cast<std::size_t>(v.size()));
    for (int j = 0; j < v.size(); ++j) out.push_back(complex_value(v(j)));
    return out;
}

Value matrix_value(const Matrix& m) {
    Array rows;
    rows.reserve(static_cast<std::size_t>(m.rows()));
    for (int r = 0; r < m.rows(); ++r) {
        Array row;
        row.reserve(static_cast<std::size_t>(m.cols()));
        for (int c = 0; c < m.cols(); ++c) row.push_back(complex_value(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Value real_vector_value(const RealVector& v) {
    Array out;
    out.reserve(static_cast<std::size_t>(v.size()));
    for (int j = 0; j < v.size(); ++j) out.push_back(Value(v(j)));
    return out;
}

}  // namespace kreinkit::jsonout
