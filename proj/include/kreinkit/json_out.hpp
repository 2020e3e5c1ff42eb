#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "kreinkit/types.hpp"

namespace kreinkit::jsonout {

/// Minimal JSON value for emission only.  Object keys keep insertion order
/// and doubles are printed with 17 significant digits, so a given value
/// tree always serializes to the same bytes; that determinism is part of
/// the CLI contract and is why output does not go through a general JSON
/// library.
class Value;
using Array = std::vector<Value>;
using Member = std::pair<std::string, Value>;

class Value {
  public:
    using Object = std::vector<Member>;

    Value() : data_(nullptr) {}
    Value(std::nullptr_t) : data_(nullptr) {}
    Value(bool b) : data_(b) {}
    Value(int i) : data_(static_cast<std::int64_t>(i)) {}
    Value(std::int64_t i) : data_(i) {}
    Value(double d) : data_(d) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(Array a) : data_(std::move(a)) {}
    Value(Object o) : data_(std::move(o)) {}

    const std::variant<std::nullptr_t, bool, std::int64_t, double,
                       std::string, Array, Object>& data() const {
        return data_;
    }

  private:
    std::variant<std::nullptr_t, bool, std::int64_t, double, std::string,
                 Array, Object> data_;
};

using Object = Value::Object;

/// Serialize with 2-space indentation and a trailing newline.
std::string dump(const Value& v);

void write_file(const std::string& path, const Value& v);

/// Complex scalars serialize as [re, im]; vectors and matrices as nested
/// arrays of those pairs.
Value complex_value(Complex z);
Value vector_value(const Vector& v);
Value matrix_value(const Matrix& m);
Value real_vector_value(const RealVector& v);

/// The %.17g rendering used for every double in reports.
std::string format_double(double d);

}  // namespace kreinkit::jsonout
