#pragma once

// Report serialization. Reports must be byte-identical across runs with the
// same inputs, so this writer controls everything the generic JSON libraries
// leave implementation-defined: member order is insertion order and floats
// are always printed with %.17g (17 significant digits, value-preserving
// for IEEE doubles).

#include <cstdio>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace equimax {

inline std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
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
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// Minimal ordered JSON tree; enough for the report shapes this tool emits.
class Json {
  public:
    Json() : value_(nullptr) {}
    Json(bool b) : value_(b) {}
    Json(int v) : value_(static_cast<long long>(v)) {}
    Json(long long v) : value_(v) {}
    Json(unsigned long long v) : value_(v) {}
    Json(std::size_t v) : value_(static_cast<unsigned long long>(v)) {}
    Json(double v) : value_(v) {}
    Json(const char* s) : value_(std::string(s)) {}
    Json(std::string s) : value_(std::move(s)) {}

    static Json array() {
        Json j;
        j.value_ = Array{};
        return j;
    }
    static Json object() {
        Json j;
        j.value_ = Object{};
        return j;
    }

    Json& push_back(Json v) {
        std::get<Array>(value_).items.push_back(std::move(v));
        return *this;
    }

    Json& set(std::string key, Json v) {
        std::get<Object>(value_).members.emplace_back(std::move(key), std::move(v));
        return *this;
    }

    std::string dump() const {
        std::string out;
        write(out);
        return out;
    }

  private:
    struct Array {
        std::vector<Json> items;
    };
    struct Object {
        std::vector<std::pair<std::string, Json>> members;
    };

    void write(std::string& out) const {
        if (std::holds_alternative<std::nullptr_t>(value_)) {
            out += "null";
        } else if (const bool* b = std::get_if<bool>(&value_)) {
            out += *b ? "true" : "false";
        } else if (const long long* i = std::get_if<long long>(&value_)) {
            out += std::to_string(*i);
        } else if (const unsigned long long* u = std::get_if<unsigned long long>(&value_)) {
            out += std::to_string(*u);
        } else if (const double* d = std::get_if<double>(&value_)) {
            out += format_double17(*d);
        } else if (const std::string* s = std::get_if<std::string>(&value_)) {
            out += '"';
            out += json_escape(*s);
            out += '"';
        } else if (const Array* a = std::get_if<Array>(&value_)) {
            out += '[';
            for (std::size_t i = 0; i < a->items.size(); ++i) {
                if (i) out += ',';
                a->items[i].write(out);
            }
            out += ']';
        } else if (const Object* o = std::get_if<Object>(&value_)) {
            out += '{';
            for (std::size_t i = 0; i < o->members.size(); ++i) {
                if (i) out += ',';
                out += '"';
                out += json_escape(o->members[i].first);
                out += "\":";
                o->members[i].second.write(out);
            }
            out += '}';
        }
    }

    std::variant<std::nullptr_t, bool, long long, unsigned long long, double, std::string, Array,
                 Object>
        value_;
};

}  // namespace equimax
