#include "santalo/report.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace santalo::report {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
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

}  // namespace

std::string format_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

Value Value::of(bool b) {
    Value v;
    v.kind_ = Kind::boolean;
    v.bool_ = b;
    return v;
}

Value Value::of(long long i) {
    Value v;
    v.kind_ = Kind::integer;
    v.int_ = i;
    return v;
}

Value Value::of(unsigned long long i) {
    Value v;
    v.kind_ = Kind::unsigned_integer;
    v.uint_ = i;
    return v;
}

Value Value::of(double d) {
    Value v;
    v.kind_ = Kind::number;
    v.num_ = d;
    return v;
}

Value Value::of(const char* s) { return of(std::string(s)); }

Value Value::of(std::string s) {
    Value v;
    v.kind_ = Kind::string;
    v.str_ = std::move(s);
    return v;
}

Value Value::array() {
    Value v;
    v.kind_ = Kind::array;
    return v;
}

Value Value::object() {
    Value v;
    v.kind_ = Kind::object;
    return v;
}

Value& Value::push(Value v) {
    if (kind_ != Kind::array) throw std::logic_error("report::Value::push on non-array");
    items_.push_back(std::move(v));
    return *this;
}

Value& Value::set(const std::string& key, Value v) {
    if (kind_ != Kind::object) throw std::logic_error("report::Value::set on non-object");
    fields_.emplace_back(key, std::move(v));
    return *this;
}

std::string Value::scalar_token() const {
    switch (kind_) {
        case Kind::null: return "null";
        case Kind::boolean: return bool_ ? "true" : "false";
        case Kind::integer: return std::to_string(int_);
        case Kind::unsigned_integer: return std::to_string(uint_);
        case Kind::number:
            if (std::isnan(num_)) return "\"nan\"";
            if (std::isinf(num_)) return num_ > 0 ? "\"inf\"" : "\"-inf\"";
            return format_double(num_);
        case Kind::string: return "\"" + escape(str_) + "\"";
        default: throw std::logic_error("scalar_token on composite value");
    }
}

void Value::write_json(std::string& out, int indent, int depth) const {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (kind_) {
        case Kind::array: {
            if (items_.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                out += pad;
                items_[i].write_json(out, indent, depth + 1);
                if (i + 1 < items_.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "]";
            return;
        }
        case Kind::object: {
            if (fields_.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            for (std::size_t i = 0; i < fields_.size(); ++i) {
                out += pad + "\"" + escape(fields_[i].first) + "\": ";
                fields_[i].second.write_json(out, indent, depth + 1);
                if (i + 1 < fields_.size()) out += ",";
                out += "\n";
            }
            out += close_pad + "}";
            return;
        }
        default: out += scalar_token();
    }
}

std::string Value::to_json(int indent) const {
    std::string out;
    write_json(out, indent, 0);
    out += "\n";
    return out;
}

namespace {

// RFC-4180 style: quote fields containing separators or quotes
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

void Value::write_csv(std::string& out, const std::string& prefix) const {
    switch (kind_) {
        case Kind::array:
            for (std::size_t i = 0; i < items_.size(); ++i)
                items_[i].write_csv(out, prefix + "[" + std::to_string(i) + "]");
            return;
        case Kind::object:
            for (const auto& [key, value] : fields_)
                value.write_csv(out, prefix.empty() ? key : prefix + "." + key);
            return;
        case Kind::string:
            out += prefix + "," + csv_field(str_) + "\n";
            return;
        default: {
            std::string token = scalar_token();
            if (token.size() >= 2 && token.front() == '"') token = token.substr(1, token.size() - 2);
            out += prefix + "," + csv_field(token) + "\n";
        }
    }
}

std::string Value::to_csv() const {
    std::string out = "key,value\n";
    write_csv(out, "");
    return out;
}

}  // namespace santalo::report
