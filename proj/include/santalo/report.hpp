#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace santalo::report {

/// Order-preserving JSON value tree for machine-readable reports.  Doubles
/// are serialized with 17 significant digits so reruns of the same binary
/// produce byte-identical output and values round-trip exactly; non-finite
/// doubles become the strings "inf" / "-inf" / "nan".
class Value {
  public:
    Value() : kind_(Kind::null) {}

    static Value null() { return Value(); }
    static Value of(bool b);
    static Value of(long long i);
    static Value of(int i) { return of(static_cast<long long>(i)); }
    static Value of(long i) { return of(static_cast<long long>(i)); }
    static Value of(unsigned long long i);
    static Value of(double d);
    static Value of(const char* s);
    static Value of(std::string s);
    static Value array();
    static Value object();

    Value& push(Value v);                       // array append
    Value& set(const std::string& key, Value v);  // object insert (insertion order)

    std::string to_json(int indent = 2) const;
    /// Flat "key,value" CSV lines; nested keys joined with '.', array
    /// elements indexed as key[i].
    std::string to_csv() const;

  private:
    enum class Kind { null, boolean, integer, unsigned_integer, number, string, array, object };

    void write_json(std::string& out, int indent, int depth) const;
    void write_csv(std::string& out, const std::string& prefix) const;
    std::string scalar_token() const;

    Kind kind_;
    bool bool_ = false;
    long long int_ = 0;
    unsigned long long uint_ = 0;
    double num_ = 0;
    std::string str_;
    std::vector<Value> items_;
    std::vector<std::pair<std::string, Value>> fields_;
};

/// Formats a double with 17 significant digits (shortest C locale "%.17g").
std::string format_double(double d);

}  // namespace santalo::report
