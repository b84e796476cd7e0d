#pragma once

#include <string>
#include <vector>

namespace sharpineq {

// Minimal ordered JSON emitter. Keys keep insertion order and every floating
// point value is printed with 17 significant digits so a written report
// re-parses to the identical doubles and two identical runs produce
// byte-identical files.
class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(double v);
    JsonWriter& value(long long v);
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(unsigned long long v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& null_value();

    // convenience: key + scalar
    template <typename T>
    JsonWriter& field(const std::string& name, const T& v) {
        key(name);
        return value(v);
    }

    const std::string& str() const { return out_; }

private:
    void comma();
    std::string out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string json_escape(const std::string& s);
std::string format_double(double v);  // %.17g

// One CSV row of %.17g-formatted doubles.
std::string csv_row(const std::vector<double>& values);

}  // namespace sharpineq
