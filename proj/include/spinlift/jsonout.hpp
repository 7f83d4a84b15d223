// Deterministic JSON emission: keys in call order, floats via to_chars with
// 17 significant digits (locale-free, round-trips doubles exactly).

#pragma once

#include "spinlift/model.hpp"

#include <string>
#include <vector>

namespace spinlift {

class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& number(double v);
    JsonWriter& integer(long v);
    JsonWriter& boolean(bool v);
    JsonWriter& string(const std::string& v);
    JsonWriter& null();
    JsonWriter& complex_value(cd v);  // {"re": x, "im": y}

    const std::string& str() const { return out_; }

private:
    void pre_value();
    std::string out_;
    std::vector<bool> need_comma_;
    bool after_key_ = false;
};

std::string format_double(double v);

}  // namespace spinlift
