#pragma once

#include <optional>
#include <string>
#include <vector>

#include "henon/energy.hpp"
#include "henon/experiments.hpp"
#include "henon/solver.hpp"
#include "henon/special.hpp"

// Machine-readable output.  All floating point numbers are printed with 17
// significant digits through std::to_chars, so identical inputs produce
// byte-identical files regardless of locale.

namespace henon {

std::string format_g17(double v);

// Minimal ordered JSON builder.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(int v);
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v);
    JsonWriter& null_value();
    JsonWriter& value(const std::optional<double>& v);

    const std::string& str() const { return out_; }

  private:
    void separator();
    std::string out_;
    std::vector<bool> first_in_scope_;
    bool pending_key_ = false;
};

std::string to_json(const ConstantsReport& rep);
std::string to_json(const EnergyBreakdown& b);

void write_text_file(const std::string& path, const std::string& content);
void write_profile_csv(const std::string& path, const RadialFunction& u);

}  // namespace henon
