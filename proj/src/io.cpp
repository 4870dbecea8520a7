#include "henon/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace henon {

std::string format_g17(double v) {
    if (!std::isfinite(v)) return v > 0 ? "1e999" : (v < 0 ? "-1e999" : "0");
    char buf[64];
    const auto res =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void JsonWriter::separator() {
    if (!first_in_scope_.empty() && !pending_key_) {
        if (!first_in_scope_.back()) out_ += ",";
        first_in_scope_.back() = false;
    }
    pending_key_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    separator();
    out_ += "{";
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_object() {
    out_ += "}";
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::begin_array() {
    separator();
    out_ += "[";
    first_in_scope_.push_back(true);
    return *this;
}
JsonWriter& JsonWriter::end_array() {
    out_ += "]";
    first_in_scope_.pop_back();
    return *this;
}
JsonWriter& JsonWriter::key(const std::string& k) {
    separator();
    out_ += "\"" + k + "\":";
    pending_key_ = true;
    return *this;
}
JsonWriter& JsonWriter::value(double v) {
    separator();
    out_ += format_g17(v);
    return *this;
}
JsonWriter& JsonWriter::value(int v) {
    separator();
    out_ += std::to_string(v);
    return *this;
}
JsonWriter& JsonWriter::value(bool v) {
    separator();
    out_ += v ? "true" : "false";
    return *this;
}
JsonWriter& JsonWriter::value(const std::string& v) {
    separator();
    out_ += "\"";
    for (char ch : v) {
        switch (ch) {
            case '"': out_ += "\\\""; break;
            case '\\': out_ += "\\\\"; break;
            case '\n': out_ += "\\n"; break;
            case '\t': out_ += "\\t"; break;
            default: out_ += ch;
        }
    }
    out_ += "\"";
    return *this;
}
JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }
JsonWriter& JsonWriter::null_value() {
    separator();
    out_ += "null";
    return *this;
}
JsonWriter& JsonWriter::value(const std::optional<double>& v) {
    if (v) return value(*v);
    return null_value();
}

std::string to_json(const ConstantsReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("omega_N").value(rep.omega_n);
    w.key("s_alpha").value(rep.s_alpha);
    w.key("c_alpha_n").value(rep.c_alpha_n);
    w.key("threshold_single").value(rep.threshold_single);
    w.key("m_tilde").value(rep.m_tilde);
    w.key("threshold_double").value(rep.threshold_double);
    w.end_object();
    return w.str();
}

std::string to_json(const EnergyBreakdown& b) {
    JsonWriter w;
    w.begin_object();
    w.key("a").value(b.a);
    w.key("b").value(b.b);
    w.key("c").value(b.c);
    w.key("d").value(b.d);
    w.key("phi").value(b.phi);
    w.key("nehari_residual").value(b.nehari_residual);
    w.end_object();
    return w.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

void write_profile_csv(const std::string& path, const RadialFunction& u) {
    std::string csv = "r,u\n";
    const auto& nodes = u.grid->nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        csv += format_g17(nodes[i]) + "," + format_g17(u.node_values[i]) + "\n";
    write_text_file(path, csv);
}

}  // namespace henon
