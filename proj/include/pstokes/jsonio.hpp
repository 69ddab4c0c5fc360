#ifndef PSTOKES_JSONIO_HPP
#define PSTOKES_JSONIO_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace pstokes {

// Full round-trip decimal formatting (17 significant digits). All numeric
// output in reports and CSV files goes through this so that deterministic
// reruns are byte-identical.
inline std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

// Minimal streaming JSON writer with insertion-ordered keys and the 17-digit
// number format above. Only what the reports need.
class JsonWriter {
 public:
  void begin_object() {
    comma();
    out_ += '{';
    stack_.push_back(true);
  }
  void end_object() {
    out_ += '}';
    stack_.pop_back();
  }
  void begin_array() {
    comma();
    out_ += '[';
    stack_.push_back(true);
  }
  void end_array() {
    out_ += ']';
    stack_.pop_back();
  }
  void key(std::string_view name) {
    comma();
    quote(name);
    out_ += ':';
    pending_value_ = true;
  }
  void value(double v) {
    comma();
    out_ += format_double(v);
  }
  void value(std::int64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(std::uint64_t v) {
    comma();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(bool v) {
    comma();
    out_ += v ? "true" : "false";
  }
  void value(std::string_view v) {
    comma();
    quote(v);
  }
  void kv(std::string_view name, double v) {
    key(name);
    value(v);
  }
  void kv(std::string_view name, std::int64_t v) {
    key(name);
    value(v);
  }
  void kv(std::string_view name, std::uint64_t v) {
    key(name);
    value(v);
  }
  void kv(std::string_view name, int v) {
    key(name);
    value(v);
  }
  void kv(std::string_view name, bool v) {
    key(name);
    value(v);
  }
  void kv(std::string_view name, std::string_view v) {
    key(name);
    value(v);
  }

  const std::string& str() const { return out_; }

 private:
  void comma() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty() && !stack_.back()) out_ += ',';
    if (!stack_.empty()) stack_.back() = false;
  }
  void quote(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        default: out_ += c;
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> stack_;  // true while the container is still empty
  bool pending_value_ = false;
};

}  // namespace pstokes

#endif  // PSTOKES_JSONIO_HPP
