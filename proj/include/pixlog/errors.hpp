#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace pixlog {

// 1-based position in a specification file.
struct SourcePos {
  int line = 0;
  int col = 0;
  bool valid() const { return line > 0; }
  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

// Errors in the specification itself: lexing, parsing, or graph expansion.
// These map to CLI exit code 1.
class SpecError : public std::runtime_error {
 public:
  enum class Stage { Lex, Parse, Expand };

  SpecError(Stage stage, std::string message, SourcePos pos = {})
      : std::runtime_error(format(stage, message, pos)),
        stage_(stage),
        pos_(pos),
        raw_(std::move(message)) {}

  Stage stage() const { return stage_; }
  SourcePos pos() const { return pos_; }
  const std::string& rawMessage() const { return raw_; }

 private:
  static std::string format(Stage stage, const std::string& msg, SourcePos pos) {
    const char* name = stage == Stage::Lex     ? "lexical error"
                       : stage == Stage::Parse ? "syntax error"
                                               : "expansion error";
    std::string out = name;
    if (pos.valid()) out += " at " + pos.str();
    out += ": " + msg;
    return out;
  }

  Stage stage_;
  SourcePos pos_;
  std::string raw_;
};

// Errors while evaluating a task graph (type errors, I/O failures, kernel
// preconditions). These map to CLI exit code 2.
class RunError : public std::runtime_error {
 public:
  explicit RunError(std::string message, std::optional<uint32_t> nodeId = std::nullopt,
                    std::string opcode = {})
      : std::runtime_error(format(message, nodeId, opcode)),
        nodeId_(nodeId),
        opcode_(std::move(opcode)),
        raw_(std::move(message)) {}

  std::optional<uint32_t> nodeId() const { return nodeId_; }
  const std::string& opcode() const { return opcode_; }
  const std::string& rawMessage() const { return raw_; }

 private:
  static std::string format(const std::string& msg, std::optional<uint32_t> id,
                            const std::string& opcode) {
    if (!id) return msg;
    return "task " + std::to_string(*id) + (opcode.empty() ? "" : " (" + opcode + ")") +
           " failed: " + msg;
  }

  std::optional<uint32_t> nodeId_;
  std::string opcode_;
  std::string raw_;
};

}  // namespace pixlog
