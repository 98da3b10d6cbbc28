#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "chargelab/charge.hpp"
#include "chargelab/compactness.hpp"

namespace chargelab {

/// Parse failure categories map to distinct process exit codes.
enum class InstanceErrorKind {
    Malformed,          // bad syntax, unknown section, duplicate name
    UniverseMismatch,   // entries over incompatible universes
    InvariantViolation  // typed object rejected by its module
};

class InstanceError : public std::runtime_error {
  public:
    InstanceError(InstanceErrorKind kind, std::size_t line, std::size_t column,
                  const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + message),
          kind_(kind),
          line_(line),
          column_(column) {}

    InstanceErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    InstanceErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

/// Typed contents of a sectioned instance file. Entry order follows the
/// file, so reports iterate deterministically.
struct Instance {
    std::vector<std::pair<std::string, Charge>> charges;
    std::vector<std::pair<std::string, EPSet>> sets;            // [sequences]
    std::vector<std::pair<std::string, ElementSequence>> sequences;
    std::vector<std::pair<std::string, ChargeFamily>> families;
    std::vector<std::pair<std::string, EPSet>> algebra_gens;    // [generators]
    std::vector<std::pair<std::string, DisjointSeqGen>> seq_gens;

    const Charge* find_charge(const std::string& name) const;
};

Instance parse_instance_text(const std::string& text);
Instance parse_instance(const std::string& path);

/// Inverse of parsing: emits a file whose parse is structurally identical.
std::string serialize_instance(const Instance& inst);

}  // namespace chargelab
