#ifndef FOBKIT_REPORT_HPP
#define FOBKIT_REPORT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace fobkit {

/// A single diagnostic: a stable code, a human message, and a witness
/// (typically a cell or walk id rendered as text).
struct Violation {
    std::string code;
    std::string message;
    std::string witness;
};

/// Diagnostic return value for validation-style operations.  Empty report
/// means every checked invariant holds.
class ValidationReport {
  public:
    void add(std::string code, std::string message, std::string witness = "") {
        items_.push_back({std::move(code), std::move(message), std::move(witness)});
    }
    bool ok() const { return items_.empty(); }
    const std::vector<Violation>& items() const { return items_; }

    std::string summary() const {
        std::string s;
        for (const auto& v : items_) {
            s += v.code;
            s += ": ";
            s += v.message;
            if (!v.witness.empty()) {
                s += " [";
                s += v.witness;
                s += "]";
            }
            s += "\n";
        }
        return s;
    }

  private:
    std::vector<Violation> items_;
};

/// Thrown when an operation's precondition fails.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when input data is structurally malformed (bad gluing, bad ids).
struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when an internal invariant that the algorithms rely on breaks.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace fobkit

#endif
