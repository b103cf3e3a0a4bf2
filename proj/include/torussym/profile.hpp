#pragma once

#include <memory>
#include <stdexcept>
#include <string>

namespace torussym {

struct ProfileParseError : std::runtime_error {
    ProfileParseError(size_t position, const std::string& message)
        : std::runtime_error("profile parse error at position " + std::to_string(position) +
                             ": " + message),
          position(position) {}
    size_t position;
};

struct ProfileEvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {
struct ProfileNode;
}

/// A univariate radial profile r >= 0 -> f(r) > 0.
///
/// Grammar: numeric literals, the variable r, binary + - * / ^, unary minus,
/// exp(...), parentheses. '^' is right-associative and binds tighter than
/// unary minus. Parsed profiles are validated to be finite and strictly
/// positive at r in {0, 1, 10}.
class ProfileFunction {
public:
    /// Parses `source`; throws ProfileParseError on bad syntax and
    /// ProfileEvalError when the probe values are nonpositive or not finite.
    static ProfileFunction parse(const std::string& source);

    double operator()(double r) const;

    /// Canonical fully parenthesized rendering; parse(pretty()) round-trips.
    std::string pretty() const;

    const std::string& source() const { return source_; }

private:
    ProfileFunction(std::string source, std::shared_ptr<const detail::ProfileNode> root)
        : source_(std::move(source)), root_(std::move(root)) {}

    std::string source_;
    std::shared_ptr<const detail::ProfileNode> root_;
};

}  // namespace torussym
