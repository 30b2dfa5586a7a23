#pragma once

#include <stdexcept>
#include <string>

namespace srdcr {

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// want_logprobs was set on a backend that cannot supply token logprobs.
// Callers are expected to fall back to the self-consistency proxy.
struct UnsupportedLogprobs : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The scripted backend had no rule matching the rendered prompt. Always a
// test-fixture gap; never silently defaulted.
struct ScriptMiss : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerdictParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AnswerParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TemplateParseFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyAnswer : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonNumericAnswer : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpanNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingRecord : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionViolation : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace srdcr
