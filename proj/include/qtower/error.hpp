#pragma once

#include <stdexcept>
#include <string>

namespace qtower {

enum class errc {
    undefined_input,
    not_fundamental,
    bound_exceeded,
    zero_input,
    not_applicable,
    square_discriminant,
    discriminant_mismatch,
    norm_minus_one,
    no_decomposition,
    precision_failure,
    non_integer_result,
    no_solution,
    insoluble,
    degenerate,
    sign_rule,
    hypothesis_violation,
    inconsistent,
    precondition,
    no_row_match,
    multiple_match,
    invalid_group,
    search_exhausted,
    io,
};

inline const char* errc_name(errc e)
{
    switch (e) {
    case errc::undefined_input: return "undefined-input";
    case errc::not_fundamental: return "not-fundamental";
    case errc::bound_exceeded: return "bound-exceeded";
    case errc::zero_input: return "zero-input";
    case errc::not_applicable: return "not-applicable";
    case errc::square_discriminant: return "square-discriminant";
    case errc::discriminant_mismatch: return "discriminant-mismatch";
    case errc::norm_minus_one: return "norm-minus-one";
    case errc::no_decomposition: return "no-decomposition";
    case errc::precision_failure: return "precision-escalation-failure";
    case errc::non_integer_result: return "non-integer-result";
    case errc::no_solution: return "no-solution-within-bound";
    case errc::insoluble: return "provably-insoluble";
    case errc::degenerate: return "degenerate-input";
    case errc::sign_rule: return "sign-rule-inapplicable";
    case errc::hypothesis_violation: return "hypothesis-violation";
    case errc::inconsistent: return "inconsistent-inputs";
    case errc::precondition: return "precondition-failure";
    case errc::no_row_match: return "no-row-match";
    case errc::multiple_match: return "multiple-label-match";
    case errc::invalid_group: return "invalid-group";
    case errc::search_exhausted: return "generator-search-exhausted";
    case errc::io: return "io-error";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code)
    {
    }

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

} // namespace qtower
