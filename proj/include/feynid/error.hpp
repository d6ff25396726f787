#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace feynid
{

enum class errc {
    empty_word,
    zero_exponent,
    invalid_loop,
    adjacent_same_loop,
    parse_error,
    infeasible_scope,
    scope_too_large,
    formula_mismatch,
    negative_exponent_present,
    non_integral_result,
    negative_result,
    bound_mismatch,
    non_unit_constant_term,
    bad_constant_term,
    invalid_argument,
};

constexpr std::string_view to_string(errc c) noexcept
{
    switch (c) {
        case errc::empty_word:
            return "EmptyWord";
        case errc::zero_exponent:
            return "ZeroExponent";
        case errc::invalid_loop:
            return "InvalidLoop";
        case errc::adjacent_same_loop:
            return "AdjacentSameLoop";
        case errc::parse_error:
            return "ParseError";
        case errc::infeasible_scope:
            return "InfeasibleScope";
        case errc::scope_too_large:
            return "ScopeTooLarge";
        case errc::formula_mismatch:
            return "FormulaMismatch";
        case errc::negative_exponent_present:
            return "NegativeExponentPresent";
        case errc::non_integral_result:
            return "NonIntegralResult";
        case errc::negative_result:
            return "NegativeResult";
        case errc::bound_mismatch:
            return "BoundMismatch";
        case errc::non_unit_constant_term:
            return "NonUnitConstantTerm";
        case errc::bad_constant_term:
            return "BadConstantTerm";
        case errc::invalid_argument:
            return "InvalidArgument";
    }
    return "Unknown";
}

class error : public std::runtime_error
{
public:
    error(errc code, const std::string &what) : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    errc code() const noexcept
    {
        return code_;
    }

private:
    errc code_;
};

inline void require(bool cond, const std::string &what)
{
    if (!cond) {
        throw error(errc::invalid_argument, what);
    }
}

} // namespace feynid
