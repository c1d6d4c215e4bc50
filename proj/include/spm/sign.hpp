#ifndef SPM_SIGN_HPP
#define SPM_SIGN_HPP

#include <cstdint>

namespace spm {

// Entry of a sign pattern. The ordering Zero < Plus < Minus is fixed and used
// for every canonicalization in the library; it is arbitrary but must never
// change once data has been serialized.
enum class Sign : std::int8_t { Zero = 0, Plus = 1, Minus = 2 };

constexpr int sign_value(Sign s) {
    return s == Sign::Plus ? 1 : (s == Sign::Minus ? -1 : 0);
}

constexpr Sign sign_of_int(int v) {
    return v > 0 ? Sign::Plus : (v < 0 ? Sign::Minus : Sign::Zero);
}

constexpr Sign sign_of_double(double v) {
    return v > 0.0 ? Sign::Plus : (v < 0.0 ? Sign::Minus : Sign::Zero);
}

constexpr Sign negate(Sign s) {
    return s == Sign::Plus ? Sign::Minus : (s == Sign::Minus ? Sign::Plus : Sign::Zero);
}

constexpr Sign multiply(Sign a, Sign b) {
    return sign_of_int(sign_value(a) * sign_value(b));
}

constexpr char sign_char(Sign s) {
    return s == Sign::Plus ? '+' : (s == Sign::Minus ? '-' : '0');
}

}  // namespace spm

#endif
