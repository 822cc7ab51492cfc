#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace pvg {

/// An element of Z ∪ {∞} used for ground values of the value sort.
///
/// Ground values of V live in N ∪ {∞}; integer shifts produced by coefficient
/// alignment can push intermediate bounds below zero, so the type is signed.
/// ∞ absorbs every shift.
class ExtValue {
public:
    constexpr ExtValue() = default;
    constexpr ExtValue(std::int64_t v) : value_(v) {}  // NOLINT(implicit)

    static constexpr ExtValue infinity() {
        ExtValue e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_finite() const { return !infinite_; }
    constexpr std::int64_t value() const { return value_; }

    constexpr ExtValue operator+(std::int64_t shift) const {
        return infinite_ ? *this : ExtValue(value_ + shift);
    }
    constexpr ExtValue operator-(std::int64_t shift) const { return *this + (-shift); }

    constexpr bool operator==(const ExtValue& o) const {
        return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
    }
    constexpr std::strong_ordering operator<=>(const ExtValue& o) const {
        if (infinite_ || o.infinite_) return infinite_ <=> o.infinite_;
        return value_ <=> o.value_;
    }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

inline std::ostream& operator<<(std::ostream& os, const ExtValue& v) { return os << v.str(); }

inline constexpr ExtValue min(const ExtValue& a, const ExtValue& b) { return a < b ? a : b; }
inline constexpr ExtValue max(const ExtValue& a, const ExtValue& b) { return a < b ? b : a; }

} // namespace pvg
