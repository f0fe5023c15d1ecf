// Shared plumbing: error types, the global enumeration bound, exact integer
// helpers, and the Q/Z residue type used to model circle-valued pairings.

#pragma once

#include <atomic>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace heiskit {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated preconditions (parent mismatch, bad shapes, ...).
class input_error : public error {
public:
    using error::error;
};

/// An exhaustive operation would exceed the configured enumeration bound.
class bound_error : public error {
public:
    using error::error;
};

/// A theorem-backed internal consistency check failed; indicates a bug.
class internal_error : public error {
public:
    using error::error;
};

namespace detail {
inline std::atomic<std::int64_t>& bound_storage() {
    static std::atomic<std::int64_t> bound{100000};
    return bound;
}
} // namespace detail

inline std::int64_t enumeration_bound() { return detail::bound_storage().load(); }

inline void set_enumeration_bound(std::int64_t n) {
    if (n < 1) throw input_error("enumeration bound must be positive");
    detail::bound_storage().store(n);
}

inline void check_bound(std::int64_t count, const char* what) {
    if (count > enumeration_bound())
        throw bound_error(std::string(what) + ": " + std::to_string(count) +
                          " elements exceed the enumeration bound " +
                          std::to_string(enumeration_bound()));
}

// a mod m in [0, m)
inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > static_cast<__int128>(INT64_MAX / 4))
        throw input_error(std::string(what) + ": integer overflow");
    return static_cast<std::int64_t>(p);
}

/// Inverse of a modulo m (extended Euclid); requires gcd(a, m) = 1.
inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    a = mod_floor(a, m);
    std::int64_t r0 = m, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t r2 = r0 - q * r1;
        std::int64_t s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw input_error("mod_inverse: arguments are not coprime");
    return mod_floor(s0, m);
}

inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

/**
 * An element of Q/Z stored as a reduced fraction num/den with
 * 0 <= num < den and gcd(num, den) = 1 (zero is 0/1).  Addition is modulo 1,
 * so every value has finite order equal to its denominator.  This is the
 * finite-scale model of the circle group: a computation whose characters
 * have exponent N lands in (1/N)Z/Z.
 */
class RationalResidue {
public:
    RationalResidue() : num_(0), den_(1) {}

    RationalResidue(std::int64_t num, std::int64_t den) {
        if (den <= 0) throw input_error("RationalResidue: denominator must be positive");
        num = mod_floor(num, den);
        std::int64_t g = std::gcd(num, den);
        if (g == 0) g = 1;
        num_ = num / g;
        den_ = den / g;
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    bool is_zero() const { return num_ == 0; }

    /// Additive order in Q/Z.
    std::int64_t order() const { return den_; }

    RationalResidue operator+(const RationalResidue& o) const {
        std::int64_t l = std::lcm(den_, o.den_);
        return RationalResidue(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    }

    RationalResidue operator-() const { return RationalResidue(-num_, den_); }

    RationalResidue operator-(const RationalResidue& o) const { return *this + (-o); }

    RationalResidue scaled(std::int64_t k) const {
        return RationalResidue(mul_mod(mod_floor(k, den_), num_, den_), den_);
    }

    bool operator==(const RationalResidue& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalResidue& o) const { return !(*this == o); }

    std::string to_string() const {
        if (num_ == 0) return "0";
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    std::int64_t num_;
    std::int64_t den_;
};

} // namespace heiskit
