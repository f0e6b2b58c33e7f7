/**
 * Coefficient rings and exact scalar types.
 *
 * All linear algebra in this library is exact.  Integers are GMP
 * arbitrary-precision integers, rationals are GMP rationals, and prime-field
 * elements carry their modulus at runtime so that one templated code path
 * serves every F_p requested on the command line.
 */

#ifndef SHEAFCOH_RING_HPP
#define SHEAFCOH_RING_HPP

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sheafcoh {

using Int = mpz_class;
using Rat = mpq_class;

/**
 * Selector for the ground ring: Z, Q, or F_p with p prime.
 */
struct CoefficientRing {
    enum class Kind { Integers, Rationals, PrimeField };

    Kind kind = Kind::Rationals;
    long modulus = 0;   // nonzero only for PrimeField

    static CoefficientRing integers() { return {Kind::Integers, 0}; }
    static CoefficientRing rationals() { return {Kind::Rationals, 0}; }
    static CoefficientRing primeField(long p)
    {
        if (p < 2 || p > 2147483647L)
            throw std::invalid_argument("prime-field modulus out of range");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0)
                throw std::invalid_argument("prime-field modulus is not prime");
        return {Kind::PrimeField, p};
    }

    bool isField() const { return kind != Kind::Integers; }
    bool operator==(const CoefficientRing&) const = default;

    std::string name() const
    {
        switch (kind) {
            case Kind::Integers:  return "Z";
            case Kind::Rationals: return "Q";
            case Kind::PrimeField: return "F" + std::to_string(modulus);
        }
        return "?";
    }
};

/**
 * Element of a prime field with the modulus carried alongside the value.
 *
 * A default-constructed or integer-constructed element is an "unattached"
 * literal (modulus 0): it adopts the modulus of the first attached operand
 * it is combined with.  This lets Eigen's Scalar(0)/Scalar(1) idioms work
 * while keeping a single GF type for every p.
 */
class GF {
public:
    GF() : v_(0), p_(0) {}
    GF(int n) : v_(n), p_(0) {}
    GF(long n) : v_(n), p_(0) {}

    static GF make(long v, long p)
    {
        GF x;
        x.p_ = p;
        x.v_ = normalize(v, p);
        return x;
    }

    long value() const { return v_; }
    long modulus() const { return p_; }
    bool attached() const { return p_ != 0; }

    GF operator-() const { return raw(-v_, p_); }

    GF operator+(const GF& o) const
    {
        long p = join(o);
        return raw(v_ + o.v_, p);
    }
    GF operator-(const GF& o) const
    {
        long p = join(o);
        return raw(v_ - o.v_, p);
    }
    GF operator*(const GF& o) const
    {
        long p = join(o);
        return raw(normalize(v_, p) * normalize(o.v_, p), p);
    }
    GF operator/(const GF& o) const { return *this * o.inverse(); }

    GF& operator+=(const GF& o) { return *this = *this + o; }
    GF& operator-=(const GF& o) { return *this = *this - o; }
    GF& operator*=(const GF& o) { return *this = *this * o; }
    GF& operator/=(const GF& o) { return *this = *this / o; }

    GF inverse() const
    {
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return raw(v_, 0);
            throw std::domain_error("GF: inverting an unattached non-unit");
        }
        long a = normalize(v_, p_);
        if (a == 0) throw std::domain_error("GF: division by zero");
        // extended Euclid on (a, p)
        long t = 0, newt = 1, r = p_, newr = a;
        while (newr != 0) {
            long q = r / newr;
            long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        return raw(t, p_);
    }

    bool operator==(const GF& o) const
    {
        long p = join(o);
        if (p == 0) return v_ == o.v_;
        return normalize(v_, p) == normalize(o.v_, p);
    }
    bool operator!=(const GF& o) const { return !(*this == o); }

private:
    long v_;
    long p_;

    static GF raw(long v, long p)
    {
        GF x;
        x.p_ = p;
        x.v_ = normalize(v, p);
        return x;
    }
    static long normalize(long v, long p)
    {
        if (p == 0) return v;
        long r = v % p;
        return r < 0 ? r + p : r;
    }
    long join(const GF& o) const
    {
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
            throw std::logic_error("GF: mixing elements of different fields");
        return p_ != 0 ? p_ : o.p_;
    }
};

inline std::ostream& operator<<(std::ostream& os, const GF& x)
{
    return os << x.value();
}

/// Build a scalar of type T representing the integer v in the given ring.
template <typename T>
T scalarFromInt(const Int& v, const CoefficientRing& ring);

template <>
inline Int scalarFromInt<Int>(const Int& v, const CoefficientRing&) { return v; }

template <>
inline Rat scalarFromInt<Rat>(const Int& v, const CoefficientRing&) { return Rat(v); }

template <>
inline GF scalarFromInt<GF>(const Int& v, const CoefficientRing& ring)
{
    Int r = v % ring.modulus;
    return GF::make(r.get_si(), ring.modulus);
}

template <typename T>
std::string scalarToString(const T& x);

template <> inline std::string scalarToString<Int>(const Int& x) { return x.get_str(); }
template <> inline std::string scalarToString<Rat>(const Rat& x) { return x.get_str(); }
template <> inline std::string scalarToString<GF>(const GF& x) { return std::to_string(x.value()); }

}  // namespace sheafcoh

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    typedef mpz_class Real;
    typedef mpz_class NonInteger;
    typedef mpz_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 30,
        MulCost = 50
    };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    typedef mpq_class Real;
    typedef mpq_class NonInteger;
    typedef mpq_class Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

template <>
struct NumTraits<sheafcoh::GF> : GenericNumTraits<sheafcoh::GF> {
    typedef sheafcoh::GF Real;
    typedef sheafcoh::GF NonInteger;
    typedef sheafcoh::GF Nested;
    static inline Real epsilon() { return sheafcoh::GF(); }
    static inline Real dummy_precision() { return sheafcoh::GF(); }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 0,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 3,
        MulCost = 5
    };
};

}  // namespace Eigen

#endif  // SHEAFCOH_RING_HPP
