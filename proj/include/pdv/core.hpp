#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pdv {

// ---------------------------------------------------------------- errors

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input bytes/text. `offset` is the byte (or line) where parsing stopped.
struct FormatError : Error {
    std::size_t offset;
    FormatError(const std::string& msg, std::size_t off) : Error(msg), offset(off) {}
};

// A syntactically valid record with an unusable value. `index` is the record number.
struct RecordError : Error {
    std::size_t index;
    RecordError(const std::string& msg, std::size_t idx) : Error(msg), index(idx) {}
};

// Caller violated a precondition (empty group, empty neighborhood, ...).
struct ContractError : Error {
    using Error::Error;
};

// Tensor/shape mismatch; message names the offending operand.
struct DimensionError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------- vectors

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline double squared_distance(const Vec3& a, const Vec3& b) { return (a - b).squared_norm(); }

// Integer voxel coordinate. std::array gives lexicographic ordering for free.
using Coord = std::array<std::int32_t, 3>;

struct CoordHash {
    std::size_t operator()(const Coord& c) const {
        // FNV-1a over the three components.
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::int32_t v : c) {
            auto u = static_cast<std::uint32_t>(v);
            for (int i = 0; i < 4; ++i) {
                h ^= (u >> (8 * i)) & 0xffu;
                h *= 0x100000001b3ull;
            }
        }
        return static_cast<std::size_t>(h);
    }
};

// ---------------------------------------------------------------- deterministic seeding

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Uniform double in [0, 1) from the top 53 bits of an engine draw.
// std::uniform_real_distribution is implementation-defined; this is not.
template <typename Engine>
double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Engine>
double uniform_in(Engine& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

constexpr double kPi = 3.141592653589793238462643383279502884;

// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

}  // namespace pdv
