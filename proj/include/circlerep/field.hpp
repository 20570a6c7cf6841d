#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace circlerep {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class FieldKind { gf2, gfp, rational };

struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    std::uint32_t p = 0; // modulus, meaningful only for gfp

    static FieldSpec gf2() { return {FieldKind::gf2, 2}; }

    static FieldSpec gfp(std::uint32_t prime) {
        if (prime == 2) return gf2();
        if (!is_prime(prime)) throw std::invalid_argument("gfp modulus must be prime");
        return {FieldKind::gfp, prime};
    }

    static FieldSpec rational() { return {FieldKind::rational, 0}; }

    // Accepts "gf2", "gf<p>", "rational".
    static FieldSpec parse(const std::string& name) {
        if (name == "rational" || name == "q") return rational();
        if (name.size() > 2 && name.compare(0, 2, "gf") == 0) {
            unsigned long v = 0;
            try {
                v = std::stoul(name.substr(2));
            } catch (const std::exception&) {
                throw std::invalid_argument("bad field name: " + name);
            }
            if (v < 2 || v > 0x7fffffffUL) throw std::invalid_argument("field modulus out of range: " + name);
            return v == 2 ? gf2() : gfp(static_cast<std::uint32_t>(v));
        }
        throw std::invalid_argument("bad field name: " + name);
    }

    std::string name() const {
        switch (kind) {
            case FieldKind::gf2: return "gf2";
            case FieldKind::gfp: return "gf" + std::to_string(p);
            default: return "rational";
        }
    }

    bool operator==(const FieldSpec& o) const { return kind == o.kind && (kind != FieldKind::gfp || p == o.p); }
    bool operator!=(const FieldSpec& o) const { return !(*this == o); }

    static bool is_prime(std::uint32_t m) {
        if (m < 2) return false;
        for (std::uint64_t d = 2; d * d <= m; ++d)
            if (m % d == 0) return false;
        return true;
    }
};

} // namespace circlerep
