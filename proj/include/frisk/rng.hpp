#pragma once

#include <cmath>
#include <cstdint>

#include "frisk/errors.hpp"
#include "frisk/specialfn.hpp"

namespace frisk {

// 64-bit finalizer (splitmix64). Bijective; decorrelates consecutive counters.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Counter-based stream: output(i) = mix64(key + i * golden). Streams with the
// same seed but different stream ids are independent; a stream's sequence is a
// pure function of (seed, stream, draw index), so parallel consumers drawing
// from their own streams are reproducible regardless of scheduling.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(mix64(seed + 0x9e3779b97f4a7c15ULL) ^
                     mix64(stream * 0xda942042e4dd58b5ULL + 0x2545f4914f6cdd1dULL))) {}

    std::uint64_t next_u64() { return mix64(key_ + (++ctr_) * 0x9e3779b97f4a7c15ULL); }

    // Uniform on the open interval (0, 1); never returns 0 or 1.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double next_exp(double rate) { return -std::log(next_double()) / rate; }

    double next_normal() {
        double u1 = next_double(), u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Marsaglia-Tsang squeeze method; shape < 1 via the boost
    // Gamma(shape) = Gamma(shape + 1) * U^{1/shape}.
    double next_gamma(double shape, double rate) {
        if (!(shape > 0.0) || !(rate > 0.0))
            throw DomainError("next_gamma: requires shape > 0 and rate > 0");
        if (shape < 1.0)
            return next_gamma(shape + 1.0, rate) * std::pow(next_double(), 1.0 / shape);
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x = next_normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            double u = next_double();
            double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
        }
    }

    // Mittag-Leffler ML(mu, rate): T = -ln(U) * (B/rate)^{1/mu} with
    // B = sin(mu pi (1-V)) / sin(mu pi V); exact Exp(rate) at mu = 1.
    double next_ml(double mu, double rate) {
        if (!(mu > 0.0) || mu > 1.0 || !(rate > 0.0))
            throw DomainError("next_ml: requires 0 < mu <= 1 and rate > 0");
        if (mu == 1.0) return next_exp(rate);
        double u = next_double(), v = next_double();
        double b = sinpi(mu * (1.0 - v)) / sinpi(mu * v);
        return -std::log(u) * std::pow(b / rate, 1.0 / mu);
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace frisk
