#pragma once

#include <string>
#include <vector>

#include "frisk/errors.hpp"

namespace frisk {

struct GammaComponent {
    double shape = 1.0;
    double rate = 1.0;
};

struct MlComponent {
    double mu = 1.0;   // in (0, 1]
    double rate = 1.0;
};

// Renewal risk model: inter-arrival time = independent sum of Gamma and
// Mittag-Leffler components, claim size = independent sum of Gamma components,
// constant premium rate.
struct ModelSpec {
    std::vector<GammaComponent> interarrival_gammas;
    std::vector<MlComponent> interarrival_mls;
    std::vector<GammaComponent> claim_gammas;
    double premium_rate = 0.0;
};

// Checks positivity/range of every field, requires at least one inter-arrival
// and one claim component, merges equal-rate inter-arrival Gamma components
// (summing shapes), and enforces the strict net-profit condition whenever the
// inter-arrival mean is finite. Returns the canonical spec.
ModelSpec validate(const ModelSpec& raw);

// Mean inter-arrival time; +inf when any ML component has mu < 1.
double interarrival_mean(const ModelSpec& spec);
double claim_mean(const ModelSpec& spec);

// CDF / density of the claim-size distribution. Multi-component sums are
// evaluated by adaptive-quadrature convolution (documented tolerance 1e-8).
double claim_cdf(const ModelSpec& spec, double y);
double claim_density(const ModelSpec& spec, double y);

// Density of the inter-arrival distribution (same convolution approach).
double interarrival_density(const ModelSpec& spec, double t);

// JSON I/O. parse_model_json rejects unknown fields at every level and does
// not validate values (call validate separately).
ModelSpec parse_model_json(const std::string& text);
std::string model_to_json(const ModelSpec& spec);

}  // namespace frisk
