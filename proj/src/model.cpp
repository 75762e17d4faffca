#include "frisk/model.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "frisk/quadrature.hpp"
#include "frisk/specialfn.hpp"

namespace frisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void require_positive_finite(double v, const std::string& field) {
    if (!std::isfinite(v) || v <= 0.0)
        throw ValidationError(field, field + " must be positive and finite, got " + num(v));
}

// Distribution of an independent sum, described by per-component CDF/density
// callables; convolutions are evaluated recursively with adaptive quadrature.
struct SumDist {
    std::vector<std::function<double(double)>> cdf;
    std::vector<std::function<double(double)>> pdf;

    double density(std::size_t k, double y) const {
        if (y < 0.0) return 0.0;
        if (k == 0) return pdf[0](y);
        if (y == 0.0) return 0.0;
        return integrate_ts(
            [&](double t) { return density(k - 1, t) * pdf[k](y - t); }, 0.0, y,
            1e-10);
    }
    double cdf_upto(std::size_t k, double y) const {
        if (y <= 0.0) return 0.0;
        if (k == 0) return cdf[0](y);
        return integrate_ts(
            [&](double t) { return density(k - 1, t) * cdf[k](y - t); }, 0.0, y,
            1e-10);
    }
};

SumDist claim_dist(const ModelSpec& spec) {
    SumDist d;
    for (const auto& g : spec.claim_gammas) {
        d.cdf.push_back([g](double y) { return reg_lower_gamma(g.shape, g.rate * y); });
        d.pdf.push_back([g](double y) { return gamma_density(g.shape, g.rate, y); });
    }
    return d;
}

SumDist interarrival_dist(const ModelSpec& spec) {
    SumDist d;
    for (const auto& g : spec.interarrival_gammas) {
        d.cdf.push_back([g](double t) { return reg_lower_gamma(g.shape, g.rate * t); });
        d.pdf.push_back([g](double t) { return gamma_density(g.shape, g.rate, t); });
    }
    for (const auto& m : spec.interarrival_mls) {
        MlDistParams p{m.mu, m.rate};
        d.cdf.push_back([p](double t) { return ml_cdf(p, t); });
        d.pdf.push_back([p](double t) { return t <= 0.0 ? 0.0 : ml_density(p, t); });
    }
    return d;
}

void check_known_keys(const nlohmann::json& j, const char* where,
                      std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known)
            throw ValidationError(std::string(where) + "." + it.key(),
                                  "unknown field '" + it.key() + "' in " + where);
    }
}

double get_number(const nlohmann::json& j, const char* where, const char* key) {
    if (!j.contains(key))
        throw ValidationError(std::string(where) + "." + key,
                              std::string("missing field '") + key + "' in " + where);
    const auto& v = j.at(key);
    if (!v.is_number())
        throw ValidationError(std::string(where) + "." + key,
                              std::string("field '") + key + "' in " + where +
                                  " must be a number");
    return v.get<double>();
}

}  // namespace

ModelSpec validate(const ModelSpec& raw) {
    ModelSpec s = raw;
    require_positive_finite(s.premium_rate, "premium_rate");
    if (s.interarrival_gammas.empty() && s.interarrival_mls.empty())
        throw ValidationError("interarrival",
                              "at least one inter-arrival component is required");
    if (s.claim_gammas.empty())
        throw ValidationError("claims.gammas", "at least one claim component is required");
    for (std::size_t i = 0; i < s.interarrival_gammas.size(); ++i) {
        require_positive_finite(s.interarrival_gammas[i].shape,
                                "interarrival.gammas[" + std::to_string(i) + "].shape");
        require_positive_finite(s.interarrival_gammas[i].rate,
                                "interarrival.gammas[" + std::to_string(i) + "].rate");
    }
    for (std::size_t i = 0; i < s.interarrival_mls.size(); ++i) {
        std::string base = "interarrival.mittag_lefflers[" + std::to_string(i) + "]";
        double mu = s.interarrival_mls[i].mu;
        if (!std::isfinite(mu) || mu <= 0.0 || mu > 1.0)
            throw ValidationError(base + ".mu",
                                  base + ".mu must lie in (0, 1], got " + num(mu));
        require_positive_finite(s.interarrival_mls[i].rate, base + ".rate");
    }
    for (std::size_t i = 0; i < s.claim_gammas.size(); ++i) {
        require_positive_finite(s.claim_gammas[i].shape,
                                "claims.gammas[" + std::to_string(i) + "].shape");
        require_positive_finite(s.claim_gammas[i].rate,
                                "claims.gammas[" + std::to_string(i) + "].rate");
    }
    // Merge inter-arrival Gamma components with (numerically) equal rates.
    std::vector<GammaComponent> merged;
    for (const auto& g : s.interarrival_gammas) {
        bool done = false;
        for (auto& m : merged) {
            if (std::abs(m.rate - g.rate) <=
                1e-12 * std::max({1.0, std::abs(m.rate), std::abs(g.rate)})) {
                m.shape += g.shape;
                done = true;
                break;
            }
        }
        if (!done) merged.push_back(g);
    }
    s.interarrival_gammas = merged;

    double et = interarrival_mean(s);
    if (std::isfinite(et)) {
        double ex = claim_mean(s);
        double income = s.premium_rate * et;
        if (!(income > ex))
            throw ValidationError(
                "net_profit", "net profit condition violated: premium_rate * E[T] = " +
                                  num(income) + " must exceed E[X] = " + num(ex));
    }
    return s;
}

double interarrival_mean(const ModelSpec& spec) {
    double et = 0.0;
    for (const auto& g : spec.interarrival_gammas) et += g.shape / g.rate;
    for (const auto& m : spec.interarrival_mls) {
        if (m.mu < 1.0) return kInf;
        et += 1.0 / m.rate;
    }
    return et;
}

double claim_mean(const ModelSpec& spec) {
    double ex = 0.0;
    for (const auto& g : spec.claim_gammas) ex += g.shape / g.rate;
    return ex;
}

double claim_cdf(const ModelSpec& spec, double y) {
    if (!std::isfinite(y)) throw DomainError("claim_cdf: non-finite y");
    if (y <= 0.0) return 0.0;
    SumDist d = claim_dist(spec);
    double v = d.cdf_upto(d.cdf.size() - 1, y);
    return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

double claim_density(const ModelSpec& spec, double y) {
    if (!std::isfinite(y)) throw DomainError("claim_density: non-finite y");
    if (y < 0.0) return 0.0;
    SumDist d = claim_dist(spec);
    return d.density(d.pdf.size() - 1, y);
}

double interarrival_density(const ModelSpec& spec, double t) {
    if (!std::isfinite(t)) throw DomainError("interarrival_density: non-finite t");
    if (t < 0.0) return 0.0;
    SumDist d = interarrival_dist(spec);
    return d.density(d.pdf.size() - 1, t);
}

ModelSpec parse_model_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("json", std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("json", "top level must be an object");
    check_known_keys(j, "spec", {"premium_rate", "interarrival", "claims"});
    ModelSpec s;
    s.premium_rate = get_number(j, "spec", "premium_rate");
    if (!j.contains("interarrival"))
        throw ValidationError("interarrival", "missing field 'interarrival'");
    if (!j.contains("claims")) throw ValidationError("claims", "missing field 'claims'");
    const auto& ia = j.at("interarrival");
    check_known_keys(ia, "interarrival", {"gammas", "mittag_lefflers"});
    if (ia.contains("gammas")) {
        if (!ia.at("gammas").is_array())
            throw ValidationError("interarrival.gammas", "'gammas' must be an array");
        for (const auto& g : ia.at("gammas")) {
            check_known_keys(g, "interarrival.gammas[]", {"shape", "rate"});
            s.interarrival_gammas.push_back({get_number(g, "interarrival.gammas[]", "shape"),
                                             get_number(g, "interarrival.gammas[]", "rate")});
        }
    }
    if (ia.contains("mittag_lefflers")) {
        if (!ia.at("mittag_lefflers").is_array())
            throw ValidationError("interarrival.mittag_lefflers",
                                  "'mittag_lefflers' must be an array");
        for (const auto& m : ia.at("mittag_lefflers")) {
            check_known_keys(m, "interarrival.mittag_lefflers[]", {"mu", "rate"});
            s.interarrival_mls.push_back(
                {get_number(m, "interarrival.mittag_lefflers[]", "mu"),
                 get_number(m, "interarrival.mittag_lefflers[]", "rate")});
        }
    }
    const auto& cl = j.at("claims");
    check_known_keys(cl, "claims", {"gammas"});
    if (cl.contains("gammas")) {
        if (!cl.at("gammas").is_array())
            throw ValidationError("claims.gammas", "'gammas' must be an array");
        for (const auto& g : cl.at("gammas")) {
            check_known_keys(g, "claims.gammas[]", {"shape", "rate"});
            s.claim_gammas.push_back({get_number(g, "claims.gammas[]", "shape"),
                                      get_number(g, "claims.gammas[]", "rate")});
        }
    }
    return s;
}

std::string model_to_json(const ModelSpec& spec) {
    nlohmann::json j;
    j["premium_rate"] = spec.premium_rate;
    j["interarrival"]["gammas"] = nlohmann::json::array();
    for (const auto& g : spec.interarrival_gammas)
        j["interarrival"]["gammas"].push_back({{"shape", g.shape}, {"rate", g.rate}});
    j["interarrival"]["mittag_lefflers"] = nlohmann::json::array();
    for (const auto& m : spec.interarrival_mls)
        j["interarrival"]["mittag_lefflers"].push_back({{"mu", m.mu}, {"rate", m.rate}});
    j["claims"]["gammas"] = nlohmann::json::array();
    for (const auto& g : spec.claim_gammas)
        j["claims"]["gammas"].push_back({{"shape", g.shape}, {"rate", g.rate}});
    return j.dump(2);
}

}  // namespace frisk
