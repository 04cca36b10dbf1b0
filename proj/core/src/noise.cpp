#include "lspec/noise.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lspec/rng.hpp"

namespace lspec {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
} // namespace

std::string to_string(DistributionKind d) {
    switch (d) {
        case DistributionKind::ComplexGaussian: return "complex-gaussian";
        case DistributionKind::RealGaussian: return "real-gaussian";
        case DistributionKind::Rademacher: return "rademacher";
    }
    return "?";
}

DistributionKind distribution_from_string(const std::string& s) {
    if (s == "complex-gaussian") return DistributionKind::ComplexGaussian;
    if (s == "real-gaussian") return DistributionKind::RealGaussian;
    if (s == "rademacher") return DistributionKind::Rademacher;
    throw ConfigError("unknown distribution: " + s);
}

void SimulationConfig::validate() const {
    if (n < 1) throw ConfigError("n must be >= 1");
    if (T < 1) throw ConfigError("T must be >= 1");
    if (tau < 0) throw ConfigError("tau must be >= 0");
    if (tau >= T) throw ConfigError("tau must be < T");
}

NoisePanel sample_panel(const SimulationConfig& config, DistributionKind dist,
                        std::uint64_t seed) {
    config.validate();
    NoisePanel p;
    p.config = config;
    p.dist = dist;
    p.seed = seed;
    p.rows = config.n;
    p.cols = config.T + config.tau;
    p.data.resize(std::size_t(p.rows) * p.cols);

    const CounterRng rng(seed, rngtag::kNoise);
    for (int t = 0; t < p.cols; ++t) {
        cplx* col = &p.data[std::size_t(t) * p.rows];
        switch (dist) {
            case DistributionKind::ComplexGaussian:
                for (int i = 0; i < p.rows; ++i) {
                    const auto [x, y] = rng.normal2(std::uint32_t(t), std::uint32_t(i));
                    col[i] = cplx(x * kInvSqrt2, y * kInvSqrt2);
                }
                break;
            case DistributionKind::RealGaussian:
                for (int i = 0; i < p.rows; ++i) {
                    const auto [x, y] = rng.normal2(std::uint32_t(t), std::uint32_t(i));
                    (void)y;
                    col[i] = cplx(x, 0.0);
                }
                break;
            case DistributionKind::Rademacher:
                for (int i = 0; i < p.rows; ++i)
                    col[i] = cplx(rng.sign(std::uint32_t(t), std::uint32_t(i)), 0.0);
                break;
        }
    }
    return p;
}

double truncated_mean(DistributionKind dist, double C) {
    (void)dist;
    if (C <= 0.0) throw ConfigError("truncation point must be > 0");
    // all built-ins are symmetric about 0, so the truncated mean vanishes
    return 0.0;
}

double truncated_sigma(DistributionKind dist, double C) {
    if (C <= 0.0) throw ConfigError("truncation point must be > 0");
    double var = 0.0;
    switch (dist) {
        case DistributionKind::RealGaussian:
            // E[X^2 1{|X|<=C}] = erf(C/sqrt(2)) - C sqrt(2/pi) exp(-C^2/2)
            var = std::erf(C * kInvSqrt2) -
                  C * std::sqrt(2.0 / M_PI) * std::exp(-0.5 * C * C);
            break;
        case DistributionKind::ComplexGaussian:
            // |eps|^2 ~ Exp(1): E[|eps|^2 1{|eps|<=C}] = 1 - (1+C^2) e^{-C^2}
            var = 1.0 - (1.0 + C * C) * std::exp(-C * C);
            break;
        case DistributionKind::Rademacher:
            var = C >= 1.0 ? 1.0 : 0.0;
            break;
    }
    return std::sqrt(var);
}

NoisePanel preprocess(const NoisePanel& panel, double C) {
    const double mu = truncated_mean(panel.dist, C);
    const double sigma = truncated_sigma(panel.dist, C);
    if (sigma == 0.0)
        throw DegenerateTruncationError(
            "truncation at C=" + fmt17(C) + " leaves zero variance for " +
            to_string(panel.dist));
    NoisePanel out = panel;
    const double inv = 1.0 / sigma;
    for (auto& v : out.data) {
        const cplx kept = std::abs(v) <= C ? v : cplx(0.0, 0.0);
        v = (kept - cplx(mu, 0.0)) * inv;
    }
    return out;
}

void write_panel_csv(const NoisePanel& panel, std::ostream& os) {
    os << "{\"n\": " << panel.config.n << ", \"T\": " << panel.config.T
       << ", \"tau\": " << panel.config.tau << ", \"dist\": \""
       << to_string(panel.dist) << "\", \"seed\": " << panel.seed << "}\n";
    for (int i = 0; i < panel.rows; ++i) {
        for (int t = 0; t < panel.cols; ++t) {
            const cplx& v = panel.at(i, t);
            if (t) os << ',';
            os << '"' << fmt17(v.real()) << ',' << fmt17(v.imag()) << '"';
        }
        os << '\n';
    }
}

NoisePanel read_panel_csv(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw IoError("panel csv: missing header");

    auto grab = [&header](const std::string& key) -> std::string {
        const auto kpos = header.find("\"" + key + "\"");
        if (kpos == std::string::npos) throw IoError("panel csv: header lacks " + key);
        auto p = header.find(':', kpos);
        if (p == std::string::npos) throw IoError("panel csv: malformed header");
        ++p;
        while (p < header.size() && (header[p] == ' ' || header[p] == '"')) ++p;
        auto e = p;
        while (e < header.size() && header[e] != ',' && header[e] != '}' && header[e] != '"') ++e;
        return header.substr(p, e - p);
    };

    NoisePanel p;
    p.config.n = std::stoi(grab("n"));
    p.config.T = std::stoi(grab("T"));
    p.config.tau = std::stoi(grab("tau"));
    p.dist = distribution_from_string(grab("dist"));
    p.seed = std::stoull(grab("seed"));
    p.config.validate();
    p.rows = p.config.n;
    p.cols = p.config.T + p.config.tau;
    p.data.resize(std::size_t(p.rows) * p.cols);

    std::string line;
    for (int i = 0; i < p.rows; ++i) {
        if (!std::getline(is, line)) throw IoError("panel csv: truncated body");
        std::size_t pos = 0;
        for (int t = 0; t < p.cols; ++t) {
            const auto open = line.find('"', pos);
            const auto close = line.find('"', open + 1);
            if (open == std::string::npos || close == std::string::npos)
                throw IoError("panel csv: malformed row");
            const std::string cell = line.substr(open + 1, close - open - 1);
            const auto comma = cell.find(',');
            if (comma == std::string::npos) throw IoError("panel csv: malformed cell");
            p.at(i, t) = cplx(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
            pos = close + 1;
        }
    }
    return p;
}

} // namespace lspec
