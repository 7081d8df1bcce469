#ifndef GFDM_SIM_HPP
#define GFDM_SIM_HPP

#include <cstdint>
#include <limits>
#include <ostream>
#include <string_view>
#include <vector>

#include "gfdm/filters.hpp"
#include "gfdm/modem.hpp"
#include "gfdm/qam.hpp"

namespace gfdm {

inline constexpr const char* kVersion = "0.1.0";

/// Receiver/channel combinations of the Monte-Carlo study.
enum class Scenario {
    ZfDfeRayleigh,   // ZF over deep-fade-excluded Rayleigh fading
    MmseRayleigh,    // MMSE over Rayleigh fading
    AmmseRayleigh,   // approximated MMSE over Rayleigh fading
    ZfAwgn,          // ZF over AWGN
    MmseAwgn,        // MMSE over AWGN
    ZfStaticMp,      // ZF over the fixed four-tap multipath channel
};

enum class PdpKind { ExpDecay, Pedestrian };

struct ScenarioConfig {
    Scenario scenario = Scenario::ZfAwgn;
    GfdmParams params{8, 4};
    FilterSpec filter;
    Constellation constellation = Constellation::Qam16;
    std::vector<double> snr_db;
    int blocks = 10000;
    int cp_len = -1;  // -1 -> D/4
    std::uint64_t seed = 1;
    PdpKind pdp = PdpKind::ExpDecay;
    double dfe_threshold_db = -30.0;
    int threads = 1;
    double symbol_energy = 1.0;
};

struct ResultRow {
    double snr_db = 0.0;
    double mse = 0.0;
    double ser = 0.0;
    double theoretical_mse = std::numeric_limits<double>::quiet_NaN();
    RMat mse_per_symbol;  // K x M
};

struct ResultTable {
    std::vector<ResultRow> rows;
    bool used_pseudo_inverse = false;
    double beta_estimate = std::numeric_limits<double>::quiet_NaN();  // DFE-Rayleigh only
};

/// Runs the configured scenario: per SNR point, `blocks` independent blocks
/// of i.i.d. QAM symbols through transmitter, channel and receiver, with
/// per-(k,m) error-power accumulation and hard-decision SER (MMSE estimates
/// are unbiased before slicing). Deterministic for a fixed seed regardless of
/// the thread count; block results are reduced in block order.
ResultTable run_scenario(const ScenarioConfig& cfg);

/// Worst relative deviation of the per-(k,m) MSE matrix from its mean:
/// max_{k,m} |sigma^2_{k,m} - mean| / mean.
double uniformity_spread(const RMat& mse_per_symbol);

void write_result_csv(std::ostream& out, const ScenarioConfig& cfg, const ResultTable& table,
                      bool per_symbol_columns = false);

std::string_view scenario_name(Scenario s);
Scenario scenario_from_name(std::string_view name);
std::string_view pdp_name(PdpKind p);
PdpKind pdp_from_name(std::string_view name);
std::string_view filter_kind_name(FilterKind k);
FilterKind filter_kind_from_name(std::string_view name);

}  // namespace gfdm

#endif
