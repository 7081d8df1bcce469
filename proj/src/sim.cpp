#include "gfdm/sim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "gfdm/analysis.hpp"
#include "gfdm/csv.hpp"
#include "gfdm/kernels.hpp"

namespace gfdm {

namespace {

struct BlockOutcome {
    RVec error_power;  // length D, |d_hat - d|^2
    long symbol_errors = 0;
    double inv_c2_sum = 0.0;  // sum over bins of 1/|C_l|^2 (DFE-Rayleigh)
};

struct ScenarioContext {
    ScenarioConfig cfg;
    CharacteristicMatrix G;
    bool cmcm = false;
    bool invertible = false;
    bool pseudo = false;  // ZF falls back to the Hadamard pseudo-inverse
    ChannelRealization fixed_channel;  // AWGN or the static multipath channel
    bool draw_channel = false;         // Rayleigh scenarios
    bool dfe = false;
    PowerDelayProfile pdp;
    CVec ones;
};

bool is_zf(Scenario s) {
    return s == Scenario::ZfAwgn || s == Scenario::ZfDfeRayleigh || s == Scenario::ZfStaticMp;
}

ScenarioContext make_context(const ScenarioConfig& cfg) {
    ScenarioContext ctx;
    ctx.cfg = cfg;
    const int D = cfg.params.block_size();
    if (ctx.cfg.cp_len < 0) ctx.cfg.cp_len = D / 4;
    if (cfg.blocks < 1) throw std::invalid_argument("run_scenario: blocks must be >= 1");
    if (cfg.snr_db.empty()) throw std::invalid_argument("run_scenario: empty SNR grid");
    if (cfg.threads < 1) throw std::invalid_argument("run_scenario: threads must be >= 1");

    switch (cfg.scenario) {
        case Scenario::ZfAwgn:
        case Scenario::MmseAwgn:
            ctx.fixed_channel = ChannelRealization::from_taps(CVec::Ones(1), D);
            break;
        case Scenario::ZfStaticMp:
            ctx.fixed_channel = builtin_static_channel(D);
            break;
        case Scenario::ZfDfeRayleigh:
            ctx.draw_channel = true;
            ctx.dfe = true;
            break;
        case Scenario::MmseRayleigh:
        case Scenario::AmmseRayleigh:
            ctx.draw_channel = true;
            break;
    }
    if (ctx.draw_channel) {
        ctx.pdp = cfg.pdp == PdpKind::ExpDecay ? PowerDelayProfile::exponential(D)
                                               : PowerDelayProfile::pedestrian();
    }

    const ChannelRealization* csi =
        cfg.scenario == Scenario::ZfStaticMp && cfg.filter.kind == FilterKind::StaticOptimal
            ? &ctx.fixed_channel
            : nullptr;
    if (cfg.filter.kind == FilterKind::StaticOptimal && !csi) {
        throw std::invalid_argument("run_scenario: the CSI-optimal filter requires the static multipath scenario");
    }
    ctx.G = make_filter(cfg.filter, cfg.params, csi);
    ctx.cmcm = is_cmcm(ctx.G, Tolerance{1e-9, 1e-12});
    ctx.invertible = is_invertible(ctx.G);
    ctx.pseudo = is_zf(cfg.scenario) && !ctx.invertible;
    ctx.ones = CVec::Ones(D);
    return ctx;
}

BlockOutcome run_block(const ScenarioContext& ctx, double gamma, double n0, CounterRng& rng) {
    const ScenarioConfig& cfg = ctx.cfg;
    const int D = cfg.params.block_size();
    const int bps = bits_per_symbol(cfg.constellation);

    std::vector<std::uint8_t> bits(static_cast<std::size_t>(D) * bps);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next_u64() & 1);
    CVec d = qam_map(bits, cfg.constellation) * std::sqrt(cfg.symbol_energy);
    GfdmFrame frame = GfdmFrame::full(cfg.params, d, ctx.cfg.cp_len);

    BlockOutcome out;
    ChannelRealization drawn;
    const ChannelRealization* ch = &ctx.fixed_channel;
    if (ctx.draw_channel) {
        drawn = ctx.dfe ? sample_dfe_rayleigh(ctx.pdp, D, cfg.dfe_threshold_db, rng)
                        : sample_rayleigh(ctx.pdp, D, rng);
        ch = &drawn;
        if (ctx.dfe) {
            for (int l = 0; l < D; ++l) out.inv_c2_sum += 1.0 / std::norm(ch->freq_response[l]);
        }
    }

    CVec x = tx_form1(frame, ctx.G);
    CVec y = apply_channel(x, *ch, n0, rng);

    RxReport report;
    switch (cfg.scenario) {
        case Scenario::ZfAwgn:
        case Scenario::ZfDfeRayleigh:
        case Scenario::ZfStaticMp:
            report = rx_zf_form2(y, ctx.G, ch->freq_response, Tolerance{}, ctx.pseudo);
            break;
        case Scenario::MmseAwgn:
            report = rx_mmse_lowcomp(y, ctx.G, ch->freq_response, gamma, cfg.symbol_energy);
            break;
        case Scenario::MmseRayleigh:
            report = ctx.cmcm ? rx_mmse_lowcomp(y, ctx.G, ch->freq_response, gamma, cfg.symbol_energy)
                              : rx_mmse_dense(y, ctx.G, ch->freq_response, gamma, cfg.symbol_energy);
            break;
        case Scenario::AmmseRayleigh:
            report = rx_ammse(y, ctx.G, ch->freq_response, gamma, cfg.symbol_energy);
            if (!report.error_variances) {
                report.error_variances =
                    rx_mmse_dense(y, ctx.G, ch->freq_response, gamma, cfg.symbol_energy).error_variances;
            }
            break;
    }

    out.error_power.resize(D);
    kernels::abs2(out.error_power.data(), CVec(report.estimates - d).data(), D);

    // Hard decisions; MMSE estimates are unbiased by 1 - sigma^2/Es first.
    CVec detected = report.estimates;
    if (!is_zf(cfg.scenario) && report.error_variances) {
        const RMat& var = *report.error_variances;
        const int K = cfg.params.subcarriers;
        for (int i = 0; i < D; ++i) {
            double b = 1.0 - var(i % K, i / K) / cfg.symbol_energy;
            if (b > 1e-12) detected[i] /= b;
        }
    }
    double scale = 1.0 / std::sqrt(cfg.symbol_energy);
    Eigen::VectorXi tx_idx = qam_hard_indices(d * scale, cfg.constellation);
    Eigen::VectorXi rx_idx = qam_hard_indices(detected * scale, cfg.constellation);
    for (int i = 0; i < D; ++i) out.symbol_errors += tx_idx[i] != rx_idx[i];
    return out;
}

double theoretical_for(const ScenarioContext& ctx, double gamma, double n0, double beta_estimate) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    switch (ctx.cfg.scenario) {
        case Scenario::ZfAwgn:
            return ctx.invertible ? zf_awgn_mse(ctx.G, n0) : nan;
        case Scenario::MmseAwgn:
            return mmse_awgn_mse(ctx.G, gamma, ctx.cfg.symbol_energy);
        case Scenario::ZfStaticMp:
            return ctx.invertible ? zf_static_mse(ctx.G, ctx.fixed_channel, n0) : nan;
        case Scenario::ZfDfeRayleigh:
            return ctx.invertible && std::isfinite(beta_estimate)
                       ? zf_statistical_mse(ctx.G, beta_estimate, n0)
                       : nan;
        case Scenario::MmseRayleigh:
            if (ctx.cmcm) {
                McEstimate ref = mmse_fading_mse_reference(ctx.pdp, gamma, energy(ctx.G), 200000,
                                                           ctx.cfg.seed ^ 0x68796d31ULL,
                                                           ctx.cfg.symbol_energy);
                return ref.mean;
            }
            return nan;
        case Scenario::AmmseRayleigh:
            return nan;
    }
    return nan;
}

}  // namespace

ResultTable run_scenario(const ScenarioConfig& cfg) {
    ScenarioContext ctx = make_context(cfg);
    const int D = cfg.params.block_size();
    const int K = cfg.params.subcarriers;
    const long blocks = ctx.cfg.blocks;

    ResultTable table;
    table.used_pseudo_inverse = ctx.pseudo;

    double beta_acc = 0.0;
    long beta_rows = 0;

    for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
        const double gamma = std::pow(10.0, cfg.snr_db[s] / 10.0);
        const double n0 = cfg.symbol_energy / gamma;

        std::vector<RVec> errors(blocks);
        std::vector<long> sym_errors(blocks, 0);
        std::vector<double> inv_c2(blocks, 0.0);

        auto worker = [&](long lo, long hi) {
            for (long b = lo; b < hi; ++b) {
                CounterRng rng(cfg.seed, static_cast<std::uint64_t>(s) * blocks + b);
                BlockOutcome o = run_block(ctx, gamma, n0, rng);
                errors[b] = std::move(o.error_power);
                sym_errors[b] = o.symbol_errors;
                inv_c2[b] = o.inv_c2_sum;
            }
        };
        const int nthreads = std::min<long>(ctx.cfg.threads, blocks);
        if (nthreads <= 1) {
            worker(0, blocks);
        } else {
            std::vector<std::thread> pool;
            long chunk = (blocks + nthreads - 1) / nthreads;
            for (int t = 0; t < nthreads; ++t) {
                long lo = t * chunk, hi = std::min<long>(blocks, lo + chunk);
                if (lo < hi) pool.emplace_back(worker, lo, hi);
            }
            for (auto& th : pool) th.join();
        }

        // Fixed-order reduction keeps results identical across thread counts.
        RVec acc = RVec::Zero(D);
        long total_errors = 0;
        double inv_c2_total = 0.0;
        for (long b = 0; b < blocks; ++b) {
            acc += errors[b];
            total_errors += sym_errors[b];
            inv_c2_total += inv_c2[b];
        }

        ResultRow row;
        row.snr_db = cfg.snr_db[s];
        row.mse_per_symbol.resize(K, cfg.params.subsymbols);
        for (int i = 0; i < D; ++i) row.mse_per_symbol(i % K, i / K) = acc[i] / blocks;
        row.mse = acc.sum() / (static_cast<double>(blocks) * D);
        row.ser = static_cast<double>(total_errors) / (static_cast<double>(blocks) * D);

        double beta_row = ctx.dfe ? inv_c2_total / (static_cast<double>(blocks) * D)
                                   : std::numeric_limits<double>::quiet_NaN();
        if (ctx.dfe) {
            beta_acc += beta_row;
            ++beta_rows;
        }
        row.theoretical_mse = theoretical_for(ctx, gamma, n0, beta_row);
        table.rows.push_back(std::move(row));
    }
    if (beta_rows > 0) table.beta_estimate = beta_acc / beta_rows;
    return table;
}

double uniformity_spread(const RMat& mse_per_symbol) {
    double mean = mse_per_symbol.mean();
    if (mean <= 0.0) throw std::invalid_argument("uniformity_spread: nonpositive mean");
    return ((mse_per_symbol.array() - mean).abs() / mean).maxCoeff();
}

void write_result_csv(std::ostream& out, const ScenarioConfig& cfg, const ResultTable& table,
                      bool per_symbol_columns) {
    csv::Writer w(out);
    w.meta("tool", "gfdmsim");
    w.meta("version", kVersion);
    w.meta("scenario", std::string(scenario_name(cfg.scenario)));
    w.meta("K", std::to_string(cfg.params.subcarriers));
    w.meta("M", std::to_string(cfg.params.subsymbols));
    w.meta("filter", std::string(filter_kind_name(cfg.filter.kind)));
    if (cfg.filter.kind == FilterKind::RaisedCosine || cfg.filter.kind == FilterKind::RootRaisedCosine) {
        w.meta("rolloff", csv::Writer::num(cfg.filter.rolloff));
    }
    w.meta("constellation", cfg.constellation == Constellation::Qam16 ? "16qam" : "4qam");
    w.meta("blocks", std::to_string(cfg.blocks));
    w.meta("cp_len", std::to_string(cfg.cp_len < 0 ? cfg.params.block_size() / 4 : cfg.cp_len));
    w.meta("seed", std::to_string(cfg.seed));
    if (cfg.scenario == Scenario::ZfDfeRayleigh || cfg.scenario == Scenario::MmseRayleigh ||
        cfg.scenario == Scenario::AmmseRayleigh) {
        w.meta("pdp", std::string(pdp_name(cfg.pdp)));
    }
    if (table.used_pseudo_inverse) w.meta("zf_pseudo_inverse", "1");
    if (std::isfinite(table.beta_estimate)) w.meta("beta_estimate", csv::Writer::num(table.beta_estimate));

    std::vector<std::string> cols = {"snr_db", "empirical_mse", "empirical_ser", "theoretical_mse"};
    if (per_symbol_columns) {
        for (int m = 0; m < cfg.params.subsymbols; ++m)
            for (int k = 0; k < cfg.params.subcarriers; ++k)
                cols.push_back("mse_k" + std::to_string(k) + "_m" + std::to_string(m));
    }
    w.header(cols);
    for (const auto& row : table.rows) {
        std::vector<std::string> cells = {csv::Writer::num(row.snr_db), csv::Writer::num(row.mse),
                                          csv::Writer::num(row.ser),
                                          csv::Writer::num(row.theoretical_mse)};
        if (per_symbol_columns) {
            for (int m = 0; m < cfg.params.subsymbols; ++m)
                for (int k = 0; k < cfg.params.subcarriers; ++k)
                    cells.push_back(csv::Writer::num(row.mse_per_symbol(k, m)));
        }
        w.row(cells);
    }
}

std::string_view scenario_name(Scenario s) {
    switch (s) {
        case Scenario::ZfDfeRayleigh: return "zf_dfe_rayleigh";
        case Scenario::MmseRayleigh: return "mmse_rayleigh";
        case Scenario::AmmseRayleigh: return "ammse_rayleigh";
        case Scenario::ZfAwgn: return "zf_awgn";
        case Scenario::MmseAwgn: return "mmse_awgn";
        case Scenario::ZfStaticMp: return "zf_static_mp";
    }
    throw std::invalid_argument("scenario_name: unknown scenario");
}

Scenario scenario_from_name(std::string_view name) {
    if (name == "zf_dfe_rayleigh") return Scenario::ZfDfeRayleigh;
    if (name == "mmse_rayleigh") return Scenario::MmseRayleigh;
    if (name == "ammse_rayleigh") return Scenario::AmmseRayleigh;
    if (name == "zf_awgn") return Scenario::ZfAwgn;
    if (name == "mmse_awgn") return Scenario::MmseAwgn;
    if (name == "zf_static_mp") return Scenario::ZfStaticMp;
    throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string_view pdp_name(PdpKind p) { return p == PdpKind::ExpDecay ? "exp" : "epa"; }

PdpKind pdp_from_name(std::string_view name) {
    if (name == "exp") return PdpKind::ExpDecay;
    if (name == "epa") return PdpKind::Pedestrian;
    throw std::invalid_argument("unknown power delay profile '" + std::string(name) + "'");
}

std::string_view filter_kind_name(FilterKind k) {
    switch (k) {
        case FilterKind::RaisedCosine: return "rc";
        case FilterKind::RootRaisedCosine: return "rrc";
        case FilterKind::Dirichlet: return "dirichlet";
        case FilterKind::ModifiedDirichlet: return "modified_dirichlet";
        case FilterKind::Cmcm: return "cmcm";
        case FilterKind::Rectangular: return "rect";
        case FilterKind::StaticOptimal: return "static_optimal";
    }
    throw std::invalid_argument("filter_kind_name: unknown kind");
}

FilterKind filter_kind_from_name(std::string_view name) {
    if (name == "rc") return FilterKind::RaisedCosine;
    if (name == "rrc") return FilterKind::RootRaisedCosine;
    if (name == "dirichlet") return FilterKind::Dirichlet;
    if (name == "modified_dirichlet") return FilterKind::ModifiedDirichlet;
    if (name == "cmcm") return FilterKind::Cmcm;
    if (name == "rect") return FilterKind::Rectangular;
    if (name == "static_optimal") return FilterKind::StaticOptimal;
    throw std::invalid_argument("unknown filter kind '" + std::string(name) + "'");
}

}  // namespace gfdm
