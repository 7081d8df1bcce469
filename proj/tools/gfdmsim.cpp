// Command-line front end: Monte-Carlo scenario runs, spectrum/OOB analysis,
// PAPR, arithmetic-complexity tables and filter/channel CSV export.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gfdm/analysis.hpp"
#include "gfdm/csv.hpp"
#include "gfdm/sim.hpp"

namespace {

using namespace gfdm;

std::vector<double> parse_snr_grid(const std::string& text) {
    std::vector<double> out;
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        double start, step, stop;
        char c1, c2;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0) {
            throw std::invalid_argument("snr_db range must be start:step:stop");
        }
        for (double v = start; v <= stop + 1e-9; v += step) out.push_back(v);
        return out;
    }
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stod(tok));
    }
    if (out.empty()) throw std::invalid_argument("snr_db list is empty");
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

FilterSpec make_filter_spec(const std::string& kind, double rolloff, const std::string& phase_set,
                            double target_energy, const GfdmParams& params) {
    FilterSpec spec;
    spec.kind = filter_kind_from_name(kind);
    spec.rolloff = rolloff;
    spec.target_energy = target_energy;
    if (spec.kind == FilterKind::Cmcm || spec.kind == FilterKind::StaticOptimal) {
        if (phase_set.empty()) {
            throw std::invalid_argument("filter '" + kind + "' requires phase_set");
        }
        spec.phases = builtin_phase_set(phase_set);
        if (spec.phases.rows() != params.subcarriers || spec.phases.cols() != params.subsymbols) {
            throw std::invalid_argument("phase set '" + phase_set + "' does not match K x M");
        }
    }
    return spec;
}

ScenarioConfig config_from_kv(const std::map<std::string, std::string>& kv) {
    auto get = [&](const std::string& key, const std::string& def) {
        auto it = kv.find(key);
        return it == kv.end() ? def : it->second;
    };
    for (const auto& [key, _] : kv) {
        static const std::vector<std::string> known = {
            "scenario", "K", "M", "filter", "rolloff", "phase_set", "target_energy",
            "constellation", "snr_db", "blocks", "cp_len", "seed", "pdp",
            "dfe_threshold_db", "threads"};
        bool ok = false;
        for (const auto& k : known) ok = ok || k == key;
        if (!ok) throw std::invalid_argument("unknown config key '" + key + "'");
    }
    ScenarioConfig cfg;
    cfg.scenario = scenario_from_name(get("scenario", "zf_awgn"));
    cfg.params = GfdmParams(std::stoi(get("K", "8")), std::stoi(get("M", "4")));
    cfg.filter = make_filter_spec(get("filter", "dirichlet"), std::stod(get("rolloff", "0")),
                                  get("phase_set", ""), std::stod(get("target_energy", "1")), cfg.params);
    std::string cons = get("constellation", "16qam");
    if (cons == "16qam") cfg.constellation = Constellation::Qam16;
    else if (cons == "4qam") cfg.constellation = Constellation::Qam4;
    else throw std::invalid_argument("constellation must be 16qam or 4qam");
    cfg.snr_db = parse_snr_grid(get("snr_db", "0:5:30"));
    cfg.blocks = std::stoi(get("blocks", "10000"));
    cfg.cp_len = std::stoi(get("cp_len", "-1"));
    cfg.seed = std::stoull(get("seed", "1"));
    cfg.pdp = pdp_from_name(get("pdp", "exp"));
    cfg.dfe_threshold_db = std::stod(get("dfe_threshold_db", "-30"));
    cfg.threads = std::stoi(get("threads", "1"));
    return cfg;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    return out;
}

std::vector<int> full_set(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

std::vector<int> parse_index_set(const std::string& text, int n) {
    if (text.empty() || text == "all") return full_set(n);
    // comma-separated entries, each "a" or "a-b" inclusive
    std::vector<int> out;
    std::istringstream is(text);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto dash = tok.find('-');
        int lo, hi;
        if (dash == std::string::npos) {
            lo = hi = std::stoi(tok);
        } else {
            lo = std::stoi(tok.substr(0, dash));
            hi = std::stoi(tok.substr(dash + 1));
        }
        for (int i = lo; i <= hi; ++i) out.push_back(i);
    }
    for (int i : out)
        if (i < 0 || i >= n) throw std::invalid_argument("index " + std::to_string(i) + " out of range");
    return out;
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& overrides,
                 const std::string& out_path, bool per_symbol) {
    auto kv = config_path.empty() ? std::map<std::string, std::string>{} : read_config_file(config_path);
    for (const auto& item : overrides) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("override must be key=value: " + item);
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    ScenarioConfig cfg = config_from_kv(kv);
    ResultTable table = run_scenario(cfg);
    if (out_path.empty()) {
        write_result_csv(std::cout, cfg, table, per_symbol);
    } else {
        auto out = open_out(out_path);
        write_result_csv(out, cfg, table, per_symbol);
    }
    return 0;
}

struct PsdArgs {
    int K = 128, M = 15, cp = 16;
    std::string filter = "dirichlet";
    double rolloff = 0.5;
    std::string phase_set;
    std::string kset = "all", mset = "all";
    int points = 16;
    double span = 0.0;  // subcarrier spacings; 0 -> (1+interp rolloff)*K/2
    double sample_rate = 1.92e6;
    double interp_rolloff = 0.1;
};

SpectrumGrid compute_psd(const PsdArgs& a) {
    GfdmParams params(a.K, a.M);
    FilterSpec spec = make_filter_spec(a.filter, a.rolloff, a.phase_set, 1.0, params);
    PrototypeFilter g = time_from_char(make_filter(spec, params));
    double span = a.span > 0.0 ? a.span : 0.5 * (1.0 + a.interp_rolloff) * a.K;
    RVec grid = uniform_grid(a.K, a.sample_rate, a.points, span);
    InterpolationFilter interp{a.interp_rolloff};
    return psd(g, parse_index_set(a.kset, a.K), parse_index_set(a.mset, a.M), a.cp, a.sample_rate, interp,
               grid);
}

int cmd_psd(const PsdArgs& a, const std::string& out_path) {
    SpectrumGrid s = compute_psd(a);
    auto write = [&](std::ostream& out) {
        csv::Writer w(out);
        w.meta("tool", "gfdmsim psd");
        w.meta("K", std::to_string(a.K));
        w.meta("M", std::to_string(a.M));
        w.meta("filter", a.filter);
        w.meta("cp_len", std::to_string(a.cp));
        w.meta("sample_rate", csv::Writer::num(a.sample_rate));
        w.header({"freq_hz", "psd"});
        for (int i = 0; i < s.frequencies.size(); ++i) {
            w.row({csv::Writer::num(s.frequencies[i]), csv::Writer::num(s.psd[i])});
        }
    };
    if (out_path.empty()) write(std::cout);
    else {
        auto out = open_out(out_path);
        write(out);
    }
    return 0;
}

int cmd_oob(int ngc, double rc_rolloff, double interp_rolloff, const std::string& out_path) {
    std::vector<OobTableRow> rows = oob_comparison_table(ngc, rc_rolloff, interp_rolloff);
    auto write = [&](std::ostream& out) {
        csv::Writer w(out);
        w.meta("tool", "gfdmsim oob");
        w.meta("guard_carriers", std::to_string(ngc));
        w.meta("rc_rolloff", csv::Writer::num(rc_rolloff));
        w.meta("interp_rolloff", csv::Writer::num(interp_rolloff));
        w.header({"system", "filter", "oob_db"});
        for (const auto& r : rows) w.row({r.system, r.filter, csv::Writer::fixed(r.oob_db, 1)});
    };
    if (out_path.empty()) write(std::cout);
    else {
        auto out = open_out(out_path);
        write(out);
    }
    return 0;
}

int cmd_papr(int K, int M, const std::string& filter, double rolloff, const std::string& phase_set,
             int blocks, std::uint64_t seed, int cp_len, const std::string& thresholds,
             const std::string& out_path) {
    GfdmParams params(K, M);
    FilterSpec spec = make_filter_spec(filter, rolloff, phase_set, 1.0, params);
    CharacteristicMatrix G = make_filter(spec, params);
    if (cp_len < 0) cp_len = params.block_size() / 4;

    std::vector<double> papr_db(blocks);
    for (int b = 0; b < blocks; ++b) {
        CounterRng rng(seed, b);
        const int D = params.block_size();
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(D) * 4);
        for (auto& bit : bits) bit = static_cast<std::uint8_t>(rng.next_u64() & 1);
        GfdmFrame frame = GfdmFrame::full(params, qam_map(bits, Constellation::Qam16), cp_len);
        CVec x = add_cp(tx_form1(frame, G), cp_len);
        papr_db[b] = 10.0 * std::log10(papr(x));
    }
    RVec th;
    if (thresholds.empty()) {
        th.resize(61);
        for (int i = 0; i <= 60; ++i) th[i] = 0.2 * i;  // 0..12 dB
    } else {
        std::vector<double> v = parse_snr_grid(thresholds);
        th = Eigen::Map<const RVec>(v.data(), v.size());
    }
    RVec ccdf = papr_ccdf(papr_db, th);

    auto write = [&](std::ostream& out) {
        csv::Writer w(out);
        w.meta("tool", "gfdmsim papr");
        w.meta("K", std::to_string(K));
        w.meta("M", std::to_string(M));
        w.meta("filter", filter);
        w.meta("blocks", std::to_string(blocks));
        w.meta("seed", std::to_string(seed));
        w.header({"papr_db", "ccdf"});
        for (int i = 0; i < th.size(); ++i) w.row({csv::Writer::num(th[i]), csv::Writer::num(ccdf[i])});
    };
    if (out_path.empty()) write(std::cout);
    else {
        auto out = open_out(out_path);
        write(out);
    }
    return 0;
}

int cmd_complexity(int K, int M, int lt, int lr, const std::string& out_path) {
    auto write = [&](std::ostream& out) {
        csv::Writer w(out);
        w.meta("tool", "gfdmsim complexity");
        w.meta("K", std::to_string(K));
        w.meta("M", std::to_string(M));
        w.meta("L_T", std::to_string(lt));
        w.meta("L_R", std::to_string(lr));
        w.header({"implementation", "transmitter", "zf_receiver", "mmse_receiver"});
        for (auto impl : {TransceiverImpl::Ofdm, TransceiverImpl::Direct, TransceiverImpl::FreqDomain,
                          TransceiverImpl::FreqConvolution, TransceiverImpl::BlockCirculant,
                          TransceiverImpl::BlockCirculantPow2, TransceiverImpl::ZakDomain,
                          TransceiverImpl::LuDecomposition, TransceiverImpl::Form1,
                          TransceiverImpl::Form2}) {
            auto cell = [&](TransceiverStage st) {
                auto v = complexity_cm(impl, st, K, M, lt, lr);
                return v ? csv::Writer::num(*v) : std::string("n/a");
            };
            w.row({std::string(transceiver_impl_name(impl)), cell(TransceiverStage::Transmitter),
                   cell(TransceiverStage::ZfReceiver), cell(TransceiverStage::MmseReceiver)});
        }
    };
    if (out_path.empty()) write(std::cout);
    else {
        auto out = open_out(out_path);
        write(out);
    }
    return 0;
}

int cmd_filter_export(int K, int M, const std::string& kind, double rolloff, const std::string& phase_set,
                      double target_energy, const std::string& out_path) {
    GfdmParams params(K, M);
    FilterSpec spec = make_filter_spec(kind, rolloff, phase_set, target_energy, params);
    const ChannelRealization csi = builtin_static_channel(params.block_size());
    CharacteristicMatrix G =
        make_filter(spec, params, spec.kind == FilterKind::StaticOptimal ? &csi : nullptr);
    PrototypeFilter g = time_from_char(G);
    std::vector<std::string> meta = {"tool=gfdmsim filter export", "K=" + std::to_string(K),
                                     "M=" + std::to_string(M), "kind=" + kind};
    if (out_path.empty()) {
        csv::write_complex_vector(std::cout, g.taps, meta);
    } else {
        auto out = open_out(out_path);
        csv::write_complex_vector(out, g.taps, meta);
    }
    return 0;
}

int cmd_channel_export(const std::string& type, int D, std::uint64_t seed, const std::string& pdp_name_s,
                       double threshold_db, const std::string& out_path) {
    ChannelRealization ch;
    if (type == "static4") {
        ch = builtin_static_channel(D);
    } else {
        PowerDelayProfile pdp = pdp_from_name(pdp_name_s) == PdpKind::ExpDecay
                                    ? PowerDelayProfile::exponential(D)
                                    : PowerDelayProfile::pedestrian();
        CounterRng rng(seed, 0);
        ch = type == "dfe_rayleigh" ? sample_dfe_rayleigh(pdp, D, threshold_db, rng)
                                    : sample_rayleigh(pdp, D, rng);
    }
    std::vector<std::string> meta = {"tool=gfdmsim channel export", "type=" + type,
                                     "D=" + std::to_string(D), "seed=" + std::to_string(seed)};
    if (out_path.empty()) {
        csv::write_complex_vector(std::cout, ch.taps, meta);
    } else {
        auto out = open_out(out_path);
        csv::write_complex_vector(out, ch.taps, meta);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GFDM waveform toolkit: transceiver simulation and spectral analysis"};
    app.require_subcommand(1);

    // simulate
    std::string sim_config, sim_out;
    std::vector<std::string> sim_overrides;
    bool sim_per_symbol = false;
    auto* sim = app.add_subcommand("simulate", "Monte-Carlo MSE/SER scenario run");
    sim->add_option("config", sim_config, "key=value config file");
    sim->add_option("--set", sim_overrides, "override config entries (key=value)");
    sim->add_option("--out", sim_out, "output CSV path (default stdout)");
    sim->add_flag("--per-symbol", sim_per_symbol, "emit per-(k,m) MSE columns");

    // psd
    PsdArgs pa;
    std::string psd_out;
    auto* psd_cmd = app.add_subcommand("psd", "analytic power spectral density");
    psd_cmd->add_option("--K", pa.K);
    psd_cmd->add_option("--M", pa.M);
    psd_cmd->add_option("--cp", pa.cp);
    psd_cmd->add_option("--filter", pa.filter);
    psd_cmd->add_option("--rolloff", pa.rolloff);
    psd_cmd->add_option("--phase-set", pa.phase_set);
    psd_cmd->add_option("--kset", pa.kset, "subcarriers, e.g. 0-49,79-127");
    psd_cmd->add_option("--mset", pa.mset, "subsymbols, e.g. 1-14");
    psd_cmd->add_option("--points", pa.points, "grid points per subcarrier spacing");
    psd_cmd->add_option("--span", pa.span, "half-span in subcarrier spacings");
    psd_cmd->add_option("--sample-rate", pa.sample_rate);
    psd_cmd->add_option("--interp-rolloff", pa.interp_rolloff);
    psd_cmd->add_option("--out", psd_out);

    // oob
    int oob_ngc = 1;
    double oob_rc = 0.5, oob_interp = 0.1;
    std::string oob_out;
    auto* oob = app.add_subcommand("oob", "out-of-band leakage comparison table");
    oob->add_option("--ngc", oob_ngc, "guard subcarriers between bands");
    oob->add_option("--rc-rolloff", oob_rc);
    oob->add_option("--interp-rolloff", oob_interp);
    oob->add_option("--out", oob_out);

    // papr
    int papr_K = 32, papr_M = 16, papr_blocks = 2000, papr_cp = -1;
    std::string papr_filter = "dirichlet", papr_phase, papr_thresholds, papr_out;
    double papr_rolloff = 0.7;
    std::uint64_t papr_seed = 1;
    auto* papr_cmd = app.add_subcommand("papr", "peak-to-average power ratio CCDF");
    papr_cmd->add_option("--K", papr_K);
    papr_cmd->add_option("--M", papr_M);
    papr_cmd->add_option("--filter", papr_filter);
    papr_cmd->add_option("--rolloff", papr_rolloff);
    papr_cmd->add_option("--phase-set", papr_phase);
    papr_cmd->add_option("--blocks", papr_blocks);
    papr_cmd->add_option("--seed", papr_seed);
    papr_cmd->add_option("--cp", papr_cp);
    papr_cmd->add_option("--thresholds", papr_thresholds, "dB list or start:step:stop");
    papr_cmd->add_option("--out", papr_out);

    // complexity
    int cx_K = 64, cx_M = 16, cx_lt = 2, cx_lr = 16;
    std::string cx_out;
    auto* cx = app.add_subcommand("complexity", "complex-multiplication counts per implementation");
    cx->add_option("--K", cx_K);
    cx->add_option("--M", cx_M);
    cx->add_option("--LT", cx_lt);
    cx->add_option("--LR", cx_lr);
    cx->add_option("--out", cx_out);

    // filter export
    auto* filter_cmd = app.add_subcommand("filter", "prototype filter utilities");
    int f_K = 8, f_M = 4;
    std::string f_kind = "dirichlet", f_phase, f_out;
    double f_rolloff = 0.7, f_energy = 1.0;
    auto* fexp = filter_cmd->add_subcommand("export", "write time-domain taps as CSV");
    fexp->add_option("--K", f_K);
    fexp->add_option("--M", f_M);
    fexp->add_option("--kind", f_kind);
    fexp->add_option("--rolloff", f_rolloff);
    fexp->add_option("--phase-set", f_phase);
    fexp->add_option("--energy", f_energy);
    fexp->add_option("--out", f_out);

    // channel export
    auto* chan_cmd = app.add_subcommand("channel", "channel realization utilities");
    std::string c_type = "static4", c_pdp = "exp", c_out;
    int c_D = 32;
    std::uint64_t c_seed = 1;
    double c_threshold = -30.0;
    auto* cexp = chan_cmd->add_subcommand("export", "write channel taps as CSV");
    cexp->add_option("--type", c_type, "static4 | rayleigh | dfe_rayleigh");
    cexp->add_option("--D", c_D);
    cexp->add_option("--seed", c_seed);
    cexp->add_option("--pdp", c_pdp);
    cexp->add_option("--threshold-db", c_threshold);
    cexp->add_option("--out", c_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_config, sim_overrides, sim_out, sim_per_symbol);
        if (psd_cmd->parsed()) return cmd_psd(pa, psd_out);
        if (oob->parsed()) return cmd_oob(oob_ngc, oob_rc, oob_interp, oob_out);
        if (papr_cmd->parsed())
            return cmd_papr(papr_K, papr_M, papr_filter, papr_rolloff, papr_phase, papr_blocks, papr_seed,
                            papr_cp, papr_thresholds, papr_out);
        if (cx->parsed()) return cmd_complexity(cx_K, cx_M, cx_lt, cx_lr, cx_out);
        if (filter_cmd->parsed()) {
            if (fexp->parsed())
                return cmd_filter_export(f_K, f_M, f_kind, f_rolloff, f_phase, f_energy, f_out);
            std::cerr << "filter: missing subcommand (export)\n";
            return 2;
        }
        if (chan_cmd->parsed()) {
            if (cexp->parsed()) return cmd_channel_export(c_type, c_D, c_seed, c_pdp, c_threshold, c_out);
            std::cerr << "channel: missing subcommand (export)\n";
            return 2;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
