// chc — hyper-chaotic image cipher tool.
//
// Subcommands: simulate, lyapunov, encrypt, decrypt, analyze, experiment.
// Key material defaults to the built-in reference values; key files and
// per-field flags override them (flags win over files).

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chc/analysis.hpp"
#include "chc/chaos.hpp"
#include "chc/cipher.hpp"
#include "chc/ecc.hpp"
#include "chc/errors.hpp"
#include "chc/image.hpp"
#include "chc/keyfile.hpp"
#include "chc/lyapunov.hpp"

namespace {

// ---- chaos key flags -----------------------------------------------------

struct ChaosOpts {
    CLI::App* cmd = nullptr;
    std::string key_file;
    double a = 0, b = 0, c = 0, e1 = 0, e2 = 0, k_fb = 0, m = 0;
    double x0 = 0, y0 = 0, z0 = 0, w0 = 0, dt = 0;
    std::uint64_t transient = 0;

    void attach(CLI::App* app) {
        cmd = app;
        app->add_option("--chaos-key", key_file, "chaos key file (name = value lines)")
            ->check(CLI::ExistingFile);
        app->add_option("--a", a, "flow parameter a");
        app->add_option("--b", b, "flow parameter b");
        app->add_option("--c", c, "flow parameter c");
        app->add_option("--e1", e1, "flow parameter e1");
        app->add_option("--e2", e2, "flow parameter e2");
        app->add_option("--k", k_fb, "feedback gain k");
        app->add_option("--m", m, "flow parameter m");
        app->add_option("--x0", x0, "initial x");
        app->add_option("--y0", y0, "initial y");
        app->add_option("--z0", z0, "initial z");
        app->add_option("--w0", w0, "initial w");
        app->add_option("--dt", dt, "integration step");
        app->add_option("--transient", transient, "settle-in steps discarded");
    }

    chc::ChaosKey resolve() const {
        chc::ChaosKey key = chc::default_chaos_key();
        if (!key_file.empty()) key = chc::load_chaos_key_file(key_file);
        auto set = [this](const char* flag) { return cmd->count(flag) > 0; };
        if (set("--a")) key.params.a = a;
        if (set("--b")) key.params.b = b;
        if (set("--c")) key.params.c = c;
        if (set("--e1")) key.params.e1 = e1;
        if (set("--e2")) key.params.e2 = e2;
        if (set("--k")) key.params.k_fb = k_fb;
        if (set("--m")) key.params.m = m;
        if (set("--x0")) key.initial.x = x0;
        if (set("--y0")) key.initial.y = y0;
        if (set("--z0")) key.initial.z = z0;
        if (set("--w0")) key.initial.w = w0;
        if (set("--dt")) key.dt = dt;
        if (set("--transient")) key.n_transient = transient;
        chc::validate_params(key.params);
        return key;
    }
};

// ---- ECC key flags ---------------------------------------------------------

struct EccOpts {
    CLI::App* cmd = nullptr;
    std::string key_file;
    std::uint64_t a = 0, b = 0, p = 0, y = 0, k = 0, gx = 0, gy = 0, pbx = 0, pby = 0;

    void attach(CLI::App* app) {
        cmd = app;
        app->add_option("--ecc-key", key_file, "ECC key file (name = value lines)")
            ->check(CLI::ExistingFile);
        app->add_option("--ecc-a", a, "curve coefficient a");
        app->add_option("--ecc-b", b, "curve coefficient b");
        app->add_option("--ecc-p", p, "prime modulus p");
        app->add_option("--gx", gx, "base point G.x");
        app->add_option("--gy", gy, "base point G.y");
        app->add_option("--ecc-y", y, "receiver private scalar y");
        app->add_option("--ecc-k", k, "sender ephemeral scalar k");
        app->add_option("--pbx", pbx, "receiver public point P_B.x");
        app->add_option("--pby", pby, "receiver public point P_B.y");
    }

    chc::EccKeyMaterial resolve() const {
        chc::EccKeyMaterial mat = chc::default_ecc_keys();
        if (!key_file.empty()) mat = chc::load_ecc_key_file(key_file);
        auto set = [this](const char* flag) { return cmd->count(flag) > 0; };
        const bool curve_touched = set("--ecc-a") || set("--ecc-b") || set("--ecc-p");
        std::uint64_t ca = set("--ecc-a") ? a : mat.curve.a;
        std::uint64_t cb = set("--ecc-b") ? b : mat.curve.b;
        std::uint64_t cp = set("--ecc-p") ? p : mat.curve.p;
        if (curve_touched) mat.curve = chc::validate_curve(ca, cb, cp);
        if (set("--gx")) mat.G.x = gx;
        if (set("--gy")) mat.G.y = gy;
        mat.G.infinity = false;
        if (set("--ecc-y")) mat.private_scalar = y;
        if (set("--ecc-k")) mat.ephemeral_k = k;
        if (set("--pbx") || set("--pby")) {
            mat.public_point.x = set("--pbx") ? pbx : mat.public_point.x;
            mat.public_point.y = set("--pby") ? pby : mat.public_point.y;
            mat.public_point.infinity = false;
        } else if (curve_touched || set("--gx") || set("--gy") || set("--ecc-y")) {
            // anything upstream of P_B changed: recompute it
            mat.public_point = chc::scalar_mul(mat.private_scalar, mat.G, mat.curve);
        }
        if (!chc::is_on_curve(mat.G, mat.curve))
            throw chc::InvalidParams("G is not on the curve");
        if (!chc::is_on_curve(mat.public_point, mat.curve))
            throw chc::InvalidParams("P_B is not on the curve");
        if (mat.private_scalar == 0 || mat.ephemeral_k == 0)
            throw chc::InvalidParams("y and k must be >= 1");
        return mat;
    }
};

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw chc::Error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw chc::Error("short write to " + path);
}

void print_per_channel(const char* name, const std::vector<double>& v) {
    for (std::size_t ch = 0; ch < v.size(); ++ch)
        std::printf("%s.ch%zu = %.4f\n", name, ch, v[ch]);
}

// ---- subcommand bodies -----------------------------------------------------

int run_simulate(const ChaosOpts& chaos, std::uint64_t steps, const std::string& out) {
    const chc::ChaosKey key = chaos.resolve();
    const chc::Trajectory tr =
        chc::simulate(key.initial, key.params, key.dt, steps, key.n_transient);
    write_text(out, chc::trajectory_csv(tr));
    return 0;
}

int run_lyapunov(const ChaosOpts& chaos, double t_total, int renorm_every,
                 double settle, double threshold, const std::string& series_csv,
                 std::uint64_t series_stride) {
    const chc::ChaosKey key = chaos.resolve();
    std::vector<chc::SpectrumSample> series;
    std::vector<chc::SpectrumSample>* sink = series_csv.empty() ? nullptr : &series;
    const chc::LyapunovSpectrum sp =
        chc::lyapunov_spectrum(key.params, key.initial, key.dt, t_total, renorm_every,
                               settle, sink, series_stride);
    if (!series_csv.empty()) {
        std::string csv = "t,le1,le2,le3,le4\n";
        char buf[160];
        for (const auto& s : series) {
            std::snprintf(buf, sizeof(buf), "%.6f,%.9f,%.9f,%.9f,%.9f\n", s.t, s.le[0],
                          s.le[1], s.le[2], s.le[3]);
            csv += buf;
        }
        write_text(series_csv, csv);
    }
    std::printf("le1 = %.6f\nle2 = %.6f\nle3 = %.6f\nle4 = %.6f\n", sp.le1, sp.le2,
                sp.le3, sp.le4);
    std::printf("sum = %.6f\n", sp.sum());
    std::printf("hyperchaotic = %s\n",
                chc::is_hyperchaotic(sp, threshold) ? "true" : "false");
    return 0;
}

int run_encrypt(const ChaosOpts& chaos, const EccOpts& ecc_opts,
                const std::string& in, const std::string& out,
                const std::string& raster_out) {
    const chc::ChaosKey key = chaos.resolve();
    const chc::EccKeyMaterial ecc = ecc_opts.resolve();
    const chc::RgbImage img = chc::load_ppm_file(in);
    const chc::CipherEnvelope env =
        chc::encrypt(img, key, ecc.curve, ecc.G, ecc.public_point, ecc.ephemeral_k);
    chc::write_envelope_file(env, out);
    if (!raster_out.empty()) {
        // the cipher bytes as a viewable image, e.g. for `analyze`
        chc::RgbImage raster = chc::make_image(env.width, env.height, env.channels);
        raster.data = env.cipher_bytes;
        chc::save_ppm_file(raster, raster_out);
    }
    std::printf("wrote = %s\n", out.c_str());
    std::printf("cipher_bytes = %zu\n", env.cipher_bytes.size());
    return 0;
}

int run_decrypt(const ChaosOpts& chaos, const EccOpts& ecc_opts,
                const std::string& in, const std::string& out) {
    const chc::ChaosKey key = chaos.resolve();
    const chc::EccKeyMaterial ecc = ecc_opts.resolve();
    const chc::CipherEnvelope env = chc::read_envelope_file(in);
    const chc::RgbImage img = chc::decrypt(env, key, ecc.private_scalar, ecc.curve, ecc.G);
    chc::save_ppm_file(img, out);
    std::printf("wrote = %s\n", out.c_str());
    return 0;
}

chc::Direction parse_direction(const std::string& s) {
    if (s == "horizontal" || s == "h") return chc::Direction::Horizontal;
    if (s == "vertical" || s == "v") return chc::Direction::Vertical;
    if (s == "diagonal" || s == "d") return chc::Direction::Diagonal;
    throw chc::InvalidParams("direction must be horizontal|vertical|diagonal");
}

int run_analyze(const std::string& in, const std::string& against,
                const std::string& hist_csv, const std::string& pairs_csv,
                const std::string& pairs_dir, std::uint32_t pairs_channel) {
    const chc::RgbImage img = chc::load_ppm_file(in);
    std::printf("width = %u\nheight = %u\nchannels = %u\n", img.width, img.height,
                img.channels);

    static const std::pair<const char*, chc::Direction> dirs[] = {
        {"horizontal", chc::Direction::Horizontal},
        {"vertical", chc::Direction::Vertical},
        {"diagonal", chc::Direction::Diagonal},
    };
    for (const auto& [name, dir] : dirs)
        for (std::uint32_t ch = 0; ch < img.channels; ++ch) {
            const auto r = chc::adjacent_correlation(img, dir, ch);
            if (r)
                std::printf("correlation.%s.ch%u = %.6f\n", name, ch, *r);
            else
                std::printf("correlation.%s.ch%u = undefined\n", name, ch);
        }

    const chc::ChannelHistogram hist = chc::histogram(img);
    for (std::uint32_t ch = 0; ch < img.channels; ++ch) {
        const chc::ChiSquare cs = chc::chi_square_uniform(hist.counts[ch]);
        std::printf("chi_square.ch%u = %.4f\n", ch, cs.statistic);
        std::printf("chi_square_p.ch%u = %.6f\n", ch, cs.p_value);
    }

    if (!hist_csv.empty()) {
        std::string csv = "value";
        for (std::uint32_t ch = 0; ch < img.channels; ++ch)
            csv += ",ch" + std::to_string(ch);
        csv += '\n';
        for (int v = 0; v < 256; ++v) {
            csv += std::to_string(v);
            for (std::uint32_t ch = 0; ch < img.channels; ++ch)
                csv += ',' + std::to_string(hist.counts[ch][v]);
            csv += '\n';
        }
        write_text(hist_csv, csv);
    }

    if (!pairs_csv.empty()) {
        const auto pairs =
            chc::adjacent_pairs(img, parse_direction(pairs_dir), pairs_channel);
        std::string csv = "v,neighbor\n";
        for (const auto& [x, y] : pairs)
            csv += std::to_string(+x) + ',' + std::to_string(+y) + '\n';
        write_text(pairs_csv, csv);
    }

    if (!against.empty()) {
        const chc::RgbImage other = chc::load_ppm_file(against);
        print_per_channel("npcr", chc::npcr(img, other));
        print_per_channel("uaci", chc::uaci(img, other));
    }
    return 0;
}

int run_experiment(const std::string& name, const ChaosOpts& chaos,
                   const EccOpts& ecc_opts, const std::string& in, double perturbation,
                   std::uint32_t row, std::uint32_t col, int delta, std::uint32_t trials,
                   std::uint32_t cut_x, std::uint32_t cut_y, std::uint32_t cut_w,
                   std::uint32_t cut_h) {
    const chc::ChaosKey key = chaos.resolve();
    const chc::EccKeyMaterial ecc = ecc_opts.resolve();
    const chc::RgbImage img = chc::load_ppm_file(in);

    if (name == "key-sensitivity") {
        const auto rep = chc::key_sensitivity_experiment(img, key, ecc, perturbation);
        std::printf("perturbation = %g\n", rep.perturbation);
        std::printf("roundtrip_exact = %s\n", rep.roundtrip_exact ? "true" : "false");
        print_per_channel("wrong_key_npcr", rep.wrong_key_npcr);
        return 0;
    }
    if (name == "data-loss") {
        const auto rep = chc::data_loss_experiment(img, key, ecc, cut_x, cut_y, cut_w, cut_h);
        std::printf("cut = %ux%u at (%u, %u)\n", rep.cut_w, rep.cut_h, rep.cut_col,
                    rep.cut_row);
        std::printf("corrupted_sample_fraction = %.6f\n", rep.corrupted_sample_fraction);
        std::printf("corrupted_pixel_fraction = %.6f\n", rep.corrupted_pixel_fraction);
        return 0;
    }
    if (name == "differential") {
        if (row == 0 || col == 0)
            throw chc::InvalidParams("differential: --row/--col are 1-based");
        std::vector<double> mean_npcr(img.channels, 0.0), mean_uaci(img.channels, 0.0);
        for (std::uint32_t t = 0; t < trials; ++t) {
            const std::uint32_t r = (row - 1 + 53u * t) % img.height;
            const std::uint32_t c = (col - 1 + 97u * t) % img.width;
            const auto rep = chc::differential_experiment(img, key, ecc, r, c, delta);
            for (std::uint32_t ch = 0; ch < img.channels; ++ch) {
                mean_npcr[ch] += rep.npcr[ch];
                mean_uaci[ch] += rep.uaci[ch];
            }
        }
        for (auto& v : mean_npcr) v /= trials;
        for (auto& v : mean_uaci) v /= trials;
        std::printf("trials = %u\n", trials);
        print_per_channel("npcr", mean_npcr);
        print_per_channel("uaci", mean_uaci);
        return 0;
    }
    throw chc::InvalidParams("unknown experiment '" + name +
                             "' (want key-sensitivity|data-loss|differential)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyper-chaotic image cipher with ECC masking"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "integrate the flow, dump CSV");
    ChaosOpts sim_chaos;
    sim_chaos.attach(sim);
    std::uint64_t sim_steps = 100000;
    std::string sim_out = "-";
    sim->add_option("--steps", sim_steps, "steps after the transient");
    sim->add_option("-o,--out", sim_out, "output file, - for stdout");

    // lyapunov
    auto* lya = app.add_subcommand("lyapunov", "Lyapunov spectrum of the flow");
    ChaosOpts lya_chaos;
    lya_chaos.attach(lya);
    double lya_t_total = 5000.0, lya_settle = 10.0, lya_threshold = 0.01;
    int lya_renorm = 10;
    std::string lya_series;
    std::uint64_t lya_stride = 100;
    lya->add_option("--t-total", lya_t_total, "integration time");
    lya->add_option("--renorm-every", lya_renorm, "steps between renormalizations");
    lya->add_option("--settle", lya_settle, "settle-in time discarded first");
    lya->add_option("--threshold", lya_threshold, "hyperchaos threshold");
    lya->add_option("--series-csv", lya_series, "write running estimates CSV");
    lya->add_option("--series-stride", lya_stride, "renormalizations per CSV row");

    // encrypt / decrypt
    auto* enc = app.add_subcommand("encrypt", "encrypt a PPM/PGM image");
    ChaosOpts enc_chaos;
    EccOpts enc_ecc;
    enc_chaos.attach(enc);
    enc_ecc.attach(enc);
    std::string enc_in, enc_out, enc_raster;
    enc->add_option("-i,--in", enc_in, "input image (P5/P6)")
        ->required()
        ->check(CLI::ExistingFile);
    enc->add_option("-o,--out", enc_out, "output envelope")->required();
    enc->add_option("--raster-out", enc_raster,
                    "also save the cipher raster as an image");

    auto* dec = app.add_subcommand("decrypt", "decrypt an envelope");
    ChaosOpts dec_chaos;
    EccOpts dec_ecc;
    dec_chaos.attach(dec);
    dec_ecc.attach(dec);
    std::string dec_in, dec_out;
    dec->add_option("-i,--in", dec_in, "input envelope")
        ->required()
        ->check(CLI::ExistingFile);
    dec->add_option("-o,--out", dec_out, "output image")->required();

    // analyze
    auto* ana = app.add_subcommand("analyze", "histograms, correlations, chi-square");
    std::string ana_in, ana_against, ana_hist, ana_pairs, ana_pairs_dir = "horizontal";
    std::uint32_t ana_pairs_ch = 0;
    ana->add_option("-i,--in", ana_in, "image to analyze")
        ->required()
        ->check(CLI::ExistingFile);
    ana->add_option("--against", ana_against, "second image for NPCR/UACI")
        ->check(CLI::ExistingFile);
    ana->add_option("--histogram-csv", ana_hist, "write per-channel histogram CSV");
    ana->add_option("--pairs-csv", ana_pairs, "write adjacent pixel pairs CSV");
    ana->add_option("--pairs-direction", ana_pairs_dir, "horizontal|vertical|diagonal");
    ana->add_option("--pairs-channel", ana_pairs_ch, "channel for --pairs-csv");

    // experiment
    auto* exp = app.add_subcommand("experiment", "canned security experiments");
    ChaosOpts exp_chaos;
    EccOpts exp_ecc;
    exp_chaos.attach(exp);
    exp_ecc.attach(exp);
    std::string exp_name, exp_in;
    double exp_perturbation = 1e-15;
    std::uint32_t exp_row = 100, exp_col = 100, exp_trials = 1;
    int exp_delta = 1;
    std::uint32_t cut_x = 0, cut_y = 0, cut_w = 50, cut_h = 50;
    exp->add_option("name", exp_name, "key-sensitivity|data-loss|differential")
        ->required();
    exp->add_option("-i,--in", exp_in, "image to run on")
        ->required()
        ->check(CLI::ExistingFile);
    exp->add_option("--perturbation", exp_perturbation, "y0 offset for the wrong key");
    exp->add_option("--row", exp_row, "pixel row, 1-based (differential)");
    exp->add_option("--col", exp_col, "pixel column, 1-based (differential)");
    exp->add_option("--delta", exp_delta, "pixel value change (differential)");
    exp->add_option("--trials", exp_trials, "trials to average (differential)")
        ->check(CLI::PositiveNumber);
    exp->add_option("--cut-x", cut_x, "cut block left column (data-loss)");
    exp->add_option("--cut-y", cut_y, "cut block top row (data-loss)");
    exp->add_option("--cut-w", cut_w, "cut block width (data-loss)");
    exp->add_option("--cut-h", cut_h, "cut block height (data-loss)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(sim_chaos, sim_steps, sim_out);
        if (lya->parsed())
            return run_lyapunov(lya_chaos, lya_t_total, lya_renorm, lya_settle,
                                lya_threshold, lya_series, lya_stride);
        if (enc->parsed())
            return run_encrypt(enc_chaos, enc_ecc, enc_in, enc_out, enc_raster);
        if (dec->parsed()) return run_decrypt(dec_chaos, dec_ecc, dec_in, dec_out);
        if (ana->parsed())
            return run_analyze(ana_in, ana_against, ana_hist, ana_pairs, ana_pairs_dir,
                               ana_pairs_ch);
        if (exp->parsed())
            return run_experiment(exp_name, exp_chaos, exp_ecc, exp_in, exp_perturbation,
                                  exp_row, exp_col, exp_delta, exp_trials, cut_x, cut_y,
                                  cut_w, cut_h);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
