// Command-line front end: exact pattern counting, entropy, boundary
// complexity, realization, planar strip studies and the surface-correction
// convergence tables, driven by a JSON system config.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mislab/boundary.hpp"
#include "mislab/config.hpp"
#include "mislab/report.hpp"
#include "mislab/sft2d.hpp"
#include "mislab/surface.hpp"

namespace {

using namespace mislab;

struct Ctx {
    std::string config_path;
    std::string out_path = "-";
    std::string format_override;
    std::string prec_override;
    bool unsafe_budgets = false;

    RunConfig cfg;

    void load() {
        if (config_path.empty()) fail(errc::parse_error, "--config is required");
        cfg = parse_config(config_path);
        if (!format_override.empty()) {
            if (format_override != "csv" && format_override != "json")
                fail(errc::parse_error, "--format must be csv or json");
            cfg.format = format_override;
        }
        if (!prec_override.empty()) {
            if (prec_override == "auto")
                cfg.precision = PrecPolicy::automatic();
            else
                cfg.precision = PrecPolicy::fixed(
                    static_cast<mpfr_prec_t>(parse_nat(prec_override).get_si()));
        }
    }

    const MisSpec& mis() const {
        if (cfg.kind != RunConfig::SystemKind::Mis || !cfg.mis)
            fail(errc::invalid_spec, "this command needs a 'mis' system config");
        return *cfg.mis;
    }

    const Sft2dSpec& sft() const {
        if (cfg.kind != RunConfig::SystemKind::Sft2d || !cfg.sft)
            fail(errc::invalid_spec, "this command needs an 'sft2d' system config");
        return *cfg.sft;
    }

    mpfr_prec_t prec_or(mpfr_prec_t fallback) const {
        return cfg.precision.auto_prec ? fallback : cfg.precision.bits;
    }

    bool json_mode() const { return cfg.format == "json"; }

    void emit_out(const std::string& content) const { emit(out_path, content); }
};

std::vector<Nat> parse_nat_list(const std::string& s) {
    std::vector<Nat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_nat(item));
    if (out.empty()) fail(errc::parse_error, "empty list: '" + s + "'");
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    for (const auto& n : parse_nat_list(s)) out.push_back(n.get_si());
    return out;
}

// accepts "a/b", plain integers and simple decimals like "0.6"
Rat parse_rat_flexible(const std::string& s) {
    if (s.find('/') != std::string::npos) return parse_rat(s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return parse_rat(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_digits = s.size() - dot - 1;
    Rat q(parse_nat(digits));
    for (std::size_t i = 0; i < frac_digits; ++i) q /= 10;
    return q;
}

std::string json_error(const Error& e) {
    json j;
    j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    return j.dump(2) + "\n";
}

// ---- subcommand bodies ----

void run_count(const Ctx& ctx, const std::string& box_arg, bool with_hist) {
    const MisSpec& mis = ctx.mis();
    Box box = Box::of(parse_nat_list(box_arg));
    double budget = ctx.unsafe_budgets ? 1e9 : 1e7;
    Nat count = pattern_count_exact(mis, box, budget);
    auto hist_json = [](const ChainHistogram& h) {
        json out = json::object();
        for (const auto& [l, c] : h.counts) out[std::to_string(l)] = c.get_str();
        return out;
    };
    if (ctx.json_mode()) {
        json j;
        j["box"] = json::array();
        for (const auto& n : box.sides) j["box"].push_back(n.get_str());
        j["count"] = count.get_str();
        if (with_hist) {
            j["hist_J"] = hist_json(hist_J(box, mis.p));
            j["hist_K"] = hist_json(hist_K(box, mis.p));
        }
        ctx.emit_out(j.dump(2) + "\n");
    } else {
        CsvWriter w;
        if (with_hist) {
            auto flat = [](const ChainHistogram& h) {
                std::string out;
                for (const auto& [l, c] : h.counts) {
                    if (!out.empty()) out += ';';
                    out += std::to_string(l) + ":" + c.get_str();
                }
                return out;
            };
            w.header({"count", "hist_J", "hist_K"});
            w.row({count.get_str(), flat(hist_J(box, mis.p)), flat(hist_K(box, mis.p))});
        } else {
            w.header({"count"});
            w.row({count.get_str()});
        }
        ctx.emit_out(w.buffer);
    }
}

void run_entropy(const Ctx& ctx, double tol) {
    BallReal h = mis_entropy(ctx.mis(), tol);
    if (ctx.json_mode()) {
        json j;
        j["entropy"] = fmt_mid(h);
        j["radius"] = fmt_rad(h);
        ctx.emit_out(j.dump(2) + "\n");
    } else {
        CsvWriter w;
        w.header({"entropy", "radius"});
        w.row({fmt_mid(h), fmt_rad(h)});
        ctx.emit_out(w.buffer);
    }
}

void run_boundary(const Ctx& ctx, const std::string& tau_arg, const std::string& m_arg,
                  const std::string& slopes_arg) {
    const MisSpec& mis = ctx.mis();
    Rat tau = parse_rat_flexible(tau_arg);
    mpfr_prec_t prec = ctx.prec_or(256);
    BallReal formula = h_boundary(mis, tau, prec);
    long level = tau == 0 ? 0 : classify_level(tau, mis.p.product());

    std::optional<BallReal> empirical;
    std::vector<Nat> sides;
    if (!m_arg.empty()) {
        sides = parse_nat_list(m_arg);
        if (sides.size() == 1 && mis.dim() > 1) sides.assign(mis.dim(), sides[0]);
        SpeedSpec speed = slopes_arg.empty()
                              ? distribute_slopes(mis, tau)
                              : [&] {
                                    std::vector<Rat> sl;
                                    std::stringstream ss(slopes_arg);
                                    std::string item;
                                    while (std::getline(ss, item, ','))
                                        sl.push_back(parse_rat_flexible(item));
                                    return SpeedSpec::of(sl);
                                }();
        empirical = empirical_h_boundary(mis, Box::of(sides), speed, prec);
    }

    if (ctx.json_mode()) {
        json j;
        j["tau"] = tau.get_str();
        j["level"] = level;
        j["h_formula"] = fmt_mid(formula);
        if (empirical) {
            j["m"] = json::array();
            for (const auto& n : sides) j["m"].push_back(n.get_str());
            j["empirical"] = fmt_mid(*empirical);
            j["abs_diff"] = fmt_mid(empirical->sub(formula).abs_enclosure());
        }
        ctx.emit_out(j.dump(2) + "\n");
    } else {
        CsvWriter w;
        if (empirical) {
            w.header({"tau", "level", "h_formula", "m", "empirical", "abs_diff"});
            std::string mstr;
            for (std::size_t i = 0; i < sides.size(); ++i)
                mstr += (i ? "x" : "") + sides[i].get_str();
            w.row({tau.get_str(), std::to_string(level), fmt_mid(formula), mstr,
                   fmt_mid(*empirical), fmt_mid(empirical->sub(formula).abs_enclosure())});
        } else {
            w.header({"tau", "level", "h_formula"});
            w.row({tau.get_str(), std::to_string(level), fmt_mid(formula)});
        }
        ctx.emit_out(w.buffer);
    }
}

void run_realize(const Ctx& ctx, const std::string& target_arg) {
    const MisSpec& mis = ctx.mis();
    mpfr_prec_t prec = ctx.prec_or(256);
    BallReal target = BallReal::from_decimal(target_arg, prec);
    RealizationResult res = realize(mis, target, prec);
    BallReal err = res.achieved_h.sub(target).abs_enclosure();
    std::string tau_str = res.tau_zero ? "0" : fmt_mid(res.tau);
    if (ctx.json_mode()) {
        json j;
        j["target_h"] = target_arg;
        j["level_k"] = res.tau_zero ? json("inf") : json(res.level_k);
        j["tau"] = tau_str;
        if (res.tau_is_exact) j["tau_exact"] = res.tau_exact.get_str();
        j["achieved_h"] = fmt_mid(res.achieved_h);
        j["abs_err"] = fmt_mid(err);
        ctx.emit_out(j.dump(2) + "\n");
    } else {
        CsvWriter w;
        w.header({"target_h", "level_k", "tau", "achieved_h", "abs_err"});
        w.row({target_arg, res.tau_zero ? "inf" : std::to_string(res.level_k), tau_str,
               fmt_mid(res.achieved_h), fmt_mid(err)});
        ctx.emit_out(w.buffer);
    }
}

void run_sft2d(const Ctx& ctx, const std::vector<long>& strip, const std::string& mix_t,
               long mix_i, const std::vector<long>& frame, const std::vector<long>& glue) {
    const Sft2dSpec& spec = ctx.sft();
    mpfr_prec_t prec = ctx.prec_or(256);
    json j;
    CsvWriter w;
    if (!strip.empty()) {
        if (strip.size() != 2) fail(errc::parse_error, "--strip needs K I");
        StripEntropy e = strip_entropy(spec, static_cast<int>(strip[0]),
                                       static_cast<int>(strip[1]), prec);
        j["strip"] = {{"direction", strip[0]},
                      {"thickness", strip[1]},
                      {"log_lambda", fmt_mid(e.value)},
                      {"irreducible", e.irreducible}};
        w.header({"direction", "thickness", "log_lambda", "irreducible"});
        w.row({std::to_string(strip[0]), std::to_string(strip[1]), fmt_mid(e.value),
               e.irreducible ? "1" : "0"});
    } else if (!mix_t.empty()) {
        Rat t = parse_rat_flexible(mix_t);
        BallReal h = sft_mix_2d(spec, static_cast<int>(mix_i), t, prec);
        j["mix"] = {{"t", t.get_str()}, {"thickness", mix_i}, {"h", fmt_mid(h)}};
        w.header({"t", "thickness", "h"});
        w.row({t.get_str(), std::to_string(mix_i), fmt_mid(h)});
    } else if (!frame.empty()) {
        if (frame.size() != 3) fail(errc::parse_error, "--frame needs M N I");
        Nat c = frame_count_empirical(spec, frame[0], frame[1], frame[2]);
        j["frame"] = {{"m", frame[0]}, {"n", frame[1]}, {"i", frame[2]}, {"count", c.get_str()}};
        w.header({"m", "n", "i", "count"});
        w.row({std::to_string(frame[0]), std::to_string(frame[1]), std::to_string(frame[2]),
               c.get_str()});
    } else if (!glue.empty()) {
        if (glue.size() != 2) fail(errc::parse_error, "--glue-probe needs N W");
        GlueProbeReport rep = block_gluing_probe(spec, glue[0], glue[1]);
        j["glue_probe"] = {{"candidate_N", glue[0]},
                           {"window", glue[1]},
                           {"verified", rep.verified},
                           {"detail", rep.detail}};
        w.header({"candidate_N", "window", "verified", "detail"});
        w.row({std::to_string(glue[0]), std::to_string(glue[1]), rep.verified ? "1" : "0",
               "\"" + rep.detail + "\""});
    } else {
        fail(errc::parse_error, "sft2d needs one of --strip/--mix/--frame/--glue-probe");
    }
    ctx.emit_out(ctx.json_mode() ? j.dump(2) + "\n" : w.buffer);
}

void run_surface(const Ctx& ctx, const std::vector<std::string>& seq_args,
                 const std::string& n_arg) {
    const MisSpec& mis = ctx.mis();
    if (seq_args.empty()) fail(errc::parse_error, "--seq is required");
    SequenceSpec seq;
    if (seq_args[0] == "power") {
        std::vector<long> ks;
        for (std::size_t i = 1; i < seq_args.size(); ++i)
            ks.push_back(parse_nat(seq_args[i]).get_si());
        if (static_cast<int>(ks.size()) == 1 && mis.dim() > 1)
            ks.assign(static_cast<std::size_t>(mis.dim()), ks[0]);
        seq = SequenceSpec::power_pair(ks);
    } else if (seq_args[0] == "offset") {
        if (seq_args.size() != 3) fail(errc::parse_error, "--seq offset K SIGN");
        int sign = seq_args[2] == "+" || seq_args[2] == "+1" || seq_args[2] == "1" ? 1 : -1;
        seq = SequenceSpec::power_offset(parse_nat(seq_args[1]).get_si(), sign);
    } else {
        fail(errc::parse_error, "--seq must start with 'power' or 'offset'");
    }
    std::vector<long> ns = parse_long_list(n_arg);
    auto rows = convergence_table(mis, seq, ns, ctx.cfg.precision);

    if (ctx.json_mode()) {
        json j;
        j["rows"] = json::array();
        for (const auto& row : rows) {
            json r;
            r["n"] = row.n;
            r["sides"] = json::array();
            for (const auto& s : row.sides) r["sides"].push_back(s.get_str());
            r["correction"] = fmt_mid(row.correction);
            r["scaled"] = fmt_mid(row.scaled);
            r["predicted"] = fmt_mid(row.predicted);
            r["deviation"] = fmt_mid(row.deviation);
            r["deviation_4dp"] = row.deviation.to_fixed(4);
            r["radius"] = fmt_rad(row.deviation);
            j["rows"].push_back(r);
        }
        ctx.emit_out(j.dump(2) + "\n");
    } else {
        CsvWriter w;
        w.header({"n", "x_n", "y_n", "correction", "scaled", "predicted", "deviation"});
        for (const auto& row : rows) {
            std::string x = row.sides.empty() ? "" : row.sides[0].get_str();
            std::string y = row.sides.size() > 1 ? row.sides[1].get_str() : "";
            w.row({std::to_string(row.n), x, y, fmt_mid(row.correction), fmt_mid(row.scaled),
                   fmt_mid(row.predicted), fmt_mid(row.deviation)});
        }
        ctx.emit_out(w.buffer);
    }
}

int run_selftest(const Ctx& ctx) {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
        if (!ok) ++failures;
    };

    auto gm = SubshiftSpec::golden_mean();
    check("word counts follow the two-term recurrence",
          word_count(gm, 12) == word_count(gm, 11) + word_count(gm, 10));

    auto p23 = MultiplierVector::of({2, 3});
    Box b49 = Box::of({Nat(4), Nat(9)});
    auto [oj, ok_] = enumerate_hist_oracle(b49, p23);
    check("chain histograms match the enumeration oracle",
          oj.counts == hist_J(b49, p23).counts && ok_.counts == hist_K(b49, p23).counts);

    auto mis2 = MisSpec::of(MultiplierVector::of({2}), gm);
    check("pattern count oracle agreement",
          pattern_count_exact(mis2, Box::of({Nat(4)})) ==
              pattern_count_bruteforce(mis2, Box::of({Nat(4)})));

    auto mis23 = MisSpec::of(p23, gm);
    BallReal h = mis_entropy(mis23, 1e-30);
    BallReal target = h.add(BallReal::log_nat(Nat(2), 256)).mul_rat(Rat(1, 2));
    auto res = realize(mis23, target, 256);
    check("realization round-trip",
          res.achieved_h.sub(target).abs_enclosure().upper_d() < 1e-10);

    auto rows = convergence_table(mis23, SequenceSpec::power_pair({1, 1}), {1, 10},
                                  PrecPolicy::automatic());
    check("convergence table first rows",
          std::abs(rows[0].deviation.mid_d() - 1.0189) <= 5e-4 &&
              std::abs(rows[1].deviation.mid_d() - 0.1014) <= 5e-4);

    (void)ctx;
    std::cout << (failures == 0 ? "selftest passed\n" : "selftest FAILED\n");
    return failures == 0 ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact pattern counting, boundary complexity and surface "
                 "corrections for multiplicative constraint systems"};
    app.require_subcommand(1);
    app.fallthrough();

    Ctx ctx;
    app.add_option("--config", ctx.config_path, "JSON system configuration");
    app.add_option("--out", ctx.out_path, "output file path ('-' = stdout)");
    app.add_option("--format", ctx.format_override, "csv or json");
    app.add_option("--prec", ctx.prec_override, "precision bits or 'auto'");
    app.add_flag("--unsafe-budgets", ctx.unsafe_budgets, "lift enumeration budget guards");

    auto* c_count = app.add_subcommand("count", "exact pattern count on a box");
    std::string box_arg;
    bool with_hist = false;
    c_count->add_option("--box", box_arg, "box sides, comma separated")->required();
    c_count->add_flag("--hist", with_hist, "also emit the chain-length histograms");

    auto* c_entropy = app.add_subcommand("entropy", "topological entropy of the system");
    double tol = 1e-12;
    c_entropy->add_option("--tol", tol, "absolute error tolerance");

    auto* c_boundary = app.add_subcommand("boundary", "boundary complexity: formula and empirical");
    std::string tau_arg, m_arg, slopes_arg;
    c_boundary->add_option("--tau", tau_arg, "product slope (rational or decimal)")->required();
    c_boundary->add_option("--m", m_arg, "finite sides for the empirical value");
    c_boundary->add_option("--slopes", slopes_arg, "per-axis slopes override");

    auto* c_realize = app.add_subcommand("realize", "solve for the slope achieving a target value");
    std::string target_arg;
    c_realize->add_option("--target", target_arg, "target boundary complexity")->required();

    auto* c_sft = app.add_subcommand("sft2d", "planar SFT strip machinery");
    std::vector<long> strip, frame, glue;
    std::string mix_t;
    long mix_i = 1;
    c_sft->add_option("--strip", strip, "direction and thickness")->expected(2);
    c_sft->add_option("--mix", mix_t, "mix parameter t");
    c_sft->add_option("--i", mix_i, "strip thickness for --mix");
    c_sft->add_option("--frame", frame, "frame counts: M N I")->expected(3);
    c_sft->add_option("--glue-probe", glue, "gluing probe: N WINDOW")->expected(2);

    auto* c_surface = app.add_subcommand("surface", "surface-correction convergence table");
    std::vector<std::string> seq_args;
    std::string n_arg;
    c_surface->add_option("--seq", seq_args, "power K1 [K2 ...] | offset K SIGN")
        ->expected(-1);
    c_surface->add_option("--n", n_arg, "sequence indices, comma separated")->required();

    auto* c_selftest = app.add_subcommand("selftest", "quick internal consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_selftest) return run_selftest(ctx);
        ctx.load();
        if (*c_count) run_count(ctx, box_arg, with_hist);
        else if (*c_entropy) run_entropy(ctx, tol);
        else if (*c_boundary) run_boundary(ctx, tau_arg, m_arg, slopes_arg);
        else if (*c_realize) run_realize(ctx, target_arg);
        else if (*c_sft) run_sft2d(ctx, strip, mix_t, mix_i, frame, glue);
        else if (*c_surface) run_surface(ctx, seq_args, n_arg);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        if (ctx.cfg.format == "json" || ctx.format_override == "json")
            emit(ctx.out_path, json_error(e));
        return is_budget_error(e.code()) ? 3 : 2;
    }
    return 0;
}
