// Command-line front end: builds symplectic paths from JSON block specs and
// exposes evaluation, index/splitting computations, the jump-tuple search and
// the verification suites.  Exit codes: 0 success, 1 failed identity check or
// numerical failure, 2 invalid input or violated precondition.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sympath/blocks.hpp"
#include "sympath/cijt.hpp"
#include "sympath/config.hpp"
#include "sympath/errors.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/matrix.hpp"
#include "sympath/report.hpp"
#include "sympath/splitting.hpp"
#include "sympath/verify.hpp"
#include "sympath/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sympath;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file: " + out_path);
    out << text;
}

// A spec file holds either one path object or an array of them.
std::vector<PathSpec> specs_from_file(const std::string& path, const Config& cfg) {
    const std::string text = read_file(path);
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        ordered_json arr;
        try {
            arr = ordered_json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(path + ": " + e.what());
        }
        if (!arr.is_array() || arr.empty())
            throw ValidationError(path + ": expected a non-empty JSON array of path specs");
        std::vector<PathSpec> out;
        for (const auto& item : arr) out.push_back(path_from_json_text(item.dump(), cfg));
        return out;
    }
    return {path_from_json_text(text, cfg)};
}

std::vector<PathSpec> load_specs(const std::vector<std::string>& paths, const Config& cfg) {
    std::vector<PathSpec> out;
    for (const auto& p : paths) {
        auto some = specs_from_file(p, cfg);
        out.insert(out.end(), some.begin(), some.end());
    }
    return out;
}

// Hash of the canonical serialization, independent of input whitespace.
std::uint64_t specs_hash(const std::vector<PathSpec>& specs) {
    std::string all;
    for (const auto& s : specs) all += path_to_json_text(s);
    return fnv1a64(all);
}

ordered_json config_echo(const Config& cfg) {
    ordered_json j;
    j["tol_sym"] = cfg.tol_sym;
    j["tol_unit"] = cfg.tol_unit;
    j["tol_rat"] = cfg.tol_rat;
    j["tol_rank"] = cfg.tol_rank;
    j["q_max"] = cfg.q_max;
    j["epsilon"] = cfg.epsilon;
    j["n_max"] = cfg.n_max;
    j["want"] = cfg.want;
    j["delta"] = cfg.delta;
    j["m_bar_override"] = cfg.m_bar_override;
    return j;
}

ordered_json provenance_json(const Config& cfg, std::uint64_t input_hash, std::uint64_t seed) {
    char hex[20];
    std::snprintf(hex, sizeof(hex), "0x%016llx", static_cast<unsigned long long>(input_hash));
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["input_hash"] = hex;
    j["seed"] = seed;
    j["config"] = config_echo(cfg);
    j["generated_at"] = iso8601_utc_now();
    return j;
}

ordered_json angle_json(const Angle& a) {
    ordered_json j;
    if (a.is_exact()) {
        j["pi_num"] = a.pi_num();
        j["pi_den"] = a.pi_den();
    } else {
        j["radians"] = a.radians();
    }
    j["str"] = a.str();
    return j;
}

ordered_json cert_json_echo(const JumpCertificate& c) {
    ordered_json j;
    j["N"] = c.N;
    j["m"] = c.m;
    j["chi"] = c.chi;
    j["epsilon"] = c.epsilon;
    j["m_bar"] = c.m_bar;
    j["residuals"] = c.residuals;
    return j;
}

Angle parse_omega(std::int64_t pi_num, std::int64_t pi_den, double radians, bool have_radians,
                  const Config& cfg) {
    if (have_radians) return Angle::from_radians(radians, cfg);
    return Angle::exact_pi(pi_num, pi_den);
}

struct VerifyIO {
    std::vector<std::string> spec_files;
    std::string cert_file;
    std::string format = "json";
    std::string out_path;
    int protect_up_to = 12;
};

// Runs `verify` over the given or searched-for certificates and emits one
// report per tuple.  Returns the process exit code.
template <typename VerifyFn>
int run_verify(const VerifyIO& io, const Config& cfg, VerifyFn&& verify) {
    auto specs = load_specs(io.spec_files, cfg);
    const std::uint64_t hash = specs_hash(specs);

    std::vector<JumpCertificate> certs;
    std::optional<JumpSearchResult> search;
    if (!io.cert_file.empty()) {
        certs.push_back(cert_from_json_text(read_file(io.cert_file)));
    } else {
        search = search_jump_tuples(specs, cfg, io.protect_up_to);
        certs = search->certs;
        if (certs.empty())
            throw NumericalFailure("jump-tuple search found no certificate up to n_max; "
                                   "rerun with a larger --n-max or --epsilon");
    }

    std::vector<VerificationReport> reports;
    bool all_pass = true;
    for (const auto& cert : certs) {
        VerificationReport rep = verify(specs, cert);
        all_pass = all_pass && rep.all_pass();
        reports.push_back(std::move(rep));
    }

    std::string text;
    if (io.format == "table") {
        std::ostringstream out;
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& c = reports[i].cert;
            out << "== tuple " << (i + 1) << '/' << reports.size() << ": N=" << c.N << " m=[";
            for (std::size_t k = 0; k < c.m.size(); ++k)
                out << (k ? "," : "") << c.m[k];
            out << "] ==\n" << report_to_table(reports[i]) << '\n';
        }
        text = out.str();
    } else {
        ordered_json j;
        if (search) {
            ordered_json s;
            s["m_bar"] = search->m_bar;
            if (search->m_check) s["m_check"] = *search->m_check;
            else s["m_check"] = nullptr;
            s["window"] = search->window;
            s["warnings"] = search->warnings;
            j["search"] = std::move(s);
        }
        ordered_json arr = ordered_json::array();
        for (const auto& rep : reports)
            arr.push_back(ordered_json::parse(report_to_json_text(rep, cfg, hash)));
        j["reports"] = std::move(arr);
        j["pass"] = all_pass;
        text = j.dump(2) + "\n";
    }
    write_output(text, io.out_path);
    return all_pass ? 0 : 1;
}

int cmd_eval(const std::string& spec_file, double t, const std::string& format,
             const std::string& out_path, const Config& cfg) {
    auto specs = specs_from_file(spec_file, cfg);
    if (specs.size() != 1) throw ValidationError("eval expects a single path spec");
    const Mat M = evaluate(specs[0], t, cfg);
    const double resid = symplectic_residual(M);
    std::string text;
    if (format == "json") {
        ordered_json j;
        j["t"] = t;
        j["dim"] = static_cast<int>(M.rows());
        ordered_json rows = ordered_json::array();
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
            rows.push_back(std::move(row));
        }
        j["matrix"] = std::move(rows);
        j["symplectic_residual"] = resid;
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream out;
        out.precision(12);
        out << "gamma(" << t << "), dim " << M.rows() << ":\n" << M
            << "\nsymplectic residual: " << resid << '\n';
        text = out.str();
    }
    write_output(text, out_path);
    return 0;
}

int cmd_index(const std::vector<std::string>& spec_files, std::int64_t m_top,
              const std::string& format, const std::string& out_path, const Config& cfg) {
    if (m_top < 1) throw ValidationError("--m must be >= 1");
    auto specs = load_specs(spec_files, cfg);
    std::vector<std::pair<int, IndexRecord>> rows;
    for (std::size_t k = 0; k < specs.size(); ++k)
        for (std::int64_t m = 1; m <= m_top; ++m)
            rows.emplace_back(static_cast<int>(k + 1), index_at_iterate(specs[k], m, cfg));
    std::string text;
    if (format == "json") {
        ordered_json arr = ordered_json::array();
        for (const auto& [k, r] : rows) {
            ordered_json j;
            j["k"] = k;
            j["m"] = r.m;
            j["i"] = r.i;
            j["nu"] = r.nu;
            j["mu_minus"] = r.mu_minus;
            j["mu_plus"] = r.mu_plus;
            j["mean"] = r.mean;
            arr.push_back(std::move(j));
        }
        text = arr.dump(2) + "\n";
    } else {
        text = index_records_to_csv(rows);
    }
    write_output(text, out_path);
    return 0;
}

int cmd_iterate(const std::string& spec_file, std::int64_t m, const std::string& out_path,
                const Config& cfg) {
    auto specs = specs_from_file(spec_file, cfg);
    if (specs.size() != 1) throw ValidationError("iterate expects a single path spec");
    write_output(path_to_json_text(iterate(specs[0], m)) + "\n", out_path);
    return 0;
}

int cmd_split(const std::string& spec_file, const Angle& omega, const std::string& route_name,
              bool profile, const std::string& format, const std::string& out_path,
              const Config& cfg) {
    auto specs = specs_from_file(spec_file, cfg);
    if (specs.size() != 1) throw ValidationError("split expects a single path spec");
    const PathSpec& spec = specs[0];
    SplitRoute route = SplitRoute::Auto;
    if (route_name == "table") route = SplitRoute::Table;
    else if (route_name == "numeric") route = SplitRoute::Numeric;
    else if (route_name != "auto") throw ValidationError("--route must be auto, table or numeric");

    std::string text;
    if (profile) {
        const SplittingProfile prof = splitting_profile(spec, cfg);
        if (format == "table") {
            std::ostringstream out;
            out << "angle            S+  S-\n";
            for (const auto& [a, sp] : prof.rows) {
                std::string s = a.str();
                if (s.size() < 16) s.append(16 - s.size(), ' ');
                out << s << ' ' << sp.plus << "   " << sp.minus << '\n';
            }
            text = out.str();
        } else {
            ordered_json arr = ordered_json::array();
            for (const auto& [a, sp] : prof.rows) {
                ordered_json j;
                j["angle"] = angle_json(a);
                j["s_plus"] = sp.plus;
                j["s_minus"] = sp.minus;
                arr.push_back(std::move(j));
            }
            text = arr.dump(2) + "\n";
        }
    } else {
        const SplitPair sp = splitting_numbers(spec, omega, cfg, route);
        if (format == "table") {
            std::ostringstream out;
            out << "omega " << omega.str() << ": S+ = " << sp.plus << ", S- = " << sp.minus
                << '\n';
            text = out.str();
        } else {
            ordered_json j;
            j["omega"] = angle_json(omega);
            j["s_plus"] = sp.plus;
            j["s_minus"] = sp.minus;
            text = j.dump(2) + "\n";
        }
    }
    write_output(text, out_path);
    return 0;
}

int cmd_cijt_search(const std::vector<std::string>& spec_files, int protect_up_to,
                    const std::string& out_path, const Config& cfg) {
    auto specs = load_specs(spec_files, cfg);
    const std::uint64_t hash = specs_hash(specs);
    const JumpSearchResult res = search_jump_tuples(specs, cfg, protect_up_to);
    for (const auto& w : res.warnings) std::cerr << "warning: " << w << '\n';

    ordered_json j;
    j["m_bar"] = res.m_bar;
    if (res.m_check) j["m_check"] = *res.m_check;
    else j["m_check"] = nullptr;
    j["window"] = res.window;
    j["warnings"] = res.warnings;
    ordered_json arr = ordered_json::array();
    for (const auto& c : res.certs) arr.push_back(cert_json_echo(c));
    j["certificates"] = std::move(arr);
    j["provenance"] = provenance_json(cfg, hash, 0);
    write_output(j.dump(2) + "\n", out_path);
    return 0;
}

int cmd_verify_prop1(int dim_bound, const std::string& format, const std::string& out_path,
                     const Config& cfg) {
    VerificationReport rep = verify_prop1_suite(dim_bound, cfg);
    std::string text = (format == "table")
                           ? report_to_table(rep)
                           : report_to_json_text(rep, cfg, fnv1a64("prop1-suite"));
    write_output(text, out_path);
    return rep.all_pass() ? 0 : 1;
}

int cmd_gen_random(std::uint64_t seed, int q, bool with_generic, const std::string& out_path,
                   const Config& cfg) {
    auto specs = make_random_collection(seed, q, cfg, with_generic);
    ordered_json arr = ordered_json::array();
    for (const auto& s : specs) arr.push_back(ordered_json::parse(path_to_json_text(s)));
    write_output(arr.dump(2) + "\n", out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplectic path index and iteration toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Config cfg = Config::from_env();
    app.add_option("--tol-sym", cfg.tol_sym, "symplecticity tolerance");
    app.add_option("--tol-unit", cfg.tol_unit, "unit-circle tolerance");
    app.add_option("--tol-rat", cfg.tol_rat, "rational-angle snap tolerance");
    app.add_option("--tol-rank", cfg.tol_rank, "rank/nullity cutoff");
    app.add_option("--q-max", cfg.q_max, "largest denominator tried for angle/pi detection");

    int exit_code = 0;

    // eval
    std::string ev_spec, ev_format = "json", ev_out;
    double ev_t = 1.0;
    auto* ev = app.add_subcommand("eval", "evaluate the path matrix at a time t");
    ev->add_option("spec", ev_spec, "path spec JSON file")->required();
    ev->add_option("--t", ev_t, "time in [0, 1] scaled by the multiplier");
    ev->add_option("--format", ev_format, "json|table")->check(CLI::IsMember({"json", "table"}));
    ev->add_option("--out", ev_out, "write output to file");
    ev->callback([&] { exit_code = cmd_eval(ev_spec, ev_t, ev_format, ev_out, cfg); });

    // index
    std::vector<std::string> ix_specs;
    std::int64_t ix_m = 1;
    std::string ix_format = "csv", ix_out;
    auto* ix = app.add_subcommand("index", "index records of iterates 1..m");
    ix->add_option("specs", ix_specs, "path spec JSON files")->required()->expected(-1);
    ix->add_option("--m", ix_m, "largest iterate");
    ix->add_option("--format", ix_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    ix->add_option("--out", ix_out, "write output to file");
    ix->callback([&] { exit_code = cmd_index(ix_specs, ix_m, ix_format, ix_out, cfg); });

    // iterate
    std::string it_spec, it_out;
    std::int64_t it_m = 1;
    auto* it = app.add_subcommand("iterate", "emit the m-th iterate as a path spec");
    it->add_option("spec", it_spec, "path spec JSON file")->required();
    it->add_option("--m", it_m, "iterate")->required();
    it->add_option("--out", it_out, "write output to file");
    it->callback([&] { exit_code = cmd_iterate(it_spec, it_m, it_out, cfg); });

    // split
    std::string sp_spec, sp_route = "auto", sp_format = "json", sp_out;
    std::int64_t sp_pi_num = 0, sp_pi_den = 1;
    double sp_radians = 0.0;
    bool sp_profile = false;
    auto* sp = app.add_subcommand("split", "splitting numbers at a unit-circle point");
    sp->add_option("spec", sp_spec, "path spec JSON file")->required();
    sp->add_option("--pi-num", sp_pi_num, "angle numerator (omega = exp(i pi p/q))");
    sp->add_option("--pi-den", sp_pi_den, "angle denominator");
    auto* sp_rad = sp->add_option("--radians", sp_radians, "numeric angle in radians");
    sp->add_option("--route", sp_route, "auto|table|numeric");
    sp->add_flag("--profile", sp_profile, "print the whole splitting profile");
    sp->add_option("--format", sp_format, "json|table")->check(CLI::IsMember({"json", "table"}));
    sp->add_option("--out", sp_out, "write output to file");
    sp->callback([&] {
        Angle omega = parse_omega(sp_pi_num, sp_pi_den, sp_radians, !sp_rad->empty(), cfg);
        exit_code = cmd_split(sp_spec, omega, sp_route, sp_profile, sp_format, sp_out, cfg);
    });

    // cijt-search
    std::vector<std::string> cs_specs;
    std::string cs_out;
    int cs_protect = 12;
    auto* cs = app.add_subcommand("cijt-search",
                                  "search common-index-jump tuples for a path collection");
    cs->add_option("specs", cs_specs, "path spec JSON files")->required()->expected(-1);
    cs->add_option("--epsilon", cfg.epsilon, "residual tolerance for the scan");
    cs->add_option("--n-max", cfg.n_max, "scan ceiling");
    cs->add_option("--want", cfg.want, "number of certificates to collect");
    cs->add_option("--delta", cfg.delta, "angular window half-width for numeric angles");
    cs->add_option("--m-bar-override", cfg.m_bar_override, "override the computed period lcm");
    cs->add_option("--protect-up-to", cs_protect, "iterate range the window must protect");
    cs->add_option("--out", cs_out, "write output to file");
    cs->callback([&] { exit_code = cmd_cijt_search(cs_specs, cs_protect, cs_out, cfg); });

    // verify-ecijt
    VerifyIO ve_io;
    std::int64_t ve_range = 5;
    auto* ve = app.add_subcommand("verify-ecijt",
                                  "verify the iterate nullity/index jump identities on tuples");
    ve->add_option("specs", ve_io.spec_files, "path spec JSON files")->required()->expected(-1);
    ve->add_option("--cert", ve_io.cert_file, "verify this certificate instead of searching");
    ve->add_option("--identity-range", ve_range, "check the jump identities for m = 1..range");
    ve->add_option("--epsilon", cfg.epsilon, "residual tolerance for the scan");
    ve->add_option("--n-max", cfg.n_max, "scan ceiling");
    ve->add_option("--want", cfg.want, "number of certificates to collect");
    ve->add_option("--delta", cfg.delta, "angular window half-width / near-resonance width");
    ve->add_option("--m-bar-override", cfg.m_bar_override, "override the computed period lcm");
    ve->add_option("--protect-up-to", ve_io.protect_up_to, "iterate range the window must protect");
    ve->add_option("--format", ve_io.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    ve->add_option("--out", ve_io.out_path, "write output to file");
    ve->callback([&] {
        exit_code = run_verify(ve_io, cfg, [&](const std::vector<PathSpec>& specs,
                                               const JumpCertificate& cert) {
            return verify_ecijt(specs, cert, ve_range, cfg);
        });
    });

    // verify-ir
    VerifyIO vi_io;
    std::int64_t vi_l0 = 5;
    double vi_eta = 0.5;
    auto* vi = app.add_subcommand("verify-ir",
                                  "verify index-recurrence properties at tuple iterates");
    vi->add_option("specs", vi_io.spec_files, "path spec JSON files")->required()->expected(-1);
    vi->add_option("--cert", vi_io.cert_file, "verify this certificate instead of searching");
    vi->add_option("--l0", vi_l0, "offset range for the shift/reflection identities");
    vi->add_option("--eta", vi_eta, "tolerance for the mean-index recurrence");
    vi->add_option("--epsilon", cfg.epsilon, "residual tolerance for the scan");
    vi->add_option("--n-max", cfg.n_max, "scan ceiling");
    vi->add_option("--want", cfg.want, "number of certificates to collect");
    vi->add_option("--delta", cfg.delta, "angular window half-width for numeric angles");
    vi->add_option("--m-bar-override", cfg.m_bar_override, "override the computed period lcm");
    vi->add_option("--protect-up-to", vi_io.protect_up_to, "iterate range the window must protect");
    vi->add_option("--format", vi_io.format, "json|table")
        ->check(CLI::IsMember({"json", "table"}));
    vi->add_option("--out", vi_io.out_path, "write output to file");
    vi->callback([&] {
        exit_code = run_verify(vi_io, cfg, [&](const std::vector<PathSpec>& specs,
                                               const JumpCertificate& cert) {
            return verify_ir(specs, cert, vi_l0, vi_eta, cfg);
        });
    });

    // verify-prop1
    int vp_dim = 12;
    std::string vp_format = "json", vp_out;
    auto* vp = app.add_subcommand(
        "verify-prop1", "verify beta_minus == S-(1) over the degenerate block catalog");
    vp->add_option("--dim-bound", vp_dim, "largest total dimension 2n enumerated");
    vp->add_option("--format", vp_format, "json|table")->check(CLI::IsMember({"json", "table"}));
    vp->add_option("--out", vp_out, "write output to file");
    vp->callback([&] { exit_code = cmd_verify_prop1(vp_dim, vp_format, vp_out, cfg); });

    // gen-random
    std::uint64_t gr_seed = 1;
    int gr_q = 3;
    bool gr_generic = false;
    std::string gr_out;
    auto* gr = app.add_subcommand("gen-random", "generate a seeded random path collection");
    gr->add_option("--seed", gr_seed, "RNG seed");
    gr->add_option("--q", gr_q, "number of paths in the collection");
    gr->add_flag("--with-generic", gr_generic, "include conjugated generic blocks");
    gr->add_option("--out", gr_out, "write output to file");
    gr->callback([&] { exit_code = cmd_gen_random(gr_seed, gr_q, gr_generic, gr_out, cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
