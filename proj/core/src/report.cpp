#include "sympath/report.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>
#include <string>

#include "json.hpp"

#include "sympath/errors.hpp"
#include "sympath/version.hpp"

namespace sympath {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string iso8601_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string hash_hex(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%016" PRIx64, h);
    return buf;
}

// Prints integers without a fractional part and everything else with enough
// digits to round-trip.
std::string num_str(double v) {
    if (std::isfinite(v) && v == std::rint(v) && std::abs(v) < 1e15) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.0f", v);
        return buf;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

ordered_json cert_json(const JumpCertificate& cert) {
    ordered_json j;
    j["N"] = cert.N;
    j["m"] = cert.m;
    j["chi"] = cert.chi;
    j["epsilon"] = cert.epsilon;
    j["m_bar"] = cert.m_bar;
    j["residuals"] = cert.residuals;
    return j;
}

ordered_json config_json(const Config& cfg) {
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

} // namespace

std::string index_records_to_csv(const std::vector<std::pair<int, IndexRecord>>& rows) {
    std::ostringstream out;
    out << "k,m,i,nu,mu_minus,mu_plus,mean\n";
    for (const auto& [k, rec] : rows) {
        out << k << ',' << rec.m << ',' << rec.i << ',' << rec.nu << ','
            << rec.mu_minus << ',' << rec.mu_plus << ',' << num_str(rec.mean) << '\n';
    }
    return out.str();
}

std::string cert_to_json_text(const JumpCertificate& cert, int indent) {
    return cert_json(cert).dump(indent) + "\n";
}

JumpCertificate cert_from_json_text(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("certificate is not valid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw ValidationError("certificate must be a JSON object");
        JumpCertificate cert;
        cert.N = j.at("N").get<std::int64_t>();
        cert.m = j.at("m").get<std::vector<std::int64_t>>();
        cert.chi = j.at("chi").get<std::vector<int>>();
        cert.epsilon = j.at("epsilon").get<double>();
        if (j.contains("m_bar")) cert.m_bar = j.at("m_bar").get<std::int64_t>();
        if (j.contains("residuals"))
            cert.residuals = j.at("residuals").get<std::vector<double>>();
        return cert;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed certificate: ") + e.what());
    }
}

std::string report_to_json_text(const VerificationReport& rep, const Config& cfg,
                                std::uint64_t input_hash, int indent) {
    ordered_json j;
    j["tuple"] = cert_json(rep.cert);
    ordered_json checks = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json cj;
        cj["name"] = c.name;
        cj["section"] = c.section;
        cj["lhs"] = c.lhs;
        cj["rhs"] = c.rhs;
        cj["relation"] = c.relation;
        cj["tolerance"] = c.tolerance;
        cj["pass"] = c.pass;
        if (c.engine_error) {
            cj["engine_error"] = true;
            cj["error"] = c.error;
        }
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    j["summary"] = {
        {"total", static_cast<int>(rep.checks.size())},
        {"passed", rep.passed()},
        {"failed", rep.failed()},
        {"pass", rep.all_pass()},
    };
    j["notes"] = rep.notes;
    ordered_json prov;
    prov["tool_version"] = rep.tool_version.empty() ? kToolVersion : rep.tool_version;
    prov["input_hash"] = hash_hex(input_hash);
    prov["seed"] = rep.seed;
    prov["config"] = config_json(cfg);
    prov["generated_at"] = iso8601_utc_now();
    j["provenance"] = std::move(prov);
    return j.dump(indent) + "\n";
}

std::string report_to_table(const VerificationReport& rep) {
    std::ostringstream out;
    std::size_t name_w = 4;
    for (const auto& c : rep.checks) name_w = std::max(name_w, c.name.size());
    name_w = std::min<std::size_t>(name_w, 60);

    auto pad = [](const std::string& s, std::size_t w) {
        std::string r = s;
        if (r.size() < w) r.append(w - r.size(), ' ');
        return r;
    };

    out << pad("name", name_w) << "  " << pad("section", 19) << ' '
        << pad("lhs", 12) << ' ' << pad("rhs", 12) << ' ' << pad("rel", 3)
        << " result\n";
    for (const auto& c : rep.checks) {
        std::string result = c.pass ? "pass" : (c.engine_error ? "error" : "FAIL");
        out << pad(c.name, name_w) << "  " << pad(c.section, 19) << ' '
            << pad(num_str(c.lhs), 12) << ' ' << pad(num_str(c.rhs), 12) << ' '
            << pad(c.relation, 3) << ' ' << result;
        if (c.engine_error) out << "  (" << c.error << ')';
        out << '\n';
    }
    for (const auto& n : rep.notes) out << "note: " << n << '\n';
    out << (rep.all_pass() ? "PASS " : "FAIL ") << rep.passed() << '/'
        << rep.checks.size() << " checks\n";
    return out.str();
}

} // namespace sympath
