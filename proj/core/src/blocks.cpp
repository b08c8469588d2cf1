#include "sympath/blocks.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "sympath/errors.hpp"

namespace sympath {

namespace {

using ordered_json = nlohmann::ordered_json;

// d x d matrix with ones on the superdiagonal.
Mat shift_matrix(int d) {
    Mat A = Mat::Zero(d, d);
    for (int i = 0; i + 1 < d; ++i) A(i, i + 1) = 1.0;
    return A;
}

} // namespace

int half_dim(const BlockSpec& b) {
    return std::visit(
        [](const auto& blk) -> int {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) return blk.nu0;
            else if constexpr (std::is_same_v<T, Q0Block>) return blk.d;
            else if constexpr (std::is_same_v<T, QSignBlock>) return blk.d;
            else if constexpr (std::is_same_v<T, RotationBlock>) return 1;
            else if constexpr (std::is_same_v<T, HyperbolicBlock>) return 1;
            else return static_cast<int>(blk.Q.rows()) / 2;
        },
        b);
}

int half_dim(const PathSpec& p) {
    int n = 0;
    for (const auto& b : p.blocks) n += half_dim(b);
    return n;
}

std::string kind_name(const BlockSpec& b) {
    return std::visit(
        [](const auto& blk) -> std::string {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) return "zero";
            else if constexpr (std::is_same_v<T, Q0Block>) return "q0";
            else if constexpr (std::is_same_v<T, QSignBlock>) return "qsign";
            else if constexpr (std::is_same_v<T, RotationBlock>) return "rotation";
            else if constexpr (std::is_same_v<T, HyperbolicBlock>) return "hyperbolic";
            else return "generic";
        },
        b);
}

void validate(const BlockSpec& b, const Config& cfg) {
    std::visit(
        [&](const auto& blk) {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) {
                if (blk.nu0 < 1) throw ValidationError("zero block: nu0 must be >= 1");
            } else if constexpr (std::is_same_v<T, Q0Block>) {
                if (blk.d < 1 || blk.d % 2 == 0)
                    throw ValidationError("q0 block: d must be odd and >= 1");
            } else if constexpr (std::is_same_v<T, QSignBlock>) {
                if (blk.d < 1) throw ValidationError("qsign block: d must be >= 1");
                if (blk.sign != 1 && blk.sign != -1)
                    throw ValidationError("qsign block: sign must be +1 or -1");
            } else if constexpr (std::is_same_v<T, RotationBlock>) {
                if (blk.theta.is_zero())
                    throw ValidationError("rotation block: theta must lie in (0, 2*pi)");
            } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
                if (!std::isfinite(blk.a) || blk.a == 0.0)
                    throw ValidationError("hyperbolic block: a must be finite and nonzero");
            } else {
                const Mat& Q = blk.Q;
                if (Q.rows() != Q.cols() || Q.rows() < 2 || Q.rows() % 2 != 0)
                    throw ValidationError("generic block: Q must be square of even dimension >= 2");
                if (!Q.allFinite())
                    throw ValidationError("generic block: Q has non-finite entries");
                if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > cfg.tol_sym)
                    throw ValidationError("generic block: Q is not symmetric");
            }
        },
        b);
}

void validate(const PathSpec& p, const Config& cfg) {
    if (p.blocks.empty()) throw ValidationError("path: block list is empty");
    if (p.multiplier < 1) throw ValidationError("path: iterate multiplier must be >= 1");
    for (const auto& b : p.blocks) validate(b, cfg);
}

Mat generator_matrix(const BlockSpec& b) {
    return std::visit(
        [](const auto& blk) -> Mat {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) {
                return Mat::Zero(2 * blk.nu0, 2 * blk.nu0);
            } else if constexpr (std::is_same_v<T, Q0Block>) {
                int d = blk.d;
                Mat A = shift_matrix(d);
                Mat B = Mat::Zero(2 * d, 2 * d);
                B.topRightCorner(d, d) = A;
                B.bottomLeftCorner(d, d) = A.transpose();
                return B;
            } else if constexpr (std::is_same_v<T, QSignBlock>) {
                int d = blk.d;
                Mat A = shift_matrix(d);
                Mat B = Mat::Zero(2 * d, 2 * d);
                B(d - 1, d - 1) = 1.0;
                B.topRightCorner(d, d) = A;
                B.bottomLeftCorner(d, d) = A.transpose();
                return static_cast<double>(blk.sign) * B;
            } else if constexpr (std::is_same_v<T, RotationBlock>) {
                return blk.theta.radians() * Mat::Identity(2, 2);
            } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
                Mat B = Mat::Zero(2, 2);
                B(0, 1) = -blk.a;
                B(1, 0) = -blk.a;
                return B;
            } else {
                return blk.Q;
            }
        },
        b);
}

Mat generator_matrix(const PathSpec& p) {
    Mat B = generator_matrix(p.blocks.front());
    for (std::size_t i = 1; i < p.blocks.size(); ++i)
        B = direct_sum(B, generator_matrix(p.blocks[i]));
    return B;
}

AGInvariants invariants_of(const PathSpec& p) {
    AGInvariants inv;
    for (const auto& b : p.blocks) {
        if (const auto* z = std::get_if<ZeroForm>(&b)) {
            inv.nu0 += z->nu0;
        } else if (std::get_if<Q0Block>(&b)) {
            inv.b0 += 1;
        } else if (const auto* s = std::get_if<QSignBlock>(&b)) {
            (s->sign > 0 ? inv.b_plus : inv.b_minus) += 1;
        } else {
            throw PreconditionError(
                "invariants are defined only for paths built from the named degenerate kinds "
                "(zero, q0, qsign); found block of kind '" + kind_name(b) + "'");
        }
    }
    return inv;
}

std::pair<PathSpec, PathSpec> degenerate_split(const PathSpec& p, const Config& cfg) {
    PathSpec deg{{}, p.multiplier}, nondeg{{}, p.multiplier};
    for (const auto& b : p.blocks) {
        bool is_deg;
        if (std::holds_alternative<ZeroForm>(b) || std::holds_alternative<Q0Block>(b) ||
            std::holds_alternative<QSignBlock>(b)) {
            is_deg = true;
        } else if (const auto* r = std::get_if<RotationBlock>(&b)) {
            is_deg = r->theta.times_is_multiple_of_2pi(p.multiplier);
        } else if (std::holds_alternative<HyperbolicBlock>(b)) {
            is_deg = false;
        } else {
            // Classify by the spectrum of J Q: the end matrix exp(m J Q) has
            // every eigenvalue equal to 1 iff every eigenvalue x + i y of
            // J Q has x = 0 and m y a multiple of 2*pi.
            const Mat Q = generator_matrix(b);
            int n = static_cast<int>(Q.rows()) / 2;
            Eigen::EigenSolver<Mat> es(symplectic_J(n) * Q);
            int at_one = 0, total = static_cast<int>(es.eigenvalues().size());
            for (int i = 0; i < total; ++i) {
                std::complex<double> mu = es.eigenvalues()(i);
                double my = static_cast<double>(p.multiplier) * mu.imag();
                double dist = std::abs(my - 2.0 * std::numbers::pi *
                                                std::round(my / (2.0 * std::numbers::pi)));
                if (std::abs(mu.real()) <= cfg.tol_unit && dist <= cfg.tol_unit * (1.0 + std::abs(my)))
                    ++at_one;
            }
            if (at_one == total) is_deg = true;
            else if (at_one == 0) is_deg = false;
            else
                throw PreconditionError(
                    "generic block mixes unit and non-unit end spectrum; "
                    "decompose it into separate blocks before splitting");
        }
        (is_deg ? deg : nondeg).blocks.push_back(b);
    }
    return {deg, nondeg};
}

namespace {

Angle angle_from_json(const ordered_json& j, const Config& cfg) {
    if (j.contains("pi_num")) {
        if (!j.contains("pi_den")) throw ValidationError("theta: pi_num given without pi_den");
        return Angle::exact_pi(j.at("pi_num").get<std::int64_t>(),
                               j.at("pi_den").get<std::int64_t>());
    }
    if (j.contains("radians")) return Angle::from_radians(j.at("radians").get<double>(), cfg);
    throw ValidationError("theta: expected {\"pi_num\",\"pi_den\"} or {\"radians\"}");
}

BlockSpec block_from_json(const ordered_json& j, const Config& cfg) {
    if (!j.contains("kind")) throw ValidationError("block: missing \"kind\"");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return ZeroForm{j.at("nu0").get<int>()};
    if (kind == "q0") return Q0Block{j.at("d").get<int>()};
    if (kind == "qsign") return QSignBlock{j.at("d").get<int>(), j.at("sign").get<int>()};
    if (kind == "rotation") return RotationBlock{angle_from_json(j.at("theta"), cfg)};
    if (kind == "hyperbolic") return HyperbolicBlock{j.at("a").get<double>()};
    if (kind == "generic") {
        auto rows = j.at("Q").get<std::vector<std::vector<double>>>();
        std::size_t n = rows.size();
        for (const auto& r : rows)
            if (r.size() != n) throw ValidationError("generic block: Q rows have unequal lengths");
        Mat Q(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) Q(i, k) = rows[i][k];
        return GenericBlock{std::move(Q)};
    }
    throw ValidationError("block: unknown kind '" + kind + "'");
}

ordered_json block_to_json(const BlockSpec& b) {
    ordered_json j;
    j["kind"] = kind_name(b);
    std::visit(
        [&](const auto& blk) {
            using T = std::decay_t<decltype(blk)>;
            if constexpr (std::is_same_v<T, ZeroForm>) {
                j["nu0"] = blk.nu0;
            } else if constexpr (std::is_same_v<T, Q0Block>) {
                j["d"] = blk.d;
            } else if constexpr (std::is_same_v<T, QSignBlock>) {
                j["d"] = blk.d;
                j["sign"] = blk.sign;
            } else if constexpr (std::is_same_v<T, RotationBlock>) {
                ordered_json t;
                if (blk.theta.is_exact()) {
                    t["pi_num"] = blk.theta.pi_num();
                    t["pi_den"] = blk.theta.pi_den();
                } else {
                    t["radians"] = blk.theta.radians();
                }
                j["theta"] = t;
            } else if constexpr (std::is_same_v<T, HyperbolicBlock>) {
                j["a"] = blk.a;
            } else {
                std::vector<std::vector<double>> rows(blk.Q.rows(),
                                                      std::vector<double>(blk.Q.cols()));
                for (int i = 0; i < blk.Q.rows(); ++i)
                    for (int k = 0; k < blk.Q.cols(); ++k) rows[i][k] = blk.Q(i, k);
                j["Q"] = rows;
            }
        },
        b);
    return j;
}

} // namespace

PathSpec path_from_json_text(const std::string& text, const Config& cfg) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid JSON: ") + e.what());
    }
    try {
        PathSpec p;
        if (!j.contains("blocks") || !j.at("blocks").is_array())
            throw ValidationError("path: missing \"blocks\" array");
        for (const auto& jb : j.at("blocks")) p.blocks.push_back(block_from_json(jb, cfg));
        if (j.contains("iterate")) p.multiplier = j.at("iterate").get<std::int64_t>();
        validate(p, cfg);
        return p;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("invalid path JSON: ") + e.what());
    }
}

std::string path_to_json_text(const PathSpec& p, int indent) {
    ordered_json j;
    j["blocks"] = ordered_json::array();
    for (const auto& b : p.blocks) j["blocks"].push_back(block_to_json(b));
    if (p.multiplier != 1) j["iterate"] = p.multiplier;
    return j.dump(indent);
}

} // namespace sympath
