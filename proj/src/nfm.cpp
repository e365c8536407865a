#include "corrclust/nfm.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "corrclust/errors.hpp"
#include "corrclust/rng.hpp"

namespace corrclust {

namespace {

constexpr double kInnerClamp = 1e-12;
constexpr double kStrongCutoff = 0.70710678118654752440;  // 1/sqrt(2)

double logit(double x) { return std::log(x / (1.0 - x)); }

double clamped_logit_of_inner(double ip) {
    const double x = std::min(1.0 - kInnerClamp, std::max(kInnerClamp, ip));
    return logit(x);
}

}  // namespace

std::vector<double> FeatureMatrix::row(int i) const {
    return std::vector<double>(theta.begin() + static_cast<size_t>(i) * k,
                               theta.begin() + static_cast<size_t>(i + 1) * k);
}

void FeatureMatrix::validate() const {
    if (n < 1 || k < 1) throw InvalidInput("FeatureMatrix: n and k must be >= 1");
    if (theta.size() != static_cast<size_t>(n) * k)
        throw InvalidInput("FeatureMatrix: data size mismatch");
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
            const double v = (*this)(i, j);
            if (!(v >= 0.0)) throw InvalidInput("FeatureMatrix: negative entry");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw InvalidInput("FeatureMatrix: row does not sum to 1");
    }
}

std::vector<std::vector<int>> GroundTruth::clusters() const {
    std::vector<std::vector<int>> cs(k);
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] != kStray) cs[labels[i]].push_back(static_cast<int>(i));
    return cs;
}

std::vector<int> GroundTruth::strays() const {
    std::vector<int> s;
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == kStray) s.push_back(static_cast<int>(i));
    return s;
}

std::vector<int> GroundTruth::strong_nodes(int j) const {
    std::vector<int> s;
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == j && strength[i] == Strength::strong) s.push_back(static_cast<int>(i));
    return s;
}

int GroundTruth::cluster_count_nonempty() const {
    int count = 0;
    for (const auto& c : clusters())
        if (!c.empty()) ++count;
    return count;
}

FeatureMatrix sample_dirichlet(int n, int k, const std::vector<double>& alpha, uint64_t seed) {
    if (n < 1 || k < 1) throw InvalidParameter("sample_dirichlet: n and k must be >= 1");
    if (alpha.size() != static_cast<size_t>(k))
        throw InvalidParameter("sample_dirichlet: alpha length must equal k");
    for (double a : alpha)
        if (!(a > 0.0)) throw InvalidParameter("sample_dirichlet: alpha entries must be positive");

    FeatureMatrix f;
    f.n = n;
    f.k = k;
    f.theta.resize(static_cast<size_t>(n) * k);
    if (k == 1) {
        std::fill(f.theta.begin(), f.theta.end(), 1.0);
        return f;
    }
    Rng rng(seed);
    for (int i = 0; i < n; ++i) rng.dirichlet(alpha, f.theta.data() + static_cast<size_t>(i) * k);
    return f;
}

SymMatrix logit_weights(const RowMatrix& rows) {
    const int n = rows.rows;
    const int k = rows.cols;
    SymMatrix w(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ip = 0.0;
            for (int c = 0; c < k; ++c) ip += rows(i, c) * rows(j, c);
            w.set(i, j, clamped_logit_of_inner(ip));
        }
    return w;
}

SignedGraph build_weights(const FeatureMatrix& theta) {
    theta.validate();
    RowMatrix rows(theta.n, theta.k);
    rows.a = theta.theta;
    return SignedGraph(logit_weights(rows));
}

GroundTruth ground_truth(const FeatureMatrix& theta) {
    theta.validate();
    GroundTruth gt;
    gt.k = theta.k;
    gt.labels.resize(theta.n);
    gt.strength.assign(theta.n, Strength::fringe);
    gt.argmax_tie.assign(theta.n, 0);
    for (int i = 0; i < theta.n; ++i) {
        int arg = 0;
        double best = theta(i, 0);
        for (int j = 1; j < theta.k; ++j) {
            const double v = theta(i, j);
            if (v > best) {
                best = v;
                arg = j;
            } else if (v == best) {
                gt.argmax_tie[i] = 1;  // lowest index wins
            }
        }
        if (best > 0.5) {
            gt.labels[i] = arg;
            gt.strength[i] = (best >= kStrongCutoff) ? Strength::strong : Strength::fringe;
        } else {
            gt.labels[i] = kStray;
        }
    }
    return gt;
}

std::vector<std::vector<int>> filter_by_strength(const FeatureMatrix& theta,
                                                 const GroundTruth& gt, double cutoff) {
    if (!(cutoff > 0.5) || !(cutoff <= 1.0))
        throw InvalidParameter("filter_by_strength: cutoff must lie in (0.5, 1]");
    theta.validate();
    std::vector<std::vector<int>> sets(gt.k);
    for (int j = 0; j < gt.k; ++j)
        for (int i = 0; i < theta.n; ++i)
            if (theta(i, j) >= cutoff) sets[j].push_back(i);
    return sets;
}

NfmInstance generate_instance(int n, int k, const std::vector<double>& alpha, uint64_t seed) {
    NfmInstance inst;
    inst.n = n;
    inst.k = k;
    inst.alpha = alpha;
    inst.seed = seed;
    inst.theta = sample_dirichlet(n, k, alpha, seed);
    inst.graph = build_weights(inst.theta);
    inst.truth = ground_truth(inst.theta);
    return inst;
}

std::vector<std::string> validate_instance(const NfmInstance& inst) {
    std::vector<std::string> bad;
    const auto& w = inst.graph.weights();
    const auto& gt = inst.truth;
    for (int i = 0; i < inst.n; ++i)
        for (int j = i + 1; j < inst.n; ++j) {
            const bool i_stray = gt.labels[i] == kStray;
            const bool j_stray = gt.labels[j] == kStray;
            std::ostringstream msg;
            if (i_stray || j_stray) {
                if (!(w(i, j) < 0.0)) {
                    msg << "stray edge (" << i << "," << j << ") not negative: " << w(i, j);
                    bad.push_back(msg.str());
                }
            } else if (gt.labels[i] != gt.labels[j]) {
                if (!(w(i, j) < 0.0)) {
                    msg << "cross-cluster edge (" << i << "," << j
                        << ") not negative: " << w(i, j);
                    bad.push_back(msg.str());
                }
            } else if (gt.strength[i] == Strength::strong &&
                       gt.strength[j] == Strength::strong) {
                if (!(w(i, j) >= 0.0)) {
                    msg << "strong-strong edge (" << i << "," << j
                        << ") negative: " << w(i, j);
                    bad.push_back(msg.str());
                }
            }
        }
    return bad;
}

namespace {

nlohmann::json matrix_to_rows(const SymMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < m.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < m.n(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

const char* strength_name(const GroundTruth& gt, int i) {
    if (gt.labels[i] == kStray) return "stray";
    return gt.strength[i] == Strength::strong ? "strong" : "fringe";
}

}  // namespace

std::string instance_to_json(const NfmInstance& inst) {
    nlohmann::json j;
    j["n"] = inst.n;
    j["k"] = inst.k;
    j["alpha"] = inst.alpha;
    j["seed"] = inst.seed;
    nlohmann::json theta = nlohmann::json::array();
    for (int i = 0; i < inst.n; ++i) theta.push_back(inst.theta.row(i));
    j["theta"] = std::move(theta);
    j["W"] = matrix_to_rows(inst.graph.weights());
    j["labels"] = inst.truth.labels;
    nlohmann::json strength = nlohmann::json::array();
    for (int i = 0; i < inst.n; ++i) strength.push_back(strength_name(inst.truth, i));
    j["strength"] = std::move(strength);
    nlohmann::json ties = nlohmann::json::array();
    for (int i = 0; i < inst.n; ++i)
        if (inst.truth.argmax_tie[i]) ties.push_back(i);
    j["ties"] = std::move(ties);
    return j.dump(2) + "\n";
}

NfmInstance instance_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    NfmInstance inst;
    inst.n = j.at("n").get<int>();
    inst.k = j.at("k").get<int>();
    inst.alpha = j.at("alpha").get<std::vector<double>>();
    inst.seed = j.at("seed").get<uint64_t>();
    inst.theta.n = inst.n;
    inst.theta.k = inst.k;
    inst.theta.theta.reserve(static_cast<size_t>(inst.n) * inst.k);
    for (const auto& row : j.at("theta"))
        for (const auto& v : row) inst.theta.theta.push_back(v.get<double>());
    std::vector<double> w;
    w.reserve(static_cast<size_t>(inst.n) * inst.n);
    for (const auto& row : j.at("W"))
        for (const auto& v : row) w.push_back(v.get<double>());
    inst.graph = SignedGraph(SymMatrix(inst.n, w));
    inst.truth.k = inst.k;
    inst.truth.labels = j.at("labels").get<std::vector<int>>();
    inst.truth.strength.assign(inst.n, Strength::fringe);
    inst.truth.argmax_tie.assign(inst.n, 0);
    const auto& strength = j.at("strength");
    for (int i = 0; i < inst.n; ++i)
        if (strength[i].get<std::string>() == "strong")
            inst.truth.strength[i] = Strength::strong;
    if (j.contains("ties"))
        for (const auto& v : j["ties"]) inst.truth.argmax_tie[v.get<int>()] = 1;
    return inst;
}

void write_instance(const NfmInstance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot open for writing: " + path);
    out << instance_to_json(inst);
}

NfmInstance read_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return instance_from_json(buf.str());
}

}  // namespace corrclust
