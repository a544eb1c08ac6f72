#include "qpr/config.hpp"

#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "qpr/errors.hpp"
#include "qpr/io.hpp"

namespace qpr {

void GridSpec::validate() const {
    if (h1_count < 1 || h2_count < 1) throw UsageError("grid: counts must be positive");
    if (h1_max < h1_min || h2_max < h2_min) throw UsageError("grid: empty range");
}

double GridSpec::h1_at(int i) const {
    if (h1_count == 1) return h1_min;
    return h1_min + (h1_max - h1_min) * i / (h1_count - 1);
}

double GridSpec::h2_at(int j) const {
    if (h2_count == 1) return h2_min;
    return h2_min + (h2_max - h2_min) * j / (h2_count - 1);
}

void RunConfig::validate() const {
    grid.validate();
    if (n_qubits < 3 || n_qubits > 15 || n_qubits % 2 == 0)
        throw UsageError("config: n_qubits must be odd and in [3, 15]");
    if (layers < 1) throw UsageError("config: layers must be >= 1");
    if (learning_rate <= 0) throw UsageError("config: learning_rate must be > 0");
    if (epochs < 1) throw UsageError("config: epochs must be >= 1");
    if (train_size < 1) throw UsageError("config: train_size must be >= 1");
    if (accuracy_repeats < 2) throw UsageError("config: accuracy_repeats must be >= 2");
    if (sweep_h2_step <= 0) throw UsageError("config: sweep_h2_step must be > 0");
    if (shots < 0) throw UsageError("config: shots must be >= 0");
    for (const int s : accuracy_sizes)
        if (s < 1) throw UsageError("config: accuracy_sizes entries must be >= 1");
}

namespace {

std::string join_sizes(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

std::string RunConfig::dataset_canonical() const {
    std::ostringstream os;
    os << "grid_h1_count=" << grid.h1_count << '\n'
       << "grid_h1_max=" << fmt_g17(grid.h1_max) << '\n'
       << "grid_h1_min=" << fmt_g17(grid.h1_min) << '\n'
       << "grid_h2_count=" << grid.h2_count << '\n'
       << "grid_h2_max=" << fmt_g17(grid.h2_max) << '\n'
       << "grid_h2_min=" << fmt_g17(grid.h2_min) << '\n'
       << "j=" << fmt_g17(j) << '\n'
       << "n_qubits=" << n_qubits << '\n'
       << "seed=" << seed << '\n'
       << "tau_a=" << fmt_g17(tau_a) << '\n'
       << "tau_s=" << fmt_g17(tau_s) << '\n';
    return os.str();
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "accuracy_repeats=" << accuracy_repeats << '\n'
       << "accuracy_sizes=" << join_sizes(accuracy_sizes) << '\n'
       << "cache_states=" << (cache_states ? "true" : "false") << '\n'
       << "epochs=" << epochs << '\n'
       << dataset_canonical()
       << "layers=" << layers << '\n'
       << "learning_rate=" << fmt_g17(learning_rate) << '\n'
       << "shots=" << shots << '\n'
       << "sweep_h1=" << fmt_g17(sweep_h1) << '\n'
       << "sweep_h2_max=" << fmt_g17(sweep_h2_max) << '\n'
       << "sweep_h2_min=" << fmt_g17(sweep_h2_min) << '\n'
       << "sweep_h2_step=" << fmt_g17(sweep_h2_step) << '\n'
       << "train_size=" << train_size << '\n';
    return os.str();
}

std::string RunConfig::digest() const { return sha256_hex(canonical()); }
std::string RunConfig::dataset_digest() const { return sha256_hex(dataset_canonical()); }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config: bad integer for '" + key + "': " + v);
    }
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw UsageError("config: bad number for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw UsageError("config: bad boolean for '" + key + "': " + v);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(static_cast<int>(parse_long(key, item)));
    }
    if (out.empty()) throw UsageError("config: empty list for '" + key + "'");
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string val = trim(stripped.substr(eq + 1));

        if (key == "n_qubits") cfg.n_qubits = static_cast<int>(parse_long(key, val));
        else if (key == "j") cfg.j = parse_double(key, val);
        else if (key == "grid_h1_min") cfg.grid.h1_min = parse_double(key, val);
        else if (key == "grid_h1_max") cfg.grid.h1_max = parse_double(key, val);
        else if (key == "grid_h1_count") cfg.grid.h1_count = static_cast<int>(parse_long(key, val));
        else if (key == "grid_h2_min") cfg.grid.h2_min = parse_double(key, val);
        else if (key == "grid_h2_max") cfg.grid.h2_max = parse_double(key, val);
        else if (key == "grid_h2_count") cfg.grid.h2_count = static_cast<int>(parse_long(key, val));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(val));
        else if (key == "tau_s") cfg.tau_s = parse_double(key, val);
        else if (key == "tau_a") cfg.tau_a = parse_double(key, val);
        else if (key == "cache_states") cfg.cache_states = parse_bool(key, val);
        else if (key == "layers") cfg.layers = static_cast<int>(parse_long(key, val));
        else if (key == "learning_rate") cfg.learning_rate = parse_double(key, val);
        else if (key == "epochs") cfg.epochs = static_cast<int>(parse_long(key, val));
        else if (key == "train_size") cfg.train_size = static_cast<int>(parse_long(key, val));
        else if (key == "accuracy_sizes") cfg.accuracy_sizes = parse_int_list(key, val);
        else if (key == "accuracy_repeats") cfg.accuracy_repeats = static_cast<int>(parse_long(key, val));
        else if (key == "sweep_h1") cfg.sweep_h1 = parse_double(key, val);
        else if (key == "sweep_h2_min") cfg.sweep_h2_min = parse_double(key, val);
        else if (key == "sweep_h2_max") cfg.sweep_h2_max = parse_double(key, val);
        else if (key == "sweep_h2_step") cfg.sweep_h2_step = parse_double(key, val);
        else if (key == "shots") cfg.shots = parse_long(key, val);
        else if (key == "jobs") cfg.jobs = static_cast<int>(parse_long(key, val));
        else if (key == "out_dir") cfg.out_dir = val;
        else throw UsageError("config: unknown key '" + key + "'");
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

void apply_jobs_setting(const RunConfig& config) {
    int jobs = config.jobs;
    if (jobs <= 0) {
        if (const char* env = std::getenv("QPR_JOBS")) jobs = std::atoi(env);
    }
    if (jobs > 0) omp_set_num_threads(jobs);
}

}  // namespace qpr
