#include "vmorl/nn/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "vmorl/core/number_format.hpp"

namespace vmorl::nn {
namespace {

constexpr int kVersion = 1;

void write_network(std::ostream& os, const Mlp& net, const char* kind) {
    os << "vmorl-checkpoint " << kVersion << '\n' << "kind " << kind << '\n' << "sizes";
    for (auto s : net.sizes()) os << ' ' << s;
    os << "\nactivations";
    for (auto a : net.activations()) os << ' ' << (a == Activation::tanh ? "tanh" : "linear");
    os << "\nparameters " << net.parameter_count() << '\n';
    for (double p : net.parameters()) os << format_exact(p) << '\n';
}

std::string expect_line(std::istream& is, const std::string& keyword) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("checkpoint: unexpected end of file, wanted '" + keyword + "'");
    if (line.rfind(keyword, 0) != 0) throw std::runtime_error("checkpoint: expected '" + keyword + "', got '" + line + "'");
    return line.substr(keyword.size());
}

std::vector<double> read_values(std::istream& is, std::size_t count) {
    std::vector<double> v(count);
    std::string line;
    for (auto& x : v) {
        if (!std::getline(is, line)) throw std::runtime_error("checkpoint: truncated value list");
        x = parse_double(line);
    }
    return v;
}

Mlp read_network(std::istream& is, const std::string& kind) {
    std::istringstream header(expect_line(is, "vmorl-checkpoint"));
    int version = 0;
    header >> version;
    if (version != kVersion) throw std::runtime_error("checkpoint: unsupported version");
    const auto k = expect_line(is, "kind ");
    if (k != kind) throw std::runtime_error("checkpoint: expected kind " + kind + ", found " + k);

    std::istringstream sizes_in(expect_line(is, "sizes"));
    std::vector<std::size_t> sizes;
    for (std::size_t s; sizes_in >> s;) sizes.push_back(s);
    std::istringstream acts_in(expect_line(is, "activations"));
    std::vector<Activation> acts;
    for (std::string a; acts_in >> a;) {
        if (a == "tanh") acts.push_back(Activation::tanh);
        else if (a == "linear") acts.push_back(Activation::linear);
        else throw std::runtime_error("checkpoint: unknown activation " + a);
    }
    Mlp net(std::move(sizes), std::move(acts));
    const std::size_t count = std::stoul(expect_line(is, "parameters "));
    if (count != net.parameter_count()) throw std::runtime_error("checkpoint: parameter count does not match shape");
    const auto values = read_values(is, count);
    std::copy(values.begin(), values.end(), net.parameters().begin());
    return net;
}

template <class T>
void write_file(const std::filesystem::path& path, const T& obj) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    write_checkpoint(os, obj);
}

std::ifstream open_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    return is;
}

}  // namespace

void write_checkpoint(std::ostream& os, const Mlp& net) { write_network(os, net, "mlp"); }

void write_checkpoint(std::ostream& os, const GaussianPolicy& policy) {
    write_network(os, policy.mean_network(), "gaussian_policy");
    os << "log_std " << policy.log_std().size() << '\n';
    for (double s : policy.log_std()) os << format_exact(s) << '\n';
}

Mlp read_mlp_checkpoint(std::istream& is) { return read_network(is, "mlp"); }

GaussianPolicy read_policy_checkpoint(std::istream& is) {
    Mlp mean = read_network(is, "gaussian_policy");
    const std::size_t count = std::stoul(expect_line(is, "log_std "));
    return GaussianPolicy(std::move(mean), read_values(is, count));
}

void save_checkpoint(const std::filesystem::path& path, const Mlp& net) { write_file(path, net); }
void save_checkpoint(const std::filesystem::path& path, const GaussianPolicy& policy) { write_file(path, policy); }

Mlp load_mlp_checkpoint(const std::filesystem::path& path) {
    auto is = open_file(path);
    return read_mlp_checkpoint(is);
}

GaussianPolicy load_policy_checkpoint(const std::filesystem::path& path) {
    auto is = open_file(path);
    return read_policy_checkpoint(is);
}

}  // namespace vmorl::nn
