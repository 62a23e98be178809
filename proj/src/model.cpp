#include "qcl/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qcl/common.hpp"

namespace qcl {

void ChainSpec::validate() const {
    if (n_sites < 2) throw ConfigError("n_sites must be >= 2");
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
    if (kind == ModelKind::xyz && boundary != Boundary::open)
        throw ConfigError("xyz chains require open boundary");
    if (kind == ModelKind::xy && delta != 0.0)
        throw ConfigError("xy chains must have delta = 0");
    if (!std::isfinite(kappa) || kappa == 0.0) throw ConfigError("kappa must be finite and nonzero");
}

Realization sample_realization(const ChainSpec& spec, const DisorderSpec& dis,
                               std::uint64_t master_seed, std::int64_t index) {
    spec.validate();
    if (index < 0) throw ConfigError("realization index must be >= 0");
    if (dis.std_dev < 0.0) throw ConfigError("disorder std_dev must be >= 0");

    const int n = spec.n_sites;
    Realization r;
    r.spec = spec;
    r.couplings = Eigen::VectorXd::Constant(n, dis.coupling_mean);
    r.fields = Eigen::VectorXd::Constant(n, dis.field_mean);
    r.realization_index = index;
    r.seed_trace = SeedTrace{master_seed, static_cast<std::uint64_t>(index), 0};

    if (dis.target != DisorderTarget::none) {
        auto stream = RngStream::derive(master_seed, static_cast<std::uint64_t>(index));
        Eigen::VectorXd& v = (dis.target == DisorderTarget::coupling) ? r.couplings : r.fields;
        const double mean = (dis.target == DisorderTarget::coupling) ? dis.coupling_mean : dis.field_mean;
        for (int i = 0; i < n; ++i) v(i) = stream.next_gaussian(mean, dis.std_dev);
    }
    return r;
}

Realization ordered_realization(const ChainSpec& spec, double j, double h) {
    spec.validate();
    Realization r;
    r.spec = spec;
    r.couplings = Eigen::VectorXd::Constant(spec.n_sites, j);
    r.fields = Eigen::VectorXd::Constant(spec.n_sites, h);
    r.realization_index = 0;
    r.seed_trace = SeedTrace{};
    return r;
}

std::string realization_to_line(const Realization& r) {
    std::ostringstream out;
    out << r.realization_index << ' ' << r.spec.n_sites;
    char buf[32];
    for (int i = 0; i < r.spec.n_sites; ++i) {
        std::snprintf(buf, sizeof buf, " %.17g", r.couplings(i));
        out << buf;
    }
    for (int i = 0; i < r.spec.n_sites; ++i) {
        std::snprintf(buf, sizeof buf, " %.17g", r.fields(i));
        out << buf;
    }
    return out.str();
}

Realization realization_from_line(const std::string& line, const ChainSpec& spec) {
    std::istringstream in(line);
    Realization r;
    r.spec = spec;
    std::int64_t index = 0;
    int n = 0;
    if (!(in >> index >> n)) throw ConfigError("malformed realization line");
    if (n != spec.n_sites) throw ConfigError("realization line does not match chain size");
    r.realization_index = index;
    r.couplings.resize(n);
    r.fields.resize(n);
    for (int i = 0; i < n; ++i)
        if (!(in >> r.couplings(i))) throw ConfigError("malformed realization line (couplings)");
    for (int i = 0; i < n; ++i)
        if (!(in >> r.fields(i))) throw ConfigError("malformed realization line (fields)");
    return r;
}

}  // namespace qcl
