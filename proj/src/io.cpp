#include "tricenter/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tricenter/errors.hpp"

namespace tricenter {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(bytes));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << content;
}

std::string config_hash(const nlohmann::json& config) {
    return fnv1a64_hex(config.dump());  // object keys are already sorted
}

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

void write_manifold_csv(const std::string& path, const TrichotomySystem& sys,
                        const CenterField& x, const GraphField& phi) {
    const GridSpec& g = x.grid();
    const int n = sys.dim, nk = g.xi_nodes();
    std::string out;
    out.reserve(static_cast<size_t>(g.t.n) * g.s.n * nk * 24 * (2 + g.dim_center + 3 * n));

    out += "t,s";
    for (int d = 0; d < g.dim_center; ++d) out += ",xi" + std::to_string(d + 1);
    for (int c = 0; c < n; ++c) out += ",x" + std::to_string(c + 1);
    for (int c = 0; c < n; ++c) out += ",phip" + std::to_string(c + 1);
    for (int c = 0; c < n; ++c) out += ",phim" + std::to_string(c + 1);
    out += "\n";

    double xi[3];
    Eigen::VectorXd phiv(n);
    for (int it = 0; it < g.t.n; ++it) {
        const double t = g.t.node(it);
        const Eigen::MatrixXd qp = sys.splitting.Qp(t), qm = sys.splitting.Qm(t);
        for (int is = 0; is < g.s.n; ++is) {
            const double s = g.s.node(is);
            for (int k = 0; k < nk; ++k) {
                x.xi_of(k, xi);
                append_number(out, t);
                out += ',';
                append_number(out, s);
                for (int d = 0; d < g.dim_center; ++d) {
                    out += ',';
                    append_number(out, xi[d]);
                }
                const double* xv = x.node(it, is, k);
                for (int c = 0; c < n; ++c) {
                    out += ',';
                    append_number(out, xv[c]);
                }
                Eigen::Map<const Eigen::VectorXd> pv(phi.node(it, k), n);
                const Eigen::VectorXd pp = qp * pv, pm = qm * pv;
                for (int c = 0; c < n; ++c) {
                    out += ',';
                    append_number(out, pp[c]);
                }
                for (int c = 0; c < n; ++c) {
                    out += ',';
                    append_number(out, pm[c]);
                }
                out += '\n';
            }
        }
    }
    write_file(path, out);
}

GraphField read_graph_field_csv(const std::string& path, const GridSpec& grid, int dim) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open manifold file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("manifold file is empty: " + path);

    GraphField phi(grid, dim);
    const int nk = grid.xi_nodes();
    const int fields_per_row = 2 + grid.dim_center + 3 * dim;
    long row = 0;
    std::vector<double> vals(fields_per_row);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const char* ptr = line.c_str();
        char* end = nullptr;
        for (int fidx = 0; fidx < fields_per_row; ++fidx) {
            vals[fidx] = std::strtod(ptr, &end);
            if (end == ptr) throw ConfigError("malformed manifold row " + std::to_string(row));
            ptr = (*end == ',') ? end + 1 : end;
        }
        const long it = row / (static_cast<long>(grid.s.n) * nk);
        const long is = (row / nk) % grid.s.n;
        const long k = row % nk;
        if (it >= grid.t.n) throw ConfigError("manifold file has more rows than the grid");
        if (is == 0) {
            double* node = phi.node(static_cast<int>(it), static_cast<int>(k));
            const int base = 2 + grid.dim_center + dim;
            for (int c = 0; c < dim; ++c) node[c] = vals[base + c] + vals[base + dim + c];
        }
        ++row;
    }
    if (row != static_cast<long>(grid.t.n) * grid.s.n * nk)
        throw ConfigError("manifold file row count does not match the grid");
    return phi;
}

nlohmann::json grid_to_json(const GridSpec& g) {
    return nlohmann::json{{"n_t", g.t.n},
                          {"t_max", g.t.hi},
                          {"n_s", g.s.n},
                          {"s_max", g.s.hi},
                          {"n_xi", g.xi.n},
                          {"xi_max", g.xi.hi},
                          {"dim_center", g.dim_center},
                          {"trunc_radius", g.trunc_radius},
                          {"tail_tol", g.tail_tol},
                          {"interpolation",
                           g.interp == Interp::Multilinear ? "multilinear" : "cubic"}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
    GridSpec g;
    try {
        const double t_max = j.at("t_max").get<double>();
        const double s_max = j.at("s_max").get<double>();
        const double xi_max = j.at("xi_max").get<double>();
        g.t = Axis{-t_max, t_max, j.at("n_t").get<int>()};
        g.s = Axis{-s_max, s_max, j.at("n_s").get<int>()};
        g.xi = Axis{-xi_max, xi_max, j.at("n_xi").get<int>()};
        g.dim_center = j.value("dim_center", 2);
        g.trunc_radius = j.value("trunc_radius", 0.0);
        g.tail_tol = j.value("tail_tol", 2e-4);
        const std::string interp = j.value("interpolation", "multilinear");
        if (interp == "multilinear")
            g.interp = Interp::Multilinear;
        else if (interp == "cubic")
            g.interp = Interp::Cubic;
        else
            throw ConfigError("unknown interpolation kind: " + interp);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad grid configuration: ") + e.what());
    }
    g.validate();
    return g;
}

}  // namespace tricenter
