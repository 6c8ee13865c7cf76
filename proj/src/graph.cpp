#include "spag/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "spag/random.hpp"

namespace spag {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_string(View view) { return view == View::Growth ? "growth" : "stationary"; }

View view_from_string(const std::string& s) {
    if (s == "growth") return View::Growth;
    if (s == "stationary") return View::Stationary;
    throw std::invalid_argument("unknown view: " + s);
}

std::vector<std::vector<std::uint32_t>> Graph::adjacency() const {
    std::vector<std::vector<std::uint32_t>> adj(n());
    for (const auto& e : edges) {
        adj[e.older].push_back(e.younger);
        adj[e.younger].push_back(e.older);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

void Graph::check_consistency() const {
    std::vector<std::uint32_t> indeg(n(), 0);
    double prev_birth = 0.0;
    for (const auto& e : edges) {
        if (e.older >= n() || e.younger >= n())
            throw std::runtime_error("graph: edge references invalid vertex id");
        if (vertices[e.older].birth >= vertices[e.younger].birth)
            throw std::runtime_error("graph: edge endpoint ages out of order");
        if (vertices[e.younger].birth < prev_birth)
            throw std::runtime_error("graph: edges not in younger-birth order");
        prev_birth = vertices[e.younger].birth;
        ++indeg[e.older];
    }
    if (indeg != indegree_at_end)
        throw std::runtime_error("graph: indegree replay mismatch");
}

void write_graph(const Graph& g, std::ostream& out) {
    out << "spag v1 view=" << to_string(g.view) << " d=" << g.params.d
        << " t=" << format_double(g.t) << " n=" << g.n() << " m=" << g.m()
        << " gamma=" << format_double(g.params.gamma)
        << " beta=" << format_double(g.params.beta) << " delta="
        << (g.params.exponential_profile() ? std::string("inf")
                                           : format_double(g.params.delta))
        << " a=" << format_double(g.params.a) << " seed=" << seed_to_hex(g.seed) << "\n";
    for (std::size_t i = 0; i < g.n(); ++i) {
        out << "v " << i << " " << format_double(g.vertices[i].birth);
        for (double c : g.vertices[i].position.coords) out << " " << format_double(c);
        out << "\n";
    }
    for (const auto& e : g.edges) out << "e " << e.older << " " << e.younger << "\n";
}

void write_graph_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_graph(g, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

double parse_double(const std::string& s, const char* what) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("graph parse: bad ") + what + ": " + s);
    }
}

std::string header_field(const std::string& token, const char* key) {
    std::string prefix = std::string(key) + "=";
    if (token.rfind(prefix, 0) != 0)
        throw std::runtime_error("graph parse: expected header field " + prefix + ", got " +
                                 token);
    return token.substr(prefix.size());
}

}  // namespace

Graph read_graph(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("graph parse: empty input");
    std::istringstream hdr(line);
    std::string magic, version, tok;
    hdr >> magic >> version;
    if (magic != "spag" || version != "v1")
        throw std::runtime_error("graph parse: bad magic line");

    Graph g;
    std::size_t n = 0, m = 0;
    hdr >> tok;
    g.view = view_from_string(header_field(tok, "view"));
    hdr >> tok;
    g.params.d = std::stoi(header_field(tok, "d"));
    hdr >> tok;
    g.t = parse_double(header_field(tok, "t"), "t");
    hdr >> tok;
    n = std::stoull(header_field(tok, "n"));
    hdr >> tok;
    m = std::stoull(header_field(tok, "m"));
    hdr >> tok;
    g.params.gamma = parse_double(header_field(tok, "gamma"), "gamma");
    hdr >> tok;
    g.params.beta = parse_double(header_field(tok, "beta"), "beta");
    hdr >> tok;
    g.params.delta = parse_double(header_field(tok, "delta"), "delta");
    hdr >> tok;
    g.params.a = parse_double(header_field(tok, "a"), "a");
    hdr >> tok;
    g.seed = parse_seed(header_field(tok, "seed"));
    if (!hdr) throw std::runtime_error("graph parse: truncated header");
    g.params.validate();

    g.vertices.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("graph parse: vertex section truncated at line " +
                                     std::to_string(i + 2));
        std::istringstream vs(line);
        std::string tag;
        std::size_t id;
        vs >> tag >> id;
        if (tag != "v" || id != i)
            throw std::runtime_error("graph parse: bad vertex line " + std::to_string(i + 2));
        SpaceTimePoint p;
        vs >> p.birth;
        p.position.coords.resize(g.params.d);
        for (int k = 0; k < g.params.d; ++k) vs >> p.position.coords[k];
        if (!vs)
            throw std::runtime_error("graph parse: bad vertex line " + std::to_string(i + 2));
        g.vertices.push_back(std::move(p));
    }
    g.indegree_at_end.assign(n, 0);
    g.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::getline(in, line))
            throw std::runtime_error("graph parse: edge section truncated at line " +
                                     std::to_string(n + i + 2));
        std::istringstream es(line);
        std::string tag;
        Edge e;
        es >> tag >> e.older >> e.younger;
        if (tag != "e" || !es || e.older >= n || e.younger >= n)
            throw std::runtime_error("graph parse: bad edge line " +
                                     std::to_string(n + i + 2));
        g.edges.push_back(e);
        ++g.indegree_at_end[e.older];
    }
    if (std::getline(in, line) && !line.empty())
        throw std::runtime_error("graph parse: trailing content after edge section");
    g.check_consistency();
    return g;
}

Graph read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    return read_graph(in);
}

}  // namespace spag
