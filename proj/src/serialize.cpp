#include "novbar/serialize.hpp"

#include <sstream>

namespace novbar {

namespace {

std::string key_of(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::pair<std::size_t, std::size_t> parse_key(const std::string& key) {
    if (key.size() < 5 || key.front() != '(' || key.back() != ')')
        throw std::invalid_argument("bad matrix key: '" + key + "'");
    std::size_t comma = key.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad matrix key: '" + key + "'");
    return {std::stoul(key.substr(1, comma - 1)),
            std::stoul(key.substr(comma + 1, key.size() - comma - 2))};
}

}  // namespace

Json to_json(const FilteredComplex& c) {
    Json j;
    j["field"] = c.field.str();
    j["convention"] = c.convention == Convention::Raw ? "raw" : "orthonormalized";
    Json basis = Json::array();
    for (const auto& b : c.basis) {
        Json e;
        e["label"] = b.label;
        e["degree"] = b.degree;
        e["action"] = to_string(b.action);
        basis.push_back(std::move(e));
    }
    j["basis"] = std::move(basis);
    Json diff = Json::object();
    for (std::size_t i = 0; i < c.rank(); ++i)
        for (std::size_t jj = 0; jj < c.rank(); ++jj)
            if (!c.diff.at(i, jj).is_zero()) diff[key_of(i, jj)] = c.diff.at(i, jj).str();
    j["diff"] = std::move(diff);
    return j;
}

FilteredComplex complex_from_json(const Json& j) {
    FilteredComplex c;
    c.field = GroundField::parse(j.at("field").get<std::string>());
    c.convention = Convention::Orthonormalized;
    if (j.contains("convention")) {
        std::string conv = j.at("convention").get<std::string>();
        if (conv == "raw")
            c.convention = Convention::Raw;
        else if (conv != "orthonormalized")
            throw std::invalid_argument("unknown convention: '" + conv + "'");
    }
    for (const auto& e : j.at("basis")) {
        BasisElement b;
        b.label = e.at("label").get<std::string>();
        b.degree = e.value("degree", 0);
        if (e.contains("action")) {
            if (e.at("action").is_string())
                b.action = parse_rational(e.at("action").get<std::string>());
            else
                b.action = Rational(e.at("action").get<long>());
        }
        c.basis.push_back(std::move(b));
    }
    const std::size_t n = c.basis.size();
    c.diff = Matrix(c.field, n, n);
    for (const auto& [key, value] : j.at("diff").items()) {
        auto [row, col] = parse_key(key);
        if (row >= n || col >= n)
            throw std::invalid_argument("diff entry " + key + " out of range");
        c.diff.at(row, col) = NovikovScalar::parse(c.field, value.get<std::string>());
    }
    return c;
}

Json to_json(const Barcode& b) {
    Json j;
    Json finite = Json::array();
    for (std::size_t i = 0; i < b.finite.size();) {
        std::size_t k = i;
        while (k < b.finite.size() && b.finite[k] == b.finite[i]) ++k;
        Json bar;
        bar["start"] = to_string(b.finite[i].first);
        bar["end"] = to_string(b.finite[i].second);
        bar["mult"] = k - i;
        finite.push_back(std::move(bar));
        i = k;
    }
    j["finite"] = std::move(finite);
    Json infinite = Json::array();
    for (std::size_t i = 0; i < b.infinite.size();) {
        std::size_t k = i;
        while (k < b.infinite.size() && b.infinite[k] == b.infinite[i]) ++k;
        Json bar;
        bar["start"] = to_string(b.infinite[i]);
        bar["mult"] = k - i;
        infinite.push_back(std::move(bar));
        i = k;
    }
    j["infinite"] = std::move(infinite);
    return j;
}

Barcode barcode_from_json(const Json& j) {
    Barcode b;
    if (j.contains("finite"))
        for (const auto& bar : j.at("finite")) {
            Rational start = parse_rational(bar.at("start").get<std::string>());
            Rational end = parse_rational(bar.at("end").get<std::string>());
            long mult = bar.value("mult", 1);
            if (mult <= 0) throw std::invalid_argument("bar multiplicity must be positive");
            for (long k = 0; k < mult; ++k) b.finite.push_back({start, end});
        }
    if (j.contains("infinite"))
        for (const auto& bar : j.at("infinite")) {
            Rational start = parse_rational(bar.at("start").get<std::string>());
            long mult = bar.value("mult", 1);
            if (mult <= 0) throw std::invalid_argument("bar multiplicity must be positive");
            for (long k = 0; k < mult; ++k) b.infinite.push_back(start);
        }
    b.normalize();
    return b;
}

Json to_json(const BarSpectrum& s) {
    Json j;
    j["B"] = s.B;
    Json torsion = Json::array();
    for (const auto& t : s.torsion) torsion.push_back(to_string(t));
    j["torsion"] = std::move(torsion);
    j["beta_tot"] = to_string(s.beta_total());
    j["beta_max"] = to_string(s.beta_max());
    j["concise"] = s.concise;
    return j;
}

Json matrix_to_json(const Matrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    Json entries = Json::object();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t jj = 0; jj < m.cols(); ++jj)
            if (!m.at(i, jj).is_zero()) entries[key_of(i, jj)] = m.at(i, jj).str();
    j["entries"] = std::move(entries);
    return j;
}

Matrix matrix_from_json(const GroundField& f, const Json& j) {
    std::size_t rows = j.at("rows").get<std::size_t>();
    std::size_t cols = j.at("cols").get<std::size_t>();
    Matrix m(f, rows, cols);
    for (const auto& [key, value] : j.at("entries").items()) {
        auto [row, col] = parse_key(key);
        if (row >= rows || col >= cols)
            throw std::invalid_argument("matrix entry " + key + " out of range");
        m.at(row, col) = NovikovScalar::parse(f, value.get<std::string>());
    }
    return m;
}

std::vector<std::vector<std::size_t>> blocks_from_json(const Json& j) {
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto& group : j.at("blocks")) {
        std::vector<std::size_t> b;
        for (const auto& idx : group) b.push_back(idx.get<std::size_t>());
        blocks.push_back(std::move(b));
    }
    return blocks;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string digest(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace novbar
