#include "chainnorm/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chainnorm {

std::string format_double17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void escape_string(const std::string& s, std::string& out) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}

void dump_rec(const Json& v, std::string& out) {
    switch (v.type()) {
        case nlohmann::detail::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                escape_string(it.key(), out);
                out += ':';
                dump_rec(it.value(), out);
            }
            out += '}';
            break;
        }
        case nlohmann::detail::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += ',';
                first = false;
                dump_rec(e, out);
            }
            out += ']';
            break;
        }
        case nlohmann::detail::value_t::string:
            escape_string(v.get<std::string>(), out);
            break;
        case nlohmann::detail::value_t::boolean:
            out += v.get<bool>() ? "true" : "false";
            break;
        case nlohmann::detail::value_t::number_integer:
        case nlohmann::detail::value_t::number_unsigned:
        case nlohmann::detail::value_t::number_float:
            out += format_double17(v.get<double>());
            break;
        case nlohmann::detail::value_t::null:
        default:
            out += "null";
    }
}

}  // namespace

std::string dump_json17(const Json& value, int) {
    std::string out;
    dump_rec(value, out);
    out += '\n';
    return out;
}

// ---- chains ----------------------------------------------------------------

Json chain_to_json(const SimplicialChain& chain) {
    Json j;
    j["n"] = chain.n();
    j["m"] = chain.m();
    Json terms = Json::array();
    for (const auto& t : chain.terms()) {
        Json term;
        term["coef"] = t.coef;
        Json verts = Json::array();
        for (const auto& v : t.simplex.vertices()) {
            Json vv = Json::array();
            for (int i = 0; i < v.size(); ++i) vv.push_back(v[i]);
            verts.push_back(vv);
        }
        term["vertices"] = verts;
        terms.push_back(term);
    }
    j["terms"] = terms;
    return j;
}

SimplicialChain chain_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("m"))
        throw std::invalid_argument("chain JSON must carry \"n\" and \"m\"");
    SimplicialChain out(j.at("n").get<int>(), j.at("m").get<int>());
    if (!j.contains("terms")) return out;
    for (const auto& term : j.at("terms")) {
        double coef = term.at("coef").get<double>();
        std::vector<Vec> verts;
        for (const auto& vv : term.at("vertices")) {
            Vec v(static_cast<Eigen::Index>(vv.size()));
            int i = 0;
            for (const auto& x : vv) v[i++] = x.get<double>();
            verts.push_back(std::move(v));
        }
        out.add_term(coef, OrientedSimplex(std::move(verts)));
    }
    return out;
}

// ---- forms -----------------------------------------------------------------

Json form_to_json(const PolynomialForm& form) {
    Json j;
    j["degree"] = form.degree();
    j["ambient"] = form.ambient();
    Json comps = Json::object();
    for (const auto& [idx, poly] : form.components()) {
        std::string key;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i) key += ',';
            key += std::to_string(idx[i] + 1);
        }
        Json monos = Json::array();
        for (const auto& [pw, c] : poly.terms()) {
            Json mono;
            mono["coef"] = c;
            Json powers = Json::array();
            for (int e : pw) powers.push_back(e);
            mono["powers"] = powers;
            monos.push_back(mono);
        }
        comps[key] = monos;
    }
    j["components"] = comps;
    return j;
}

PolynomialForm form_from_json(const Json& j) {
    PolynomialForm out(j.at("degree").get<int>(), j.at("ambient").get<int>());
    if (!j.contains("components")) return out;
    const int m = out.ambient();
    for (auto it = j.at("components").begin(); it != j.at("components").end(); ++it) {
        std::vector<int> idx;
        std::stringstream key(it.key());
        std::string part;
        while (std::getline(key, part, ','))
            if (!part.empty()) idx.push_back(std::stoi(part) - 1);
        Polynomial poly(m);
        for (const auto& mono : it.value()) {
            std::vector<int> powers;
            for (const auto& e : mono.at("powers")) powers.push_back(e.get<int>());
            if (static_cast<int>(powers.size()) != m)
                throw std::invalid_argument("form JSON: powers length must equal the ambient dimension");
            poly.add_monomial(mono.at("coef").get<double>(), std::move(powers));
        }
        out.add_component(std::move(idx), poly);
    }
    return out;
}

// ---- witnesses -------------------------------------------------------------

Json witness_to_json(const SpanningWitness& witness) {
    Json j;
    j["lambda"] = witness.lambda;
    Json planes = Json::array();
    for (const auto& entry : witness.planes) {
        Json e;
        e["chain"] = chain_to_json(entry.chain);
        Json children = Json::array();
        for (const auto& child : entry.children) children.push_back(witness_to_json(child));
        e["children"] = children;
        planes.push_back(e);
    }
    j["planes"] = planes;
    return j;
}

SpanningWitness witness_from_json(const Json& j) {
    SpanningWitness out;
    out.lambda = j.at("lambda").get<double>();
    if (!j.contains("planes")) return out;
    for (const auto& e : j.at("planes")) {
        SpanningWitness::PlaneEntry entry{chain_from_json(e.at("chain")), {}};
        if (e.contains("children"))
            for (const auto& c : e.at("children")) entry.children.push_back(witness_from_json(c));
        out.planes.push_back(std::move(entry));
    }
    return out;
}

// ---- step functions ----------------------------------------------------------

Json step_to_json(const StepFunction& f) {
    Json j;
    Json pieces = Json::array();
    for (const auto& p : f.pieces) {
        Json piece;
        piece["a"] = p.a;
        piece["b"] = p.b;
        piece["v"] = p.value;
        pieces.push_back(piece);
    }
    j["pieces"] = pieces;
    return j;
}

StepFunction step_from_json(const Json& j) {
    StepFunction out;
    for (const auto& p : j.at("pieces"))
        out.pieces.push_back({p.at("a").get<double>(), p.at("b").get<double>(),
                              p.at("v").get<double>()});
    return out;
}

// ---- complexes ---------------------------------------------------------------

Json complex_to_json(const SpanningComplex& complex) {
    Json j;
    j["m"] = complex.m();
    j["base_dim"] = complex.base_dim();
    Json cells = Json::object();
    for (int dim = complex.base_dim(); dim <= complex.top_dim(); ++dim) {
        if (!complex.has_dim(dim)) continue;
        Json list = Json::array();
        for (const auto& cell : complex.cells(dim)) {
            Json verts = Json::array();
            for (const auto& v : cell.vertices()) {
                Json vv = Json::array();
                for (int i = 0; i < v.size(); ++i) vv.push_back(v[i]);
                verts.push_back(vv);
            }
            list.push_back(verts);
        }
        cells[std::to_string(dim)] = list;
    }
    j["cells"] = cells;
    return j;
}

SpanningComplex complex_from_json(const Json& j) {
    const int m = j.at("m").get<int>();
    const int base = j.at("base_dim").get<int>();
    SpanningComplex out(m, base);
    for (auto it = j.at("cells").begin(); it != j.at("cells").end(); ++it) {
        int dim = std::stoi(it.key());
        for (const auto& verts : it.value()) {
            std::vector<Vec> pts;
            for (const auto& vv : verts) {
                Vec v(static_cast<Eigen::Index>(vv.size()));
                int i = 0;
                for (const auto& x : vv) v[i++] = x.get<double>();
                pts.push_back(std::move(v));
            }
            out.append_cell(dim, OrientedSimplex(std::move(pts)));
        }
    }
    out.finalize();
    return out;
}

// ---- reports -----------------------------------------------------------------

namespace {

Json report_value_to_json(const ReportValue& v) {
    if (std::holds_alternative<double>(v)) return std::get<double>(v);
    if (std::holds_alternative<bool>(v)) return std::get<bool>(v);
    return std::get<std::string>(v);
}

ReportValue report_value_from_json(const Json& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number()) return j.get<double>();
    return j.get<std::string>();
}

}  // namespace

std::string ExperimentReport::to_json_text() const {
    Json j;
    j["name"] = name;
    Json params = Json::object();
    for (const auto& [k, v] : parameters) params[k] = report_value_to_json(v);
    j["parameters"] = params;
    Json jrows = Json::array();
    for (const auto& row : rows) {
        Json r = Json::object();
        for (const auto& [k, v] : row) r[k] = report_value_to_json(v);
        jrows.push_back(r);
    }
    j["rows"] = jrows;
    j["verdict"] = verdict;
    Json tols = Json::object();
    for (const auto& [k, v] : tolerances) tols[k] = v;
    j["tolerances"] = tols;
    return dump_json17(j);
}

ExperimentReport ExperimentReport::from_json_text(const std::string& text) {
    Json j = Json::parse(text);
    ExperimentReport out;
    out.name = j.at("name").get<std::string>();
    for (auto it = j.at("parameters").begin(); it != j.at("parameters").end(); ++it)
        out.parameters.emplace_back(it.key(), report_value_from_json(it.value()));
    for (const auto& r : j.at("rows")) {
        ReportRow row;
        for (auto it = r.begin(); it != r.end(); ++it)
            row.emplace_back(it.key(), report_value_from_json(it.value()));
        out.rows.push_back(std::move(row));
    }
    out.verdict = j.at("verdict").get<std::string>();
    for (auto it = j.at("tolerances").begin(); it != j.at("tolerances").end(); ++it)
        out.tolerances.emplace_back(it.key(), it.value().get<double>());
    return out;
}

std::string ExperimentReport::to_csv() const {
    std::string out;
    if (rows.empty()) return out;
    for (size_t i = 0; i < rows.front().size(); ++i) {
        if (i) out += ',';
        out += rows.front()[i].first;
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const auto& v = row[i].second;
            if (std::holds_alternative<double>(v))
                out += format_double17(std::get<double>(v));
            else if (std::holds_alternative<bool>(v))
                out += std::get<bool>(v) ? "true" : "false";
            else
                out += std::get<std::string>(v);
        }
        out += '\n';
    }
    return out;
}

// ---- files ---------------------------------------------------------------

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        size_t line = 1;
        for (size_t i = 0; i < e.byte && i < text.size(); ++i)
            if (text[i] == '\n') ++line;
        throw std::runtime_error(path + ":" + std::to_string(line) + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << content;
}

}  // namespace chainnorm
