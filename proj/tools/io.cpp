#include "io.hpp"

#include "cone_hull/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace cone_hull::io {

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void reject_unknown(const Json& obj, const std::string& path, const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw SchemaError(path + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) throw SchemaError(child(path, it.key()) + ": unknown field");
}

const Json& require(const Json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) throw SchemaError(child(path, key) + ": missing required field");
    return obj.at(key);
}

const Json& require_array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    return j;
}

double real_value(const Json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        try {
            return to_double(parse_rational(j.get<std::string>()));
        } catch (const SchemaError& e) {
            throw SchemaError(path + ": " + e.what());
        }
    }
    throw SchemaError(path + ": expected a number or a rational string");
}

Complex complex_value(const Json& j, const std::string& path) {
    if (j.is_object()) {
        if (j.contains("mod") || j.contains("arg")) {
            reject_unknown(j, path, {"mod", "arg"});
            const double mod = real_value(require(j, path, "mod"), child(path, "mod"));
            const double arg = j.contains("arg") ? real_value(j.at("arg"), child(path, "arg")) : 0.0;
            if (mod < 0) throw SchemaError(child(path, "mod") + ": modulus must be nonnegative");
            return std::polar(mod, arg);
        }
        reject_unknown(j, path, {"re", "im"});
        const double re = real_value(require(j, path, "re"), child(path, "re"));
        const double im = j.contains("im") ? real_value(j.at("im"), child(path, "im")) : 0.0;
        return {re, im};
    }
    return {real_value(j, path), 0.0};
}

bool scalar_array(const Json& j) {
    for (const auto& e : j)
        if (e.is_structured()) return false;
    return true;
}

void write_scalar(const Json& j, std::ostream& out) {
    if (j.is_number_float()) {
        const double x = j.get<double>();
        out << (std::isfinite(x) ? format_double(x) : std::string("null"));
    } else {
        out << j.dump();
    }
}

void write_value(const Json& j, std::ostream& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(indent * depth), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out << ",\n";
            first = false;
            out << pad << Json(it.key()).dump() << ": ";
            write_value(it.value(), out, indent, depth + 1);
        }
        out << "\n" << close << "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out << "[]";
            return;
        }
        if (scalar_array(j)) {
            out << "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ", ";
                write_scalar(j[i], out);
            }
            out << "]";
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ",\n";
            out << pad;
            write_value(j[i], out, indent, depth + 1);
        }
        out << "\n" << close << "]";
    } else {
        write_scalar(j, out);
    }
}

std::string csv_cell(const Json& j) {
    if (j.is_number_float()) return format_double(j.get<double>());
    if (j.is_string()) return j.get<std::string>();
    if (j.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? " " : "") + csv_cell(j[i]);
        return s;
    }
    return j.dump();
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !scalar_array(j)) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out << prefix << "," << csv_cell(j) << "\n";
    }
}

}  // namespace

const std::set<std::string>& bundle_fields() {
    static const std::set<std::string> fields{
        "S", "K", "series", "x", "xi", "points", "z", "w", "t", "J", "alphas", "R", "r", "beta",
        "D", "m", "m_max", "N", "N_min", "N_max", "depth", "count", "grid", "dim", "vertices"};
    return fields;
}

Document::Document(Json root) : root_(std::move(root)) { reject_unknown(root_, "$", bundle_fields()); }

Document Document::from_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("$: malformed JSON: ") + e.what());
    }
    return Document(std::move(j));
}

Document Document::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("$: cannot read input file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

const Json& Document::field(const std::string& key) const { return require(root_, "$", key); }

Rational Document::rational_at(const Json& j, const std::string& path) const {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const SchemaError& e) {
            throw SchemaError(path + ": " + e.what());
        }
    }
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_number_unsigned()) return Rational(static_cast<long long>(j.get<unsigned long long>()));
    if (j.is_number_float()) {
        const double x = j.get<double>();
        if (!std::isfinite(x)) throw SchemaError(path + ": number is not finite");
        floating_ = true;
        return exact_rational(x);
    }
    throw SchemaError(path + ": expected a number or a rational string");
}

VectorQ Document::vector_at(const Json& j, const std::string& path, std::optional<Eigen::Index> dim) const {
    require_array(j, path);
    if (dim && static_cast<Eigen::Index>(j.size()) != *dim)
        throw SchemaError(path + ": expected " + std::to_string(*dim) + " entries, found " + std::to_string(j.size()));
    VectorQ v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_at(j[i], child(path, i));
    return v;
}

long long Document::integer_at(const Json& j, const std::string& path) const {
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_string()) {
        Rational q;
        try {
            q = parse_rational(j.get<std::string>());
        } catch (const SchemaError& e) {
            throw SchemaError(path + ": " + e.what());
        }
        if (denominator(q) == 1) return numerator(q).convert_to<long long>();
    }
    throw SchemaError(path + ": expected an integer");
}

RationalPolytope Document::polytope(const std::string& key) const {
    const bool bare = key == "S" && !root_.contains("S") && root_.contains("vertices");
    const Json& j = bare ? root_ : field(key);
    const std::string path = bare ? "$" : "$." + key;
    if (!bare) reject_unknown(j, path, {"dim", "vertices"});
    const Json& verts = require_array(require(j, path, "vertices"), child(path, "vertices"));
    if (verts.empty()) throw SchemaError(child(path, "vertices") + ": needs at least one vertex");
    std::optional<Eigen::Index> dim;
    if (j.contains("dim")) dim = integer_at(j.at("dim"), child(path, "dim"));
    if (!dim) dim = static_cast<Eigen::Index>(require_array(verts[0], child(child(path, "vertices"), 0)).size());
    if (*dim < 1) throw SchemaError(child(path, "dim") + ": dimension must be >= 1");
    std::vector<VectorQ> pts;
    for (std::size_t i = 0; i < verts.size(); ++i) pts.push_back(vector_at(verts[i], child(child(path, "vertices"), i), dim));
    return RationalPolytope(*dim, pts);
}

ReinhardtBody<Rational> Document::body(Eigen::Index dim, const std::string& key) const {
    const Json& j = field(key);
    const std::string path = "$." + key;
    reject_unknown(j, path, {"dim", "pieces"});
    if (j.contains("dim") && integer_at(j.at("dim"), child(path, "dim")) != dim)
        throw SchemaError(child(path, "dim") + ": K must have the dimension of S (" + std::to_string(dim) + ")");
    const std::string ppath = child(path, "pieces");
    const Json& pieces = require_array(require(j, path, "pieces"), ppath);
    if (pieces.empty()) throw SchemaError(ppath + ": needs at least one piece");
    std::vector<ReinhardtPiece<Rational>> out;
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        const std::string pp = child(ppath, p);
        reject_unknown(pieces[p], pp, {"J", "A"});
        ReinhardtPiece<Rational> piece;
        if (pieces[p].contains("J")) {
            const Json& jj = require_array(pieces[p].at("J"), child(pp, "J"));
            for (std::size_t i = 0; i < jj.size(); ++i) {
                const long long c = integer_at(jj[i], child(child(pp, "J"), i));
                if (c < 1 || c > dim) throw SchemaError(child(child(pp, "J"), i) + ": coordinate must lie in 1.." + std::to_string(dim));
                if (!piece.J.empty() && c - 1 <= piece.J.back())
                    throw SchemaError(child(pp, "J") + ": coordinates must be strictly increasing");
                piece.J.push_back(static_cast<Eigen::Index>(c - 1));
            }
        } else {
            for (Eigen::Index c = 0; c < dim; ++c) piece.J.push_back(c);
        }
        const Json& a = require_array(require(pieces[p], pp, "A"), child(pp, "A"));
        if (a.empty()) throw SchemaError(child(pp, "A") + ": needs at least one point");
        for (std::size_t i = 0; i < a.size(); ++i)
            piece.A.push_back(vector_at(a[i], child(child(pp, "A"), i), static_cast<Eigen::Index>(piece.J.size())));
        out.push_back(std::move(piece));
    }
    return ReinhardtBody<Rational>(dim, std::move(out));
}

ConeSeries Document::series(const RationalPolytope& s, const std::string& key) const {
    const Json& j = field(key);
    const std::string path = "$." + key;
    reject_unknown(j, path, {"terms", "geometric"});
    if (j.contains("geometric") == j.contains("terms"))
        throw SchemaError(path + ": give exactly one of \"terms\" or \"geometric\"");
    if (j.contains("geometric")) {
        const Json& g = j.at("geometric");
        const std::string gp = child(path, "geometric");
        reject_unknown(g, gp, {"alpha0", "c_re", "c_im"});
        const Json& a = require_array(require(g, gp, "alpha0"), child(gp, "alpha0"));
        if (static_cast<Eigen::Index>(a.size()) != s.dim())
            throw SchemaError(child(gp, "alpha0") + ": expected " + std::to_string(s.dim()) + " entries");
        LatticeVector alpha0(s.dim());
        for (std::size_t i = 0; i < a.size(); ++i) alpha0(static_cast<Eigen::Index>(i)) = integer_at(a[i], child(child(gp, "alpha0"), i));
        const double re = real_value(require(g, gp, "c_re"), child(gp, "c_re"));
        const double im = g.contains("c_im") ? real_value(g.at("c_im"), child(gp, "c_im")) : 0.0;
        return ConeSeries::geometric(s, alpha0, {re, im});
    }
    const std::string tp = child(path, "terms");
    const Json& terms = require_array(j.at("terms"), tp);
    std::vector<SeriesTerm> out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string ip = child(tp, i);
        reject_unknown(terms[i], ip, {"alpha", "re", "im"});
        const Json& a = require_array(require(terms[i], ip, "alpha"), child(ip, "alpha"));
        if (static_cast<Eigen::Index>(a.size()) != s.dim())
            throw SchemaError(child(ip, "alpha") + ": expected " + std::to_string(s.dim()) + " entries");
        LatticeVector alpha(s.dim());
        for (std::size_t k = 0; k < a.size(); ++k) alpha(static_cast<Eigen::Index>(k)) = integer_at(a[k], child(child(ip, "alpha"), k));
        const double re = real_value(require(terms[i], ip, "re"), child(ip, "re"));
        const double im = terms[i].contains("im") ? real_value(terms[i].at("im"), child(ip, "im")) : 0.0;
        out.push_back({alpha, {re, im}});
    }
    return ConeSeries::from_terms(s, std::move(out));
}

Rational Document::rational(const std::string& key) const { return rational_at(field(key), "$." + key); }

VectorQ Document::rational_vector(const std::string& key, std::optional<Eigen::Index> dim) const {
    return vector_at(field(key), "$." + key, dim);
}

std::vector<VectorQ> Document::rational_points(const std::string& key, Eigen::Index dim) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    std::vector<VectorQ> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_at(j[i], child(path, i), dim));
    return out;
}

LatticeVector Document::lattice_vector(const std::string& key, std::optional<Eigen::Index> dim) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    if (dim && static_cast<Eigen::Index>(j.size()) != *dim)
        throw SchemaError(path + ": expected " + std::to_string(*dim) + " entries");
    LatticeVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = integer_at(j[i], child(path, i));
    return v;
}

std::vector<LatticeVector> Document::lattice_points(const std::string& key, Eigen::Index dim) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    std::vector<LatticeVector> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string ip = child(path, i);
        const Json& row = require_array(j[i], ip);
        if (static_cast<Eigen::Index>(row.size()) != dim) throw SchemaError(ip + ": expected " + std::to_string(dim) + " entries");
        LatticeVector v(dim);
        for (std::size_t k = 0; k < row.size(); ++k) v(static_cast<Eigen::Index>(k)) = integer_at(row[k], child(ip, k));
        out.push_back(v);
    }
    return out;
}

VectorXcd Document::complex_vector(const std::string& key, Eigen::Index dim) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    if (static_cast<Eigen::Index>(j.size()) != dim) throw SchemaError(path + ": expected " + std::to_string(dim) + " entries");
    VectorXcd z(dim);
    for (std::size_t i = 0; i < j.size(); ++i) z(static_cast<Eigen::Index>(i)) = complex_value(j[i], child(path, i));
    return z;
}

std::vector<Eigen::Index> Document::index_set(const std::string& key, Eigen::Index dim) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const long long c = integer_at(j[i], child(path, i));
        if (c < 1 || c > dim) throw SchemaError(child(path, i) + ": coordinate must lie in 1.." + std::to_string(dim));
        if (std::find(out.begin(), out.end(), c - 1) != out.end()) throw SchemaError(child(path, i) + ": repeated coordinate");
        out.push_back(static_cast<Eigen::Index>(c - 1));
    }
    if (out.empty()) throw SchemaError(path + ": needs at least one coordinate");
    return out;
}

long long Document::integer(const std::string& key) const { return integer_at(field(key), "$." + key); }

double Document::real(const std::string& key) const { return real_value(field(key), "$." + key); }

std::vector<std::string> Document::strings(const std::string& key) const {
    const std::string path = "$." + key;
    const Json& j = require_array(field(key), path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) throw SchemaError(child(path, i) + ": expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_json(const Json& j, std::ostream& out, int indent) {
    write_value(j, out, indent, 0);
    out << "\n";
}

void write_csv(const Json& j, std::ostream& out) {
    if (j.contains("rows") && j.at("rows").is_array() && !j.at("rows").empty() && j.at("rows")[0].is_object()) {
        const Json& rows = j.at("rows");
        bool first = true;
        for (auto it = rows[0].begin(); it != rows[0].end(); ++it) {
            out << (first ? "" : ",") << it.key();
            first = false;
        }
        out << "\n";
        for (const auto& row : rows) {
            first = true;
            for (auto it = row.begin(); it != row.end(); ++it) {
                out << (first ? "" : ",") << csv_cell(it.value());
                first = false;
            }
            out << "\n";
        }
        return;
    }
    out << "key,value\n";
    flatten(j, "", out);
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const VectorQ& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_string(v(i)));
    return a;
}

Json to_json(const VectorXd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json to_json(const LatticeVector& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Json to_json(const VectorZ& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i).convert_to<long long>());
    return a;
}

Json to_json(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json to_json(const VectorXcd& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(to_json(v(i)));
    return a;
}

}  // namespace cone_hull::io
