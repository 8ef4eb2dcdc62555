#ifndef CONE_HULL_TOOLS_IO_HPP
#define CONE_HULL_TOOLS_IO_HPP

#include "cone_hull/approx.hpp"
#include "cone_hull/extremal.hpp"
#include "cone_hull/lattice.hpp"
#include "cone_hull/polytope.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cone_hull::io {

using Json = nlohmann::ordered_json;

/**
 * Parsed input bundle. Every accessor takes the JSON path of the value so
 * schema errors point at the offending field. `floating` turns true as soon as
 * a non-integer JSON number is read; commands then use the double path.
 */
class Document {
public:
    static Document from_file(const std::string& path);
    static Document from_text(const std::string& text);

    const Json& root() const { return root_; }
    bool has(const std::string& key) const { return root_.contains(key); }
    bool floating() const { return floating_; }

    RationalPolytope polytope(const std::string& key = "S") const;
    ReinhardtBody<Rational> body(Eigen::Index dim, const std::string& key = "K") const;
    ConeSeries series(const RationalPolytope& s, const std::string& key = "series") const;

    Rational rational(const std::string& key) const;
    VectorQ rational_vector(const std::string& key, std::optional<Eigen::Index> dim = std::nullopt) const;
    std::vector<VectorQ> rational_points(const std::string& key, Eigen::Index dim) const;
    LatticeVector lattice_vector(const std::string& key, std::optional<Eigen::Index> dim = std::nullopt) const;
    std::vector<LatticeVector> lattice_points(const std::string& key, Eigen::Index dim) const;
    VectorXcd complex_vector(const std::string& key, Eigen::Index dim) const;
    /// 1-based coordinate list in the document, returned 0-based.
    std::vector<Eigen::Index> index_set(const std::string& key, Eigen::Index dim) const;
    long long integer(const std::string& key) const;
    double real(const std::string& key) const;
    std::vector<std::string> strings(const std::string& key) const;

private:
    explicit Document(Json root);

    Rational rational_at(const Json& j, const std::string& path) const;
    VectorQ vector_at(const Json& j, const std::string& path, std::optional<Eigen::Index> dim) const;
    long long integer_at(const Json& j, const std::string& path) const;
    const Json& field(const std::string& key) const;

    Json root_;
    mutable bool floating_ = false;
};

/// Fields accepted at the top level of an input bundle.
const std::set<std::string>& bundle_fields();

/// Shortest decimal text with 17 significant digits.
std::string format_double(double x);

/// JSON text with every float printed through `format_double`; keys keep insertion order.
void write_json(const Json& j, std::ostream& out, int indent = 2);

/// CSV rows from a table-shaped JSON (array of flat objects) or key,value pairs otherwise.
void write_csv(const Json& j, std::ostream& out);

Json to_json(const Rational& q);
Json to_json(const VectorQ& v);
Json to_json(const VectorXd& v);
Json to_json(const LatticeVector& v);
Json to_json(const VectorZ& v);
Json to_json(const Complex& z);
Json to_json(const VectorXcd& v);

}  // namespace cone_hull::io

#endif
