#ifndef OPKAN_IO_HPP
#define OPKAN_IO_HPP

#include <string>

#include <json.hpp>

#include "opkan/category.hpp"
#include "opkan/grothendieck.hpp"
#include "opkan/kanext.hpp"
#include "opkan/operad.hpp"
#include "opkan/report.hpp"
#include "opkan/sset.hpp"

namespace opkan {

using ojson = nlohmann::ordered_json;

/** Parses text, throwing ParseError with the line and column of the first syntax error. */
ojson parse_text(const std::string& text);
/** Two-space indented dump with a trailing newline. */
std::string canonical_text(const ojson& j);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/** {level, gen, degens}; gen indexes the generator level, degens is the word outermost first. */
ojson to_json(const Simplex& s);
Simplex simplex_from_json(const ojson& j);

/** {dim_bound, levels, faces}; faces[level][g] lists the faces of generator g. */
ojson to_json(const FiniteSimplicialSet& X);
FiniteSimplicialSet sset_from_json(const ojson& j);

/**
 * {objects, arrows}: arrows lists the non-identity arrows as {src, dst, name, composites}.
 * Arrow references are positions in that list, and -1 - x is the identity of object x.
 * composites holds pairs [f, g o f] for the arrow g.
 */
ojson to_json(const FiniteCategory& C);
FiniteCategory category_from_json(const ojson& j);
/** Reference of arrow a in the form above. */
int arrow_reference(const FiniteCategory& C, int a);
/** Arrow index in a category read back by category_from_json. */
int canonical_arrow_index(const FiniteCategory& C, int a);

/** {name, base, fibers, transition}; transition is indexed by canonical base arrow and
 *  holds {obj, arr} with arrows as references into the target fiber. */
ojson to_json(const CategoryDiagram& F);
CategoryDiagram diagram_from_json(const ojson& j);

/** {elements, unit, table}. */
ojson to_json(const Monoid& M);
Monoid monoid_from_json(const ojson& j);

/** {name, n, X, x_side, Y, y_side, p, S, Sigma}; p lists the image of every generator of X
 *  per level and S lists member generators of Y per level. */
ojson to_json(const HeadsTailsInput& in);
HeadsTailsInput heads_tails_from_json(const ojson& j);

/** {name, C, c0, sigma, bound}. */
ojson to_json(const Lemma3125Input& in);
Lemma3125Input lemma_3125_from_json(const ojson& j);

ojson to_json(const Report& r, bool timing = false);
std::string render_text(const Report& r, bool timing = false);

template <class T>
std::string export_text(const T& x) {
    return canonical_text(to_json(x));
}

/** Empty when export, import and export again give identical bytes. */
std::string roundtrip_failure(const FiniteSimplicialSet& X);
std::string roundtrip_failure(const FiniteCategory& C);
std::string roundtrip_failure(const CategoryDiagram& F);
std::string roundtrip_failure(const Monoid& M);
std::string roundtrip_failure(const HeadsTailsInput& in);
std::string roundtrip_failure(const Lemma3125Input& in);

}  // namespace opkan

#endif
