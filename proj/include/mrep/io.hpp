#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mrep/changegen.hpp"
#include "mrep/multfunc.hpp"
#include "mrep/subgroup.hpp"
#include "mrep/system.hpp"

namespace mrep {

using json = nlohmann::json;

json read_json_file(const std::string& path);

// "alphabet": [...] with an optional "involution": {"a": "A", ...}; without
// one, names are paired with their case-swapped form.
Alphabet alphabet_from_json(const json& j, const std::string& key = "alphabet",
                            const std::string& involution_key = "involution");
json alphabet_to_json(const Alphabet& al);

// Entries are [re, im] pairs or plain reals.
Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what);
json matrix_to_json(const Mat& m);
Vec vector_from_json(const json& j, Eigen::Index size, const std::string& what);
json vector_to_json(const Vec& v);

// {"alphabet", "involution"?, "dims", "H": {"b|a": ...}, "B": {"a": ...}}.
// Absent H or B entries are zero. When `expected` is given the file's
// letters are matched to it by name, so any letter order is accepted.
MatrixSystem system_from_json(const json& j, const Alphabet* expected = nullptr);
json system_to_json(const MatrixSystem& sys);

// {"target_alphabet": [...], "target_involution"?, "images": {"alpha": "ab"}};
// images of inverse letters are derived when absent.
GeneratorMap genmap_from_json(const json& j, const Alphabet& source);

// {"alphabet"?, "generators": [...]} or {"alphabet"?, "index": n,
// "transitions": {"a": [...]}}. The alphabet defaults to `fallback`.
CosetAutomaton subgroup_from_json(const json& j, const Alphabet& fallback);

// {"shadows": [{"base": "ab", "vector": [...]}, ...], "depth"?}: the sum of
// the shadows, refined to "depth" if given.
MultFunc function_from_json(const json& j, std::shared_ptr<const MatrixSystem> sys);
// Depth, squared norm and the nonzero sphere values.
json function_to_json(const MultFunc& f);

json words_to_json(const Alphabet& al, const std::vector<Word>& ws);

}  // namespace mrep
