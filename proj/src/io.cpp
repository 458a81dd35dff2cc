#include "mrep/io.hpp"

#include <fstream>
#include <map>

#include "mrep/errors.hpp"

namespace mrep {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

Alphabet alphabet_from_json(const json& j, const std::string& key, const std::string& involution_key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw InputError("missing \"" + key + "\" array");
  std::vector<std::string> names;
  for (const json& n : j.at(key)) {
    if (!n.is_string()) throw InputError("\"" + key + "\" entries must be strings");
    names.push_back(n.get<std::string>());
  }
  if (!j.contains(involution_key)) return Alphabet::with_case_convention(std::move(names));
  const json& inv = j.at(involution_key);
  if (!inv.is_object()) throw InputError("\"" + involution_key + "\" must be an object");
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
  std::vector<Letter> table(names.size(), -1);
  for (const auto& [from, to] : inv.items()) {
    if (!to.is_string() || !idx.count(from) || !idx.count(to.get<std::string>())) {
      throw InputError("involution entry " + from + " names an unknown letter");
    }
    const int a = idx[from];
    const int b = idx[to.get<std::string>()];
    if ((table[a] >= 0 && table[a] != b) || (table[b] >= 0 && table[b] != a)) {
      throw InputError("involution entries for " + from + " conflict");
    }
    table[a] = b;
    table[b] = a;
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (table[i] < 0) throw InputError("involution has no entry for " + names[i]);
  }
  return Alphabet(std::move(names), std::move(table));
}

json alphabet_to_json(const Alphabet& al) {
  json inv = json::object();
  for (Letter a = 0; a < al.size(); ++a) inv[al.name(a)] = al.name(al.inverse(a));
  return json{{"alphabet", al.names()}, {"involution", inv}};
}

namespace {

cplx scalar_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError(what + ": entries must be numbers or [re, im] pairs");
}

json scalar_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

}  // namespace

Mat matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": matrix must be an array of rows");
  // An empty array stands for any matrix with a zero dimension.
  if (j.empty() && (rows == 0 || cols == 0)) return Mat(rows, cols);
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    throw InputError(what + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InputError(what + ": row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = scalar_from_json(row[static_cast<std::size_t>(c)], what);
  }
  return m;
}

json matrix_to_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

Vec vector_from_json(const json& j, Eigen::Index size, const std::string& what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != size) {
    throw InputError(what + ": expected a vector of length " + std::to_string(size));
  }
  Vec v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = scalar_from_json(j[static_cast<std::size_t>(i)], what);
  return v;
}

json vector_to_json(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

MatrixSystem system_from_json(const json& j, const Alphabet* expected) {
  if (!j.is_object()) throw InputError("system: top level must be an object");
  const Alphabet file_al = alphabet_from_json(j);
  const Alphabet& al = expected ? *expected : file_al;
  // Map file letters to positions in `al`.
  std::vector<Letter> to(static_cast<std::size_t>(file_al.size()));
  if (expected) {
    if (expected->size() != file_al.size()) throw InputError("system: alphabet has the wrong number of letters");
    for (Letter a = 0; a < file_al.size(); ++a) {
      auto t = expected->find(file_al.name(a));
      if (!t) throw InputError("system: letter " + file_al.name(a) + " is not in the expected alphabet");
      to[static_cast<std::size_t>(a)] = *t;
    }
    for (Letter a = 0; a < file_al.size(); ++a) {
      if (to[static_cast<std::size_t>(file_al.inverse(a))] != expected->inverse(to[static_cast<std::size_t>(a)])) {
        throw InputError("system: involution does not match the expected alphabet");
      }
    }
  } else {
    for (Letter a = 0; a < file_al.size(); ++a) to[static_cast<std::size_t>(a)] = a;
  }

  if (!j.contains("dims") || !j.at("dims").is_object()) throw InputError("system: missing \"dims\" object");
  std::vector<int> dims(static_cast<std::size_t>(al.size()), -1);
  for (const auto& [name, d] : j.at("dims").items()) {
    auto a = al.find(name);
    if (!a) throw InputError("system: dims names unknown letter " + name);
    if (!d.is_number_integer() || d.get<int>() < 0) throw InputError("system: dims must be nonnegative integers");
    dims[static_cast<std::size_t>(*a)] = d.get<int>();
  }
  for (Letter a = 0; a < al.size(); ++a) {
    if (dims[static_cast<std::size_t>(a)] < 0) throw InputError("system: no dimension for " + al.name(a));
  }
  MatrixSystem sys(al, dims);
  if (j.contains("H")) {
    if (!j.at("H").is_object()) throw InputError("system: \"H\" must be an object");
    for (const auto& [key, m] : j.at("H").items()) {
      const auto bar = key.find('|');
      if (bar == std::string::npos) throw InputError("system: H key " + key + " is not of the form \"b|a\"");
      auto b = al.find(key.substr(0, bar));
      auto a = al.find(key.substr(bar + 1));
      if (!a || !b) throw InputError("system: H key " + key + " names an unknown letter");
      sys.set_H(*b, *a, matrix_from_json(m, sys.dim(*b), sys.dim(*a), "H[" + key + "]"));
    }
  }
  if (j.contains("B")) {
    if (!j.at("B").is_object()) throw InputError("system: \"B\" must be an object");
    for (const auto& [name, m] : j.at("B").items()) {
      auto a = al.find(name);
      if (!a) throw InputError("system: B names unknown letter " + name);
      sys.set_B(*a, matrix_from_json(m, sys.dim(*a), sys.dim(*a), "B[" + name + "]"));
    }
  }
  return sys;
}

json system_to_json(const MatrixSystem& sys) {
  const Alphabet& al = sys.alphabet();
  json out = alphabet_to_json(al);
  json dims = json::object();
  json h = json::object();
  json b = json::object();
  for (Letter a = 0; a < al.size(); ++a) {
    dims[al.name(a)] = sys.dim(a);
    b[al.name(a)] = matrix_to_json(sys.B(a));
    for (Letter c = 0; c < al.size(); ++c) {
      const Mat& m = sys.H(c, a);
      if (m.size() == 0 || m.isZero(0.0)) continue;
      h[al.name(c) + "|" + al.name(a)] = matrix_to_json(m);
    }
  }
  out["dims"] = dims;
  out["H"] = h;
  out["B"] = b;
  return out;
}

GeneratorMap genmap_from_json(const json& j, const Alphabet& source) {
  if (!j.is_object()) throw InputError("generator map: top level must be an object");
  const Alphabet target = alphabet_from_json(j, "target_alphabet", "target_involution");
  if (!j.contains("images") || !j.at("images").is_object()) throw InputError("generator map: missing \"images\"");
  std::vector<std::optional<Word>> images(static_cast<std::size_t>(source.size()));
  for (const auto& [name, w] : j.at("images").items()) {
    auto alpha = source.find(name);
    if (!alpha) throw InputError("generator map: unknown source letter " + name);
    if (!w.is_string()) throw InputError("generator map: image of " + name + " must be a string");
    images[static_cast<std::size_t>(*alpha)] = target.parse(w.get<std::string>());
  }
  std::vector<Word> out(static_cast<std::size_t>(source.size()));
  for (Letter alpha = 0; alpha < source.size(); ++alpha) {
    const auto& own = images[static_cast<std::size_t>(alpha)];
    const auto& inv = images[static_cast<std::size_t>(source.inverse(alpha))];
    if (own) {
      out[static_cast<std::size_t>(alpha)] = *own;
    } else if (inv) {
      out[static_cast<std::size_t>(alpha)] = target.inverse(*inv);
    } else {
      throw InputError("generator map: no image for " + source.name(alpha) + " or its inverse");
    }
  }
  return GeneratorMap(source, target, std::move(out));
}

CosetAutomaton subgroup_from_json(const json& j, const Alphabet& fallback) {
  if (!j.is_object()) throw InputError("subgroup: top level must be an object");
  const Alphabet al = j.contains("alphabet") ? alphabet_from_json(j) : fallback;
  if (j.contains("generators")) {
    std::vector<Word> gens;
    for (const json& g : j.at("generators")) {
      if (!g.is_string()) throw InputError("subgroup: generators must be strings");
      gens.push_back(al.parse(g.get<std::string>()));
    }
    return CosetAutomaton::from_generators(al, gens);
  }
  if (!j.contains("transitions") || !j.at("transitions").is_object()) {
    throw InputError("subgroup: need \"generators\" or \"transitions\"");
  }
  std::map<Letter, std::vector<int>> perms;
  for (const auto& [name, p] : j.at("transitions").items()) {
    auto a = al.find(name);
    if (!a) throw InputError("subgroup: unknown letter " + name);
    if (!p.is_array()) throw InputError("subgroup: permutation for " + name + " must be an array");
    perms[*a] = p.get<std::vector<int>>();
  }
  CosetAutomaton aut = CosetAutomaton::from_permutations(al, perms);
  if (j.contains("index") && j.at("index").get<int>() != aut.index()) {
    throw InputError("subgroup: \"index\" does not match the permutation length");
  }
  return aut;
}

MultFunc function_from_json(const json& j, std::shared_ptr<const MatrixSystem> sys) {
  if (!j.is_object() || !j.contains("shadows") || !j.at("shadows").is_array()) {
    throw InputError("function: expected {\"shadows\": [...]}");
  }
  const Alphabet& al = sys->alphabet();
  std::optional<MultFunc> f;
  for (const json& s : j.at("shadows")) {
    if (!s.contains("base") || !s.at("base").is_string()) throw InputError("function: shadow needs a \"base\" word");
    const Word x = al.parse(s.at("base").get<std::string>());
    if (x.empty()) throw InputError("function: shadow base must not be e");
    const Vec v = vector_from_json(s.at("vector"), sys->dim(x.back()), "shadow vector");
    MultFunc m = shadow(sys, x, v);
    f = f ? add(*f, m) : m;
  }
  if (!f) throw InputError("function: no shadows given");
  if (j.contains("depth")) {
    const int d = j.at("depth").get<int>();
    if (d > f->depth()) f = refine(*f, d);
  }
  return *f;
}

json function_to_json(const MultFunc& f) {
  const Alphabet& al = f.system().alphabet();
  json vals = json::array();
  for (const auto& [w, v] : shadow_terms(f)) vals.push_back({{"word", al.format(w)}, {"vector", vector_to_json(v)}});
  return json{{"depth", f.depth()}, {"norm2", norm2(f)}, {"values", vals}};
}

json words_to_json(const Alphabet& al, const std::vector<Word>& ws) {
  json out = json::array();
  for (const Word& w : ws) out.push_back(al.format(w));
  return out;
}

}  // namespace mrep
