// json_io.hpp — JSON encodings of every value that crosses the CLI boundary.
// All numeric payloads are plain JSON arrays (row-major "rows" for
// matrices); no binary formats.

#pragma once

#include "mwkit/common.hpp"
#include "mwkit/decompose.hpp"
#include "mwkit/gaussian.hpp"
#include "mwkit/grid.hpp"
#include "mwkit/maslov.hpp"
#include "mwkit/symplectic.hpp"

#include <json.hpp>

namespace mwkit {

using Json = nlohmann::json;

inline Json rows_json(const Mat& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat mat_from_rows(const Json& rows) {
  if (!rows.is_array() || rows.empty())
    throw UsageError("matrix rows: expected a nonempty array of arrays");
  const auto r = rows.size();
  const auto c = rows[0].size();
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!rows[i].is_array() || rows[i].size() != c)
      throw UsageError("matrix rows: ragged row " + std::to_string(i));
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

inline Json vec_json(const Vec& v) {
  Json a = Json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

inline Vec vec_from_json(const Json& a) {
  if (!a.is_array()) throw UsageError("vector: expected an array");
  Vec v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v(i) = a[i].get<double>();
  return v;
}

// {"n": dof, "rows": 2n x 2n} for symplectic/Cayley matrices
inline Json matrix_to_json(const Mat& m, int dof) {
  return Json{{"n", dof}, {"rows", rows_json(m)}};
}

inline Mat matrix_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  Mat m = mat_from_rows(j.at("rows"));
  if (m.rows() != 2 * n || m.cols() != 2 * n)
    throw UsageError("matrix: rows must be 2n x 2n for the declared n");
  return m;
}

inline Json generator_to_json(const FreeGenerator& g) {
  return Json{{"n", g.n()},
              {"P", rows_json(g.P())},
              {"L", rows_json(g.L())},
              {"Q", rows_json(g.Q())},
              {"m", g.m()}};
}

inline FreeGenerator generator_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const Mat P = mat_from_rows(j.at("P"));
  const Mat L = mat_from_rows(j.at("L"));
  const Mat Q = mat_from_rows(j.at("Q"));
  if (P.rows() != n || L.rows() != n || Q.rows() != n)
    throw UsageError("generator: P, L, Q must be n x n for the declared n");
  return FreeGenerator(P, L, Q, j.at("m").get<int>());
}

inline Json maslov_to_json(const MaslovData& d) {
  return Json{{"m", d.m}, {"inert", d.inert}, {"nu", d.nu}};
}

inline Json gaussian_to_json(const GaussianState& g) {
  return Json{{"n", g.n()},
              {"gamma_re", rows_json(g.gamma().real())},
              {"gamma_im", rows_json(g.gamma().imag())},
              {"center", vec_json(g.center())},
              {"momentum", vec_json(g.momentum())},
              {"amp_re", g.amp().real()},
              {"amp_im", g.amp().imag()}};
}

inline GaussianState gaussian_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const Mat re = mat_from_rows(j.at("gamma_re"));
  const Mat im = mat_from_rows(j.at("gamma_im"));
  if (re.rows() != n || im.rows() != n)
    throw UsageError("gaussian: gamma blocks must be n x n");
  const CMat gamma = re.cast<Complex>() + Complex(0, 1) * im.cast<Complex>();
  return GaussianState(gamma, vec_from_json(j.at("center")),
                       vec_from_json(j.at("momentum")),
                       Complex(j.at("amp_re").get<double>(), j.at("amp_im").get<double>()));
}

inline Json grid_to_json(const GridFunction& f) {
  Json re = Json::array(), im = Json::array();
  for (long i = 0; i < f.samples().size(); ++i) {
    re.push_back(f.samples()(i).real());
    im.push_back(f.samples()(i).imag());
  }
  return Json{{"spec", Json{{"n", f.spec().n}, {"X", f.spec().X}, {"N", f.spec().N}}},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

inline GridFunction grid_from_json(const Json& j) {
  const Json& js = j.at("spec");
  const GridSpec spec(js.at("n").get<int>(), js.at("X").get<double>(),
                      js.at("N").get<int>());
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (!re.is_array() || !im.is_array() || re.size() != im.size() ||
      static_cast<long>(re.size()) != spec.size())
    throw UsageError("grid: re/im arrays must match the grid size");
  CVec s(spec.size());
  for (long i = 0; i < spec.size(); ++i)
    s(i) = Complex(re[i].get<double>(), im[i].get<double>());
  return GridFunction(spec, std::move(s));
}

inline Json pair_to_json(const FreePair& p) {
  return Json{{"first", generator_to_json(p.first)},
              {"second", generator_to_json(p.second)},
              {"lambda", p.lambda}};
}

inline FreePair pair_from_json(const Json& j) {
  return FreePair{generator_from_json(j.at("first")),
                  generator_from_json(j.at("second")), j.at("lambda").get<double>()};
}

inline Json cocycle_to_json(const CocycleResult& r) {
  return Json{{"sign", r.sign},
              {"ratio_re", r.ratio.real()},
              {"ratio_im", r.ratio.imag()}};
}

}  // namespace mwkit
