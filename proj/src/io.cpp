#include "io.hpp"

#include <fstream>

namespace qhd {

using nlohmann::json;

namespace {

json cplx_records_1(const Tensor& t) {
  json arr = json::array();
  std::vector<std::uint64_t> keys;
  for (const auto& [k, c] : t.ent) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    const cplx& c = t.ent.at(k);
    arr.push_back({{"i", k}, {"re", c.real()}, {"im", c.imag()}});
  }
  return arr;
}

json cplx_records_n(const Tensor& t, const std::vector<const char*>& names) {
  json arr = json::array();
  std::vector<std::uint64_t> keys;
  for (const auto& [k, c] : t.ent) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (auto k : keys) {
    const cplx& c = t.ent.at(k);
    json rec;
    auto idx = t.decode(k);
    for (std::size_t l = 0; l < names.size(); ++l) rec[names[l]] = idx[l];
    rec["re"] = c.real();
    rec["im"] = c.imag();
    arr.push_back(std::move(rec));
  }
  return arr;
}

cplx rec_value(const json& r) { return {r.at("re").get<double>(), r.at("im").get<double>()}; }

std::uint32_t rec_index(const json& r, const char* key, std::uint32_t dim) {
  std::uint64_t v = r.at(key).get<std::uint64_t>();
  if (v >= dim) throw Error(std::string("index '") + key + "' out of range in record " + r.dump());
  return static_cast<std::uint32_t>(v);
}

}  // namespace

json algebra_to_json(const QuasiHopf& H, const std::string& name) {
  const SpaceRegistry& reg = *H.reg;
  json j;
  j["kind"] = "algebra";
  j["name"] = name;
  j["dimension"] = H.dim;

  json sc = json::array();
  for (std::uint32_t i = 0; i < H.dim; ++i)
    for (std::uint32_t jj = 0; jj < H.dim; ++jj)
      for (const auto& [k, c] : reg.product(H.space, i, jj))
        sc.push_back({{"i", i}, {"j", jj}, {"k", k}, {"re", c.real()}, {"im", c.imag()}});
  j["structure_constants"] = std::move(sc);

  json unit = json::array();
  for (const auto& [i, c] : reg[H.space].unit)
    unit.push_back({{"i", i}, {"re", c.real()}, {"im", c.imag()}});
  j["unit"] = std::move(unit);

  json cop = json::array();
  for (std::uint32_t i = 0; i < H.dim; ++i)
    for (const auto& [jk, c] : H.coproduct.entries[i])
      cop.push_back(
          {{"i", i}, {"j", jk.first}, {"k", jk.second}, {"re", c.real()}, {"im", c.imag()}});
  j["coproduct"] = std::move(cop);

  json eps = json::array();
  for (std::uint32_t i = 0; i < H.dim; ++i)
    if (H.counit[i] != cplx(0.0))
      eps.push_back({{"i", i}, {"re", H.counit[i].real()}, {"im", H.counit[i].imag()}});
  j["counit"] = std::move(eps);

  j["phi"] = cplx_records_n(H.phi, {"i", "j", "k"});
  j["phi_inv"] = cplx_records_n(H.phi_inv, {"i", "j", "k"});

  json smat = json::array();
  for (std::uint32_t r = 0; r < H.dim; ++r) {
    json row = json::array();
    for (std::uint32_t c = 0; c < H.dim; ++c)
      row.push_back({{"re", H.S(r, c).real()}, {"im", H.S(r, c).imag()}});
    smat.push_back(std::move(row));
  }
  j["antipode"] = std::move(smat);

  j["alpha"] = cplx_records_1(H.alpha);
  j["beta"] = cplx_records_1(H.beta);
  if (H.R) {
    j["r_matrix"] = cplx_records_n(*H.R, {"i", "j"});
    j["r_matrix_inv"] = cplx_records_n(*H.R_inv, {"i", "j"});
  }
  return j;
}

QuasiHopf algebra_from_json(SpaceRegistry& reg, const json& j) {
  if (!j.is_object() || j.value("kind", "") != "algebra")
    throw IoError("expected an algebra file (kind = \"algebra\")");
  std::uint32_t dim = j.at("dimension").get<std::uint32_t>();
  if (dim == 0 || dim > 4096) throw Error("dimension out of supported range");
  std::string name = j.value("name", "algebra");

  std::vector<SparseVec> table(std::size_t(dim) * dim);
  for (const auto& r : j.at("structure_constants"))
    table[std::size_t(rec_index(r, "i", dim)) * dim + rec_index(r, "j", dim)].emplace_back(
        rec_index(r, "k", dim), rec_value(r));
  for (auto& v : table) v = sparse_combine(v);

  SparseVec unit;
  for (const auto& r : j.at("unit")) unit.emplace_back(rec_index(r, "i", dim), rec_value(r));

  SparseMap2 cop;
  cop.entries.resize(dim);
  for (const auto& r : j.at("coproduct"))
    cop.entries[rec_index(r, "i", dim)].push_back(
        {{rec_index(r, "j", dim), rec_index(r, "k", dim)}, rec_value(r)});

  std::vector<cplx> counit(dim, cplx(0.0));
  for (const auto& r : j.at("counit")) counit[rec_index(r, "i", dim)] = rec_value(r);

  std::uint32_t scratch = add_vector_space(reg, name + "_scratch", dim);
  auto tensor3 = [&](const json& arr) {
    Tensor t(reg, {scratch, scratch, scratch});
    for (const auto& r : arr) {
      std::vector<std::uint32_t> idx{rec_index(r, "i", dim), rec_index(r, "j", dim),
                                     rec_index(r, "k", dim)};
      t.accumulate(t.encode(idx), rec_value(r));
    }
    return t;
  };
  Tensor phi = tensor3(j.at("phi"));
  std::optional<Tensor> phi_inv;
  if (j.contains("phi_inv")) phi_inv = tensor3(j.at("phi_inv"));

  const auto& smat = j.at("antipode");
  if (smat.size() != dim) throw Error("antipode matrix has wrong number of rows");
  Mat S = Mat::Zero(dim, dim);
  for (std::uint32_t r = 0; r < dim; ++r) {
    if (smat[r].size() != dim) throw Error("antipode matrix has wrong number of columns");
    for (std::uint32_t c = 0; c < dim; ++c) S(r, c) = rec_value(smat[r][c]);
  }

  auto tensor1 = [&](const json& arr) {
    Tensor t(reg, {scratch});
    for (const auto& r : arr) t.accumulate(rec_index(r, "i", dim), rec_value(r));
    return t;
  };
  Tensor alpha = tensor1(j.at("alpha"));
  Tensor beta = tensor1(j.at("beta"));

  std::optional<Tensor> R, R_inv;
  if (j.contains("r_matrix")) {
    Tensor r(reg, {scratch, scratch});
    for (const auto& rec : j.at("r_matrix")) {
      std::vector<std::uint32_t> idx{rec_index(rec, "i", dim), rec_index(rec, "j", dim)};
      r.accumulate(r.encode(idx), rec_value(rec));
    }
    R = r;
    if (j.contains("r_matrix_inv")) {
      Tensor ri(reg, {scratch, scratch});
      for (const auto& rec : j.at("r_matrix_inv")) {
        std::vector<std::uint32_t> idx{rec_index(rec, "i", dim), rec_index(rec, "j", dim)};
        ri.accumulate(ri.encode(idx), rec_value(rec));
      }
      R_inv = ri;
    }
  }
  return make_quasi_hopf(reg, name, dim, std::move(table), std::move(unit), std::move(cop),
                         std::move(counit), phi, phi_inv, S, alpha, beta, R, R_inv);
}

QuasiHopf load_algebra(SpaceRegistry& reg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
  return algebra_from_json(reg, j);
}

void export_algebra_sc_json(const QuasiHopf& H, const std::string& name, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << algebra_to_json(H, name).dump(2) << "\n";
}

json group_to_json(const FiniteGroup& G) {
  json j;
  j["kind"] = "group";
  j["name"] = G.name;
  j["order"] = G.order;
  json rows = json::array();
  for (std::uint32_t i = 0; i < G.order; ++i) {
    json row = json::array();
    for (std::uint32_t k = 0; k < G.order; ++k) row.push_back(G.mul(i, k));
    rows.push_back(std::move(row));
  }
  j["table"] = std::move(rows);
  return j;
}

FiniteGroup group_from_json(const json& j) {
  if (!j.is_object() || j.value("kind", "") != "group")
    throw IoError("expected a group file (kind = \"group\")");
  std::uint32_t order = j.at("order").get<std::uint32_t>();
  const auto& rows = j.at("table");
  if (rows.size() != order) throw Error("group table has wrong number of rows");
  std::vector<std::uint32_t> table;
  table.reserve(std::size_t(order) * order);
  for (const auto& row : rows) {
    if (row.size() != order) throw Error("group table has a short row");
    for (const auto& v : row) table.push_back(v.get<std::uint32_t>());
  }
  return make_group(j.value("name", "group"), order, std::move(table));
}

FiniteGroup load_group(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
  return group_from_json(j);
}

json cocycle_to_json(const ThreeCocycle& w) {
  json j;
  j["kind"] = "cocycle";
  j["order"] = w.order;
  json vals = json::array();
  for (std::uint32_t g = 0; g < w.order; ++g)
    for (std::uint32_t h = 0; h < w.order; ++h)
      for (std::uint32_t k = 0; k < w.order; ++k) {
        cplx c = w.at(g, h, k);
        if (std::abs(c - cplx(1.0)) < 1e-15) continue;
        vals.push_back({{"g", g}, {"h", h}, {"k", k}, {"re", c.real()}, {"im", c.imag()}});
      }
  j["values"] = std::move(vals);
  return j;
}

ThreeCocycle cocycle_from_json(const FiniteGroup& G, const json& j) {
  if (!j.is_object() || j.value("kind", "") != "cocycle")
    throw IoError("expected a cocycle file (kind = \"cocycle\")");
  if (j.contains("family")) {
    const auto& fam = j.at("family");
    std::string fname = fam.at("name").get<std::string>();
    if (fname == "cyclic-standard")
      return cyclic_standard_cocycle(G, fam.at("p").get<std::uint32_t>());
    if (fname == "trivial") return trivial_cocycle(G);
    throw Error("unknown cocycle family: " + fname);
  }
  // dense-by-default table: unspecified entries are 1
  ThreeCocycle w = trivial_cocycle(G);
  for (const auto& r : j.at("values")) {
    std::uint32_t g = rec_index(r, "g", G.order), h = rec_index(r, "h", G.order),
                  k = rec_index(r, "k", G.order);
    w.values[(std::size_t(g) * G.order + h) * G.order + k] = rec_value(r);
  }
  return w;
}

ThreeCocycle load_cocycle(const FiniteGroup& G, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("parse error in " + path + ": " + e.what());
  }
  return cocycle_from_json(G, j);
}

}  // namespace qhd
