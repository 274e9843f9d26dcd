#include "toric/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

#include "toric/errors.hpp"

namespace toric {

namespace {

using Rays = std::vector<LatticeVector>;

IndexSet zero_based(std::initializer_list<std::size_t> one_based) {
  IndexSet s;
  for (auto i : one_based) s.push_back(i - 1);
  return s;
}

std::vector<IndexSet> sets(std::initializer_list<std::initializer_list<std::size_t>> lists) {
  std::vector<IndexSet> out;
  for (auto l : lists) {
    IndexSet s = zero_based(l);
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

FanoRecord make(std::string id, std::string name, std::vector<std::string> aliases,
                std::string type_class, Rays rays, std::vector<IndexSet> collections) {
  FanoRecord r;
  r.id = std::move(id);
  r.name = std::move(name);
  r.aliases = std::move(aliases);
  r.type_class = std::move(type_class);
  r.upsilon = rays.size();
  r.rho = rays.size() - 3;
  r.k0 = 2 * rays.size() - 4;
  r.fan.dim = 3;
  r.fan.rays = std::move(rays);
  r.fan.max_cones = cones_from_primitive_collections(r.fan.rays.size(), 3, collections);
  // Default Pic basis: the rays outside the first maximal cone.
  for (std::size_t i = 0; i < r.fan.rays.size(); ++i)
    if (!std::binary_search(r.fan.max_cones[0].begin(), r.fan.max_cones[0].end(), i))
      r.basis.push_back(i);
  return r;
}

// Surfaces used as fibres or bases.
const Rays kP2 = {{1, 0}, {0, 1}, {-1, -1}};
const Rays kS1 = {{1, 0}, {0, 1}, {-1, -1}, {1, 1}};
const Rays kS2 = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}};
const Rays kS3 = {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};

// Product of a polygon with P^1: the polygon rays lifted to z = 0, then +e3, -e3.
Rays times_p1(const Rays& polygon) {
  Rays out;
  for (const auto& v : polygon) out.push_back({v[0], v[1], 0});
  out.push_back({0, 0, 1});
  out.push_back({0, 0, -1});
  return out;
}

// Non-adjacent vertex pairs of a polygon whose rays are listed in cyclic order.
std::vector<IndexSet> polygon_collections(std::size_t k, std::size_t offset = 0) {
  std::vector<IndexSet> out;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 2; b < k; ++b)
      if (!(a == 0 && b == k - 1)) out.push_back({offset + a, offset + b});
  return out;
}

std::vector<IndexSet> plus(std::vector<IndexSet> a, const IndexSet& s) {
  a.push_back(s);
  return a;
}

std::vector<std::string> kDSummands = {
    "O",          "O(Z4+Z5)",       "O(2Z4+2Z5)",      "O(Z6)",          "O(Z5+Z6)",
    "O(Z4+Z5+Z6)", "O(Z4+2Z5+Z6)", "O(2Z4+2Z5+Z6)"};

std::vector<std::string> kESequence = {
    "O",           "O(Z7)",          "O(Z4)",          "O(Z1+Z5)",       "O(Z1+Z5+Z7)",
    "O(Z4+Z7)",    "O(Z4+Z5)",       "O(Z4+Z5+Z7)",    "O(Z1+Z4+Z5)",    "O(Z1+Z4+Z5+Z7)"};

std::vector<std::string> kESummands = {
    "O",           "O(Z7)",          "O(Z4)",          "O(Z1+Z5)",       "O(Z4+Z7)",
    "O(Z4+Z5)",    "O(Z1+Z5+Z7)",    "O(Z4+Z5+Z7)",    "O(Z1+Z4+Z5)",    "O(Z1+Z4+Z5+Z7)"};

std::vector<PrimitiveRelation> relations(std::initializer_list<const char*> lines) {
  std::vector<PrimitiveRelation> out;
  for (auto l : lines) out.push_back(parse_relation(l));
  return out;
}

const std::vector<IndexSet> kDCollections = sets({{3, 6}, {4, 6}, {3, 5}, {1, 2, 4}, {1, 2, 5}});
const std::vector<IndexSet> kECollections =
    sets({{2, 4}, {3, 5}, {1, 3}, {2, 5}, {1, 4}, {6, 7}});

Rays e_rays(LatticeVector v7) {
  return {{1, -1, 0}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 1}, std::move(v7)};
}

FanoRecord d_record(std::string id, std::string name, Rays rays,
                    std::initializer_list<const char*> rels) {
  FanoRecord r = make(std::move(id), std::move(name), {}, "IV", std::move(rays), kDCollections);
  r.basis = zero_based({4, 5, 6});
  r.reference_basis = true;
  r.printed_collections = kDCollections;
  r.printed_relations = relations(rels);
  r.printed_collection = kDSummands;
  r.collection = kDSummands;
  return r;
}

FanoRecord e_record(std::string id, Rays rays) {
  FanoRecord r = make(std::move(id), "S2-bundle over P1", {}, "IV", std::move(rays), kECollections);
  r.basis = zero_based({1, 4, 5, 7});
  r.reference_basis = true;
  r.printed_collections = kECollections;
  return r;
}

std::vector<FanoRecord> build_catalog() {
  std::vector<FanoRecord> out;

  out.push_back(make("P3", "P3", {"P^3"}, "I", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                     sets({{1, 2, 3, 4}})));

  const auto p2_bundle = [](std::int64_t a) {
    return Rays{{1, 0, 0}, {0, 1, 0}, {-1, -1, a}, {0, 0, 1}, {0, 0, -1}};
  };
  const auto p2_pcs = sets({{1, 2, 3}, {4, 5}});
  out.push_back(make("B1", "P_P2(O+O(2))", {}, "II", p2_bundle(2), p2_pcs));
  out.push_back(make("B2", "P_P2(O+O(1))", {}, "II", p2_bundle(1), p2_pcs));
  out.push_back(make("B3", "P_P1(O+O+O(1))", {}, "II",
                     {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {1, 0, -1}}, p2_pcs));
  out.push_back(make("B4", "P2xP1", {"P2*P1"}, "II", times_p1(kP2), p2_pcs));

  const auto pairs3 = sets({{1, 2}, {3, 4}, {5, 6}});
  out.push_back(make("C1", "P_P1xP1(O+O(1,1))", {}, "II",
                     {{1, 0, 0}, {-1, 0, 1}, {0, 1, 0}, {0, -1, 1}, {0, 0, 1}, {0, 0, -1}}, pairs3));
  out.push_back(make("C2", "P_S1(O+O(l))", {}, "II",
                     {{1, 0, 0}, {0, 1, 0}, {-1, -1, 1}, {1, 1, 0}, {0, 0, 1}, {0, 0, -1}}, pairs3));
  out.push_back(make("C3", "P1xP1xP1", {"P1*P1*P1"}, "III",
                     {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}, pairs3));
  out.push_back(make("C4", "S1xP1", {"S1*P1"}, "III", times_p1(kS1), pairs3));
  out.push_back(make("C5", "P_P1xP1(O+O(1,-1))", {}, "III",
                     {{1, 0, 0}, {-1, 0, 1}, {0, 1, 0}, {0, -1, -1}, {0, 0, 1}, {0, 0, -1}}, pairs3));
  out.push_back(make("E3", "S2xP1", {"S2*P1"}, "III", times_p1(kS2),
                     plus(polygon_collections(5), {5, 6})));
  out.push_back(make("F1", "S3xP1", {"S3*P1"}, "III", times_p1(kS3),
                     plus(polygon_collections(6), {6, 7})));

  {
    FanoRecord d1 = d_record(
        "D1", "Bl_P1(P_P2(O+O(1)))",
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, 2}, {-1, -1, 1}, {0, 0, -1}},
        {"v3+v6=0", "v4+v6=v5", "v3+v5=v4", "v1+v2+v4=2v3", "v1+v2+v5=v3"});
    d1.printed_summands = kDSummands;
    d1.printed_summands.push_back("O(Z6-Z4)");
    d1.expected_summands = d1.printed_summands;
    d1.printed_frames = {
        {zero_based({1, 2, 3}), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
        {zero_based({1, 2, 6}), {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
         {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}}},
        {zero_based({1, 4, 5}), {{1, 0, 0}, {-1, -1, 2}, {-1, -1, 1}},
         {{1, 0, 0}, {-1, 1, -2}, {0, 1, -1}}},
    };
    out.push_back(std::move(d1));
  }
  {
    FanoRecord d2 = d_record(
        "D2", "Bl_P1(P2xP1)",
        {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, 1}, {-1, -1, 0}, {0, 0, -1}},
        {"v3+v6=0", "v4+v6=v5", "v3+v5=v4", "v1+v2+v4=v3", "v1+v2+v5=0"});
    d2.printed_summands = kDSummands;
    d2.expected_summands = kDSummands;
    d2.printed_frames = {{zero_based({1, 5, 4}), {{1, 0, 0}, {-1, -1, 0}, {-1, -1, 1}}, {}}};
    out.push_back(std::move(d2));
  }
  {
    FanoRecord e1 = e_record("E1", e_rays({1, -1, -1}));
    e1.printed_relations = relations(
        {"v2+v4=0", "v3+v5=0", "v1+v3=v2", "v2+v5=v1", "v1+v4=v5", "v6+v7=v1"});
    e1.printed_summands = {"O",           "O(Z7)",          "O(Z4)",
                           "O(Z4+Z7)",    "O(Z4+Z5)",       "O(Z4+Z5+Z7)",
                           "O(Z1+Z5+2Z7)", "O(Z1+Z4+Z5+Z7)", "O(Z1+Z4+Z5+2Z7)"};
    e1.expected_summands = e1.printed_summands;
    e1.printed_frames = {
        {zero_based({2, 3, 6}), {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}},
        {zero_based({4, 5, 6}), {{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}},
         {{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}},
        {zero_based({2, 1, 7}), {{1, 0, 0}, {1, -1, 0}, {1, -1, -1}},
         {{1, 0, 0}, {1, -1, 0}, {0, 1, -1}}},
    };
    e1.expected_summands.push_back("O(Z1+Z5+Z7)");
    e1.printed_collection = {"O",           "O(Z7)",           "O(Z4)",
                             "O(Z4+Z7)",    "O(Z4+Z5)",        "O(Z1+Z5+2Z7)",
                             "O(Z4+Z5+Z7)", "O(Z1+Z4+Z5+Z7)",  "O(Z1+Z4+Z5+2Z7)"};
    e1.collection = e1.printed_collection;
    e1.collection.insert(e1.collection.begin() + 3, "O(Z1+Z5+Z7)");
    e1.notes = {
        "printed summand list has 9 classes but the splitting also yields O(Z1+Z5+Z7); "
        "rank K0 = 10",
        "printed 9-term sequence cannot be full (rank K0 = 10); O(Z1+Z5+Z7) inserted after O(Z4)"};
    out.push_back(std::move(e1));
  }
  {
    FanoRecord e2 = e_record("E2", e_rays({1, 0, -1}));
    e2.printed_summands = kESummands;
    e2.expected_summands = kESummands;
    e2.printed_collection = kESequence;
    e2.collection = kESequence;
    e2.notes = {"primitive relations not printed; rays fixed by the printed Pic relations "
                "(v6+v7=v2)"};
    out.push_back(std::move(e2));
  }
  {
    FanoRecord e4 = e_record("E4", e_rays({0, 1, -1}));
    e4.printed_relations = relations(
        {"v2+v4=0", "v3+v5=0", "v1+v3=v2", "v2+v5=v1", "v1+v4=v5", "v6+v7=v3"});
    e4.printed_summands = kESummands;
    e4.expected_summands = kESummands;
    e4.printed_collection = kESequence;
    e4.collection = kESequence;
    e4.notes = {"printed A3/B3 are inconsistent with the printed d3 formula; frame derived "
                "from the primitive relations"};
    out.push_back(std::move(e4));
  }

  {
    Rays rays;
    for (const auto& v : kS3) rays.push_back({v[0], v[1], 0});
    rays.push_back({1, 0, -1});
    rays.push_back({0, 0, 1});
    out.push_back(make("F2", "S3-bundle over P1", {}, "V", std::move(rays),
                       plus(polygon_collections(6), {6, 7})));
  }

  // Table order.
  const std::vector<std::string> order = {"P3", "B1", "B2", "B3", "B4", "C1", "C2", "C3", "C4",
                                          "C5", "E3", "F1", "D1", "D2", "E1", "E2", "E4", "F2"};
  std::vector<FanoRecord> sorted;
  for (const auto& id : order)
    for (auto& r : out)
      if (r.id == id) sorted.push_back(r);
  return sorted;
}

}  // namespace

std::vector<IndexSet> cones_from_primitive_collections(std::size_t ray_count, std::size_t dim,
                                                       const std::vector<IndexSet>& collections) {
  std::vector<IndexSet> cones;
  IndexSet idx(dim);
  std::iota(idx.begin(), idx.end(), 0);
  if (dim > ray_count) return cones;
  for (;;) {
    bool face = std::none_of(collections.begin(), collections.end(), [&](const IndexSet& c) {
      return std::includes(idx.begin(), idx.end(), c.begin(), c.end());
    });
    if (face) cones.push_back(idx);
    std::size_t i = dim;
    while (i > 0 && idx[i - 1] == ray_count - dim + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < dim; ++j) idx[j] = idx[j - 1] + 1;
  }
  return cones;
}

PrimitiveRelation parse_relation(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto eq = s.find('=');
  if (eq == std::string::npos) throw ParseError("relation without '=': " + std::string(text));

  auto terms = [&](const std::string& side) {
    std::map<std::size_t, std::int64_t> out;
    if (side == "0") return out;
    std::size_t i = 0;
    while (i < side.size()) {
      if (side[i] == '+') ++i;
      std::size_t start = i;
      while (i < side.size() && std::isdigit(static_cast<unsigned char>(side[i]))) ++i;
      std::int64_t coef = i > start ? std::stoll(side.substr(start, i - start)) : 1;
      if (i >= side.size() || side[i] != 'v') throw ParseError("bad relation: " + std::string(text));
      start = ++i;
      while (i < side.size() && std::isdigit(static_cast<unsigned char>(side[i]))) ++i;
      if (i == start) throw ParseError("bad relation: " + std::string(text));
      out[std::stoul(side.substr(start, i - start)) - 1] += coef;
    }
    return out;
  };

  PrimitiveRelation rel;
  for (auto [ray, coef] : terms(s.substr(0, eq))) {
    if (coef != 1) throw ParseError("collection side must list distinct rays: " + std::string(text));
    rel.collection.push_back(ray);
  }
  std::int64_t total = 0;
  for (auto [ray, coef] : terms(s.substr(eq + 1))) {
    rel.target_cone.push_back(ray);
    rel.coefficients.push_back(coef);
    total += coef;
  }
  rel.degree = static_cast<std::int64_t>(rel.collection.size()) - total;
  return rel;
}

const std::vector<FanoRecord>& load_catalog() {
  static const std::vector<FanoRecord> catalog = build_catalog();
  return catalog;
}

const FanoRecord& find_record(std::string_view key) {
  const std::string k = lower(key);
  for (const auto& r : load_catalog()) {
    if (lower(r.id) == k || lower(r.name) == k) return r;
    for (const auto& a : r.aliases)
      if (lower(a) == k) return r;
  }
  throw UnknownVariety("unknown variety '" + std::string(key) + "'");
}

RecordCheck validate_record(const FanoRecord& r) {
  RecordCheck check{r.id, {}};
  auto fail = [&](std::string msg) { check.failures.push_back(std::move(msg)); };

  FanValidation v = validate_fan(r.fan);
  for (const auto& f : v.failures) fail(f);
  if (!v.ok()) return check;

  if (r.upsilon != r.fan.ray_count()) fail("upsilon does not match the ray count");
  if (r.rho + 3 != r.upsilon) fail("rho != upsilon - 3");
  if (r.k0 + 4 != 2 * r.upsilon) fail("k0 != 2 upsilon - 4");
  if (r.fan.max_cones.size() != r.k0)
    fail("#maximal cones = " + std::to_string(r.fan.max_cones.size()) + ", expected k0 = " +
         std::to_string(r.k0));

  try {
    auto rels = primitive_relations(r.fan);
    for (const auto& rel : rels)
      if (rel.degree <= 0)
        fail("primitive relation on " + format_index_set(rel.collection) + " has degree " +
             std::to_string(rel.degree) + "; not Fano");

    if (!r.printed_collections.empty()) {
      auto computed = primitive_collections(r.fan);
      auto printed = r.printed_collections;
      std::sort(computed.begin(), computed.end());
      std::sort(printed.begin(), printed.end());
      if (computed != printed) fail("primitive collections differ from the printed list");
    }
    for (const auto& p : r.printed_relations) {
      auto it = std::find_if(rels.begin(), rels.end(),
                             [&](const auto& c) { return c.collection == p.collection; });
      if (it == rels.end() || !(*it == p))
        fail("printed relation on " + format_index_set(p.collection) + " does not hold");
    }
  } catch (const Error& e) {
    fail(e.what());
  }

  for (const auto& f : r.printed_frames) {
    IndexSet sorted = f.rays;
    std::sort(sorted.begin(), sorted.end());
    if (std::find(r.fan.max_cones.begin(), r.fan.max_cones.end(), sorted) == r.fan.max_cones.end())
      fail("printed cone " + format_index_set(f.rays) + " is not a maximal cone");
    std::vector<LatticeVector> A;
    for (auto ray : f.rays) A.push_back(r.fan.rays[ray]);
    if (A != f.A) fail("printed matrix for cone " + format_index_set(f.rays) + " differs");
    if (!f.B.empty() &&
        unimodular_inverse(IntMatrix::from_rows(A)) != IntMatrix::from_rows(f.B))
      fail("printed inverse for cone " + format_index_set(f.rays) + " differs");
  }
  return check;
}

std::vector<RecordCheck> validate_catalog(const std::vector<FanoRecord>& records) {
  std::vector<RecordCheck> out;
  for (const auto& r : records) out.push_back(validate_record(r));
  return out;
}

}  // namespace toric
