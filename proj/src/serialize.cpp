#include "netrepo/serialize.hpp"

#include <limits>

namespace netrepo {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

// Field readers that record a violation instead of throwing.
class ConfigReader {
 public:
  ConfigReader(const json& j, std::vector<std::string>& violations, std::string prefix = "")
      : j_(j), violations_(violations), prefix_(std::move(prefix)) {}

  template <typename T>
  std::optional<T> unsigned_field(const char* key, bool required, std::uint64_t max = std::numeric_limits<T>::max()) {
    if (!j_.contains(key)) {
      if (required) fail(std::string(key) + " is required");
      return std::nullopt;
    }
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
      fail(std::string(key) + " must be a non-negative integer");
      return std::nullopt;
    }
    auto raw = v.get<std::uint64_t>();
    if (raw > max) {
      fail(std::string(key) + " is too large");
      return std::nullopt;
    }
    return static_cast<T>(raw);
  }

  std::optional<double> number(const char* key, bool required) {
    if (!j_.contains(key)) {
      if (required) fail(std::string(key) + " is required");
      return std::nullopt;
    }
    if (!j_.at(key).is_number()) {
      fail(std::string(key) + " must be a number");
      return std::nullopt;
    }
    return j_.at(key).get<double>();
  }

  std::vector<double> numbers(const json& arr, const char* key) {
    std::vector<double> out;
    if (!arr.is_array()) {
      fail(std::string(key) + " must be an array of numbers");
      return out;
    }
    for (const auto& x : arr) {
      if (!x.is_number()) {
        fail(std::string(key) + " must contain only numbers");
        return {};
      }
      out.push_back(x.get<double>());
    }
    return out;
  }

  const json& raw() const { return j_; }
  void fail(const std::string& msg) { violations_.push_back(prefix_ + msg); }

 private:
  const json& j_;
  std::vector<std::string>& violations_;
  std::string prefix_;
};

std::optional<Wiring> read_wiring(ConfigReader& r) {
  if (!r.raw().contains("wiring")) return Wiring::bridge;
  const auto& w = r.raw().at("wiring");
  if (w == "bridge") return Wiring::bridge;
  if (w == "disjoint") return Wiring::disjoint;
  r.fail("wiring must be \"bridge\" or \"disjoint\"");
  return std::nullopt;
}

std::vector<PatternSpec> read_patterns(ConfigReader& r, bool required) {
  std::vector<PatternSpec> out;
  if (!r.raw().contains("patterns")) {
    if (required) r.fail("patterns is required");
    return out;
  }
  const auto& arr = r.raw().at("patterns");
  if (!arr.is_array()) {
    r.fail("patterns must be an array");
    return out;
  }
  std::vector<std::string> nested;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& item = arr[i];
    std::string where = "patterns[" + std::to_string(i) + "].";
    if (!item.is_object()) {
      r.fail(where + " must be an object");
      continue;
    }
    ConfigReader pr(item, nested, where);
    PatternSpec spec;
    if (!item.contains("type") || !item.at("type").is_string()) {
      pr.fail("type is required");
    } else if (auto t = pattern_from_name(item.at("type").get<std::string>())) {
      spec.type = *t;
    } else {
      pr.fail("type must be one of node, edge, clique, star, cycle, chain");
    }
    if (auto s = pr.unsigned_field<std::uint32_t>("size", true)) spec.size = *s;
    if (auto c = pr.unsigned_field<std::uint32_t>("count", false)) spec.count = *c;
    out.push_back(spec);
  }
  for (auto& m : nested) r.fail(m);
  return out;
}

std::optional<ModelParams> read_model(const std::string& kind, ConfigReader& r) {
  if (kind == "erdos_renyi") {
    ErdosRenyiParams p;
    auto n = r.unsigned_field<NodeId>("n", true);
    auto prob = r.number("p", true);
    if (!n || !prob) return std::nullopt;
    p.n = *n;
    p.p = *prob;
    return p;
  }
  if (kind == "preferential_attachment") {
    PreferentialAttachmentParams p;
    auto n = r.unsigned_field<NodeId>("n", true);
    auto m = r.unsigned_field<std::uint32_t>("m_attach", true);
    p.seed_clique_size = r.unsigned_field<std::uint32_t>("seed_clique_size", false);
    if (!n || !m) return std::nullopt;
    p.n = *n;
    p.m_attach = *m;
    return p;
  }
  if (kind == "chung_lu") {
    ChungLuParams p;
    if (!r.raw().contains("weights")) {
      r.fail("weights is required");
      return std::nullopt;
    }
    p.weights = r.numbers(r.raw().at("weights"), "weights");
    return p;
  }
  if (kind == "block_chung_lu") {
    BlockChungLuParams p;
    auto mu = r.number("mu", true);
    if (mu) p.mu = *mu;
    if (!r.raw().contains("weights")) {
      r.fail("weights is required");
      return std::nullopt;
    }
    const auto& w = r.raw().at("weights");
    if (w.is_array() && !w.empty() && w.front().is_array()) {
      // one weight vector per block; sizes follow from the vectors
      for (const auto& block : w) {
        auto ws = r.numbers(block, "weights");
        p.block_sizes.push_back(static_cast<NodeId>(ws.size()));
        p.weights.insert(p.weights.end(), ws.begin(), ws.end());
      }
    } else {
      p.weights = r.numbers(w, "weights");
      if (!r.raw().contains("block_sizes") || !r.raw().at("block_sizes").is_array()) {
        r.fail("block_sizes is required when weights is a flat array");
      } else {
        for (const auto& b : r.raw().at("block_sizes")) {
          if (!b.is_number_unsigned()) {
            r.fail("block_sizes must contain non-negative integers");
            break;
          }
          p.block_sizes.push_back(b.get<NodeId>());
        }
      }
    }
    return p;
  }
  r.fail("unknown kind \"" + kind + "\"");
  return std::nullopt;
}

json model_to_json(const ModelParams& model) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        json j;
        if constexpr (std::is_same_v<T, ErdosRenyiParams>) {
          j = {{"kind", "erdos_renyi"}, {"n", p.n}, {"p", p.p}};
        } else if constexpr (std::is_same_v<T, PreferentialAttachmentParams>) {
          j = {{"kind", "preferential_attachment"}, {"n", p.n}, {"m_attach", p.m_attach}};
          if (p.seed_clique_size) j["seed_clique_size"] = *p.seed_clique_size;
        } else if constexpr (std::is_same_v<T, ChungLuParams>) {
          j = {{"kind", "chung_lu"}, {"weights", p.weights}};
        } else {
          j = {{"kind", "block_chung_lu"}, {"block_sizes", p.block_sizes}, {"weights", p.weights}, {"mu", p.mu}};
        }
        return j;
      },
      model);
}

json patterns_to_json(const std::vector<PatternSpec>& patterns) {
  json arr = json::array();
  for (const auto& s : patterns) {
    arr.push_back({{"type", pattern_name(s.type)}, {"size", s.size}, {"count", s.count}});
  }
  return arr;
}

}  // namespace

json to_json(const GraphStats& s) {
  return {
      {"n", s.n},
      {"m", s.m},
      {"density", optional_number(s.density)},
      {"max_degree", s.max_degree},
      {"avg_degree", s.avg_degree},
      {"total_triangles", s.total_triangles},
      {"total_wedges", s.total_wedges},
      {"avg_clustering", s.avg_clustering},
      {"global_clustering", s.global_clustering},
      {"max_kcore", s.max_kcore},
      {"assortativity", optional_number(s.assortativity)},
      {"max_clique_lb", s.max_clique_lb},
      {"max_clique_method", s.max_clique_method},
      {"components", s.components},
  };
}

GraphStats graph_stats_from_json(const json& j) {
  GraphStats s;
  s.n = j.at("n").get<std::uint64_t>();
  s.m = j.at("m").get<std::uint64_t>();
  s.density = optional_from(j, "density");
  s.max_degree = j.at("max_degree").get<std::uint32_t>();
  s.avg_degree = j.at("avg_degree").get<double>();
  s.total_triangles = j.at("total_triangles").get<std::uint64_t>();
  s.total_wedges = j.at("total_wedges").get<std::uint64_t>();
  s.avg_clustering = j.at("avg_clustering").get<double>();
  s.global_clustering = j.at("global_clustering").get<double>();
  s.max_kcore = j.at("max_kcore").get<std::uint32_t>();
  s.assortativity = optional_from(j, "assortativity");
  s.max_clique_lb = j.at("max_clique_lb").get<std::uint32_t>();
  s.max_clique_method = j.at("max_clique_method").get<std::string>();
  s.components = j.at("components").get<std::uint32_t>();
  return s;
}

json to_json(const NodeStatsTable& t) {
  return {{"degree", t.degree},
          {"triangles", t.triangles},
          {"local_clustering", t.local_clustering},
          {"kcore", t.kcore},
          {"wedges", t.wedges}};
}

NodeStatsTable node_stats_from_json(const json& j) {
  NodeStatsTable t;
  t.degree = j.at("degree").get<std::vector<std::uint32_t>>();
  t.triangles = j.at("triangles").get<std::vector<std::uint64_t>>();
  t.local_clustering = j.at("local_clustering").get<std::vector<double>>();
  t.kcore = j.at("kcore").get<std::vector<std::uint32_t>>();
  t.wedges = j.at("wedges").get<std::vector<std::uint64_t>>();
  return t;
}

json to_json(const Distribution& d) {
  return {{"statistic", d.statistic}, {"binned", d.binned}, {"values", d.values},
          {"pdf", d.pdf},             {"cdf", d.cdf},       {"ccdf", d.ccdf}};
}

json to_json(const NodeLabeling& l) {
  return {{"kind", l.kind == LabelingKind::community ? "community" : "role"},
          {"k", l.k},
          {"labels", l.labels},
          {"quality", optional_number(l.quality)}};
}

json to_json(const NormalizationReport& r) {
  return {{"input_edges", r.input_edges},
          {"self_loops_dropped", r.self_loops_dropped},
          {"duplicates_merged", r.duplicates_merged}};
}

json to_json(const std::vector<Point>& layout) {
  json arr = json::array();
  for (const auto& p : layout) arr.push_back({p.x, p.y});
  return arr;
}

json to_json(const GeneratorConfig& c) {
  json j = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PatternParams>) {
          return {{"kind", "pattern"},
                  {"patterns", patterns_to_json(p.patterns)},
                  {"wiring", p.wiring == Wiring::bridge ? "bridge" : "disjoint"}};
        } else if constexpr (std::is_same_v<T, HybridParams>) {
          return {{"kind", "hybrid"},
                  {"base", model_to_json(p.base)},
                  {"patterns", patterns_to_json(p.patterns)},
                  {"wiring", p.wiring == Wiring::bridge ? "bridge" : "disjoint"}};
        } else {
          return model_to_json(ModelParams(p));
        }
      },
      c.params);
  j["seed"] = c.seed;
  return j;
}

GeneratorConfig generator_config_from_json(const json& j) {
  std::vector<std::string> violations;
  if (!j.is_object()) throw InvalidConfig({"generator config must be a JSON object"});
  ConfigReader r(j, violations);
  GeneratorConfig config;
  if (auto seed = r.unsigned_field<std::uint64_t>("seed", false)) config.seed = *seed;
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    r.fail("kind is required");
    throw InvalidConfig(std::move(violations));
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "pattern") {
    PatternParams p;
    p.patterns = read_patterns(r, true);
    if (auto w = read_wiring(r)) p.wiring = *w;
    config.params = std::move(p);
  } else if (kind == "hybrid") {
    HybridParams p;
    if (!j.contains("base") || !j.at("base").is_object()) {
      r.fail("base model config is required");
    } else {
      const auto& base = j.at("base");
      ConfigReader br(base, violations, "base.");
      const auto base_kind = base.value("kind", std::string());
      if (base_kind == "pattern" || base_kind == "hybrid") {
        br.fail("kind must be a model-based generator");
      } else if (auto model = read_model(base_kind, br)) {
        p.base = std::move(*model);
      }
    }
    p.patterns = read_patterns(r, false);
    if (auto w = read_wiring(r)) p.wiring = *w;
    config.params = std::move(p);
  } else if (auto model = read_model(kind, r)) {
    std::visit([&](auto&& m) { config.params = std::move(m); }, std::move(*model));
  }
  if (violations.empty()) violations = validate(config);
  if (!violations.empty()) throw InvalidConfig(std::move(violations));
  return config;
}

std::string dump_stats(const GraphStats& s) { return to_json(s).dump(); }

}  // namespace netrepo
