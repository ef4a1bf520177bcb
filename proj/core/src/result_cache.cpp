#include "markovj/result_cache.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace markovj {

namespace {

constexpr const char* kSchema = "markovj-cycle-cache";
constexpr int kVersion = 1;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string number(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("cache: refusing to store a non-finite value");
  }
  return fmt::format("{:.17g}", x);
}

// Canonical text of a record without its checksum; the checksum is taken over
// exactly these bytes, so it is recomputed the same way on load.
std::string record_body(const CycleValue& v) {
  return fmt::format(
      R"({{"path":"{}","p":{},"q":{},"c":"{}","J_re":{},"J_im":{},"j_re":{},"j_im":{},)"
      R"("log_eps":{},"quad_err":{})",
      v.path, v.farey.p, v.farey.q, to_decimal(v.c), number(v.J.real()), number(v.J.imag()),
      number(v.j.real()), number(v.j.imag()), number(v.log_eps), number(v.quad_error));
}

std::string header_line(double tol, int series_order) {
  return fmt::format(R"({{"schema":"{}","version":{},"tol":{},"series_order":{}}})", kSchema,
                     kVersion, number(tol), series_order);
}

int level_of(const std::string& path) {
  return path.starts_with("tip:") ? 0 : static_cast<int>(path.size()) + 1;
}

CycleValue parse_record(const std::string& line, std::size_t line_no) {
  auto fail = [&](const std::string& why) {
    return CacheError(fmt::format("cache line {}: {}", line_no, why));
  };
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
    CycleValue v;
    v.path = j.at("path").get<std::string>();
    v.farey = {j.at("p").get<std::uint64_t>(), j.at("q").get<std::uint64_t>()};
    v.c = parse_decimal(j.at("c").get<std::string>());
    v.J = {j.at("J_re").get<double>(), j.at("J_im").get<double>()};
    v.j = {j.at("j_re").get<double>(), j.at("j_im").get<double>()};
    v.log_eps = j.at("log_eps").get<double>();
    v.quad_error = j.at("quad_err").get<double>();
    v.level = level_of(v.path);
    v.J_over_q = v.J / static_cast<double>(v.farey.q);

    const std::string check = j.at("check").get<std::string>();
    if (check != fmt::format("{:016x}", fnv1a(record_body(v)))) {
      throw fail("checksum mismatch");
    }
    return v;
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw fail(e.what());
  }
}

void check_against_tree(const CycleValue& v, std::size_t line_no) {
  auto fail = [&](const std::string& why) {
    return CacheError(fmt::format("cache line {} ({}): {}", line_no, v.path, why));
  };
  FareyFraction f;
  try {
    if (path_of_fraction(v.farey) != v.path) throw fail("fraction does not match path");
    f = v.farey;
  } catch (const std::invalid_argument& e) {
    throw fail(e.what());
  }
  if (markov_triple_of(f).c != v.c) throw fail("Markov number does not match path");
  if (std::abs(v.log_eps - log_epsilon(v.c)) > 1e-12 * std::max(1.0, v.log_eps)) {
    throw fail("log eps does not match c");
  }
  const std::complex<double> j = v.J / (2.0 * v.log_eps);
  if (std::abs(j - v.j) > 1e-9 * std::max(1.0, std::abs(j))) {
    throw fail("j does not match J / (2 log eps)");
  }
}

}  // namespace

std::optional<CacheRecords> read_cache(const std::filesystem::path& file, double tol,
                                       int series_order) {
  if (!std::filesystem::exists(file)) return std::nullopt;
  std::ifstream in(file);
  if (!in) throw CacheError(fmt::format("cannot read cache {}", file.string()));

  std::string line;
  if (!std::getline(in, line)) throw CacheError(fmt::format("cache {} is empty", file.string()));
  try {
    const auto header = nlohmann::json::parse(line);
    if (header.at("schema").get<std::string>() != kSchema ||
        header.at("version").get<int>() != kVersion) {
      throw CacheError(fmt::format("cache {} has an unknown schema", file.string()));
    }
    if (header.at("tol").get<double>() != tol ||
        header.at("series_order").get<int>() != series_order) {
      return std::nullopt;
    }
  } catch (const CacheError&) {
    throw;
  } catch (const std::exception& e) {
    throw CacheError(fmt::format("cache {}: bad header: {}", file.string(), e.what()));
  }

  CacheRecords records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    CycleValue v = parse_record(line, line_no);
    check_against_tree(v, line_no);
    if (!records.emplace(v.path, v).second) {
      throw CacheError(fmt::format("cache line {}: duplicate path {}", line_no, v.path));
    }
  }
  return records;
}

void write_cache(const std::filesystem::path& file, const CacheRecords& records, double tol,
                 int series_order) {
  std::vector<const CycleValue*> ordered;
  ordered.reserve(records.size());
  for (const auto& [path, v] : records) ordered.push_back(&v);
  std::sort(ordered.begin(), ordered.end(), [](const CycleValue* a, const CycleValue* b) {
    return a->level != b->level ? a->level < b->level : a->path < b->path;
  });

  std::ostringstream out;
  out << header_line(tol, series_order) << '\n';
  for (const CycleValue* v : ordered) {
    const std::string body = record_body(*v);
    out << body << fmt::format(R"(,"check":"{:016x}"}})", fnv1a(body)) << '\n';
  }

  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << out.str();
    if (!f) throw CacheError(fmt::format("cannot write cache {}", tmp.string()));
  }
  std::filesystem::rename(tmp, file);
}

std::vector<CycleValue> evaluate_tree_cached(const MarkovTree& tree, const JSeries& series,
                                             const RunConfig& config, CacheStats* stats) {
  CacheStats local;
  if (!config.cache) {
    auto values = evaluate_tree(tree, series, config.tol, config.jobs);
    local.computed = values.size();
    if (stats) *stats = local;
    return values;
  }

  auto existing = read_cache(*config.cache, config.tol, config.series_order);
  local.stale = !existing && std::filesystem::exists(*config.cache);
  CacheRecords records = existing ? std::move(*existing) : CacheRecords{};

  std::vector<CycleValue> values(tree.size());
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < tree.size(); ++i) {
    auto it = records.find(tree[i].path);
    if (it == records.end()) {
      missing.push_back(i);
      continue;
    }
    if (!(it->second.farey == tree[i].farey) || it->second.c != tree[i].c()) {
      throw CacheError(fmt::format("cache record {} disagrees with the tree", tree[i].path));
    }
    values[i] = it->second;
    values[i].level = tree[i].level;
    ++local.reused;
  }

  if (!missing.empty()) {
    auto fresh = evaluate_nodes(tree, missing, series, config.tol, config.jobs);
    for (std::size_t k = 0; k < missing.size(); ++k) {
      records[fresh[k].path] = fresh[k];
      values[missing[k]] = std::move(fresh[k]);
    }
    local.computed = missing.size();
  }
  if (!missing.empty() || local.stale) {
    write_cache(*config.cache, records, config.tol, config.series_order);
  }
  if (stats) *stats = local;
  return values;
}

}  // namespace markovj
