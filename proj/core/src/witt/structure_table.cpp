#include "cuspk/witt/structure_table.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "cuspk/errors.hpp"

namespace cuspk::witt {

namespace {

constexpr std::string_view kMagic = "cuspk-witt-structure-table";

std::vector<std::uint32_t> divisors(std::uint32_t m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= m; ++d)
    if (m % d == 0) out.push_back(d);
  return out;
}

// Solves sum_{d|m} d * P_d^{m/d} = ghost for P_m, given P_d for d | m, d < m.
IntegerPolynomial solve_ghost(const TruncationSet& set, std::uint32_t m, IntegerPolynomial ghost,
                              const std::vector<IntegerPolynomial>& solved) {
  for (std::uint32_t d : divisors(m)) {
    if (d == m) continue;
    const auto& pd = solved[*set.index_of(d)];
    ghost -= pd.pow(m / d).scaled(d);
  }
  return ghost.exact_divide(m);
}

}  // namespace

IntegerPolynomial ghost_polynomial(const TruncationSet& set, std::uint32_t m, int family) {
  IntegerPolynomial g;
  for (std::uint32_t d : divisors(m)) {
    auto pos = set.index_of(d);
    if (!pos) throw InvalidArgument("ghost_polynomial: divisor outside the truncation set");
    std::uint16_t var = family == 0 ? x_var(*pos) : y_var(*pos);
    g += IntegerPolynomial::variable(var, static_cast<std::uint16_t>(m / d)).scaled(d);
  }
  return g;
}

StructurePolynomialTable StructurePolynomialTable::build(const TruncationSet& set, std::size_t cap) {
  if (set.size() > cap)
    throw ResourceError("structure table for |S| = " + std::to_string(set.size()) + " exceeds cap " +
                        std::to_string(cap));
  StructurePolynomialTable table;
  table.set_ = set;
  table.sum_.resize(set.size());
  table.prod_.resize(set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::uint32_t m = set.members()[i];
    IntegerPolynomial gx = ghost_polynomial(set, m, 0);
    IntegerPolynomial gy = ghost_polynomial(set, m, 1);
    table.sum_[i] = solve_ghost(set, m, gx + gy, table.sum_);
    table.prod_[i] = solve_ghost(set, m, gx * gy, table.prod_);
  }
  return table;
}

std::vector<IntegerPolynomial> frobenius_polynomials(const TruncationSet& set, std::uint32_t n) {
  TruncationSet target = set.divide(n);
  std::vector<IntegerPolynomial> out(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    const std::uint32_t m = target.members()[i];
    IntegerPolynomial ghost;
    for (std::uint32_t d : divisors(n * m)) {
      auto pos = set.index_of(d);
      ghost += IntegerPolynomial::variable(static_cast<std::uint16_t>(*pos), static_cast<std::uint16_t>(n * m / d))
                   .scaled(d);
    }
    out[i] = solve_ghost(target, m, std::move(ghost), out);
  }
  return out;
}

namespace {

void write_family(std::ostringstream& os, const TruncationSet& set, std::string_view name,
                  const std::vector<IntegerPolynomial>& polys) {
  for (std::size_t i = 0; i < polys.size(); ++i) {
    os << "poly " << name << ' ' << set.members()[i] << ' ' << polys[i].size() << '\n';
    for (const auto& [mono, coef] : polys[i].terms()) {
      os << coef.get_str();
      for (const auto& [var, exp] : mono)
        os << ' ' << ((var % 2) == 0 ? 'x' : 'y') << set.members()[var / 2] << '^' << exp;
      os << '\n';
    }
  }
}

}  // namespace

std::string StructurePolynomialTable::serialize() const {
  std::ostringstream os;
  os << kMagic << ' ' << kTableFormatVersion << '\n';
  os << "set " << set_.size();
  for (auto m : set_.members()) os << ' ' << m;
  os << '\n';
  write_family(os, set_, "sum", sum_);
  write_family(os, set_, "prod", prod_);
  os << "end\n";
  return os.str();
}

StructurePolynomialTable StructurePolynomialTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  auto fail = [](const std::string& why) -> IntegrityError {
    return IntegrityError("structure table file: " + why);
  };
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw fail("missing header");
  if (version != kTableFormatVersion)
    throw fail("version " + std::to_string(version) + " != " + std::to_string(kTableFormatVersion));
  std::string word;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "set") throw fail("missing set line");
  std::vector<std::uint32_t> members(count);
  for (auto& m : members)
    if (!(in >> m)) throw fail("truncated set line");

  StructurePolynomialTable table;
  table.set_ = TruncationSet(members);
  const TruncationSet& set = table.set_;
  table.sum_.resize(set.size());
  table.prod_.resize(set.size());

  std::string line;
  std::getline(in, line);
  for (std::size_t block = 0; block < 2 * set.size(); ++block) {
    std::string family;
    std::uint32_t m = 0;
    std::size_t terms = 0;
    if (!(in >> word >> family >> m >> terms) || word != "poly") throw fail("missing poly header");
    auto pos = set.index_of(m);
    if (!pos || (family != "sum" && family != "prod")) throw fail("bad poly header");
    IntegerPolynomial& target = family == "sum" ? table.sum_[*pos] : table.prod_[*pos];
    std::getline(in, line);
    for (std::size_t t = 0; t < terms; ++t) {
      if (!std::getline(in, line)) throw fail("truncated polynomial");
      std::istringstream ls(line);
      std::string coef_text;
      ls >> coef_text;
      BigInt coef;
      if (coef.set_str(coef_text, 10) != 0) throw fail("bad coefficient '" + coef_text + "'");
      Monomial mono;
      std::string factor;
      while (ls >> factor) {
        auto caret = factor.find('^');
        if (factor.size() < 4 || caret == std::string::npos || (factor[0] != 'x' && factor[0] != 'y'))
          throw fail("bad factor '" + factor + "'");
        auto d = static_cast<std::uint32_t>(std::stoul(factor.substr(1, caret - 1)));
        auto e = static_cast<std::uint16_t>(std::stoul(factor.substr(caret + 1)));
        auto dpos = set.index_of(d);
        if (!dpos) throw fail("variable outside the set");
        mono.emplace_back(factor[0] == 'x' ? x_var(*dpos) : y_var(*dpos), e);
      }
      target.add_term(mono, coef);
    }
  }
  if (!(in >> word) || word != "end") throw fail("missing end marker");
  return table;
}

std::filesystem::path default_cache_directory() {
  if (const char* env = std::getenv("CUSPK_CACHE"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "cuspk";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "cuspk";
  return std::filesystem::temp_directory_path() / "cuspk";
}

StructureTableCache::StructureTableCache(std::optional<std::filesystem::path> directory, std::size_t cap)
    : directory_(std::move(directory)), cap_(cap) {}

StructureTableCache& StructureTableCache::shared() {
  static StructureTableCache cache;
  return cache;
}

std::filesystem::path StructureTableCache::file_for(const TruncationSet& set) const {
  if (!directory_) throw InvalidArgument("StructureTableCache: no cache directory configured");
  return *directory_ / ("witt-v" + std::to_string(kTableFormatVersion) + "-" + set.key() + ".txt");
}

std::shared_ptr<const StructurePolynomialTable> StructureTableCache::get(const TruncationSet& set) {
  const std::string key = set.key();
  {
    std::lock_guard lock(mutex_);
    if (auto it = tables_.find(key); it != tables_.end()) return it->second;
  }
  if (set.size() > cap_)
    throw ResourceError("structure table for |S| = " + std::to_string(set.size()) + " exceeds cap " +
                        std::to_string(cap_));

  std::shared_ptr<const StructurePolynomialTable> table;
  if (directory_) {
    const auto path = file_for(set);
    std::ifstream in(path);
    if (in) {
      std::stringstream buffer;
      buffer << in.rdbuf();
      try {
        auto parsed = StructurePolynomialTable::parse(buffer.str());
        if (parsed.set() == set) table = std::make_shared<const StructurePolynomialTable>(std::move(parsed));
      } catch (const IntegrityError&) {
        // Stale or foreign file: rebuild and replace below.
      }
    }
  }
  if (!table) {
    table = std::make_shared<const StructurePolynomialTable>(StructurePolynomialTable::build(set, cap_));
    if (directory_) {
      static std::atomic<unsigned long> counter{0};
      std::error_code ec;
      std::filesystem::create_directories(*directory_, ec);
      const auto final_path = file_for(set);
      auto tmp = final_path;
      tmp += ".tmp-" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "-" +
             std::to_string(counter++);
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << table->serialize();
        if (!out) throw ResourceError("cannot write structure table cache file " + tmp.string());
      }
      std::filesystem::rename(tmp, final_path, ec);
      if (ec) std::filesystem::remove(tmp, ec);
    }
  }
  std::lock_guard lock(mutex_);
  auto [it, inserted] = tables_.emplace(key, table);
  return it->second;
}

}  // namespace cuspk::witt
