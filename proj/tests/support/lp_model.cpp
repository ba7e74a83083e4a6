#include "lp_model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dcpack::testing {

int LpModel::index_of(const std::string& name) const {
  const auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

namespace {

enum class Section { kNone, kObjective, kConstraints, kBinaries, kBounds, kEnd };

Section section_of(const std::string& line) {
  std::string lower;
  for (char ch : line) lower += static_cast<char>(std::tolower(ch));
  while (!lower.empty() && std::isspace(static_cast<unsigned char>(lower.back()))) {
    lower.pop_back();
  }
  if (lower == "minimize" || lower == "maximize") return Section::kObjective;
  if (lower == "subject to") return Section::kConstraints;
  if (lower == "binaries" || lower == "binary") return Section::kBinaries;
  if (lower == "bounds") return Section::kBounds;
  if (lower == "end") return Section::kEnd;
  return Section::kNone;
}

struct Parser {
  LpModel model;
  std::map<std::string, int> ids;

  int variable(const std::string& name) {
    auto [it, fresh] = ids.emplace(name, static_cast<int>(model.variables.size()));
    if (fresh) model.variables.push_back(name);
    return it->second;
  }

  void row(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw std::runtime_error("row without name");
    LpRow row;
    std::istringstream in(text.substr(colon + 1));
    std::istringstream name_in(text.substr(0, colon));
    name_in >> row.name;
    std::string token;
    long long sign = 1;
    long long coef = 1;
    bool have_coef = false;
    std::map<int, long long> acc;
    while (in >> token) {
      if (token == "+") {
        sign = 1;
      } else if (token == "-") {
        sign = -1;
      } else if (token == "<=" || token == ">=" || token == "=" ||
                 token == "=<" || token == "=>") {
        row.sense = token[0] == '=' ? (token.size() == 1 ? '=' : token[1])
                                    : token[0];
        std::string rhs;
        in >> rhs;
        row.rhs = std::stoll(rhs);
        break;
      } else if (std::isdigit(static_cast<unsigned char>(token[0]))) {
        coef = std::stoll(token);
        have_coef = true;
      } else {
        acc[variable(token)] += sign * (have_coef ? coef : 1);
        sign = 1;
        coef = 1;
        have_coef = false;
      }
    }
    for (const auto& [v, c] : acc) {
      if (c != 0) row.terms.emplace_back(v, c);
    }
    model.rows.push_back(std::move(row));
  }
};

}  // namespace

LpModel parse_lp(const std::string& text) {
  Parser parser;
  std::istringstream in(text);
  std::string line;
  Section section = Section::kNone;
  std::string pending;
  auto flush = [&] {
    if (!pending.empty()) parser.row(pending);
    pending.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '\\') continue;
    const Section next = section_of(line);
    if (next != Section::kNone) {
      flush();
      section = next;
      continue;
    }
    if (section == Section::kConstraints) {
      if (line.find(':') != std::string::npos) {
        flush();
        pending = line;
      } else {
        pending += " " + line;
      }
    } else if (section == Section::kBinaries) {
      std::istringstream names(line);
      std::string name;
      while (names >> name) {
        parser.variable(name);
        parser.model.binaries.push_back(name);
      }
    }
  }
  flush();
  return parser.model;
}

bool lp_satisfied(const LpModel& model, const std::vector<std::int8_t>& values) {
  for (const LpRow& row : model.rows) {
    long long lhs = 0;
    for (const auto& [v, c] : row.terms) lhs += c * values[v];
    if (row.sense == '=' && lhs != row.rhs) return false;
    if (row.sense == '<' && lhs > row.rhs) return false;
    if (row.sense == '>' && lhs < row.rhs) return false;
  }
  return true;
}

namespace {

// Depth-first search; every node re-propagates all rows to a fixpoint.
class Search {
 public:
  Search(const LpModel& model, std::uint64_t limit)
      : model_(model), limit_(limit), values_(model.variables.size(), -1) {}

  LpSearch run() {
    LpSearch out;
    exhausted_ = true;
    if (descend()) out.solution = values_;
    out.exhausted = exhausted_ || out.solution.has_value();
    out.nodes = nodes_;
    return out;
  }

 private:
  // Min / max of the row's left side over the free variables.
  std::pair<long long, long long> range(const LpRow& row) const {
    long long lo = 0;
    long long hi = 0;
    for (const auto& [v, c] : row.terms) {
      if (values_[v] >= 0) {
        lo += c * values_[v];
        hi += c * values_[v];
      } else if (c > 0) {
        hi += c;
      } else {
        lo += c;
      }
    }
    return {lo, hi};
  }

  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const LpRow& row : model_.rows) {
        auto [lo, hi] = range(row);
        const bool need_ge = row.sense == '>' || row.sense == '=';
        const bool need_le = row.sense == '<' || row.sense == '=';
        if ((need_ge && hi < row.rhs) || (need_le && lo > row.rhs)) return false;
        for (const auto& [v, c] : row.terms) {
          if (values_[v] >= 0) continue;
          const long long span = c > 0 ? c : -c;
          // Choosing the value that lowers hi (or raises lo) by |c| must
          // still leave room; otherwise the other value is forced.
          std::int8_t forced = -1;
          if (need_ge && hi - span < row.rhs) forced = c > 0 ? 1 : 0;
          if (need_le && lo + span > row.rhs) {
            const std::int8_t f = c > 0 ? 0 : 1;
            if (forced >= 0 && forced != f) return false;
            forced = f;
          }
          if (forced >= 0) {
            values_[v] = forced;
            trail.push_back(v);
            changed = true;
            std::tie(lo, hi) = range(row);
          }
        }
      }
    }
    return true;
  }

  bool descend() {
    if (++nodes_ > limit_) {
      exhausted_ = false;
      return false;
    }
    std::vector<int> trail;
    if (!propagate(trail)) {
      undo(trail);
      return false;
    }
    const auto free = std::find(values_.begin(), values_.end(), -1);
    if (free == values_.end()) {
      if (lp_satisfied(model_, values_)) return true;
      undo(trail);
      return false;
    }
    const int v = static_cast<int>(free - values_.begin());
    for (std::int8_t value : {std::int8_t{1}, std::int8_t{0}}) {
      values_[v] = value;
      if (descend()) return true;
      values_[v] = -1;
      if (!exhausted_) break;
    }
    undo(trail);
    return false;
  }

  void undo(const std::vector<int>& trail) {
    for (int v : trail) values_[v] = -1;
  }

  const LpModel& model_;
  std::uint64_t limit_;
  std::vector<std::int8_t> values_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = true;
};

}  // namespace

LpSearch lp_feasible(const LpModel& model, std::uint64_t node_limit) {
  return Search(model, node_limit).run();
}

}  // namespace dcpack::testing
