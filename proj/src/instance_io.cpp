#include "adslate/instance_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "adslate/mask.hpp"
#include "json.hpp"

namespace adslate {
namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void Fail(const std::string& pointer, const std::string& what) const {
    throw ParseError(source_ + ": " + (pointer.empty() ? "/" : pointer) + ": " + what);
  }

  const json& Field(const json& object, const std::string& pointer,
                    const char* key) const {
    if (!object.is_object()) Fail(pointer, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) Fail(pointer + "/" + key, "missing required field");
    return *it;
  }

  double Number(const json& value, const std::string& pointer) const {
    if (!value.is_number()) Fail(pointer, "expected a number");
    return value.get<double>();
  }

  double OptionalNumber(const json& object, const std::string& pointer,
                        const char* key, double fallback) const {
    auto it = object.find(key);
    return it == object.end() ? fallback : Number(*it, pointer + "/" + key);
  }

  bool OptionalBool(const json& object, const std::string& pointer,
                    const char* key, bool fallback) const {
    auto it = object.find(key);
    if (it == object.end()) return fallback;
    if (!it->is_boolean()) Fail(pointer + "/" + key, "expected true or false");
    return it->get<bool>();
  }

  std::string String(const json& value, const std::string& pointer) const {
    if (!value.is_string()) Fail(pointer, "expected a string");
    return value.get<std::string>();
  }

  int Integer(const json& value, const std::string& pointer) const {
    if (!value.is_number_integer()) Fail(pointer, "expected an integer");
    return value.get<int>();
  }

  const json& Array(const json& value, const std::string& pointer) const {
    if (!value.is_array()) Fail(pointer, "expected an array");
    return value;
  }

  QueryInstance Instance(const json& doc, const std::string& at) const {
    const json& list = Array(Field(doc, at, "bidders"), at + "/bidders");
    std::vector<Bidder> bidders;
    for (std::size_t j = 0; j < list.size(); ++j) {
      const std::string here = at + "/bidders/" + std::to_string(j);
      const json& entry = list[j];
      Bidder b;
      b.id = String(Field(entry, here, "id"), here + "/id");
      b.bid = Number(Field(entry, here, "bid"), here + "/bid");
      b.quality = OptionalNumber(entry, here, "quality", 1.0);
      b.utility_factor = OptionalNumber(entry, here, "rho", 1.0);
      b.hybrid_weight = OptionalNumber(entry, here, "mu", 0.0);
      b.excludable = OptionalBool(entry, here, "excludable", true);
      bidders.push_back(std::move(b));
    }
    const json& rows = Array(Field(doc, at, "ctr"), at + "/ctr");
    std::vector<std::vector<double>> ctr;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const std::string here = at + "/ctr/" + std::to_string(r);
      const json& row = Array(rows[r], here);
      std::vector<double>& values = ctr.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        values.push_back(Number(row[c], here + "/" + std::to_string(c)));
      }
    }
    const int positions = Integer(Field(doc, at, "positions"), at + "/positions");
    const double min_bid = Number(Field(doc, at, "min_bid"), at + "/min_bid");

    QueryInstance instance;
    try {
      instance = ValidateAndRank(std::move(bidders), CtrMatrix::FromRows(ctr),
                                 positions, min_bid);
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      Fail(at, std::string("invalid instance: ") + e.what());
    }
    if (auto it = doc.find("mask"); it != doc.end()) {
      const std::string here = at + "/mask";
      Mask mask;
      try {
        mask = Mask::FromBitstring(String(*it, here));
        CheckMask(instance, mask);
      } catch (const ParseError&) {
        throw;
      } catch (const ValidationError& e) {
        Fail(here, e.what());
      }
      for (std::size_t r = 0; r < instance.size(); ++r) {
        instance.bidders[r].excludable = mask.excludable[r];
      }
    }
    return instance;
  }

  ColGenProblem Problem(const json& envelope, const std::string& at) const {
    const std::string objective_text =
        envelope.contains("objective")
            ? String(envelope["objective"], at + "/objective")
            : std::string("revenue");
    ColumnObjective objective{};
    try {
      objective = ParseColumnObjective(objective_text);
    } catch (const ValidationError& e) {
      Fail(at + "/objective", e.what());
    }
    const bool unbudgeted_excludable =
        OptionalBool(envelope, at, "unbudgeted_excludable", false);

    std::vector<Budget> budgets;
    if (envelope.contains("budgets")) {
      const json& list = Array(envelope["budgets"], at + "/budgets");
      for (std::size_t b = 0; b < list.size(); ++b) {
        const std::string here = at + "/budgets/" + std::to_string(b);
        Budget budget;
        budget.bidder_id = String(Field(list[b], here, "id"), here + "/id");
        const json& amount = Field(list[b], here, "amount");
        budget.amount = amount.is_null() ? std::numeric_limits<double>::infinity()
                                         : Number(amount, here + "/amount");
        budgets.push_back(std::move(budget));
      }
    }
    const json& list = Array(Field(envelope, at, "queries"), at + "/queries");
    std::vector<ColGenQuery> queries;
    for (std::size_t q = 0; q < list.size(); ++q) {
      const std::string here = at + "/queries/" + std::to_string(q);
      ColGenQuery query;
      query.volume = Number(Field(list[q], here, "volume"), here + "/volume");
      query.instance = Instance(Field(list[q], here, "instance"), here + "/instance");
      queries.push_back(std::move(query));
    }
    try {
      return MakeColGenProblem(std::move(queries), std::move(budgets), objective,
                               unbudgeted_excludable);
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      Fail(at, std::string("invalid problem: ") + e.what());
    }
  }

 private:
  std::string source_;
};

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json InstanceJson(const QueryInstance& instance) {
  json bidders = json::array();
  json ctr = json::array();
  for (std::size_t r = 0; r < instance.size(); ++r) {
    const Bidder& b = instance.bidders[r];
    bidders.push_back({{"id", b.id},
                       {"bid", b.bid},
                       {"quality", b.quality},
                       {"rho", b.utility_factor},
                       {"mu", b.hybrid_weight},
                       {"excludable", b.excludable}});
    json row = json::array();
    for (std::size_t c = 0; c < instance.ctr.cols(); ++c) row.push_back(instance.ctr(r, c));
    ctr.push_back(std::move(row));
  }
  return {{"positions", instance.positions},
          {"min_bid", instance.min_bid},
          {"bidders", std::move(bidders)},
          {"ctr", std::move(ctr)}};
}

}  // namespace

Document ParseDocument(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream message;
    message << source << ":" << line << ":" << column << ": syntax error";
    throw ParseError(message.str());
  }
  const Reader reader{std::string(source)};
  if (!doc.is_object()) reader.Fail("", "expected a top-level object");
  if (auto it = doc.find("colgen"); it != doc.end()) {
    return reader.Problem(*it, "/colgen");
  }
  return reader.Instance(doc, "");
}

Document LoadDocument(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  std::ostringstream text;
  text << in.rdbuf();
  return ParseDocument(text.str(), path.string());
}

std::string SerializeInstance(const QueryInstance& instance) {
  return InstanceJson(instance).dump(2) + "\n";
}

std::string SerializeProblem(const ColGenProblem& problem) {
  json budgets = json::array();
  for (const Budget& b : problem.budgets) {
    budgets.push_back({{"id", b.bidder_id},
                       {"amount", std::isfinite(b.amount) ? json(b.amount) : json(nullptr)}});
  }
  json queries = json::array();
  for (const ColGenQuery& q : problem.queries) {
    queries.push_back({{"volume", q.volume}, {"instance", InstanceJson(q.instance)}});
  }
  json envelope = {{"objective", std::string(ToString(problem.objective))},
                   {"unbudgeted_excludable", problem.unbudgeted_excludable},
                   {"budgets", std::move(budgets)},
                   {"queries", std::move(queries)}};
  return json{{"colgen", std::move(envelope)}}.dump(2) + "\n";
}

}  // namespace adslate
