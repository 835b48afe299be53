#include "cyclo/cli.hpp"

#include "cyclo/cocycle_oracle.hpp"
#include "cyclo/cohomology.hpp"
#include "cyclo/errors.hpp"
#include "cyclo/field_model.hpp"
#include "cyclo/json_util.hpp"
#include "cyclo/pair_expr.hpp"
#include "cyclo/rigidity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace cyclo {

namespace {

using nlohmann::json;

struct RunConfig {
  std::uint32_t p = 2;
  unsigned precision = kDefaultPrecision;
  unsigned maxDegree = 4;
  std::uint64_t bound = kDefaultRigidityBound;
  std::string model;
  std::string file;
  std::string format = "json";
  std::string target = "OMinus";
  std::string subgroup = "all";
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string errorKind(const Error& e) {
#define CYCLO_KIND(T) \
  if (dynamic_cast<const T*>(&e)) return #T;
  CYCLO_KIND(SyntaxError)
  CYCLO_KIND(DimensionMismatch)
  CYCLO_KIND(NotAUnit)
  CYCLO_KIND(DenominatorNotInvertible)
  CYCLO_KIND(PrecisionExhausted)
  CYCLO_KIND(ValidationError)
  CYCLO_KIND(DegreeTooSmall)
  CYCLO_KIND(WrongPrime)
  CYCLO_KIND(DimensionTooLarge)
  CYCLO_KIND(NotAnExtension)
  CYCLO_KIND(InvalidModel)
  CYCLO_KIND(ModelUnsupported)
  CYCLO_KIND(OrderBound)
  CYCLO_KIND(NotAHomomorphism)
  CYCLO_KIND(KernelNotCentral)
#undef CYCLO_KIND
  return "Error";
}

json logLevelJson(const LogLevel& l) {
  if (l.isInfinite()) return "inf";
  return *l.value;
}

json thetaJson(const UnitSubgroupInvariants& t, std::uint32_t p) {
  return {{"trivial", t.trivial}, {"q", jsonInteger(t.q(p))}, {"epsNonzero", t.epsNonzero}, {"squareIndex", t.squareIndex}};
}

class Commands {
public:
  Commands(const RunConfig& c, std::vector<std::string> args) : cfg_(c), args_(std::move(args)) {}

  PairExpr expression() const {
    std::string text;
    if (!cfg_.file.empty())
      text = readFile(cfg_.file);
    else if (!args_.empty())
      text = args_.front();
    else
      throw ValidationError("missing expression (positional argument or --file)");
    return parse(text, cfg_.p, cfg_.precision);
  }

  json parseCmd() const {
    const auto e = expression();
    return {{"expr", render(e)}, {"tree", toJson(e)}};
  }

  json normalizeCmd() const {
    const auto e = expression();
    const auto n = normalize(e);
    return {{"input", render(e)}, {"normal", render(n)}, {"tree", toJson(n)}};
  }

  json invariantsCmd() const {
    const auto e = expression();
    json abel = json::array();
    for (const auto& d : abelianization(e).divisors) abel.push_back(jsonInteger(d));
    return {{"normal", render(normalize(e))},
            {"rank", rank(e)},
            {"abelianization", abel},
            {"theta", thetaJson(thetaImage(e), e.prime())},
            {"logl", logLevelJson(logLevelRecursive(e))}};
  }

  json cohomCmd() const {
    const auto e = expression();
    auto j = toJson(buildCohomology(e, cfg_.maxDegree));
    j["closedFormDims"] = dimsClosedForm(e, cfg_.maxDegree);
    return j;
  }

  json demuskinCmd() const {
    const auto v = classifyDemuskin(expression());
    json j{{"isDemuskin", v.isDemuskin}};
    if (!v.isDemuskin) return j;
    j["n"] = v.n;
    j["q"] = jsonInteger(v.q);
    j["case"] = std::string(caseName(v.caseTag));
    if (v.f) j["f"] = *v.f == kInfiniteF ? json("inf") : json(*v.f);
    return j;
  }

  json loglCmd() const {
    const auto e = expression();
    const auto direct = logLevelDirect(e, cfg_.maxDegree);
    return {{"recursive", logLevelJson(logLevelRecursive(e))},
            {"direct", direct ? json(*direct) : json(">" + std::to_string(cfg_.maxDegree))}};
  }

  json rigidCmd() const {
    const auto e = expression();
    const auto m = fromCohomology(buildCohomology(e, 2));
    auto j = toJson(m, scanRigidity(m, cfg_.bound));
    if (e.is<node::Ext>()) j["criterion"] = toJson(checkRigidityCriterion(e, cfg_.bound));
    return j;
  }

  json fieldCmd() const {
    if (args_.empty()) throw ValidationError("field needs an action");
    if (cfg_.model.empty()) throw ValidationError("field commands need --model");
    const auto model = modelFromJson(json::parse(readFile(cfg_.model)), cfg_.p);
    const auto& action = args_.front();
    auto element = [&](std::size_t i) {
      if (args_.size() <= i) throw ValidationError("missing element argument");
      return model.parseElement(args_[i]);
    };
    auto elementJson = [&](const std::optional<FieldElement>& x) { return x ? json(model.render(*x)) : json(nullptr); };

    if (action == "classgroup") {
      const auto basis = model.classGroup();
      return {{"model", model.describe()}, {"dim", basis.labels.size()}, {"basis", basis.labels},
              {"symbolDim", model.symbolDim()}, {"minusOne", model.classOf(model.fromInteger(-1))}};
    }
    if (action == "symbol") {
      const auto a = element(1), b = element(2);
      return {{"a", model.render(a)}, {"b", model.render(b)}, {"symbol", model.symbol(a, b)}};
    }
    if (action == "pairing") {
      const auto map = fromFieldModel(model);
      const auto pair = args_.size() > 1 ? parse(args_[1], cfg_.p, cfg_.precision) : predictGaloisPair(model, cfg_.precision);
      auto j = toJson(map);
      j["against"] = render(pair);
      j["match"] = checkPairingMatch(model, pair);
      return j;
    }
    if (action == "predict") {
      const auto e = predictGaloisPair(model, cfg_.precision);
      return {{"model", model.describe()}, {"pair", render(e)}, {"normal", render(normalize(e))}, {"tree", toJson(e)}};
    }
    if (action == "trichotomic") {
      const auto r = trichotomicSearch(model, element(1), cfg_.bound);
      return {{"verdict", r.witness ? "Witness" : "NoCounterexampleWithinBound"},
              {"witness", elementJson(r.witness)},
              {"tried", r.tried},
              {"exhaustive", r.exhaustive}};
    }
    if (action == "omember") {
      OTarget target;
      if (cfg_.target == "OMinus")
        target = OTarget::OMinus;
      else if (cfg_.target == "OPlus")
        target = OTarget::OPlus;
      else if (cfg_.target == "ORing")
        target = OTarget::ORing;
      else
        throw ValidationError("target must be OMinus, OPlus or ORing");
      ClassSubgroup h;
      if (cfg_.subgroup != "all") h = json::parse(cfg_.subgroup).get<std::vector<FpVec>>();
      const auto v = oMembership(model, element(1), h, target, cfg_.bound);
      return {{"target", targetName(v.target)}, {"verdict", membershipName(v.verdict)},
              {"searchBound", v.searchBound}, {"witness", elementJson(v.witness)}, {"reason", v.reason}};
    }
    if (action == "rigidity") {
      const auto v = isTotallyRigidBounded(model, cfg_.bound);
      json j{{"verdict", totalRigidityName(v.verdict)},
             {"steinbergRank", v.steinbergRank},
             {"pureRank", v.pureRank},
             {"unresolvedPairs", v.unresolvedPairs},
             {"tried", v.tried},
             {"witness", elementJson(v.witness)}};
      if (v.witness) j["witnessTensor"] = {v.witnessLeft, v.witnessRight};
      const auto map = fromFieldModel(model);
      j["elements"] = toJson(map, scanRigidity(map, kDefaultRigidityBound));
      return j;
    }
    throw ValidationError("unknown field action " + action);
  }

  json oracleCmd() const {
    if (args_.empty()) throw ValidationError("oracle needs an action");
    const auto& action = args_.front();
    json input;
    if (!cfg_.file.empty())
      input = json::parse(readFile(cfg_.file));
    else if (args_.size() > 1)
      input = json::parse(args_[1]);
    else
      throw ValidationError("oracle needs a JSON argument or --file");
    const auto p = cfg_.p;
    try {
      if (action == "h1" || action == "h2") {
        const auto g = groupFromJson(input.contains("group") ? input.at("group") : input);
        const CocycleSolver s(g, p);
        if (action == "h1") return {{"order", g.order()}, {"h1", s.h1Dim()}, {"basis", s.h1Basis()}};
        return {{"order", g.order()}, {"h2", s.h2Dim()}};
      }
      if (action == "cup") {
        const auto g = groupFromJson(input.at("group"));
        const CocycleSolver s(g, p);
        const auto phi = input.at("phi").get<GroupFunction>();
        const auto psi = input.at("psi").get<GroupFunction>();
        return {{"h2", s.h2Dim()}, {"class", s.cup(phi, psi)}};
      }
      if (action == "extclass") {
        const auto total = groupFromJson(input.at("total"));
        const auto quotient = groupFromJson(input.at("quotient"));
        std::optional<std::vector<std::uint32_t>> section;
        if (input.contains("section")) section = input.at("section").get<std::vector<std::uint32_t>>();
        const auto c = extensionClass(total, input.at("kernel").get<std::uint32_t>(), quotient,
                                      input.at("map").get<std::vector<std::uint32_t>>(), p, section);
        return {{"class", c}, {"h2", CocycleSolver(quotient, p).h2Dim()}};
      }
    } catch (const json::exception& e) {
      throw ValidationError(std::string("malformed oracle input: ") + e.what());
    }
    throw ValidationError("unknown oracle action " + action);
  }

private:
  const RunConfig& cfg_;
  std::vector<std::string> args_;
};

void emit(std::ostream& out, const json& j, const std::string& format) {
  if (format == "table" && j.is_object()) {
    for (const auto& [k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    return;
  }
  out << j.dump() << "\n";
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Workbench for elementary-type cyclotomic pro-p pairs"};
  app.fallthrough();
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--p", cfg.p, "ambient prime")->capture_default_str();
  app.add_option("--precision", cfg.precision, "p-adic digits kept for units")->capture_default_str();
  app.add_option("--max-degree", cfg.maxDegree, "truncation degree of cohomology rings")->capture_default_str();
  app.add_option("--bound", cfg.bound, "enumeration and search bound")->capture_default_str();
  app.add_option("--model", cfg.model, "field model JSON file");
  app.add_option("--file", cfg.file, "read the expression or oracle input from a file");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();

  std::vector<std::string> args;
  auto add = [&](const std::string& name, const std::string& help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("args", args, "arguments");
    return sub;
  };
  add("parse", "parse and render an expression");
  add("normalize", "normal form of an expression");
  add("invariants", "rank, abelianization, theta image and logarithmic level");
  add("cohom", "truncated cohomology ring");
  add("demuskin", "Demushkin test and classification");
  add("logl", "logarithmic level, recursive and direct");
  add("rigid", "rigid classes of the cup product pairing");
  auto* field = add("field", "field models: classgroup|symbol|pairing|predict|trichotomic|omember|rigidity");
  field->add_option("--target", cfg.target, "OMinus, OPlus or ORing")->capture_default_str();
  field->add_option("--subgroup", cfg.subgroup, "\"all\" or JSON list of class vectors spanning H")->capture_default_str();
  add("oracle", "finite group cohomology: h1|h2|cup|extclass");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!isPrime(cfg.p)) throw ValidationError(std::to_string(cfg.p) + " is not a prime");
    if (cfg.precision < 8) throw ValidationError("precision must be at least 8");
    if (cfg.maxDegree < 2) throw ValidationError("max degree must be at least 2");
    const Commands cmd(cfg, args);
    const auto name = app.get_subcommands().front()->get_name();
    json result;
    if (name == "parse")
      result = cmd.parseCmd();
    else if (name == "normalize")
      result = cmd.normalizeCmd();
    else if (name == "invariants")
      result = cmd.invariantsCmd();
    else if (name == "cohom")
      result = cmd.cohomCmd();
    else if (name == "demuskin")
      result = cmd.demuskinCmd();
    else if (name == "logl")
      result = cmd.loglCmd();
    else if (name == "rigid")
      result = cmd.rigidCmd();
    else if (name == "field")
      result = cmd.fieldCmd();
    else
      result = cmd.oracleCmd();
    emit(out, result, cfg.format);
    return 0;
  } catch (const Error& e) {
    err << json{{"error", errorKind(e)}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << json{{"error", "ValidationError"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", "InternalError"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

} // namespace cyclo
