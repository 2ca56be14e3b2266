#include "inscribe/cli/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace inscribe::cli {
namespace {

[[noreturn]] void malformed(const std::string& what) { throw GeometryError(ErrorCode::MalformedInput, what); }

double number(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing number \"") + key + "\"");
  const Json& v = obj.at(key);
  if (!v.is_number()) malformed(std::string("\"") + key + "\" must be a number");
  return v.get<double>();
}

void onlyKeys(const Json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) malformed("unexpected key \"" + item.key() + "\" in " + where);
  }
}

Json point(const Vec2& p) { return Json::array({p.x(), p.y()}); }

}  // namespace

Normalized parse_config(const std::string& text, double tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("configuration is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("configuration must be a JSON object");
  const bool hasLines = doc.contains("lines");
  const bool hasCanonical = doc.contains("canonical");
  if (hasLines == hasCanonical) malformed("configuration needs exactly one of \"lines\" and \"canonical\"");
  onlyKeys(doc, {"lines", "canonical"}, "configuration");

  if (hasCanonical) {
    const Json& c = doc.at("canonical");
    if (!c.is_object()) malformed("\"canonical\" must be an object");
    onlyKeys(c, {"mA", "bA", "mB", "mC", "mD"}, "\"canonical\"");
    Normalized out;
    out.config = {number(c, "mA"), number(c, "bA"), number(c, "mB"), number(c, "mC"), number(c, "mD")};
    out.config.validate();
    return out;
  }

  const Json& lines = doc.at("lines");
  if (!lines.is_array() || lines.size() != 4) malformed("\"lines\" must be an array of four lines");
  InputConfiguration input;
  for (std::size_t k = 0; k < 4; ++k) {
    onlyKeys(lines[k], {"a", "b", "c"}, "a line");
    input[k] = {number(lines[k], "a"), number(lines[k], "b"), number(lines[k], "c")};
  }
  return normalize(input, tol);
}

Normalized load_config(const std::string& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) malformed("cannot read configuration file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), tol);
}

Json to_json(const CanonicalConfig& cfg) {
  return {{"mA", cfg.mA}, {"bA", cfg.bA}, {"mB", cfg.mB}, {"mC", cfg.mC}, {"mD", cfg.mD}};
}

Json to_json(const NormalizationRecord& record) {
  return {{"labelShift", record.labelShift},
          {"orientationReversed", record.orientationReversed},
          {"rotationAngle", record.rotationAngle},
          {"translation", point(record.translation)},
          {"scaleFactor", record.scaleFactor}};
}

Json to_json(const Parallelogram& p) {
  return {{"vertices", Json::array({point(p.vA), point(p.vB), point(p.vC), point(p.vD)})}, {"w", p.w}};
}

Json frame_json(const Frame& frame) {
  return {{"lambda", frame.lambda}, {"mu", frame.mu},         {"wU", frame.wU},
          {"wV", frame.wV},         {"wT", frame.wT},         {"degenerate", frame.degenerate},
          {"U", to_json(frame.U)},  {"V", to_json(frame.V)}, {"T", to_json(frame.T)}};
}

Json analysis_json(const Normalized& normalized, const Frame& frame, const LocusReport& locus) {
  return {{"canonical", to_json(normalized.config)},
          {"normalization", to_json(normalized.record)},
          {"frame", frame_json(frame)},
          {"locusKind", std::string(to_string(locus.kind))}};
}

Json locus_json(const LocusReport& locus) {
  Json out;
  out["kind"] = std::string(to_string(locus.kind));
  if (locus.conic) {
    Json rows = Json::array();
    for (int i = 0; i < 3; ++i) rows.push_back(Json::array({locus.conic->c(i, 0), locus.conic->c(i, 1), locus.conic->c(i, 2)}));
    out["conic"] = rows;
  } else {
    out["conic"] = nullptr;
  }
  Json lines = Json::array();
  for (const auto& l : locus.lines) lines.push_back(Json::array({l.l1, l.l2, l.l3}));
  out["lines"] = lines;
  if (locus.missingSegment) {
    out["missingSegment"] = Json::array({locus.missingSegment->first, locus.missingSegment->second});
  }
  Json samples = Json::array();
  for (const auto& s : locus.samples) samples.push_back({{"x", s.x}, {"y", s.y}, {"w", s.w}});
  out["samples"] = samples;
  out["degenerate"] = locus.degenerate;
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);
  return buf;
}

std::string solution_csv(const std::vector<SolutionSample>& samples) {
  std::string out = "theta,branch,u,v,t,w,xA,yA,xB,yB,xC,yC,xD,yD,cx,cy\n";
  for (const auto& s : samples) {
    const Parallelogram& r = s.rect;
    const Vec2 c = r.center();
    out += format_double(s.theta);
    out += ',';
    out += to_string(s.branch);
    for (double x : {s.coords.u, s.coords.v, s.coords.t, s.scale, r.vA.x(), r.vA.y(), r.vB.x(), r.vB.y(), r.vC.x(),
                     r.vC.y(), r.vD.x(), r.vD.y(), c.x(), c.y()}) {
      out += ',';
      out += format_double(x);
    }
    out += '\n';
  }
  return out;
}

std::string oracle_csv(const std::vector<OracleHit>& hits) {
  std::string out = "w,xA,xB,vAx,vAy,vBx,vBy,vCx,vCy,vDx,vDy,residual\n";
  for (const auto& h : hits) {
    out += format_double(h.w);
    for (double x : {h.xA, h.xB}) {
      out += ',';
      out += format_double(x);
    }
    for (const Vec2& v : h.vertices) {
      out += ',';
      out += format_double(v.x());
      out += ',';
      out += format_double(v.y());
    }
    out += ',';
    out += format_double(h.residual);
    out += '\n';
  }
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace " + path + ": " + ec.message());
  }
}

}  // namespace inscribe::cli
