// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
#include <iomanip>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "vortwave/cli/commands.hpp"
#include "vortwave/errors.hpp"

namespace vortwave::cli {

namespace {

using nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

template <class F>
std::optional<double> defined(F&& f) {
  try {
    return f();
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

ResolvedPoint resolve(const PointSpec& spec) {
  if (!spec.gamma) throw DomainError("--gamma is required");
  if (spec.lambda.has_value() == spec.p0sq.has_value())
    throw DomainError("give exactly one of --lambda and --p0sq");
  if (spec.lambda) {
    const CriticalPair cp = solve_critical_pair(*spec.gamma, *spec.lambda);
    return {ModelParams{*spec.gamma, cp.p0sq}, *spec.lambda};
  }
  const ModelParams p{*spec.gamma, *spec.p0sq};
  p.validate();
  return {p, lambda_of(p, alpha_c(p))};
}

CriticalReport critical_report(const ResolvedPoint& pt) {
  const ModelParams& p = pt.params;
  CriticalReport r;
  r.gamma = p.gamma;
  r.lambda = pt.lambda;
  r.p0sq = p.p0sq;
  r.p0sq_limit = p0sq_limit(p.gamma);
  r.alpha_s = alpha_s(p);
  r.alpha_c = alpha_c(p);
  r.o1 = defined([&] { return o1(p); });
  r.o2 = defined([&] { return o2(p); });
  r.o_total = defined([&] { return o_total(p); });
  r.o_printed = defined([&] { return o_total_unscaled(p); });
  r.o_printed_expanded = defined([&] { return o_total_expanded(p); });
  r.o2_free_bed = defined([&] { return o2_free_bed(p); });
  if (r.o_total) r.cls = classify_value(*r.o_total);
  r.p0_zero = p.p0sq == 0.0;
  return r;
}

std::string to_json(const CriticalReport& r) {
  json j = {{"gamma", r.gamma},
            {"lambda", r.lambda},
            {"p0sq", r.p0sq},
            {"p0sq_limit", r.p0sq_limit},
            {"alpha_s", r.alpha_s},
            {"alpha_c", r.alpha_c},
            {"O", opt(r.o_total)},
            {"o1", opt(r.o1)},
            {"o2", opt(r.o2)},
            {"O_printed", opt(r.o_printed)},
            {"O_printed_expanded", opt(r.o_printed_expanded)},
            {"o2_free_bed", opt(r.o2_free_bed)},
            {"class", r.cls ? json(std::string(to_string(*r.cls))) : json(nullptr)},
            {"p0_zero", r.p0_zero}};
  return j.dump(2);
}

CriticalReport critical_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    CriticalReport r;
    r.gamma = j.at("gamma").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.p0sq = j.at("p0sq").get<double>();
    r.p0sq_limit = j.at("p0sq_limit").get<double>();
    r.alpha_s = j.at("alpha_s").get<double>();
    r.alpha_c = j.at("alpha_c").get<double>();
    r.o_total = opt_from(j, "O");
    r.o1 = opt_from(j, "o1");
    r.o2 = opt_from(j, "o2");
    r.o_printed = opt_from(j, "O_printed");
    r.o_printed_expanded = opt_from(j, "O_printed_expanded");
    r.o2_free_bed = opt_from(j, "o2_free_bed");
    if (!j.at("class").is_null()) r.cls = class_from_string(j.at("class").get<std::string>());
    r.p0_zero = j.at("p0_zero").get<bool>();
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("bad critical report: ") + e.what());
  }
}

void write_text(std::ostream& os, const CriticalReport& r) {
  auto val = [](const std::optional<double>& v) {
    std::ostringstream s;
    s << std::setprecision(6);
    if (v) s << *v;
    else s << "undefined";
    return s.str();
  };
  os << std::setprecision(6);
  os << "gamma        " << r.gamma << '\n'
     << "lambda       " << r.lambda << '\n'
     << "p0sq         " << r.p0sq << "  (limit gamma^2 e^{4 gamma} = " << r.p0sq_limit << ")\n"
     << "alpha_s      " << r.alpha_s << '\n'
     << "alpha_c      " << r.alpha_c << '\n'
     << "O            " << val(r.o_total) << "  (o1 " << val(r.o1) << ", o2 " << val(r.o2)
     << ")\n"
     << "O printed    " << val(r.o_printed) << "  (expanded " << val(r.o_printed_expanded)
     << ", o2 free bed " << val(r.o2_free_bed) << ")\n"
     << "class        " << (r.cls ? std::string(to_string(*r.cls)) : "undefined") << '\n';
  if (r.p0_zero) os << "p0sq = 0: degenerate-feasibility boundary, no pitchfork coefficient\n";
}

int cmd_critical(const PointSpec& spec, Format fmt, std::ostream& out, std::ostream& err) {
  ResolvedPoint pt;
  try {
    pt = resolve(spec);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const DomainError& e) {
    err << "invalid parameters: " << e.what() << '\n';
    return kInfeasible;
  }
  const CriticalReport r = critical_report(pt);
  if (fmt == Format::Json) out << to_json(r) << '\n';
  else write_text(out, r);
  return kOk;
}

}  // namespace vortwave::cli
